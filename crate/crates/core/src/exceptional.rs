//! The `(m, p)` tuples for which the p-gonal group need not be unique, with
//! an explicit p-gonal model for each family.

use std::fmt;
use std::str::FromStr;

use crate::curve::{genus_from, is_prime, BranchDatum, PGonalCurve};
use crate::error::{Error, Result};
use crate::exactfield::{q, FieldElement, NumberField, QPoly, Q, DEFAULT_MAX_DEGREE};
use crate::moebius::ProjPoint;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionalTag {
    Klein37,
    Genus2_43,
    Bring45,
    Genus3_53,
    FermatPP(u64),
    Family2PP(u64),
}

impl ExceptionalTag {
    pub fn name(&self) -> &'static str {
        match self {
            ExceptionalTag::Klein37 => "Klein37",
            ExceptionalTag::Genus2_43 => "Genus2_43",
            ExceptionalTag::Bring45 => "Bring45",
            ExceptionalTag::Genus3_53 => "Genus3_53",
            ExceptionalTag::FermatPP(_) => "Fermat_pp",
            ExceptionalTag::Family2PP(_) => "Family_2pp",
        }
    }

    /// The `(m, p)` tuple of the family.
    pub fn tuple(&self) -> (usize, u64) {
        match *self {
            ExceptionalTag::Klein37 => (3, 7),
            ExceptionalTag::Genus2_43 => (4, 3),
            ExceptionalTag::Bring45 => (4, 5),
            ExceptionalTag::Genus3_53 => (5, 3),
            ExceptionalTag::FermatPP(p) => (p as usize, p),
            ExceptionalTag::Family2PP(p) => (2 * p as usize, p),
        }
    }

    /// Parses a tag name; the prime is needed for the two infinite families.
    pub fn parse(name: &str, p: Option<u64>) -> Result<Self> {
        let need_p = || p.ok_or_else(|| Error::BadParameter(format!("{name} needs --p")));
        let tag = match name {
            "Klein37" => ExceptionalTag::Klein37,
            "Genus2_43" => ExceptionalTag::Genus2_43,
            "Bring45" => ExceptionalTag::Bring45,
            "Genus3_53" => ExceptionalTag::Genus3_53,
            "Fermat_pp" => ExceptionalTag::FermatPP(need_p()?),
            "Family_2pp" => ExceptionalTag::Family2PP(need_p()?),
            _ => return Err(Error::BadParameter(format!("unknown case {name}"))),
        };
        match tag {
            ExceptionalTag::FermatPP(p) if !is_prime(p) || p < 5 => {
                Err(Error::BadParameter(format!("Fermat_pp needs a prime p >= 5, got {p}")))
            }
            ExceptionalTag::Family2PP(p) if !is_prime(p) || p < 3 => {
                Err(Error::BadParameter(format!("Family_2pp needs a prime p >= 3, got {p}")))
            }
            t => Ok(t),
        }
    }
}

impl fmt::Display for ExceptionalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExceptionalTag::FermatPP(p) | ExceptionalTag::Family2PP(p) => {
                write!(f, "{}({p})", self.name())
            }
            _ => write!(f, "{}", self.name()),
        }
    }
}

impl FromStr for ExceptionalTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Unique,
    Exceptional(Vec<ExceptionalTag>),
}

impl Classification {
    pub fn is_unique(&self) -> bool {
        matches!(self, Classification::Unique)
    }
}

/// Unique unless `(m, p)` is one of the exceptional tuples.
pub fn classify(m: usize, p: u64) -> Result<Classification> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = genus_from(m, p);
    if m < 3 || g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let mut tags = Vec::new();
    match (m, p) {
        (3, 7) => tags.push(ExceptionalTag::Klein37),
        (4, 3) => tags.push(ExceptionalTag::Genus2_43),
        (4, 5) => tags.push(ExceptionalTag::Bring45),
        (5, 3) => tags.push(ExceptionalTag::Genus3_53),
        _ => {}
    }
    if p >= 5 && m as u64 == p {
        tags.push(ExceptionalTag::FermatPP(p));
    }
    if p >= 3 && m as u64 == 2 * p {
        tags.push(ExceptionalTag::Family2PP(p));
    }
    Ok(if tags.is_empty() {
        Classification::Unique
    } else {
        Classification::Exceptional(tags)
    })
}

#[derive(Clone, Debug)]
pub struct ExceptionalCase {
    pub tag: ExceptionalTag,
    pub model: PGonalCurve,
    pub notes: &'static str,
}

fn finite(field: &NumberField, a: FieldElement, n: u64) -> BranchDatum {
    debug_assert_eq!(a.field(), field);
    BranchDatum::new(ProjPoint::finite(a), n)
}

/// The p-gonal model of a family. `parameter` is the rational `a` of
/// `Family_2pp` and is ignored elsewhere.
pub fn exceptional_model(tag: ExceptionalTag, parameter: Option<Q>) -> Result<ExceptionalCase> {
    let (model, notes) = match tag {
        ExceptionalTag::Klein37 => {
            let k = NumberField::rationals();
            let b = vec![
                finite(&k, k.from_int(0), 2),
                finite(&k, k.from_int(1), 1),
                BranchDatum::new(ProjPoint::infinity(&k), 4),
            ];
            (
                PGonalCurve::new(7, k, b)?,
                "y^7 = x^2 (x - z) z^4; Klein quartic x^3 y + y^3 z + z^3 x = 0",
            )
        }
        ExceptionalTag::Genus2_43 => {
            // β^2 = 15√3 − 26, so β^4 + 52β^2 + 1 = 0
            let k = NumberField::new(QPoly::from_ints(&[1, 0, 52, 0, 1]), DEFAULT_MAX_DEGREE)?;
            let beta = k.generator();
            let b = vec![
                finite(&k, k.from_int(1), 1),
                finite(&k, k.from_int(-1), 1),
                finite(&k, beta.clone(), 2),
                finite(&k, -&beta, 2),
            ];
            (
                PGonalCurve::new(3, k, b)?,
                "y^3 z^3 = (x^2 - z^2)(x^2 - (15√3 - 26) z^2)^2",
            )
        }
        ExceptionalTag::Bring45 => {
            let k = NumberField::gaussian();
            let i = k.generator();
            let b = vec![
                finite(&k, k.from_int(1), 1),
                finite(&k, k.from_int(-1), 1),
                finite(&k, i.clone(), 4),
                finite(&k, -&i, 4),
            ];
            (
                PGonalCurve::new(5, k, b)?,
                "y^5 z^5 = (x^2 - z^2)(x^2 + z^2)^4; Bring's curve",
            )
        }
        ExceptionalTag::Genus3_53 => {
            let k = NumberField::gaussian();
            let i = k.generator();
            let b = vec![
                finite(&k, k.from_int(0), 2),
                finite(&k, k.from_int(1), 1),
                finite(&k, k.from_int(-1), 1),
                finite(&k, i.clone(), 1),
                finite(&k, -&i, 1),
            ];
            (PGonalCurve::new(3, k, b)?, "y^3 z^3 = x^2 (x^4 - z^4)")
        }
        ExceptionalTag::FermatPP(p) => {
            let k = NumberField::cyclotomic_prime(p as usize)?;
            let z = k.generator();
            let b = (0..p).map(|j| finite(&k, -&z.pow(j), 1)).collect();
            (PGonalCurve::new(p, k, b)?, "y^p = -z^p - x^p; Fermat curve")
        }
        ExceptionalTag::Family2PP(p) => {
            let a = parameter.ok_or_else(|| Error::BadParameter("Family_2pp needs a parameter a".into()))?;
            if a.is_zero() {
                return Err(Error::BadParameter("a = 0".into()));
            }
            let a2p = num_traits::pow(a.clone(), 2 * p as usize);
            if a2p.is_one() {
                return Err(Error::BadParameter("a^(2p) = 1".into()));
            }
            let k = NumberField::cyclotomic_prime(p as usize)?;
            let z = k.generator();
            let ainv = a.recip();
            let mut b = Vec::new();
            for j in 0..p {
                b.push(finite(&k, z.pow(j).scale(&a), 1));
                b.push(finite(&k, z.pow(j).scale(&ainv), 1));
            }
            (
                PGonalCurve::new(p, k, b)?,
                "y^p z^p = (x^p - a^p z^p)(x^p - z^p / a^p)",
            )
        }
    };
    debug_assert_eq!((model.m(), model.p()), tag.tuple());
    Ok(ExceptionalCase { tag, model, notes })
}

/// Default parameter used when none is supplied for `Family_2pp`.
pub fn default_family_parameter() -> Q {
    q(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::curve_polynomial;
    use crate::exactfield::qf;

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify(3, 7).unwrap(),
            Classification::Exceptional(vec![ExceptionalTag::Klein37])
        );
        assert_eq!(
            classify(5, 5).unwrap(),
            Classification::Exceptional(vec![ExceptionalTag::FermatPP(5)])
        );
        assert_eq!(classify(7, 3).unwrap(), Classification::Unique);
        assert_eq!(
            classify(6, 3).unwrap(),
            Classification::Exceptional(vec![ExceptionalTag::Family2PP(3)])
        );
        assert_eq!(classify(3, 3).unwrap_err(), Error::GenusTooSmall(1));
    }

    #[test]
    fn stored_models_have_stated_genera() {
        for (tag, g) in [
            (ExceptionalTag::Klein37, 3),
            (ExceptionalTag::Genus2_43, 2),
            (ExceptionalTag::Bring45, 4),
            (ExceptionalTag::Genus3_53, 3),
            (ExceptionalTag::FermatPP(5), 6),
        ] {
            let case = exceptional_model(tag, None).unwrap();
            assert_eq!(case.model.genus(), g, "{tag}");
            assert!(!classify(case.model.m(), case.model.p()).unwrap().is_unique());
        }
    }

    #[test]
    fn genus2_43_branch_points_square_to_radicand() {
        let case = exceptional_model(ExceptionalTag::Genus2_43, None).unwrap();
        let k = case.model.field();
        let beta = k.generator();
        let sqrt3 = (&(&beta * &beta) + &k.from_int(26)).scale(&qf(1, 15));
        assert_eq!(&sqrt3 * &sqrt3, k.from_int(3));
        let radicand = &sqrt3.scale(&q(15)) - &k.from_int(26);
        assert_eq!(&beta * &beta, radicand);
    }

    #[test]
    fn family_polynomial_p3_a2() {
        let case = exceptional_model(ExceptionalTag::Family2PP(3), Some(q(2))).unwrap();
        let f = curve_polynomial(&case.model).unwrap();
        let want: Vec<Q> = vec![q(1), q(0), q(0), qf(-65, 8), q(0), q(0), q(1)];
        let got: Vec<Q> = f.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            exceptional_model(ExceptionalTag::Family2PP(3), Some(q(0))),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            exceptional_model(ExceptionalTag::Family2PP(3), Some(q(-1))),
            Err(Error::BadParameter(_))
        ));
        assert!(ExceptionalTag::parse("Fermat_pp", Some(3)).is_err());
    }
}

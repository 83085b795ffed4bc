//! Field of moduli relative to a finite Galois context, and the table of
//! degree bounds over it.

use std::fmt;
use std::str::FromStr;

use crate::curve::{are_isomorphic, PGonalCurve};
use crate::error::{Error, Result};
use crate::exactfield::{fixed_field, SubfieldDescription};
use crate::galois::{curve_galois_image, GaloisContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedGroup {
    Trivial,
    CyclicNontrivial,
    Other,
}

impl ReducedGroup {
    pub fn name(&self) -> &'static str {
        match self {
            ReducedGroup::Trivial => "trivial",
            ReducedGroup::CyclicNontrivial => "cyclic_nontrivial",
            ReducedGroup::Other => "other",
        }
    }
}

impl FromStr for ReducedGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(ReducedGroup::Trivial),
            "cyclic_nontrivial" => Ok(ReducedGroup::CyclicNontrivial),
            "other" => Ok(ReducedGroup::Other),
            _ => Err(Error::InconsistentFlags(format!("unknown reduced group {s}"))),
        }
    }
}

/// Caller assertions about `Aut(S)`; nothing here is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdvisorFlags {
    pub pgonal_group_normal: bool,
    pub reduced_group: ReducedGroup,
    pub phi_defined_over_moduli: bool,
    /// Only consulted for `p = 2`.
    pub genus: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rationale {
    NotNormal,
    NormalNonCyclic,
    NormalNonCyclicPhiOverModuli,
    FullGroup,
    FullGroupPhiOverModuli,
    CyclicReduced,
    CyclicReducedPhiOverModuli,
    HyperellipticEvenGenus,
    HyperellipticNontrivialReduced,
    Hyperelliptic,
    WorstCase,
}

impl Rationale {
    pub fn tag(&self) -> &'static str {
        match self {
            Rationale::NotNormal => "not_normal",
            Rationale::NormalNonCyclic => "normal_noncyclic_reduced",
            Rationale::NormalNonCyclicPhiOverModuli => "normal_noncyclic_reduced_phi_over_moduli",
            Rationale::FullGroup => "full_group",
            Rationale::FullGroupPhiOverModuli => "full_group_phi_over_moduli",
            Rationale::CyclicReduced => "cyclic_reduced",
            Rationale::CyclicReducedPhiOverModuli => "cyclic_reduced_phi_over_moduli",
            Rationale::HyperellipticEvenGenus => "hyperelliptic_even_genus",
            Rationale::HyperellipticNontrivialReduced => "hyperelliptic_nontrivial_reduced",
            Rationale::Hyperelliptic => "hyperelliptic",
            Rationale::WorstCase => "worst_case",
        }
    }
}

impl fmt::Display for Rationale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The smallest degree over the field of moduli that the flags justify.
///
/// A cyclic nontrivial reduced group is covered by no dedicated clause; it
/// gets the bound obtained by descending from a quadratic extension of the
/// field of moduli, as for the full-group case.
pub fn degree_bound_advisor(p: u64, flags: &AdvisorFlags) -> Result<(u64, Rationale)> {
    if !flags.pgonal_group_normal && flags.reduced_group == ReducedGroup::Trivial {
        return Err(Error::InconsistentFlags(
            "a trivial reduced group means the p-gonal group is all of Aut(S), hence normal".into(),
        ));
    }
    if p == 2 {
        if !flags.pgonal_group_normal {
            return Err(Error::InconsistentFlags("the hyperelliptic involution is central".into()));
        }
        if flags.genus.is_some_and(|g| g % 2 == 0) {
            return Ok((2, Rationale::HyperellipticEvenGenus));
        }
        if flags.reduced_group != ReducedGroup::Trivial {
            return Ok((2, Rationale::HyperellipticNontrivialReduced));
        }
        return Ok((4, Rationale::Hyperelliptic));
    }
    let phi = flags.phi_defined_over_moduli;
    Ok(match (flags.pgonal_group_normal, flags.reduced_group) {
        (false, _) => (2, Rationale::NotNormal),
        (true, ReducedGroup::Other) if phi => (2, Rationale::NormalNonCyclicPhiOverModuli),
        (true, ReducedGroup::Other) => (2 * (p - 1), Rationale::NormalNonCyclic),
        (true, ReducedGroup::Trivial) if phi => (4, Rationale::FullGroupPhiOverModuli),
        (true, ReducedGroup::Trivial) => (4 * (p - 1), Rationale::FullGroup),
        (true, ReducedGroup::CyclicNontrivial) if phi => (4, Rationale::CyclicReducedPhiOverModuli),
        (true, ReducedGroup::CyclicNontrivial) => (4 * (p - 1), Rationale::CyclicReduced),
    })
}

/// The field of moduli here is relative to the context: it is the fixed
/// field of `{σ ∈ ⟨σ₀⟩ : C^σ ≅ C}` inside `L`.
#[derive(Clone, Debug)]
pub struct ModuliReport {
    pub moduli_subfield: SubfieldDescription,
    pub stabilizer_order: usize,
    pub applied_bound: u64,
    pub rationale: Rationale,
}

/// Computes the relative field of moduli; the bound comes from `flags` or,
/// without them, is the worst case over all flag settings.
pub fn moduli_field(
    c: &PGonalCurve,
    ctx: &GaloisContext,
    flags: Option<&AdvisorFlags>,
    seed: u64,
) -> Result<ModuliReport> {
    if c.field() != ctx.field() {
        return Err(Error::FieldMismatch);
    }
    let elems = ctx.elements();
    let n = elems.len();
    let mut members = Vec::new();
    for (j, sigma) in elems.iter().enumerate() {
        let conj = curve_galois_image(sigma, c)?;
        if are_isomorphic(&conj, c)?.is_some() {
            members.push(j);
        }
    }
    for &a in &members {
        for &b in &members {
            if !members.contains(&((a + b) % n)) {
                return Err(Error::NotASubgroup);
            }
        }
    }
    let group: Vec<_> = members.iter().map(|&j| elems[j].clone()).collect();
    let moduli_subfield = fixed_field(ctx.field(), &group, seed).map_err(|e| match e {
        Error::NotAGroup => Error::NotASubgroup,
        e => e,
    })?;
    let p = c.p();
    let (applied_bound, rationale) = match flags {
        Some(f) => degree_bound_advisor(p, f)?,
        None if p == 2 => (4, Rationale::WorstCase),
        None => (4 * (p - 1), Rationale::WorstCase),
    };
    Ok(ModuliReport {
        moduli_subfield,
        stabilizer_order: members.len(),
        applied_bound,
        rationale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{FieldAutomorphism, NumberField};
    use crate::moebius::MobiusMap;

    fn flags(normal: bool, reduced: ReducedGroup, phi: bool) -> AdvisorFlags {
        AdvisorFlags {
            pgonal_group_normal: normal,
            reduced_group: reduced,
            phi_defined_over_moduli: phi,
            genus: None,
        }
    }

    #[test]
    fn advisor_clauses() {
        use ReducedGroup::*;
        assert_eq!(degree_bound_advisor(5, &flags(false, Other, false)).unwrap().0, 2);
        assert_eq!(degree_bound_advisor(5, &flags(true, Other, true)).unwrap().0, 2);
        assert_eq!(degree_bound_advisor(5, &flags(true, Other, false)).unwrap().0, 8);
        assert_eq!(degree_bound_advisor(5, &flags(true, Trivial, false)).unwrap().0, 16);
        assert_eq!(degree_bound_advisor(5, &flags(true, Trivial, true)).unwrap().0, 4);
        assert!(matches!(
            degree_bound_advisor(5, &flags(false, Trivial, false)),
            Err(Error::InconsistentFlags(_))
        ));
        let mut f = flags(true, Trivial, true);
        assert_eq!(degree_bound_advisor(2, &f).unwrap().0, 4);
        f.genus = Some(2);
        assert_eq!(degree_bound_advisor(2, &f).unwrap().0, 2);
    }

    #[test]
    fn advisor_is_monotone_in_phi() {
        use ReducedGroup::*;
        for p in [2u64, 3, 5, 7] {
            for normal in [true, false] {
                for reduced in [Trivial, CyclicNontrivial, Other] {
                    for genus in [None, Some(3), Some(4)] {
                        let mut weak = flags(normal, reduced, false);
                        weak.genus = genus;
                        let strong = AdvisorFlags { phi_defined_over_moduli: true, ..weak };
                        if let (Ok(a), Ok(b)) = (degree_bound_advisor(p, &weak), degree_bound_advisor(p, &strong)) {
                            assert!(b.0 <= a.0);
                            assert!([1, 2, 4, 2 * (p - 1), 4 * (p - 1)].contains(&b.0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn moduli_of_rational_and_twisted_and_generic_data() {
        let k = NumberField::gaussian();
        let ctx = GaloisContext::new(FieldAutomorphism::new(-&k.generator()).unwrap(), 0).unwrap();
        let data: Vec<_> = [0, 1, 3, 4, 9].iter().map(|&a| (k.from_int(a), 1)).collect();
        let c = PGonalCurve::from_finite(2, &k, &data).unwrap();
        let rep = moduli_field(&c, &ctx, None, 0).unwrap();
        assert!(rep.moduli_subfield.is_rationals());
        assert_eq!(rep.stabilizer_order, 2);

        let i = k.generator();
        let t = MobiusMap::new(k.one(), -&i, k.one(), i.clone()).unwrap();
        let twisted = c.transport(&t, 1).unwrap();
        assert!(moduli_field(&twisted, &ctx, None, 0).unwrap().moduli_subfield.is_rationals());

        let generic: Vec<_> = vec![
            (k.from_int(0), 1),
            (k.from_int(1), 1),
            (i.clone(), 1),
            (k.from_int(3), 1),
            (k.from_int(7), 1),
        ];
        let c = PGonalCurve::from_finite(2, &k, &generic).unwrap();
        let rep = moduli_field(&c, &ctx, None, 0).unwrap();
        assert_eq!(rep.moduli_subfield.degree(), 2);
        assert_eq!(rep.stabilizer_order, 1);
    }
}

//! Descent of branch data to a p-gonal field of definition.
//!
//! Over the kernel `Γ₁ = ⟨σ⟩` of the p-gonal character the conjugates
//! `C^{σ^j}` are identified with `C` by Möbius maps `g_j` with
//! `g_{στ} = g_τ^σ ∘ g_σ`. The cocycle is split by matrix averaging after
//! the holonomy scalar has been made trivial, possibly over `L(√c)`.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{
    curve_polynomial, curve_validate, isomorphisms, isomorphisms_limited, normalize_infinity,
    witness_holds, FieldPoly, IsomorphismWitness, PGonalCurve,
};
use crate::error::{Error, Result};
use crate::exactfield::{
    adjoin_sqrt, fixed_field, is_in_subfield, sqrt_in_field, Embedding, FieldAutomorphism,
    FieldElement, NumberField, SubfieldDescription, Q, DEFAULT_MAX_DEGREE,
};
use crate::exceptional::classify;
use crate::galois::{curve_galois_image, pgonal_character, stabilizer_field, GaloisContext};
use crate::moebius::{MobiusMap, MobiusMatrix};

/// Upper bound on norm-equation candidates.
const NORM_SEARCH_LIMIT: usize = 10_000;
/// Upper bound on averaging trial matrices.
const AVERAGING_TRIALS: usize = 100;

/// `maps[j]` is `g_{σ^j}` for the generator `σ` of the context.
#[derive(Clone, Debug)]
pub struct Cocycle {
    context: GaloisContext,
    maps: Vec<MobiusMap>,
}

impl Cocycle {
    pub fn new(context: GaloisContext, maps: Vec<MobiusMap>) -> Result<Self> {
        if maps.len() != context.order() || maps.iter().any(|m| m.field() != context.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Cocycle { context, maps })
    }

    pub fn context(&self) -> &GaloisContext {
        &self.context
    }

    pub fn maps(&self) -> &[MobiusMap] {
        &self.maps
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }
}

/// The unique `k = 1` identification `C → C^{σ^j}` for every `j`.
pub fn build_cocycle(c: &PGonalCurve, gamma1: &GaloisContext) -> Result<Cocycle> {
    let mut maps = Vec::with_capacity(gamma1.order());
    for (j, sigma) in gamma1.elements().iter().enumerate() {
        let conj = curve_galois_image(sigma, c)?;
        let found = isomorphisms_limited(c, &conj, &[1], 2)?;
        match found.len() {
            0 => return Err(Error::NoMatchingMap(j)),
            1 => maps.push(found[0].map.normalized()),
            _ => return Err(Error::NonUniqueMap(j)),
        }
    }
    Cocycle::new(gamma1.clone(), maps)
}

/// Every cocycle generated by some `k = 1` identification `C → C^σ` whose
/// chain `σ^{n−1}(g) ∘ … ∘ σ(g) ∘ g` closes up to the identity. Used when the
/// curve has extra symmetries and the identification is not unique.
pub fn cocycle_candidates(c: &PGonalCurve, gamma1: &GaloisContext) -> Result<Vec<Cocycle>> {
    let n = gamma1.order();
    let k = gamma1.field();
    if n == 1 {
        return Ok(vec![Cocycle::new(gamma1.clone(), vec![MobiusMap::identity(k)])?]);
    }
    let sigma = gamma1.generator();
    let conj = curve_galois_image(sigma, c)?;
    let found = isomorphisms(c, &conj, &[1])?;
    if found.is_empty() {
        return Err(Error::NoMatchingMap(1));
    }
    let mut out = Vec::new();
    for w in found {
        let g = w.map.normalized();
        let mut maps = vec![MobiusMap::identity(k), g.clone()];
        for _ in 2..n {
            let prev = maps.last().unwrap();
            maps.push(prev.galois_image(sigma)?.compose(&g)?.normalized());
        }
        let closing = maps[n - 1].galois_image(sigma)?.compose(&g)?;
        if closing.is_identity() {
            out.push(Cocycle::new(gamma1.clone(), maps)?);
        }
    }
    if out.is_empty() {
        return Err(Error::HolonomyNotScalar);
    }
    Ok(out)
}

/// Checks `g_{στ} = g_τ^σ ∘ g_σ` for all pairs, by proportionality.
pub fn verify_cocycle(z: &Cocycle) -> Result<()> {
    let n = z.order();
    let elems = z.context.elements();
    if !z.maps[0].is_identity() {
        return Err(Error::CocycleViolation(0, 0));
    }
    for a in 0..n {
        for b in 0..n {
            let rhs = z.maps[b].galois_image(&elems[a])?.compose(&z.maps[a])?;
            if z.maps[(a + b) % n] != rhs {
                return Err(Error::CocycleViolation(a, b));
            }
        }
    }
    Ok(())
}

/// A map `T` over `L` or `L(√c)` with `T^σ ∘ g_σ = T`.
#[derive(Clone, Debug)]
pub struct SplittingMap {
    pub extended_field: NumberField,
    /// `L → extended_field`.
    pub embedding: Embedding,
    /// Generator of the group acting on `extended_field`; the identity when
    /// the descent field is `L` itself.
    pub sigma: FieldAutomorphism,
    /// `g_σ` for that generator, over `extended_field`.
    pub generator_map: MobiusMap,
    pub map: MobiusMap,
    /// The holonomy scalar, an element of `L`.
    pub obstruction: FieldElement,
    pub extension_degree: usize,
}

impl SplittingMap {
    /// `T^σ ∘ g_σ = T` up to proportionality.
    pub fn satisfies_identity(&self) -> bool {
        match self.map.galois_image(&self.sigma) {
            Ok(ts) => ts.compose(&self.generator_map).map(|m| m == self.map).unwrap_or(false),
            Err(_) => false,
        }
    }
}

/// `σ^{n−1}(G) ⋯ σ(G) G`.
pub fn holonomy(g: &MobiusMatrix, sigma: &FieldAutomorphism, n: usize) -> Result<MobiusMatrix> {
    let mut acc = g.clone();
    let mut cur = g.clone();
    for _ in 1..n {
        cur = cur.galois_image(sigma)?;
        acc = cur.mul(&acc);
    }
    Ok(acc)
}

fn norm(mu: &FieldElement, sigma: &FieldAutomorphism, n: usize) -> Result<FieldElement> {
    let mut acc = mu.clone();
    let mut cur = mu.clone();
    for _ in 1..n {
        cur = sigma.apply(&cur)?;
        acc = &acc * &cur;
    }
    Ok(acc)
}

fn rational_nth_root(x: &Q, n: usize) -> Option<Q> {
    let root = |v: &BigInt| -> Option<BigInt> {
        if v.is_negative() {
            if n % 2 == 0 {
                return None;
            }
            let r = -(-v).nth_root(n as u32);
            return (num_traits::pow(r.clone(), n) == *v).then_some(r);
        }
        let r = v.nth_root(n as u32);
        (num_traits::pow(r.clone(), n) == *v).then_some(r)
    };
    Some(Q::new(root(x.numer())?, root(x.denom())?))
}

/// Candidates for which the in-field square-root test is also tried; it
/// factors a polynomial, so it is kept off the long tail of the search.
const SQRT_TEST_LIMIT: usize = 64;

/// An `r` fixed by `σ` with `r^n = h`, found among rationals and, when
/// `in_field` is set and `n = 2`, square roots inside the field.
fn fixed_nth_root(
    h: &FieldElement,
    sigma: &FieldAutomorphism,
    n: usize,
    in_field: bool,
) -> Result<Option<FieldElement>> {
    if let Some(x) = h.as_rational() {
        return Ok(rational_nth_root(&x, n).map(|r| h.field().from_rational(r)));
    }
    if n == 2 && in_field {
        if let Some(r) = sqrt_in_field(h)? {
            if sigma.apply(&r)? == r {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

/// Deterministic candidates: `1`, entries of `G`, `det G`, their inverses,
/// then integer coordinate vectors of growing height up to 3.
fn norm_candidates(g: &MobiusMatrix) -> Vec<FieldElement> {
    let field = g.0[0].field().clone();
    let mut out = vec![field.one()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(field.one());
    let mut push = |x: FieldElement, out: &mut Vec<FieldElement>| {
        if !x.is_zero() && seen.insert(x.clone()) {
            out.push(x);
        }
    };
    for e in g.0.iter().chain(std::iter::once(&g.det())) {
        push(e.clone(), &mut out);
        if let Ok(inv) = e.inv() {
            push(inv, &mut out);
        }
    }
    let d = field.degree();
    'outer: for h in 1..=3i64 {
        let mut v = vec![-h; d];
        loop {
            if v.iter().any(|x| x.abs() == h) {
                if out.len() >= NORM_SEARCH_LIMIT {
                    break 'outer;
                }
                push(field.from_int_coords(&v), &mut out);
            }
            let mut i = 0;
            loop {
                if i == d {
                    continue 'outer;
                }
                if v[i] < h {
                    v[i] += 1;
                    break;
                }
                v[i] = -h;
                i += 1;
            }
        }
    }
    out
}

/// A scalar `s` with `holonomy(sG) = I`, if the bounded search finds one.
fn norm_search(g: &MobiusMatrix, c: &FieldElement, sigma: &FieldAutomorphism, n: usize) -> Result<Option<FieldElement>> {
    for (idx, mu) in norm_candidates(g).into_iter().enumerate() {
        let h = c * &norm(&mu, sigma, n)?;
        if let Some(r) = fixed_nth_root(&h, sigma, n, idx < SQRT_TEST_LIMIT)? {
            return Ok(Some(mu.try_div(&r)?));
        }
    }
    Ok(None)
}

fn trial_matrices(field: &NumberField, seed: u64) -> Vec<MobiusMatrix> {
    let z = field.zero();
    let o = field.one();
    let elem = |i: usize, x: &FieldElement| {
        let mut e = [z.clone(), z.clone(), z.clone(), z.clone()];
        e[i] = x.clone();
        MobiusMatrix(e)
    };
    let mut out = vec![MobiusMatrix::identity(field)];
    let t = field.generator();
    let mut tk = o.clone();
    for _ in 0..field.degree() {
        for i in 0..4 {
            out.push(elem(i, &tk));
        }
        out.push(MobiusMatrix([tk.clone(), z.clone(), z.clone(), o.clone()]));
        tk = &tk * &t;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = field.degree();
    while out.len() < AVERAGING_TRIALS {
        let mut entry = || {
            let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
            field.from_int_coords(&v)
        };
        out.push(MobiusMatrix([entry(), entry(), entry(), entry()]));
    }
    out.truncate(AVERAGING_TRIALS);
    out
}

/// With `holonomy(G) = I`, finds `T` such that `σ(T)·G ∝ T`.
fn average(g: &MobiusMatrix, sigma: &FieldAutomorphism, n: usize, seed: u64) -> Result<MobiusMap> {
    let field = g.0[0].field().clone();
    // inverses of g_{σ^k} = σ^{k−1}(G) ⋯ σ(G) G
    let mut inv = Vec::with_capacity(n);
    let mut gk = MobiusMatrix::identity(&field);
    for _ in 0..n {
        inv.push(gk.inverse().ok_or(Error::SingularMap)?);
        gk = gk.galois_image(sigma)?.mul(g);
    }
    let powers = sigma.powers();
    for q in trial_matrices(&field, seed) {
        let mut acc = MobiusMatrix::zero(&field);
        let mut sq = q.clone();
        for (k, ik) in inv.iter().enumerate() {
            if k > 0 {
                sq = q.galois_image(&powers[k % powers.len()])?;
            }
            acc = acc.add(&ik.mul(&sq));
        }
        if let Some(t) = acc.inverse() {
            return t.into_map();
        }
    }
    Err(Error::SplittingFailed("no invertible average".into()))
}

/// Splits a verified cocycle over a cyclic group, adjoining `√c` to `L` when
/// the holonomy scalar `c` is not a norm within the search bound.
pub fn split_cocycle(z: &Cocycle, max_degree: usize, seed: u64) -> Result<SplittingMap> {
    let ctx = z.context();
    let field = ctx.field().clone();
    let n = z.order();
    let sigma = ctx.generator().clone();
    if n == 1 {
        return Ok(SplittingMap {
            extended_field: field.clone(),
            embedding: Embedding::identity(&field),
            sigma,
            generator_map: MobiusMap::identity(&field),
            map: MobiusMap::identity(&field),
            obstruction: field.one(),
            extension_degree: 1,
        });
    }
    let g_map = z.maps()[1].normalized();
    let g = MobiusMatrix::from_map(&g_map);
    let c = holonomy(&g, &sigma, n)?
        .scalar_value()
        .ok_or(Error::HolonomyNotScalar)?;
    if sigma.apply(&c)? != c {
        return Err(Error::HolonomyNotScalar);
    }

    let finish = |g: MobiusMatrix,
                  sigma: FieldAutomorphism,
                  embedding: Embedding,
                  extension_degree: usize|
     -> Result<SplittingMap> {
        debug_assert!(holonomy(&g, &sigma, n)?.scalar_value().is_some_and(|s| s.is_one()));
        let t = average(&g, &sigma, n, seed)?;
        let s = SplittingMap {
            extended_field: embedding.target().clone(),
            embedding,
            sigma,
            generator_map: g.into_map()?,
            map: t,
            obstruction: c.clone(),
            extension_degree,
        };
        if !s.satisfies_identity() {
            return Err(Error::SplittingFailed("splitting identity violated".into()));
        }
        Ok(s)
    };

    if let Some(s) = norm_search(&g, &c, &sigma, n)? {
        return finish(g.scale(&s), sigma, Embedding::identity(&field), 1);
    }

    let adj = adjoin_sqrt(&c, max_degree)?;
    if !adj.extended() {
        let r = &adj.root;
        if n == 2 && sigma.apply(r)? == -r {
            // √c ∈ L is moved by σ, so K₁(√c) = L and the data already lives there
            return Ok(SplittingMap {
                extended_field: field.clone(),
                embedding: Embedding::identity(&field),
                sigma: FieldAutomorphism::identity(&field),
                generator_map: MobiusMap::identity(&field),
                map: MobiusMap::identity(&field),
                obstruction: c.clone(),
                extension_degree: 2,
            });
        }
        return Err(Error::SplittingFailed(c.to_string()));
    }
    let sigma2 = adj.extend_automorphism(&sigma)?;
    let g2 = g.embed(&adj.embedding)?;
    if n == 2 {
        let g2 = g2.scale(&adj.root.inv()?);
        return finish(g2, sigma2, adj.embedding.clone(), 2);
    }
    let c2 = adj.embedding.apply(&c)?;
    match norm_search(&g2, &c2, &sigma2, n)? {
        Some(s) => finish(g2.scale(&s), sigma2, adj.embedding.clone(), 2),
        None => Err(Error::SplittingFailed(c.to_string())),
    }
}

/// Branch points `T(a_j)`, multiplicities `k·n_j mod p`.
pub fn transport_branch_data(c: &PGonalCurve, t: &MobiusMap, k: u64) -> Result<PGonalCurve> {
    c.transport(t, k)
}

#[derive(Clone, Copy, Debug)]
pub struct DescentOptions {
    /// The caller asserts the p-gonal group is unique. Exceptional `(m, p)`
    /// are then accepted, and curves with extra symmetries get a
    /// deterministic choice of character and cocycle instead of an error.
    pub assume_unique: bool,
    pub max_field_degree: usize,
    pub seed: u64,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions {
            assume_unique: false,
            max_field_degree: DEFAULT_MAX_DEGREE,
            seed: 0,
        }
    }
}

/// Degrees over the base field `K` of the context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub k1_over_k: usize,
    pub k2_over_k1: usize,
    pub f_over_k: usize,
}

#[derive(Clone, Debug)]
pub struct DescentResult {
    pub character: Vec<u64>,
    /// `K₁` inside `L`.
    pub k1: SubfieldDescription,
    pub cocycle: Cocycle,
    pub splitting: SplittingMap,
    /// The shift moving infinity off the branch locus, over the extended field.
    pub normalization: MobiusMap,
    /// Branch data over the extended field whose polynomial lies in `F`.
    pub output_curve: PGonalCurve,
    /// `F` inside the extended field.
    pub output_field: SubfieldDescription,
    pub output_polynomial: FieldPoly,
    /// Input (embedded) to output.
    pub witness: IsomorphismWitness,
    pub degrees: DegreeReport,
}

impl DescentResult {
    /// Coordinates of every output coefficient over `F`'s primitive element.
    pub fn polynomial_over_f(&self) -> Result<Vec<Vec<Q>>> {
        self.output_polynomial
            .coeffs()
            .iter()
            .map(|a| is_in_subfield(a, &self.output_field).ok_or(Error::CoefficientNotInSubfield))
            .collect()
    }
}

/// The full pipeline: character, `K₁`, cocycle, splitting, transport.
pub fn descend(c: &PGonalCurve, ctx: &GaloisContext, opts: &DescentOptions) -> Result<DescentResult> {
    if c.field() != ctx.field() {
        return Err(Error::FieldMismatch);
    }
    if !opts.assume_unique && !classify(c.m(), c.p())?.is_unique() {
        return Err(Error::ExceptionalCase(c.m(), c.p()));
    }
    let chi = pgonal_character(c, ctx, opts.assume_unique)?;
    let (k1, gamma1) = stabilizer_field(&chi, ctx, opts.seed)?;

    let cocycles = if opts.assume_unique {
        cocycle_candidates(c, &gamma1)?
    } else {
        vec![build_cocycle(c, &gamma1)?]
    };
    let mut best: Option<(Cocycle, SplittingMap)> = None;
    let mut first_err = None;
    for z in cocycles {
        verify_cocycle(&z)?;
        match split_cocycle(&z, opts.max_field_degree, opts.seed) {
            Ok(s) => {
                let done = s.extension_degree == 1;
                if best.is_none() || done {
                    best = Some((z, s));
                }
                if done {
                    break;
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    let Some((cocycle, splitting)) = best else {
        return Err(first_err.unwrap_or(Error::SplittingFailed("no cocycle".into())));
    };

    let embedded = c.embed(&splitting.embedding)?;
    let moved = transport_branch_data(&embedded, &splitting.map, 1)?;
    let (output_curve, normalization) = normalize_infinity(&moved, &[])?;
    let big = splitting.extended_field.clone();
    let output_field = fixed_field(&big, &splitting.sigma.powers(), opts.seed)?;
    let output_polynomial = curve_polynomial(&output_curve)?;
    for a in output_polynomial.coeffs() {
        if is_in_subfield(a, &output_field).is_none() {
            return Err(Error::CoefficientNotInSubfield);
        }
    }
    let dk = ctx.base().degree();
    let degrees = DegreeReport {
        k1_over_k: k1.degree() / dk,
        k2_over_k1: output_field.degree() / k1.degree(),
        f_over_k: output_field.degree() / dk,
    };
    debug_assert_eq!(degrees.k1_over_k, chi.image_size());
    debug_assert_eq!(degrees.k2_over_k1, splitting.extension_degree);
    let witness = IsomorphismWitness {
        map: normalization.compose(&splitting.map)?,
        scaling_exponent: 1,
    };
    Ok(DescentResult {
        character: chi.values().to_vec(),
        k1,
        cocycle,
        splitting,
        normalization,
        output_curve,
        output_field,
        output_polynomial,
        witness,
        degrees,
    })
}

fn clause(ok: bool, name: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CertificateInvalid(name.to_string()))
    }
}

/// Re-checks a result against its input from scratch.
pub fn certify(input: &PGonalCurve, ctx: &GaloisContext, r: &DescentResult) -> Result<()> {
    let s = &r.splitting;
    let big = &s.extended_field;
    let out = &r.output_curve;
    clause(
        s.embedding.source() == input.field()
            && out.field() == big
            && r.output_field.ambient() == big
            && r.witness.map.field() == big
            && s.sigma.field() == big,
        "fields",
    )?;

    let embedded = input
        .embed(&s.embedding)
        .map_err(|_| Error::CertificateInvalid("witness".into()))?;
    clause(witness_holds(&embedded, out, &r.witness), "witness")?;

    let members = r
        .output_polynomial
        .coeffs()
        .iter()
        .all(|a| a.field() == big && is_in_subfield(a, &r.output_field).is_some());
    clause(members, "coefficients")?;
    let recomputed = curve_polynomial(out).map_err(|_| Error::CertificateInvalid("coefficients".into()))?;
    clause(recomputed == r.output_polynomial, "coefficients")?;

    let dk = ctx.base().degree();
    let df = r.output_field.degree();
    let base_in_f = s
        .embedding
        .apply(ctx.base().primitive_element())
        .map(|b| r.output_field.contains(&b))
        .unwrap_or(false);
    let d = r.degrees;
    clause(
        base_in_f
            && df % dk == 0
            && d.f_over_k == df / dk
            && d.k1_over_k * d.k2_over_k1 == d.f_over_k
            && d.k1_over_k * dk == r.k1.degree()
            && d.f_over_k as u64 <= 2 * (input.p() - 1),
        "degree",
    )?;

    clause(curve_validate(out).is_ok() && out.genus() == input.genus(), "genus")?;

    let fixes_f = s.sigma.apply(r.output_field.primitive_element()).ok().as_ref()
        == Some(r.output_field.primitive_element());
    let stable = curve_galois_image(&s.sigma, out)
        .map(|img| img.same_data(out))
        .unwrap_or(false);
    clause(fixes_f && stable, "stability")?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TamperMode {
    Multiplicity,
    Coefficient,
    DegreeReport,
}

impl TamperMode {
    pub const ALL: [TamperMode; 3] = [TamperMode::Multiplicity, TamperMode::Coefficient, TamperMode::DegreeReport];

    /// The certificate clause expected to reject this tampering.
    pub fn clause(&self) -> &'static str {
        match self {
            TamperMode::Multiplicity => "witness",
            TamperMode::Coefficient => "coefficients",
            TamperMode::DegreeReport => "degree",
        }
    }
}

/// A copy of `r` corrupted in one place, for exercising [`certify`].
pub fn tamper(r: &DescentResult, mode: TamperMode) -> DescentResult {
    let mut t = r.clone();
    match mode {
        TamperMode::Multiplicity => {
            let out = &r.output_curve;
            let mut branches = out.branches().to_vec();
            branches[0].multiplicity += 1;
            t.output_curve = PGonalCurve::new_unvalidated(out.p(), out.field().clone(), branches);
        }
        TamperMode::Coefficient => {
            let big = r.output_curve.field();
            let mut coeffs = r.output_polynomial.coeffs().to_vec();
            let gen = big.generator();
            coeffs[0] = if r.output_field.contains(&gen) {
                &coeffs[0] + &big.one()
            } else {
                gen
            };
            t.output_polynomial = FieldPoly::new(coeffs);
        }
        TamperMode::DegreeReport => {
            t.degrees.f_over_k += 1;
        }
    }
    t
}

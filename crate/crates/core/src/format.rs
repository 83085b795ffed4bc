//! The `pgonal/1` JSON documents.
//!
//! Every document is `{"format_version": "pgonal/1", "kind": K, "payload": P}`.
//! Rationals are `[num, den]` pairs whose entries are JSON integers, or
//! decimal strings when they do not fit in 64 bits. Field elements are
//! coordinate arrays on the power basis of the generator `t`; points of P¹
//! are coordinate arrays or `"inf"`. Unknown keys are rejected. Output is
//! canonical: keys sorted, no insignificant whitespace.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::curve::{BranchDatum, FieldPoly, IsomorphismWitness, PGonalCurve};
use crate::descent::{Cocycle, DegreeReport, DescentResult, SplittingMap};
use crate::error::{Error, Result};
use crate::exactfield::{
    Embedding, FieldAutomorphism, FieldElement, NumberField, QPoly, SubfieldDescription, Q,
};
use crate::galois::GaloisContext;
use crate::moduli::{AdvisorFlags, ModuliReport, ReducedGroup};
use crate::moebius::{MobiusMap, ProjPoint};

pub const FORMAT_VERSION: &str = "pgonal/1";

/// Largest field degree accepted when reading a document.
const READ_DEGREE_LIMIT: usize = 64;

/// A descent problem: a curve, its Galois context and caller assertions.
#[derive(Clone, Debug)]
pub struct Problem {
    pub curve: PGonalCurve,
    pub context: GaloisContext,
    pub assume_unique: bool,
    pub advisor: Option<AdvisorFlags>,
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::SchemaError {
        path: path.to_string(),
        message: message.into(),
    }
}

/// A JSON value with its key path, for error reporting.
#[derive(Clone, Copy)]
struct Node<'a> {
    v: &'a Value,
    path: &'a str,
}

struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
    used: Vec<&'static str>,
}

impl<'a> Obj<'a> {
    fn new(node: Node<'a>) -> Result<Self> {
        let map = node
            .v
            .as_object()
            .ok_or_else(|| schema(node.path, "expected an object"))?;
        Ok(Obj {
            map,
            path: node.path.to_string(),
            used: Vec::new(),
        })
    }

    fn child_path(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn get(&mut self, key: &'static str) -> Option<(&'a Value, String)> {
        self.used.push(key);
        self.map.get(key).map(|v| (v, self.child_path(key)))
    }

    fn req(&mut self, key: &'static str) -> Result<(&'a Value, String)> {
        let path = self.child_path(key);
        self.get(key).ok_or_else(|| schema(&path, "missing key"))
    }

    fn finish(self) -> Result<()> {
        for k in self.map.keys() {
            if !self.used.contains(&k.as_str()) {
                return Err(schema(&self.child_path(k), "unknown key"));
            }
        }
        Ok(())
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn as_bool(v: &Value, path: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| schema(path, "expected a boolean"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

// ---- scalars ----

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value, path: &str) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(u) = v.as_u64() {
        return Ok(BigInt::from(u));
    }
    if let Some(s) = v.as_str() {
        let ok = !s.is_empty()
            && s.strip_prefix('-').unwrap_or(s).chars().all(|c| c.is_ascii_digit())
            && !s.strip_prefix('-').unwrap_or(s).is_empty();
        if ok {
            if let Ok(n) = s.parse::<BigInt>() {
                return Ok(n);
            }
        }
    }
    Err(schema(path, "expected an integer"))
}

pub fn rational_to_json(r: &Q) -> Value {
    json!([int_to_json(r.numer()), int_to_json(r.denom())])
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Q> {
    let a = as_array(v, path)?;
    if a.len() != 2 {
        return Err(schema(path, "expected [numerator, denominator]"));
    }
    let n = int_from_json(&a[0], &format!("{path}[0]"))?;
    let d = int_from_json(&a[1], &format!("{path}[1]"))?;
    if d.is_zero() || d.is_negative() {
        return Err(schema(&format!("{path}[1]"), "denominator must be positive"));
    }
    Ok(Q::new(n, d))
}

fn rationals_to_json(rs: &[Q]) -> Value {
    Value::Array(rs.iter().map(rational_to_json).collect())
}

fn rationals_from_json(v: &Value, path: &str) -> Result<Vec<Q>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_from_json(x, &format!("{path}[{i}]")))
        .collect()
}

// ---- fields and elements ----

pub fn field_to_json(k: &NumberField) -> Value {
    json!({
        "minpoly": rationals_to_json(k.min_poly().coeffs()),
        "generator": k.generator_symbol(),
    })
}

pub fn field_from_json(v: &Value, path: &str) -> Result<NumberField> {
    let mut o = Obj::new(Node { v, path })?;
    let (mp, mp_path) = o.req("minpoly")?;
    let coeffs = rationals_from_json(mp, &mp_path)?;
    if let Some((g, g_path)) = o.get("generator") {
        if as_str(g, &g_path)? != "t" {
            return Err(schema(&g_path, "the generator must be named \"t\""));
        }
    }
    o.finish()?;
    let poly = QPoly::new(coeffs);
    if poly.degree().is_none_or(|d| d == 0) {
        return Err(schema(&mp_path, "minimal polynomial must have positive degree"));
    }
    NumberField::new(poly, READ_DEGREE_LIMIT).map_err(|e| schema(&mp_path, e.to_string()))
}

pub fn element_to_json(a: &FieldElement) -> Value {
    rationals_to_json(a.coords())
}

pub fn element_from_json(k: &NumberField, v: &Value, path: &str) -> Result<FieldElement> {
    let coords = rationals_from_json(v, path)?;
    if coords.len() != k.degree() {
        return Err(schema(
            path,
            format!("expected {} coordinates, got {}", k.degree(), coords.len()),
        ));
    }
    k.from_coords(coords).map_err(|e| schema(path, e.to_string()))
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    match p.affine() {
        None => Value::String("inf".into()),
        Some(a) => element_to_json(a),
    }
}

pub fn point_from_json(k: &NumberField, v: &Value, path: &str) -> Result<ProjPoint> {
    match v.as_str() {
        Some("inf") => Ok(ProjPoint::infinity(k)),
        Some(_) => Err(schema(path, "expected coordinates or \"inf\"")),
        None => Ok(ProjPoint::finite(element_from_json(k, v, path)?)),
    }
}

pub fn map_to_json(m: &MobiusMap) -> Value {
    let [a, b, c, d] = m.entries();
    json!([
        [element_to_json(&a), element_to_json(&b)],
        [element_to_json(&c), element_to_json(&d)]
    ])
}

pub fn map_from_json(k: &NumberField, v: &Value, path: &str) -> Result<MobiusMap> {
    let rows = as_array(v, path)?;
    if rows.len() != 2 {
        return Err(schema(path, "expected a 2x2 matrix"));
    }
    let mut e = Vec::with_capacity(4);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let r = as_array(row, &rp)?;
        if r.len() != 2 {
            return Err(schema(&rp, "expected a 2x2 matrix"));
        }
        for (j, x) in r.iter().enumerate() {
            e.push(element_from_json(k, x, &format!("{rp}[{j}]"))?);
        }
    }
    let [a, b, c, d]: [FieldElement; 4] = e.try_into().unwrap();
    MobiusMap::new(a, b, c, d).map_err(|err| schema(path, err.to_string()))
}

fn subfield_to_json(s: &SubfieldDescription) -> Value {
    json!({
        "primitive": element_to_json(s.primitive_element()),
        "minpoly": rationals_to_json(s.min_poly_over_q().coeffs()),
    })
}

fn subfield_from_json(k: &NumberField, v: &Value, path: &str) -> Result<SubfieldDescription> {
    let mut o = Obj::new(Node { v, path })?;
    let (p, pp) = o.req("primitive")?;
    let prim = element_from_json(k, p, &pp)?;
    let (m, mpath) = o.req("minpoly")?;
    let mp = QPoly::new(rationals_from_json(m, &mpath)?);
    o.finish()?;
    let s = SubfieldDescription::new(prim);
    if s.min_poly_over_q() != &mp {
        return Err(schema(&mpath, "does not match the primitive element"));
    }
    Ok(s)
}

// ---- curves, contexts, problems ----

pub fn curve_to_json(c: &PGonalCurve) -> Value {
    let branches: Vec<Value> = c
        .listed_branches()
        .iter()
        .map(|b| json!({"point": point_to_json(&b.point), "mult": b.multiplicity}))
        .collect();
    json!({"p": c.p(), "field": field_to_json(c.field()), "branches": branches})
}

fn curve_parts(v: &Value, path: &str) -> Result<(u64, NumberField, Vec<BranchDatum>)> {
    let mut o = Obj::new(Node { v, path })?;
    let (p, pp) = o.req("p")?;
    let p = as_u64(p, &pp)?;
    let (f, fp) = o.req("field")?;
    let field = field_from_json(f, &fp)?;
    let (b, bp) = o.req("branches")?;
    let mut branches = Vec::new();
    for (i, item) in as_array(b, &bp)?.iter().enumerate() {
        let ip = format!("{bp}[{i}]");
        let mut bo = Obj::new(Node { v: item, path: &ip })?;
        let (pt, ptp) = bo.req("point")?;
        let point = point_from_json(&field, pt, &ptp)?;
        let (m, mp) = bo.req("mult")?;
        let mult = as_u64(m, &mp)?;
        bo.finish()?;
        branches.push(BranchDatum::new(point, mult));
    }
    o.finish()?;
    Ok((p, field, branches))
}

/// Parses and validates a curve.
pub fn curve_from_json(v: &Value, path: &str) -> Result<PGonalCurve> {
    let (p, field, branches) = curve_parts(v, path)?;
    PGonalCurve::new(p, field, branches)
}

/// Parses a curve, keeping invalid data so that a certificate check can
/// reject it with a named clause.
fn curve_from_json_lenient(v: &Value, path: &str) -> Result<PGonalCurve> {
    let (p, field, branches) = curve_parts(v, path)?;
    match PGonalCurve::new(p, field.clone(), branches.clone()) {
        Ok(c) => Ok(c),
        Err(_) => Ok(PGonalCurve::new_unvalidated(p, field, branches)),
    }
}

pub fn context_to_json(ctx: &GaloisContext) -> Value {
    json!({
        "field": field_to_json(ctx.field()),
        "sigma_image": element_to_json(ctx.generator().generator_image()),
        "order": ctx.order(),
        "base_hint": ctx.base().degree(),
    })
}

pub fn context_from_json(v: &Value, path: &str, seed: u64) -> Result<GaloisContext> {
    let mut o = Obj::new(Node { v, path })?;
    let (f, fp) = o.req("field")?;
    let field = field_from_json(f, &fp)?;
    let (s, sp) = o.req("sigma_image")?;
    let image = element_from_json(&field, s, &sp)?;
    let (n, np) = o.req("order")?;
    let order = as_u64(n, &np)? as usize;
    let hint = match o.get("base_hint") {
        Some((h, hp)) => Some((as_u64(h, &hp)? as usize, hp)),
        None => None,
    };
    o.finish()?;
    let sigma = FieldAutomorphism::new(image).map_err(|e| schema(&sp, e.to_string()))?;
    if sigma.order() != order {
        return Err(schema(&np, format!("the automorphism has order {}", sigma.order())));
    }
    let ctx = GaloisContext::new(sigma, seed)?;
    if let Some((h, hp)) = hint {
        if h != ctx.base().degree() {
            return Err(schema(&hp, format!("the fixed field has degree {}", ctx.base().degree())));
        }
    }
    Ok(ctx)
}

fn advisor_to_json(f: &AdvisorFlags) -> Value {
    let mut m = Map::new();
    m.insert("pgonal_group_normal".into(), json!(f.pgonal_group_normal));
    m.insert("reduced_group".into(), json!(f.reduced_group.name()));
    m.insert("phi_defined_over_moduli".into(), json!(f.phi_defined_over_moduli));
    if let Some(g) = f.genus {
        m.insert("genus".into(), json!(g));
    }
    Value::Object(m)
}

fn advisor_from_json(v: &Value, path: &str) -> Result<AdvisorFlags> {
    let mut o = Obj::new(Node { v, path })?;
    let (n, np) = o.req("pgonal_group_normal")?;
    let normal = as_bool(n, &np)?;
    let (r, rp) = o.req("reduced_group")?;
    let reduced: ReducedGroup = as_str(r, &rp)?
        .parse()
        .map_err(|e: Error| schema(&rp, e.to_string()))?;
    let (p, pp) = o.req("phi_defined_over_moduli")?;
    let phi = as_bool(p, &pp)?;
    let genus = match o.get("genus") {
        Some((g, gp)) => Some(g.as_i64().ok_or_else(|| schema(&gp, "expected an integer"))?),
        None => None,
    };
    o.finish()?;
    Ok(AdvisorFlags {
        pgonal_group_normal: normal,
        reduced_group: reduced,
        phi_defined_over_moduli: phi,
        genus,
    })
}

pub fn problem_to_json(pr: &Problem) -> Value {
    let mut m = Map::new();
    m.insert("curve".into(), curve_to_json(&pr.curve));
    m.insert("context".into(), context_to_json(&pr.context));
    if pr.assume_unique {
        m.insert("assume_unique".into(), json!(true));
    }
    if let Some(a) = &pr.advisor {
        m.insert("advisor".into(), advisor_to_json(a));
    }
    Value::Object(m)
}

pub fn problem_from_json(v: &Value, path: &str, seed: u64) -> Result<Problem> {
    let mut o = Obj::new(Node { v, path })?;
    let (c, cp) = o.req("curve")?;
    let curve = curve_from_json(c, &cp)?;
    let (x, xp) = o.req("context")?;
    let context = context_from_json(x, &xp, seed)?;
    let assume_unique = match o.get("assume_unique") {
        Some((b, bp)) => as_bool(b, &bp)?,
        None => false,
    };
    let advisor = match o.get("advisor") {
        Some((a, ap)) => Some(advisor_from_json(a, &ap)?),
        None => None,
    };
    o.finish()?;
    if curve.field() != context.field() {
        return Err(schema(&xp, "the context field differs from the curve field"));
    }
    Ok(Problem {
        curve,
        context,
        assume_unique,
        advisor,
    })
}

// ---- results ----

pub fn result_to_json(r: &DescentResult) -> Value {
    let s = &r.splitting;
    let input_field = s.embedding.source();
    let over_f: Vec<Value> = r
        .polynomial_over_f()
        .map(|v| v.iter().map(|c| rationals_to_json(c)).collect())
        .unwrap_or_default();
    json!({
        "input_field": field_to_json(input_field),
        "character": r.character,
        "k1": subfield_to_json(&r.k1),
        "cocycle": {
            "sigma_image": element_to_json(r.cocycle.context().generator().generator_image()),
            "maps": r.cocycle.maps().iter().map(map_to_json).collect::<Vec<_>>(),
        },
        "splitting": {
            "extended_field": field_to_json(&s.extended_field),
            "embedding": element_to_json(s.embedding.generator_image()),
            "sigma_image": element_to_json(s.sigma.generator_image()),
            "generator_map": map_to_json(&s.generator_map),
            "map": map_to_json(&s.map),
            "obstruction": element_to_json(&s.obstruction),
            "extension_degree": s.extension_degree,
        },
        "normalization": map_to_json(&r.normalization),
        "output_curve": curve_to_json(&r.output_curve),
        "output_field": subfield_to_json(&r.output_field),
        "output_polynomial": r.output_polynomial.coeffs().iter().map(element_to_json).collect::<Vec<_>>(),
        "polynomial_over_f": over_f,
        "equation": r.output_curve.render_equation(),
        "witness": {"map": map_to_json(&r.witness.map), "k": r.witness.scaling_exponent},
        "degrees": {
            "k1_over_k": r.degrees.k1_over_k,
            "k2_over_k1": r.degrees.k2_over_k1,
            "f_over_k": r.degrees.f_over_k,
        },
    })
}

pub fn result_from_json(v: &Value, path: &str, seed: u64) -> Result<DescentResult> {
    let mut o = Obj::new(Node { v, path })?;
    let (f, fp) = o.req("input_field")?;
    let l = field_from_json(f, &fp)?;

    let (ch, chp) = o.req("character")?;
    let character = as_array(ch, &chp)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_u64(x, &format!("{chp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let (k1, k1p) = o.req("k1")?;
    let k1 = subfield_from_json(&l, k1, &k1p)?;

    let (z, zp) = o.req("cocycle")?;
    let mut zo = Obj::new(Node { v: z, path: &zp })?;
    let (gs, gsp) = zo.req("sigma_image")?;
    let g1 = FieldAutomorphism::new(element_from_json(&l, gs, &gsp)?)
        .map_err(|e| schema(&gsp, e.to_string()))?;
    let (maps, mp) = zo.req("maps")?;
    let maps = as_array(maps, &mp)?
        .iter()
        .enumerate()
        .map(|(i, m)| map_from_json(&l, m, &format!("{mp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    zo.finish()?;
    let gamma1 = GaloisContext::new(g1, seed)?;
    let cocycle = Cocycle::new(gamma1, maps).map_err(|e| schema(&zp, e.to_string()))?;

    let (sp, spp) = o.req("splitting")?;
    let mut so = Obj::new(Node { v: sp, path: &spp })?;
    let (ef, efp) = so.req("extended_field")?;
    let big = field_from_json(ef, &efp)?;
    let (emb, embp) = so.req("embedding")?;
    let embedding = if big == l {
        let img = element_from_json(&big, emb, &embp)?;
        if img != big.generator() {
            return Err(schema(&embp, "expected the identity embedding"));
        }
        Embedding::identity(&l)
    } else {
        Embedding::new(l.clone(), element_from_json(&big, emb, &embp)?)
            .map_err(|e| schema(&embp, e.to_string()))?
    };
    let (si, sip) = so.req("sigma_image")?;
    let sigma = FieldAutomorphism::new(element_from_json(&big, si, &sip)?)
        .map_err(|e| schema(&sip, e.to_string()))?;
    let (gm, gmp) = so.req("generator_map")?;
    let generator_map = map_from_json(&big, gm, &gmp)?;
    let (tm, tmp) = so.req("map")?;
    let map = map_from_json(&big, tm, &tmp)?;
    let (ob, obp) = so.req("obstruction")?;
    let obstruction = element_from_json(&l, ob, &obp)?;
    let (ed, edp) = so.req("extension_degree")?;
    let extension_degree = as_u64(ed, &edp)? as usize;
    so.finish()?;
    let splitting = SplittingMap {
        extended_field: big.clone(),
        embedding,
        sigma,
        generator_map,
        map,
        obstruction,
        extension_degree,
    };

    let (nm, nmp) = o.req("normalization")?;
    let normalization = map_from_json(&big, nm, &nmp)?;
    let (oc, ocp) = o.req("output_curve")?;
    let output_curve = curve_from_json_lenient(oc, &ocp)?;
    if output_curve.field() != &big {
        return Err(schema(&ocp, "the output curve must live in the extended field"));
    }
    let (of, ofp) = o.req("output_field")?;
    let output_field = subfield_from_json(&big, of, &ofp)?;
    let (op, opp) = o.req("output_polynomial")?;
    let coeffs = as_array(op, &opp)?
        .iter()
        .enumerate()
        .map(|(i, x)| element_from_json(&big, x, &format!("{opp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(schema(&opp, "empty polynomial"));
    }
    // derived display data, not trusted on input
    let _ = o.get("polynomial_over_f");
    let _ = o.get("equation");
    let (w, wp) = o.req("witness")?;
    let mut wo = Obj::new(Node { v: w, path: &wp })?;
    let (wm, wmp) = wo.req("map")?;
    let wmap = map_from_json(&big, wm, &wmp)?;
    let (wk, wkp) = wo.req("k")?;
    let k = as_u64(wk, &wkp)?;
    wo.finish()?;
    let (d, dp) = o.req("degrees")?;
    let mut dobj = Obj::new(Node { v: d, path: &dp })?;
    let mut deg = |key: &'static str| -> Result<usize> {
        let (x, xp) = dobj.req(key)?;
        Ok(as_u64(x, &xp)? as usize)
    };
    let degrees = DegreeReport {
        k1_over_k: deg("k1_over_k")?,
        k2_over_k1: deg("k2_over_k1")?,
        f_over_k: deg("f_over_k")?,
    };
    dobj.finish()?;
    o.finish()?;
    Ok(DescentResult {
        character,
        k1,
        cocycle,
        splitting,
        normalization,
        output_curve,
        output_field,
        output_polynomial: FieldPoly::new(coeffs),
        witness: IsomorphismWitness {
            map: wmap,
            scaling_exponent: k,
        },
        degrees,
    })
}

pub fn moduli_report_to_json(r: &ModuliReport) -> Value {
    json!({
        "moduli_subfield": subfield_to_json(&r.moduli_subfield),
        "moduli_degree": r.moduli_subfield.degree(),
        "stabilizer_order": r.stabilizer_order,
        "applied_bound": r.applied_bound,
        "rationale": r.rationale.tag(),
        "relative": true,
    })
}

// ---- envelope ----

pub fn envelope(kind: &str, payload: Value) -> Value {
    json!({"format_version": FORMAT_VERSION, "kind": kind, "payload": payload})
}

/// Canonical text: sorted keys, compact.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

/// A parsed envelope: its kind and payload.
#[derive(Clone, Debug, PartialEq)]
pub struct DocumentEnvelope {
    pub kind: String,
    pub payload: Value,
}

/// Input kinds first; the rest are only ever written by the CLI.
pub const KINDS: [&str; 10] = [
    "curve",
    "context",
    "problem",
    "result",
    "report",
    "classification",
    "genus",
    "verification",
    "selftest",
    "error",
];

pub fn parse_document(text: &str) -> Result<DocumentEnvelope> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut o = Obj::new(Node { v: &v, path: "" })?;
    let (ver, verp) = o.req("format_version")?;
    if as_str(ver, &verp)? != FORMAT_VERSION {
        return Err(schema(&verp, format!("expected {FORMAT_VERSION}")));
    }
    let (k, kp) = o.req("kind")?;
    let kind = as_str(k, &kp)?.to_string();
    if !KINDS.contains(&kind.as_str()) {
        return Err(schema(&kp, format!("unknown kind {kind}")));
    }
    let (payload, _) = o.req("payload")?;
    o.finish()?;
    Ok(DocumentEnvelope {
        kind,
        payload: payload.clone(),
    })
}

/// Parses a document and checks its kind.
pub fn parse_payload(text: &str, kind: &str) -> Result<Value> {
    let doc = parse_document(text)?;
    if doc.kind != kind {
        return Err(schema("kind", format!("expected {kind}, got {}", doc.kind)));
    }
    Ok(doc.payload)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_doc() -> String {
        r#"{"format_version":"pgonal/1","kind":"curve","payload":{"branches":[{"mult":1,"point":[[0,1]]},{"mult":1,"point":[[1,1]]},{"mult":1,"point":[[2,1]]},{"mult":1,"point":[[3,1]]},{"mult":1,"point":[[4,1]]}],"field":{"generator":"t","minpoly":[[0,1],[1,1]]},"p":2}}"#.to_string()
    }

    #[test]
    fn curve_round_trip_is_byte_identical() {
        let text = curve_doc();
        let payload = parse_payload(&text, "curve").unwrap();
        let c = curve_from_json(&payload, "payload").unwrap();
        assert_eq!(c.genus(), 2);
        let out = to_canonical_string(&envelope("curve", curve_to_json(&c)));
        assert_eq!(out, text);
    }

    #[test]
    fn unknown_key_reports_path() {
        let text = curve_doc().replace(r#""p":2"#, r#""p":2,"colour":"red""#);
        let payload = parse_payload(&text, "curve").unwrap();
        match curve_from_json(&payload, "payload") {
            Err(Error::SchemaError { path, .. }) => assert_eq!(path, "payload.colour"),
            other => panic!("{other:?}"),
        }
        let text = curve_doc().replace(r#""mult":1,"point":[[2,1]]"#, r#""mult":1,"point":[[2,1]],"x":0"#);
        let payload = parse_payload(&text, "curve").unwrap();
        match curve_from_json(&payload, "payload") {
            Err(Error::SchemaError { path, .. }) => assert_eq!(path, "payload.branches[2].x"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_document("{\n  \"format_version\": ") {
            Err(Error::ParseError { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn big_integers_use_strings() {
        let big: BigInt = "123456789012345678901234567891".parse().unwrap();
        let r = Q::new(big.clone(), BigInt::from(2));
        let v = rational_to_json(&r);
        assert_eq!(v, json!(["123456789012345678901234567891", 2]));
        assert_eq!(rational_from_json(&v, "x").unwrap(), r);
        assert!(rational_from_json(&json!([1, 0]), "x").is_err());
    }

    #[test]
    fn problem_round_trip() {
        let k = NumberField::gaussian();
        let i = k.generator();
        let ctx = GaloisContext::new(FieldAutomorphism::new(-&i).unwrap(), 0).unwrap();
        let data: Vec<_> = [0, 1, 3, 4, 9].iter().map(|&a| (k.from_int(a), 1)).collect();
        let c = PGonalCurve::from_finite(2, &k, &data).unwrap();
        let pr = Problem {
            curve: c,
            context: ctx,
            assume_unique: false,
            advisor: None,
        };
        let text = to_canonical_string(&envelope("problem", problem_to_json(&pr)));
        let back = problem_from_json(&parse_payload(&text, "problem").unwrap(), "payload", 0).unwrap();
        assert!(back.curve.same_data(&pr.curve));
        assert_eq!(back.context.order(), 2);
        assert_eq!(to_canonical_string(&envelope("problem", problem_to_json(&back))), text);
    }
}

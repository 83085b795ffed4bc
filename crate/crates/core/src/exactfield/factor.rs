//! Factor search over Q for small-degree polynomials.
//!
//! The polynomial is made monic with integer coefficients, factored modulo a
//! well-chosen prime (distinct-degree + Cantor–Zassenhaus), Hensel-lifted
//! past the Mignotte bound, and recombined. Degree patterns from several
//! primes are intersected first, which settles most irreducible inputs
//! without any lifting.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::qpoly::{QPoly, Q};

/// Number of good primes whose degree patterns are intersected.
const PATTERN_PRIMES: usize = 10;

/// Returns a nontrivial monic factor of `f` over Q, or `None` if `f` is
/// irreducible. Constants and linear polynomials are irreducible here.
pub fn find_factor(f: &QPoly) -> Option<QPoly> {
    let n = f.degree()?;
    if n <= 1 {
        return None;
    }
    let g = f.gcd(&f.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Some(g);
    }
    let (h, scale) = monic_integer(f);
    let factor = zassenhaus_factor(&h)?;
    // h(x) = D^n f(x/D): a factor g of h gives g(D x) / D^deg g for f
    let deg = factor.len() - 1;
    let mut coeffs = Vec::with_capacity(factor.len());
    let mut pow = BigInt::one();
    for c in factor.iter() {
        coeffs.push(Q::new(c * &pow, BigInt::one()));
        pow *= &scale;
    }
    let lead = Q::from_integer(scale.pow(deg as u32));
    let g = QPoly::new(coeffs.into_iter().map(|c| c / &lead).collect());
    debug_assert!(f.rem(&g).is_zero());
    Some(g)
}

pub fn is_irreducible(f: &QPoly) -> bool {
    f.degree().is_some_and(|d| d >= 1) && find_factor(f).is_none()
}

/// Monic integer polynomial `D^n f(x/D)` together with `D`.
fn monic_integer(f: &QPoly) -> (Vec<BigInt>, BigInt) {
    let f = f.monic();
    let n = f.degree().unwrap();
    let d = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in f.coeffs().iter().enumerate() {
        let v = c * Q::from_integer(d.pow((n - i) as u32));
        debug_assert!(v.is_integer());
        out.push(v.to_integer());
    }
    (out, d)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn zassenhaus_factor(h: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let full: u64 = if n >= 63 { u64::MAX } else { (1u64 << (n + 1)) - 1 };
    let mut allowed = full;
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;

    for p in small_primes().skip(5).take(200) {
        let hp = reduce_mod(h, p);
        if hp.len() != h.len() {
            continue;
        }
        let dh = poly_deriv(&hp, p);
        if poly_gcd(&hp, &dh, p).len() != 1 {
            continue;
        }
        let factors = factor_mod_p(&hp, p, &mut rng);
        let mut sums: u64 = 1;
        for fac in &factors {
            sums |= sums << (fac.len() - 1);
        }
        allowed &= sums;
        if best.as_ref().map_or(true, |(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        let proper = allowed & !1 & !(1u64 << n);
        if proper == 0 {
            return None;
        }
        if tried >= PATTERN_PRIMES {
            break;
        }
    }

    let (p, factors) = best?;
    let r = factors.len();
    if r == 1 {
        return None;
    }

    // Mignotte-style bound on coefficients of any factor of h.
    let norm1: BigInt = h.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << n) * norm1 * 2;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }

    let lifted = hensel_lift_all(h, &factors, p, k);
    let half = &modulus >> 1;

    // try subsets of increasing size, up to r/2
    let mut idx: Vec<usize>;
    for size in 1..=(r / 2) {
        idx = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].len() - 1).sum();
            if allowed & (1u64 << deg) != 0 {
                let mut prod = vec![BigInt::one()];
                for &i in &idx {
                    prod = int_mul(&prod, &lifted[i]);
                    for c in prod.iter_mut() {
                        *c = c.mod_floor(&modulus);
                    }
                }
                for c in prod.iter_mut() {
                    if *c > half {
                        *c -= &modulus;
                    }
                }
                if int_divides(&prod, h) {
                    return Some(prod);
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
    }
    None
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Does monic `g` divide `h` over Z?
fn int_divides(g: &[BigInt], h: &[BigInt]) -> bool {
    let dg = g.len() - 1;
    let mut rem: Vec<BigInt> = h.to_vec();
    for i in (dg..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate() {
            rem[i - dg + j] -= &c * gj;
        }
    }
    rem[..dg].iter().all(|c| c.is_zero())
}

fn hensel_lift_all(h: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(factors.len());
    let mut target: Vec<BigInt> = h.to_vec();
    for i in 0..factors.len() - 1 {
        let a = &factors[i];
        let b = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, f| poly_mul(&acc, f, p));
        let (la, lb) = hensel_lift_pair(&target, a, &b, p, k);
        out.push(la);
        target = lb;
    }
    out.push(target);
    out
}

/// Lifts `target ≡ a*b (mod p)` with monic `a`, `b` to `mod p^k`.
fn hensel_lift_pair(
    target: &[BigInt],
    a: &[u64],
    b: &[u64],
    p: u64,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (g, s, t) = poly_xgcd(a, b, p);
    debug_assert_eq!(g, vec![1]);
    let mut la: Vec<BigInt> = a.iter().map(|&c| BigInt::from(c)).collect();
    let mut lb: Vec<BigInt> = b.iter().map(|&c| BigInt::from(c)).collect();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = int_mul(&la, &lb);
        let e: Vec<BigInt> = (0..target.len())
            .map(|i| {
                let diff = &target[i] - prod.get(i).cloned().unwrap_or_default();
                debug_assert!((&diff % &pj).is_zero());
                diff / &pj
            })
            .collect();
        let e = reduce_mod(&e, p);
        let da = poly_rem(&poly_mul(&t, &e, p), a, p);
        let db = poly_rem(&poly_mul(&s, &e, p), b, p);
        for (i, c) in da.iter().enumerate() {
            la[i] += &pj * BigInt::from(*c);
        }
        for (i, c) in db.iter().enumerate() {
            lb[i] += &pj * BigInt::from(*c);
        }
        pj *= &pb;
    }
    (la, lb)
}

// ---- arithmetic in F_p[x]; polynomials ascending, trimmed ----

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn reduce_mod(h: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    trim(
        h.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let li = inv(*b.last().unwrap(), p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (db..r.len()).rev() {
        if r[i] == 0 {
            continue;
        }
        let f = mulmod(r[i], li, p);
        q[i - db] = f;
        for (j, &c) in b.iter().enumerate() {
            r[i - db + j] = (r[i - db + j] + p - mulmod(f, c, p)) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    poly_divrem(a, b, p).1
}

fn make_monic(a: Vec<u64>, p: u64) -> Vec<u64> {
    match a.last() {
        None => a,
        Some(&l) => {
            let li = inv(l, p);
            a.iter().map(|&c| mulmod(c, li, p)).collect()
        }
    }
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(x, p)
}

fn poly_xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        let t = poly_sub(&t0, &poly_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let li = inv(*r0.last().unwrap(), p);
    let sc = |v: Vec<u64>| trim(v.iter().map(|&c| mulmod(c, li, p)).collect());
    (sc(r0), sc(s0), sc(t0))
}

fn poly_deriv(a: &[u64], p: u64) -> Vec<u64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

fn poly_powmod(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let b = poly_rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        result = poly_rem(&poly_mul(&result, &result, p), modulus, p);
        if exp.bit(i) {
            result = poly_rem(&poly_mul(&result, &b, p), modulus, p);
        }
    }
    result
}

/// Complete factorization of a monic squarefree polynomial over F_p (p odd).
fn factor_mod_p(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, rng, &mut out);
    }
    out
}

fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut w = x.clone();
    let pe = BigUint::from(p);
    let mut d = 1;
    while f.len() - 1 >= 2 * d {
        w = poly_powmod(&w, &pe, &f, p);
        let g = poly_gcd(&poly_sub(&w, &x, p), &f, p);
        if g.len() > 1 {
            f = poly_divrem(&f, &g, p).0;
            w = poly_rem(&w, &f, p);
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) >> 1;
    loop {
        let a: Vec<u64> = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = poly_powmod(&a, &exp, f, p);
        let g = poly_gcd(&poly_sub(&b, &[1], p), f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = poly_divrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&make_monic(h, p), d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn irreducible_examples() {
        assert!(is_irreducible(&poly(&[1, 0, 1])));
        assert!(is_irreducible(&poly(&[1, 1, 1, 1, 1])));
        assert!(is_irreducible(&poly(&[1, 0, 0, 0, 1]))); // x^4+1 splits mod every p
        assert!(is_irreducible(&poly(&[9, 0, -2, 0, 1]))); // minpoly of i + sqrt 2
        assert!(is_irreducible(&poly(&[1, 0, 52, 0, 1])));
        assert!(is_irreducible(&poly(&[-2, 0, 0, 1])));
    }

    #[test]
    fn reducible_examples() {
        let f = poly(&[-4, 0, 1]);
        let g = find_factor(&f).unwrap();
        assert!(f.rem(&g).is_zero());
        // (x^2+1)(x^2-2)
        let f = poly(&[-2, 0, -1, 0, 1]);
        let g = find_factor(&f).unwrap();
        assert_eq!(g.degree(), Some(2));
        assert!(f.rem(&g).is_zero());
        // product of two quartics that both split mod every prime
        let f = poly(&[1, 0, 0, 0, 1]).mul(&poly(&[9, 0, -2, 0, 1]));
        let g = find_factor(&f).unwrap();
        assert_eq!(g.degree(), Some(4));
        assert!(f.rem(&g).is_zero());
    }

    #[test]
    fn rational_coefficients() {
        // (x - 1/2)(x^2 + 1/3)
        let f = QPoly::new(vec![
            Q::new((-1).into(), 6.into()),
            Q::new(1.into(), 3.into()),
            Q::new((-1).into(), 2.into()),
            Q::one(),
        ]);
        let g = find_factor(&f).unwrap();
        assert!(f.rem(&g).is_zero());
    }
}

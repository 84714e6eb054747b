//! Factoring helpers over Q: integer factorization by trial division,
//! rational roots, and a degree-bounded Kronecker search for quadratic
//! factors. This is all the factoring the integrator needs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{squarefree, Poly};
use super::{qone, qzero, BigRat};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization of `|n|` by trial division. A cofactor with no prime
/// factor below the trial limit is reported as if it were prime.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `|n|`; `None` if there would be too many to search.
pub fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() || n.bits() > 48 {
        return None;
    }
    let mut ds = vec![BigInt::one()];
    for (p, e) in factor_integer(n) {
        let mut next = Vec::new();
        for d in &ds {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        ds = next;
        if ds.len() > 4096 {
            return None;
        }
    }
    ds.sort();
    Some(ds)
}

/// Scales a rational polynomial to a primitive integer polynomial with a
/// positive leading coefficient.
pub fn primitive_integer(p: &Poly<BigRat>) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRat::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().sign() == Sign::Minus {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

/// Distinct rational roots.
pub fn rational_roots(p: &Poly<BigRat>) -> Vec<BigRat> {
    let mut roots = Vec::new();
    if p.is_zero() || p.is_constant() {
        return roots;
    }
    let mut q = p.clone();
    if let Some(v) = q.valuation() {
        if v > 0 {
            roots.push(qzero());
            q = Poly::new(q.coeffs()[v..].to_vec());
        }
    }
    if q.is_constant() {
        return roots;
    }
    let z = primitive_integer(&q);
    let (Some(num_d), Some(den_d)) = (divisors(&z[0]), divisors(z.last().unwrap())) else {
        return roots;
    };
    for a in &num_d {
        for b in &den_d {
            if a.gcd(b) != BigInt::one() {
                continue;
            }
            for s in [1i32, -1] {
                let r = BigRat::new(a * s, b.clone());
                if q.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Splits a squarefree rational polynomial into factors that are irreducible
/// whenever every factor has degree at most 3 (and opportunistically beyond).
fn split_squarefree(p: &Poly<BigRat>) -> Vec<Poly<BigRat>> {
    let mut rest = p.monic();
    let mut out = Vec::new();
    for r in rational_roots(&rest) {
        let lin = Poly::new(vec![-r, qone()]);
        rest = rest.exact_div(&lin);
        out.push(lin);
    }
    // remaining factors have no linear factor; look for quadratics
    while rest.deg() >= 4 {
        match find_quadratic_factor(&rest) {
            Some(q) => {
                rest = rest.exact_div(&q);
                out.push(q);
            }
            None => break,
        }
    }
    if !rest.is_constant() {
        out.push(rest);
    }
    out
}

/// Kronecker search for a monic quadratic factor over Q of a polynomial
/// without rational roots.
fn find_quadratic_factor(p: &Poly<BigRat>) -> Option<Poly<BigRat>> {
    let z = primitive_integer(p);
    let zp: Poly<BigRat> = Poly::new(z.iter().map(|c| BigRat::from_integer(c.clone())).collect());
    let lc = z.last().unwrap().clone();
    let pts = [0i64, 1, -1];
    let mut choices = Vec::new();
    for &t in &pts {
        let v = zp.eval(&BigRat::from_integer(t.into())).to_integer();
        let ds = divisors(&v)?;
        let mut signed = Vec::new();
        for d in ds {
            signed.push(d.clone());
            signed.push(-d);
        }
        choices.push(signed);
    }
    if choices.iter().map(|c| c.len()).product::<usize>() > 200_000 {
        return None;
    }
    for a in &choices[0] {
        for b in &choices[1] {
            for c in &choices[2] {
                // interpolate q(0)=a, q(1)=b, q(-1)=c
                let a0 = BigRat::from_integer(a.clone());
                let s = BigRat::from_integer(b + c) / BigRat::from_integer(2.into());
                let a2 = &s - &a0;
                let a1 = BigRat::from_integer(b - c) / BigRat::from_integer(2.into());
                if a2.is_zero() || !a1.is_integer() {
                    continue;
                }
                if !(lc.clone() % a2.to_integer()).is_zero() {
                    continue;
                }
                let q = Poly::new(vec![a0, a1, a2]);
                if q.divides(&zp) {
                    return Some(q.monic());
                }
            }
        }
    }
    None
}

/// Factorization of a nonzero rational polynomial into monic factors with
/// multiplicities (plus the leading coefficient).
pub fn factor_over_q(p: &Poly<BigRat>) -> (BigRat, Vec<(Poly<BigRat>, usize)>) {
    assert!(!p.is_zero());
    let mut out = Vec::new();
    for (f, e) in squarefree(p) {
        for g in split_squarefree(&f) {
            out.push((g, e));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then(a.1.cmp(&b.1)));
    (p.lc(), out)
}

/// Exact `k`-th root of a nonnegative integer if it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn small_int(q: &BigRat) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

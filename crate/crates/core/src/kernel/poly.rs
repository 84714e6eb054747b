use std::fmt;

use super::{BigRat, Field};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `t^i`.
/// The zero polynomial has no coefficients and the leading coefficient of
/// any other polynomial is nonzero.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^n`
    pub fn monomial(c: F, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); n + 1];
        v[n] = c;
        Poly { coeffs: v }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn from_rats(cs: &[BigRat]) -> Self {
        Self::new(cs.iter().map(F::from_rat).collect())
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `t^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); n];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lc();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&l.inv())
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv_lc = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv_lc);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    r[k + j] = r[k + j].sub(&c.mul(dj));
                }
            }
            r[k + dd] = F::zero();
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient of an exact division. Panics if the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Formal derivative with respect to the polynomial variable.
    pub fn formal_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = gcd(self, other);
        self.exact_div(&g).mul(other).monic()
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r = r0.rem(&r1);
        r0 = r1;
        r1 = r.monic();
    }
    r0.monic()
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let k = r0.lc().inv();
    (r0.scale(&k), s0.scale(&k), t0.scale(&k))
}

/// Solves `s*a + t*b = c` with `deg s < deg b` when `gcd(a, b) = 1`.
pub fn diophantine<F: Field>(a: &Poly<F>, b: &Poly<F>, c: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let (g, s, _) = ext_gcd(a, b);
    assert!(g.is_one(), "diophantine: arguments not coprime");
    let s = s.mul(c).rem(b);
    let t = c.sub(&s.mul(a)).exact_div(b);
    (s, t)
}

/// Yun's squarefree decomposition: monic factors paired with multiplicity,
/// pairwise coprime, product equal to `p` up to its leading coefficient.
pub fn squarefree<F: Field>(p: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    assert!(!p.is_zero(), "squarefree decomposition of zero");
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let dp = p.formal_derivative();
    let g = gcd(p, &dp);
    let mut c = p.exact_div(&g);
    let mut d = dp.exact_div(&g).sub(&c.formal_derivative());
    let mut i = 1;
    while !c.is_constant() {
        let a = gcd(&c, &d);
        c = c.exact_div(&a);
        d = d.exact_div(&a).sub(&c.formal_derivative());
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

/// Product of the distinct squarefree factors.
pub fn squarefree_part<F: Field>(p: &Poly<F>) -> Poly<F> {
    squarefree(p)
        .into_iter()
        .fold(Poly::one(), |acc, (f, _)| acc.mul(&f))
}

/// Resultant via the Euclidean remainder sequence.
pub fn resultant<F: Field>(a: &Poly<F>, b: &Poly<F>) -> F {
    if a.is_zero() || b.is_zero() {
        return F::zero();
    }
    let m = a.deg() as i64;
    let n = b.deg() as i64;
    if n == 0 {
        return b.lc().pow(m);
    }
    if m == 0 {
        return a.lc().pow(n);
    }
    let r = a.rem(b);
    if r.is_zero() {
        return F::zero();
    }
    let sign = if (m * n) % 2 == 1 { F::from_int(-1) } else { F::one() };
    let k = b.lc().pow(m - r.deg() as i64);
    sign.mul(&k).mul(&resultant(b, &r))
}

/// Error for improper input to [`partial_fractions`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartialFractionError {
    #[error("rational function is not proper")]
    Improper,
    #[error("factorization does not reproduce the denominator")]
    BadFactorization,
}

/// One summand `numerator / factor^power`.
#[derive(Debug, Clone, PartialEq)]
pub struct PfTerm<F: Field> {
    pub numerator: Poly<F>,
    pub factor: Poly<F>,
    pub power: usize,
}

/// Full partial-fraction expansion of a proper `num/den` against a coprime
/// factorization of `den` (factors with multiplicities, up to a unit).
pub fn partial_fractions<F: Field>(
    num: &Poly<F>,
    den: &Poly<F>,
    factors: &[(Poly<F>, usize)],
) -> Result<Vec<PfTerm<F>>, PartialFractionError> {
    if num.deg() >= den.deg() {
        return Err(PartialFractionError::Improper);
    }
    let prod = factors
        .iter()
        .fold(Poly::one(), |acc, (f, e)| acc.mul(&f.pow(*e as u32)));
    if prod.is_zero() || prod.monic() != den.monic() {
        return Err(PartialFractionError::BadFactorization);
    }
    // absorb the unit so that den == prod
    let unit = den.lc().div(&prod.lc());
    let num = num.scale(&unit.inv());
    let mut out = Vec::new();
    for (i, (f, e)) in factors.iter().enumerate() {
        let pe = f.pow(*e as u32);
        let rest = factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Poly::one(), |acc, (_, (g, k))| acc.mul(&g.pow(*k as u32)));
        // num/(pe*rest) = A/pe + B/rest, A = num * rest^{-1} mod pe
        let (s, _) = diophantine(&rest, &pe, &num);
        let mut a = s;
        // expand a in base f: a = sum c_k f^k
        let mut k = 0;
        while !a.is_zero() {
            let (q, r) = a.div_rem(f);
            if !r.is_zero() {
                out.push(PfTerm {
                    numerator: r,
                    factor: f.clone(),
                    power: e - k,
                });
            }
            a = q;
            k += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};

    type Q = Poly<BigRat>;

    fn p(cs: &[i64]) -> Q {
        Poly::from_ints(cs)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        assert_eq!(gcd(&p(&[4, 2]), &Q::zero()), p(&[2, 1]));
        assert_eq!(gcd(&p(&[0, 1, 0, 1]), &p(&[1, 0, 1])), p(&[1, 0, 1]));
        assert!(gcd(&Q::zero(), &Q::zero()).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(
            squarefree(&p(&[0, 0, 1, 1])),
            vec![(p(&[1, 1]), 1), (p(&[0, 1]), 2)]
        );
        assert_eq!(squarefree(&p(&[1, 0, 1])), vec![(p(&[1, 0, 1]), 1)]);
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]).pow(3)).scale(&int(5));
        assert_eq!(squarefree(&f), vec![(p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }

    #[test]
    #[should_panic]
    fn squarefree_rejects_zero() {
        squarefree(&Q::zero());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])), int(-1));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])), int(0));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-2, 0, 1])), int(9));
    }

    #[test]
    fn partial_fraction_examples() {
        let t = partial_fractions(
            &p(&[1]),
            &p(&[-1, 0, 1]),
            &[(p(&[-1, 1]), 1), (p(&[1, 1]), 1)],
        )
        .unwrap();
        assert_eq!(t[0].numerator, Q::constant(rat(1, 2)));
        assert_eq!(t[1].numerator, Q::constant(rat(-1, 2)));

        let t = partial_fractions(&p(&[1]), &p(&[-1, 1]), &[(p(&[-1, 1]), 1)]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].numerator, p(&[1]));

        let t = partial_fractions(
            &p(&[2, 3]),
            &p(&[0, 1, 1]),
            &[(p(&[0, 1]), 1), (p(&[1, 1]), 1)],
        )
        .unwrap();
        assert_eq!(t[0].numerator, p(&[2]));
        assert_eq!(t[1].numerator, p(&[1]));

        assert_eq!(
            partial_fractions(&p(&[0, 0, 1]), &p(&[-1, 1]), &[(p(&[-1, 1]), 1)]),
            Err(PartialFractionError::Improper)
        );
    }

    #[test]
    fn partial_fraction_repeated_factor() {
        // (x+3)/(x^2 (x-1)) = -3/x^2 - 4/x + 4/(x-1)
        let num = p(&[3, 1]);
        let den = p(&[0, 0, -1, 1]);
        let t = partial_fractions(&num, &den, &[(p(&[0, 1]), 2), (p(&[-1, 1]), 1)]).unwrap();
        let mut found = t
            .iter()
            .map(|t| (t.numerator.coeff(0), t.power))
            .collect::<Vec<_>>();
        found.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        assert_eq!(found, vec![(int(-4), 1), (int(4), 1), (int(-3), 2)]);
    }

    #[test]
    fn div_rem_identity() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }
}

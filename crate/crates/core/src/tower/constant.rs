//! Exact constants: rationals extended by declared symbols, logarithms of
//! primes, rational powers of `e`, and radicals of primes (plus `sqrt(-1)`).
//!
//! A constant is a ratio of two polynomials over Q in these atoms. Declared
//! symbols, `log p` and `e` are treated as algebraically independent, and
//! radicals `p^(a/k)` are reduced to exponents in `[0, 1)`, so the monomials
//! of a numerator are linearly independent over Q and zero testing is
//! structural.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::kernel::factor::factor_integer;
use crate::kernel::{fmt_rat, qone, qzero, rat_to_f64, BigRat, Field, Poly};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Declared constant symbol, integer exponents.
    Sym(String),
    /// `log p` for a prime `p`, integer exponents.
    Log(BigInt),
    /// `e`, rational exponents.
    E,
    /// `p^(a/k)` for a prime `p` or `-1`, exponent in `[0, 1)`.
    Root(BigInt),
}

type Monomial = BTreeMap<Atom, BigRat>;
type CPoly = BTreeMap<Monomial, BigRat>;

#[derive(Clone)]
pub struct Const {
    num: CPoly,
    den: CPoly,
}

/// Constant-field failures: results that fall outside the representable forms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstError {
    #[error("logarithm of a non-positive or non-rational constant: {0}")]
    BadLog(String),
    #[error("exponential of a constant that is not a rational combination of logarithms: {0}")]
    BadExp(String),
    #[error("root {1} of {0} is not a supported constant")]
    BadRoot(String, u32),
}

fn mono_one() -> Monomial {
    BTreeMap::new()
}

/// Reduces radical exponents into `[0, 1)`, returning the rational factor
/// pulled out.
fn normalize_mono(m: Monomial) -> (BigRat, Monomial) {
    let mut coeff = qone();
    let mut out = BTreeMap::new();
    for (a, e) in m {
        if e.is_zero() {
            continue;
        }
        match &a {
            Atom::Root(p) => {
                let fl = e.floor();
                let fr = &e - &fl;
                let k = fl.to_integer();
                let pk = pow_int(p, &k);
                coeff *= pk;
                if !fr.is_zero() {
                    out.insert(a, fr);
                }
            }
            _ => {
                out.insert(a, e);
            }
        }
    }
    (coeff, out)
}

fn pow_int(p: &BigInt, k: &BigInt) -> BigRat {
    let kk = k.to_i64().expect("exponent too large");
    let base = BigRat::from_integer(p.clone());
    if kk >= 0 {
        num_traits::pow(base, kk as usize)
    } else {
        num_traits::pow(base.recip(), (-kk) as usize)
    }
}

fn mono_mul(a: &Monomial, b: &Monomial) -> (BigRat, Monomial) {
    let mut m = a.clone();
    for (k, e) in b {
        let v = m.entry(k.clone()).or_insert_with(qzero);
        *v += e;
    }
    normalize_mono(m)
}

fn mono_inv(a: &Monomial) -> (BigRat, Monomial) {
    normalize_mono(a.iter().map(|(k, e)| (k.clone(), -e)).collect())
}

fn poly_add_term(p: &mut CPoly, m: Monomial, c: BigRat) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(m.clone()).or_insert_with(qzero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&m);
    }
}

fn poly_add(a: &CPoly, b: &CPoly) -> CPoly {
    let mut out = a.clone();
    for (m, c) in b {
        poly_add_term(&mut out, m.clone(), c.clone());
    }
    out
}

fn poly_neg(a: &CPoly) -> CPoly {
    a.iter().map(|(m, c)| (m.clone(), -c)).collect()
}

fn poly_mul(a: &CPoly, b: &CPoly) -> CPoly {
    let mut out = CPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let (k, m) = mono_mul(ma, mb);
            poly_add_term(&mut out, m, ca * cb * k);
        }
    }
    out
}

fn poly_scale(a: &CPoly, c: &BigRat) -> CPoly {
    if c.is_zero() {
        return CPoly::new();
    }
    a.iter().map(|(m, x)| (m.clone(), x * c)).collect()
}

fn poly_const(c: BigRat) -> CPoly {
    let mut p = CPoly::new();
    poly_add_term(&mut p, mono_one(), c);
    p
}

/// Flips the sign of every term carrying `atom` with exponent 1/2.
fn conjugate(p: &CPoly, atom: &Atom) -> CPoly {
    let half = BigRat::new(1.into(), 2.into());
    p.iter()
        .map(|(m, c)| {
            if m.get(atom) == Some(&half) {
                (m.clone(), -c)
            } else {
                (m.clone(), c.clone())
            }
        })
        .collect()
}

/// Single-symbol view: `Some((name, min_exponent, coeffs))` when every
/// monomial is a power of the same symbol.
fn as_univariate(p: &CPoly) -> Option<(Option<String>, BTreeMap<i64, BigRat>)> {
    let mut name: Option<String> = None;
    let mut terms = BTreeMap::new();
    for (m, c) in p {
        match m.len() {
            0 => {
                terms.insert(0, c.clone());
            }
            1 => {
                let (a, e) = m.iter().next().unwrap();
                let Atom::Sym(s) = a else { return None };
                if name.as_ref().is_some_and(|n| n != s) {
                    return None;
                }
                name = Some(s.clone());
                terms.insert(e.to_integer().to_i64()?, c.clone());
            }
            _ => return None,
        }
    }
    Some((name, terms))
}

impl Const {
    pub fn rat(q: BigRat) -> Self {
        Const {
            num: poly_const(q),
            den: poly_const(qone()),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rat(BigRat::from_integer(n.into()))
    }

    pub fn symbol(name: &str) -> Self {
        let mut m = mono_one();
        m.insert(Atom::Sym(name.to_string()), qone());
        Self::from_mono(m, qone())
    }

    fn from_mono(m: Monomial, c: BigRat) -> Self {
        let (k, m) = normalize_mono(m);
        let mut num = CPoly::new();
        poly_add_term(&mut num, m, c * k);
        Const {
            num,
            den: poly_const(qone()),
        }
    }

    /// `e^q`.
    pub fn exp_rat(q: &BigRat) -> Self {
        let mut m = mono_one();
        m.insert(Atom::E, q.clone());
        Self::from_mono(m, qone())
    }

    /// `log q` for positive rational `q`, expanded over primes.
    pub fn log_rat(q: &BigRat) -> Result<Self, ConstError> {
        if !q.is_positive() {
            return Err(ConstError::BadLog(fmt_rat(q)));
        }
        let mut out = Const::zero();
        for (p, e) in factor_integer(q.numer()) {
            out = out.add(&Self::log_prime(p).mul(&Const::int(e as i64)));
        }
        for (p, e) in factor_integer(q.denom()) {
            out = out.sub(&Self::log_prime(p).mul(&Const::int(e as i64)));
        }
        Ok(out)
    }

    fn log_prime(p: BigInt) -> Self {
        let mut m = mono_one();
        m.insert(Atom::Log(p), qone());
        Self::from_mono(m, qone())
    }

    /// `q^e` for rational `q` and rational `e`, taking the real root for
    /// negative `q` and odd denominators and `sqrt(-1)` for square roots of
    /// negatives.
    pub fn rat_pow(q: &BigRat, e: &BigRat) -> Result<Self, ConstError> {
        if q.is_zero() {
            if e.is_positive() {
                return Ok(Const::zero());
            }
            return Err(ConstError::BadRoot("0".into(), 1));
        }
        let k = e.denom().to_u32().unwrap_or(u32::MAX);
        let mut m = mono_one();
        let mut coeff = qone();
        if q.is_negative() {
            if k % 2 == 1 {
                if e.numer().is_odd() {
                    coeff = -coeff;
                }
            } else if k == 2 {
                m.insert(Atom::Root(BigInt::from(-1)), e.clone());
            } else {
                return Err(ConstError::BadRoot(fmt_rat(q), k));
            }
        }
        for (p, mult) in factor_integer(q.numer()) {
            let ex = e * BigRat::from_integer(mult.into());
            *m.entry(Atom::Root(p)).or_insert_with(qzero) += ex;
        }
        for (p, mult) in factor_integer(q.denom()) {
            let ex = e * BigRat::from_integer(mult.into());
            *m.entry(Atom::Root(p)).or_insert_with(qzero) -= ex;
        }
        Ok(Self::from_mono(m, coeff))
    }

    /// Principal `k`-th root of a rational.
    pub fn root(q: &BigRat, k: u32) -> Result<Self, ConstError> {
        Self::rat_pow(q, &BigRat::new(1.into(), BigInt::from(k)))
    }

    /// `exp(c)` for a constant that is a rational plus a rational
    /// combination of prime logarithms.
    pub fn exp_of(c: &Const) -> Result<Self, ConstError> {
        if !c.den_is_one() {
            return Err(ConstError::BadExp(c.to_string()));
        }
        let mut out = Const::one();
        for (m, coef) in &c.num {
            match m.len() {
                0 => out = out.mul(&Self::exp_rat(coef)),
                1 => match m.iter().next().unwrap() {
                    (Atom::Log(p), e) if e.is_one() => {
                        out = out.mul(&Self::rat_pow(&BigRat::from_integer(p.clone()), coef)?);
                    }
                    _ => return Err(ConstError::BadExp(c.to_string())),
                },
                _ => return Err(ConstError::BadExp(c.to_string())),
            }
        }
        Ok(out)
    }

    /// `log(c)` for a constant that is a positive rational times rational
    /// powers of primes and of `e`.
    pub fn log_of(c: &Const) -> Result<Self, ConstError> {
        if !c.den_is_one() || c.num.len() != 1 {
            return Err(ConstError::BadLog(c.to_string()));
        }
        let (m, coef) = c.num.iter().next().unwrap();
        let mut out = Self::log_rat(coef)?;
        for (a, e) in m {
            match a {
                Atom::E => out = out.add(&Const::rat(e.clone())),
                Atom::Root(p) if p.is_positive() => {
                    out = out.add(&Self::log_prime(p.clone()).mul(&Const::rat(e.clone())))
                }
                _ => return Err(ConstError::BadLog(c.to_string())),
            }
        }
        Ok(out)
    }

    pub fn den_is_one(&self) -> bool {
        self.den.len() == 1 && self.den.get(&mono_one()).is_some_and(|c| c.is_one())
    }

    /// Whether the constant mentions a declared symbol.
    pub fn has_symbol(&self) -> bool {
        self.num
            .keys()
            .chain(self.den.keys())
            .any(|m| m.keys().any(|a| matches!(a, Atom::Sym(_))))
    }

    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .num
            .keys()
            .chain(self.den.keys())
            .flat_map(|m| m.keys())
            .filter_map(|a| match a {
                Atom::Sym(s) => Some(s.clone()),
                _ => None,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Numerator terms as `(monomial key, rational coefficient)`; the key is
    /// stable across constants and identifies a Q-linear coordinate.
    pub fn numerator_terms(&self) -> Vec<(String, BigRat)> {
        self.num
            .iter()
            .map(|(m, c)| (format!("{:?}", m), c.clone()))
            .collect()
    }

    /// Numerator and denominator as separate constants (denominator 1).
    pub fn split(&self) -> (Const, Const) {
        (
            Const {
                num: self.num.clone(),
                den: poly_const(qone()),
            },
            Const {
                num: self.den.clone(),
                den: poly_const(qone()),
            },
        )
    }

    fn normalize(mut self) -> Self {
        assert!(!self.den.is_empty(), "constant with zero denominator");
        if self.num.is_empty() {
            return Const::zero();
        }
        // rationalize square roots in the denominator
        for _ in 0..8 {
            let half = BigRat::new(1.into(), 2.into());
            let atom = self.den.keys().find_map(|m| {
                m.iter()
                    .find(|(a, e)| matches!(a, Atom::Root(_)) && **e == half)
                    .map(|(a, _)| a.clone())
            });
            let Some(atom) = atom else { break };
            if self.den.len() == 1 {
                break;
            }
            let conj = conjugate(&self.den, &atom);
            self.num = poly_mul(&self.num, &conj);
            self.den = poly_mul(&self.den, &conj);
        }
        if self.den.len() == 1 {
            let (m, c) = self.den.iter().next().unwrap();
            let (k, minv) = mono_inv(m);
            let scale = k / c;
            let mut inv = CPoly::new();
            poly_add_term(&mut inv, minv, scale);
            return Const {
                num: poly_mul(&self.num, &inv),
                den: poly_const(qone()),
            };
        }
        if let Some(c) = self.ratio_to_den() {
            return Const::rat(c);
        }
        if let (Some((na, nt)), Some((da, dt))) = (as_univariate(&self.num), as_univariate(&self.den)) {
            let name = na.or(da);
            if let Some(name) = name {
                return Self::reduce_univariate(&name, nt, dt);
            }
        }
        let lead = self.den.iter().next_back().unwrap().1.clone();
        let inv = lead.recip();
        Const {
            num: poly_scale(&self.num, &inv),
            den: poly_scale(&self.den, &inv),
        }
    }

    /// If `num = c * den` for rational `c`, return `c`.
    fn ratio_to_den(&self) -> Option<BigRat> {
        if self.num.len() != self.den.len() {
            return None;
        }
        let mut ratio: Option<BigRat> = None;
        for ((mn, cn), (md, cd)) in self.num.iter().zip(self.den.iter()) {
            if mn != md {
                return None;
            }
            let r = cn / cd;
            match &ratio {
                None => ratio = Some(r),
                Some(x) if *x == r => {}
                _ => return None,
            }
        }
        ratio
    }

    fn reduce_univariate(name: &str, nt: BTreeMap<i64, BigRat>, dt: BTreeMap<i64, BigRat>) -> Self {
        let lo = nt.keys().chain(dt.keys()).copied().min().unwrap_or(0);
        let to_poly = |t: &BTreeMap<i64, BigRat>, shift: i64| -> Poly<BigRat> {
            let hi = t.keys().copied().max().unwrap_or(0);
            let mut v = vec![qzero(); (hi - shift + 1).max(0) as usize];
            for (e, c) in t {
                v[(e - shift) as usize] = c.clone();
            }
            Poly::new(v)
        };
        let pn = to_poly(&nt, lo);
        let pd = to_poly(&dt, lo);
        let g = crate::kernel::poly::gcd(&pn, &pd);
        let pn = pn.exact_div(&g);
        let pd = pd.exact_div(&g);
        let lead = pd.lc();
        let pn = pn.scale(&lead.recip());
        let pd = pd.scale(&lead.recip());
        // strip common powers of the symbol
        let vn = pn.valuation().unwrap_or(0);
        let vd = pd.valuation().unwrap_or(0);
        let v = vn.min(vd);
        let from_poly = |p: &Poly<BigRat>| -> CPoly {
            let mut out = CPoly::new();
            for (i, c) in p.coeffs().iter().enumerate().skip(v) {
                let e = (i - v) as i64;
                let mut m = mono_one();
                if e != 0 {
                    m.insert(Atom::Sym(name.to_string()), BigRat::from_integer(e.into()));
                }
                poly_add_term(&mut out, m, c.clone());
            }
            out
        };
        let num = from_poly(&pn);
        let den = from_poly(&pd);
        if den.len() == 1 {
            return Const { num, den }.normalize();
        }
        Const { num, den }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rat().is_some()
    }

    /// Numeric value with declared symbols bound by `env`.
    pub fn eval(&self, env: &dyn Fn(&str) -> Option<f64>) -> Option<Complex64> {
        let ev = |p: &CPoly| -> Option<Complex64> {
            let mut s = Complex64::new(0.0, 0.0);
            for (m, c) in p {
                let mut t = Complex64::new(rat_to_f64(c), 0.0);
                for (a, e) in m {
                    let ef = rat_to_f64(e);
                    let f = match a {
                        Atom::Sym(name) => Complex64::new(env(name)?, 0.0).powf(ef),
                        Atom::Log(p) => Complex64::new(p.to_f64()?.ln(), 0.0).powf(ef),
                        Atom::E => Complex64::new(ef.exp(), 0.0),
                        Atom::Root(p) if p.is_negative() => Complex64::new(0.0, 1.0),
                        Atom::Root(p) => Complex64::new(p.to_f64()?.powf(ef), 0.0),
                    };
                    t *= f;
                }
                s += t;
            }
            Some(s)
        };
        Some(ev(&self.num)? / ev(&self.den)?)
    }

    /// Substitutes rational values for declared symbols.
    pub fn substitute(&self, env: &dyn Fn(&str) -> Option<BigRat>) -> Const {
        let sub = |p: &CPoly| -> Const {
            let mut out = Const::zero();
            for (m, c) in p {
                let mut rest = mono_one();
                let mut t = Const::rat(c.clone());
                for (a, e) in m {
                    match a {
                        Atom::Sym(s) => match env(s) {
                            Some(v) => {
                                let k = e.to_integer().to_i64().unwrap_or(0);
                                t = t.mul(&Const::rat(v).pow(k));
                            }
                            None => {
                                rest.insert(a.clone(), e.clone());
                            }
                        },
                        _ => {
                            rest.insert(a.clone(), e.clone());
                        }
                    }
                }
                out = out.add(&t.mul(&Const::from_mono(rest, qone())));
            }
            out
        };
        sub(&self.num).div(&sub(&self.den))
    }
}

impl PartialEq for Const {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        poly_mul(&self.num, &other.den) == poly_mul(&other.num, &self.den)
    }
}

impl fmt::Debug for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Const({})", self)
    }
}

impl Const {
    /// The value when the constant is a plain rational, without allocating.
    fn plain(&self) -> Option<&BigRat> {
        static ZERO: std::sync::OnceLock<BigRat> = std::sync::OnceLock::new();
        if self.den.len() != 1 || !self.den.keys().next().unwrap().is_empty() || !self.den.values().next().unwrap().is_one() {
            return None;
        }
        match self.num.len() {
            0 => Some(ZERO.get_or_init(qzero)),
            1 => {
                let (m, c) = self.num.iter().next().unwrap();
                m.is_empty().then_some(c)
            }
            _ => None,
        }
    }
}

impl Field for Const {
    fn zero() -> Self {
        Const {
            num: CPoly::new(),
            den: poly_const(qone()),
        }
    }
    fn one() -> Self {
        Const::int(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.plain(), other.plain()) {
            return Const::rat(a + b);
        }
        if self.den == other.den {
            return Const {
                num: poly_add(&self.num, &other.num),
                den: self.den.clone(),
            }
            .normalize();
        }
        Const {
            num: poly_add(
                &poly_mul(&self.num, &other.den),
                &poly_mul(&other.num, &self.den),
            ),
            den: poly_mul(&self.den, &other.den),
        }
        .normalize()
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Const::zero();
        }
        if let (Some(a), Some(b)) = (self.plain(), other.plain()) {
            return Const::rat(a * b);
        }
        Const {
            num: poly_mul(&self.num, &other.num),
            den: poly_mul(&self.den, &other.den),
        }
        .normalize()
    }
    fn neg(&self) -> Self {
        Const {
            num: poly_neg(&self.num),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero constant");
        if let Some(a) = self.plain() {
            return Const::rat(a.recip());
        }
        Const {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .normalize()
    }
    fn from_rat(q: &BigRat) -> Self {
        Const::rat(q.clone())
    }
    fn as_rat(&self) -> Option<BigRat> {
        if !self.den_is_one() {
            return None;
        }
        match self.num.len() {
            0 => Some(qzero()),
            1 => {
                let (m, c) = self.num.iter().next().unwrap();
                m.is_empty().then(|| c.clone())
            }
            _ => None,
        }
    }
}

fn fmt_atom(a: &Atom, e: &BigRat) -> String {
    let pw = |base: String| {
        if e.is_one() {
            base
        } else if e.is_integer() && e.is_positive() {
            format!("{}^{}", base, e)
        } else {
            format!("{}^({})", base, fmt_rat(e))
        }
    };
    match a {
        Atom::Sym(s) => pw(s.clone()),
        Atom::Log(p) => pw(format!("log({})", p)),
        Atom::E => format!("exp({})", fmt_rat(e)),
        Atom::Root(p) if p.is_negative() => "I".to_string(),
        Atom::Root(p) => format!("{}^({})", p, fmt_rat(e)),
    }
}

fn fmt_cpoly(p: &CPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let factors: Vec<String> = m.iter().map(|(a, e)| fmt_atom(a, e)).collect();
        if factors.is_empty() {
            s.push_str(&fmt_rat(&a));
        } else {
            if !a.is_one() {
                if a.is_integer() {
                    s.push_str(&format!("{}*", a));
                } else {
                    s.push_str(&format!("({})*", fmt_rat(&a)));
                }
            }
            s.push_str(&factors.join("*"));
        }
    }
    s
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_cpoly(&self.num);
        if self.den_is_one() {
            return write!(f, "{}", n);
        }
        let d = fmt_cpoly(&self.den);
        let n = if self.num.len() > 1 { format!("({})", n) } else { n };
        write!(f, "{}/({})", n, d)
    }
}

impl Const {
    /// Whether printing needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        self.num.len() > 1 || !self.den_is_one() || self.to_string().starts_with('-')
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};

    #[test]
    fn log_rules() {
        let a = Const::log_rat(&int(2)).unwrap();
        let b = Const::log_rat(&int(3)).unwrap();
        assert_eq!(a.add(&b), Const::log_rat(&int(6)).unwrap());
        assert_eq!(Const::log_rat(&rat(1, 2)).unwrap(), a.neg());
        assert!(Const::log_rat(&int(-1)).is_err());
    }

    #[test]
    fn exp_rules() {
        let e = Const::exp_rat(&int(2)).mul(&Const::exp_rat(&int(-3)));
        assert_eq!(e, Const::exp_rat(&int(-1)));
        assert_eq!(Const::exp_rat(&int(0)), Const::one());
        let l2 = Const::log_rat(&int(2)).unwrap();
        assert_eq!(Const::exp_of(&l2).unwrap(), Const::int(2));
    }

    #[test]
    fn radicals_reduce() {
        let s2 = Const::root(&int(2), 2).unwrap();
        assert_eq!(s2.mul(&s2), Const::int(2));
        let i = Const::root(&int(-1), 2).unwrap();
        assert_eq!(i.mul(&i), Const::int(-1));
        let c = Const::root(&rat(-1, 4), 2).unwrap();
        assert_eq!(c, i.mul(&Const::rat(rat(1, 2))));
        assert_eq!(Const::root(&int(-8), 3).unwrap(), Const::int(-2));
        assert!(Const::root(&int(-1), 4).is_err());
    }

    #[test]
    fn rationalizes_denominators() {
        let s2 = Const::root(&int(2), 2).unwrap();
        let x = Const::one().add(&s2).inv();
        assert!(x.den_is_one());
        assert_eq!(x.mul(&Const::one().add(&s2)), Const::one());
    }

    #[test]
    fn symbolic_field() {
        let a = Const::symbol("a");
        let am1 = a.sub(&Const::one());
        let q = am1.mul(&am1).div(&am1);
        assert_eq!(q, am1);
        assert!(am1.div(&am1).is_one());
        assert!(!a.is_rational());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn numeric_value() {
        let c = Const::exp_rat(&int(1)).add(&Const::root(&int(-1), 2).unwrap());
        let v = c.eval(&|_| None).unwrap();
        assert!((v.re - std::f64::consts::E).abs() < 1e-14);
        assert!((v.im - 1.0).abs() < 1e-14);
    }
}

//! Splitting an element along its top variable.
//!
//! For an exponential top `θ` every element is uniquely a Laurent polynomial
//! in `θ` plus a proper fraction whose denominator is coprime to `θ`. The
//! log-derivative reductions rewrite `Σ c_i v_i'/v_i` into a part in the
//! ground field plus a proper fraction, which is what makes residues of the
//! two parts separately comparable.

use std::collections::BTreeMap;

use crate::kernel::poly::diophantine;
use crate::kernel::{Field, Poly};
use crate::tower::{Const, Elem, Kind, Tower};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSplit {
    /// Coefficients `a_j` of `θ^j`, nonzero entries only.
    pub laurent: BTreeMap<i64, Elem>,
    /// Proper fraction in `θ` with denominator coprime to `θ`.
    pub proper: Elem,
}

impl LaurentSplit {
    /// Reassembles the element.
    pub fn total(&self, level: usize) -> Elem {
        let t = Elem::var(level);
        self.laurent
            .iter()
            .fold(self.proper.clone(), |acc, (j, a)| &acc + &(a * &t.pow(*j)))
    }

    pub fn laurent_part(&self, level: usize) -> Elem {
        let t = Elem::var(level);
        self.laurent
            .iter()
            .fold(Elem::zero(), |acc, (j, a)| &acc + &(a * &t.pow(*j)))
    }
}

/// Laurent/proper decomposition of `f` in the variable of `level`.
pub fn decomp_laurent(f: &Elem, level: usize) -> LaurentSplit {
    let (n, d) = f.parts_in(level);
    let v = d.valuation().unwrap_or(0);
    let d0 = Poly::new(d.coeffs()[v..].to_vec());
    let tv = Poly::monomial(Elem::one(), v);
    let (q, r) = n.div_rem(&d);
    let (s, t) = if v == 0 {
        (Poly::zero(), r)
    } else if d0.is_constant() {
        (r.scale(&d0.lc().inv()), Poly::zero())
    } else {
        diophantine(&d0, &tv, &r)
    };
    let mut laurent = BTreeMap::new();
    for (k, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            laurent.insert(k as i64, c.clone());
        }
    }
    for (k, c) in s.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let e = laurent.entry(k as i64 - v as i64).or_insert_with(Elem::zero);
            *e = &*e + c;
        }
    }
    laurent.retain(|_, c| !c.is_zero());
    let proper = if t.is_zero() { Elem::zero() } else { Elem::from_parts(level, t, d0) };
    LaurentSplit { laurent, proper }
}

/// Result of rewriting `Σ c_i v_i'/v_i` along the top variable.
#[derive(Clone, Debug)]
pub struct LogDerivReduction {
    /// Coefficient `a` of `η'` (zero for a logarithmic top).
    pub a: Const,
    /// Ground-field logarithms `(c_i, v̄_i)`.
    pub terms: Vec<(Const, Elem)>,
    pub proper: Elem,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DecomposeError {
    #[error("logarithm of zero")]
    ZeroArgument,
    #[error("level {0} is not a {1:?} generator")]
    WrongKind(usize, Kind),
}

fn lc_and_degree(v: &Elem, level: usize) -> (Elem, i64, Elem, i64) {
    let (n, d) = v.parts_in(level);
    (n.lc(), n.deg() as i64, d.lc(), d.deg() as i64)
}

fn reduce(
    terms: &[(Const, Elem)],
    tower: &Tower,
    level: usize,
    kind: Kind,
) -> Result<LogDerivReduction, DecomposeError> {
    if tower.kind_at(level) != Some(kind) {
        return Err(DecomposeError::WrongKind(level, kind));
    }
    let eta_d = match kind {
        Kind::Exp => tower.derive(&tower.generator(level).arg),
        Kind::Log => Elem::zero(),
    };
    let mut a = Const::zero();
    let mut out = Vec::new();
    let mut proper = Elem::zero();
    for (c, v) in terms {
        if v.is_zero() {
            return Err(DecomposeError::ZeroArgument);
        }
        let (ln, dn, ld, dd) = lc_and_degree(v, level);
        let vbar = &ln / &ld;
        let l = Const::int(dn - dd);
        let ce = Elem::C(c.clone());
        let mut p = &tower.log_derivative(v) - &tower.log_derivative(&vbar);
        if kind == Kind::Exp {
            a = a.add(&c.mul(&l));
            p = &p - &(&Elem::C(l) * &eta_d);
        }
        proper = &proper + &(&ce * &p);
        if !tower.is_constant(&vbar) {
            out.push((c.clone(), vbar));
        }
    }
    Ok(LogDerivReduction { a, terms: out, proper })
}

/// `Σ c_i v_i'/v_i = a η' + Σ c_i v̄_i'/v̄_i + proper` for an exponential top.
pub fn logderiv_reduce_exp(
    terms: &[(Const, Elem)],
    tower: &Tower,
    level: usize,
) -> Result<LogDerivReduction, DecomposeError> {
    reduce(terms, tower, level, Kind::Exp)
}

/// `Σ c_i v_i'/v_i = Σ c_i v̄_i'/v̄_i + proper` for a logarithmic top.
pub fn logderiv_reduce_prim(
    terms: &[(Const, Elem)],
    tower: &Tower,
    level: usize,
) -> Result<LogDerivReduction, DecomposeError> {
    reduce(terms, tower, level, Kind::Log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::Monomial;

    fn x() -> Elem {
        Elem::var(1)
    }

    fn th() -> Elem {
        Elem::var(2)
    }

    #[test]
    fn laurent_example() {
        // (θ^3 + 1)/(θ^2 (θ - 1)) = 1 - 1/θ - 1/θ^2 + 2/(θ - 1)
        let one = Elem::one();
        let num = &th().pow(3) + &one;
        let den = &th().pow(2) * &(&th() - &one);
        let s = decomp_laurent(&(&num / &den), 2);
        let expect: BTreeMap<i64, Elem> =
            [(0, one.clone()), (-1, -&one), (-2, -&one)].into_iter().collect();
        assert_eq!(s.laurent, expect);
        assert_eq!(s.proper, &Elem::int(2) / &(&th() - &one));
    }

    #[test]
    fn laurent_with_coefficients() {
        let f = &(&x() * &th() + &Elem::int(1)) / &(&th() * &(&th() + &x()));
        let s = decomp_laurent(&f, 2);
        assert_eq!(s.total(2), f);
        assert!(s.laurent.keys().all(|&j| j == -1));
        assert_eq!(s.proper.den_in(2).coeff(0), x());
    }

    #[test]
    fn prim_reduction_examples() {
        let t = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Log, arg: x() });
        let r = logderiv_reduce_prim(&[(Const::int(2), th())], &t, 2).unwrap();
        assert!(r.terms.is_empty());
        assert_eq!(r.proper, &Elem::int(2) / &(&x() * &th()));

        let v = &th().pow(2) - &x();
        let r = logderiv_reduce_prim(&[(Const::int(1), v.clone())], &t, 2).unwrap();
        let expect = &(&(&Elem::int(2) * &th()) / &x() - &Elem::one()) / &v;
        assert_eq!(r.proper, expect);
    }

    #[test]
    fn exp_reduction_examples() {
        let t = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Exp, arg: x() });
        let r = logderiv_reduce_exp(&[(Const::int(1), &th() + &Elem::one())], &t, 2).unwrap();
        assert_eq!(r.a, Const::int(1));
        assert_eq!(r.proper, -&(&th() + &Elem::one()).inv());

        let r = logderiv_reduce_exp(&[(Const::int(1), &x() * &th())], &t, 2).unwrap();
        assert_eq!(r.a, Const::int(1));
        assert_eq!(r.terms, vec![(Const::int(1), x())]);
        assert!(r.proper.is_zero());
    }
}

//! Elements of a differential tower, stored recursively: a level-`n` element
//! is a reduced ratio of polynomials in the level-`n` variable whose
//! coefficients are elements of strictly lower levels. Level 0 is the
//! constant field, level 1 is `x`, and level `k + 1` is the `k`-th generator.
//!
//! Elements are always stored at the lowest level that can hold them and
//! denominators are monic, so equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::kernel::poly::gcd;
use crate::kernel::{BigRat, Field, Poly};

use super::constant::Const;

#[derive(Clone, PartialEq)]
pub enum Elem {
    C(Const),
    F(Arc<Frac>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct Frac {
    pub level: usize,
    pub num: Poly<Elem>,
    pub den: Poly<Elem>,
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::C(c) => write!(f, "{:?}", c),
            Elem::F(fr) => write!(f, "[L{} {:?} / {:?}]", fr.level, fr.num, fr.den),
        }
    }
}

impl Elem {
    pub fn constant(c: Const) -> Self {
        Elem::C(c)
    }

    pub fn rat(q: BigRat) -> Self {
        Elem::C(Const::rat(q))
    }

    pub fn int(n: i64) -> Self {
        Elem::C(Const::int(n))
    }

    /// The variable of the given level (1 = x).
    pub fn var(level: usize) -> Self {
        assert!(level >= 1);
        Elem::F(Arc::new(Frac {
            level,
            num: Poly::var(),
            den: Poly::one(),
        }))
    }

    pub fn level(&self) -> usize {
        match self {
            Elem::C(_) => 0,
            Elem::F(f) => f.level,
        }
    }

    pub fn as_const(&self) -> Option<&Const> {
        match self {
            Elem::C(c) => Some(c),
            _ => None,
        }
    }

    pub fn frac(&self) -> Option<&Frac> {
        match self {
            Elem::F(f) => Some(f),
            _ => None,
        }
    }

    /// Builds `num/den` in the variable of `level`, reducing to lowest terms.
    pub fn from_parts(level: usize, num: Poly<Elem>, den: Poly<Elem>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Elem::zero();
        }
        if den.is_constant() {
            let k = den.lc().inv();
            return Self::from_reduced(level, num.scale(&k), Poly::one());
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::from_reduced(level, num, den)
        } else {
            Self::from_reduced(level, num.exact_div(&g), den.exact_div(&g))
        }
    }

    /// Like [`Elem::from_parts`] but assumes `gcd(num, den) = 1`.
    pub fn from_reduced(level: usize, num: Poly<Elem>, den: Poly<Elem>) -> Self {
        if num.is_zero() {
            return Elem::zero();
        }
        let l = den.lc();
        let (num, den) = if l.is_one() {
            (num, den)
        } else {
            let k = l.inv();
            (num.scale(&k), den.scale(&k))
        };
        if den.is_constant() && num.is_constant() {
            return num.lc();
        }
        Elem::F(Arc::new(Frac { level, num, den }))
    }

    pub fn from_poly(level: usize, p: Poly<Elem>) -> Self {
        Self::from_reduced(level, p, Poly::one())
    }

    /// Numerator and denominator as polynomials in the variable of `level`.
    pub fn parts_in(&self, level: usize) -> (Poly<Elem>, Poly<Elem>) {
        let l = self.level();
        assert!(l <= level, "element above requested level");
        match self {
            Elem::F(f) if l == level => (f.num.clone(), f.den.clone()),
            _ => (Poly::constant(self.clone()), Poly::one()),
        }
    }

    pub fn num_in(&self, level: usize) -> Poly<Elem> {
        self.parts_in(level).0
    }

    pub fn den_in(&self, level: usize) -> Poly<Elem> {
        self.parts_in(level).1
    }

    /// The element as a polynomial in the variable of `level`, if it is one.
    pub fn as_poly_in(&self, level: usize) -> Option<Poly<Elem>> {
        let (n, d) = self.parts_in(level);
        d.is_one().then_some(n)
    }

    /// Whether the variable of `level` occurs anywhere in the element.
    pub fn depends_on(&self, level: usize) -> bool {
        match self {
            Elem::C(_) => false,
            Elem::F(f) => {
                f.level == level
                    || (f.level > level
                        && f.num
                            .coeffs()
                            .iter()
                            .chain(f.den.coeffs())
                            .any(|c| c.depends_on(level)))
            }
        }
    }

    pub fn is_rational_const(&self) -> Option<BigRat> {
        self.as_const().and_then(|c| c.as_rat())
    }

    /// Applies `f` to every constant leaf, then renormalizes.
    pub fn map_consts(&self, f: &dyn Fn(&Const) -> Const) -> Elem {
        match self {
            Elem::C(c) => Elem::C(f(c)),
            Elem::F(fr) => Elem::from_parts(
                fr.level,
                fr.num.map(|c| c.map_consts(f)),
                fr.den.map(|c| c.map_consts(f)),
            ),
        }
    }

    /// All constant leaves.
    pub fn consts(&self, out: &mut Vec<Const>) {
        match self {
            Elem::C(c) => out.push(c.clone()),
            Elem::F(fr) => {
                for c in fr.num.coeffs().iter().chain(fr.den.coeffs()) {
                    c.consts(out);
                }
            }
        }
    }

    pub fn pow(&self, n: i64) -> Elem {
        Field::pow(self, n)
    }
}

fn lift_pair(a: &Elem, b: &Elem) -> (usize, (Poly<Elem>, Poly<Elem>), (Poly<Elem>, Poly<Elem>)) {
    let l = a.level().max(b.level());
    (l, a.parts_in(l), b.parts_in(l))
}

impl Field for Elem {
    fn zero() -> Self {
        Elem::C(Const::zero())
    }
    fn one() -> Self {
        Elem::C(Const::one())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Elem::C(c) if c.is_zero())
    }
    fn is_one(&self) -> bool {
        matches!(self, Elem::C(c) if c.is_one())
    }
    fn add(&self, other: &Self) -> Self {
        if let (Elem::C(a), Elem::C(b)) = (self, other) {
            return Elem::C(a.add(b));
        }
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (l, (n1, d1), (n2, d2)) = lift_pair(self, other);
        if d1 == d2 {
            let n = n1.add(&n2);
            if d1.is_one() {
                return Elem::from_reduced(l, n, d1);
            }
            return Elem::from_parts(l, n, d1);
        }
        if d1.is_one() {
            return Elem::from_reduced(l, n1.mul(&d2).add(&n2), d2);
        }
        if d2.is_one() {
            return Elem::from_reduced(l, n2.mul(&d1).add(&n1), d1);
        }
        let g = gcd(&d1, &d2);
        let d1g = d1.exact_div(&g);
        let d2g = d2.exact_div(&g);
        let n = n1.mul(&d2g).add(&n2.mul(&d1g));
        let d = d1g.mul(&d2);
        if g.is_one() || n.is_zero() {
            return Elem::from_reduced(l, n, d);
        }
        // n is coprime to d1/g and d2/g, so only factors of g can cancel
        let h = gcd(&n, &g);
        if h.is_one() {
            Elem::from_reduced(l, n, d)
        } else {
            Elem::from_reduced(l, n.exact_div(&h), d.exact_div(&h))
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Field::add(self, &Field::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        if let (Elem::C(a), Elem::C(b)) = (self, other) {
            return Elem::C(a.mul(b));
        }
        if self.is_zero() || other.is_zero() {
            return Elem::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (l, (n1, d1), (n2, d2)) = lift_pair(self, other);
        if d1.is_one() && d2.is_one() {
            return Elem::from_reduced(l, n1.mul(&n2), d1);
        }
        let g1 = gcd(&n1, &d2);
        let g2 = gcd(&n2, &d1);
        let (n1, d2) = if g1.is_one() { (n1, d2) } else { (n1.exact_div(&g1), d2.exact_div(&g1)) };
        let (n2, d1) = if g2.is_one() { (n2, d1) } else { (n2.exact_div(&g2), d1.exact_div(&g2)) };
        Elem::from_reduced(l, n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        match self {
            Elem::C(c) => Elem::C(c.neg()),
            Elem::F(f) => Elem::F(Arc::new(Frac {
                level: f.level,
                num: f.num.neg(),
                den: f.den.clone(),
            })),
        }
    }
    fn inv(&self) -> Self {
        match self {
            Elem::C(c) => Elem::C(c.inv()),
            Elem::F(f) => Elem::from_reduced(f.level, f.den.clone(), f.num.clone()),
        }
    }
    fn from_rat(q: &BigRat) -> Self {
        Elem::rat(q.clone())
    }
    fn as_rat(&self) -> Option<BigRat> {
        self.is_rational_const()
    }
}

macro_rules! elem_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Elem> for &Elem {
            type Output = Elem;
            fn $m(self, rhs: &Elem) -> Elem {
                Field::$f(self, rhs)
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                Field::$f(&self, &rhs)
            }
        }
        impl $tr<&Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: &Elem) -> Elem {
                Field::$f(&self, rhs)
            }
        }
        impl $tr<Elem> for &Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                Field::$f(self, &rhs)
            }
        }
    };
}

elem_binop!(Add, add, add);
elem_binop!(Sub, sub, sub);
elem_binop!(Mul, mul, mul);
elem_binop!(Div, div, div);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Field::neg(self)
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Field::neg(&self)
    }
}

impl From<Const> for Elem {
    fn from(c: Const) -> Self {
        Elem::C(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Elem {
        Elem::var(1)
    }

    #[test]
    fn reduces_and_demotes() {
        let a = (&x() * &x() - Elem::int(1)) / (&x() - Elem::int(1));
        assert_eq!(a, &x() + &Elem::int(1));
        let b = &x() / &x();
        assert_eq!(b, Elem::one());
        assert_eq!(b.level(), 0);
    }

    #[test]
    fn mixed_levels() {
        let t = Elem::var(2);
        let e = (&t * &x()) / &x();
        assert_eq!(e, t);
        let f = (&t + &x()) - &t;
        assert_eq!(f, x());
        assert!(!f.depends_on(2));
        assert!(e.depends_on(2));
    }

    #[test]
    fn inverse_round_trip() {
        let t = Elem::var(2);
        let a = (&t * &t + &x()) / (&t + Elem::int(3));
        let b = &a * &a.inv();
        assert!(b.is_one());
    }
}

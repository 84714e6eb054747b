//! Hermite reduction along the top variable of a tower.

use crate::kernel::poly::{diophantine, squarefree};
use crate::kernel::{Field, Poly};
use crate::tower::{Elem, Tower};

#[derive(Clone, Debug)]
pub struct HermiteResult {
    /// Elementary part already integrated.
    pub integrated: Elem,
    /// What is left, with a squarefree denominator in the top variable.
    pub remainder: Elem,
}

/// Writes `f = g' + h` with the denominator of `h` squarefree in the
/// variable of `level`. Every squarefree factor of the denominator must be
/// normal for the derivation (coprime to its own derivative), which holds for
/// `x`, for logarithms, and for exponentials once the factor `θ` is removed.
pub fn hermite_reduce(f: &Elem, tower: &Tower, level: usize) -> HermiteResult {
    let (mut a, mut d) = f.parts_in(level);
    let mut g = Elem::zero();
    if d.is_constant() {
        return HermiteResult {
            integrated: g,
            remainder: f.clone(),
        };
    }
    for (v, i) in squarefree(&d) {
        if i < 2 || v.is_constant() {
            continue;
        }
        let u = d.exact_div(&v.pow(i as u32));
        let dv = tower.derive_poly(level, &v);
        let uv = u.mul(&dv);
        for j in (1..i).rev() {
            let rhs = a.scale(&Elem::int(-(j as i64)).inv());
            let (b, c) = diophantine(&uv, &v, &rhs);
            g = &g + &Elem::from_parts(level, b.clone(), v.pow(j as u32));
            let db = tower.derive_poly(level, &b);
            a = c.scale(&Elem::int(-(j as i64))).sub(&u.mul(&db));
        }
        d = u.mul(&v);
    }
    HermiteResult {
        integrated: g,
        remainder: Elem::from_parts(level, a, d),
    }
}

/// `true` when the denominator of `f` in `level` is squarefree.
pub fn has_squarefree_denominator(f: &Elem, level: usize) -> bool {
    let d: Poly<Elem> = f.den_in(level);
    d.is_constant() || squarefree(&d).iter().all(|(_, m)| *m == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{Kind, Monomial};

    fn x() -> Elem {
        Elem::var(1)
    }

    fn check(f: &Elem, t: &Tower, level: usize) -> HermiteResult {
        let r = hermite_reduce(f, t, level);
        assert_eq!(&t.derive(&r.integrated) + &r.remainder, *f);
        assert!(has_squarefree_denominator(&r.remainder, level));
        r
    }

    #[test]
    fn rational_function() {
        let t = Tower::new("x", &[]);
        // 1/x^2 is exactly -1/x differentiated
        let r = check(&x().pow(-2), &t, 1);
        assert!(r.remainder.is_zero());
        assert_eq!(r.integrated, -&x().inv());
        let f = &(&x() + &Elem::int(2)) / &(&x().pow(3) * &(&x() - &Elem::int(1)).pow(2));
        check(&f, &t, 1);
    }

    #[test]
    fn log_tower() {
        let t = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Log, arg: x() });
        let l = Elem::var(2);
        // 1/(x λ^2) = (-1/λ)'
        let r = check(&(&x() * &l.pow(2)).inv(), &t, 2);
        assert!(r.remainder.is_zero());
        check(&(&l.pow(2) + &x()).pow(-2), &t, 2);
    }

    #[test]
    fn exp_tower() {
        let t = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Exp, arg: x() });
        let th = Elem::var(2);
        check(&(&th + &Elem::int(1)).pow(-2), &t, 2);
    }
}

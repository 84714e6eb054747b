//! Recognizing `r·e^g` (with `r, g` in the ground field) as the derivative
//! of a constant multiple of `Ei` or an upper incomplete `Γ`.

use crate::kernel::Field;
use crate::tower::qlinear::solve_combination;
use crate::tower::{Const, Elem, Tower};

use super::answer::{SpecialKind, SpecialTerm};

/// `r e^g = c e^(-γ) (g + γ)'/(g + γ) e^(g + γ)` for constant `c` and
/// rational `γ`. `eg` is the tower element for `e^g`.
pub fn match_ei(r: &Elem, g: &Elem, eg: &Elem, tower: &Tower) -> Option<SpecialTerm> {
    let dg = tower.derive(g);
    if r.is_zero() || dg.is_zero() {
        return None;
    }
    // c = r (g + γ)/g' is constant iff (r g/g')' + γ (r/g')' = 0
    let p = tower.derive(&(&(r * g) / &dg));
    let q = tower.derive(&(r / &dg));
    let gamma = if q.is_zero() {
        return None;
    } else {
        solve_combination(&-&p, &[q])?.pop().unwrap()
    };
    let shift = Elem::rat(gamma.clone());
    let arg = g + &shift;
    let c = (&(r * &arg) / &dg).as_const()?.clone();
    Some(SpecialTerm {
        kind: SpecialKind::Ei,
        coeff: c.mul(&Const::exp_rat(&-gamma.clone())),
        arg,
        exp_factor: &Elem::C(Const::exp_rat(&gamma)) * eg,
    })
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GammaMatchError {
    #[error("no power relation between the cofactor and the argument")]
    NoPower,
    #[error("coefficient is not constant")]
    NotConstant,
    #[error("exponent {0} outside the canonical range (-1, 0)")]
    OutOfRange(String),
    #[error("cannot take the {1}-th root of {0}")]
    NoRoot(String, u32),
}

fn const_root(c: &Const, k: u32) -> Option<Const> {
    if k == 1 {
        return Some(c.clone());
    }
    Const::root(&c.as_rat()?, k).ok()
}

/// `r e^g = c t' t^(m/k) e^(-t)` with `t = -g`, giving `-c Γ(1 + m/k, t)`.
/// Only exponents in the canonical range `-1 < m/k < 0` are accepted.
pub fn match_gamma_rational(r: &Elem, g: &Elem, eg: &Elem, tower: &Tower) -> Result<SpecialTerm, GammaMatchError> {
    gamma_rational(r, g, eg, tower, false)
}

/// Like [`match_gamma_rational`] but accepts any rational exponent. The
/// result is still a correct antiderivative; it is only used after the
/// reduction failed to bring the exponent into range.
pub fn match_gamma_generalized(r: &Elem, g: &Elem, eg: &Elem, tower: &Tower) -> Result<SpecialTerm, GammaMatchError> {
    gamma_rational(r, g, eg, tower, true)
}

fn gamma_rational(r: &Elem, g: &Elem, eg: &Elem, tower: &Tower, any_range: bool) -> Result<SpecialTerm, GammaMatchError> {
    if tower.log_levels().iter().any(|&l| g.depends_on(l) || r.depends_on(l)) {
        return Err(GammaMatchError::NoPower);
    }
    let t = -g;
    let dt = tower.derive(&t);
    if r.is_zero() || dt.is_zero() {
        return Err(GammaMatchError::NoPower);
    }
    let u = r / &dt;
    let s = solve_combination(&tower.log_derivative(&u), &[tower.log_derivative(&t)])
        .ok_or(GammaMatchError::NoPower)?
        .pop()
        .unwrap();
    if !any_range && !(s < crate::kernel::qzero() && s > -crate::kernel::BigRat::from_integer(1.into())) {
        return Err(GammaMatchError::OutOfRange(s.to_string()));
    }
    let k: u32 = s.denom().try_into().map_err(|_| GammaMatchError::NoPower)?;
    let m: i64 = s.numer().try_into().map_err(|_| GammaMatchError::NoPower)?;
    let ck = &u.pow(k as i64) / &t.pow(m);
    let ck = ck.as_const().ok_or(GammaMatchError::NotConstant)?.clone();
    let c = const_root(&ck, k).ok_or_else(|| GammaMatchError::NoRoot(ck.to_string(), k))?;
    let radical = &u / &Elem::C(c.clone());
    Ok(SpecialTerm {
        kind: SpecialKind::GammaRational { k, m, radical },
        coeff: c.neg(),
        arg: t,
        exp_factor: eg.clone(),
    })
}

/// Over `Q(x)(λ)` with `λ = log w`: `r e^g` where `g = (α-1)λ - w + κ`,
/// `α` irrational and `κ` a rational constant, equals
/// `c w' w^(α-1) e^(-w) e^κ` for `c = r/w'`, giving `-c e^κ Γ(α, w)`.
pub fn match_gamma_irrational(r: &Elem, g: &Elem, eg: &Elem, tower: &Tower) -> Option<SpecialTerm> {
    let l = tower.log_levels().into_iter().find(|&l| g.depends_on(l))?;
    if tower.log_levels().iter().any(|&o| o != l && g.depends_on(o)) || r.depends_on(l) {
        return None;
    }
    let gp = g.as_poly_in(l)?;
    if gp.deg() != 1 {
        return None;
    }
    let a = gp.coeff(1).as_const()?.clone();
    if a.as_rat().is_some() {
        return None;
    }
    let w = tower.generator(l).arg.clone();
    let kappa = (&gp.coeff(0) + &w).as_const()?.clone();
    let dw = tower.derive(&w);
    // r = c·w'·w^n shifts the Gamma parameter by the integer n
    let q = r / &dw;
    let n = match q.as_const() {
        Some(_) => 0,
        None => {
            let dq = &tower.derive(&q) / &q;
            let sol = solve_combination(&dq, &[&dw / &w])?;
            sol[0].is_integer().then(|| sol[0].to_integer())?.try_into().ok()?
        }
    };
    let wn = w.pow(n);
    let c = (&q / &wn).as_const()?.clone();
    let k = Const::exp_of(&kappa).ok()?;
    let alpha = a.add(&Const::int(n + 1));
    Some(SpecialTerm {
        kind: SpecialKind::GammaIrrational { alpha },
        coeff: c.mul(&k).neg(),
        arg: w,
        exp_factor: &(&Elem::C(k.inv()) * eg) * &wn,
    })
}

/// Which matcher fits an integrand piece, tried in a fixed order.
pub fn match_special(r: &Elem, g: &Elem, eg: &Elem, tower: &Tower) -> Option<SpecialTerm> {
    if let Some(t) = match_gamma_irrational(r, g, eg, tower) {
        return Some(t);
    }
    if tower.log_levels().iter().any(|&l| g.depends_on(l) || r.depends_on(l)) {
        return None;
    }
    if let Some(t) = match_ei(r, g, eg, tower) {
        return Some(t);
    }
    match_gamma_rational(r, g, eg, tower).ok()
}

/// Relation the derivative of an `Ei` term relies on.
pub fn ei_relation_holds(t: &SpecialTerm, tower: &Tower) -> bool {
    tower.derive(&t.exp_factor) == &tower.derive(&t.arg) * &t.exp_factor
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};
    use crate::tower::{Kind, Monomial};

    fn x() -> Elem {
        Elem::var(1)
    }

    fn exp_tower(arg: Elem) -> Tower {
        Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Exp, arg })
    }

    #[test]
    fn ei_of_x() {
        let t = exp_tower(x());
        let m = match_ei(&x().inv(), &x(), &Elem::var(2), &t).unwrap();
        assert_eq!(m.coeff, Const::one());
        assert_eq!(m.arg, x());
    }

    #[test]
    fn ei_with_shift() {
        let g = &Elem::int(2) * &x();
        let t = exp_tower(g.clone());
        let r = &Elem::int(2) / &(&g + &Elem::int(3));
        let m = match_ei(&r, &g, &Elem::var(2), &t).unwrap();
        assert_eq!(m.coeff, Const::exp_rat(&int(-3)));
        assert_eq!(m.arg, &g + &Elem::int(3));
        assert!(ei_relation_holds(&m, &t));
    }

    #[test]
    fn gaussian_gamma() {
        let g = -&x().pow(2);
        let t = exp_tower(g.clone());
        let m = match_gamma_rational(&Elem::one(), &g, &Elem::var(2), &t).unwrap();
        assert_eq!(m.coeff, Const::rat(rat(-1, 2)));
        assert_eq!(m.rational_alpha(), Some(rat(1, 2)));
        assert!(m.in_canonical_range());
        assert_eq!(m.arg, x().pow(2));
    }

    #[test]
    fn out_of_range_only_generalized() {
        let g = -&x().pow(2);
        let t = exp_tower(g.clone());
        let r = x().pow(3);
        assert!(matches!(
            match_gamma_rational(&r, &g, &Elem::var(2), &t),
            Err(GammaMatchError::OutOfRange(_))
        ));
        let m = match_gamma_generalized(&r, &g, &Elem::var(2), &t).unwrap();
        assert_eq!(m.rational_alpha(), Some(rat(2, 1)));
        assert!(!m.in_canonical_range());
        assert_eq!(m.coeff, Const::rat(rat(-1, 2)));
    }

    #[test]
    fn ei_rejects_non_reciprocal() {
        let t = exp_tower(x());
        assert!(match_ei(&x().pow(-2), &x(), &Elem::var(2), &t).is_none());
    }

    #[test]
    fn irrational_gamma() {
        let alpha = Const::symbol("alpha");
        let t = Tower::new("x", &["alpha".to_string()])
            .with_generator(Monomial { kind: Kind::Log, arg: x() });
        let am1 = Elem::C(alpha.sub(&Const::one()));
        let g = &(&am1 * &Elem::var(2)) - &x();
        let t = t.with_generator(Monomial { kind: Kind::Exp, arg: g.clone() });
        let m = match_gamma_irrational(&Elem::one(), &g, &Elem::var(3), &t).unwrap();
        assert_eq!(m.coeff, Const::int(-1));
        assert_eq!(m.kind, SpecialKind::GammaIrrational { alpha });
    }
}

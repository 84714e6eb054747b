//! Integration over the whole tower.
//!
//! The top variable decides the method. Over `Q(x)` and over a logarithm
//! the proper part goes through Hermite reduction and Rothstein–Trager. A
//! logarithmic polynomial part is integrated from its leading coefficient
//! down. Over an exponential `θ = e^η` the integrand splits into a proper
//! part (Hermite and Rothstein–Trager, corrected by the `η` term the
//! logarithms pick up) and a Laurent polynomial whose `θ^j` coefficients are
//! handled one at a time: an exact solution of `y' + jη' y = a_j` gives an
//! elementary term, and otherwise the reduced residual is matched against
//! `Ei` and `Γ`.

use crate::decompose::{decomp_laurent, logderiv_reduce_exp};
use crate::elementary::{hermite_reduce, rde_reduce, rde_solve, residue_logpart, RdeOutcome};
use crate::io::print::fmt_elem;
use crate::kernel::factor::factor_over_q;
use crate::kernel::poly::{partial_fractions, squarefree};
use crate::kernel::{BigRat, Field, Poly};
use crate::tower::{Const, Elem, Kind, Tower};

use super::answer::{Answer, Status};
use super::matchers::{match_gamma_generalized, match_special};

/// Integrates `f` with respect to `x`.
pub fn integrate(f: &Elem, tower: &Tower) -> Answer {
    integrate_at(f, tower, f.level())
}

fn integrate_at(f: &Elem, tower: &Tower, level: usize) -> Answer {
    if f.is_zero() {
        return Answer::default();
    }
    match level {
        0 => Answer::elementary(f * &tower.x()),
        1 => integrate_rational(f, tower),
        _ => match tower.kind_at(level).unwrap() {
            Kind::Log => integrate_log(f, tower, level),
            Kind::Exp => integrate_exp(f, tower, level),
        },
    }
}

/// Hermite reduction then Rothstein–Trager on a proper fraction whose
/// denominator is normal in `level`.
fn integrate_proper(h: &Elem, tower: &Tower, level: usize) -> (Answer, Elem) {
    let hr = hermite_reduce(h, tower, level);
    let mut ans = Answer::elementary(hr.integrated);
    let rem = hr.remainder;
    if rem.is_zero() {
        return (ans, rem);
    }
    match residue_logpart(&rem, tower, level) {
        Ok(terms) => {
            for (c, v) in terms {
                ans.add_log(c, v);
            }
        }
        Err(e) => {
            let status = if level == 1 { Status::Unsupported } else { Status::NoGammaFormFound };
            ans.merge(Answer::failed(
                status,
                rem.clone(),
                format!("{} in {}", e, fmt_elem(&rem, tower)),
            ));
        }
    }
    (ans, rem)
}

fn integrate_rational(f: &Elem, tower: &Tower) -> Answer {
    let (n, d) = f.parts_in(1);
    let (q, r) = n.div_rem(&d);
    let prim = Poly::new(
        std::iter::once(Elem::zero())
            .chain(q.coeffs().iter().enumerate().map(|(k, c)| c * &Elem::int(k as i64 + 1).inv()))
            .collect(),
    );
    let mut ans = Answer::elementary(Elem::from_poly(1, prim));
    if !r.is_zero() {
        ans.merge(integrate_proper(&Elem::from_parts(1, r, d), tower, 1).0);
    }
    ans
}

fn integrate_log(f: &Elem, tower: &Tower, level: usize) -> Answer {
    let (n, d) = f.parts_in(level);
    let (p, r) = n.div_rem(&d);
    let mut ans = Answer::default();
    if !r.is_zero() {
        ans.merge(integrate_proper(&Elem::from_parts(level, r, d), tower, level).0);
    }
    if !p.is_zero() {
        ans.merge(integrate_log_polynomial(&p, tower, level));
    }
    ans
}

/// `∫ Σ p_i λ^i = Σ q_i λ^i`: the coefficient of `λ^i` gives
/// `q_i' + (i+1) q_{i+1} λ' = p_i`, so each `q_i` is an integral in the
/// ground field whose logarithms must combine into a multiple of `λ` (which
/// then fixes the free constant of `q_{i+1}`).
fn integrate_log_polynomial(p: &Poly<Elem>, tower: &Tower, level: usize) -> Answer {
    let dl = tower.var_derivative(level);
    let lam = Elem::var(level);
    let n = p.deg() as usize;
    let below = level - 1;
    let mut q_tilde = Elem::zero(); // q̃_{i+1}
    let mut total = Elem::zero();
    let mut tail = Answer::default();
    for i in (0..=n).rev() {
        let h = &p.coeff(i) - &(&(&Elem::int(i as i64 + 1) * &q_tilde) * &dl);
        let a = integrate_at(&h, tower, h.level().min(below));
        let d_next;
        if i == 0 {
            let part = a.elementary.clone();
            let mut a = a;
            a.elementary = Elem::zero();
            tail = a;
            d_next = Const::zero();
            total = &total + &part;
            total = &total + &(&Elem::C(d_next.clone()) * &lam);
            total = &total + &(&q_tilde * &lam);
            break;
        }
        let fail = |why: &str| {
            Answer::failed(
                Status::NoGammaFormFound,
                Elem::from_poly(level, p.clone()),
                format!("{} while integrating {}", why, fmt_elem(&Elem::from_poly(level, p.clone()), tower)),
            )
        };
        if !a.is_integrated() || !a.specials.is_empty() {
            return fail("coefficient integral is not elementary");
        }
        let s = a
            .logs
            .iter()
            .fold(Elem::zero(), |acc, t| &acc + &(&Elem::C(t.coeff.clone()) * &tower.log_derivative(&t.arg)));
        let k = match (&s / &dl).as_const() {
            Some(k) => k.clone(),
            None => return fail("new logarithm needed"),
        };
        d_next = k.mul(&Const::rat(BigRat::new(1.into(), (i as i64 + 1).into())));
        let q_next = &q_tilde + &Elem::C(d_next);
        total = &total + &(&q_next * &lam.pow(i as i64 + 1));
        q_tilde = a.elementary;
    }
    let mut ans = Answer::elementary(total);
    ans.merge(tail);
    ans
}

fn integrate_exp(f: &Elem, tower: &Tower, level: usize) -> Answer {
    let eta = tower.generator(level).arg.clone();
    let split = decomp_laurent(f, level);
    let mut laurent = split.laurent;
    let mut ans = Answer::default();
    if !split.proper.is_zero() {
        let hr = hermite_reduce(&split.proper, tower, level);
        ans.elementary = hr.integrated;
        let s2 = decomp_laurent(&hr.remainder, level);
        for (j, a) in s2.laurent {
            let e = laurent.entry(j).or_insert_with(Elem::zero);
            *e = &*e + &a;
        }
        if !s2.proper.is_zero() {
            match residue_logpart(&s2.proper, tower, level) {
                Ok(terms) => {
                    let red = logderiv_reduce_exp(&terms, tower, level).expect("exponential level");
                    ans.elementary = &ans.elementary - &(&Elem::C(red.a.clone()) * &eta);
                    for (c, v) in terms {
                        ans.add_log(c, v);
                    }
                    for (c, v) in red.terms {
                        ans.add_log(c.neg(), v);
                    }
                }
                Err(e) => ans.merge(Answer::failed(
                    Status::NoGammaFormFound,
                    s2.proper.clone(),
                    format!("{} in {}", e, fmt_elem(&s2.proper, tower)),
                )),
            }
        }
    }
    for (j, a) in laurent.into_iter().rev() {
        if a.is_zero() {
            continue;
        }
        if j == 0 {
            ans.merge(integrate_at(&a, tower, a.level()));
        } else {
            ans.merge(integrate_exp_term(&a, j, tower, level));
        }
    }
    ans
}

/// Splits a rational function into its polynomial part and partial
/// fractions over the factors we can find.
fn split_pieces(r: &Elem) -> Vec<Elem> {
    if r.level() != 1 {
        return vec![r.clone()];
    }
    let (n, d) = r.parts_in(1);
    let (q, rem) = n.div_rem(&d);
    let mut out = Vec::new();
    if !q.is_zero() {
        out.push(Elem::from_poly(1, q));
    }
    if rem.is_zero() {
        return out;
    }
    let rational: Option<Vec<BigRat>> = d.coeffs().iter().map(|c| c.as_rat()).collect();
    let factors: Vec<(Poly<Elem>, usize)> = match rational {
        Some(qs) => factor_over_q(&Poly::new(qs))
            .1
            .into_iter()
            .map(|(f, e)| (f.map(|c| Elem::rat(c.clone())), e))
            .collect(),
        None => squarefree(&d),
    };
    match partial_fractions(&rem, &d, &factors) {
        Ok(terms) => {
            for t in terms {
                out.push(Elem::from_parts(1, t.numerator, t.factor.pow(t.power as u32)));
            }
        }
        Err(_) => out.push(Elem::from_parts(1, rem, d)),
    }
    out
}

/// `∫ a θ^j` for `j ≠ 0`.
/// Moves exponential monomials of lower levels from the coefficient into
/// the exponent, so `r·θ_l^i·e^g` is treated as `r·e^(g + i·η_l)`.
fn peel(a: &Elem, g: &Elem, eg: &Elem, tower: &Tower) -> (Elem, Elem, Elem) {
    let (mut r, mut g2, mut eg2) = (a.clone(), g.clone(), eg.clone());
    while r.level() >= 2 && tower.kind_at(r.level()) == Some(Kind::Exp) {
        let l = r.level();
        let (n, d) = r.parts_in(l);
        let (Some(vn), Some(vd)) = (n.valuation(), d.valuation()) else { break };
        if vn as isize != n.deg() || vd as isize != d.deg() {
            break;
        }
        let i = vn as i64 - vd as i64;
        r = &n.lc() / &d.lc();
        g2 = &g2 + &(&Elem::int(i) * &tower.generator(l).arg);
        eg2 = &eg2 * &Elem::var(l).pow(i);
    }
    if tower.derive(&g2).is_zero() {
        return (a.clone(), g.clone(), eg.clone());
    }
    (r, g2, eg2)
}

fn integrate_exp_term(a: &Elem, j: i64, tower: &Tower, level: usize) -> Answer {
    let eta = &tower.generator(level).arg;
    let (a, g, eg) = peel(a, &(&Elem::int(j) * eta), &Elem::var(level).pow(j), tower);
    let a = &a;
    let b = tower.derive(&g);
    let below = level - 1;
    if let RdeOutcome::Solution(y) = rde_solve(&b, a, tower, below) {
        return Answer::elementary(&y * &eg);
    }
    let (y, r) = rde_reduce(&b, a, tower, below, &[]);
    let mut ans = Answer::elementary(&y * &eg);
    if r.is_zero() {
        return ans;
    }
    if let Some(t) = match_special(&r, &g, &eg, tower) {
        ans.specials.push(t);
        return ans;
    }
    // with a logarithm in the exponent, allow the residual to be a constant
    // multiple of w' so that powers of w reduce to the bare Γ term
    if let Some(l) = tower.log_levels().into_iter().find(|&l| g.depends_on(l)) {
        let dw = tower.derive(&tower.generator(l).arg);
        let (y2, r2) = rde_reduce(&b, a, tower, below, &[dw]);
        if let Some(t) = match_special(&r2, &g, &eg, tower) {
            let mut ans = Answer::elementary(&y2 * &eg);
            ans.specials.push(t);
            return ans;
        }
    }
    let mut unmatched = Elem::zero();
    for piece in split_pieces(&r) {
        if let Some(t) = match_special(&piece, &g, &eg, tower) {
            ans.specials.push(t);
        } else if let Ok(t) = match_gamma_generalized(&piece, &g, &eg, tower) {
            ans.diagnostics.push(format!(
                "Gamma parameter {} lies outside (0, 1); the term is a generalized match",
                t.alpha_string().unwrap_or_default()
            ));
            ans.specials.push(t);
        } else {
            unmatched = &unmatched + &piece;
        }
    }
    if !unmatched.is_zero() {
        let rest = &unmatched * &eg;
        ans.merge(Answer::failed(
            Status::NoGammaFormFound,
            rest.clone(),
            format!("no Ei or Gamma form for {}", fmt_elem(&rest, tower)),
        ));
    }
    ans
}

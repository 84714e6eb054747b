//! The Risch differential equation `y' + b y = a` with `b, a` in the field
//! below the top generator.
//!
//! Over `Q(x)` the solution is found by bounding the denominator and the
//! degree of `y` and solving a linear system for its coefficients. Over
//! `Q(x)(λ)` with `b` free of `λ` the equation is solved coefficient by
//! coefficient in `λ`, from the top down.
//!
//! [`rde_reduce`] is the same computation with an extra residual `r` chosen
//! from the part of the right-hand side that no `y` can reach (simple poles,
//! and polynomial terms below the degree of `b`), so that
//! `y' + b y + r = a` always has a solution.

use crate::kernel::factor::small_int;
use crate::kernel::linalg::solve;
use crate::kernel::poly::{gcd, squarefree};
use crate::kernel::{Field, Poly};
use crate::tower::{Const, Elem, Kind, Tower};

#[derive(Clone, Debug, PartialEq)]
pub enum RdeOutcome {
    Solution(Elem),
    NoSolution(String),
}

type CPoly = Poly<Const>;

fn to_cpoly(p: &Poly<Elem>) -> CPoly {
    p.map(|c| c.as_const().expect("coefficient above level 0").clone())
}

fn from_cpoly(p: &CPoly) -> Poly<Elem> {
    p.map(|c| Elem::C(c.clone()))
}

fn parts1(e: &Elem) -> (CPoly, CPoly) {
    let (n, d) = e.parts_in(1);
    (to_cpoly(&n), to_cpoly(&d))
}

/// Pairwise coprime monic squarefree polynomials generating the same
/// multiplicative structure as the input factors.
fn coprime_basis(mut items: Vec<CPoly>) -> Vec<CPoly> {
    items.retain(|p| !p.is_constant());
    'outer: loop {
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                let g = gcd(&items[i], &items[j]);
                if !g.is_constant() {
                    let a = items[i].exact_div(&g);
                    let b = items[j].exact_div(&g);
                    items.remove(j);
                    items.remove(i);
                    for p in [g, a, b] {
                        if !p.is_constant() {
                            items.push(p.monic());
                        }
                    }
                    continue 'outer;
                }
            }
        }
        return items;
    }
}

fn multiplicity(p: &CPoly, f: &CPoly) -> usize {
    let mut m = 0;
    let mut q = p.clone();
    while !q.is_zero() && f.divides(&q) {
        q = q.exact_div(f);
        m += 1;
    }
    m
}

fn squarefree_factors(p: &CPoly) -> Vec<CPoly> {
    if p.is_constant() {
        return Vec::new();
    }
    squarefree(p).into_iter().map(|(f, _)| f).collect()
}

fn nonneg_int(c: &Const) -> Option<i64> {
    c.as_rat().and_then(|q| small_int(&q)).filter(|n| *n >= 0)
}

/// Core solver over `Q(x)`. With `residual` the returned `r` absorbs what no
/// `y` can produce; `extra` adds caller-chosen residual directions.
fn solve_level1(b: &Elem, a: &Elem, residual: bool, extra: &[Elem]) -> Option<(Elem, Elem)> {
    if a.is_zero() {
        return Some((Elem::zero(), Elem::zero()));
    }
    let (bn, bd) = parts1(b);
    let (an, ad) = parts1(a);
    let mut items = squarefree_factors(&ad);
    items.extend(squarefree_factors(&bd));
    let basis = coprime_basis(items);

    let mut dy = CPoly::one();
    let mut s = CPoly::one();
    for p in &basis {
        let ma = multiplicity(&ad, p) as i64;
        let eb = multiplicity(&bd, p) as i64;
        let mut np = match eb {
            0 => (ma - 1).max(0),
            1 => (ma - 1).max(0),
            _ => (ma - eb).max(0),
        };
        if eb == 1 && p.deg() == 1 {
            // y ~ (x - x0)^(-n) cancels against b when the residue of b is n
            let x0 = p.coeff(0).neg();
            let rho = bn.eval(&x0).div(&bd.exact_div(p).eval(&x0));
            if let Some(n) = nonneg_int(&rho) {
                np = np.max(n);
            }
        }
        dy = dy.mul(&p.pow(np as u32));
        if residual {
            // a pole of order e of the exponent leaves poles up to order e in
            // the residual
            let e = if ma > 0 { ma.min(eb.max(1)) } else { 0 }.max(eb - 1);
            s = s.mul(&p.pow(e as u32));
        }
    }

    let delta = bn.deg() as i64 - bd.deg() as i64;
    let alpha = an.deg() as i64 - ad.deg() as i64;
    let mut ybound = if b.is_zero() {
        alpha + 1
    } else if delta >= 0 {
        alpha - delta
    } else if delta == -1 {
        let beta = bn.lc().div(&bd.lc()).neg();
        (alpha + 1).max(nonneg_int(&beta).unwrap_or(-1))
    } else {
        // y' dominates except for a constant y, where b·y has degree delta
        (alpha + 1).max(0)
    };
    if residual {
        ybound = ybound.max(-1);
    }
    let ndeg = dy.deg() as i64 + ybound;
    let n_n = (ndeg + 1).max(0) as usize;
    let rdeg = if residual {
        s.deg() as i64 - 1 + delta.max(0)
    } else {
        -1
    };
    let n_r = (rdeg + 1).max(0) as usize;

    let mut l = dy.mul(&dy).lcm(&bd.mul(&dy)).lcm(&ad);
    if residual {
        l = l.lcm(&s);
    }
    let mut extra_parts = Vec::new();
    for e in extra {
        let (en, ed) = parts1(e);
        l = l.lcm(&ed);
        extra_parts.push((en, ed));
    }
    let l_dy2 = l.exact_div(&dy.mul(&dy));
    let l_bdy = l.exact_div(&bd.mul(&dy));
    let ddy = dy.formal_derivative();

    let mut cols: Vec<CPoly> = Vec::new();
    for k in 0..n_n {
        let xk = CPoly::monomial(Const::one(), k);
        let dxk = xk.formal_derivative();
        let c = dxk.mul(&dy).sub(&xk.mul(&ddy)).mul(&l_dy2).add(&bn.mul(&xk).mul(&l_bdy));
        cols.push(c);
    }
    if residual {
        let l_s = l.exact_div(&s);
        for k in 0..n_r {
            cols.push(CPoly::monomial(Const::one(), k).mul(&l_s));
        }
    }
    for (en, ed) in &extra_parts {
        cols.push(en.mul(&l.exact_div(ed)));
    }
    let rhs = an.mul(&l.exact_div(&ad));
    let nrows = cols
        .iter()
        .map(|c| c.coeffs().len())
        .chain(std::iter::once(rhs.coeffs().len()))
        .max()
        .unwrap_or(0);
    let rows: Vec<Vec<Const>> = (0..nrows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let b_vec: Vec<Const> = (0..nrows).map(|i| rhs.coeff(i)).collect();
    let sol = if cols.is_empty() {
        b_vec.iter().all(Field::is_zero).then(Vec::new)?
    } else {
        solve(&rows, &b_vec, cols.len())?
    };
    let ny = CPoly::new(sol[..n_n].to_vec());
    let y = Elem::from_parts(1, from_cpoly(&ny), from_cpoly(&dy));
    let mut r = Elem::zero();
    if residual {
        let rn = CPoly::new(sol[n_n..n_n + n_r].to_vec());
        r = Elem::from_parts(1, from_cpoly(&rn), from_cpoly(&s));
    }
    for (i, e) in extra.iter().enumerate() {
        r = &r + &(&Elem::C(sol[n_n + n_r + i].clone()) * e);
    }
    Some((y, r))
}

/// Top-down solve over `Q(x)(λ)` for `b ∈ Q(x)` and `a` polynomial in `λ`.
fn solve_log_level(b: &Elem, a: &Elem, tower: &Tower, level: usize) -> Result<Elem, String> {
    let Some(ap) = a.as_poly_in(level) else {
        return Err("right-hand side has a denominator in the logarithm".into());
    };
    let dl = tower.var_derivative(level);
    let lam = Elem::var(level);
    let n = ap.deg();
    let mut y = Elem::zero();
    let mut above = Elem::zero();
    for i in (0..=n).rev() {
        let rhs = &ap.coeff(i as usize) - &(&(&Elem::int(i as i64 + 1) * &above) * &dl);
        let yi = solve_below(b, &rhs, tower, level - 1)?;
        y = &y + &(&yi * &lam.pow(i as i64));
        above = yi;
    }
    Ok(y)
}

fn solve_below(b: &Elem, a: &Elem, tower: &Tower, level: usize) -> Result<Elem, String> {
    let k = b.level().max(a.level()).min(level);
    if b.level() > level || a.level() > level {
        return Err("coefficients outside the ground field".into());
    }
    if k <= 1 {
        return solve_level1(b, a, false, &[])
            .map(|(y, _)| y)
            .ok_or_else(|| "no solution in Q(x)".to_string());
    }
    match tower.kind_at(k) {
        Some(Kind::Log) if !b.depends_on(k) => solve_log_level(b, a, tower, k),
        Some(Kind::Log) => Err("b depends on the logarithm".into()),
        _ => Err("equation over an exponential ground field".into()),
    }
}

/// Solves `y' + b y = a` in the field generated by the levels up to and
/// including `level`.
pub fn rde_solve(b: &Elem, a: &Elem, tower: &Tower, level: usize) -> RdeOutcome {
    match solve_below(b, a, tower, level) {
        Ok(y) => RdeOutcome::Solution(y),
        Err(why) => RdeOutcome::NoSolution(why),
    }
}

/// Finds `y, r` with `y' + b y + r = a`, the residual `r` being as small as
/// the template allows. Falls back to `y = 0, r = a` outside `Q(x)` when no
/// exact solution exists.
pub fn rde_reduce(b: &Elem, a: &Elem, tower: &Tower, level: usize, extra: &[Elem]) -> (Elem, Elem) {
    if b.level() <= 1 && a.level() <= 1 && extra.iter().all(|e| e.level() <= 1) {
        if let Some(out) = solve_level1(b, a, true, extra) {
            return out;
        }
        return (Elem::zero(), a.clone());
    }
    match rde_solve(b, a, tower, level) {
        RdeOutcome::Solution(y) => (y, Elem::zero()),
        RdeOutcome::NoSolution(_) => {
            reduce_log_level(b, a, tower, level, extra).unwrap_or_else(|| (Elem::zero(), a.clone()))
        }
    }
}

/// Reduction over `Q(x)(λ)`: the coefficients of positive powers of `λ`
/// are solved exactly and the residual is taken from the constant one.
fn reduce_log_level(b: &Elem, a: &Elem, tower: &Tower, level: usize, extra: &[Elem]) -> Option<(Elem, Elem)> {
    let k = b.level().max(a.level()).min(level);
    if k < 2 || b.level() > level || a.level() > level || b.depends_on(k) || tower.kind_at(k) != Some(Kind::Log) {
        return None;
    }
    let ap = a.as_poly_in(k)?;
    let dl = tower.var_derivative(k);
    let lam = Elem::var(k);
    let mut y = Elem::zero();
    let mut above = Elem::zero();
    for i in (0..=ap.deg()).rev() {
        let rhs = &ap.coeff(i as usize) - &(&(&Elem::int(i as i64 + 1) * &above) * &dl);
        if i == 0 {
            let (y0, r) = rde_reduce(b, &rhs, tower, k - 1, extra);
            return Some((&y + &y0, r));
        }
        let yi = solve_below(b, &rhs, tower, k - 1).ok()?;
        y = &y + &(&yi * &lam.pow(i as i64));
        above = yi;
    }
    Some((y, Elem::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::Monomial;

    fn x() -> Elem {
        Elem::var(1)
    }

    fn t() -> Tower {
        Tower::new("x", &[])
    }

    #[test]
    fn polynomial_solution() {
        assert_eq!(rde_solve(&Elem::one(), &x(), &t(), 1), RdeOutcome::Solution(&x() - &Elem::one()));
    }

    #[test]
    fn no_solution_for_reciprocal() {
        assert!(matches!(rde_solve(&Elem::one(), &x().inv(), &t(), 1), RdeOutcome::NoSolution(_)));
    }

    #[test]
    fn pole_solution() {
        // y = 1/x, b = 2x: y' + b y = -1/x^2 + 2
        let a = &Elem::int(2) - &x().pow(-2);
        let b = &Elem::int(2) * &x();
        assert_eq!(rde_solve(&b, &a, &t(), 1), RdeOutcome::Solution(x().inv()));
    }

    #[test]
    fn residue_pole_solution() {
        // b = 2/x admits y = x^-2 · c in the homogeneous sense; y = 1/x: y' + 2/x·1/x = 1/x^2
        let b = &Elem::int(2) / &x();
        assert_eq!(rde_solve(&b, &x().pow(-2), &t(), 1), RdeOutcome::Solution(x().inv()));
    }

    #[test]
    fn reduction_leaves_simple_poles() {
        // ∫ e^x / x^2 = -e^x/x + ∫ e^x/x
        let (y, r) = rde_reduce(&Elem::one(), &x().pow(-2), &t(), 1, &[]);
        assert_eq!(y, -&x().inv());
        assert_eq!(r, x().inv());
    }

    #[test]
    fn reduction_leaves_constant_for_gaussian() {
        // e^{-x^2} (1 + x^2): b = -2x
        let b = &Elem::int(-2) * &x();
        let a = &Elem::one() + &x().pow(2);
        let (y, r) = rde_reduce(&b, &a, &t(), 1, &[]);
        assert_eq!(&(&t().derive(&y) + &(&b * &y)) + &r, a);
        assert_eq!(r.as_const().cloned(), Some(Const::rat(crate::kernel::rat(3, 2))));
    }

    #[test]
    fn log_level_descends() {
        let tw = t().with_generator(Monomial { kind: Kind::Log, arg: x() });
        let l = Elem::var(2);
        // y = x λ, b = 1: y' + y = λ + 1 + x λ
        let y = &x() * &l;
        let a = &(&l + &Elem::one()) + &(&x() * &l);
        assert_eq!(rde_solve(&Elem::one(), &a, &tw, 2), RdeOutcome::Solution(y));
    }
}

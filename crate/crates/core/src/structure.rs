//! Algebraic dependence of a new `exp` or `log` over an existing tower.
//!
//! A new `exp(g)` is algebraic over the tower exactly when `g'` is a rational
//! combination of the logarithmic derivatives already present (the `η'` of
//! each exponential and the `u'/u` of each logarithm). Likewise `log(f)` is
//! algebraic exactly when `f'/f` is such a combination. The rational
//! coefficients are the witness.

use crate::kernel::{BigRat, Field};
use crate::tower::qlinear::solve_combination;
use crate::tower::{Const, ConstError, Elem, Kind, Tower};

/// One basis item per generator: the logarithmic quantity `L` (the `η` of an
/// exponential, or the variable of a logarithm) and the exponential quantity
/// `E` (the variable of an exponential, or the argument of a logarithm), so
/// that `E'/E = L'` in both cases.
#[derive(Clone, Debug)]
pub struct BasisItem {
    pub level: usize,
    pub kind: Kind,
    pub log_part: Elem,
    pub exp_part: Elem,
    pub log_part_derivative: Elem,
}

#[derive(Clone, Debug)]
pub struct WBasis {
    pub items: Vec<BasisItem>,
    /// Extra factors the caller supplied. They only name coordinates of the
    /// search space; they never become basis items, because a factor that is
    /// not a generator argument has no logarithm inside the tower.
    pub hint_factors: Vec<Elem>,
}

pub fn w_basis(tower: &Tower, hints: &[Elem]) -> WBasis {
    let items = (2..=tower.top_level())
        .map(|level| {
            let g = tower.generator(level);
            let (log_part, exp_part) = match g.kind {
                Kind::Exp => (g.arg.clone(), Elem::var(level)),
                Kind::Log => (Elem::var(level), g.arg.clone()),
            };
            let log_part_derivative = tower.derive(&log_part);
            BasisItem {
                level,
                kind: g.kind,
                log_part,
                exp_part,
                log_part_derivative,
            }
        })
        .collect();
    WBasis {
        items,
        hint_factors: hints.to_vec(),
    }
}

/// Rational relation with the basis. For an exponential query the constant
/// is the multiplier `C` with `exp(g) = C·Π E_i^{r_i}`; for a logarithm it is
/// the additive `κ` with `log(f) = κ + Σ r_i L_i`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub coeffs: Vec<(usize, BigRat)>,
    pub constant: Result<Const, ConstError>,
}

impl Witness {
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|(_, r)| r.is_integer())
    }
}

#[derive(Clone, Debug)]
pub enum Dependence {
    Transcendental,
    Dependent(Witness),
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum StructureError {
    #[error("log of zero")]
    LogOfZero,
    #[error("argument is constant")]
    ConstantArgument,
}

fn coefficients(target: &Elem, basis: &WBasis) -> Option<Vec<(usize, BigRat)>> {
    let ds: Vec<Elem> = basis.items.iter().map(|b| b.log_part_derivative.clone()).collect();
    let r = solve_combination(target, &ds)?;
    Some(
        basis
            .items
            .iter()
            .zip(r)
            .filter(|(_, r)| !r.is_zero())
            .map(|(b, r)| (b.level, r))
            .collect(),
    )
}

fn item(basis: &WBasis, level: usize) -> &BasisItem {
    basis.items.iter().find(|b| b.level == level).unwrap()
}

/// Whether `exp(g)` is algebraic over the tower.
pub fn exp_dependence(g: &Elem, tower: &Tower) -> Result<Dependence, StructureError> {
    let dg = tower.derive(g);
    if dg.is_zero() {
        return Err(StructureError::ConstantArgument);
    }
    let basis = w_basis(tower, &[]);
    let Some(coeffs) = coefficients(&dg, &basis) else {
        return Ok(Dependence::Transcendental);
    };
    let combo = coeffs.iter().fold(Elem::zero(), |acc, (l, r)| {
        &acc + &(&item(&basis, *l).log_part * &Elem::rat(r.clone()))
    });
    let kappa = g - &combo;
    let constant = match kappa.as_const() {
        Some(k) => Const::exp_of(k),
        None => Err(ConstError::BadExp(format!("{:?}", kappa))),
    };
    Ok(Dependence::Dependent(Witness { coeffs, constant }))
}

/// Whether `log(f)` is algebraic over the tower.
pub fn log_dependence(f: &Elem, tower: &Tower) -> Result<Dependence, StructureError> {
    if f.is_zero() {
        return Err(StructureError::LogOfZero);
    }
    let df = tower.derive(f);
    if df.is_zero() {
        return Err(StructureError::ConstantArgument);
    }
    let basis = w_basis(tower, &[]);
    let Some(coeffs) = coefficients(&(&df / f), &basis) else {
        return Ok(Dependence::Transcendental);
    };
    // f^n / Π E_i^{n r_i} is a constant c0 and κ = log(c0)/n
    let n: i64 = coeffs.iter().fold(1i64, |acc, (_, r)| {
        let d: i64 = r.denom().try_into().unwrap_or(1);
        num_integer::lcm(acc, d)
    });
    let mut c0 = f.pow(n);
    for (l, r) in &coeffs {
        let e: i64 = (r * BigRat::from_integer(n.into())).to_integer().try_into().unwrap();
        c0 = &c0 / &item(&basis, *l).exp_part.pow(e);
    }
    let constant = match c0.as_const() {
        Some(c) => Const::log_of(c).map(|k| k.mul(&Const::rat(BigRat::new(1.into(), n.into())))),
        None => Err(ConstError::BadLog(format!("{:?}", c0))),
    };
    Ok(Dependence::Dependent(Witness { coeffs, constant }))
}

/// Human-readable product `Π E_i^{r_i}` (exponential query) or sum
/// `Σ r_i L_i` (logarithm query), with the witness constant.
pub fn describe_witness(w: &Witness, tower: &Tower, exponential: bool) -> String {
    let mut parts = Vec::new();
    for (l, r) in &w.coeffs {
        let name = tower.level_name(*l);
        let base = match (exponential, tower.kind_at(*l)) {
            (true, Some(Kind::Log)) => format!("({})", crate::io::print::fmt_compact(&tower.generator(*l).arg, tower)),
            (false, Some(Kind::Exp)) => format!("({})", crate::io::print::fmt_compact(&tower.generator(*l).arg, tower)),
            _ => name,
        };
        let rs = crate::kernel::fmt_rat(r);
        parts.push(if exponential {
            if r.is_one() {
                base
            } else if r.is_integer() {
                format!("{}^{}", base, rs)
            } else {
                format!("{}^({})", base, rs)
            }
        } else if r.is_one() {
            base
        } else {
            format!("({})*{}", rs, base)
        });
    }
    match &w.constant {
        Ok(c) if exponential && !c.is_one() => parts.insert(0, format!("{}", c)),
        Ok(c) if !exponential && !c.is_zero() => parts.push(format!("{}", c)),
        _ => {}
    }
    if parts.is_empty() {
        return if exponential { "1".into() } else { "0".into() };
    }
    parts.join(if exponential { "*" } else { " + " })
}

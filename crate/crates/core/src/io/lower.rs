//! Lowering parsed expressions into a tower.
//!
//! Every `exp` and `log` node is checked against the generators built so
//! far. A dependent node is rewritten through its witness; only a
//! transcendental one becomes a new generator. When an exponential turns
//! out to be a fractional power of an existing one (`exp(x/2)` after
//! `exp(x)`), lowering restarts with that generator replaced by the root.
//! A fractional power of a logarithm's argument needs an algebraic
//! extension and is rejected. At the end, logarithms that do not involve
//! any exponential are moved below the exponentials.

use num_traits::Signed;

use crate::kernel::factor::factor_over_q;
use crate::kernel::{BigRat, Field, Poly};
use crate::structure::{describe_witness, exp_dependence, log_dependence, Dependence};
use crate::tower::{substitute, Const, Elem, Kind, Monomial, Tower};

use super::parse::Expr;
use super::print::fmt_elem;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LowerError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("log of zero")]
    LogOfZero,
}

enum Fail {
    Restart(Vec<Monomial>),
    Err(LowerError),
}

impl From<LowerError> for Fail {
    fn from(e: LowerError) -> Self {
        Fail::Err(e)
    }
}

fn unsupported(msg: impl Into<String>) -> Fail {
    Fail::Err(LowerError::Unsupported(msg.into()))
}

struct Lowerer {
    tower: Tower,
}

/// A constant term that can be pulled out of an exponent as `exp(κ)`.
fn constant_term(e: &Elem) -> Option<Const> {
    match e {
        Elem::C(c) => Some(c.clone()),
        Elem::F(f) if f.den.is_one() => constant_term(&f.num.coeff(0)),
        _ => None,
    }
}

impl Lowerer {
    fn show(&self, e: &Elem) -> String {
        fmt_elem(e, &self.tower)
    }

    fn expr(&mut self, e: &Expr) -> Result<Elem, Fail> {
        Ok(match e {
            Expr::Num(n) => Elem::rat(BigRat::from_integer(n.clone())),
            Expr::Var(_) => Elem::var(1),
            Expr::Sym(s) => Elem::C(Const::symbol(s)),
            Expr::Imag => Elem::C(Const::root(&BigRat::from_integer((-1).into()), 2).unwrap()),
            Expr::Add(a, b) => &self.expr(a)? + &self.expr(b)?,
            Expr::Sub(a, b) => &self.expr(a)? - &self.expr(b)?,
            Expr::Mul(a, b) => &self.expr(a)? * &self.expr(b)?,
            Expr::Neg(a) => -&self.expr(a)?,
            Expr::Div(a, b) => {
                let num = self.expr(a)?;
                let den = self.expr(b)?;
                if den.is_zero() {
                    return Err(LowerError::DivisionByZero.into());
                }
                &num / &den
            }
            Expr::Pow(a, q) => {
                let base = self.expr(a)?;
                if q.is_integer() {
                    let n: i64 = q
                        .to_integer()
                        .try_into()
                        .map_err(|_| unsupported("exponent too large"))?;
                    if base.is_zero() && n < 0 {
                        return Err(LowerError::DivisionByZero.into());
                    }
                    base.pow(n)
                } else {
                    let r = base
                        .is_rational_const()
                        .ok_or_else(|| unsupported("fractional power of a non-rational base"))?;
                    Elem::C(Const::rat_pow(&r, q).map_err(|e| unsupported(e.to_string()))?)
                }
            }
            Expr::Exp(a) => {
                let g = self.expr(a)?;
                self.exp(&g)?
            }
            Expr::Log(a) => {
                let f = self.expr(a)?;
                self.log(&f)?
            }
        })
    }

    fn add_generator(&mut self, kind: Kind, arg: Elem) -> Elem {
        self.tower = self.tower.with_generator(Monomial { kind, arg });
        Elem::var(self.tower.top_level())
    }

    fn exp(&mut self, g: &Elem) -> Result<Elem, Fail> {
        if let Some(c) = g.as_const() {
            return Const::exp_of(c)
                .map(Elem::C)
                .map_err(|_| unsupported(format!("exp({}) is not a supported constant", c)));
        }
        let dep = exp_dependence(g, &self.tower).map_err(|e| unsupported(e.to_string()))?;
        let w = match dep {
            Dependence::Transcendental => {
                let k = constant_term(g)
                    .filter(|k| !k.is_zero())
                    .and_then(|k| Const::exp_of(&k).ok().map(|e| (k, e)));
                return Ok(match k {
                    Some((k, ek)) => {
                        let v = self.add_generator(Kind::Exp, g - &Elem::C(k));
                        &Elem::C(ek) * &v
                    }
                    None => self.add_generator(Kind::Exp, g.clone()),
                });
            }
            Dependence::Dependent(w) => w,
        };
        for (l, r) in &w.coeffs {
            if !r.is_integer() && self.tower.kind_at(*l) == Some(Kind::Log) {
                return Err(unsupported(format!(
                    "exp({}) = {} is an algebraic function over the tower \
                     (a fractional power of {}); integrands that need an algebraic extension are not supported",
                    self.show(g),
                    describe_witness(&w, &self.tower, true),
                    self.show(&self.tower.generator(*l).arg),
                )));
            }
        }
        if let Some((l, r)) = w.coeffs.iter().find(|(_, r)| !r.is_integer()) {
            // θ_l is the d-th power of a new generator exp(η_l/d)
            let d = BigRat::from_integer(r.denom().clone());
            let mut seeds: Vec<Monomial> = self.tower.generators()[..l - 2].to_vec();
            let old = self.tower.generator(*l);
            seeds.push(Monomial {
                kind: Kind::Exp,
                arg: &old.arg / &Elem::rat(d),
            });
            return Err(Fail::Restart(seeds));
        }
        let c = w.constant.clone().map_err(|e| {
            unsupported(format!("exp({}) needs the constant factor {}", self.show(g), e))
        })?;
        let mut v = Elem::C(c);
        for (l, r) in &w.coeffs {
            let n: i64 = r.to_integer().try_into().map_err(|_| unsupported("witness too large"))?;
            let base = match self.tower.kind_at(*l).unwrap() {
                Kind::Exp => Elem::var(*l),
                Kind::Log => self.tower.generator(*l).arg.clone(),
            };
            v = &v * &base.pow(n);
        }
        Ok(v)
    }

    fn log_const(&self, c: &Const) -> Result<Elem, Fail> {
        Const::log_of(c)
            .map(Elem::C)
            .map_err(|_| unsupported(format!("log({}) is not a supported constant", c)))
    }

    /// `log` of a nonconstant element whose factors we do not split further.
    fn log_atom(&mut self, p: &Elem) -> Result<Elem, Fail> {
        match log_dependence(p, &self.tower).map_err(|e| unsupported(e.to_string()))? {
            Dependence::Transcendental => Ok(self.add_generator(Kind::Log, p.clone())),
            Dependence::Dependent(w) => {
                let k = w.constant.clone().map_err(|e| {
                    unsupported(format!("log({}) needs the constant {}", self.show(p), e))
                })?;
                let mut v = Elem::C(k);
                for (l, r) in &w.coeffs {
                    let lp = match self.tower.kind_at(*l).unwrap() {
                        Kind::Exp => self.tower.generator(*l).arg.clone(),
                        Kind::Log => Elem::var(*l),
                    };
                    v = &v + &(&lp * &Elem::rat(r.clone()));
                }
                Ok(v)
            }
        }
    }

    fn log(&mut self, f: &Elem) -> Result<Elem, Fail> {
        if f.is_zero() {
            return Err(LowerError::LogOfZero.into());
        }
        if let Some(c) = f.as_const() {
            return self.log_const(c);
        }
        let level = f.level();
        let (n, d) = f.parts_in(level);
        if level == 1 {
            let nq: Option<Vec<BigRat>> = n.coeffs().iter().map(|c| c.as_rat()).collect();
            let dq: Option<Vec<BigRat>> = d.coeffs().iter().map(|c| c.as_rat()).collect();
            if let (Some(nq), Some(dq)) = (nq, dq) {
                return self.log_rational(&Poly::new(nq), &Poly::new(dq));
            }
        }
        let mut v = Elem::zero();
        let (mut n, mut d) = (n, d);
        if self.tower.kind_at(level) == Some(Kind::Exp) {
            let vn = n.valuation().unwrap_or(0);
            let vd = d.valuation().unwrap_or(0);
            n = Poly::new(n.coeffs()[vn..].to_vec());
            d = Poly::new(d.coeffs()[vd..].to_vec());
            let eta = self.tower.generator(level).arg.clone();
            v = &eta * &Elem::int(vn as i64 - vd as i64);
        }
        let ratio = &n.lc() / &d.lc();
        v = &v + &self.log(&ratio)?;
        for (p, sign) in [(n, 1), (d, -1)] {
            if !p.is_constant() {
                let atom = self.log_atom(&Elem::from_poly(level, p.monic()))?;
                v = &v + &(&atom * &Elem::int(sign));
            }
        }
        Ok(v)
    }

    /// `log(n/d)` over `Q(x)`: split into the logarithms of the irreducible
    /// factors, keeping the constant positive.
    fn log_rational(&mut self, n: &Poly<BigRat>, d: &Poly<BigRat>) -> Result<Elem, Fail> {
        let (ln, fn_) = factor_over_q(n);
        let (ld, fd) = factor_over_q(d);
        let mut c = &ln / &ld;
        let mut factors: Vec<(Poly<BigRat>, i64)> = fn_.into_iter().map(|(p, e)| (p, e as i64)).collect();
        factors.extend(fd.into_iter().map(|(p, e)| (p, -(e as i64))));
        if c.is_negative() {
            let Some(i) = factors.iter().position(|(_, e)| e % 2 != 0) else {
                return Err(unsupported("log of a negative function"));
            };
            factors[i].0 = factors[i].0.neg();
            c = -c;
        }
        let mut v = self.log_const(&Const::rat(c))?;
        for (p, e) in factors {
            let pe = Elem::from_poly(1, p.map(|q| Elem::rat(q.clone())));
            let atom = self.log_atom(&pe)?;
            v = &v + &(&atom * &Elem::int(e));
        }
        Ok(v)
    }
}

/// Moves logarithms that do not involve exponentials below all
/// exponentials, rebasing the element.
fn reorder(tower: Tower, e: Elem) -> (Tower, Elem) {
    let top = tower.top_level();
    let exps = tower.exp_levels();
    let movable = |l: usize| {
        tower.kind_at(l) == Some(Kind::Log) && !exps.iter().any(|&x| tower.generator(l).arg.depends_on(x))
    };
    let mut order: Vec<usize> = (2..=top).filter(|&l| movable(l)).collect();
    order.extend((2..=top).filter(|&l| !movable(l)));
    if order.iter().copied().eq(2..=top) {
        return (tower, e);
    }
    let mut values = vec![Elem::zero(); top];
    values[0] = Elem::var(1);
    let mut out = Tower::new(tower.var_name(), tower.symbols());
    for (k, &l) in order.iter().enumerate() {
        let g = tower.generator(l);
        out = out.with_generator(Monomial {
            kind: g.kind,
            arg: substitute(&g.arg, &values),
        });
        values[l - 1] = Elem::var(k + 2);
    }
    let e = substitute(&e, &values);
    (out, e)
}

/// Lowers `e` on top of the generators of `base`.
pub fn lower_over(e: &Expr, base: &Tower) -> Result<(Tower, Elem), LowerError> {
    let mut seeds = base.generators().to_vec();
    for _ in 0..32 {
        let mut tower = Tower::new(base.var_name(), base.symbols());
        for s in &seeds {
            tower = tower.with_generator(s.clone());
        }
        let mut lw = Lowerer { tower };
        match lw.expr(e) {
            Ok(v) => return Ok(reorder(lw.tower, v)),
            Err(Fail::Restart(s)) => seeds = s,
            Err(Fail::Err(err)) => return Err(err),
        }
    }
    Err(LowerError::Unsupported("tower refinement did not settle".into()))
}

/// Lowers `e` into a fresh tower over `Q(consts)(var)`.
pub fn lower(e: &Expr, var: &str, consts: &[String]) -> Result<(Tower, Elem), LowerError> {
    lower_over(e, &Tower::new(var, consts))
}

//! The differential field `Q(consts)(x)(θ1)…(θn)`: each generator is an
//! exponential (`θ' = η'θ`) or a logarithm (`θ' = u'/u`) of an element of
//! the levels below it.

pub mod constant;
pub mod elem;
pub mod qlinear;

use crate::kernel::poly::gcd;
use crate::kernel::{Field, Poly};

pub use constant::{Const, ConstError};
pub use elem::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Exp,
    Log,
}

/// A generator `exp(arg)` or `log(arg)` with `arg` at a lower level.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub kind: Kind,
    pub arg: Elem,
}

/// How the derivative of a level variable looks: `factor * t^shift`.
#[derive(Clone, Debug)]
struct VarDerivative {
    factor: Elem,
    shift: usize,
}

#[derive(Clone, Debug)]
pub struct Tower {
    var: String,
    symbols: Vec<String>,
    gens: Vec<Monomial>,
    derivs: Vec<VarDerivative>,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.symbols == other.symbols && self.gens == other.gens
    }
}

impl Tower {
    /// `Q(symbols)(var)` with no generators.
    pub fn new(var: &str, symbols: &[String]) -> Self {
        Tower {
            var: var.to_string(),
            symbols: symbols.to_vec(),
            gens: Vec::new(),
            derivs: vec![VarDerivative {
                factor: Elem::one(),
                shift: 0,
            }],
        }
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    /// Level of the top variable (1 when there are no generators).
    pub fn top_level(&self) -> usize {
        self.gens.len() + 1
    }

    /// Generator at a level `>= 2`.
    pub fn generator(&self, level: usize) -> &Monomial {
        &self.gens[level - 2]
    }

    pub fn kind_at(&self, level: usize) -> Option<Kind> {
        (level >= 2 && level < self.gens.len() + 2).then(|| self.gens[level - 2].kind)
    }

    pub fn x(&self) -> Elem {
        Elem::var(1)
    }

    /// Adjoins a generator on top. The caller is responsible for having
    /// certified transcendence.
    pub fn with_generator(&self, m: Monomial) -> Tower {
        assert!(m.arg.level() <= self.top_level(), "generator argument above tower");
        if m.kind == Kind::Log {
            assert!(!m.arg.is_zero(), "log of zero");
        }
        let mut t = self.clone();
        let d = match m.kind {
            Kind::Exp => VarDerivative {
                factor: self.derive(&m.arg),
                shift: 1,
            },
            Kind::Log => VarDerivative {
                factor: &self.derive(&m.arg) / &m.arg,
                shift: 0,
            },
        };
        t.gens.push(m);
        t.derivs.push(d);
        t
    }

    pub fn with_symbol(&self, name: &str) -> Tower {
        let mut t = self.clone();
        if !t.symbols.iter().any(|s| s == name) {
            t.symbols.push(name.to_string());
        }
        t
    }

    /// Derivative of the level variable itself.
    pub fn var_derivative(&self, level: usize) -> Elem {
        let d = &self.derivs[level - 1];
        if d.shift == 0 {
            d.factor.clone()
        } else {
            &d.factor * &Elem::var(level)
        }
    }

    /// Derivation applied to a polynomial in the variable of `level`.
    pub fn derive_poly(&self, level: usize, p: &Poly<Elem>) -> Poly<Elem> {
        let d = &self.derivs[level - 1];
        let coeff_part = Poly::new(p.coeffs().iter().map(|c| self.derive(c)).collect());
        let var_part = p.formal_derivative().shift(d.shift).scale(&d.factor);
        coeff_part.add(&var_part)
    }

    /// The derivation of the tower.
    pub fn derive(&self, e: &Elem) -> Elem {
        match e {
            Elem::C(_) => Elem::zero(),
            Elem::F(f) => {
                let l = f.level;
                let dn = self.derive_poly(l, &f.num);
                if f.den.is_one() {
                    return Elem::from_reduced(l, dn, Poly::one());
                }
                let dd = self.derive_poly(l, &f.den);
                let mut n = dn.mul(&f.den).sub(&f.num.mul(&dd));
                let mut d = f.den.mul(&f.den);
                if n.is_zero() {
                    return Elem::zero();
                }
                // gcd(n, den) = gcd(den', den), so every factor that cancels
                // divides h; peel them off without a gcd against den^2
                let h = gcd(&f.den, &dd);
                let mut g = if h.is_one() { h } else { gcd(&n, &h) };
                while !g.is_one() {
                    n = n.exact_div(&g);
                    d = d.exact_div(&g);
                    g = gcd(&n, &g);
                }
                Elem::from_reduced(l, n, d)
            }
        }
    }

    pub fn is_constant(&self, e: &Elem) -> bool {
        self.derive(e).is_zero()
    }

    /// `derive(e) / e`.
    pub fn log_derivative(&self, e: &Elem) -> Elem {
        &self.derive(e) / e
    }

    /// Levels of exponential generators.
    pub fn exp_levels(&self) -> Vec<usize> {
        (2..self.top_level() + 1)
            .filter(|&l| self.kind_at(l) == Some(Kind::Exp))
            .collect()
    }

    pub fn log_levels(&self) -> Vec<usize> {
        (2..self.top_level() + 1)
            .filter(|&l| self.kind_at(l) == Some(Kind::Log))
            .collect()
    }

    /// Display name of a level variable.
    pub fn level_name(&self, level: usize) -> String {
        if level == 1 {
            return self.var.clone();
        }
        let kind = self.generator(level).kind;
        let same: Vec<usize> = (2..self.top_level() + 1)
            .filter(|&l| self.kind_at(l) == Some(kind))
            .collect();
        let base = match kind {
            Kind::Exp => "θ",
            Kind::Log => "λ",
        };
        if same.len() == 1 {
            base.to_string()
        } else {
            let idx = same.iter().position(|&l| l == level).unwrap() + 1;
            format!("{}{}", base, idx)
        }
    }
}

/// Substitutes `values[level - 1]` for every level variable up to
/// `values.len()`, evaluating in ordinary element arithmetic.
pub fn substitute(e: &Elem, values: &[Elem]) -> Elem {
    match e {
        Elem::C(_) => e.clone(),
        Elem::F(f) => {
            let v = &values[f.level - 1];
            let ev = |p: &Poly<Elem>| -> Elem {
                p.coeffs()
                    .iter()
                    .rev()
                    .fold(Elem::zero(), |acc, c| &(&acc * v) + &substitute(c, values))
            };
            &ev(&f.num) / &ev(&f.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Elem {
        Elem::var(1)
    }

    fn exp_tower(arg: Elem) -> Tower {
        Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Exp, arg })
    }

    #[test]
    fn derivative_examples() {
        let t = exp_tower(&x() * &x());
        let th = Elem::var(2);
        assert_eq!(t.derive(&th), &(&Elem::int(2) * &x()) * &th);

        let t = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Log, arg: x() });
        assert_eq!(t.derive(&Elem::var(2)), x().inv());

        let t = exp_tower(x());
        let e = &th / &x();
        let expect = &(&(&x() - &Elem::int(1)) * &th) / &(&x() * &x());
        assert_eq!(t.derive(&e), expect);
    }

    #[test]
    fn constants() {
        let t = exp_tower(x());
        assert!(t.is_constant(&Elem::rat(crate::kernel::rat(3, 2))));
        let th = Elem::var(2);
        assert!(t.is_constant(&(&th.pow(3) * &th.pow(-3))));
        let tl = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Log, arg: x() });
        let l2 = Elem::C(Const::log_rat(&crate::kernel::int(2)).unwrap());
        assert!(!tl.is_constant(&(&Elem::var(2) - &l2)));
    }
}

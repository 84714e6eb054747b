//! Certificates for answers: exact differentiation back to the integrand,
//! plus a numeric derivative probe at sample points.

pub mod numeric;
pub mod special;

use crate::gamma::{Answer, SpecialKind, SpecialTerm};
use crate::io::print::fmt_elem;
use crate::kernel::Field;
use crate::tower::{Const, Elem, Tower};

pub use numeric::{numeric_probe, ProbeResult};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("malformed special term {0}: {1}")]
    MalformedTerm(String, &'static str),
}

fn check_special(t: &SpecialTerm, tower: &Tower) -> Result<Elem, VerifyError> {
    let bad = |why| VerifyError::MalformedTerm(t.render(tower), why);
    let da = tower.derive(&t.arg);
    let du = tower.derive(&t.exp_factor);
    let c = Elem::C(t.coeff.clone());
    match &t.kind {
        SpecialKind::Ei => {
            if du != &da * &t.exp_factor {
                return Err(bad("exponential factor does not match the argument"));
            }
            Ok(&(&c * &da) * &(&t.exp_factor / &t.arg))
        }
        SpecialKind::GammaRational { k, m, radical } => {
            if du != -&(&da * &t.exp_factor) {
                return Err(bad("exponential factor is not e^(-arg)"));
            }
            if radical.pow(*k as i64) != t.arg.pow(*m) {
                return Err(bad("radical is not a power of the argument"));
            }
            Ok(-&(&(&c * &da) * &(radical * &t.exp_factor)))
        }
        SpecialKind::GammaIrrational { alpha } => {
            let am1 = Elem::C(alpha.sub(&Const::one()));
            let expect = &(&am1 * &(&da / &t.arg)) - &da;
            if &du / &t.exp_factor != expect {
                return Err(bad("factor is not arg^(alpha-1) e^(-arg)"));
            }
            Ok(-&(&(&c * &da) * &t.exp_factor))
        }
    }
}

/// Derivative of the answer, after checking the relations each special
/// term relies on.
pub fn differentiate_answer(ans: &Answer, tower: &Tower) -> Result<Elem, VerifyError> {
    let mut d = tower.derive(&ans.elementary);
    for l in &ans.logs {
        d = &d + &(&Elem::C(l.coeff.clone()) * &tower.log_derivative(&l.arg));
    }
    for s in &ans.specials {
        d = &d + &check_special(s, tower)?;
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymbolicCheck {
    Passed,
    Failed(String),
}

#[derive(Debug, Clone)]
pub struct Report {
    pub symbolic: SymbolicCheck,
    pub numeric: ProbeResult,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.symbolic == SymbolicCheck::Passed && self.numeric.passed()
    }

    pub fn summary(&self) -> String {
        let s = match &self.symbolic {
            SymbolicCheck::Passed => "symbolic: ok".to_string(),
            SymbolicCheck::Failed(why) => format!("symbolic: FAILED ({})", why),
        };
        format!("{}; {}", s, self.numeric.summary())
    }
}

/// Exact check that the answer differentiates to `f` minus the unintegrated
/// residual.
pub fn symbolic_check(f: &Elem, ans: &Answer, tower: &Tower) -> SymbolicCheck {
    match differentiate_answer(ans, tower) {
        Ok(d) => {
            let diff = &(&d + &ans.residual) - f;
            if diff.is_zero() {
                SymbolicCheck::Passed
            } else {
                SymbolicCheck::Failed(format!("derivative differs by {}", fmt_elem(&diff, tower)))
            }
        }
        Err(e) => SymbolicCheck::Failed(e.to_string()),
    }
}

/// Both checks, with the numeric probe seeded by `seed`.
pub fn verify(f: &Elem, ans: &Answer, tower: &Tower, seed: u64) -> Report {
    Report {
        symbolic: symbolic_check(f, ans, tower),
        numeric: numeric_probe(f, ans, tower, seed),
    }
}

//! Answers: an elementary part, constant multiples of logarithms, and
//! special terms (`Ei` and upper incomplete `Γ`).

use crate::io::print::{elem_terms, fmt_compact, fmt_scaled, join_terms};
use crate::kernel::{fmt_rat, BigRat, Field};
use crate::tower::{Const, Elem, Tower};

#[derive(Clone, Debug, PartialEq)]
pub struct LogTerm {
    pub coeff: Const,
    pub arg: Elem,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpecialKind {
    /// `Ei(arg)`.
    Ei,
    /// `Γ(1 + m/k, arg)`; the radical is an element `w` of the tower with
    /// `w^k = arg^m`, standing for `arg^(m/k)`.
    GammaRational { k: u32, m: i64, radical: Elem },
    /// `Γ(alpha, arg)` with `alpha` outside Q.
    GammaIrrational { alpha: Const },
}

/// `coeff · F(arg)` where `exp_factor` is the tower element standing for
/// the exponential inside the special function's derivative: `e^arg` for
/// `Ei`, `e^-arg` for rational `Γ`, and `arg^(α-1) e^-arg` for irrational
/// `Γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialTerm {
    pub kind: SpecialKind,
    pub coeff: Const,
    pub arg: Elem,
    pub exp_factor: Elem,
}

impl SpecialTerm {
    /// The rational `α` of a rational `Γ` term.
    pub fn rational_alpha(&self) -> Option<BigRat> {
        match &self.kind {
            SpecialKind::GammaRational { k, m, .. } => {
                Some(BigRat::new((*k as i64 + *m).into(), (*k as i64).into()))
            }
            _ => None,
        }
    }

    /// Whether a rational `Γ` exponent lies in the canonical range `(0, 1)`.
    pub fn in_canonical_range(&self) -> bool {
        match &self.kind {
            SpecialKind::GammaRational { k, m, .. } => -(*k as i64) < *m && *m < 0,
            _ => true,
        }
    }

    pub fn alpha_string(&self) -> Option<String> {
        match &self.kind {
            SpecialKind::Ei => None,
            SpecialKind::GammaRational { .. } => Some(fmt_rat(&self.rational_alpha().unwrap())),
            SpecialKind::GammaIrrational { alpha } => Some(alpha.to_string()),
        }
    }

    pub fn render(&self, tower: &Tower) -> String {
        let arg = fmt_compact(&self.arg, tower);
        let body = match self.alpha_string() {
            None => format!("Ei({})", arg),
            Some(a) => format!("Gamma({}, {})", a, arg),
        };
        fmt_scaled(&self.coeff, &body)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Integrated,
    NoGammaFormFound,
    Unsupported,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Integrated => "integrated",
            Status::NoGammaFormFound => "no_gamma_form_found",
            Status::Unsupported => "unsupported",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Answer {
    pub elementary: Elem,
    pub logs: Vec<LogTerm>,
    pub specials: Vec<SpecialTerm>,
    pub status: Status,
    pub diagnostics: Vec<String>,
    /// Part of the integrand that was not integrated.
    pub residual: Elem,
}

impl Default for Answer {
    fn default() -> Self {
        Answer {
            elementary: Elem::zero(),
            logs: Vec::new(),
            specials: Vec::new(),
            status: Status::Integrated,
            diagnostics: Vec::new(),
            residual: Elem::zero(),
        }
    }
}

impl Answer {
    pub fn elementary(e: Elem) -> Self {
        Answer {
            elementary: e,
            ..Default::default()
        }
    }

    pub fn failed(status: Status, residual: Elem, why: impl Into<String>) -> Self {
        Answer {
            status,
            residual,
            diagnostics: vec![why.into()],
            ..Default::default()
        }
    }

    pub fn add_log(&mut self, coeff: Const, arg: Elem) {
        if coeff.is_zero() {
            return;
        }
        if let Some(t) = self.logs.iter_mut().find(|t| t.arg == arg) {
            t.coeff = t.coeff.add(&coeff);
        } else {
            self.logs.push(LogTerm { coeff, arg });
        }
        self.logs.retain(|t| !t.coeff.is_zero());
    }

    pub fn merge(&mut self, other: Answer) {
        self.elementary = &self.elementary + &other.elementary;
        for t in other.logs {
            self.add_log(t.coeff, t.arg);
        }
        self.specials.extend(other.specials);
        self.status = self.status.max(other.status);
        self.diagnostics.extend(other.diagnostics);
        self.residual = &self.residual + &other.residual;
    }

    pub fn is_integrated(&self) -> bool {
        self.status == Status::Integrated
    }

    /// `elementary + logs + specials`, without the integration constant.
    pub fn render(&self, tower: &Tower) -> String {
        let mut terms = Vec::new();
        if !self.elementary.is_zero() {
            terms.extend(elem_terms(&self.elementary, tower));
        }
        for t in &self.logs {
            terms.push(fmt_scaled(&t.coeff, &format!("log({})", fmt_compact(&t.arg, tower))));
        }
        for s in &self.specials {
            terms.push(s.render(tower));
        }
        if terms.is_empty() {
            return "0".into();
        }
        join_terms(&terms)
    }
}

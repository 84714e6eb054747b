//! One-call entry points used by the CLI and the Python bindings.

use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use crate::gamma::{integrate, Answer, Status};
use crate::kernel::Field;
use crate::io::print::{fmt_elem, fmt_compact};
use crate::io::{lower, lower_over, parse, LowerError, ParseError};
use crate::structure::{describe_witness, exp_dependence, log_dependence, Dependence};
use crate::tower::{Elem, Tower};
use crate::verify::{verify, Report};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ApiError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Lower(LowerError),
    #[error("{0}")]
    Usage(String),
}

/// An integrand together with its lowered form and answer.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub tower: Tower,
    pub integrand: Option<Elem>,
    pub answer: Answer,
}

impl Outcome {
    pub fn status(&self) -> Status {
        self.answer.status
    }

    /// Canonical text: the antiderivative with `+ C`, or the status and
    /// diagnostics when integration did not finish.
    pub fn text(&self) -> String {
        match self.answer.status {
            Status::Integrated => format!("{} + C", self.answer.render(&self.tower)),
            Status::NoGammaFormFound => {
                let done = self.answer.render(&self.tower);
                let rest = fmt_compact(&self.answer.residual, &self.tower);
                if done == "0" {
                    format!("no_gamma_form_found: C + ∫ {} dx", rest)
                } else {
                    format!("no_gamma_form_found: {} + C + ∫ {} dx", done, rest)
                }
            }
            Status::Unsupported => format!("unsupported: {}", self.answer.diagnostics.join("; ")),
        }
    }

    pub fn json(&self) -> serde_json::Value {
        crate::io::json::answer_json(&self.answer, &self.tower)
    }

    /// Exact and numeric certificate; `None` when lowering failed.
    pub fn verify(&self, seed: u64) -> Option<Report> {
        let f = self.integrand.as_ref()?;
        Some(verify(f, &self.answer, &self.tower, seed))
    }

    pub fn integrand_text(&self) -> Option<String> {
        self.integrand.as_ref().map(|f| fmt_elem(f, &self.tower))
    }
}

/// Parses, lowers and integrates `text`.
pub fn integrate_text(text: &str, var: &str, consts: &[String]) -> Result<Outcome, ApiError> {
    let e = parse(text, var, consts)?;
    match lower(&e, var, consts) {
        Ok((tower, f)) => {
            let answer = integrate(&f, &tower);
            Ok(Outcome {
                tower,
                integrand: Some(f),
                answer,
            })
        }
        Err(LowerError::Unsupported(msg)) => Ok(Outcome {
            tower: Tower::new(var, consts),
            integrand: None,
            answer: Answer::failed(Status::Unsupported, Elem::zero(), msg),
        }),
        Err(e) => Err(ApiError::Lower(e)),
    }
}

/// Like [`integrate_text`] but gives up after `timeout`, reporting the
/// case as unsupported.
pub fn integrate_with_timeout(
    text: &str,
    var: &str,
    consts: &[String],
    timeout: Option<Duration>,
) -> Result<Outcome, ApiError> {
    let Some(timeout) = timeout else {
        return integrate_text(text, var, consts);
    };
    let (tx, rx) = mpsc::channel();
    let (t, v, c) = (text.to_string(), var.to_string(), consts.to_vec());
    thread::spawn(move || {
        let _ = tx.send(integrate_text(&t, &v, &c));
    });
    match rx.recv_timeout(timeout) {
        Ok(r) => r,
        Err(_) => Ok(Outcome {
            tower: Tower::new(var, consts),
            integrand: None,
            answer: Answer::failed(
                Status::Unsupported,
                Elem::zero(),
                format!("timed out after {} ms", timeout.as_millis()),
            ),
        }),
    }
}

/// Answer to a structure query: `dependent: <witness>` or `transcendental`.
pub fn structure_query(
    text: &str,
    tower_exprs: &[String],
    var: &str,
    consts: &[String],
) -> Result<String, ApiError> {
    let mut tower = Tower::new(var, consts);
    for t in tower_exprs {
        let e = parse(t, var, consts)?;
        let (nt, _) = lower_over(&e, &tower).map_err(ApiError::Lower)?;
        tower = nt;
    }
    let e = parse(text, var, consts)?;
    let (exponential, inner) = match &e {
        crate::io::Expr::Exp(a) => (true, a.as_ref()),
        crate::io::Expr::Log(a) => (false, a.as_ref()),
        _ => return Err(ApiError::Usage("structure queries take exp(...) or log(...)".into())),
    };
    let (tower, arg) = lower_over(inner, &tower).map_err(ApiError::Lower)?;
    let dep = if exponential {
        exp_dependence(&arg, &tower)
    } else {
        log_dependence(&arg, &tower)
    }
    .map_err(|e| ApiError::Usage(e.to_string()))?;
    Ok(match dep {
        Dependence::Transcendental => "transcendental".to_string(),
        Dependence::Dependent(w) => format!("dependent: {}", describe_witness(&w, &tower, exponential)),
    })
}

//! JSON form of an answer.

use serde_json::{json, Value};

use crate::gamma::{Answer, SpecialKind};
use crate::tower::Tower;

use super::print::{fmt_compact, fmt_elem};

pub fn answer_json(ans: &Answer, tower: &Tower) -> Value {
    let mut ei = Vec::new();
    let mut gr = Vec::new();
    let mut gi = Vec::new();
    for s in &ans.specials {
        let c = s.coeff.to_string();
        let arg = fmt_compact(&s.arg, tower);
        match &s.kind {
            SpecialKind::Ei => ei.push(json!({ "c": c, "arg": arg })),
            SpecialKind::GammaRational { k, m, .. } => gr.push(json!({ "c": c, "k": k, "m": m, "arg": arg })),
            SpecialKind::GammaIrrational { alpha } => {
                gi.push(json!({ "c": c, "alpha": alpha.to_string(), "arg": arg }))
            }
        }
    }
    let logs: Vec<Value> = ans
        .logs
        .iter()
        .map(|l| json!({ "c": l.coeff.to_string(), "arg": fmt_compact(&l.arg, tower) }))
        .collect();
    json!({
        "status": ans.status.as_str(),
        "elementary": fmt_elem(&ans.elementary, tower),
        "logs": logs,
        "ei": ei,
        "gamma_rational": gr,
        "gamma_irrational": gi,
        "diagnostics": ans.diagnostics,
    })
}

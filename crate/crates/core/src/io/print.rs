//! Plain-text rendering of tower elements and answers, in the same surface
//! syntax the parser reads (plus `Ei` and `Gamma` in answers).

use crate::kernel::{Field, Poly};
use crate::tower::{Const, Elem, Kind, Tower};

/// Whether `s` has one of `chars` outside every parenthesis.
fn top_level_has(s: &str, chars: &[char]) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if depth == 0 && i > 0 && chars.contains(&ch) => return true,
            _ => {}
        }
    }
    false
}

/// Wraps `s` in parentheses if it would bind loosely as a factor.
pub fn factor_str(s: &str) -> String {
    if top_level_has(s, &[' ', '/', '+', '-']) {
        format!("({})", s)
    } else {
        s.to_string()
    }
}

/// `coef * rest` with sign and unit handling; `coef` must be a single term.
pub fn times(coef: &str, rest: &str) -> String {
    match coef {
        "1" => rest.to_string(),
        "-1" => format!("-{}", rest),
        _ => {
            let (sign, body) = match coef.strip_prefix('-') {
                Some(b) => ("-", b),
                None => ("", coef),
            };
            format!("{}{}*{}", sign, factor_str(body), rest)
        }
    }
}

/// Joins signed terms into a sum, `a + b - c` at the top level.
pub fn join_terms(terms: &[String]) -> String {
    join_with(terms, " + ", " - ")
}

/// Joins signed terms without spaces, `a+b-c`, for nested positions.
pub fn join_compact(terms: &[String]) -> String {
    join_with(terms, "+", "-")
}

fn join_with(terms: &[String], plus: &str, minus: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => {
                s.push_str(minus);
                s.push_str(rest);
            }
            None => {
                s.push_str(plus);
                s.push_str(t);
            }
        }
    }
    s
}

fn const_terms(c: &Const) -> Vec<String> {
    let s = c.to_string();
    if c.den_is_one() && top_level_has(&s, &[' ']) {
        // split the printed sum back into its terms
        let mut out = Vec::new();
        let mut cur = String::new();
        let mut depth = 0;
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && ch == ' ' {
                let op = chars.next().unwrap();
                chars.next();
                out.push(std::mem::take(&mut cur));
                if op == '-' {
                    cur.push('-');
                }
                continue;
            }
            cur.push(ch);
        }
        out.push(cur);
        out
    } else {
        vec![s]
    }
}

/// Display of the level variable: `x`, `exp(..)` or `log(..)`.
pub fn var_str(level: usize, tower: &Tower) -> String {
    if level == 1 {
        return tower.var_name().to_string();
    }
    let g = tower.generator(level);
    let f = match g.kind {
        Kind::Exp => "exp",
        Kind::Log => "log",
    };
    format!("{}({})", f, fmt_compact(&g.arg, tower))
}

fn poly_terms(p: &Poly<Elem>, level: usize, tower: &Tower) -> Vec<String> {
    let v = var_str(level, tower);
    let mut out = Vec::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = &p.coeffs()[k];
        if c.is_zero() {
            continue;
        }
        if k == 0 {
            out.extend(terms(c, tower));
            continue;
        }
        let vp = if k == 1 { v.clone() } else { format!("{}^{}", v, k) };
        let ct = terms(c, tower);
        if ct.len() == 1 {
            out.push(times(&ct[0], &vp));
        } else {
            out.push(format!("({})*{}", join_compact(&ct), vp));
        }
    }
    out
}

fn terms(e: &Elem, tower: &Tower) -> Vec<String> {
    match e {
        Elem::C(c) => const_terms(c),
        Elem::F(f) => {
            let nt = poly_terms(&f.num, f.level, tower);
            if f.den.is_one() {
                return nt;
            }
            let dt = poly_terms(&f.den, f.level, tower);
            let d = factor_str(&join_compact(&dt));
            let d = if d.contains('*') && !d.starts_with('(') { format!("({})", d) } else { d };
            if nt.len() == 1 {
                let (sign, body) = match nt[0].strip_prefix('-') {
                    Some(b) => ("-", b.to_string()),
                    None => ("", nt[0].clone()),
                };
                vec![format!("{}{}/{}", sign, factor_str(&body), d)]
            } else {
                vec![format!("({})/{}", join_compact(&nt), d)]
            }
        }
    }
}

/// Renders an element of the tower.
pub fn fmt_elem(e: &Elem, tower: &Tower) -> String {
    join_terms(&terms(e, tower))
}

/// Renders an element for a nested position (function argument).
pub fn fmt_compact(e: &Elem, tower: &Tower) -> String {
    join_compact(&terms(e, tower))
}

/// Top-level signed terms of an element.
pub fn elem_terms(e: &Elem, tower: &Tower) -> Vec<String> {
    terms(e, tower)
}

/// Coefficient `c` applied to `rest`, e.g. `-(1/2)*Gamma(..)`.
pub fn fmt_scaled(c: &Const, rest: &str) -> String {
    let ct = const_terms(c);
    if ct.len() == 1 {
        let s = &ct[0];
        // rationals print as n/d; keep them in parentheses as a coefficient
        match s.strip_prefix('-') {
            Some(b) if b.contains('/') && !b.contains('(') => format!("-({})*{}", b, rest),
            _ if s.contains('/') && !s.contains('(') => format!("({})*{}", s, rest),
            _ => times(s, rest),
        }
    } else {
        format!("({})*{}", join_compact(&ct), rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use crate::tower::Monomial;

    fn x() -> Elem {
        Elem::var(1)
    }

    #[test]
    fn polynomials_and_fractions() {
        let t = Tower::new("x", &[]);
        let p = &(&x() * &x()) - &(&Elem::int(3) * &x());
        assert_eq!(fmt_elem(&(&p + &Elem::int(1)), &t), "x^2 - 3*x + 1");
        assert_eq!(fmt_elem(&(&Elem::int(-2) / &(&x() + &Elem::int(1))), &t), "-2/(x+1)");
        assert_eq!(fmt_elem(&(&x() * &Elem::rat(rat(1, 2))), &t), "(1/2)*x");
        assert_eq!(fmt_elem(&x().inv(), &t), "1/x");
    }

    #[test]
    fn generators_print_as_functions() {
        let t = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Exp, arg: &x() * &x() });
        let e = &(&x() - &Elem::int(1)) * &Elem::var(2);
        assert_eq!(fmt_elem(&e, &t), "(x-1)*exp(x^2)");
    }

    #[test]
    fn scaled_coefficients() {
        assert_eq!(fmt_scaled(&Const::rat(rat(-1, 2)), "G"), "-(1/2)*G");
        assert_eq!(fmt_scaled(&Const::int(1), "G"), "G");
        assert_eq!(fmt_scaled(&Const::int(-1), "G"), "-G");
        assert_eq!(fmt_scaled(&Const::exp_rat(&rat(-3, 1)), "G"), "exp(-3)*G");
    }
}

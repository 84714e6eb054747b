//! Rothstein–Trager: the logarithmic part of a proper fraction with a
//! squarefree denominator, when all residues are constants we can name.

use crate::kernel::factor::factor_over_q;
use crate::kernel::poly::{gcd, resultant, squarefree};
use crate::kernel::{BigRat, Field, Poly};
use crate::tower::{Const, Elem, Tower};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ResidueError {
    #[error("residues are not constant")]
    NonConstantResidues,
    #[error("residues are roots of {0}, which has no factor of degree at most 2 we can split")]
    UnsolvableResidues(String),
}

/// Lagrange interpolation through `(i, values[i])`.
fn interpolate(values: &[Elem]) -> Poly<Elem> {
    let n = values.len();
    let mut out = Poly::zero();
    for (i, vi) in values.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let mut basis = Poly::constant(vi.clone());
        for j in 0..n {
            if j != i {
                let den = Elem::int(i as i64 - j as i64).inv();
                basis = basis.mul(&Poly::new(vec![Elem::int(-(j as i64)), Elem::one()]).scale(&den));
            }
        }
        out = out.add(&basis);
    }
    out
}

fn quadratic_roots(p: &Const, q: &Const) -> Option<[Const; 2]> {
    // z^2 + p z + q
    let half = Const::rat(BigRat::new(1.into(), 2.into()));
    let disc = p.mul(p).mul(&half).mul(&half).sub(q);
    let r = Const::root(&disc.as_rat()?, 2).ok()?;
    let m = p.mul(&half).neg();
    Some([m.add(&r), m.sub(&r)])
}

/// Distinct roots of a monic constant polynomial, when they can be written
/// with rationals and square roots of rationals.
fn const_roots(r: &Poly<Const>) -> Result<Vec<Const>, ResidueError> {
    let mut out = Vec::new();
    let fail = || {
        let z = Elem::from_poly(1, r.map(|c| Elem::C(c.clone())));
        ResidueError::UnsolvableResidues(crate::io::print::fmt_compact(&z, &Tower::new("z", &[])))
    };
    for (f, _) in squarefree(r) {
        if f.is_constant() {
            continue;
        }
        let rational: Option<Vec<BigRat>> = f.coeffs().iter().map(|c| c.as_rat()).collect();
        let factors: Vec<Poly<Const>> = match rational {
            Some(qs) => factor_over_q(&Poly::new(qs))
                .1
                .into_iter()
                .map(|(g, _)| g.map(|c| Const::rat(c.clone())))
                .collect(),
            None => vec![f.clone()],
        };
        for g in factors {
            let g = g.monic();
            match g.deg() {
                1 => out.push(g.coeff(0).neg()),
                2 => out.extend(quadratic_roots(&g.coeff(1), &g.coeff(0)).ok_or_else(fail)?),
                _ => return Err(fail()),
            }
        }
    }
    Ok(out)
}

/// For `h = A/D` proper in the variable of `level` with `D` squarefree (and
/// normal), returns `(c_i, v_i)` with `v_i` monic in that variable such that
/// `Σ c_i v_i'/v_i - h` lies in the field below `level`.
pub fn residue_logpart(h: &Elem, tower: &Tower, level: usize) -> Result<Vec<(Const, Elem)>, ResidueError> {
    if h.is_zero() {
        return Ok(Vec::new());
    }
    let (a, d) = h.parts_in(level);
    let dd = tower.derive_poly(level, &d);
    let n = d.deg() as usize;
    let values: Vec<Elem> = (0..=n)
        .map(|k| resultant(&d, &a.sub(&dd.scale(&Elem::int(k as i64)))))
        .collect();
    let r = interpolate(&values);
    if r.is_zero() {
        return Err(ResidueError::NonConstantResidues);
    }
    let r = r.monic();
    let rc: Option<Vec<Const>> = r.coeffs().iter().map(|c| c.as_const().cloned()).collect();
    let rc = Poly::new(rc.ok_or(ResidueError::NonConstantResidues)?);
    let mut out = Vec::new();
    for c in const_roots(&rc)? {
        let ce = Elem::C(c.clone());
        let v = gcd(&d, &a.sub(&dd.scale(&ce)));
        if !v.is_constant() {
            out.push((c, Elem::from_poly(level, v)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use crate::tower::{Kind, Monomial};

    fn x() -> Elem {
        Elem::var(1)
    }

    fn logsum(terms: &[(Const, Elem)], t: &Tower) -> Elem {
        terms
            .iter()
            .fold(Elem::zero(), |acc, (c, v)| &acc + &(&Elem::C(c.clone()) * &t.log_derivative(v)))
    }

    #[test]
    fn rational_residues() {
        let t = Tower::new("x", &[]);
        let h = (&x().pow(2) - &Elem::one()).inv();
        let terms = residue_logpart(&h, &t, 1).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(logsum(&terms, &t), h);
        assert!(terms.iter().any(|(c, _)| *c == Const::rat(rat(1, 2))));
    }

    #[test]
    fn quadratic_residues_give_complex_logs() {
        let t = Tower::new("x", &[]);
        let h = (&x().pow(2) + &Elem::one()).inv();
        let terms = residue_logpart(&h, &t, 1).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(logsum(&terms, &t), h);
    }

    #[test]
    fn log_top() {
        let t = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Log, arg: x() });
        let l = Elem::var(2);
        let h = (&x() * &l).inv();
        let terms = residue_logpart(&h, &t, 2).unwrap();
        assert_eq!(terms, vec![(Const::one(), l.clone())]);
        // 1/λ has residue 1/x: not constant
        assert_eq!(residue_logpart(&l.inv(), &t, 2).unwrap_err(), ResidueError::NonConstantResidues);
    }

    #[test]
    fn exp_top_differs_by_ground_term() {
        let t = Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Exp, arg: x() });
        let th = Elem::var(2);
        let h = (&th + &Elem::one()).inv();
        let terms = residue_logpart(&h, &t, 2).unwrap();
        // (log(θ+1))' = θ/(θ+1) = 1 - h, so the residue is -1
        assert_eq!(terms, vec![(Const::int(-1), &th + &Elem::one())]);
        let diff = &logsum(&terms, &t) - &h;
        assert!(!diff.depends_on(2));
    }
}

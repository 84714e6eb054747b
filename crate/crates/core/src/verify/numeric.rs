//! Numeric derivative probe: evaluate the answer in complex floating point
//! near sample points, differentiate it with Ridders' extrapolation, and
//! compare with the integrand.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gamma::{Answer, SpecialKind, SpecialTerm};
use crate::tower::{Elem, Kind, Tower};

use super::special::{ei, gamma_upper};

/// Relative error below which a point passes.
pub const TOLERANCE: f64 = 1e-9;
const POINTS: usize = 5;
const ATTEMPTS: usize = 80;

#[derive(Debug, Clone)]
pub struct ProbeResult {
    pub points: Vec<f64>,
    pub max_rel_err: f64,
    pub symbol_values: Vec<(String, f64)>,
}

impl ProbeResult {
    /// No usable sample point was found (for instance, every special
    /// function argument was off the positive real axis).
    pub fn inconclusive(&self) -> bool {
        self.points.is_empty()
    }

    pub fn failed(&self) -> bool {
        !self.inconclusive() && !(self.max_rel_err < TOLERANCE)
    }

    pub fn passed(&self) -> bool {
        !self.inconclusive() && self.max_rel_err < TOLERANCE
    }

    pub fn summary(&self) -> String {
        if self.inconclusive() {
            "numeric: inconclusive (no usable real sample point)".into()
        } else {
            format!(
                "numeric: {} at {} points (max relative error {:.2e})",
                if self.passed() { "ok" } else { "FAILED" },
                self.points.len(),
                self.max_rel_err
            )
        }
    }
}

struct Env<'a> {
    tower: &'a Tower,
    symbols: HashMap<String, f64>,
}

/// Principal logarithm, taking real arguments exactly on the real branch so
/// that nearby evaluations agree on the sign of the imaginary part.
fn clog(z: Complex64) -> Complex64 {
    if z.im.abs() <= 1e-13 * z.re.abs() {
        let im = if z.re < 0.0 { std::f64::consts::PI } else { 0.0 };
        Complex64::new(z.re.abs().ln(), im)
    } else {
        z.ln()
    }
}

fn real(z: Complex64) -> Option<f64> {
    (z.im.abs() <= 1e-12 * z.re.abs().max(1.0)).then_some(z.re)
}

impl Env<'_> {
    fn sym(&self) -> impl Fn(&str) -> Option<f64> + '_ {
        move |s: &str| self.symbols.get(s).copied()
    }

    fn level_values(&self, x: f64) -> Option<Vec<Complex64>> {
        let mut vals = vec![Complex64::new(x, 0.0)];
        for level in 2..=self.tower.top_level() {
            let g = self.tower.generator(level);
            let a = self.eval_with(&g.arg, &vals)?;
            vals.push(match g.kind {
                Kind::Exp => a.exp(),
                Kind::Log => {
                    if a.norm() == 0.0 {
                        return None;
                    }
                    clog(a)
                }
            });
        }
        Some(vals)
    }

    fn eval_with(&self, e: &Elem, vals: &[Complex64]) -> Option<Complex64> {
        match e {
            Elem::C(c) => c.eval(&self.sym()),
            Elem::F(f) => {
                let v = vals[f.level - 1];
                let horner = |p: &crate::kernel::Poly<Elem>| -> Option<Complex64> {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for c in p.coeffs().iter().rev() {
                        acc = acc * v + self.eval_with(c, vals)?;
                    }
                    Some(acc)
                };
                let d = horner(&f.den)?;
                if d.norm() == 0.0 {
                    return None;
                }
                let r = horner(&f.num)? / d;
                r.is_finite().then_some(r)
            }
        }
    }

    fn special(&self, t: &SpecialTerm, vals: &[Complex64]) -> Option<Complex64> {
        let c = t.coeff.eval(&self.sym())?;
        let arg = real(self.eval_with(&t.arg, vals)?)?;
        let v = match &t.kind {
            SpecialKind::Ei => {
                if arg == 0.0 {
                    return None;
                }
                ei(arg)
            }
            SpecialKind::GammaRational { k, m, radical } => {
                if arg <= 0.0 {
                    return None;
                }
                let p = *m as f64 / *k as f64;
                let rv = self.eval_with(radical, vals)?;
                let expect = arg.powf(p);
                if (rv - expect).norm() > 1e-9 * expect.abs() {
                    // the tower element is another branch of arg^(m/k) here
                    return None;
                }
                gamma_upper(1.0 + p, arg)
            }
            SpecialKind::GammaIrrational { alpha } => {
                if arg <= 0.0 {
                    return None;
                }
                gamma_upper(real(alpha.eval(&self.sym())?)?, arg)
            }
        };
        v.is_finite().then(|| c * v)
    }

    fn answer(&self, ans: &Answer, x: f64) -> Option<Complex64> {
        let vals = self.level_values(x)?;
        let mut s = self.eval_with(&ans.elementary, &vals)?;
        for l in &ans.logs {
            let a = self.eval_with(&l.arg, &vals)?;
            if a.norm() == 0.0 {
                return None;
            }
            s += l.coeff.eval(&self.sym())? * clog(a);
        }
        for t in &ans.specials {
            s += self.special(t, &vals)?;
        }
        s.is_finite().then_some(s)
    }

    fn elem(&self, e: &Elem, x: f64) -> Option<Complex64> {
        let vals = self.level_values(x)?;
        self.eval_with(e, &vals)
    }
}

/// Ridders' extrapolated central difference; returns the derivative and an
/// error estimate.
fn ridders(f: &dyn Fn(f64) -> Option<Complex64>, x: f64, h0: f64) -> Option<(Complex64, f64)> {
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    const NTAB: usize = 10;
    let mut a = vec![vec![Complex64::new(0.0, 0.0); NTAB]; NTAB];
    let mut h = h0;
    a[0][0] = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let mut err = f64::MAX;
    let mut best = a[0][0];
    for i in 1..NTAB {
        h /= CON;
        a[0][i] = (f(x + h)? - f(x - h)?) / (2.0 * h);
        let mut fac = CON2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let errt = (a[j][i] - a[j - 1][i]).norm().max((a[j][i] - a[j - 1][i - 1]).norm());
            if errt <= err {
                err = errt;
                best = a[j][i];
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).norm() >= 2.0 * err {
            break;
        }
    }
    Some((best, err))
}

/// Random values in `(0, 1)` other than `1/2` for declared symbols.
fn symbol_values(tower: &Tower, rng: &mut ChaCha8Rng) -> HashMap<String, f64> {
    tower
        .symbols()
        .iter()
        .map(|s| {
            let mut k = rng.gen_range(10..88);
            if k == 48 || k == 49 {
                k += 3;
            }
            (s.clone(), k as f64 / 97.0)
        })
        .collect()
}

/// Compares the numeric derivative of `ans` with `f - residual` at up to
/// five random points of `(0.35, 2.4)`.
pub fn numeric_probe(f: &Elem, ans: &Answer, tower: &Tower, seed: u64) -> ProbeResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let env = Env {
        tower,
        symbols: symbol_values(tower, &mut rng),
    };
    let target = f - &ans.residual;
    let mut points = Vec::new();
    let mut max_err: f64 = 0.0;
    let mut sign = 1.0;
    for attempt in 0..ATTEMPTS {
        if points.len() == POINTS {
            break;
        }
        // fall back to negative x when the positive axis gives nothing usable
        if attempt == ATTEMPTS / 2 && points.is_empty() {
            sign = -1.0;
        }
        let p = sign * rng.gen_range(90..615) as f64 / 256.0;
        let Some(fv) = env.elem(&target, p) else { continue };
        if !fv.is_finite() || fv.norm() > 1e12 {
            continue;
        }
        let func = |x: f64| env.answer(ans, x);
        let Some((d, est)) = ridders(&func, p, 0.02) else { continue };
        let scale = fv.norm().max(d.norm()).max(1e-8);
        if est > 1e-6 * scale {
            continue;
        }
        max_err = max_err.max((d - fv).norm() / scale);
        points.push(p);
    }
    let mut symbol_values: Vec<(String, f64)> = env.symbols.into_iter().collect();
    symbol_values.sort_by(|a, b| a.0.cmp(&b.0));
    ProbeResult {
        points,
        max_rel_err: max_err,
        symbol_values,
    }
}

//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use gammaint::kernel::{rat, Field};
use gammaint::tower::{Elem, Kind, Monomial, Tower};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn x() -> Elem {
    Elem::var(1)
}

pub fn exp_tower(arg: Elem) -> Tower {
    Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Exp, arg })
}

pub fn log_tower(arg: Elem) -> Tower {
    Tower::new("x", &[]).with_generator(Monomial { kind: Kind::Log, arg })
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Elem {
    let n = rng.gen_range(-4..=4);
    let d = rng.gen_range(1..=3);
    Elem::rat(rat(n, d))
}

fn nonzero_int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    loop {
        let n = rng.gen_range(lo..=hi);
        if n != 0 {
            return n;
        }
    }
}

/// A random nonzero polynomial in x of degree at most `deg`.
pub fn rand_poly_x(rng: &mut ChaCha8Rng, deg: usize) -> Elem {
    loop {
        let mut p = Elem::zero();
        for k in 0..=deg {
            if rng.gen_bool(0.6) {
                p = &p + &(&small_rat(rng) * &x().pow(k as i64));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random nonzero element of Q(x): a polynomial, sometimes divided by a
/// linear factor.
pub fn rand_qx(rng: &mut ChaCha8Rng) -> Elem {
    let p = rand_poly_x(rng, 2);
    if rng.gen_bool(0.4) {
        let k = nonzero_int(rng, -3, 3);
        &p / &(&x() + &Elem::int(k))
    } else {
        p
    }
}

/// A random monic polynomial in the variable of `level` with nonzero
/// constant term, so it is coprime to that variable.
pub fn rand_monic_coprime(rng: &mut ChaCha8Rng, level: usize) -> Elem {
    let t = Elem::var(level);
    let deg = rng.gen_range(1..=2);
    let mut p = t.pow(deg);
    for k in 1..deg {
        if rng.gen_bool(0.5) {
            p = &p + &(&rand_qx(rng) * &t.pow(k));
        }
    }
    &p + &rand_qx(rng)
}

pub use oracle::*;

/// Exact rational linear algebra, independent of the library's own solver.
mod oracle {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    /// Whether the rational linear system `rows · u = rhs` has a solution,
    /// by plain Gauss-Jordan elimination.
    pub fn solvable(mut rows: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> bool {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            rhs.swap(r, p);
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let f = &rows[i][c] / &rows[r][c];
                    for k in 0..ncols {
                        let v = &rows[r][k] * &f;
                        rows[i][k] -= v;
                    }
                    let v = &rhs[r] * &f;
                    rhs[i] -= v;
                }
            }
            r += 1;
        }
        rhs[r..].iter().all(Zero::is_zero)
    }

    /// Brute-force search for `y = N(x)/x^j` with `deg N <= deg`, `j <= deg`,
    /// solving `y' + y = 1/x`. Clearing denominators gives
    /// `x N' - j N + x N = x^j`, linear in the coefficients of `N`.
    pub fn reciprocal_rde_has_solution(deg: usize) -> bool {
        for j in 0..=deg {
            let n = deg + 1;
            let nrows = deg + 2 + j;
            let mut rows = vec![vec![BigRational::zero(); n]; nrows];
            for k in 0..n {
                let kq = BigRational::from_integer((k as i64).into());
                let jq = BigRational::from_integer((j as i64).into());
                // x·(k x^(k-1)) - j x^k + x^(k+1)
                rows[k][k] += kq - jq;
                rows[k + 1][k] += BigRational::one();
            }
            let mut rhs = vec![BigRational::zero(); nrows];
            rhs[j] = BigRational::one();
            if solvable(rows, rhs) {
                return true;
            }
        }
        false
    }
}

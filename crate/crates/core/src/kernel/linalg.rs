//! Dense Gaussian elimination over an exact field.

use super::Field;

/// Reduced row echelon form of an augmented system.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

/// Row-reduce `rows` (each of length `ncols`) in place.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Echelon<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    if !rows[r][j].is_zero() {
                        let d = f.mul(&rows[r][j]);
                        rows[i][j] = rows[i][j].sub(&d);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r.max(0));
    Echelon { rows, pivots, ncols }
}

/// Solves `A u = b` where `a[i]` is row `i`. Free variables are set to zero.
/// Returns `None` when the system is inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], nvars: usize) -> Option<Vec<F>> {
    assert_eq!(a.len(), b.len());
    let rows: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut v = row.clone();
            v.resize(nvars, F::zero());
            v.push(bi.clone());
            v
        })
        .collect();
    let ech = rref(rows, nvars + 1);
    if ech.pivots.last() == Some(&nvars) {
        return None;
    }
    let mut sol = vec![F::zero(); nvars];
    for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
        sol[c] = row[nvars].clone();
    }
    Some(sol)
}

/// Whether the homogeneous system `A u = 0` has only the trivial solution.
pub fn full_column_rank<F: Field>(a: &[Vec<F>], nvars: usize) -> bool {
    let rows: Vec<Vec<F>> = a
        .iter()
        .map(|row| {
            let mut v = row.clone();
            v.resize(nvars, F::zero());
            v
        })
        .collect();
    rref(rows, nvars).pivots.len() == nvars
}

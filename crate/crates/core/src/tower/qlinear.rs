//! Q-linear relations among tower elements.
//!
//! Every element is mapped to a vector of rational coordinates in a system
//! shared by the whole input list, such that rational linear relations among
//! the elements are exactly the linear relations among their vectors. The
//! map clears denominators level by level: at the top variable all elements
//! are put over a common denominator and each numerator coefficient column is
//! flattened recursively; at the constant level the atom-monomials of the
//! constant numerators are the coordinates.

use std::collections::BTreeMap;

use crate::kernel::linalg::{full_column_rank, solve};
use crate::kernel::{qzero, BigRat, Field, Poly};

use super::constant::Const;
use super::elem::Elem;

/// Coordinates of each element in a shared basis.
pub fn coordinates(elems: &[Elem]) -> Vec<Vec<BigRat>> {
    let level = elems.iter().map(Elem::level).max().unwrap_or(0);
    if level == 0 {
        let cs: Vec<Const> = elems.iter().map(|e| e.as_const().unwrap().clone()).collect();
        return const_coordinates(&cs);
    }
    let parts: Vec<(Poly<Elem>, Poly<Elem>)> = elems.iter().map(|e| e.parts_in(level)).collect();
    let common = parts
        .iter()
        .fold(Poly::one(), |acc: Poly<Elem>, (_, d)| if d.is_one() { acc } else { acc.lcm(d) });
    let nums: Vec<Poly<Elem>> = parts
        .iter()
        .map(|(n, d)| if d.is_one() { n.mul(&common) } else { n.mul(&common.exact_div(d)) })
        .collect();
    let maxdeg = nums.iter().map(|n| n.deg()).max().unwrap_or(-1);
    let mut out = vec![Vec::new(); elems.len()];
    for k in 0..=maxdeg {
        let column: Vec<Elem> = nums.iter().map(|n| n.coeff(k as usize)).collect();
        if column.iter().all(Elem::is_zero) {
            continue;
        }
        for (o, c) in out.iter_mut().zip(coordinates(&column)) {
            o.extend(c);
        }
    }
    out
}

fn const_coordinates(cs: &[Const]) -> Vec<Vec<BigRat>> {
    let split: Vec<(Const, Const)> = cs.iter().map(Const::split).collect();
    let mut dens: Vec<Const> = Vec::new();
    for (_, d) in &split {
        if !dens.contains(d) {
            dens.push(d.clone());
        }
    }
    let nums: Vec<Const> = split
        .iter()
        .map(|(n, d)| {
            dens.iter()
                .filter(|x| *x != d)
                .fold(n.clone(), |acc, x| acc.mul(x))
        })
        .collect();
    let mut keys: BTreeMap<String, usize> = BTreeMap::new();
    let terms: Vec<Vec<(String, BigRat)>> = nums.iter().map(Const::numerator_terms).collect();
    for t in &terms {
        for (k, _) in t {
            let n = keys.len();
            keys.entry(k.clone()).or_insert(n);
        }
    }
    terms
        .into_iter()
        .map(|t| {
            let mut v = vec![qzero(); keys.len()];
            for (k, c) in t {
                v[keys[&k]] = c;
            }
            v
        })
        .collect()
}

/// Rational `r` with `target = Σ r_i basis_i`, if one exists. Free
/// directions (a dependent basis) are resolved by setting them to zero.
pub fn solve_combination(target: &Elem, basis: &[Elem]) -> Option<Vec<BigRat>> {
    let mut all: Vec<Elem> = basis.to_vec();
    all.push(target.clone());
    let coords = coordinates(&all);
    let n = basis.len();
    let dim = coords[0].len();
    let rows: Vec<Vec<BigRat>> = (0..dim).map(|i| (0..n).map(|j| coords[j][i].clone()).collect()).collect();
    let rhs: Vec<BigRat> = (0..dim).map(|i| coords[n][i].clone()).collect();
    if n == 0 {
        return rhs.iter().all(Field::is_zero).then(Vec::new);
    }
    solve(&rows, &rhs, n)
}

/// Whether the elements are linearly independent over Q.
pub fn independent(elems: &[Elem]) -> bool {
    if elems.is_empty() {
        return true;
    }
    let coords = coordinates(elems);
    let dim = coords[0].len();
    let rows: Vec<Vec<BigRat>> = (0..dim)
        .map(|i| (0..elems.len()).map(|j| coords[j][i].clone()).collect())
        .collect();
    full_column_rank(&rows, elems.len())
}

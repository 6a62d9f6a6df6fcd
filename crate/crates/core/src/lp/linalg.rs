//! Exact Gaussian elimination.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve `A x = b` for square nonsingular `A`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::dims("solve expects a square system"));
    }
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(Error::invalid("singular system"));
    }
    Ok(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Basis of the null space of `m` (each vector has `m[0].len()` entries).
pub fn null_space(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in work.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Hyperplane `h·x = c` through `d` affinely independent points of `Q^d`,
/// scaled so that the first nonzero coefficient of `h` is one.
pub fn affine_hyperplane_through(points: &[Vec<Rational>]) -> Result<(Vec<Rational>, Rational)> {
    let d = points.len();
    if d == 0 || points.iter().any(|p| p.len() != d) {
        return Err(Error::dims(format!(
            "need exactly d points in d dimensions, got {d} points"
        )));
    }
    // Rows [x_j, -1] · (h, c) = 0.
    let m: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut row = p.clone();
            row.push(-Rational::one());
            row
        })
        .collect();
    let basis = null_space(&m, d + 1);
    if basis.len() != 1 {
        return Err(Error::AffinelyDependent);
    }
    let mut v = basis.into_iter().next().unwrap();
    let lead = v[..d]
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .ok_or(Error::AffinelyDependent)?;
    for x in v.iter_mut() {
        *x /= &lead;
    }
    let c = v.pop().unwrap();
    Ok((v, c))
}

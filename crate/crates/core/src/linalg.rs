//! Dense exact linear algebra over the rationals: reduced row-echelon form,
//! rank and nullspace. Rows are `Vec<Rational>` of a fixed column count.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Vector = Vec<Rational>;

pub fn zero_vector(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn unit_vector(len: usize, index: usize) -> Vector {
    let mut v = zero_vector(len);
    v[index] = Rational::one();
    v
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += factor * v`
pub fn axpy(acc: &mut [Rational], factor: &Rational, v: &[Rational]) {
    if factor.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += factor * b;
        }
    }
}

/// Reduced row-echelon form of `rows` (each of length `cols`).
///
/// Returns the nonzero rows, each with a leading 1, together with the pivot
/// column of every row. Pivot columns are strictly increasing.
pub fn rref(rows: &[Vector], cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows
        .iter()
        .filter(|r| !is_zero(r))
        .map(|r| {
            debug_assert_eq!(r.len(), cols);
            r.clone()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        if lead == m.len() {
            break;
        }
        let Some(p) = (lead..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(lead, p);
        let inv = m[lead][col].recip();
        for x in m[lead].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[lead].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != lead && !row[col].is_zero() {
                let factor = -row[col].clone();
                axpy(row, &factor, &pivot_row);
            }
        }
        pivots.push(col);
        lead += 1;
    }
    m.truncate(lead);
    (m, pivots)
}

pub fn rank(rows: &[Vector], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows.
///
/// One vector per free column, with that free entry set to 1; the returned
/// basis is itself in reduced row-echelon form.
pub fn nullspace(rows: &[Vector], cols: usize) -> Vec<Vector> {
    let (reduced, pivots) = rref(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Vector> = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = unit_vector(cols, free);
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect();
    rref(&basis, cols).0
}

/// Solves the square system `M x = b` when `M` is invertible.
pub fn solve_square(m: &[Vector], b: &[Rational]) -> Option<Vector> {
    let n = m.len();
    let augmented: Vec<Vector> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(&augmented, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(reduced.into_iter().map(|row| row[n].clone()).collect())
}

#![allow(dead_code)]

use circdet::{ComplexF, GaussInt};

/// Leibniz-formula determinant: the sum over all permutations. Independent of
/// any elimination; only usable for small n.
pub fn leibniz_det(rows: &[Vec<GaussInt>]) -> GaussInt {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = GaussInt::zero();
    permute(&mut perm, 0, true, rows, &mut total);
    total
}

fn permute(
    perm: &mut Vec<usize>,
    start: usize,
    even: bool,
    rows: &[Vec<GaussInt>],
    total: &mut GaussInt,
) {
    let n = perm.len();
    if start == n {
        let mut term = GaussInt::one();
        for (r, &c) in perm.iter().enumerate() {
            term = &term * &rows[r][c];
        }
        *total = if even {
            &*total + &term
        } else {
            &*total - &term
        };
        return;
    }
    for i in start..n {
        perm.swap(start, i);
        permute(
            perm,
            start + 1,
            if i == start { even } else { !even },
            rows,
            total,
        );
        perm.swap(start, i);
    }
}

/// Right circulant built by explicit rotation of the previous row.
pub fn rotate_rows_right(first: &[GaussInt]) -> Vec<Vec<GaussInt>> {
    let mut rows = vec![first.to_vec()];
    for _ in 1..first.len() {
        let mut next = rows.last().unwrap().clone();
        next.rotate_right(1);
        rows.push(next);
    }
    rows
}

/// Left circulant built by explicit rotation of the previous row.
pub fn rotate_rows_left(first: &[GaussInt]) -> Vec<Vec<GaussInt>> {
    let mut rows = vec![first.to_vec()];
    for _ in 1..first.len() {
        let mut next = rows.last().unwrap().clone();
        next.rotate_left(1);
        rows.push(next);
    }
    rows
}

pub fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

pub fn rel_err(a: ComplexF, b: ComplexF) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

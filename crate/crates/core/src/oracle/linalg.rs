//! Exact ranks of integer matrices.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Row-major sparse integer matrix; each row sorted by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(usize, i128)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    /// Adds `value` at `(row, col)`.
    pub fn push(&mut self, row: usize, col: usize, value: i128) {
        let line = &mut self.entries[row];
        match line.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(pos) => {
                line[pos].1 += value;
                if line[pos].1 == 0 {
                    line.remove(pos);
                }
            }
            Err(pos) => {
                if value != 0 {
                    line.insert(pos, (col, value));
                }
            }
        }
    }

    pub fn from_dense(dense: &[Vec<i128>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        let mut m = Self::zeros(dense.len(), cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.push(r, c, *v);
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<i128>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = *v;
            }
        }
        out
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(row: &mut [(usize, i128)]) {
    let g = row.iter().fold(0, |g, (_, v)| gcd(g, *v));
    if g > 1 {
        for (_, v) in row.iter_mut() {
            *v /= g;
        }
    }
}

/// `alpha * x - beta * y`, dropping zeros.
fn combine(alpha: i128, x: &[(usize, i128)], beta: i128, y: &[(usize, i128)]) -> Result<Vec<(usize, i128)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut p, mut q) = (0, 0);
    while p < x.len() || q < y.len() {
        let take_x = q >= y.len() || (p < x.len() && x[p].0 < y[q].0);
        let take_y = p >= x.len() || (q < y.len() && y[q].0 < x[p].0);
        let (col, value) = if take_x {
            p += 1;
            (x[p - 1].0, alpha.checked_mul(x[p - 1].1).ok_or(Error::Overflow)?)
        } else if take_y {
            q += 1;
            (y[q - 1].0, beta.checked_mul(y[q - 1].1).ok_or(Error::Overflow)?.checked_neg().ok_or(Error::Overflow)?)
        } else {
            let a = alpha.checked_mul(x[p].1).ok_or(Error::Overflow)?;
            let b = beta.checked_mul(y[q].1).ok_or(Error::Overflow)?;
            p += 1;
            q += 1;
            (x[p - 1].0, a.checked_sub(b).ok_or(Error::Overflow)?)
        };
        if value != 0 {
            out.push((col, value));
        }
    }
    Ok(out)
}

/// Rank over `Q` by fraction-free row reduction with gcd normalization.
pub fn sparse_rank(matrix: &SparseMatrix) -> Result<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, i128)>> = HashMap::new();
    for row in &matrix.entries {
        let mut current = row.clone();
        normalize(&mut current);
        while let Some(&(lead, value)) = current.first() {
            match pivots.get(&lead) {
                Some(pivot) => {
                    let pv = pivot[0].1;
                    let g = gcd(pv, value);
                    current = combine(pv / g, &current, value / g, pivot)?;
                    normalize(&mut current);
                }
                None => {
                    pivots.insert(lead, current);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

/// Rank over `Q` by dense Bareiss elimination.
pub fn dense_rank(matrix: &[Vec<i128>]) -> Result<usize> {
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut previous = 1i128;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot_row);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = a[rank][col]
                    .checked_mul(a[r][c])
                    .and_then(|x| a[r][col].checked_mul(a[rank][c]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow)?;
                a[r][c] = v / previous;
            }
            a[r][col] = 0;
        }
        previous = a[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

//! Double description method over the integers.
//!
//! Computes the extreme rays of a pointed polyhedral cone `{x : r·x >= 0}`
//! by inserting one constraint at a time. Adjacency is decided
//! combinatorially from zero sets, which is exact for degenerate
//! (non-simple) cones.

use num::bigint::BigInt;
use num::{BigRational, Signed, Zero};

use crate::linalg;

/// Fixed-width bitset over row indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct RowSet(Vec<u64>);

impl RowSet {
    pub fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[cfg(test)]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DdError {
    /// The constraint matrix has rank below the ambient dimension.
    Lineality,
}

/// Extreme rays of `{x in R^dim : row·x >= 0 for every row}`, each a primitive
/// integer vector. An empty result means the cone is `{0}`.
pub(crate) fn extreme_rays(dim: usize, rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>, DdError> {
    let m = rows.len();
    let mut basis_idx: Vec<usize> = Vec::with_capacity(dim);
    let mut basis: Vec<Vec<BigRational>> = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        if basis.len() == dim {
            break;
        }
        basis.push(linalg::to_rational(row));
        if linalg::rank(&basis) == basis.len() {
            basis_idx.push(i);
        } else {
            basis.pop();
        }
    }
    if basis.len() < dim {
        return Err(DdError::Lineality);
    }
    let inv = linalg::inverse(&basis).expect("selected rows are independent");

    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    let mut zeros: Vec<RowSet> = Vec::with_capacity(dim);
    for k in 0..dim {
        let column: Vec<BigRational> = (0..dim).map(|r| inv[r][k].clone()).collect();
        rays.push(linalg::primitive_integer(&column));
        let mut z = RowSet::new(m);
        for (j, &row) in basis_idx.iter().enumerate() {
            if j != k {
                z.insert(row);
            }
        }
        zeros.push(z);
    }

    let mut in_basis = vec![false; m];
    for &i in &basis_idx {
        in_basis[i] = true;
    }
    for (h, row) in rows.iter().enumerate() {
        if in_basis[h] {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| linalg::dot_int(row, r)).collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if neg.is_empty() {
            for (i, v) in values.iter().enumerate() {
                if v.is_zero() {
                    zeros[i].insert(h);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();

        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = zeros[p].and(&zeros[n]);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|r| r == p || r == n || !common.is_subset(&zeros[r]));
                if !adjacent {
                    continue;
                }
                let mut ray: Vec<BigInt> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(x, y)| &values[p] * x - &values[n] * y)
                    .collect();
                linalg::make_primitive(&mut ray);
                let mut z = common;
                z.insert(h);
                new_rays.push(ray);
                new_zeros.push(z);
            }
        }

        let mut kept_rays = Vec::with_capacity(rays.len() - neg.len() + new_rays.len());
        let mut kept_zeros = Vec::with_capacity(kept_rays.capacity());
        for (i, (ray, mut z)) in rays.into_iter().zip(zeros).enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                z.insert(h);
            }
            kept_rays.push(ray);
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
    }
    Ok(rays)
}

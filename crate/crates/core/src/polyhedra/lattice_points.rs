//! Points of `(1/d)·Z^n` inside a polytope, by depth-first coordinate
//! enumeration with interval propagation.

use num::{BigInt, BigRational, Integer, Signed, Zero};
use rayon::prelude::*;

use super::{Polytope, RationalPoint};

/// Row `a·y <= b` in scaled integer coordinates `y = d·t`, with suffix minima
/// of `a_j·y_j` over the bounding box.
struct ScaledRow {
    coeffs: Vec<BigInt>,
    bound: BigInt,
    /// `suffix_min[j] = Σ_{i >= j} min(a_i·lo_i, a_i·hi_i)`; length n + 1.
    suffix_min: Vec<BigInt>,
}

struct Enumerator {
    rows: Vec<ScaledRow>,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

impl Enumerator {
    fn new(p: &Polytope, den: &BigInt) -> Option<Self> {
        let bbox = p.bounding_box()?;
        let den_q = BigRational::from_integer(den.clone());
        let lo: Vec<BigInt> = bbox
            .iter()
            .map(|(l, _)| (l * &den_q).ceil().to_integer())
            .collect();
        let hi: Vec<BigInt> = bbox
            .iter()
            .map(|(_, h)| (h * &den_q).floor().to_integer())
            .collect();
        let n = lo.len();
        let rows = p
            .halfspaces()
            .rows()
            .iter()
            .map(|r| {
                let mut suffix_min = vec![BigInt::zero(); n + 1];
                for j in (0..n).rev() {
                    let a = &r.coeffs[j];
                    let m = if a.is_negative() {
                        a * &hi[j]
                    } else {
                        a * &lo[j]
                    };
                    suffix_min[j] = &suffix_min[j + 1] + m;
                }
                ScaledRow {
                    coeffs: r.coeffs.clone(),
                    bound: &r.bound * den,
                    suffix_min,
                }
            })
            .collect();
        Some(Self { rows, lo, hi })
    }

    /// Feasible range of coordinate `j` given the prefix partial sums.
    fn range(&self, j: usize, partial: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let mut lo = self.lo[j].clone();
        let mut hi = self.hi[j].clone();
        for (row, s) in self.rows.iter().zip(partial) {
            let residual = &row.bound - s - &row.suffix_min[j + 1];
            let a = &row.coeffs[j];
            if a.is_zero() {
                if residual.is_negative() {
                    return None;
                }
            } else if a.is_positive() {
                hi = hi.min(residual.div_floor(a));
            } else {
                lo = lo.max(-(residual.div_floor(&-a)));
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn descend(
        &self,
        j: usize,
        partial: &mut Vec<BigInt>,
        prefix: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        let n = self.lo.len();
        if j == n {
            out.push(prefix.clone());
            return;
        }
        let Some((lo, hi)) = self.range(j, partial) else {
            return;
        };
        let mut y = lo;
        while y <= hi {
            for (s, row) in partial.iter_mut().zip(&self.rows) {
                *s += &row.coeffs[j] * &y;
            }
            prefix.push(y.clone());
            self.descend(j + 1, partial, prefix, out);
            prefix.pop();
            for (s, row) in partial.iter_mut().zip(&self.rows) {
                *s -= &row.coeffs[j] * &y;
            }
            y += 1;
        }
    }
}

impl Polytope {
    /// All points of `(1/den)·Z^dim` in the polytope, in lexicographic order.
    /// The first coordinate's range is split across worker threads.
    pub fn lattice_points(&self, den: u64) -> Vec<RationalPoint> {
        assert!(den >= 1, "denominator must be positive");
        let den_int = BigInt::from(den);
        let Some(en) = Enumerator::new(self, &den_int) else {
            return Vec::new();
        };
        let n = en.lo.len();
        let scale = |y: Vec<BigInt>| {
            RationalPoint(
                y.into_iter()
                    .map(|v| BigRational::new(v, den_int.clone()))
                    .collect(),
            )
        };
        if n == 0 {
            return vec![RationalPoint(Vec::new())];
        }
        let zero_partial = vec![BigInt::zero(); en.rows.len()];
        let Some((lo, hi)) = en.range(0, &zero_partial) else {
            return Vec::new();
        };
        let firsts: Vec<BigInt> = num::range_inclusive(lo, hi).collect();
        let chunks: Vec<Vec<Vec<BigInt>>> = firsts
            .into_par_iter()
            .map(|y0| {
                let mut partial: Vec<BigInt> = en.rows.iter().map(|r| &r.coeffs[0] * &y0).collect();
                let mut prefix = vec![y0];
                let mut out = Vec::new();
                en.descend(1, &mut partial, &mut prefix, &mut out);
                out
            })
            .collect();
        chunks.into_iter().flatten().map(scale).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::tetrahedron;
    use super::*;

    #[test]
    fn tetrahedron_points() {
        let t = tetrahedron();
        assert_eq!(t.lattice_points(1), t.vertices().to_vec());
        assert_eq!(t.lattice_points(2).len(), 11);
    }

    #[test]
    fn cube_points() {
        assert_eq!(Polytope::unit_cube(3).lattice_points(1).len(), 8);
        assert_eq!(Polytope::unit_cube(2).lattice_points(3).len(), 16);
    }

    #[test]
    fn sorted_output() {
        let pts = tetrahedron().lattice_points(4);
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
    }
}

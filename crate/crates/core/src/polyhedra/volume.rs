//! Pulling triangulation, exact volume and centroid.

use std::collections::HashMap;

use num::{BigInt, BigRational, Signed, Zero};

use super::{Polytope, RationalPoint};
use crate::error::{Error, Result};
use crate::linalg;

struct Triangulator<'a> {
    points: &'a [RationalPoint],
    facets: Vec<Vec<usize>>,
    memo: HashMap<Vec<usize>, Vec<Vec<usize>>>,
}

impl Triangulator<'_> {
    fn affine_dim(&self, face: &[usize]) -> usize {
        let base = &self.points[face[0]];
        let diffs: Vec<Vec<BigRational>> = face[1..]
            .iter()
            .map(|&i| {
                self.points[i]
                    .0
                    .iter()
                    .zip(&base.0)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        if diffs.is_empty() {
            0
        } else {
            linalg::rank(&diffs)
        }
    }

    /// Simplices of a pulling triangulation of the face with vertex set `face`
    /// (sorted) and affine dimension `k`. Each simplex lists k+1 vertex indices.
    fn triangulate(&mut self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        if face.len() == k + 1 {
            return vec![face.to_vec()];
        }
        if let Some(t) = self.memo.get(face) {
            return t.clone();
        }
        let apex = face[0];
        let mut subfaces: Vec<Vec<usize>> = Vec::new();
        for f in &self.facets {
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|i| f.binary_search(i).is_ok())
                .collect();
            if sub.len() < k || sub.len() == face.len() || sub.binary_search(&apex).is_ok() {
                continue;
            }
            if subfaces.contains(&sub) {
                continue;
            }
            if self.affine_dim(&sub) == k - 1 {
                subfaces.push(sub);
            }
        }
        let mut out = Vec::new();
        for sub in subfaces {
            for mut s in self.triangulate(&sub, k - 1) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        self.memo.insert(face.to_vec(), out.clone());
        out
    }
}

impl Polytope {
    /// Pulling triangulation of a full-dimensional polytope: simplices as
    /// lists of `dim + 1` vertex indices.
    pub fn triangulation(&self) -> Result<Vec<Vec<usize>>> {
        let facet_rows = self.facet_system()?.rows().to_vec();
        let points = self.vertices();
        let facets = facet_rows
            .iter()
            .map(|r| {
                (0..points.len())
                    .filter(|&i| r.is_tight(&points[i]))
                    .collect()
            })
            .collect();
        let mut t = Triangulator {
            points,
            facets,
            memo: HashMap::new(),
        };
        let all: Vec<usize> = (0..points.len()).collect();
        Ok(t.triangulate(&all, self.dim()))
    }

    /// `|det|` of the edge matrix of a simplex (d! times its volume).
    fn simplex_det(&self, simplex: &[usize]) -> BigRational {
        let pts = self.vertices();
        let base = &pts[simplex[0]];
        let m: Vec<Vec<BigRational>> = simplex[1..]
            .iter()
            .map(|&i| pts[i].0.iter().zip(&base.0).map(|(a, b)| a - b).collect())
            .collect();
        linalg::determinant(&m).abs()
    }

    /// Exact Euclidean volume. Zero for the empty polytope.
    pub fn volume(&self) -> Result<BigRational> {
        if self.is_empty() {
            return Ok(BigRational::zero());
        }
        let simplices = self.triangulation()?;
        let total: BigRational = simplices.iter().map(|s| self.simplex_det(s)).sum();
        Ok(total / factorial(self.dim()))
    }

    /// Exact center of mass.
    pub fn centroid(&self) -> Result<RationalPoint> {
        if self.is_empty() {
            return Err(Error::NotFullDimensional {
                affine: 0,
                ambient: self.dim(),
            });
        }
        let d = self.dim();
        let pts = self.vertices();
        let mut weighted = vec![BigRational::zero(); d];
        let mut total = BigRational::zero();
        for s in self.triangulation()? {
            let w = self.simplex_det(&s);
            for &i in &s {
                for (acc, x) in weighted.iter_mut().zip(&pts[i].0) {
                    *acc += &w * x;
                }
            }
            total += w;
        }
        let denom = total * BigRational::from_integer(BigInt::from(d + 1));
        Ok(RationalPoint(
            weighted.into_iter().map(|x| x / &denom).collect(),
        ))
    }
}

fn factorial(n: usize) -> BigRational {
    BigRational::from_integer((1..=n).map(BigInt::from).product())
}

#[cfg(test)]
mod tests {
    use super::super::tests::tetrahedron;
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tetrahedron_volume_and_centroid() {
        let t = tetrahedron();
        assert_eq!(t.volume().unwrap(), q(1, 3));
        assert_eq!(
            t.centroid().unwrap(),
            RationalPoint::from_fractions(&[(1, 2), (1, 2), (1, 2)])
        );
    }

    #[test]
    fn cube_volume() {
        for d in 1..=5 {
            let c = Polytope::unit_cube(d);
            assert_eq!(c.volume().unwrap(), q(1, 1));
            assert_eq!(c.triangulation().unwrap().len(), (1..=d).product::<usize>());
            assert!(c.centroid().unwrap().0.iter().all(|x| *x == q(1, 2)));
        }
    }

    #[test]
    fn product_volume_and_centroid() {
        let t = tetrahedron();
        let tt = t.product(&t);
        assert_eq!(tt.volume().unwrap(), q(1, 9));
        assert!(tt.centroid().unwrap().0.iter().all(|x| *x == q(1, 2)));
    }

    #[test]
    fn simplex_volume() {
        assert_eq!(Polytope::standard_simplex(4).volume().unwrap(), q(1, 24));
    }
}

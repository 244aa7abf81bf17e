//! Face lattice queries: f-vector, smallest face through a point, the
//! 1-skeleton, and faces lying on the boundary of the unit cube.

use std::collections::BTreeSet;

use num::{BigRational, One, Zero};
use serde::Serialize;

use super::{Polytope, RationalPoint};
use crate::error::{Error, Result};
use crate::linalg;

/// A nonempty face, given by its dimension and its vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

impl Polytope {
    /// Vertex indices on each facet, in facet order.
    pub fn facet_incidence(&self) -> Result<Vec<Vec<usize>>> {
        let pts = self.vertices();
        Ok(self
            .facet_system()?
            .rows()
            .iter()
            .map(|r| (0..pts.len()).filter(|&i| r.is_tight(&pts[i])).collect())
            .collect())
    }

    fn vertex_set_dim(&self, set: &[usize]) -> usize {
        let pts = self.vertices();
        let base = &pts[set[0]];
        let diffs: Vec<Vec<BigRational>> = set[1..]
            .iter()
            .map(|&i| pts[i].0.iter().zip(&base.0).map(|(a, b)| a - b).collect())
            .collect();
        if diffs.is_empty() {
            0
        } else {
            linalg::rank(&diffs)
        }
    }

    /// Every nonempty face, the polytope itself included, sorted by
    /// `(dim, vertices)`.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let incidence = self.facet_incidence()?;
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        for f in &incidence {
            if !f.is_empty() && found.insert(f.clone()) {
                frontier.push(f.clone());
            }
        }
        while let Some(face) = frontier.pop() {
            for f in &incidence {
                let sub: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|i| f.binary_search(i).is_ok())
                    .collect();
                if !sub.is_empty() && sub.len() < face.len() && found.insert(sub.clone()) {
                    frontier.push(sub);
                }
            }
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|vertices| Face {
                dim: self.vertex_set_dim(&vertices),
                vertices,
            })
            .collect();
        faces.push(Face {
            dim: self.dim(),
            vertices: (0..self.vertices().len()).collect(),
        });
        faces.sort();
        Ok(faces)
    }

    /// Face counts by dimension `0..=dim`.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        let mut f = vec![0; self.dim() + 1];
        for face in self.faces()? {
            f[face.dim] += 1;
        }
        Ok(f)
    }

    /// Dimension of the smallest face containing `x`: ambient dimension minus
    /// the rank of the inequalities tight at `x`.
    pub fn face_dimension(&self, x: &RationalPoint) -> Result<usize> {
        if !self.contains_point(x)? {
            return Err(Error::PointOutside);
        }
        let tight: Vec<Vec<BigRational>> = self
            .halfspaces()
            .rows()
            .iter()
            .filter(|r| r.is_tight(x))
            .map(|r| linalg::to_rational(&r.coeffs))
            .collect();
        Ok(self.dim()
            - if tight.is_empty() {
                0
            } else {
                linalg::rank(&tight)
            })
    }

    /// Pairs of vertex indices spanning an edge of the polytope.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        let facets = self.facet_system()?.rows();
        let incidence = self.facet_incidence()?;
        let n = self.vertices().len();
        let d = self.dim();
        let mut on: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (f, verts) in incidence.iter().enumerate() {
            for &v in verts {
                on[v].push(f);
            }
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let common: Vec<usize> = on[i]
                    .iter()
                    .copied()
                    .filter(|f| on[j].binary_search(f).is_ok())
                    .collect();
                if common.len() + 1 < d {
                    continue;
                }
                let normals: Vec<Vec<BigRational>> = common
                    .iter()
                    .map(|&f| linalg::to_rational(&facets[f].coeffs))
                    .collect();
                let rank = if normals.is_empty() {
                    0
                } else {
                    linalg::rank(&normals)
                };
                if rank + 1 == d {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    /// Proper faces lying in some hyperplane `t_i = 0` or `t_i = 1`.
    pub fn boundary_on_cube(&self) -> Result<Vec<Face>> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        let pts = self.vertices();
        if !pts
            .iter()
            .flat_map(|p| &p.0)
            .all(|x| *x >= zero && *x <= one)
        {
            return Err(Error::NotInCube);
        }
        let d = self.dim();
        Ok(self
            .faces()?
            .into_iter()
            .filter(|f| f.dim < d)
            .filter(|f| {
                (0..d).any(|i| {
                    f.vertices.iter().all(|&v| pts[v].0[i] == zero)
                        || f.vertices.iter().all(|&v| pts[v].0[i] == one)
                })
            })
            .collect())
    }
}

//! Delzant smoothness relative to a chosen lattice.
//!
//! A full-dimensional polytope is Delzant in a lattice when every vertex meets
//! exactly `dim` edges and the primitive edge directions there form a basis
//! of the lattice (their coordinate matrix has determinant ±1).

use num::{BigInt, BigRational, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polyhedra::{Lattice, Polytope, RationalPoint};

/// Which built-in lattice to check against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeChoice {
    /// Z^dim.
    Standard,
    /// Lattice generated by all vertex differences.
    VertexDiff,
}

impl LatticeChoice {
    pub fn build(self, p: &Polytope) -> Result<Lattice> {
        match self {
            Self::Standard => Ok(Lattice::standard(p.dim())),
            Self::VertexDiff => vertex_difference_lattice(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub vertex: RationalPoint,
    #[serde(serialize_with = "ser_int_rows")]
    pub directions: Vec<Vec<BigInt>>,
    /// `None` when the valence is wrong and the determinant test is skipped.
    #[serde(serialize_with = "ser_opt_int")]
    pub determinant: Option<BigInt>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DelzantReport {
    pub lattice: Lattice,
    pub per_vertex: Vec<VertexCheck>,
    pub valence_ok: bool,
    pub overall: bool,
}

fn ser_int_rows<S: serde::Serializer>(
    rows: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    strings.serialize(s)
}

fn ser_opt_int<S: serde::Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    x.as_ref().map(ToString::to_string).serialize(s)
}

fn directions_from(
    p: &Polytope,
    vertex: usize,
    neighbours: &[usize],
    lattice: &Lattice,
) -> Vec<Vec<BigInt>> {
    let pts = p.vertices();
    let v = &pts[vertex];
    let mut dirs: Vec<Vec<BigInt>> = neighbours
        .iter()
        .map(|&w| {
            let diff: Vec<BigRational> = pts[w].0.iter().zip(&v.0).map(|(a, b)| a - b).collect();
            linalg::primitive_integer(&lattice.coordinates(&diff))
        })
        .collect();
    dirs.sort();
    dirs
}

fn neighbour_lists(p: &Polytope) -> Result<Vec<Vec<usize>>> {
    let mut nbrs = vec![Vec::new(); p.vertices().len()];
    for (i, j) in p.edges()? {
        nbrs[i].push(j);
        nbrs[j].push(i);
    }
    Ok(nbrs)
}

/// Primitive directions of the edges leaving `v`, in lattice coordinates,
/// sorted lexicographically.
pub fn edge_directions_at_vertex(
    p: &Polytope,
    v: &RationalPoint,
    lattice: &Lattice,
) -> Result<Vec<Vec<BigInt>>> {
    if lattice.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: lattice.dim(),
        });
    }
    let idx = p
        .vertices()
        .binary_search(v)
        .map_err(|_| Error::NotAVertex)?;
    let nbrs = neighbour_lists(p)?;
    Ok(directions_from(p, idx, &nbrs[idx], lattice))
}

pub fn is_delzant(p: &Polytope, lattice: &Lattice) -> Result<DelzantReport> {
    let d = p.dim();
    if lattice.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: lattice.dim(),
        });
    }
    let nbrs = neighbour_lists(p)?;
    let per_vertex: Vec<VertexCheck> = p
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let directions = directions_from(p, i, &nbrs[i], lattice);
            let determinant = (directions.len() == d).then(|| {
                let m: Vec<Vec<BigRational>> =
                    directions.iter().map(|r| linalg::to_rational(r)).collect();
                linalg::determinant(&m).to_integer()
            });
            let pass = determinant
                .as_ref()
                .is_some_and(|x| x.abs() == BigInt::from(1));
            VertexCheck {
                vertex: v.clone(),
                directions,
                determinant,
                pass,
            }
        })
        .collect();
    let valence_ok = per_vertex.iter().all(|c| c.directions.len() == d);
    let overall = valence_ok && per_vertex.iter().all(|c| c.pass);
    Ok(DelzantReport {
        lattice: lattice.clone(),
        per_vertex,
        valence_ok,
        overall,
    })
}

/// Lattice generated by all pairwise vertex differences, in Hermite normal form.
pub fn vertex_difference_lattice(p: &Polytope) -> Result<Lattice> {
    let pts = p.vertices();
    let Some(base) = pts.first() else {
        return Err(Error::DegenerateLattice);
    };
    let diffs: Vec<Vec<BigRational>> = pts[1..]
        .iter()
        .map(|q| q.0.iter().zip(&base.0).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return Err(Error::DegenerateLattice);
    }
    Lattice::from_generators(p.dim(), &diffs)
}

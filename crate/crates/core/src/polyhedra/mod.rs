//! Exact rational convex polytopes.
//!
//! A [`Polytope`] always carries both an inequality description and its exact
//! vertex set; constructors convert between them with the double description
//! method. All predicates are exact.

mod dd;
mod faces;
mod lattice_points;
mod volume;

use std::fmt;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;

pub use faces::Face;

/// A point with exact rational coordinates. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn from_integers(coords: &[i64]) -> Self {
        Self(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        Self(
            coords
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&rational_string(c))?;
        }
        seq.end()
    }
}

/// `p/q` with `q >= 1`, always including the denominator.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// One inequality `coeffs · t <= bound` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    pub coeffs: Vec<BigInt>,
    pub bound: BigInt,
}

impl Row {
    pub fn new(coeffs: Vec<BigInt>, bound: BigInt) -> Self {
        let mut all: Vec<BigInt> = coeffs.clone();
        all.push(bound);
        linalg::make_primitive(&mut all);
        let bound = all.pop().unwrap();
        Self { coeffs: all, bound }
    }

    pub fn from_i64(coeffs: &[i64], bound: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect(), bound.into())
    }

    pub fn slack(&self, x: &RationalPoint) -> BigRational {
        let lhs: BigRational = self
            .coeffs
            .iter()
            .zip(&x.0)
            .map(|(a, t)| t * BigRational::from_integer(a.clone()))
            .sum();
        BigRational::from_integer(self.bound.clone()) - lhs
    }

    pub fn is_satisfied(&self, x: &RationalPoint) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &RationalPoint) -> bool {
        self.slack(x).is_zero()
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && !self.bound.is_negative()
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Row", 2)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.serialize_field("bound", &self.bound.to_string())?;
        st.end()
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = a.abs();
            let gap = if first { "" } else { " " };
            let after = if first || sign.is_empty() { "" } else { " " };
            if mag.is_one() {
                write!(f, "{gap}{sign}{after}t{}", i + 1)?;
            } else {
                write!(f, "{gap}{sign}{after}{mag}*t{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " <= {}", self.bound)
    }
}

/// Canonical inequality system: gcd-normalized rows, sorted, no duplicates,
/// trivially true rows dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HalfspaceSystem {
    #[serde(rename = "dimension")]
    dim: usize,
    rows: Vec<Row>,
}

impl HalfspaceSystem {
    pub fn new(dim: usize, rows: Vec<Row>) -> Result<Self> {
        for r in &rows {
            if r.coeffs.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.coeffs.len(),
                });
            }
        }
        let mut rows: Vec<Row> = rows
            .into_iter()
            .map(|r| Row::new(r.coeffs, r.bound))
            .filter(|r| !r.is_trivial())
            .collect();
        rows.sort();
        rows.dedup();
        Ok(Self { dim, rows })
    }

    /// `0 <= t_i <= 1` for every coordinate.
    pub fn unit_cube(dim: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut lo = vec![BigInt::zero(); dim];
            lo[i] = -BigInt::one();
            rows.push(Row::new(lo, BigInt::zero()));
            let mut hi = vec![BigInt::zero(); dim];
            hi[i] = BigInt::one();
            rows.push(Row::new(hi, BigInt::one()));
        }
        Self::new(dim, rows).expect("dimensions agree")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Index of `row` (after normalization) in the canonical order.
    pub fn position(&self, row: &Row) -> Option<usize> {
        let row = Row::new(row.coeffs.clone(), row.bound.clone());
        self.rows.binary_search(&row).ok()
    }

    pub fn contains_point(&self, x: &RationalPoint) -> bool {
        self.rows.iter().all(|r| r.is_satisfied(x))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Self::new(
            self.dim,
            self.rows.iter().chain(&other.rows).cloned().collect(),
        )
    }

    /// Exact vertex set of the (bounded) region. Empty iff infeasible.
    pub fn vertices(&self) -> Result<VertexSystem> {
        let d = self.dim;
        let mut hom = Vec::with_capacity(self.rows.len() + 1);
        let mut x0 = vec![BigInt::zero(); d + 1];
        x0[0] = BigInt::one();
        hom.push(x0);
        for r in &self.rows {
            let mut h = Vec::with_capacity(d + 1);
            h.push(r.bound.clone());
            h.extend(r.coeffs.iter().map(|a| -a));
            hom.push(h);
        }
        let rays = dd::extreme_rays(d + 1, &hom).map_err(|_| Error::Unbounded)?;
        let (finite, recession): (Vec<_>, Vec<_>) =
            rays.into_iter().partition(|r| r[0].is_positive());
        if finite.is_empty() {
            return Ok(VertexSystem::new(d, Vec::new()));
        }
        if !recession.is_empty() {
            return Err(Error::Unbounded);
        }
        let points = finite
            .into_iter()
            .map(|r| {
                let w = &r[0];
                RationalPoint(
                    r[1..]
                        .iter()
                        .map(|x| BigRational::new(x.clone(), w.clone()))
                        .collect(),
                )
            })
            .collect();
        Ok(VertexSystem::new(d, points))
    }
}

impl fmt::Display for HalfspaceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Canonical point set: sorted lexicographically, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSystem {
    #[serde(rename = "dimension")]
    dim: usize,
    points: Vec<RationalPoint>,
}

impl VertexSystem {
    pub fn new(dim: usize, mut points: Vec<RationalPoint>) -> Self {
        points.sort();
        points.dedup();
        Self { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Affine dimension of the point set, `None` when empty.
    pub fn affine_dimension(&self) -> Option<usize> {
        let base = self.points.first()?;
        let diffs: Vec<Vec<BigRational>> = self.points[1..]
            .iter()
            .map(|p| p.0.iter().zip(&base.0).map(|(a, b)| a - b).collect())
            .collect();
        Some(if diffs.is_empty() {
            0
        } else {
            linalg::rank(&diffs)
        })
    }

    /// Irredundant facet inequalities of the convex hull. The hull must be
    /// full-dimensional.
    pub fn facets(&self) -> Result<HalfspaceSystem> {
        let d = self.dim;
        let affine = self.affine_dimension().unwrap_or(0);
        if self.points.is_empty() || affine < d {
            return Err(Error::NotFullDimensional { affine, ambient: d });
        }
        // Valid inequalities (b, a) with a·v <= b form a pointed cone whose
        // extreme rays are the facets.
        let rows: Vec<Vec<BigInt>> = self
            .points
            .iter()
            .map(|p| {
                let scaled = scale_to_integers(p);
                let mut row = Vec::with_capacity(d + 1);
                row.push(scaled.1);
                row.extend(scaled.0.into_iter().map(|x| -x));
                row
            })
            .collect();
        let rays = dd::extreme_rays(d + 1, &rows)
            .map_err(|_| Error::NotFullDimensional { affine, ambient: d })?;
        let facet_rows = rays
            .into_iter()
            .map(|r| Row::new(r[1..].to_vec(), r[0].clone()))
            .collect();
        HalfspaceSystem::new(d, facet_rows)
    }
}

/// Writes `p` as `u / m` with integer `u` and positive `m`; returns `(u, m)`.
pub(crate) fn scale_to_integers(p: &RationalPoint) -> (Vec<BigInt>, BigInt) {
    use num::Integer;
    let m = p.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let u = p.0.iter().map(|x| x.numer() * (&m / x.denom())).collect();
    (u, m)
}

/// Full-rank lattice given by the columns of a rational basis matrix.
/// Equality compares the lattices as sets, not their bases.
#[derive(Debug, Clone)]
pub struct Lattice {
    basis: Vec<Vec<BigRational>>,
}

impl Lattice {
    /// `basis` is row-major; its columns are the generators.
    pub fn new(basis: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = basis.len();
        if basis.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(
                "lattice basis must be square".into(),
            ));
        }
        if linalg::determinant(&basis).is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(Self { basis })
    }

    /// Lattice generated by the given vectors.
    pub fn from_generators(dim: usize, generators: &[Vec<BigRational>]) -> Result<Self> {
        let points: Vec<RationalPoint> = generators
            .iter()
            .map(|g| RationalPoint(g.clone()))
            .collect();
        let m = points.iter().fold(BigInt::one(), |acc, p| {
            num::Integer::lcm(&acc, &scale_to_integers(p).1)
        });
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| (x * BigRational::from_integer(m.clone())).to_integer())
                    .collect()
            })
            .collect();
        let hnf = linalg::hermite_normal_form(&rows);
        if hnf.len() < dim {
            return Err(Error::DegenerateLattice);
        }
        // HNF rows are the generators; store them as columns.
        let columns: Vec<Vec<BigRational>> = hnf
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::new(x.clone(), m.clone()))
                    .collect()
            })
            .collect();
        Self::new(linalg::transpose(&columns))
    }

    pub fn standard(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Row-major basis matrix; the generators are its columns.
    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    /// Generators as vectors.
    pub fn generators(&self) -> Vec<Vec<BigRational>> {
        linalg::transpose(&self.basis)
    }

    /// Absolute determinant: covolume relative to the standard lattice.
    pub fn covolume(&self) -> BigRational {
        linalg::determinant(&self.basis).abs()
    }

    /// Coordinates of `v` in this basis.
    pub fn coordinates(&self, v: &[BigRational]) -> Vec<BigRational> {
        linalg::solve(&self.basis, v).expect("basis is nonsingular")
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).iter().all(BigRational::is_integer)
    }

    /// Image lattice under the linear map `m` (row-major).
    pub fn transform(&self, m: &[Vec<BigRational>]) -> Result<Self> {
        let basis = mat_mul(m, &self.basis);
        Self::new(basis)
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self.generators().iter().all(|g| other.contains(g))
            && other.generators().iter().all(|g| self.contains(g))
    }
}

impl Eq for Lattice {}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens: Vec<RationalPoint> = self.generators().into_iter().map(RationalPoint).collect();
        let mut st = s.serialize_struct("Lattice", 3)?;
        st.serialize_field("dimension", &self.dim())?;
        st.serialize_field("generators", &gens)?;
        st.serialize_field("covolume", &rational_string(&self.covolume()))?;
        st.end()
    }
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Bounded convex polytope with both representations present.
#[derive(Debug, Clone)]
pub struct Polytope {
    h: HalfspaceSystem,
    v: VertexSystem,
    facets: OnceLock<HalfspaceSystem>,
}

impl Polytope {
    pub fn from_halfspaces(h: HalfspaceSystem) -> Result<Self> {
        let v = h.vertices()?;
        Ok(Self {
            h,
            v,
            facets: OnceLock::new(),
        })
    }

    /// Convex hull of full-dimensional point set.
    pub fn from_vertices(v: VertexSystem) -> Result<Self> {
        let h = v.facets()?;
        // Drop non-extreme input points.
        let extreme = h.vertices()?;
        let facets = OnceLock::new();
        let _ = facets.set(h.clone());
        Ok(Self {
            h,
            v: extreme,
            facets,
        })
    }

    pub fn unit_cube(dim: usize) -> Self {
        Self::from_halfspaces(HalfspaceSystem::unit_cube(dim)).expect("cube is bounded")
    }

    /// Convex hull of the origin and the unit vectors.
    pub fn standard_simplex(dim: usize) -> Self {
        let mut points = vec![RationalPoint(vec![BigRational::zero(); dim])];
        for i in 0..dim {
            let mut p = vec![BigRational::zero(); dim];
            p[i] = BigRational::one();
            points.push(RationalPoint(p));
        }
        Self::from_vertices(VertexSystem::new(dim, points)).expect("simplex is full-dimensional")
    }

    pub fn dim(&self) -> usize {
        self.h.dim
    }

    /// The defining inequality system (possibly redundant).
    pub fn halfspaces(&self) -> &HalfspaceSystem {
        &self.h
    }

    pub fn vertex_system(&self) -> &VertexSystem {
        &self.v
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.v.points
    }

    pub fn is_empty(&self) -> bool {
        self.v.points.is_empty()
    }

    pub fn affine_dimension(&self) -> Option<usize> {
        self.v.affine_dimension()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dimension() == Some(self.dim())
    }

    fn require_full_dimensional(&self) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::NotFullDimensional {
                affine: self.affine_dimension().unwrap_or(0),
                ambient: self.dim(),
            })
        }
    }

    /// Irredundant facet system (full-dimensional polytopes only).
    pub fn facet_system(&self) -> Result<&HalfspaceSystem> {
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        self.require_full_dimensional()?;
        let f = self.v.facets()?;
        Ok(self.facets.get_or_init(|| f))
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other,
            });
        }
        Ok(())
    }

    pub fn contains_point(&self, x: &RationalPoint) -> Result<bool> {
        self.check_dim(x.dim())?;
        Ok(self.h.contains_point(x))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Polytope) -> Result<bool> {
        self.check_dim(other.dim())?;
        Ok(other.vertices().iter().all(|v| self.h.contains_point(v)))
    }

    /// Equality as point sets (mutual containment).
    pub fn equals(&self, other: &Polytope) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        Self::from_halfspaces(self.h.union(&other.h)?)
    }

    /// Cartesian product; coordinates of `self` come first.
    pub fn product(&self, other: &Polytope) -> Polytope {
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 + d2;
        let pad = |r: &Row, offset: usize| {
            let mut coeffs = vec![BigInt::zero(); d];
            for (i, a) in r.coeffs.iter().enumerate() {
                coeffs[offset + i] = a.clone();
            }
            Row::new(coeffs, r.bound.clone())
        };
        let rows = self
            .h
            .rows
            .iter()
            .map(|r| pad(r, 0))
            .chain(other.h.rows.iter().map(|r| pad(r, d1)))
            .collect();
        let h = HalfspaceSystem::new(d, rows).expect("padded rows have dimension d");
        let mut points = Vec::with_capacity(self.v.len() * other.v.len());
        for p in self.vertices() {
            for q in other.vertices() {
                points.push(RationalPoint(p.0.iter().chain(&q.0).cloned().collect()));
            }
        }
        Polytope {
            h,
            v: VertexSystem::new(d, points),
            facets: OnceLock::new(),
        }
    }

    /// Moves coordinate `i` to position `perm[i]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Result<Polytope> {
        let d = self.dim();
        self.check_dim(perm.len())?;
        let mut seen = vec![false; d];
        for &p in perm {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        let permute = |src: &[BigInt]| {
            let mut out = vec![BigInt::zero(); d];
            for (i, x) in src.iter().enumerate() {
                out[perm[i]] = x.clone();
            }
            out
        };
        let rows = self
            .h
            .rows
            .iter()
            .map(|r| Row::new(permute(&r.coeffs), r.bound.clone()))
            .collect();
        let points = self
            .vertices()
            .iter()
            .map(|p| {
                let mut out = vec![BigRational::zero(); d];
                for (i, x) in p.0.iter().enumerate() {
                    out[perm[i]] = x.clone();
                }
                RationalPoint(out)
            })
            .collect();
        Ok(Polytope {
            h: HalfspaceSystem::new(d, rows)?,
            v: VertexSystem::new(d, points),
            facets: OnceLock::new(),
        })
    }

    /// Image under an invertible linear map `m` (row-major, acting on columns).
    pub fn apply_linear(&self, m: &[Vec<BigRational>]) -> Result<Polytope> {
        let d = self.dim();
        self.check_dim(m.len())?;
        let inv = linalg::inverse(m)
            .ok_or_else(|| Error::InvalidArgument("linear map is singular".into()))?;
        // a·x <= b  becomes  (a M^-1)·y <= b.
        let rows = self
            .h
            .rows
            .iter()
            .map(|r| {
                let a: Vec<BigRational> = (0..d)
                    .map(|j| {
                        r.coeffs
                            .iter()
                            .zip(&inv)
                            .map(|(c, irow)| BigRational::from_integer(c.clone()) * &irow[j])
                            .sum()
                    })
                    .collect();
                let mut full = a;
                full.push(BigRational::from_integer(r.bound.clone()));
                let ints = linalg::primitive_integer(&full);
                // primitive_integer keeps orientation since it scales by a positive factor.
                let (coeffs, bound) = ints.split_at(d);
                Row::new(coeffs.to_vec(), bound[0].clone())
            })
            .collect();
        let points = self
            .vertices()
            .iter()
            .map(|p| {
                RationalPoint(
                    m.iter()
                        .map(|row| row.iter().zip(&p.0).map(|(a, x)| a * x).sum())
                        .collect(),
                )
            })
            .collect();
        Ok(Polytope {
            h: HalfspaceSystem::new(d, rows)?,
            v: VertexSystem::new(d, points),
            facets: OnceLock::new(),
        })
    }

    /// Smallest box `[lo_i, hi_i]` containing the polytope; `None` when empty.
    pub fn bounding_box(&self) -> Option<Vec<(BigRational, BigRational)>> {
        let first = self.vertices().first()?;
        let mut bbox: Vec<(BigRational, BigRational)> =
            first.0.iter().map(|x| (x.clone(), x.clone())).collect();
        for p in &self.vertices()[1..] {
            for (b, x) in bbox.iter_mut().zip(&p.0) {
                if x < &b.0 {
                    b.0 = x.clone();
                }
                if x > &b.1 {
                    b.1 = x.clone();
                }
            }
        }
        Some(bbox)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetrahedron() -> Polytope {
        let rows = vec![
            Row::from_i64(&[1, -1, -1], 0),
            Row::from_i64(&[-1, 1, -1], 0),
            Row::from_i64(&[-1, -1, 1], 0),
            Row::from_i64(&[1, 1, 1], 2),
        ];
        let h = HalfspaceSystem::new(3, rows)
            .unwrap()
            .union(&HalfspaceSystem::unit_cube(3))
            .unwrap();
        Polytope::from_halfspaces(h).unwrap()
    }

    fn pts(v: &[&[i64]]) -> Vec<RationalPoint> {
        v.iter().map(|p| RationalPoint::from_integers(p)).collect()
    }

    #[test]
    fn tetrahedron_vertices() {
        let t = tetrahedron();
        assert_eq!(
            t.vertices(),
            pts(&[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).as_slice()
        );
    }

    #[test]
    fn cube_and_infeasible() {
        assert_eq!(Polytope::unit_cube(3).vertices().len(), 8);
        let h = HalfspaceSystem::new(1, vec![Row::from_i64(&[1], 0), Row::from_i64(&[-1], -1)])
            .unwrap();
        assert!(h.vertices().unwrap().is_empty());
    }

    #[test]
    fn unbounded_is_an_error() {
        let h = HalfspaceSystem::new(
            2,
            vec![Row::from_i64(&[-1, 0], 0), Row::from_i64(&[0, -1], 0)],
        )
        .unwrap();
        assert_eq!(h.vertices().unwrap_err(), Error::Unbounded);
        let h = HalfspaceSystem::new(
            2,
            vec![Row::from_i64(&[-1, 0], 0), Row::from_i64(&[1, 0], 1)],
        )
        .unwrap();
        assert_eq!(h.vertices().unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn tetrahedron_facets() {
        let f = tetrahedron().vertex_system().facets().unwrap();
        let expected = HalfspaceSystem::new(
            3,
            vec![
                Row::from_i64(&[1, -1, -1], 0),
                Row::from_i64(&[-1, 1, -1], 0),
                Row::from_i64(&[-1, -1, 1], 0),
                Row::from_i64(&[1, 1, 1], 2),
            ],
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn simplex_and_square_facets() {
        for d in 1..=5 {
            let s = Polytope::standard_simplex(d);
            assert_eq!(s.facet_system().unwrap().rows().len(), d + 1);
        }
        let sq = VertexSystem::new(2, pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]));
        assert_eq!(sq.facets().unwrap().rows().len(), 4);
    }

    #[test]
    fn lower_dimensional_facets_rejected() {
        let seg = VertexSystem::new(2, pts(&[&[0, 0], &[1, 1]]));
        assert!(matches!(
            seg.facets().unwrap_err(),
            Error::NotFullDimensional {
                affine: 1,
                ambient: 2
            }
        ));
    }

    #[test]
    fn product_counts() {
        let t = tetrahedron();
        let tt = t.product(&t);
        assert_eq!(tt.vertices().len(), 16);
        assert_eq!(tt.dim(), 6);
        let recomputed = Polytope::from_halfspaces(tt.halfspaces().clone()).unwrap();
        assert_eq!(recomputed.vertex_system(), tt.vertex_system());
    }

    #[test]
    fn permutation_symmetry_of_tetrahedron() {
        let t = tetrahedron();
        for perm in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            assert!(t.equals(&t.apply_permutation(&perm).unwrap()).unwrap());
        }
        assert!(t.apply_permutation(&[0, 0, 1]).is_err());
    }

    #[test]
    fn containment_and_mismatch() {
        let t = tetrahedron();
        let c = Polytope::unit_cube(3);
        assert!(c.contains(&t).unwrap());
        assert!(!t.contains(&c).unwrap());
        assert!(!t.equals(&c).unwrap());
        assert!(t.contains(&Polytope::unit_cube(2)).is_err());
        let half = RationalPoint::from_fractions(&[(1, 2), (1, 2), (1, 2)]);
        assert!(t.contains_point(&half).unwrap());
        assert!(!t
            .contains_point(&RationalPoint::from_integers(&[1, 1, 1]))
            .unwrap());
    }

    #[test]
    fn intersection_of_cube_with_tetrahedron_rows() {
        let t = tetrahedron();
        let i = Polytope::unit_cube(3).intersect(&t).unwrap();
        assert!(i.equals(&t).unwrap());
    }

    #[test]
    fn lattice_from_generators() {
        let t = tetrahedron();
        let diffs: Vec<Vec<BigRational>> = t.vertices()[1..].iter().map(|p| p.0.clone()).collect();
        let l = Lattice::from_generators(3, &diffs).unwrap();
        assert_eq!(l.covolume(), BigRational::from_integer(2.into()));
        assert!(l.contains(&RationalPoint::from_integers(&[1, 1, 0]).0));
        assert!(!l.contains(&RationalPoint::from_integers(&[1, 0, 0]).0));
        // Same lattice from a different basis.
        let other = Lattice::new(linalg::transpose(&diffs)).unwrap();
        assert_eq!(l, other);
        assert_ne!(l, Lattice::standard(3));
    }

    #[test]
    fn row_display() {
        let r = Row::from_i64(&[2, -1, 0, 1], 4);
        assert_eq!(r.to_string(), "2*t1 - t2 + t4 <= 4");
        assert_eq!(Row::from_i64(&[-1, 0], 0).to_string(), "-t1 <= 0");
    }
}

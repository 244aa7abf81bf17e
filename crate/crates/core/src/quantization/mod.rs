//! Level-k point counts on moment polytopes and the Verlinde oracles they are
//! checked against.
//!
//! Two counting modes are exposed. `Raw` counts every point of
//! `(1/2k)·Z^n` in Δ_Γ. `Parity` counts points `t ∈ (1/k)·Z^n` in Δ_Γ whose
//! integer labels `m_e = k·t_e` have an even sum at every trinion; these are
//! the admissible SU(2) level-k labelings and reproduce the Verlinde numbers.

mod interval;

use std::collections::HashMap;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::TrivalentGraph;
use crate::moment::MomentPolytope;
use crate::polyhedra::{rational_string, RationalPoint};

pub(crate) use interval::format_significant;
use interval::{sin_pi_fraction, Interval};

/// Default ceiling on the closed-form oracle's working precision, in bits.
pub const DEFAULT_ORACLE_BITS: u32 = 4096;
const START_BITS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Raw,
    Parity,
}

/// Labels admissible at one trinion: triangle inequalities, even sum, sum <= 2k.
fn admissible(a: u32, b: u32, c: u32, k: u32) -> bool {
    a <= b + c && b <= a + c && c <= a + b && (a + b + c) % 2 == 0 && a + b + c <= 2 * k
}

/// Points of `(1/2k)·Z^n ∩ Δ_Γ`.
pub fn bs_points_raw(mp: &MomentPolytope, k: u32) -> Vec<RationalPoint> {
    assert!(k >= 1, "level must be positive");
    mp.polytope().lattice_points(2 * u64::from(k))
}

struct Labeler<'a> {
    graph: &'a TrivalentGraph,
    k: u32,
    /// Vertices whose last incident edge (in edge order) is `e`.
    completes: Vec<Vec<usize>>,
}

impl Labeler<'_> {
    fn new(graph: &TrivalentGraph, k: u32) -> Labeler<'_> {
        let mut completes = vec![Vec::new(); graph.edges().len()];
        for v in 0..graph.vertices().len() {
            let last = *graph.incident_edges(v).iter().max().unwrap();
            completes[last].push(v);
        }
        Labeler {
            graph,
            k,
            completes,
        }
    }

    fn vertex_ok(&self, v: usize, labels: &[u32]) -> bool {
        let inc = self.graph.incident_edges(v);
        admissible(labels[inc[0]], labels[inc[1]], labels[inc[2]], self.k)
    }

    fn descend(&self, e: usize, labels: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if e == labels.len() {
            out.push(labels.clone());
            return;
        }
        for m in 0..=self.k {
            labels[e] = m;
            if self.completes[e].iter().all(|&v| self.vertex_ok(v, labels)) {
                self.descend(e + 1, labels, out);
            }
        }
        labels[e] = 0;
    }
}

/// Admissible integer labelings `m: E -> {0..k}` by depth-first search in
/// edge order, checking each trinion once its last edge is labelled.
pub fn admissible_labelings(graph: &TrivalentGraph, k: u32) -> Vec<Vec<u32>> {
    let n = graph.edges().len();
    if n == 0 {
        return vec![Vec::new()];
    }
    let lab = Labeler::new(graph, k);
    let chunks: Vec<Vec<Vec<u32>>> = (0..=k)
        .into_par_iter()
        .map(|m0| {
            let mut labels = vec![0; n];
            labels[0] = m0;
            let mut out = Vec::new();
            if lab.completes[0].iter().all(|&v| lab.vertex_ok(v, &labels)) {
                lab.descend(1, &mut labels, &mut out);
            }
            out
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

/// Points `t = m/k` of Δ_Γ with even label sum at every trinion.
pub fn bs_points_parity(mp: &MomentPolytope, k: u32) -> Vec<RationalPoint> {
    assert!(k >= 1, "level must be positive");
    let den = BigInt::from(k);
    admissible_labelings(mp.graph(), k)
        .into_iter()
        .map(|m| {
            RationalPoint(
                m.into_iter()
                    .map(|x| BigRational::new(BigInt::from(x), den.clone()))
                    .collect(),
            )
        })
        .collect()
}

/// Number of admissible labelings by dynamic programming over a vertex
/// elimination order. The table is keyed by the labels of edges with exactly
/// one processed endpoint; the polytope is never built.
pub fn fusion_count(graph: &TrivalentGraph, k: u32) -> u128 {
    let n = graph.vertices().len();
    // BFS order keeps the frontier narrow.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in graph.incident_edges(v) {
                let (a, b) = graph.edges()[e].ends;
                let w = if a == v { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut frontier: Vec<usize> = Vec::new();
    let mut table: HashMap<Vec<u32>, u128> = HashMap::from([(Vec::new(), 1)]);
    for v in order {
        let inc = graph.incident_edges(v);
        let mut distinct: Vec<usize> = inc.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let fresh: Vec<usize> = distinct
            .iter()
            .copied()
            .filter(|e| !frontier.contains(e))
            .collect();
        // Fresh non-loop edges stay open; frontier edges at v close.
        let mut next_frontier: Vec<usize> = frontier
            .iter()
            .copied()
            .filter(|e| !inc.contains(e))
            .collect();
        next_frontier.extend(
            fresh
                .iter()
                .copied()
                .filter(|&e| !graph.edges()[e].is_loop()),
        );

        let mut next: HashMap<Vec<u32>, u128> = HashMap::new();
        for (state, count) in &table {
            let mut assignment: HashMap<usize, u32> = frontier
                .iter()
                .copied()
                .zip(state.iter().copied())
                .collect();
            let mut choice = vec![0u32; fresh.len()];
            loop {
                for (e, &m) in fresh.iter().zip(&choice) {
                    assignment.insert(*e, m);
                }
                if admissible(
                    assignment[&inc[0]],
                    assignment[&inc[1]],
                    assignment[&inc[2]],
                    k,
                ) {
                    let key: Vec<u32> = next_frontier.iter().map(|e| assignment[e]).collect();
                    *next.entry(key).or_insert(0) += count;
                }
                // Odometer over fresh labels.
                let mut i = 0;
                while i < choice.len() && choice[i] == k {
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
                choice[i] += 1;
            }
        }
        frontier = next_frontier;
        table = next;
    }
    table.values().sum()
}

/// ((k+2)/2)^(g-1) · Σ_{j=1}^{k+1} sin(jπ/(k+2))^(2-2g), certified to the
/// nearest integer with outward-rounded interval arithmetic. Precision starts
/// at 64 bits and doubles up to `max_bits`.
pub fn verlinde_closed_form_with_cap(g: u32, k: u32, max_bits: u32) -> Result<u128> {
    if g < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "Verlinde formula needs g >= 2 and k >= 1, got g = {g}, k = {k}"
        )));
    }
    let mut bits = START_BITS;
    loop {
        if let Some(v) = verlinde_at_precision(g, k, bits) {
            return Ok(v);
        }
        if bits >= max_bits {
            return Err(Error::PrecisionExhausted(bits));
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// Same as [`verlinde_closed_form_with_cap`] with the cap read from
/// `DELZANT_ORACLE_BITS` (default 4096).
pub fn verlinde_closed_form(g: u32, k: u32) -> Result<u128> {
    verlinde_closed_form_with_cap(g, k, oracle_bits_from_env())
}

pub fn oracle_bits_from_env() -> u32 {
    std::env::var("DELZANT_ORACLE_BITS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&b| b >= START_BITS)
        .unwrap_or(DEFAULT_ORACLE_BITS)
}

fn verlinde_at_precision(g: u32, k: u32, bits: u32) -> Option<u128> {
    let n = u64::from(k) + 2;
    let mut sum = Interval::from_int(0);
    for j in 1..n {
        let r = j.min(n - j);
        let term = if 2 * r == n {
            Interval::from_int(1)
        } else {
            let s = sin_pi_fraction(r, n, bits)?;
            s.mul(&s, bits).recip(bits)?.powi(g - 1, bits)
        };
        sum = sum.add(&term, bits);
    }
    let prefactor = num::pow(
        BigRational::new(BigInt::from(n), BigInt::from(2)),
        (g - 1) as usize,
    );
    let value = sum.scale(&prefactor, bits);
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let nearest = value.midpoint().round();
    let certified = value.lo > &nearest - &quarter && value.hi < &nearest + &quarter;
    if !certified {
        return None;
    }
    nearest.to_integer().to_u128()
}

/// Closed-form value for a possibly disconnected graph: the product over its
/// connected components.
pub fn verlinde_for_graph(graph: &TrivalentGraph, k: u32) -> Result<u128> {
    graph
        .connected_components()
        .iter()
        .map(|c| verlinde_closed_form(c.genus() as u32, k))
        .try_fold(1u128, |acc, v| Ok(acc * v?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub graph: String,
    pub genus: usize,
    pub level: u32,
    pub mode: CountMode,
    pub count: u128,
    pub oracle_closed_form: u128,
    pub oracle_fusion: u128,
    pub matches_closed_form: bool,
    pub matches_fusion: bool,
    /// Set in raw mode when the count differs from the Verlinde number.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn count(mp: &MomentPolytope, k: u32, mode: CountMode) -> Result<CountReport> {
    if k < 1 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let graph = mp.graph();
    let count = match mode {
        CountMode::Raw => bs_points_raw(mp, k).len(),
        CountMode::Parity => bs_points_parity(mp, k).len(),
    } as u128;
    let oracle_closed_form = verlinde_for_graph(graph, k)?;
    let oracle_fusion = fusion_count(graph, k);
    let matches_closed_form = count == oracle_closed_form;
    let note = (mode == CountMode::Raw && !matches_closed_form).then(|| {
        format!(
            "raw grid (1/{})Z^{} count {count} differs from the Verlinde number {oracle_closed_form}",
            2 * k,
            graph.edges().len()
        )
    });
    Ok(CountReport {
        graph: graph.name().to_string(),
        genus: graph.genus(),
        level: k,
        mode,
        count,
        oracle_closed_form,
        oracle_fusion,
        matches_closed_form,
        matches_fusion: count == oracle_fusion,
        note,
    })
}

/// Bernoulli number B_n (with B_1 = +1/2) by the Akiyama–Tanigawa algorithm.
fn bernoulli(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = BigRational::from_integer(BigInt::from(j)) * diff;
        }
    }
    a[0].clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub graph: String,
    pub genus: usize,
    #[serde(serialize_with = "ser_rational")]
    pub computed: BigRational,
    /// `computed` to 30 significant digits.
    pub computed_decimal: String,
    /// 2ζ(2g−2)/(2π)^(g−1) to 30 significant digits.
    pub reference_value: String,
    /// computed / reference to 30 significant digits.
    pub ratio: String,
    pub ratio_is_one: bool,
}

fn ser_rational<S: serde::Serializer>(
    x: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(x))
}

/// Enclosure of 2ζ(2g−2)/(2π)^(g−1) = |B_{2g−2}|·(2π)^(g−1)/(2g−2)!.
fn reference_volume(g: usize, bits: u32) -> Interval {
    let n = 2 * g - 2;
    let b = bernoulli(n);
    let b = if b < BigRational::zero() { -b } else { b };
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let two_pi = interval::pi(bits).scale(&BigRational::from_integer(2.into()), bits);
    two_pi
        .powi((g - 1) as u32, bits)
        .scale(&(b / BigRational::from_integer(fact)), bits)
}

/// Exact volume of Δ_Γ next to the closed-form symplectic volume constant.
/// For a disconnected graph the constant is the product over components.
pub fn volume_report(graph: &TrivalentGraph) -> Result<VolumeReport> {
    let mp = crate::moment::moment_polytope(graph)?;
    let computed = mp.polytope().volume()?;
    let bits = 256;
    let reference = graph
        .connected_components()
        .iter()
        .map(|c| reference_volume(c.genus(), bits))
        .fold(Interval::from_int(1), |acc, r| acc.mul(&r, bits));
    let ratio =
        Interval::exact(computed.clone()).mul(&reference.recip(bits).expect("positive"), bits);
    let one = BigRational::one();
    Ok(VolumeReport {
        graph: graph.name().to_string(),
        genus: graph.genus(),
        computed_decimal: format_significant(&computed, 30),
        reference_value: format_significant(&reference.midpoint(), 30),
        ratio: format_significant(&ratio.midpoint(), 30),
        ratio_is_one: ratio.lo <= one && one <= ratio.hi,
        computed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{disjoint_union, k4, multi_theta, theta};
    use crate::moment::moment_polytope;

    #[test]
    fn closed_form_values() {
        assert_eq!(verlinde_closed_form(2, 1).unwrap(), 4);
        assert_eq!(verlinde_closed_form(2, 2).unwrap(), 10);
        assert_eq!(verlinde_closed_form(3, 2).unwrap(), 36);
        assert!(verlinde_closed_form(1, 2).is_err());
    }

    #[test]
    fn closed_form_precision_cap() {
        // 64 bits is plenty for small inputs; a tiny cap still works there.
        assert_eq!(verlinde_closed_form_with_cap(2, 3, 64).unwrap(), 20);
    }

    #[test]
    fn fusion_values() {
        assert_eq!(fusion_count(&theta(), 3), 20);
        assert_eq!(fusion_count(&k4(), 1), 8);
        assert_eq!(fusion_count(&multi_theta(4).unwrap(), 1), 16);
    }

    #[test]
    fn parity_points() {
        let t = moment_polytope(&theta()).unwrap();
        assert_eq!(bs_points_parity(&t, 1), t.polytope().vertices().to_vec());
        assert_eq!(bs_points_parity(&t, 2).len(), 10);
        let m3 = moment_polytope(&multi_theta(3).unwrap()).unwrap();
        assert_eq!(bs_points_parity(&m3, 1).len(), 8);
    }

    #[test]
    fn raw_points() {
        let t = moment_polytope(&theta()).unwrap();
        let pts = bs_points_raw(&t, 1);
        assert_eq!(pts.len(), 11);
        assert!(pts.contains(&RationalPoint::from_integers(&[0, 0, 0])));
        let tt = moment_polytope(&disjoint_union(&theta(), &theta())).unwrap();
        assert_eq!(bs_points_raw(&tt, 1).len(), 121);
    }

    #[test]
    fn raw_report_flags_mismatch() {
        let t = moment_polytope(&theta()).unwrap();
        let r = count(&t, 1, CountMode::Raw).unwrap();
        assert_eq!((r.count, r.oracle_closed_form), (11, 4));
        assert!(!r.matches_closed_form);
        assert!(r.note.is_some());
        let p = count(&t, 2, CountMode::Parity).unwrap();
        assert_eq!(
            (p.count, p.oracle_closed_form, p.oracle_fusion),
            (10, 10, 10)
        );
        assert!(p.note.is_none());
    }

    #[test]
    fn bernoulli_numbers() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(6), q(1, 42));
    }

    #[test]
    fn theta_volume_report() {
        let r = volume_report(&theta()).unwrap();
        assert_eq!(r.computed, BigRational::new(1.into(), 3.into()));
        assert_eq!(r.reference_value, "0.523598775598298873077107230547");
        assert!(!r.ratio_is_one);
        let rr = volume_report(&disjoint_union(&theta(), &theta())).unwrap();
        assert_eq!(rr.computed, BigRational::new(1.into(), 9.into()));
    }
}

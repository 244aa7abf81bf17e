use delzant_core::graphs::{self, TrivalentGraph};
use delzant_core::moment::{self, moment_polytope};
use delzant_core::polyhedra::{Lattice, Polytope, RationalPoint, VertexSystem};
use delzant_core::quantization;
use delzant_core::smoothness::{is_delzant, vertex_difference_lattice};
use delzant_core::verify::brute_force_lattice_points;
use delzant_core::Rational;
use proptest::prelude::*;

fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Trivalent multigraph on `n` vertices from a pairing of the `3n` half-edges.
fn pairing_graph(n: usize, half_edges: &[usize]) -> Option<TrivalentGraph> {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = half_edges
        .chunks(2)
        .enumerate()
        .map(|(i, p)| {
            (
                format!("e{i}"),
                vertices[p[0] / 3].clone(),
                vertices[p[1] / 3].clone(),
            )
        })
        .collect();
    let g = TrivalentGraph::new("random", vertices, edges).ok()?;
    g.is_connected().then_some(g)
}

fn graph_strategy(sizes: &'static [usize]) -> impl Strategy<Value = TrivalentGraph> {
    prop::sample::select(sizes)
        .prop_flat_map(|n| (Just(n), Just((0..3 * n).collect::<Vec<_>>()).prop_shuffle()))
        .prop_filter_map("disconnected", |(n, h)| pairing_graph(n, &h))
}

fn point_cloud(dim: usize) -> impl Strategy<Value = Vec<RationalPoint>> {
    prop::collection::vec(prop::collection::vec(0i64..5, dim), dim + 1..dim + 6).prop_map(|pts| {
        pts.iter()
            .map(|p| RationalPoint::from_integers(p))
            .collect()
    })
}

fn full_polytope(dim: usize) -> impl Strategy<Value = Polytope> {
    point_cloud(dim).prop_filter_map("lower dimensional", move |pts| {
        let vs = VertexSystem::new(dim, pts);
        (vs.affine_dimension() == Some(dim))
            .then(|| Polytope::from_vertices(vs).ok())
            .flatten()
    })
}

/// Product of elementary integer row operations: determinant ±1.
fn unimodular(dim: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec((0..dim, 0..dim, -2i64..=2, any::<bool>()), 1..6).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        for (i, j, c, swap) in ops {
            if swap {
                m.swap(i, j);
            } else if i != j {
                let rj = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(rj) {
                    *x += c * y;
                }
            }
        }
        m.into_iter()
            .map(|r| r.into_iter().map(rat).collect())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn vertex_facet_round_trip(p in prop_oneof![full_polytope(2), full_polytope(3)]) {
        let facets = p.vertex_system().facets().unwrap();
        prop_assert_eq!(&facets.vertices().unwrap(), p.vertex_system());
        let q = Polytope::from_halfspaces(facets).unwrap();
        prop_assert!(q.equals(&p).unwrap());
    }

    #[test]
    fn vertices_and_centroid_face_dimensions(p in prop_oneof![full_polytope(2), full_polytope(3)]) {
        for v in p.vertices() {
            prop_assert_eq!(p.face_dimension(v).unwrap(), 0);
        }
        let c = p.centroid().unwrap();
        prop_assert_eq!(p.face_dimension(&c).unwrap(), p.dim());
        prop_assert!(p.volume().unwrap() > rat(0));
    }

    #[test]
    fn lattice_points_match_brute_force(p in prop_oneof![full_polytope(2), full_polytope(3)], den in 1u64..=4) {
        prop_assert_eq!(p.lattice_points(den), brute_force_lattice_points(&p, den));
    }

    #[test]
    fn product_is_multiplicative(p in full_polytope(2), q in full_polytope(2), den in 1u64..=2) {
        let pq = p.product(&q);
        prop_assert_eq!(pq.volume().unwrap(), p.volume().unwrap() * q.volume().unwrap());
        prop_assert_eq!(
            pq.lattice_points(den).len(),
            p.lattice_points(den).len() * q.lattice_points(den).len()
        );
    }

    #[test]
    fn unimodular_maps_preserve_invariants(p in full_polytope(3), u in unimodular(3)) {
        let image = p.apply_linear(&u).unwrap();
        prop_assert_eq!(image.volume().unwrap(), p.volume().unwrap());
        prop_assert_eq!(image.lattice_points(1).len(), p.lattice_points(1).len());
        let std = Lattice::standard(3);
        prop_assert_eq!(
            is_delzant(&image, &std).unwrap().overall,
            is_delzant(&p, &std).unwrap().overall
        );
        let vd = vertex_difference_lattice(&p).unwrap();
        prop_assert_eq!(
            is_delzant(&image, &vd.transform(&u).unwrap()).unwrap().overall,
            is_delzant(&p, &vd).unwrap().overall
        );
        prop_assert_eq!(vertex_difference_lattice(&image).unwrap(), vd.transform(&u).unwrap());
    }

    #[test]
    fn edge_relabelling_permutes_coordinates(g in graph_strategy(&[2, 4, 6]), seed in any::<u64>()) {
        let m = g.edges().len();
        let mut sigma: Vec<usize> = (0..m).collect();
        let mut s = seed;
        for i in (1..m).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            sigma.swap(i, (s >> 33) as usize % (i + 1));
        }
        let edges = sigma
            .iter()
            .map(|&i| {
                let e = &g.edges()[i];
                (e.id.clone(), g.vertices()[e.ends.0].clone(), g.vertices()[e.ends.1].clone())
            })
            .collect();
        let h = TrivalentGraph::new("relabelled", g.vertices().to_vec(), edges).unwrap();
        let mut inv = vec![0; m];
        for (j, &i) in sigma.iter().enumerate() {
            inv[i] = j;
        }
        let pg = moment_polytope(&g).unwrap();
        let ph = moment_polytope(&h).unwrap();
        prop_assert!(pg.polytope().apply_permutation(&inv).unwrap().equals(ph.polytope()).unwrap());
    }

    #[test]
    fn cycle_space_points_are_vertices(g in graph_strategy(&[2, 4, 6])) {
        let mp = moment_polytope(&g).unwrap();
        let oracle = moment::cube_vertex_oracle(&g);
        prop_assert_eq!(oracle.len(), 1usize << g.genus());
        for p in &oracle {
            prop_assert!(mp.polytope().vertices().binary_search(p).is_ok());
        }
        prop_assert!(moment::trinion_projection_check(&mp));
    }

    #[test]
    fn automorphisms_fix_the_polytope(g in graph_strategy(&[2, 4, 6])) {
        let mp = moment_polytope(&g).unwrap();
        for perm in g.automorphism_generators() {
            prop_assert!(mp.polytope().apply_permutation(&perm).unwrap().equals(mp.polytope()).unwrap());
        }
    }

    #[test]
    fn counts_are_monotone_in_level(g in graph_strategy(&[2, 4])) {
        let mp = moment_polytope(&g).unwrap();
        let parity: Vec<usize> = (1..=3).map(|k| quantization::bs_points_parity(&mp, k).len()).collect();
        let raw: Vec<usize> = (1..=2).map(|k| quantization::bs_points_raw(&mp, k).len()).collect();
        prop_assert!(parity.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(raw.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(quantization::bs_points_parity(&mp, 1), moment::cube_vertex_oracle(&g));
    }

    #[test]
    fn parity_count_is_graph_independent(g in graph_strategy(&[2, 4]), k in 1u32..=3) {
        let mp = moment_polytope(&g).unwrap();
        let parity = quantization::bs_points_parity(&mp, k).len() as u128;
        prop_assert_eq!(parity, quantization::fusion_count(&g, k));
        prop_assert_eq!(parity, quantization::verlinde_closed_form(g.genus() as u32, k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn closed_form_matches_fusion(g in 2usize..=5, k in 1u32..=5) {
        let graph = graphs::multi_theta(g).unwrap();
        prop_assert_eq!(
            quantization::verlinde_closed_form(g as u32, k).unwrap(),
            quantization::fusion_count(&graph, k)
        );
    }

    #[test]
    fn disjoint_union_counts_multiply(k in 1u32..=3) {
        let tt = graphs::disjoint_union(&graphs::theta(), &graphs::k4());
        let mp = moment_polytope(&tt).unwrap();
        let a = quantization::bs_points_parity(&moment_polytope(&graphs::theta()).unwrap(), k).len();
        let b = quantization::bs_points_parity(&moment_polytope(&graphs::k4()).unwrap(), k).len();
        prop_assert_eq!(quantization::bs_points_parity(&mp, k).len(), a * b);
        prop_assert_eq!(quantization::verlinde_for_graph(&tt, k).unwrap(), (a * b) as u128);
    }
}

//! Randomized invariants: everything here must hold for every input the
//! strategies can produce, not just for the worked examples in the unit
//! tests.

use proptest::prelude::*;
use strongprod::{
    cartesian_product, check_consistency, consistent_path_coloring, direct_product,
    edge_partition_to_consistent, monochromatic_components, pigeonhole_combine,
    random_bounded_degree_tree, read_coloring_json, read_consistent_json, read_graph_json,
    sample_percolation, strong_product, tensor_coloring, verify_coloring, write_coloring_json,
    write_consistent_json, write_graph_json, DefectParameter, EdgePartition, FractionalColoring,
    Graph, OracleBudget,
};

/// Graph on `n` vertices whose edge set is carved out of `bits`.
fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if bits >> (i % 64) & 1 == 1 {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    let labels = (0..n).map(|v| vec![v as i64]).collect();
    Graph::from_edges(labels, &edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| graph_from_bits(n, bits))
}

/// Any valid (p:q)-colouring of an `n`-vertex graph, proper or not.
fn arb_coloring(n: usize) -> impl Strategy<Value = FractionalColoring> {
    (1usize..=5)
        .prop_flat_map(move |p| {
            let q = 1usize..=p;
            (Just(p), q, proptest::collection::vec(any::<u64>(), n))
        })
        .prop_map(|(p, q, picks)| {
            let assign = picks
                .iter()
                .map(|&pick| {
                    // q distinct colours out of p, chosen by walking the
                    // palette from a seed offset.
                    let mut set: Vec<usize> = (0..p).collect();
                    set.rotate_left((pick % p as u64) as usize);
                    set.truncate(q);
                    set
                })
                .collect();
            FractionalColoring::new(p, q, assign).unwrap()
        })
}

fn arb_colored_graph(max_n: usize) -> impl Strategy<Value = (Graph, FractionalColoring)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        arb_coloring(n).prop_map(move |f| (g.clone(), f))
    })
}

proptest! {
    #[test]
    fn strong_product_degrees_compose((a, b) in (arb_graph(6), arb_graph(6))) {
        let p = strong_product(&a, &b).unwrap();
        let nb = b.vertex_count();
        for v in 0..a.vertex_count() {
            for x in 0..nb {
                let expected = (a.degree(v) + 1) * (b.degree(x) + 1) - 1;
                prop_assert_eq!(p.degree(v * nb + x), expected);
            }
        }
    }

    #[test]
    fn strong_edges_split_into_cartesian_and_direct((a, b) in (arb_graph(6), arb_graph(6))) {
        let s = strong_product(&a, &b).unwrap();
        let c = cartesian_product(&a, &b).unwrap();
        let d = direct_product(&a, &b).unwrap();
        prop_assert_eq!(s.edge_count(), c.edge_count() + d.edge_count());
        let ce = c.edges();
        let de = d.edges();
        for e in &ce {
            prop_assert!(!de.contains(e));
        }
        let mut all: Vec<_> = ce.into_iter().chain(de).collect();
        all.sort_unstable();
        prop_assert_eq!(all, s.edges());
    }

    #[test]
    fn defect_stays_below_clustering((g, f) in arb_colored_graph(8)) {
        let r = verify_coloring(&g, &f, DefectParameter::ClusterSize).unwrap();
        prop_assert!(r.defect <= r.clustering.saturating_sub(1));
        prop_assert_eq!(r.proper, r.clustering <= 1);
    }

    #[test]
    fn clustering_witness_is_genuine((g, f) in arb_colored_graph(8)) {
        let r = verify_coloring(&g, &f, DefectParameter::ClusterSize).unwrap();
        let w = r.witness.unwrap();
        prop_assert_eq!(w.vertices.len(), r.clustering);
        for &v in &w.vertices {
            prop_assert!(f.contains(v, w.color));
        }
        // The witness is one of the monochromatic components of its colour.
        let comps = monochromatic_components(&g, &f, w.color).unwrap();
        prop_assert!(comps.contains(&w.vertices));
    }

    #[test]
    fn mono_components_partition_the_color_class((g, f) in arb_colored_graph(8)) {
        for color in 0..f.p() {
            let comps = monochromatic_components(&g, &f, color).unwrap();
            let mut seen = vec![false; g.vertex_count()];
            for comp in &comps {
                for &v in comp {
                    prop_assert!(!seen[v]);
                    seen[v] = true;
                }
            }
            for v in 0..g.vertex_count() {
                prop_assert_eq!(seen[v], f.contains(v, color));
            }
        }
    }

    #[test]
    fn graph_documents_round_trip(g in arb_graph(8)) {
        let text = write_graph_json(&g);
        let back = read_graph_json(&text).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.labels(), g.labels());
        prop_assert_eq!(write_graph_json(&back), text);
    }

    #[test]
    fn coloring_documents_round_trip((_, f) in arb_colored_graph(8)) {
        let text = write_coloring_json(&f);
        let back = read_coloring_json(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(write_coloring_json(&back), text);
    }

    #[test]
    fn consistent_documents_keep_tuple_order(n in 2usize..40, k in 1usize..5) {
        let c = consistent_path_coloring(n, k).unwrap();
        let text = write_consistent_json(&c);
        let back = read_consistent_json(&text).unwrap();
        prop_assert_eq!(back.tuples(), c.tuples());
    }

    #[test]
    fn path_tuples_repeat_with_period(k in 1usize..5, reps in 1usize..4) {
        let period = k * (k + 1);
        let n = period * reps + 1;
        let c = consistent_path_coloring(n, k).unwrap();
        for v in 0..(n - period) {
            prop_assert_eq!(c.tuple(v), c.tuple(v + period));
        }
    }

    #[test]
    fn any_tree_partition_yields_consistency(
        n in 3usize..40,
        delta in 2usize..5,
        seed in any::<u64>(),
        k in 2usize..5,
        class_mix in any::<u64>(),
    ) {
        let t = random_bounded_degree_tree(n, delta, seed).unwrap().rerooted_at_leaf();
        let part = EdgePartition::new(
            k,
            t.graph()
                .edges()
                .into_iter()
                .map(|(u, v)| ((u, v), (u.wrapping_add(v).wrapping_add(class_mix as usize)) % k)),
        )
        .unwrap();
        let c = edge_partition_to_consistent(&t, &part).unwrap();
        prop_assert!(check_consistency(t.graph(), &c).unwrap().is_none());
    }

    #[test]
    fn tensor_clustering_multiplies_at_worst(
        (a, f) in arb_colored_graph(6),
        (b, h) in arb_colored_graph(6),
    ) {
        let ra = verify_coloring(&a, &f, DefectParameter::ClusterSize).unwrap();
        let rb = verify_coloring(&b, &h, DefectParameter::ClusterSize).unwrap();
        let (p, t) = tensor_coloring(&[(&a, &f), (&b, &h)]).unwrap();
        let rt = verify_coloring(&p, &t, DefectParameter::ClusterSize).unwrap();
        prop_assert!(rt.clustering <= ra.clustering * rb.clustering);
        prop_assert!(rt.defect <= (ra.defect + 1) * (rb.defect + 1) - 1);
    }

    #[test]
    fn pigeonhole_covers_the_overlap(
        (g, f) in arb_colored_graph(5),
        (h, bits) in (arb_graph(5), any::<u64>()),
    ) {
        // Reshape the second colouring onto f's palette with q + r > p.
        let p = f.p();
        let r = p - f.q() + 1;
        let b = {
            let assign = (0..h.vertex_count())
                .map(|v| {
                    let mut set: Vec<usize> = (0..p).collect();
                    set.rotate_left(((bits >> (v % 60)) % p as u64) as usize);
                    set.truncate(r);
                    set
                })
                .collect();
            FractionalColoring::new(p, r, assign).unwrap()
        };
        let (prod, comb) = pigeonhole_combine(&g, &f, &h, &b).unwrap();
        let want = f.q() + r - p;
        prop_assert_eq!(comb.q(), want);
        let nb = h.vertex_count();
        for u in 0..g.vertex_count() {
            for v in 0..nb {
                let set = comb.set(u * nb + v);
                prop_assert_eq!(set.len(), want);
                for &color in set {
                    prop_assert!(f.contains(u, color));
                    prop_assert!(b.contains(v, color));
                }
            }
        }
        prop_assert_eq!(prod.vertex_count(), g.vertex_count() * nb);
    }

    #[test]
    fn percolation_coupling_is_monotone(
        g in arb_graph(8),
        x1 in 0.0f64..=1.0,
        x2 in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        let s_lo = sample_percolation(&g, lo, seed).unwrap();
        let s_hi = sample_percolation(&g, hi, seed).unwrap();
        for v in 0..g.vertex_count() {
            prop_assert!(!s_lo[v] || s_hi[v]);
        }
    }

    #[test]
    fn feasibility_agrees_with_chromatic_number(g in arb_graph(6)) {
        use strongprod::{chromatic_number, clustered_feasibility, Feasibility};
        let budget = OracleBudget::default();
        let chi = chromatic_number(&g, &budget).unwrap();
        let at = clustered_feasibility(&g, chi, 1, &budget).unwrap();
        prop_assert!(matches!(at, Feasibility::Feasible(_)));
        if chi > 1 {
            let below = clustered_feasibility(&g, chi - 1, 1, &budget).unwrap();
            prop_assert_eq!(below, Feasibility::Infeasible);
        }
    }

    #[test]
    fn proper_pq_matches_chromatic_number_of_clique_product(
        g in arb_graph(7),
        p in 1usize..=5,
        q_pick in any::<u64>(),
    ) {
        use strongprod::{chromatic_number, generate_basic, BasicKind};
        let q = (q_pick % p as u64) as usize + 1;
        let direct = has_proper_pq_coloring(&g, p, q);
        let kq = generate_basic(BasicKind::Complete, q).unwrap();
        let prod = strong_product(&g, &kq).unwrap();
        let chi = chromatic_number(&prod, &OracleBudget::default()).unwrap();
        prop_assert_eq!(direct, chi <= p, "n={} p={} q={} chi={}", g.vertex_count(), p, q, chi);
    }

    #[test]
    fn tensor_components_are_products_of_factor_components(
        (a, f) in arb_colored_graph(5),
        (b, h) in arb_colored_graph(5),
    ) {
        let (prod, t) = tensor_coloring(&[(&a, &f), (&b, &h)]).unwrap();
        let nb = b.vertex_count();
        for c1 in 0..f.p() {
            let left = monochromatic_components(&a, &f, c1).unwrap();
            for c2 in 0..h.p() {
                let right = monochromatic_components(&b, &h, c2).unwrap();
                let mut want: Vec<Vec<usize>> = Vec::new();
                for x in &left {
                    for y in &right {
                        let mut block: Vec<usize> = x
                            .iter()
                            .flat_map(|&u| y.iter().map(move |&v| u * nb + v))
                            .collect();
                        block.sort_unstable();
                        want.push(block);
                    }
                }
                want.sort();
                let mut got = monochromatic_components(&prod, &t, c1 * h.p() + c2).unwrap();
                for comp in &mut got {
                    comp.sort_unstable();
                }
                got.sort();
                prop_assert_eq!(got, want, "colour ({}, {})", c1, c2);
            }
        }
    }
}

/// Independent search for a proper (p:q)-colouring: assign q-subsets in
/// vertex order, requiring disjointness from every earlier neighbour.
fn has_proper_pq_coloring(g: &Graph, p: usize, q: usize) -> bool {
    fn subsets(p: usize, q: usize) -> Vec<u32> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << p) {
            if mask.count_ones() as usize == q {
                out.push(mask);
            }
        }
        out
    }
    fn place(g: &Graph, choices: &[u32], chosen: &mut Vec<u32>, v: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        'next: for &mask in choices {
            for &u in g.neighbors(v) {
                if u < v && chosen[u] & mask != 0 {
                    continue 'next;
                }
            }
            chosen.push(mask);
            if place(g, choices, chosen, v + 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if q > p {
        return false;
    }
    place(g, &subsets(p, q), &mut Vec::new(), 0)
}

use proptest::prelude::*;

use fmdel::canon::canonical_form;
use fmdel::containment::tm::dissolve_in_order;
use fmdel::folio::folio;
use fmdel::treedecomp::{check_td, emit_gr, emit_td, exact_tw, minfill_td, parse_gr, parse_td, to_nice};
use fmdel::{BoundariedGraph, Graph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for v in 0..n {
                for u in 0..v {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn boundaried(max_n: usize, max_t: usize) -> impl Strategy<Value = BoundariedGraph> {
    graph(max_n).prop_flat_map(move |g| {
        let n = g.n();
        (Just(g), 0..=max_t.min(n)).prop_map(|(g, t)| BoundariedGraph::new(g, (0..t).collect()).unwrap())
    })
}

fn relabel(g: &BoundariedGraph, perm: &[usize]) -> BoundariedGraph {
    let mut h = Graph::new(g.n());
    for (u, v) in g.graph().edges() {
        h.add_edge(perm[u], perm[v]);
    }
    BoundariedGraph::new(h, g.boundary().iter().map(|&b| perm[b]).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels(g in boundaried(8, 3), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&relabel(&g, &perm)).unwrap());
    }

    #[test]
    fn glue_is_symmetric(a in boundaried(6, 3), b in boundaried(6, 3)) {
        let t = a.t().min(b.t());
        let strip = |g: &BoundariedGraph| {
            let mut h = g.graph().clone();
            for i in 0..g.t() {
                for j in 0..g.t() {
                    h.remove_edge(i, j);
                }
            }
            BoundariedGraph::new(h, (0..t).collect()).unwrap()
        };
        let (a, b) = (strip(&a), strip(&b));
        let ab = BoundariedGraph::unboundaried(a.glue(&b).unwrap());
        let ba = BoundariedGraph::unboundaried(b.glue(&a).unwrap());
        prop_assert_eq!(canonical_form(&ab).unwrap(), canonical_form(&ba).unwrap());
    }

    #[test]
    fn dissolution_order_does_not_matter(h in graph(6), subdiv in prop::collection::vec(0usize..3, 15), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut m = Graph::new(h.n());
        for (i, (u, v)) in h.edges().into_iter().enumerate() {
            let mut prev = u;
            for _ in 0..subdiv[i % subdiv.len()] {
                let x = m.add_vertex();
                m.add_edge(prev, x);
                prev = x;
            }
            m.add_edge(prev, v);
        }
        let t: Vec<usize> = (0..h.n()).collect();
        let mut order: Vec<usize> = (h.n()..m.n()).collect();
        let a = dissolve_in_order(&m, &t, &order).unwrap();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let b = dissolve_in_order(&m, &t, &order).unwrap();
        prop_assert_eq!(a.edges(), h.edges());
        prop_assert_eq!(b.edges(), h.edges());
    }

    #[test]
    fn detail_and_folio_are_monotone(g in boundaried(6, 2), drop in prop::collection::vec(any::<bool>(), 15)) {
        let mut h = g.graph().clone();
        for (i, (u, v)) in g.graph().edges().into_iter().enumerate() {
            if drop[i % drop.len()] {
                h.remove_edge(u, v);
            }
        }
        let sub = BoundariedGraph::new(h, g.boundary().to_vec()).unwrap();
        prop_assert!(sub.detail() <= g.detail());
        let (fs, fg) = (folio(&sub, 2).unwrap(), folio(&g, 2).unwrap());
        prop_assert!(fs.is_subset(&fg));
    }

    #[test]
    fn decompositions_are_valid(g in graph(14)) {
        let td = minfill_td(&g);
        prop_assert!(check_td(&g, &td).is_empty());
        let nice = to_nice(&td).unwrap();
        prop_assert!(nice.validate(&g).is_ok());
        prop_assert_eq!(nice.width(), td.width());
        if g.n() <= 11 {
            let (tw, exact) = exact_tw(&g).unwrap();
            prop_assert!(check_td(&g, &exact).is_empty());
            prop_assert_eq!(exact.width(), tw);
            prop_assert!(tw <= td.width());
        }
    }

    #[test]
    fn pace_round_trip(g in graph(14)) {
        let text = emit_gr(&g);
        let back = parse_gr(&text).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(emit_gr(&back), text);
        let td = minfill_td(&g);
        let td_text = emit_td(&td);
        prop_assert_eq!(emit_td(&parse_td(&td_text).unwrap()), td_text);
    }
}

//! Graph invariants and ideal constructions against exhaustive searches.

use edgereg::ideals::{banerjee_colon, colon_structure, edge_product, minimal_vertex_covers, symbolic_power_oracle};
use edgereg::polyhedron::newton_membership;
use edgereg::{
    closure_of_power, edge_ideal, parse_graph, Budget, Graph, Monomial, MonomialIdeal, NewtonPolyhedron, RingContext,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let e: Vec<_> = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| *p).collect();
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

fn is_cover(g: &Graph, c: u64) -> bool {
    g.edges().iter().all(|&(u, v)| c >> u & 1 == 1 || c >> v & 1 == 1)
}

fn brute_minimal_covers(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let covers: Vec<u64> = (0..1u64 << n).filter(|&c| is_cover(g, c)).collect();
    let mut out: Vec<u64> = covers
        .iter()
        .copied()
        .filter(|&c| (0..n).all(|v| c >> v & 1 == 0 || !is_cover(g, c & !(1 << v))))
        .collect();
    out.sort_unstable();
    out
}

fn brute_induced_matching(g: &Graph) -> usize {
    let edges = g.edges();
    let mut best = 0;
    for mask in 0u32..1 << edges.len() {
        let chosen: Vec<_> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        let verts: u64 = chosen.iter().fold(0, |a, &(u, v)| a | 1 << u | 1 << v);
        let induced = edges.iter().filter(|&&(u, v)| verts >> u & 1 == 1 && verts >> v & 1 == 1).count();
        if induced == chosen.len() && verts.count_ones() as usize == 2 * chosen.len() {
            best = best.max(chosen.len());
        }
    }
    best
}

/// Every exponent vector with entries at most `bound`.
fn box_points(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (0..=bound).map(move |e| [p.clone(), vec![e]].concat())).collect();
    }
    out
}

fn monomial_ideal() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..5).prop_map(|g| {
        MonomialIdeal::new(RingContext::standard(3), g.iter().map(|e| Monomial::new(e)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn vertex_covers_match_subset_search(g in graph(7)) {
        let mut covers = minimal_vertex_covers(&g);
        covers.sort_unstable();
        let brute = brute_minimal_covers(&g);
        prop_assert_eq!(g.vertex_cover_number(), brute.iter().map(|c| c.count_ones() as usize).min().unwrap_or(0));
        prop_assert_eq!(covers, brute);
    }

    #[test]
    fn induced_matching_matches_subset_search(g in graph(7)) {
        prop_assert_eq!(g.induced_matching_number(), brute_induced_matching(&g));
    }

    #[test]
    fn symbolic_power_matches_cover_inequalities(g in graph(5), s in 1u32..4) {
        prop_assume!(g.edge_count() > 0);
        let sym = symbolic_power_oracle(&g, s, &Budget::default()).unwrap();
        let covers = brute_minimal_covers(&g);
        for p in box_points(g.n(), s) {
            let m = Monomial::new(&p);
            let by_covers = covers.iter().all(|&c| (0..g.n()).filter(|&v| c >> v & 1 == 1).map(|v| p[v]).sum::<u32>() >= s);
            prop_assert_eq!(sym.contains(&m).unwrap(), by_covers, "{:?}", p);
        }
    }

    #[test]
    fn facets_agree_with_lp(i in monomial_ideal(), s in 1u32..3) {
        let np = NewtonPolyhedron::new(&i).unwrap().dilate(s).unwrap();
        for p in box_points(3, 3 * s) {
            prop_assert_eq!(np.contains(&p), np.contains_lp(&p), "{:?}", p);
        }
    }

    #[test]
    fn closure_matches_polyhedron(i in monomial_ideal(), s in 1u32..3) {
        let cl = closure_of_power(&i, s, &Budget::default()).unwrap().ideal;
        let power = i.power(s);
        prop_assert!(cl.contains_ideal(&power).unwrap());
        for p in box_points(3, 3 * s) {
            let m = Monomial::new(&p);
            prop_assert_eq!(cl.contains(&m).unwrap(), newton_membership(power.gens(), &p), "{:?}", p);
        }
    }

    #[test]
    fn banerjee_colon_matches_division(g in graph(6), pick in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        prop_assume!(g.edge_count() > 0);
        let edges = g.edges();
        let chosen: Vec<_> = pick.iter().map(|ix| edges[ix.index(edges.len())]).collect();
        let s = chosen.len() as u32 + 1;
        let i = edge_ideal(&g);
        let brute = i.power(s).colon_monomial(&edge_product(i.nvars(), &chosen)).unwrap();
        prop_assert_eq!(banerjee_colon(&g, s, &chosen).unwrap(), brute);
    }
}

fn c5() -> Graph {
    Graph::cycle(5)
}

fn ideal(n: usize, text: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(RingContext::standard(n), text.iter().map(|e| Monomial::new(e)).collect()).unwrap()
}

#[test]
fn pentagon_cube_is_equigenerated() {
    let cube = edge_ideal(&c5()).power(3);
    assert!(cube.gens().iter().all(|g| g.degree() == 6));
}

#[test]
fn pentagon_colon_by_an_edge() {
    let i = edge_ideal(&c5());
    let c = i.power(2).colon_monomial(&edge_product(5, &[(1, 2)])).unwrap();
    assert_eq!(c, i.with_generators([Monomial::new(&[1, 0, 0, 1, 0])]).unwrap());
    assert_eq!(banerjee_colon(&c5(), 2, &[(1, 2)]).unwrap(), c);
}

#[test]
fn squares_colon_by_maximal_ideal() {
    let i = ideal(2, &[&[2, 0], &[0, 2]]);
    let m = ideal(2, &[&[1, 0], &[0, 1]]);
    assert_eq!(i.colon_ideal(&m).unwrap(), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
}

#[test]
fn intersection_by_membership() {
    let a = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]).power(2);
    let b = ideal(3, &[&[0, 1, 0], &[0, 0, 1]]).power(2);
    let both = a.intersect(&b).unwrap();
    for p in box_points(3, 4).into_iter().filter(|p| p.iter().sum::<u32>() <= 4) {
        let m = Monomial::new(&p);
        assert_eq!(both.contains(&m).unwrap(), a.contains(&m).unwrap() && b.contains(&m).unwrap());
    }
}

#[test]
fn pentagon_invariants() {
    let g = c5();
    assert_eq!(brute_induced_matching(&g), 1);
    assert_eq!(g.induced_matching_number(), 1);
    assert_eq!(g.vertex_cover_number(), 3);
    let covers = minimal_vertex_covers(&g);
    assert_eq!(covers.len(), 5);
    assert!(covers.iter().all(|c| c.count_ones() == 3));
    assert_eq!(g.odd_girth(), Some(5));
    assert!(g.bows(&Budget::default()).unwrap().is_empty());
    assert!(g.is_normal(&Budget::default()).unwrap());
}

#[test]
fn complete_graph_cycles() {
    let k4 = Graph::complete(4);
    let b = Budget::default();
    assert_eq!(k4.enumerate_cycles(false, false, &b).unwrap().len(), 7);
    let induced_odd = k4.enumerate_cycles(true, true, &b).unwrap();
    assert_eq!(induced_odd.len(), 4);
    assert!(induced_odd.iter().all(|c| c.len() == 3));
}

#[test]
fn pendant_pentagon_symbolic_cube() {
    let g = parse_graph("1 2\n2 3\n3 4\n4 5\n5 1\n1 6\n").unwrap();
    let b = Budget::default();
    let i = edge_ideal(&g);
    let expected = i.power(3).with_generators([Monomial::new(&[1, 1, 1, 1, 1, 0])]).unwrap();
    assert_eq!(symbolic_power_oracle(&g, 3, &b).unwrap(), expected);
}

#[test]
fn colon_by_odd_cycle_vertices() {
    let b = Budget::default();
    let all = |n: usize| MonomialIdeal::variables(RingContext::standard(n), 0..n);
    let g = c5();
    let m = Monomial::new(&[1; 5]);
    assert_eq!(edge_ideal(&g).power(3).colon_monomial(&m).unwrap(), all(5));
    assert_eq!(colon_structure(&g, 3, g.vertex_set(), &b).unwrap(), all(5));
    let bow = Graph::joined_cycles(1, 1, 2).unwrap();
    let t: u64 = 0b1110111;
    let tc = bow.t_context(t).unwrap();
    assert_eq!(tc.w, bow.vertex_set());
    assert_eq!(tc.h.edge_count(), 0);
    let mt = Monomial::new(&[1, 1, 1, 0, 1, 1, 1]);
    assert_eq!(edge_ideal(&bow).power(3).colon_monomial(&mt).unwrap(), all(7));
}

#[test]
fn bow_closure_contains_cycle_product() {
    let bow = Graph::joined_cycles(1, 1, 2).unwrap();
    let i = edge_ideal(&bow);
    let b = Budget::default();
    let cl = closure_of_power(&i, 3, &b).unwrap().ideal;
    let m = Monomial::new(&[1, 1, 1, 0, 1, 1, 1]);
    assert!(cl.contains(&m).unwrap());
    assert!(!i.power(3).contains(&m).unwrap());
}

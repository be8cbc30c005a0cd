//! The Betti engine against independent computations: the lcm lattice as a
//! fixpoint of pairwise lcms, and Betti numbers from the Taylor complex.

use std::collections::{BTreeMap, BTreeSet};

use edgereg::betti::{graded_betti, lcm_lattice, regularity, upper_koszul, FieldChar, Regularity};
use edgereg::{edge_ideal, Budget, Graph, Monomial, MonomialIdeal, RingContext};
use proptest::prelude::*;

const P: u64 = 32003;

fn ideal_from(nvars: usize, gens: Vec<Vec<u32>>) -> MonomialIdeal {
    MonomialIdeal::new(RingContext::standard(nvars), gens.iter().map(|e| Monomial::new(e)).collect()).unwrap()
}

fn ideal(nvars: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..3, nvars), 1..=max_gens)
        .prop_map(move |g| ideal_from(nvars, g))
        .prop_filter("proper ideal", |i| !i.is_unit())
}

fn lcm_all(gens: &[Monomial], mask: u32, nvars: usize) -> Monomial {
    (0..gens.len())
        .filter(|&i| mask >> i & 1 == 1)
        .fold(Monomial::one(nvars), |acc, i| acc.lcm(&gens[i]).unwrap())
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], P - 2);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| x * inv % P).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Reduced homology ranks of a complex given by all of its faces (bitmasks,
/// including the empty face). `out[d + 1]` is the rank of `H~_d`.
fn reduced_homology(faces: &[u32]) -> Vec<usize> {
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let by_dim: Vec<Vec<u32>> = (0..=top).map(|k| faces.iter().copied().filter(|f| f.count_ones() as usize == k).collect()).collect();
    // boundary[k]: chains of size k to chains of size k - 1.
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let index: BTreeMap<u32, usize> = by_dim[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows: Vec<Vec<u64>> = by_dim[k]
            .iter()
            .map(|&f| {
                let mut row = vec![0u64; by_dim[k - 1].len()];
                let mut sign = 1;
                for v in 0..32 {
                    if f >> v & 1 == 1 {
                        row[index[&(f & !(1 << v))]] = if sign == 1 { 1 } else { P - 1 };
                        sign = -sign;
                    }
                }
                row
            })
            .collect();
        ranks[k] = rank_mod_p(rows);
    }
    (0..=top).map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1]).collect()
}

/// `beta_{i,a}(I) = dim H~_{i-1}` of the Taylor faces whose lcm strictly
/// divides `a`.
fn taylor_betti(i: &MonomialIdeal) -> BTreeMap<(usize, Vec<u32>), usize> {
    let gens = i.gens();
    let n = i.nvars();
    let all = 1u32 << gens.len();
    let lcms: Vec<Monomial> = (0..all).map(|m| lcm_all(gens, m, n)).collect();
    let targets: BTreeSet<Vec<u32>> = lcms[1..].iter().map(|m| m.exponents().to_vec()).collect();
    let mut out = BTreeMap::new();
    for a in targets {
        let a = Monomial::new(&a);
        let faces: Vec<u32> = (0..all).filter(|&m| lcms[m as usize].divides(&a).unwrap() && lcms[m as usize] != a).collect();
        for (d1, &r) in reduced_homology(&faces).iter().enumerate() {
            if r > 0 {
                out.insert((d1, a.exponents().to_vec()), r);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn betti_numbers_match_taylor_complex(i in ideal(4, 6)) {
        let t = graded_betti(&i, FieldChar::DEFAULT, &Budget::default()).unwrap();
        prop_assert_eq!(&t.entries, &taylor_betti(&i));
    }

    #[test]
    fn lattice_is_the_lcm_closure(i in ideal(4, 6)) {
        let mut closure: BTreeSet<Vec<u32>> = i.gens().iter().map(|g| g.exponents().to_vec()).collect();
        loop {
            let cur: Vec<Vec<u32>> = closure.iter().cloned().collect();
            let before = closure.len();
            for a in &cur {
                for b in &cur {
                    closure.insert(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
                }
            }
            if closure.len() == before {
                break;
            }
        }
        let lattice: BTreeSet<Vec<u32>> =
            lcm_lattice(&i, &Budget::default()).unwrap().iter().map(|m| m.exponents().to_vec()).collect();
        prop_assert_eq!(lattice, closure);
    }

    #[test]
    fn euler_characteristic_alternating_sum(i in ideal(4, 6)) {
        let t = graded_betti(&i, FieldChar::DEFAULT, &Budget::default()).unwrap();
        for a in lcm_lattice(&i, &Budget::default()).unwrap() {
            let (_, k) = upper_koszul(&i, &a).unwrap();
            let alt: i64 = t
                .entries
                .iter()
                .filter(|((_, m), _)| m.as_slice() == a.exponents())
                .map(|(&(ci, _), &r)| if ci % 2 == 0 { r as i64 } else { -(r as i64) })
                .sum();
            prop_assert_eq!(alt, -k.reduced_euler_characteristic());
        }
    }

    #[test]
    fn beta_zero_sits_on_generators(i in ideal(4, 6)) {
        let t = graded_betti(&i, FieldChar::DEFAULT, &Budget::default()).unwrap();
        let zero: BTreeSet<Vec<u32>> = t.entries.iter().filter(|((ci, _), _)| *ci == 0).map(|((_, m), r)| {
            assert_eq!(*r, 1);
            m.clone()
        }).collect();
        let gens: BTreeSet<Vec<u32>> = i.gens().iter().map(|g| g.exponents().to_vec()).collect();
        prop_assert_eq!(zero, gens);
    }
}

#[test]
fn pentagon_table_matches_taylor() {
    let i = edge_ideal(&Graph::cycle(5));
    let t = graded_betti(&i, FieldChar::DEFAULT, &Budget::default()).unwrap();
    assert_eq!(t.entries, taylor_betti(&i));
    assert_eq!(t.regularity(), Regularity::Finite(3));
}

#[test]
fn three_disjoint_edges() {
    let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
    let r = regularity(&edge_ideal(&g), FieldChar::DEFAULT, &Budget::default()).unwrap();
    assert_eq!(r, Regularity::Finite(4));
}

#[test]
fn induced_subgraphs_do_not_raise_regularity() {
    let b = Budget::generous();
    let g = Graph::joined_cycles(1, 1, 2).unwrap();
    for s in 1..=3 {
        let whole = regularity(&edge_ideal(&g).power(s), FieldChar::DEFAULT, &b).unwrap();
        for v in 0..g.n() {
            let h = g.induced(g.vertex_set() & !(1 << v)).unwrap();
            let part = regularity(&edge_ideal(&h).power(s), FieldChar::DEFAULT, &b).unwrap();
            assert!(part <= whole, "s={s} without x{}: {part} > {whole}", v + 1);
        }
    }
}

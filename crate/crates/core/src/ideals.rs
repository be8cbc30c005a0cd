//! Edge ideals and the ideals built from them: powers, symbolic powers,
//! integral closures of powers, and colon ideals.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph, VertexSet};
use crate::monomial::{Monomial, MonomialIdeal, RingContext};

/// The edge ideal in `k[x_1..x_n]`, `n` being the graph's ambient size.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    edge_ideal_in(RingContext::standard(g.n().max(1)), g)
}

/// The edge ideal over a given context, which must have `g.n()` variables.
pub fn edge_ideal_in(ctx: Arc<RingContext>, g: &Graph) -> MonomialIdeal {
    let n = ctx.nvars();
    let gens = g.edges().into_iter().map(|(u, v)| Monomial::squarefree(n, [u, v])).collect();
    MonomialIdeal::from_raw(ctx, gens)
}

/// Inclusion-minimal sets meeting every set in `family`, by Berge's
/// incremental method.
pub fn minimal_transversals(family: &[VertexSet]) -> Vec<VertexSet> {
    let mut current: Vec<VertexSet> = vec![0];
    for &e in family {
        let mut next: Vec<VertexSet> = Vec::new();
        for &t in &current {
            if t & e != 0 {
                next.push(t);
            } else {
                next.extend(bits(e).map(|v| t | 1 << v));
            }
        }
        next.sort_unstable_by_key(|t| (t.count_ones(), *t));
        next.dedup();
        let mut kept: Vec<VertexSet> = Vec::with_capacity(next.len());
        for t in next {
            if !kept.iter().any(|&k| k & t == k) {
                kept.push(t);
            }
        }
        current = kept;
    }
    current.sort_unstable();
    current
}

/// Minimal vertex covers, which are the minimal primes of the edge ideal.
pub fn minimal_vertex_covers(g: &Graph) -> Vec<VertexSet> {
    let edges: Vec<VertexSet> = g.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();
    minimal_transversals(&edges)
}

/// Minimal primes of a squarefree monomial ideal, as variable sets.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<VertexSet>> {
    if !ideal.is_squarefree() {
        return Err(Error::invalid("minimal primes are computed for squarefree ideals only"));
    }
    if ideal.nvars() > 64 {
        return Err(Error::invalid("at most 64 variables supported"));
    }
    let supports: Vec<VertexSet> = ideal.gens().iter().map(|g| g.support().iter().fold(0, |a, &v| a | 1 << v)).collect();
    Ok(minimal_transversals(&supports))
}

/// `m` lies in the `s`-th symbolic power iff every minimal prime's variables
/// carry total exponent at least `s`.
pub fn symbolic_membership_covers(covers: &[VertexSet], s: u32, m: &Monomial) -> bool {
    covers
        .iter()
        .all(|&c| bits(c).map(|i| u64::from(m.exponents()[i])).sum::<u64>() >= u64::from(s))
}

pub fn symbolic_membership(g: &Graph, s: u32, m: &Monomial) -> Result<bool> {
    if m.nvars() != g.n() {
        return Err(Error::ContextMismatch(format!("{} variables vs {} vertices", m.nvars(), g.n())));
    }
    Ok(symbolic_membership_covers(&minimal_vertex_covers(g), s, m))
}

/// All monomials of degree `d` in the variables of `vars`.
fn monomials_of_degree(n: usize, vars: &[usize], d: u32) -> Vec<Monomial> {
    fn rec(n: usize, vars: &[usize], d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if d == 0 {
            out.push(Monomial::new(cur));
            return;
        }
        let Some((&v, rest)) = vars.split_first() else {
            return;
        };
        for e in (0..=d).rev() {
            cur[v] += e;
            rec(n, rest, d - e, cur, out);
            cur[v] -= e;
        }
    }
    let mut out = Vec::new();
    rec(n, vars, d, &mut vec![0; n], &mut out);
    out
}

/// `I ∩ P^s` where `P` is generated by the variables in `prime`.
///
/// The minimal lcms of `u` with degree-`s` monomials in `P` are `u * w`,
/// `w` ranging over monomials in `P` of degree `s - deg_P(u)`.
pub fn intersect_prime_power(ideal: &MonomialIdeal, prime: VertexSet, s: u32, budget: &Budget) -> Result<MonomialIdeal> {
    let n = ideal.nvars();
    let vars: Vec<usize> = bits(prime).collect();
    let mut out = Vec::new();
    let mut cache: HashMap<u32, Vec<Monomial>> = HashMap::new();
    for u in ideal.gens() {
        let have: u32 = vars.iter().map(|&v| u.exponents()[v]).sum();
        let need = s.saturating_sub(have);
        let ws = cache.entry(need).or_insert_with(|| monomials_of_degree(n, &vars, need));
        for w in ws.iter() {
            out.push(u.mul_unchecked(w)?);
        }
        budget.check_generators(out.len())?;
    }
    Ok(MonomialIdeal::from_raw(ideal.ctx().clone(), out))
}

/// The `s`-th symbolic power of a squarefree monomial ideal, as the
/// intersection of `P^s` over its minimal primes `P`.
pub fn symbolic_power_of_ideal(ideal: &MonomialIdeal, s: u32, budget: &Budget) -> Result<MonomialIdeal> {
    if ideal.is_zero() || s == 0 {
        return Ok(if s == 0 { MonomialIdeal::unit(ideal.ctx().clone()) } else { ideal.clone() });
    }
    let mut primes = minimal_primes(ideal)?;
    primes.sort_by_key(|p| (p.count_ones(), *p));
    let mut acc = MonomialIdeal::unit(ideal.ctx().clone());
    for p in primes {
        acc = intersect_prime_power(&acc, p, s, budget)?;
        budget.check_time()?;
    }
    Ok(acc)
}

pub fn symbolic_power_oracle(g: &Graph, s: u32, budget: &Budget) -> Result<MonomialIdeal> {
    symbolic_power_of_ideal(&edge_ideal(g), s, budget)
}

/// Closed-form symbolic power when the smallest induced odd cycle has size
/// `2n+1`: `I^s` for `s <= n`, `I^{n+1}` plus the cycle monomials at `s = n+1`.
/// Bipartite graphs give `I^s` for every `s`. `None` means no formula applies.
pub fn symbolic_power_formula(g: &Graph, s: u32, budget: &Budget) -> Result<Option<MonomialIdeal>> {
    let i = edge_ideal(g);
    let Some(girth) = g.odd_girth() else {
        return Ok(Some(i.power_with_budget(s, budget)?));
    };
    let n = (girth as u32 - 1) / 2;
    if s <= n {
        return Ok(Some(i.power_with_budget(s, budget)?));
    }
    if s > n + 1 {
        return Ok(None);
    }
    let cycles = g.induced_odd_cycles_of_len(girth, budget)?;
    let extra = cycles.iter().map(|c| c.monomial(i.nvars()));
    Ok(Some(i.power_with_budget(s, budget)?.with_generators(extra)?))
}

/// Which closed form describes the integral closure of `I(G)^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureCase {
    /// No bow: the edge ideal is normal.
    BowFree,
    /// Below or at the smallest bow size.
    SmallPower { smallest_bow: usize },
    /// Exactly two odd cycles forming a single bow of size `m + n + 1`.
    OddBicyclic { bow_size: usize },
}

/// Closed-form integral closure of `I(G)^s`, or `None` where no formula applies.
pub fn closure_formula(g: &Graph, s: u32, budget: &Budget) -> Result<Option<MonomialIdeal>> {
    Ok(closure_formula_case(g, s, budget)?.map(|(ideal, _)| ideal))
}

pub fn closure_formula_case(g: &Graph, s: u32, budget: &Budget) -> Result<Option<(MonomialIdeal, ClosureCase)>> {
    let i = edge_ideal(g);
    let bows = g.bows(budget)?;
    let Some(first) = bows.first() else {
        return Ok(Some((i.power_with_budget(s, budget)?, ClosureCase::BowFree)));
    };
    let nv = i.nvars();
    let su = s as usize;
    if g.is_odd_bicyclic(budget)? {
        let size = first.size;
        let ps = i.power_with_budget(s, budget)?;
        let case = ClosureCase::OddBicyclic { bow_size: size };
        if su < size {
            return Ok(Some((ps, case)));
        }
        let tail = i.power_with_budget(s - size as u32, budget)?.scale(&first.monomial(nv))?;
        return Ok(Some((ps.sum(&tail)?, case)));
    }
    let k1 = first.size;
    let case = ClosureCase::SmallPower { smallest_bow: k1 };
    if su < k1 {
        return Ok(Some((i.power_with_budget(s, budget)?, case)));
    }
    if su > k1 {
        return Ok(None);
    }
    let mut seen = HashSet::new();
    let extra: Vec<Monomial> = bows
        .iter()
        .filter(|b| b.size == k1 && seen.insert(b.vertex_set()))
        .map(|b| b.monomial(nv))
        .collect();
    Ok(Some((i.power_with_budget(s, budget)?.with_generators(extra)?, case)))
}

/// Sound but incomplete test for integral dependence: is `m^k ∈ I^k` for some
/// `k <= kmax`? Decided by searching for `k` generators whose product divides
/// `m^k`.
pub fn power_membership_oracle(ideal: &MonomialIdeal, m: &Monomial, kmax: u32) -> Result<bool> {
    if m.nvars() != ideal.nvars() {
        return Err(Error::ContextMismatch(format!("{} vs {} variables", m.nvars(), ideal.nvars())));
    }
    for k in 1..=kmax {
        let target: Vec<u32> = m.exponents().iter().map(|&e| e * k).collect();
        let mut failed = HashSet::new();
        if factor_search(ideal.gens(), 0, k, &mut target.clone(), &mut failed) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn factor_search(gens: &[Monomial], start: usize, left: u32, rem: &mut Vec<u32>, failed: &mut HashSet<(usize, u32, Vec<u32>)>) -> bool {
    if left == 0 {
        return true;
    }
    let key = (start, left, rem.clone());
    if failed.contains(&key) {
        return false;
    }
    for (idx, g) in gens.iter().enumerate().skip(start) {
        if g.exponents().iter().zip(rem.iter()).all(|(a, b)| a <= b) {
            for (r, a) in rem.iter_mut().zip(g.exponents()) {
                *r -= a;
            }
            let ok = factor_search(gens, idx, left - 1, rem, failed);
            for (r, a) in rem.iter_mut().zip(g.exponents()) {
                *r += a;
            }
            if ok {
                return true;
            }
        }
    }
    failed.insert(key);
    false
}

/// Pairs of vertices even-connected with respect to an edge multiset, with a
/// witness walk for each pair.
#[derive(Debug, Clone)]
pub struct EvenConnectionQuery {
    pub edges: Vec<(usize, usize)>,
    /// Sorted pairs `(u, v)` with `u <= v`.
    pub pairs: Vec<(usize, usize)>,
    /// `witnesses[i]` is a walk `p_0 .. p_{2k+1}` for `pairs[i]`.
    pub witnesses: Vec<Vec<usize>>,
}

fn norm_edge(e: (usize, usize)) -> (usize, usize) {
    (e.0.min(e.1), e.0.max(e.1))
}

/// Finds every pair `(u, v)`, `u = v` allowed, joined by a walk
/// `p_0 p_1 .. p_{2k+1}` with `k >= 1` whose edges `p_{2l-1} p_{2l}` are drawn
/// from `edges` without exceeding their multiplicities.
pub fn even_connected_pairs(g: &Graph, edges: &[(usize, usize)]) -> Result<EvenConnectionQuery> {
    let mut distinct: Vec<(usize, usize)> = edges.iter().map(|&e| norm_edge(e)).collect();
    for &(u, v) in &distinct {
        if !g.has_edge(u, v) {
            return Err(Error::invalid(format!("{}-{} is not an edge", u + 1, v + 1)));
        }
    }
    distinct.sort_unstable();
    distinct.dedup();
    let mult: Vec<u8> = distinct
        .iter()
        .map(|d| edges.iter().filter(|&&e| norm_edge(e) == *d).count() as u8)
        .collect();
    let mut found: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for u in g.vertices() {
        let mut seen: HashSet<(usize, Vec<u8>)> = HashSet::new();
        let mut walk = vec![u];
        for p1 in bits(g.neighbors(u)) {
            walk.push(p1);
            walk_from(g, &distinct, &mut mult.clone(), &mut walk, &mut seen, &mut found);
            walk.pop();
        }
    }
    let mut pairs: Vec<(usize, usize)> = found.keys().copied().collect();
    pairs.sort_unstable();
    let witnesses = pairs.iter().map(|p| found[p].clone()).collect();
    Ok(EvenConnectionQuery {
        edges: edges.to_vec(),
        pairs,
        witnesses,
    })
}

/// Extends a walk that currently ends at an odd position.
fn walk_from(
    g: &Graph,
    distinct: &[(usize, usize)],
    left: &mut Vec<u8>,
    walk: &mut Vec<usize>,
    seen: &mut HashSet<(usize, Vec<u8>)>,
    found: &mut HashMap<(usize, usize), Vec<usize>>,
) {
    let a = *walk.last().expect("nonempty walk");
    if !seen.insert((a, left.clone())) {
        return;
    }
    for i in 0..distinct.len() {
        if left[i] == 0 {
            continue;
        }
        let (x, y) = distinct[i];
        let b = if a == x {
            y
        } else if a == y {
            x
        } else {
            continue;
        };
        left[i] -= 1;
        walk.push(b);
        for c in bits(g.neighbors(b)) {
            walk.push(c);
            let key = (walk[0].min(c), walk[0].max(c));
            found.entry(key).or_insert_with(|| walk.clone());
            walk_from(g, distinct, left, walk, seen, found);
            walk.pop();
        }
        walk.pop();
        left[i] += 1;
    }
}

/// `I(G) + (uv : u, v even-connected w.r.t. e_1..e_{s-1})`, the predicted
/// value of `I(G)^s : e_1 ... e_{s-1}`.
pub fn banerjee_colon(g: &Graph, s: u32, edges: &[(usize, usize)]) -> Result<MonomialIdeal> {
    if s < 2 || edges.len() + 1 != s as usize {
        return Err(Error::invalid("need s >= 2 and exactly s - 1 edges"));
    }
    let i = edge_ideal(g);
    let q = even_connected_pairs(g, edges)?;
    let n = i.nvars();
    i.with_generators(q.pairs.iter().map(|&(u, v)| edge_product(n, &[(u, v)])))
}

/// Product of the given edges' monomials.
pub fn edge_product(n: usize, edges: &[(usize, usize)]) -> Monomial {
    let mut e = vec![0u32; n];
    for &(u, v) in edges {
        e[u] += 1;
        e[v] += 1;
    }
    Monomial::new(&e)
}

/// `(x_w : w ∈ W_T) + I(H_T)`, after checking that `m_T ∉ I(G)^k` and
/// `x m_T ∈ I(G)^k` for every `x ∈ W_T`.
pub fn colon_structure(g: &Graph, k: u32, t: VertexSet, budget: &Budget) -> Result<MonomialIdeal> {
    let i = edge_ideal(g);
    let ik = i.power_with_budget(k, budget)?;
    let tc = g.t_context(t)?;
    if ik.contains_unchecked(&tc.m) {
        return Err(Error::Hypothesis {
            reason: format!("m_T lies in I^{k}"),
            witness: tc.m.to_token_string(i.ctx()),
        });
    }
    for x in bits(tc.w) {
        let xm = tc.m.mul_unchecked(&Monomial::var(i.nvars(), x))?;
        if !ik.contains_unchecked(&xm) {
            return Err(Error::Hypothesis {
                reason: format!("x * m_T is not in I^{k}"),
                witness: xm.to_token_string(i.ctx()),
            });
        }
    }
    let vars = MonomialIdeal::variables(i.ctx().clone(), bits(tc.w));
    vars.sum(&edge_ideal_in(i.ctx().clone(), &tc.h))
}

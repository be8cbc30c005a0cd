use super::Graph;
use crate::error::{Error, Result};

/// A maximum independent set of the graph with adjacency rows `adj`,
/// restricted to the vertices in `cand`. Exact branch and bound.
pub fn max_independent_set(adj: &[u128], cand: u128) -> u128 {
    let mut best = 0u128;
    mis(adj, cand, 0, &mut best);
    best
}

fn mis(adj: &[u128], cand: u128, chosen: u128, best: &mut u128) {
    if cand == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + greedy_clique_cover_bound(adj, cand) <= best.count_ones() {
        return;
    }
    // A vertex of degree at most one can always be taken. Otherwise branch on
    // a vertex of maximum degree: take it, or drop it.
    let mut pivot = 0;
    let mut deg = 0;
    let mut c = cand;
    while c != 0 {
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        let d = (adj[v] & cand).count_ones();
        if d <= 1 {
            return mis_take(adj, cand, chosen, v, best);
        }
        if d > deg {
            deg = d;
            pivot = v;
        }
    }
    mis_take(adj, cand, chosen, pivot, best);
    mis(adj, cand & !(1u128 << pivot), chosen, best);
}

fn mis_take(adj: &[u128], cand: u128, chosen: u128, v: usize, best: &mut u128) {
    mis(adj, cand & !adj[v] & !(1u128 << v), chosen | 1u128 << v, best);
}

/// Upper bound on the independence number: number of cliques in a greedy
/// clique cover.
fn greedy_clique_cover_bound(adj: &[u128], cand: u128) -> u32 {
    let mut left = cand;
    let mut cliques = 0;
    while left != 0 {
        let v = left.trailing_zeros() as usize;
        let mut clique_common = adj[v] & left;
        left &= !(1u128 << v);
        while clique_common != 0 {
            let u = clique_common.trailing_zeros() as usize;
            left &= !(1u128 << u);
            clique_common &= adj[u] & !(1u128 << u);
        }
        cliques += 1;
    }
    cliques
}

impl Graph {
    /// The largest number of edges whose endpoints induce a perfect matching.
    ///
    /// Two edges can coexist exactly when they are disjoint and no edge joins
    /// them, so this is an independence number on the conflict graph of edges.
    pub fn induced_matching_number(&self) -> usize {
        self.try_induced_matching_number()
            .expect("conflict graph within 128 edges")
    }

    pub fn try_induced_matching_number(&self) -> Result<usize> {
        Ok(self.try_induced_matching_edges()?.len())
    }

    /// The edges of one maximum induced matching.
    pub fn try_induced_matching_edges(&self) -> Result<Vec<(usize, usize)>> {
        let edges = self.edges();
        if edges.len() > 128 {
            return Err(Error::invalid(format!(
                "induced matching search supports at most 128 edges, got {}",
                edges.len()
            )));
        }
        let closed: Vec<u64> = edges
            .iter()
            .map(|&(u, v)| (1u64 << u) | (1u64 << v) | self.adj[u] | self.adj[v])
            .collect();
        let mut conflict = vec![0u128; edges.len()];
        for i in 0..edges.len() {
            let (u, v) = edges[i];
            let ends = (1u64 << u) | (1u64 << v);
            for j in i + 1..edges.len() {
                if closed[j] & ends != 0 {
                    conflict[i] |= 1 << j;
                    conflict[j] |= 1 << i;
                }
            }
        }
        let all = if edges.len() == 128 { u128::MAX } else { (1u128 << edges.len()) - 1 };
        let best = max_independent_set(&conflict, all);
        Ok((0..edges.len()).filter(|&i| best >> i & 1 == 1).map(|i| edges[i]).collect())
    }
}

//! Finite simple graphs on at most 64 vertices.
//!
//! Vertices are addressed by 0-based index; vertex `i` corresponds to the ring
//! variable `x_{i+1}`. The text format and all human-facing output use 1-based
//! labels. Vertex sets are `u64` bitmasks.

mod cycles;
mod matching;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

pub use cycles::{Bow, Cycle};
pub use matching::max_independent_set;

pub type VertexSet = u64;

pub const MAX_VERTICES: usize = 64;

pub(crate) fn bits(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut s = set;
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

pub fn set_of(vs: &[usize]) -> VertexSet {
    vs.iter().fold(0, |acc, &v| acc | (1u64 << v))
}

/// A simple graph whose vertices are a subset of `0..n`.
///
/// Induced subgraphs keep the ambient vertex numbering, so their edge ideals
/// live in the same ring as the parent's.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    present: VertexSet,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
        write!(f, "Graph(n={}, [{}])", self.n, edges.join(" "))
    }
}

/// The data attached to a vertex set `T`: its neighborhood `W`, the induced
/// graph `H` on the complement of `W`, and the squarefree monomial of `T`.
#[derive(Debug, Clone)]
pub struct TContext {
    pub t: VertexSet,
    pub w: VertexSet,
    pub h: Graph,
    pub m: Monomial,
}

fn full(n: usize) -> VertexSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::invalid(format!("at most {MAX_VERTICES} vertices supported, got {n}")));
        }
        Ok(Graph {
            n,
            present: full(n),
            adj: vec![0; n],
        })
    }

    /// Builds a graph from 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn cycle(len: usize) -> Self {
        assert!((3..=MAX_VERTICES).contains(&len));
        let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        Self::from_edges(len, &edges).expect("valid cycle")
    }

    pub fn path(len: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&len));
        let edges: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        Self::from_edges(len, &edges).expect("valid path")
    }

    /// Cycles `C_{2m+1}` and `C_{2n+1}` joined by a path with `l` edges from
    /// the last vertex of the first cycle to the first vertex of the second.
    /// With `l >= 2` this is an odd bicyclic graph whose one bow has size
    /// `m + n + 1`.
    pub fn joined_cycles(m: usize, n: usize, l: usize) -> Result<Self> {
        if m == 0 || n == 0 || l == 0 {
            return Err(Error::invalid("joined cycles need m, n, l >= 1"));
        }
        let a = 2 * m + 1;
        let b = 2 * n + 1;
        let total = a + (l - 1) + b;
        if total > MAX_VERTICES {
            return Err(Error::invalid(format!("{total} vertices exceeds {MAX_VERTICES}")));
        }
        let mut edges: Vec<(usize, usize)> = (0..a).map(|i| (i, (i + 1) % a)).collect();
        let start = a + l - 1;
        edges.extend((0..b).map(|i| (start + i, start + (i + 1) % b)));
        edges.extend((0..l).map(|i| (a - 1 + i, a + i)));
        Self::from_edges(total, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!("edge {}-{} outside 1..{}", u + 1, v + 1, self.n)));
        }
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {}", u + 1)));
        }
        if !self.is_present(u) || !self.is_present(v) {
            return Err(Error::invalid("edge touches a deleted vertex"));
        }
        if self.has_edge(u, v) {
            return Err(Error::invalid(format!("duplicate edge {}-{}", u + 1, v + 1)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    /// Size of the ambient vertex range (the number of ring variables).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.present
    }

    pub fn vertices(&self) -> Vec<usize> {
        bits(self.present).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.present.count_ones() as usize
    }

    pub fn is_present(&self, v: usize) -> bool {
        v < self.n && self.present >> v & 1 == 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in bits(self.present) {
            for v in bits(self.adj[u] & !full(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// All vertices with a neighbor in `set`.
    pub fn neighborhood(&self, set: VertexSet) -> VertexSet {
        bits(set & self.present).fold(0, |acc, v| acc | self.adj[v])
    }

    fn check_set(&self, set: VertexSet) -> Result<()> {
        let stray = set & !self.present;
        if stray != 0 {
            return Err(Error::invalid(format!(
                "vertex {} is not in the graph",
                stray.trailing_zeros() + 1
            )));
        }
        Ok(())
    }

    /// The subgraph induced on `set`, keeping ambient numbering.
    pub fn induced(&self, set: VertexSet) -> Result<Graph> {
        self.check_set(set)?;
        Ok(self.induced_unchecked(set))
    }

    pub(crate) fn induced_unchecked(&self, set: VertexSet) -> Graph {
        Graph {
            n: self.n,
            present: set,
            adj: self.adj.iter().enumerate().map(|(v, &a)| if set >> v & 1 == 1 { a & set } else { 0 }).collect(),
        }
    }

    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<Graph> {
        if let Some(&v) = vs.iter().find(|&&v| v >= self.n) {
            return Err(Error::invalid(format!("vertex {} is not in the graph", v + 1)));
        }
        self.induced(set_of(vs))
    }

    /// Removes vertices that have no edges.
    pub fn without_isolated(&self) -> Graph {
        let keep = bits(self.present).filter(|&v| self.adj[v] != 0).fold(0, |a, v| a | 1 << v);
        self.induced_unchecked(keep)
    }

    pub fn t_context(&self, t: VertexSet) -> Result<TContext> {
        self.check_set(t)?;
        let w = self.neighborhood(t);
        Ok(TContext {
            t,
            w,
            h: self.induced_unchecked(self.present & !w),
            m: Monomial::squarefree(self.n, bits(t)),
        })
    }

    /// Connected components as vertex sets, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.present;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let grown = comp | self.neighborhood(comp);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn bfs(&self, sources: VertexSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        for s in bits(sources & self.present) {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have distances");
            for v in bits(self.adj[u]) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Least BFS distance between the two sets; `None` when unreachable.
    pub fn distance(&self, a: VertexSet, b: VertexSet) -> Result<Option<usize>> {
        if a == 0 || b == 0 {
            return Err(Error::invalid("distance needs nonempty vertex sets"));
        }
        self.check_set(a | b)?;
        let dist = self.bfs(a);
        Ok(bits(b).filter_map(|v| dist[v]).min())
    }

    /// `None` if the graph is bipartite, otherwise an odd cycle as a vertex list.
    pub fn odd_cycle_witness(&self) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![usize::MAX; self.n];
        for root in bits(self.present) {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in bits(self.adj[u]) {
                    if depth[v] == usize::MAX {
                        depth[v] = depth[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if depth[v] == depth[u] && u < v {
                        // Climb both tree paths to their meeting point.
                        let (mut a, mut b) = (u, v);
                        let mut left = vec![a];
                        let mut right = vec![b];
                        while a != b {
                            a = parent[a];
                            b = parent[b];
                            left.push(a);
                            right.push(b);
                        }
                        right.pop();
                        left.extend(right.into_iter().rev());
                        return Some(left);
                    }
                }
            }
        }
        None
    }

    pub fn is_bipartite(&self) -> bool {
        self.odd_cycle_witness().is_none()
    }

    /// Length of a shortest odd cycle. A shortest odd cycle has no chord, so
    /// this is also the size of the smallest induced odd cycle.
    pub fn odd_girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in bits(self.present) {
            let dist = self.bfs(1 << s);
            for (u, v) in self.edges() {
                if let (Some(du), Some(dv)) = (dist[u], dist[v]) {
                    if du == dv {
                        let len = 2 * du + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Vertex cover number: the present vertex count minus the independence number.
    pub fn vertex_cover_number(&self) -> usize {
        let adj: Vec<u128> = self.adj.iter().map(|&a| a as u128).collect();
        self.vertex_count() - max_independent_set(&adj, self.present as u128).count_ones() as usize
    }

    /// Replaces vertex `i` by `v[i]` pairwise non-adjacent copies with the same
    /// neighbors; `v[i] = 0` deletes it. Copies are numbered after `n`.
    pub fn parallelization(&self, v: &[u32]) -> Result<Graph> {
        if v.len() != self.n {
            return Err(Error::invalid(format!("weight vector has length {}, expected {}", v.len(), self.n)));
        }
        let extra: usize = v.iter().map(|&k| k.saturating_sub(1) as usize).sum();
        let mut g = Graph::empty(self.n + extra)?;
        // Copies of each original vertex: the vertex itself, then fresh labels.
        let mut copies: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        let mut next = self.n;
        for i in 0..self.n {
            if v[i] == 0 || !self.is_present(i) {
                continue;
            }
            copies[i].push(i);
            for _ in 1..v[i] {
                copies[i].push(next);
                next += 1;
            }
        }
        let mut present = 0u64;
        for c in copies.iter().flatten() {
            present |= 1 << c;
        }
        for (a, b) in self.edges() {
            for &ca in &copies[a] {
                for &cb in &copies[b] {
                    g.add_edge(ca, cb)?;
                }
            }
        }
        Ok(g.induced_unchecked(present))
    }

    /// Adds a copy of `x` with the same neighborhood, numbered `n`.
    pub fn duplication(&self, x: usize) -> Result<Graph> {
        if !self.is_present(x) {
            return Err(Error::invalid(format!("vertex {} is not in the graph", x + 1)));
        }
        let mut v: Vec<u32> = (0..self.n).map(|i| u32::from(self.is_present(i))).collect();
        v[x] = 2;
        self.parallelization(&v)
    }

    /// Disjoint union; the vertices of `other` are shifted past `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n)?;
        }
        let present = self.present | other.present << self.n;
        Ok(g.induced_unchecked(present))
    }

    /// Edge-list text, 1-based, with a `vertices:` header.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

/// Parses an edge list: `u v` per line with 1-based labels, `#` comments, and
/// an optional `vertices: n` header declaring isolated vertices.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            let n = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad vertex count {:?}", rest.trim())))?;
            declared = Some(n);
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::parse(lineno, format!("expected `u v`, found {line:?}")));
        }
        let mut ends = [0usize; 2];
        for (slot, p) in ends.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .ok()
                .filter(|&x: &usize| x >= 1)
                .ok_or_else(|| Error::parse(lineno, format!("bad vertex label {p:?}")))?;
        }
        if ends[0] == ends[1] {
            return Err(Error::parse(lineno, format!("loop at vertex {}", ends[0])));
        }
        edges.push((lineno, ends[0] - 1, ends[1] - 1));
    }
    let max_label = edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < max_label => {
            return Err(Error::parse(0, format!("vertex label {max_label} exceeds declared count {n}")))
        }
        Some(n) => n,
        None => max_label,
    };
    let mut g = Graph::empty(n).map_err(|e| Error::parse(0, e.to_string()))?;
    for (lineno, u, v) in edges {
        g.add_edge(u, v).map_err(|e| Error::parse(lineno, e.to_string()))?;
    }
    Ok(g)
}

use super::{bits, Graph, VertexSet};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A simple cycle, stored with its least vertex first and its second vertex
/// smaller than its last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Canonicalizes a cyclic vertex sequence.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        let k = vertices.len();
        let pos = (0..k).min_by_key(|&i| vertices[i]).unwrap_or(0);
        vertices.rotate_left(pos);
        if k > 2 && vertices[1] > vertices[k - 1] {
            vertices[1..].reverse();
        }
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().fold(0, |a, &v| a | 1 << v)
    }

    pub fn monomial(&self, nvars: usize) -> Monomial {
        Monomial::squarefree(nvars, self.vertices.iter().copied())
    }

    pub fn label(&self) -> String {
        let vs: Vec<String> = self.vertices.iter().map(|v| (v + 1).to_string()).collect();
        format!("({})", vs.join(" "))
    }
}

/// Two vertex-disjoint odd cycles at distance at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bow {
    pub a: Cycle,
    pub b: Cycle,
    /// Half the number of vertices.
    pub size: usize,
}

impl Bow {
    pub fn vertex_set(&self) -> VertexSet {
        self.a.vertex_set() | self.b.vertex_set()
    }

    pub fn monomial(&self, nvars: usize) -> Monomial {
        Monomial::squarefree(nvars, bits(self.vertex_set()))
    }
}

struct CycleSearch<'a> {
    g: &'a Graph,
    start: usize,
    path: Vec<usize>,
    out: Vec<Cycle>,
    induced_only: bool,
    odd_only: bool,
    limit: usize,
}

impl CycleSearch<'_> {
    fn extend(&mut self, visited: VertexSet) -> Result<()> {
        let last = *self.path.last().expect("path starts at the root");
        let higher = !((1u64 << self.start) | ((1u64 << self.start) - 1));
        if self.path.len() >= 3 && self.g.has_edge(last, self.start) && self.path[1] < last {
            self.record(visited)?;
        }
        for v in bits(self.g.adj[last] & higher & !visited) {
            self.path.push(v);
            self.extend(visited | 1 << v)?;
            self.path.pop();
        }
        Ok(())
    }

    fn record(&mut self, set: VertexSet) -> Result<()> {
        if self.odd_only && self.path.len() % 2 == 0 {
            return Ok(());
        }
        if self.induced_only && bits(set).any(|v| (self.g.adj[v] & set).count_ones() != 2) {
            return Ok(());
        }
        if self.out.len() >= self.limit {
            return Err(Error::Budget {
                what: "cycle count",
                size: self.out.len() + 1,
                limit: self.limit,
            });
        }
        self.out.push(Cycle {
            vertices: self.path.clone(),
        });
        Ok(())
    }
}

impl Graph {
    /// All simple cycles, optionally only chordless ones and only odd ones,
    /// sorted canonically. Fails once more than `budget.max_cycles` are found.
    pub fn enumerate_cycles(&self, induced_only: bool, odd_only: bool, budget: &Budget) -> Result<Vec<Cycle>> {
        let mut search = CycleSearch {
            g: self,
            start: 0,
            path: Vec::new(),
            out: Vec::new(),
            induced_only,
            odd_only,
            limit: budget.max_cycles,
        };
        for s in bits(self.present) {
            search.start = s;
            search.path = vec![s];
            search.extend(1 << s)?;
        }
        let mut out = search.out;
        out.sort();
        Ok(out)
    }

    pub fn odd_cycles(&self, budget: &Budget) -> Result<Vec<Cycle>> {
        self.enumerate_cycles(false, true, budget)
    }

    /// Chordless odd cycles of length exactly `len`.
    pub fn induced_odd_cycles_of_len(&self, len: usize, budget: &Budget) -> Result<Vec<Cycle>> {
        Ok(self
            .enumerate_cycles(true, true, budget)?
            .into_iter()
            .filter(|c| c.len() == len)
            .collect())
    }

    /// Every bow built from a pair of simple odd cycles, ordered by size.
    pub fn bows(&self, budget: &Budget) -> Result<Vec<Bow>> {
        let odd = self.odd_cycles(budget)?;
        let closed: Vec<VertexSet> = odd.iter().map(|c| c.vertex_set() | self.neighborhood(c.vertex_set())).collect();
        let mut out = Vec::new();
        for i in 0..odd.len() {
            for j in i + 1..odd.len() {
                if odd[i].vertex_set() & closed[j] == 0 {
                    out.push(Bow {
                        a: odd[i].clone(),
                        b: odd[j].clone(),
                        size: (odd[i].len() + odd[j].len()) / 2,
                    });
                }
            }
        }
        out.sort_by(|x, y| x.size.cmp(&y.size).then_with(|| (&x.a, &x.b).cmp(&(&y.a, &y.b))));
        Ok(out)
    }

    pub fn smallest_bow_size(&self, budget: &Budget) -> Result<Option<usize>> {
        Ok(self.bows(budget)?.first().map(|b| b.size))
    }

    /// Bow-free graphs are exactly those whose edge ideal is normal.
    pub fn is_normal(&self, budget: &Budget) -> Result<bool> {
        Ok(self.bows(budget)?.is_empty())
    }

    /// True if the graph has exactly two simple odd cycles.
    pub fn is_odd_bicyclic(&self, budget: &Budget) -> Result<bool> {
        Ok(self.odd_cycles(budget)?.len() == 2)
    }
}

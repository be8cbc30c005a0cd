//! Deterministic graph corpora for the verification suites.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{parse_graph, Graph};
use crate::monomial::{parse_ideal, MonomialIdeal};

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub id: String,
    pub graph: Graph,
}

#[derive(Debug, Clone)]
pub struct NamedIdeal {
    pub id: String,
    pub ideal: MonomialIdeal,
}

/// Graphs for the suites plus raw monomial ideals that only some checks use.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub graphs: Vec<NamedGraph>,
    pub ideals: Vec<NamedIdeal>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    fn extend(&mut self, other: Corpus) {
        for g in other.graphs {
            if !self.graphs.iter().any(|h| h.id == g.id) {
                self.graphs.push(g);
            }
        }
        for i in other.ideals {
            if !self.ideals.iter().any(|j| j.id == i.id) {
                self.ideals.push(i);
            }
        }
    }

    pub fn graph(&self, id: &str) -> Option<&Graph> {
        self.graphs.iter().find(|g| g.id == id).map(|g| &g.graph)
    }
}

/// Where a corpus comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSpec {
    Cycles { from: usize, to: usize },
    Bicyclic(Vec<(usize, usize, usize)>),
    BowJoined,
    Random { count: usize, p: f64, seed: u64 },
    Fixtures,
    /// Union of every builtin family with default parameters.
    Acceptance { seed: u64 },
    Directory(String),
}

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_RANDOM_COUNT: usize = 30;

pub const DEFAULT_BICYCLIC: [(usize, usize, usize); 4] = [(1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3)];

impl CorpusSpec {
    /// Parses `builtin:NAME`, `builtin:NAME(args)`, `dir:PATH`, or a bare path.
    ///
    /// Accepted forms: `cycles`, `cycles(5..9)`, `bicyclic`, `bicyclic(1,1,2)`,
    /// `bow-joined`, `random`, `random(COUNT,P)`, `fixtures`,
    /// `acceptance`. `seed` is used by the random families.
    pub fn parse(text: &str, seed: u64) -> Result<Self> {
        let text = text.trim();
        let Some(body) = text.strip_prefix("builtin:") else {
            let path = text.strip_prefix("dir:").unwrap_or(text);
            return Ok(CorpusSpec::Directory(path.to_string()));
        };
        let (name, args) = match body.find('(') {
            Some(i) => {
                let inner = body[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::invalid(format!("unclosed argument list in {text:?}")))?;
                (&body[..i], Some(inner))
            }
            None => (body, None),
        };
        let nums = |s: &str| -> Result<Vec<usize>> {
            s.split(|c| c == ',' || c == '.')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.trim().parse().map_err(|_| Error::invalid(format!("bad number {p:?} in {text:?}"))))
                .collect()
        };
        match (name, args) {
            ("cycles", None) => Ok(CorpusSpec::Cycles { from: 3, to: 9 }),
            ("cycles", Some(a)) => match nums(a)?.as_slice() {
                [x] => Ok(CorpusSpec::Cycles { from: *x, to: *x }),
                [x, y] if 3 <= *x && x <= y => Ok(CorpusSpec::Cycles { from: *x, to: *y }),
                _ => Err(Error::invalid(format!("cycles needs a range like 5..9, got {a:?}"))),
            },
            ("bicyclic", None) => Ok(CorpusSpec::Bicyclic(DEFAULT_BICYCLIC.to_vec())),
            ("bicyclic", Some(a)) => match nums(a)?.as_slice() {
                [m, n, l] => Ok(CorpusSpec::Bicyclic(vec![(*m, *n, *l)])),
                _ => Err(Error::invalid(format!("bicyclic needs (m,n,l), got {a:?}"))),
            },
            ("bow-joined", None) => Ok(CorpusSpec::BowJoined),
            ("random", None) => Ok(CorpusSpec::Random {
                count: DEFAULT_RANDOM_COUNT,
                p: 0.5,
                seed,
            }),
            ("random", Some(a)) => {
                let parts: Vec<&str> = a.split(',').map(str::trim).collect();
                let count = parts
                    .first()
                    .and_then(|c| c.parse().ok())
                    .ok_or_else(|| Error::invalid(format!("random needs (count[,p]), got {a:?}")))?;
                let p = match parts.get(1) {
                    Some(p) => p.parse().ok().filter(|p: &f64| (0.0..=1.0).contains(p)),
                    None => Some(0.5),
                }
                .ok_or_else(|| Error::invalid(format!("bad edge probability in {a:?}")))?;
                Ok(CorpusSpec::Random { count, p, seed })
            }
            ("fixtures" | "paper-fixtures", None) => Ok(CorpusSpec::Fixtures),
            ("acceptance", None) => Ok(CorpusSpec::Acceptance { seed }),
            _ => Err(Error::invalid(format!("unknown corpus {text:?}"))),
        }
    }

    pub fn expand(&self) -> Result<Corpus> {
        match self {
            CorpusSpec::Cycles { from, to } => {
                if *from < 3 || *to > 64 {
                    return Err(Error::invalid("cycle lengths must lie in 3..=64"));
                }
                Ok(Corpus {
                    graphs: (*from..=*to)
                        .map(|k| NamedGraph {
                            id: format!("C{k}"),
                            graph: Graph::cycle(k),
                        })
                        .collect(),
                    ideals: Vec::new(),
                })
            }
            CorpusSpec::Bicyclic(list) => {
                let mut graphs = Vec::new();
                for &(m, n, l) in list {
                    if l < 2 {
                        return Err(Error::invalid("bicyclic corpus members need a path of length at least 2"));
                    }
                    graphs.push(NamedGraph {
                        id: format!("bicyclic({m},{n},{l})"),
                        graph: Graph::joined_cycles(m, n, l)?,
                    });
                }
                Ok(Corpus { graphs, ideals: Vec::new() })
            }
            CorpusSpec::BowJoined => Ok(Corpus {
                graphs: bow_joined()?,
                ideals: Vec::new(),
            }),
            CorpusSpec::Random { count, p, seed } => Ok(Corpus {
                graphs: random_graphs(*count, *p, *seed)?,
                ideals: Vec::new(),
            }),
            CorpusSpec::Fixtures => fixtures(),
            CorpusSpec::Acceptance { seed } => {
                let mut out = Corpus::default();
                out.extend(CorpusSpec::Fixtures.expand()?);
                out.extend(CorpusSpec::Cycles { from: 3, to: 9 }.expand()?);
                out.extend(CorpusSpec::Bicyclic(DEFAULT_BICYCLIC.to_vec()).expand()?);
                out.extend(CorpusSpec::BowJoined.expand()?);
                out.extend(
                    CorpusSpec::Random {
                        count: DEFAULT_RANDOM_COUNT,
                        p: 0.5,
                        seed: *seed,
                    }
                    .expand()?,
                );
                Ok(out)
            }
            CorpusSpec::Directory(path) => load_directory(Path::new(path)),
        }
    }
}

/// Pairs of odd cycles joined so that no bow appears (shared vertex or a
/// single edge), plus one graph with several smallest bows.
fn bow_joined() -> Result<Vec<NamedGraph>> {
    let mut out = Vec::new();
    for (m, n, l) in [(1, 1, 0), (1, 1, 1), (1, 2, 0), (1, 2, 1), (2, 2, 1)] {
        let g = if l == 0 { shared_vertex_cycles(m, n)? } else { Graph::joined_cycles(m, n, l)? };
        out.push(NamedGraph {
            id: format!("joined({m},{n},{l})"),
            graph: g,
        });
    }
    // A triangle two steps away from a K4: four bows of size 3.
    let mut k4_edges = vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)];
    for u in 4..8 {
        for v in u + 1..8 {
            k4_edges.push((u, v));
        }
    }
    out.push(NamedGraph {
        id: "triangle-path-K4".into(),
        graph: Graph::from_edges(8, &k4_edges)?,
    });
    Ok(out)
}

fn shared_vertex_cycles(m: usize, n: usize) -> Result<Graph> {
    let a = 2 * m + 1;
    let b = 2 * n + 1;
    let mut edges: Vec<(usize, usize)> = (0..a).map(|i| (i, (i + 1) % a)).collect();
    // Second cycle: a-1, a, ..., a+b-2, back to a-1.
    let ring: Vec<usize> = std::iter::once(a - 1).chain(a..a + b - 1).collect();
    edges.extend((0..b).map(|i| (ring[i], ring[(i + 1) % b])));
    Graph::from_edges(a + b - 1, &edges)
}

/// Connected non-bipartite Erdős–Rényi graphs on 5 to 8 vertices, distinct as
/// labelled graphs.
pub fn random_graphs(count: usize, p: f64, seed: u64) -> Result<Vec<NamedGraph>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("edge probability must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<NamedGraph> = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * (count + 1) {
            return Err(Error::invalid(format!("could not draw {count} connected non-bipartite graphs at p = {p}")));
        }
        let n = 5 + out.len() % 4;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if !g.is_connected() || g.is_bipartite() || out.iter().any(|h| h.graph == g) {
            continue;
        }
        out.push(NamedGraph {
            id: format!("random(seed={seed})#{}", out.len()),
            graph: g,
        });
    }
    Ok(out)
}

/// Small named graphs and ideals used throughout the checks.
pub fn fixtures() -> Result<Corpus> {
    let bow = Graph::joined_cycles(1, 1, 2)?;
    let edge = Graph::path(2);
    let graphs = vec![
        NamedGraph {
            id: "C5".into(),
            graph: Graph::cycle(5),
        },
        NamedGraph {
            id: "C7".into(),
            graph: Graph::cycle(7),
        },
        NamedGraph {
            id: "bow".into(),
            graph: bow.clone(),
        },
        NamedGraph {
            id: "C5+K2".into(),
            graph: Graph::cycle(5).disjoint_union(&edge)?,
        },
        NamedGraph {
            id: "bow+K2".into(),
            graph: bow.disjoint_union(&edge)?,
        },
        NamedGraph {
            id: "P4".into(),
            graph: Graph::path(4),
        },
        NamedGraph {
            id: "C4".into(),
            graph: Graph::cycle(4),
        },
    ];
    let ideals = vec![
        NamedIdeal {
            id: "squares".into(),
            ideal: parse_ideal("vars: x y\nx^2\ny^2\n")?,
        },
        NamedIdeal {
            id: "clutter6".into(),
            ideal: clutter6()?,
        },
    ];
    Ok(Corpus { graphs, ideals })
}

/// The squarefree 3-uniform clutter ideal in six variables whose square has
/// regularity 7 while its symbolic square and integral closure have 6.
pub fn clutter6() -> Result<MonomialIdeal> {
    parse_ideal("x1*x4*x5\nx1*x3*x6\nx2*x3*x4\nx2*x5*x6\nx3*x4*x5\nx3*x4*x6\nx3*x5*x6\nx4*x5*x6\n")
}

/// Reads `*.edges` / `*.graph` files as graphs and `*.ideal` files as ideals,
/// in sorted file-name order.
pub fn load_directory(dir: &Path) -> Result<Corpus> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::invalid(format!("cannot read {}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    let mut out = Corpus::default();
    for path in paths {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        if !matches!(ext, "edges" | "graph" | "ideal") {
            continue;
        }
        let id = path.file_name().and_then(|f| f.to_str()).unwrap_or("?").to_string();
        let text = std::fs::read_to_string(&path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        let annotate = |e: Error| Error::invalid(format!("{id}: {e}"));
        if ext == "ideal" {
            let ideal = parse_ideal(&text).map_err(annotate)?;
            out.ideals.push(NamedIdeal { id, ideal });
        } else {
            let graph = parse_graph(&text).map_err(annotate)?;
            out.graphs.push(NamedGraph { id, graph });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    #[test]
    fn parse_specs() {
        assert_eq!(CorpusSpec::parse("builtin:cycles(5..9)", 1).unwrap(), CorpusSpec::Cycles { from: 5, to: 9 });
        assert_eq!(CorpusSpec::parse("builtin:bicyclic(1,2,3)", 1).unwrap(), CorpusSpec::Bicyclic(vec![(1, 2, 3)]));
        assert_eq!(
            CorpusSpec::parse("builtin:random(10,0.4)", 3).unwrap(),
            CorpusSpec::Random {
                count: 10,
                p: 0.4,
                seed: 3
            }
        );
        assert_eq!(CorpusSpec::parse("some/dir", 0).unwrap(), CorpusSpec::Directory("some/dir".into()));
        assert!(CorpusSpec::parse("builtin:nosuch", 0).is_err());
        assert!(CorpusSpec::parse("builtin:cycles(9..5)", 0).is_err());
    }

    #[test]
    fn cycles_family() {
        let c = CorpusSpec::parse("builtin:cycles(5..9)", 0).unwrap().expand().unwrap();
        let ids: Vec<_> = c.graphs.iter().map(|g| g.id.as_str()).collect();
        assert_eq!(ids, ["C5", "C6", "C7", "C8", "C9"]);
    }

    #[test]
    fn bicyclic_family_shapes() {
        let b = Budget::default();
        let c = CorpusSpec::Bicyclic(DEFAULT_BICYCLIC.to_vec()).expand().unwrap();
        for (g, (m, n, l)) in c.graphs.iter().zip(DEFAULT_BICYCLIC) {
            assert_eq!(g.graph.vertex_count(), 2 * m + 2 * n + 2 + l - 1);
            assert!(g.graph.is_odd_bicyclic(&b).unwrap());
            assert_eq!(g.graph.smallest_bow_size(&b).unwrap(), Some(m + n + 1));
        }
        let bow = &c.graphs[0].graph;
        assert_eq!(bow.vertex_count(), 7);
        assert_eq!(bow.edge_count(), 8);
    }

    #[test]
    fn bow_joined_members() {
        let b = Budget::default();
        for g in bow_joined().unwrap() {
            let bows = g.graph.bows(&b).unwrap();
            if g.id == "triangle-path-K4" {
                assert_eq!(bows.len(), 4);
                assert!(!g.graph.is_odd_bicyclic(&b).unwrap());
            } else {
                assert!(bows.is_empty(), "{}", g.id);
                assert!(g.graph.is_odd_bicyclic(&b).unwrap(), "{}", g.id);
            }
        }
    }

    #[test]
    fn random_family_is_deterministic() {
        let a = random_graphs(12, 0.5, 7).unwrap();
        let b = random_graphs(12, 0.5, 7).unwrap();
        assert_eq!(a.len(), 12);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.graph, y.graph);
            assert!(x.graph.is_connected() && !x.graph.is_bipartite());
            assert!(x.graph.vertex_count() <= 8);
        }
        let c = random_graphs(12, 0.5, 8).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.graph != y.graph));
    }

    #[test]
    fn acceptance_corpus_has_enough_small_graphs() {
        let c = CorpusSpec::Acceptance { seed: DEFAULT_SEED }.expand().unwrap();
        let small = c
            .graphs
            .iter()
            .filter(|g| g.graph.vertex_count() <= 8 && g.graph.is_connected() && !g.graph.is_bipartite())
            .count();
        assert!(small >= 30, "{small}");
        assert_eq!(c.ideals.len(), 2);
    }

    #[test]
    fn directory_loading() {
        let dir = std::env::temp_dir().join(format!("edgereg-corpus-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("a.edges"), "1 2\n2 3\n1 3\n").unwrap();
        std::fs::write(dir.join("b.ideal"), "x1*x2\n").unwrap();
        std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
        let c = CorpusSpec::Directory(dir.display().to_string()).expand().unwrap();
        assert_eq!(c.graphs.len(), 1);
        assert_eq!(c.graphs[0].graph.edge_count(), 3);
        assert_eq!(c.ideals.len(), 1);
        std::fs::write(dir.join("c.edges"), "1 1\n").unwrap();
        assert!(CorpusSpec::Directory(dir.display().to_string()).expand().is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

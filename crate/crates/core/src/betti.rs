//! Multigraded Betti numbers and Castelnuovo-Mumford regularity.
//!
//! Nonzero multigraded Betti numbers of a monomial ideal `I` sit at elements of
//! its lcm lattice, and `beta_{i,a}(I)` is the dimension of the reduced homology
//! `H_{i-1}` of the upper Koszul complex
//! `K^a = { S ⊆ supp(a) : x^a / x_S ∈ I }`.
//! The lattice is streamed by a depth-first search over coordinates, and each
//! complex is shrunk by coreductions and collapses before any linear algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::packed;

/// Characteristic of the coefficient field: a prime below `2^31`, or 0 for Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldChar(u64);

impl FieldChar {
    pub const DEFAULT: FieldChar = FieldChar(32003);
    pub const RATIONALS: FieldChar = FieldChar(0);

    pub fn new(p: u64) -> Result<Self> {
        if p == 0 || (p < (1 << 31) && is_prime(p)) {
            Ok(FieldChar(p))
        } else {
            Err(Error::invalid(format!("characteristic must be 0 or a prime below 2^31, got {p}")))
        }
    }

    pub fn p(self) -> u64 {
        self.0
    }
}

impl Default for FieldChar {
    fn default() -> Self {
        Self::DEFAULT
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Regularity of an ideal; the zero ideal has regularity minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regularity {
    NegInfinity,
    Finite(i64),
}

impl Regularity {
    pub fn value(self) -> Option<i64> {
        match self {
            Regularity::NegInfinity => None,
            Regularity::Finite(r) => Some(r),
        }
    }
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularity::NegInfinity => write!(f, "-inf"),
            Regularity::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Regularity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Regularity::NegInfinity => s.serialize_str("-inf"),
            Regularity::Finite(r) => s.serialize_i64(*r),
        }
    }
}

/// Multigraded Betti numbers over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub char: FieldChar,
    /// `(i, multidegree) -> beta_{i,a}`, only nonzero entries.
    pub entries: BTreeMap<(usize, Vec<u32>), usize>,
    /// Lattice elements visited while building the table.
    pub lattice_size: usize,
    unit: bool,
}

#[derive(Serialize)]
struct EntryJson<'a> {
    i: usize,
    degree: u32,
    multidegree: &'a [u32],
    rank: usize,
}

#[derive(Serialize)]
struct TableJson<'a> {
    char: u64,
    entries: Vec<EntryJson<'a>>,
    regularity: Regularity,
}

impl BettiTable {
    /// Totals by `(i, total degree)`.
    pub fn coarse(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((i, a), r) in &self.entries {
            *out.entry((*i, a.iter().sum())).or_insert(0) += r;
        }
        out
    }

    /// Total Betti numbers `beta_i`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for ((i, _), r) in &self.entries {
            if out.len() <= *i {
                out.resize(i + 1, 0);
            }
            out[*i] += r;
        }
        out
    }

    pub fn regularity(&self) -> Regularity {
        if self.unit {
            return Regularity::Finite(0);
        }
        self.entries
            .keys()
            .map(|(i, a)| Regularity::Finite(a.iter().map(|&x| i64::from(x)).sum::<i64>() - *i as i64))
            .max()
            .unwrap_or(Regularity::NegInfinity)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries = self
            .entries
            .iter()
            .map(|((i, a), r)| EntryJson {
                i: *i,
                degree: a.iter().sum(),
                multidegree: a,
                rank: *r,
            })
            .collect();
        serde_json::to_value(TableJson {
            char: self.char.p(),
            entries,
            regularity: self.regularity(),
        })
        .expect("table serializes")
    }
}

/// Streams the lcm lattice of `gens`, calling `visit(a, divisors)` once per
/// element. `divisors` is the bitset of generators dividing `x^a`.
struct Lattice {
    n: usize,
    gens: Vec<u128>,
    words: usize,
    values: Vec<Vec<u32>>,
    /// `eq[j][v]`: generators with exponent exactly `v` at `j`.
    eq: Vec<Vec<Vec<u64>>>,
    /// `le[j][v]`: generators with exponent at most `v` at `j`.
    le: Vec<Vec<Vec<u64>>>,
}

fn and_into(out: &mut [u64], a: &[u64], b: &[u64]) -> bool {
    let mut any = 0;
    for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
        *o = x & y;
        any |= *o;
    }
    any != 0
}

fn meets(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

impl Lattice {
    fn new(ideal: &MonomialIdeal) -> Result<Self> {
        let n = ideal.nvars();
        if n > packed::LANES {
            return Err(Error::invalid(format!(
                "the Betti engine supports at most {} variables, got {n}",
                packed::LANES
            )));
        }
        let mut gens = Vec::with_capacity(ideal.len());
        let mut buf = [0u128; 1];
        for g in ideal.gens() {
            if !packed::pack_into(g.exponents(), &mut buf) {
                return Err(Error::invalid("the Betti engine supports exponents below 128"));
            }
            gens.push(buf[0]);
        }
        let m = gens.len();
        let words = m.div_ceil(64).max(1);
        let mut values = Vec::with_capacity(n);
        let mut eq = Vec::with_capacity(n);
        let mut le = Vec::with_capacity(n);
        for j in 0..n {
            let col: Vec<u32> = ideal.gens().iter().map(|g| g.exponents()[j]).collect();
            let maxv = col.iter().copied().max().unwrap_or(0) as usize;
            let mut e = vec![vec![0u64; words]; maxv + 1];
            for (gi, &v) in col.iter().enumerate() {
                e[v as usize][gi / 64] |= 1 << (gi % 64);
            }
            let mut l = e.clone();
            for v in 1..=maxv {
                let prev = l[v - 1].clone();
                for (w, p) in l[v].iter_mut().zip(prev) {
                    *w |= p;
                }
            }
            let mut vals: Vec<u32> = col.clone();
            vals.sort_unstable();
            vals.dedup();
            values.push(vals);
            eq.push(e);
            le.push(l);
        }
        Ok(Lattice {
            n,
            gens,
            words,
            values,
            eq,
            le,
        })
    }

    fn walk<F: FnMut(u128, &[u64]) -> Result<()>>(&self, visit: &mut F) -> Result<()> {
        let mut all = vec![0u64; self.words];
        for gi in 0..self.gens.len() {
            all[gi / 64] |= 1 << (gi % 64);
        }
        let mut exps = vec![0u32; self.n];
        let mut stack: Vec<Vec<u64>> = vec![vec![0; self.words]; self.n + 1];
        stack[0] = all;
        self.dfs(0, 0, &mut exps, &mut stack, visit)
    }

    fn dfs<F: FnMut(u128, &[u64]) -> Result<()>>(
        &self,
        j: usize,
        a: u128,
        exps: &mut [u32],
        stack: &mut [Vec<u64>],
        visit: &mut F,
    ) -> Result<()> {
        if j == self.n {
            return visit(a, &stack[j]);
        }
        for &v in &self.values[j] {
            let (head, tail) = stack.split_at_mut(j + 1);
            let cur = &head[j];
            let next = &mut tail[0];
            if !meets(cur, &self.eq[j][v as usize]) {
                continue;
            }
            if !and_into(next, cur, &self.le[j][v as usize]) {
                continue;
            }
            // Every coordinate fixed so far must still be attained by some
            // remaining candidate divisor.
            let attained = (0..j).all(|k| exps[k] == 0 || meets(next, &self.eq[k][exps[k] as usize]));
            if !attained {
                continue;
            }
            exps[j] = v;
            let a2 = a | (u128::from(v) << (8 * j));
            self.dfs(j + 1, a2, exps, stack, visit)?;
            exps[j] = 0;
        }
        Ok(())
    }
}

/// All elements of the lcm lattice of `I` (lcms of nonempty generator sets).
pub fn lcm_lattice(ideal: &MonomialIdeal, budget: &Budget) -> Result<Vec<Monomial>> {
    if ideal.is_zero() {
        return Err(Error::invalid("the zero ideal has an empty lcm lattice"));
    }
    let lat = Lattice::new(ideal)?;
    let n = ideal.nvars();
    let mut out = Vec::new();
    lat.walk(&mut |a, _| {
        if out.len() >= budget.max_lattice {
            return Err(Error::Budget {
                what: "lcm lattice size",
                size: out.len() + 1,
                limit: budget.max_lattice,
            });
        }
        out.push(Monomial::new(&unpack(a, n)));
        Ok(())
    })?;
    out.sort_by(crate::monomial::canonical_cmp);
    Ok(out)
}

fn unpack(a: u128, n: usize) -> Vec<u32> {
    (0..n).map(|j| ((a >> (8 * j)) & 0xff) as u32).collect()
}

/// One bit per lane, from the high bit of each byte.
#[inline]
fn lane_bits(hi: u128) -> u32 {
    const MAGIC: u64 = 0x0102_0408_1020_4080;
    const LOW: u64 = 0x0101_0101_0101_0101;
    let lo = ((hi as u64) >> 7) & LOW;
    let up = (((hi >> 64) as u64) >> 7) & LOW;
    ((lo.wrapping_mul(MAGIC) >> 56) | ((up.wrapping_mul(MAGIC) >> 56) << 8)) as u32
}

#[inline]
fn support_lanes(a: u128) -> u32 {
    // A lane is nonzero iff adding 0x7f sets its high bit or it already has it.
    const LOW7: u128 = 0x7f7f_7f7f_7f7f_7f7f_7f7f_7f7f_7f7f_7f7f;
    lane_bits(((a & LOW7) + LOW7) | a)
}

/// A finite simplicial complex on vertices `0..k`, as a face indicator over
/// all `2^k` subsets. The empty face is included whenever the complex is
/// nonempty, so homology is reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    k: usize,
    face: Vec<bool>,
}

impl SimplicialComplex {
    /// The complex generated by the given facets (bitmasks over `0..k`).
    pub fn from_facets(k: usize, facets: &[u32]) -> Self {
        assert!(k <= 20, "complex too large");
        let mut face = vec![false; 1 << k];
        for &f in facets {
            face[f as usize] = true;
        }
        for j in 0..k {
            let bit = 1usize << j;
            for m in 0..face.len() {
                if m & bit != 0 && face[m] {
                    face[m ^ bit] = true;
                }
            }
        }
        SimplicialComplex { k, face }
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn faces(&self) -> Vec<u32> {
        (0..self.face.len()).filter(|&m| self.face[m]).map(|m| m as u32).collect()
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.face.get(mask as usize).copied().unwrap_or(false)
    }

    /// `sum_d (-1)^d f_d`, counting the empty face in dimension -1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces()
            .iter()
            .map(|m| if m.count_ones() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Reduced homology ranks over each field; `out[c][d + 1]` is
    /// `dim H_d`, for `d` from -1 up to `k - 1`.
    pub fn reduced_homology(&self, chars: &[FieldChar]) -> Vec<Vec<usize>> {
        reduced_homology(self.k, &self.face, chars)
    }
}

/// Shrinks the cell complex by coreduction and collapse pairs, then computes
/// ranks of the boundary maps between the surviving cells.
fn reduced_homology(k: usize, face: &[bool], chars: &[FieldChar]) -> Vec<Vec<usize>> {
    let size = face.len();
    let mut alive = face.to_vec();
    let mut nf = vec![0u8; size];
    let mut nc = vec![0u8; size];
    for m in 0..size {
        if !face[m] {
            continue;
        }
        nf[m] = m.count_ones() as u8;
        let mut c = 0;
        for j in 0..k {
            let b = 1 << j;
            if m & b == 0 && face[m | b] {
                c += 1;
            }
        }
        nc[m] = c;
    }
    let mut work: Vec<usize> = (0..size).filter(|&m| face[m]).collect();

    fn kill(x: usize, k: usize, alive: &mut [bool], nf: &mut [u8], nc: &mut [u8], work: &mut Vec<usize>) {
        alive[x] = false;
        for j in 0..k {
            let b = 1 << j;
            let y = x ^ b;
            if alive[y] {
                if x & b != 0 {
                    nc[y] -= 1;
                } else {
                    nf[y] -= 1;
                }
                work.push(y);
            }
        }
    }

    while let Some(c) = work.pop() {
        if !alive[c] {
            continue;
        }
        if nf[c] == 1 {
            let j = (0..k).find(|&j| c >> j & 1 == 1 && alive[c ^ (1 << j)]).expect("one live face");
            let s = c ^ (1 << j);
            kill(c, k, &mut alive, &mut nf, &mut nc, &mut work);
            kill(s, k, &mut alive, &mut nf, &mut nc, &mut work);
        } else if nc[c] == 1 {
            let j = (0..k).find(|&j| c >> j & 1 == 0 && alive[c | (1 << j)]).expect("one live coface");
            let t = c | (1 << j);
            kill(t, k, &mut alive, &mut nf, &mut nc, &mut work);
            kill(c, k, &mut alive, &mut nf, &mut nc, &mut work);
        } else if c == 0 && nc[c] == 0 && nf[c] == 0 {
            // The empty face alone: nothing to pair with.
        }
    }

    // Surviving cells grouped by dimension (index d + 1).
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for m in 0..size {
        if alive[m] {
            cells[m.count_ones() as usize].push(m);
        }
    }
    chars
        .iter()
        .map(|&p| {
            // rank of the boundary from cells[t] to cells[t-1].
            let mut ranks = vec![0usize; k + 2];
            for t in 1..=k {
                if cells[t].is_empty() || cells[t - 1].is_empty() {
                    continue;
                }
                ranks[t] = boundary_rank(&cells[t], &cells[t - 1], p);
            }
            (0..=k).map(|t| cells[t].len() - ranks[t] - ranks[t + 1]).collect()
        })
        .collect()
}

fn boundary_rank(cols: &[usize], rows: &[usize], p: FieldChar) -> usize {
    let index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut entries: Vec<Vec<(usize, i64)>> = Vec::with_capacity(cols.len());
    for &c in cols {
        let mut col = Vec::new();
        let mut t = 0;
        let mut m = c;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            if let Some(&r) = index.get(&(c ^ (1 << j))) {
                col.push((r, if t % 2 == 0 { 1 } else { -1 }));
            }
            t += 1;
        }
        entries.push(col);
    }
    if p.p() == 0 {
        rank_rational(rows.len(), &entries)
    } else {
        rank_mod_p(rows.len(), &entries, p.p())
    }
}

fn rank_mod_p(nrows: usize, cols: &[Vec<(usize, i64)>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = cols
        .iter()
        .map(|col| {
            let mut v = vec![0u64; nrows];
            for &(r, s) in col {
                v[r] = if s > 0 { 1 } else { p - 1 };
            }
            v
        })
        .collect();
    let mut rank = 0;
    for r in 0..nrows {
        let Some(piv) = (rank..m.len()).find(|&c| m[c][r] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][r], p - 2, p);
        let pivot = m[rank].clone();
        for c in rank + 1..m.len() {
            let f = m[c][r] * inv % p;
            if f != 0 {
                for (x, y) in m[c].iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_rational(nrows: usize, cols: &[Vec<(usize, i64)>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = cols
        .iter()
        .map(|col| {
            let mut v = vec![BigRational::zero(); nrows];
            for &(r, s) in col {
                v[r] = if s > 0 { BigRational::one() } else { -BigRational::one() };
            }
            v
        })
        .collect();
    let mut rank = 0;
    for r in 0..nrows {
        let Some(piv) = (rank..m.len()).find(|&c| !m[c][r].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank].clone();
        for c in rank + 1..m.len() {
            if m[c][r].is_zero() {
                continue;
            }
            let f = &m[c][r] / &pivot[r];
            for (x, y) in m[c].iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// How much of the Betti table to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Goal {
    Table,
    Regularity,
}

struct Run {
    tables: Vec<BTreeMap<(usize, Vec<u32>), usize>>,
    best: Vec<i64>,
    lattice: usize,
    complexes: usize,
}

fn run(ideal: &MonomialIdeal, chars: &[FieldChar], budget: &Budget, goal: Goal) -> Result<Run> {
    let lat = Lattice::new(ideal)?;
    let n = ideal.nvars();
    let gens = lat.gens.clone();
    let mut out = Run {
        tables: vec![BTreeMap::new(); chars.len()],
        best: vec![i64::MIN; chars.len()],
        lattice: 0,
        complexes: 0,
    };
    if goal == Goal::Regularity {
        let top = ideal.max_degree().map_or(i64::MIN, i64::from);
        out.best.iter_mut().for_each(|b| *b = top);
    }
    let mut divisors: Vec<u128> = Vec::new();
    lat.walk(&mut |a, dset| {
        out.lattice += 1;
        if out.lattice > budget.max_lattice {
            return Err(Error::Budget {
                what: "lcm lattice size",
                size: out.lattice,
                limit: budget.max_lattice,
            });
        }
        if out.lattice % 4096 == 0 {
            budget.check_time()?;
        }
        let deg = i64::from(packed_degree(a));
        if goal == Goal::Regularity && out.best.iter().all(|&b| deg - 1 <= b) {
            return Ok(());
        }
        divisors.clear();
        for (w, &word) in dset.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let gi = w * 64 + x.trailing_zeros() as usize;
                x &= x - 1;
                divisors.push(gens[gi]);
            }
        }
        let supp = support_lanes(a);
        if divisors.len() == 1 && divisors[0] == a {
            for t in out.tables.iter_mut() {
                t.insert((0, unpack(a, n)), 1);
            }
            return Ok(());
        }
        // A divisor strictly below `a` in every supported lane makes `K^a` a
        // full simplex, which is acyclic.
        let mut facets: Vec<u32> = Vec::with_capacity(divisors.len());
        for &g in &divisors {
            let f = lane_bits(packed::strict_lanes(g, a));
            if f == supp {
                return Ok(());
            }
            facets.push(f);
        }
        out.complexes += 1;
        let lanes: Vec<usize> = (0..n).filter(|&j| supp >> j & 1 == 1).collect();
        let k = lanes.len();
        let compressed: Vec<u32> = facets
            .iter()
            .map(|&f| lanes.iter().enumerate().filter(|&(_, &l)| f >> l & 1 == 1).fold(0, |acc, (t, _)| acc | 1 << t))
            .collect();
        let cx = SimplicialComplex::from_facets(k, &compressed);
        let hom = reduced_homology(k, &cx.face, chars);
        for (c, ranks) in hom.iter().enumerate() {
            for (t, &r) in ranks.iter().enumerate() {
                if r == 0 {
                    continue;
                }
                // H_{t-1} gives beta_{t, a}.
                out.tables[c].insert((t, unpack(a, n)), r);
                out.best[c] = out.best[c].max(deg - t as i64);
            }
        }
        Ok(())
    })?;
    Ok(out)
}

fn packed_degree(a: u128) -> u32 {
    (0..16).map(|j| ((a >> (8 * j)) & 0xff) as u32).sum()
}

fn trivial_table(ideal: &MonomialIdeal, char: FieldChar) -> Option<BettiTable> {
    if ideal.is_zero() || ideal.is_unit() {
        let mut entries = BTreeMap::new();
        if ideal.is_unit() {
            entries.insert((0, vec![0; ideal.nvars()]), 1);
        }
        return Some(BettiTable {
            char,
            entries,
            lattice_size: 0,
            unit: ideal.is_unit(),
        });
    }
    None
}

/// Multigraded Betti tables of `I` over each requested field, from one pass
/// over the lcm lattice.
pub fn graded_betti_multi(ideal: &MonomialIdeal, chars: &[FieldChar], budget: &Budget) -> Result<Vec<BettiTable>> {
    if let Some(t) = chars.first().and_then(|&c| trivial_table(ideal, c)) {
        return Ok(chars.iter().map(|&c| BettiTable { char: c, ..t.clone() }).collect());
    }
    let r = run(ideal, chars, budget, Goal::Table)?;
    Ok(chars
        .iter()
        .zip(r.tables)
        .map(|(&c, entries)| BettiTable {
            char: c,
            entries,
            lattice_size: r.lattice,
            unit: false,
        })
        .collect())
}

pub fn graded_betti(ideal: &MonomialIdeal, char: FieldChar, budget: &Budget) -> Result<BettiTable> {
    Ok(graded_betti_multi(ideal, &[char], budget)?.remove(0))
}

/// Regularity over each field. Lattice elements that cannot raise the
/// running maximum are skipped, so this is cheaper than a full table.
pub fn regularity_multi(ideal: &MonomialIdeal, chars: &[FieldChar], budget: &Budget) -> Result<Vec<Regularity>> {
    if ideal.is_zero() {
        return Ok(vec![Regularity::NegInfinity; chars.len()]);
    }
    if ideal.is_unit() {
        return Ok(vec![Regularity::Finite(0); chars.len()]);
    }
    let r = run(ideal, chars, budget, Goal::Regularity)?;
    Ok(r.best.into_iter().map(Regularity::Finite).collect())
}

pub fn regularity(ideal: &MonomialIdeal, char: FieldChar, budget: &Budget) -> Result<Regularity> {
    Ok(regularity_multi(ideal, &[char], budget)?.remove(0))
}

/// Statistics of one regularity computation, for budgeting and benchmarks.
#[derive(Debug, Clone, Copy)]
pub struct RegularityStats {
    pub lattice: usize,
    pub complexes: usize,
}

pub fn regularity_with_stats(ideal: &MonomialIdeal, chars: &[FieldChar], budget: &Budget) -> Result<(Vec<Regularity>, RegularityStats)> {
    if ideal.is_zero() || ideal.is_unit() {
        let regs = regularity_multi(ideal, chars, budget)?;
        return Ok((regs, RegularityStats { lattice: 0, complexes: 0 }));
    }
    let r = run(ideal, chars, budget, Goal::Regularity)?;
    Ok((
        r.best.into_iter().map(Regularity::Finite).collect(),
        RegularityStats {
            lattice: r.lattice,
            complexes: r.complexes,
        },
    ))
}

/// The upper Koszul complex `K^a(I)` on the support of `a`; vertex `t` is the
/// `t`-th variable in the support.
pub fn upper_koszul(ideal: &MonomialIdeal, a: &Monomial) -> Result<(Vec<usize>, SimplicialComplex)> {
    if a.nvars() != ideal.nvars() {
        return Err(Error::ContextMismatch(format!("{} vs {} variables", a.nvars(), ideal.nvars())));
    }
    let supp = a.support();
    if supp.len() > 20 {
        return Err(Error::invalid("support too large for an explicit complex"));
    }
    let mut facets = Vec::new();
    for g in ideal.gens() {
        if !g.divides_unchecked(a) {
            continue;
        }
        let f = supp
            .iter()
            .enumerate()
            .filter(|&(_, &j)| g.exponents()[j] < a.exponents()[j])
            .fold(0u32, |acc, (t, _)| acc | 1 << t);
        facets.push(f);
    }
    Ok((supp.clone(), SimplicialComplex::from_facets(supp.len(), &facets)))
}

//! Monomials and monomial ideals over a fixed set of named variables.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::packed::{self, PackedRows};

/// The polynomial ring `k[x_1, ..., x_n]`, up to the choice of field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
}

impl RingContext {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::invalid("a ring needs at least one variable"));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(Error::invalid(format!("bad or repeated variable name {name:?}")));
            }
        }
        Ok(RingContext { names })
    }

    /// Variables named `x1 .. xn`.
    pub fn standard(n: usize) -> Arc<Self> {
        assert!(n >= 1, "a ring needs at least one variable");
        Arc::new(RingContext {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

type Exps = SmallVec<[u32; 16]>;

/// A monomial `x^a`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
}

fn mismatch(a: usize, b: usize) -> Error {
    Error::ContextMismatch(format!("{a} variables vs {b} variables"))
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    /// Squarefree product of the variables in `vars`.
    pub fn squarefree(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Self::one(nvars);
        for v in vars {
            m.exps[v] = 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn check(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(mismatch(self.nvars(), other.nvars()));
        }
        Ok(())
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        })
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        self.mul_unchecked(other)
    }

    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::Overflow)?);
        }
        Ok(Monomial { exps })
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if self.nvars() != other.nvars() {
            return None;
        }
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    /// `self / gcd(self, other)`, the generator of `(self) : other`.
    pub(crate) fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for a in &self.exps {
            exps.push(a.checked_mul(k).ok_or(Error::Overflow)?);
        }
        Ok(Monomial { exps })
    }

    /// Renders the monomial as `x1^2*x3` using the names of `ctx`.
    pub fn to_token_string(&self, ctx: &RingContext) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ctx.names[i].clone()),
                _ => parts.push(format!("{}^{}", ctx.names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Graded order with lex tie-break (x1 > x2 > ...), ascending in degree.
///
/// Within one degree the lex-larger monomial comes first, so `(x^2, xy, y^2)`
/// lists in that order.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.exps.as_slice().cmp(a.exps.as_slice()))
}

/// An ideal generated by monomials, always held by its minimal generators.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ctx: Arc<RingContext>,
    gens: Vec<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gens.iter().map(|g| g.to_token_string(&self.ctx)).collect::<Vec<_>>().join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Keeps the divisibility-minimal elements of `gens`, canonically ordered.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable_by(canonical_cmp);
    gens.dedup();
    if gens.len() <= 1 {
        return gens;
    }
    let d0 = gens[0].degree();
    if gens.iter().all(|g| g.degree() == d0) {
        return gens;
    }
    let n = gens[0].nvars();
    let mut rows = PackedRows::new(n);
    let packable = gens.iter().all(|g| g.exps.iter().all(|&e| e < 128));
    let mut buf = vec![0u128; packed::words_for(n)];
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    // Generators of equal degree never divide each other once deduplicated,
    // so a candidate only needs testing against strictly lower degrees.
    let mut lower_rows = 0usize;
    let mut lower_kept = 0usize;
    let mut cur_deg = d0;
    for g in gens {
        if g.degree() != cur_deg {
            cur_deg = g.degree();
            lower_rows = rows.len();
            lower_kept = kept.len();
        }
        let divisible = if packable {
            packed::pack_into(&g.exps, &mut buf);
            (0..lower_rows).any(|i| packed::divides(rows.row(i), &buf))
        } else {
            kept[..lower_kept].iter().any(|k| k.divides_unchecked(&g))
        };
        if !divisible {
            if packable {
                rows.push(&g.exps);
            }
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn zero(ctx: Arc<RingContext>) -> Self {
        MonomialIdeal { ctx, gens: Vec::new() }
    }

    pub fn unit(ctx: Arc<RingContext>) -> Self {
        let n = ctx.nvars();
        MonomialIdeal {
            ctx,
            gens: vec![Monomial::one(n)],
        }
    }

    /// Builds the ideal generated by `gens`, minimalizing them.
    pub fn new(ctx: Arc<RingContext>, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.nvars() != ctx.nvars()) {
            return Err(mismatch(bad.nvars(), ctx.nvars()));
        }
        Ok(MonomialIdeal {
            ctx,
            gens: minimalize(gens),
        })
    }

    pub(crate) fn from_raw(ctx: Arc<RingContext>, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            ctx,
            gens: minimalize(gens),
        }
    }

    /// The ideal generated by a set of variables.
    pub fn variables(ctx: Arc<RingContext>, vars: impl IntoIterator<Item = usize>) -> Self {
        let n = ctx.nvars();
        let gens = vars.into_iter().map(|v| Monomial::var(n, v)).collect();
        Self::from_raw(ctx, gens)
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    /// Componentwise maximum of the generators' exponents.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.nvars()];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    fn check(&self, other: &MonomialIdeal) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) && self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.ctx.names, other.ctx.names
            )));
        }
        Ok(())
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars() {
            return Err(mismatch(m.nvars(), self.nvars()));
        }
        Ok(())
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        self.check_monomial(m)?;
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// True if every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check(other)?;
        Ok(other.gens.iter().all(|g| self.contains_unchecked(g)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_raw(self.ctx.clone(), gens))
    }

    /// Adds the given monomials as extra generators.
    pub fn with_generators(&self, extra: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
        let mut gens = self.gens.clone();
        for m in extra {
            self.check_monomial(&m)?;
            gens.push(m);
        }
        Ok(Self::from_raw(self.ctx.clone(), gens))
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.multiply_with_budget(other, &Budget::generous())
    }

    pub fn multiply_with_budget(&self, other: &MonomialIdeal, budget: &Budget) -> Result<MonomialIdeal> {
        self.check(other)?;
        budget.check_generators(self.gens.len().saturating_mul(other.gens.len()))?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.mul_unchecked(b)?);
            }
        }
        Ok(Self::from_raw(self.ctx.clone(), prods))
    }

    /// `m * self`.
    pub fn scale(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(m)?;
        let gens = self.gens.iter().map(|g| g.mul_unchecked(m)).collect::<Result<_>>()?;
        Ok(Self::from_raw(self.ctx.clone(), gens))
    }

    /// `self^s` by repeated squaring; `self^0` is the unit ideal.
    pub fn power(&self, s: u32) -> MonomialIdeal {
        self.power_with_budget(s, &Budget::generous())
            .expect("power exceeded the generous budget")
    }

    pub fn power_with_budget(&self, s: u32, budget: &Budget) -> Result<MonomialIdeal> {
        let mut result = MonomialIdeal::unit(self.ctx.clone());
        if s == 0 {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut e = s;
        loop {
            if e & 1 == 1 {
                result = result.multiply_with_budget(&base, budget)?;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.multiply_with_budget(&base, budget)?;
        }
        budget.check_generators(result.len())?;
        Ok(result)
    }

    pub fn colon_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(m)?;
        let gens = self.gens.iter().map(|u| u.quotient_by_gcd(m)).collect();
        Ok(Self::from_raw(self.ctx.clone(), gens))
    }

    /// `self : J`, the intersection of `self : m` over the generators `m` of `J`.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::invalid("colon by the zero ideal"));
        }
        let mut acc: Option<MonomialIdeal> = None;
        for m in &other.gens {
            let c = self.colon_monomial(m)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        Ok(acc.expect("nonzero ideal has a generator"))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                lcms.push(a.lcm_unchecked(b));
            }
        }
        Ok(Self::from_raw(self.ctx.clone(), lcms))
    }

    /// The ideal generated by `u / x` over minimal generators `u` and variables `x | u`.
    pub fn partial_star(&self) -> Result<MonomialIdeal> {
        if self.is_zero() || self.is_unit() {
            return Err(Error::invalid("partial star needs a nonzero proper ideal"));
        }
        let n = self.nvars();
        let mut gens = Vec::new();
        for u in &self.gens {
            for i in 0..n {
                if u.exps[i] > 0 {
                    let mut d = u.clone();
                    d.exps[i] -= 1;
                    gens.push(d);
                }
            }
        }
        Ok(Self::from_raw(self.ctx.clone(), gens))
    }

    /// Same generators over another (equal) context; used when re-reading files.
    pub fn with_context(&self, ctx: Arc<RingContext>) -> Result<MonomialIdeal> {
        if ctx.nvars() != self.nvars() {
            return Err(mismatch(ctx.nvars(), self.nvars()));
        }
        Ok(MonomialIdeal {
            ctx,
            gens: self.gens.clone(),
        })
    }

    /// Emits the ideal in the text format accepted by [`parse_ideal`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.ctx.names.join(" "));
        for g in &self.gens {
            out.push_str(&g.to_token_string(&self.ctx));
            out.push('\n');
        }
        out
    }
}

fn parse_token_monomial(line: &str, lineno: usize, index: &HashMap<&str, usize>, n: usize) -> Result<Monomial> {
    let mut m = Monomial::one(n);
    if line == "1" {
        return Ok(m);
    }
    for factor in line.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad exponent in {factor:?}")))?;
                (name.trim(), e)
            }
            None => (factor, 1),
        };
        let &i = index
            .get(name)
            .ok_or_else(|| Error::parse(lineno, format!("unknown variable {name:?}")))?;
        m.exps[i] = m.exps[i].checked_add(exp).ok_or(Error::Overflow)?;
    }
    Ok(m)
}

/// Parses the ideal text format.
///
/// ```text
/// # comment
/// vars: x y z
/// x^2*y
/// 0 1 3
/// ```
///
/// Lines are either products of variables or whitespace-separated exponent
/// vectors. Without a `vars:` header the variables are `x1 .. xn`, with `n`
/// taken from the exponent vectors or the largest `x<i>` mentioned.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut header: Option<Vec<String>> = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            if header.is_some() || !lines.is_empty() {
                return Err(Error::parse(i + 1, "the vars: header must come first and only once"));
            }
            header = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        lines.push((i + 1, line));
    }
    let is_vector = |l: &str| l.split_whitespace().all(|t| t.chars().all(|c| c.is_ascii_digit())) && l != "1";
    let names = match header {
        Some(names) => names,
        None => {
            let mut n = 0usize;
            for &(lineno, line) in &lines {
                if is_vector(line) {
                    let len = line.split_whitespace().count();
                    if n != 0 && n != len {
                        return Err(Error::parse(lineno, "exponent vectors of different lengths"));
                    }
                    n = n.max(len);
                } else {
                    for tok in line.split(|c| c == '*' || c == '^') {
                        let tok = tok.trim();
                        if let Some(idx) = tok.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                            n = n.max(idx);
                        }
                    }
                }
            }
            if n == 0 {
                return Err(Error::parse(0, "cannot infer the variables; add a vars: header"));
            }
            (1..=n).map(|i| format!("x{i}")).collect()
        }
    };
    let ctx = Arc::new(RingContext::new(names).map_err(|e| Error::parse(1, e.to_string()))?);
    let n = ctx.nvars();
    let index: HashMap<&str, usize> = ctx.names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut gens = Vec::new();
    for (lineno, line) in lines {
        if is_vector(line) {
            let exps: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(lineno, format!("bad exponent {t:?}"))))
                .collect::<Result<_>>()?;
            if exps.len() != n {
                return Err(Error::parse(lineno, format!("expected {n} exponents, found {}", exps.len())));
            }
            gens.push(Monomial::new(&exps));
        } else {
            gens.push(parse_token_monomial(line, lineno, &index, n)?);
        }
    }
    Ok(MonomialIdeal::from_raw(ctx, gens))
}

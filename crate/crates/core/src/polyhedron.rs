//! Newton polyhedra of monomial ideals and integral closure by lattice-point
//! search.
//!
//! The Newton polyhedron `NP(I)` is `conv(exponents of gens) + R^n_{>=0}`. A
//! monomial lies in the integral closure of `I` exactly when its exponent lies
//! in `NP(I)`. Membership is decided two independent ways: by an exact LP, and
//! by the facet inequalities obtained from a double-description pass.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lp::{self, Q};
use crate::monomial::{Monomial, MonomialIdeal};

/// One inequality `<w, a> >= rhs` of a Newton polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub w: Vec<i64>,
    pub rhs: i64,
}

#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    nvars: usize,
    gens: Vec<Vec<u32>>,
    scale: u32,
    facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    /// Builds `NP(I)` and its facet description. `I` must be nonzero.
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::invalid("the zero ideal has no Newton polyhedron"));
        }
        let gens: Vec<Vec<u32>> = ideal.gens().iter().map(|g| g.exponents().to_vec()).collect();
        let facets = facets_of(ideal.nvars(), &gens)?;
        Ok(NewtonPolyhedron {
            nvars: ideal.nvars(),
            gens,
            scale: 1,
            facets,
        })
    }

    /// `s * NP(I)`, which equals `NP(I^s)`.
    pub fn dilate(&self, s: u32) -> Result<Self> {
        let scale = self.scale.checked_mul(s).ok_or(Error::Overflow)?;
        Ok(NewtonPolyhedron {
            scale,
            ..self.clone()
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// The non-trivial facet inequalities of the undilated polyhedron.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Membership via the facet inequalities.
    pub fn contains(&self, a: &[u32]) -> bool {
        let s = i64::from(self.scale);
        self.facets
            .iter()
            .all(|f| f.w.iter().zip(a).map(|(&w, &x)| w * i64::from(x)).sum::<i64>() >= f.rhs * s)
    }

    /// Membership via an exact LP over the generators.
    pub fn contains_lp(&self, a: &[u32]) -> bool {
        newton_membership_scaled(&self.gens, a, self.scale)
    }
}

/// Is `a` in the Newton polyhedron of the ideal generated by `gens`?
///
/// Decided as feasibility of `lambda >= 0, sum(lambda) = 1, G lambda <= a` over
/// exact rationals.
pub fn newton_membership(gens: &[Monomial], a: &[u32]) -> bool {
    let g: Vec<Vec<u32>> = gens.iter().map(|m| m.exponents().to_vec()).collect();
    newton_membership_scaled(&g, a, 1)
}

fn newton_membership_scaled(gens: &[Vec<u32>], a: &[u32], scale: u32) -> bool {
    if gens.is_empty() {
        return false;
    }
    // A generator dividing a settles it without an LP.
    if scale == 1 && gens.iter().any(|g| g.iter().zip(a).all(|(x, y)| x <= y)) {
        return true;
    }
    let n = a.len();
    let m = gens.len();
    // Columns: lambda_1..lambda_m, slack_1..slack_n.
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row: Vec<Q> = gens.iter().map(|g| lp::q(i64::from(g[i]))).collect();
        row.extend((0..n).map(|k| lp::q(i64::from(k == i))));
        rows.push(row);
        rhs.push(lp::q(i64::from(a[i])));
    }
    let mut sum_row = vec![lp::q(1); m];
    sum_row.extend((0..n).map(|_| lp::q(0)));
    rows.push(sum_row);
    rhs.push(BigRational::from_integer(BigInt::from(scale)));
    lp::feasible_point(&rows, &rhs).is_some()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn dot(r: &[i64], z: &[i64]) -> Result<i64> {
    let mut acc: i64 = 0;
    for (&x, &y) in r.iter().zip(z) {
        acc = acc.checked_add(x.checked_mul(y).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

struct Ray {
    z: Vec<i64>,
    tight: Vec<u64>,
}

fn set_bit(bits: &mut [u64], k: usize) {
    bits[k / 64] |= 1 << (k % 64);
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Facets of `conv(gens) + R^n_{>=0}` by double description on the dual of
/// the homogenized cone generated by `(g, 1)` and `(e_i, 0)`.
fn facets_of(n: usize, gens: &[Vec<u32>]) -> Result<Vec<Facet>> {
    let d = n + 1;
    let mut constraints: Vec<Vec<i64>> = Vec::with_capacity(n + gens.len());
    for i in 0..n {
        let mut r = vec![0; d];
        r[i] = 1;
        constraints.push(r);
    }
    for g in gens {
        let mut r: Vec<i64> = g.iter().map(|&x| i64::from(x)).collect();
        r.push(1);
        constraints.push(r);
    }
    let words = constraints.len().div_ceil(64);
    // The first n+1 constraints are linearly independent; the cone they cut
    // out has the columns of the inverse matrix as extreme rays.
    let g0 = &constraints[n];
    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for i in 0..n {
        let mut z = vec![0; d];
        z[i] = 1;
        z[n] = -g0[i];
        let mut tight = vec![0; words];
        for k in 0..=n {
            if k != i {
                set_bit(&mut tight, k);
            }
        }
        rays.push(Ray { z, tight });
    }
    let mut top = vec![0; d];
    top[n] = 1;
    let mut tight = vec![0; words];
    for k in 0..n {
        set_bit(&mut tight, k);
    }
    rays.push(Ray { z: top, tight });

    for k in n + 1..constraints.len() {
        let r = &constraints[k];
        let vals: Vec<i64> = rays.iter().map(|ray| dot(r, &ray.z)).collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        if neg.is_empty() {
            for (ray, &v) in rays.iter_mut().zip(&vals) {
                if v == 0 {
                    set_bit(&mut ray.tight, k);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p].tight.iter().zip(&rays[q].tight).map(|(a, b)| a & b).collect();
                let rank_ok = common.iter().map(|w| w.count_ones() as usize).sum::<usize>() + 2 >= d;
                if !rank_ok {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&o| o != p && o != q)
                    .all(|o| !subset(&common, &rays[o].tight));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p], -vals[q]);
                let mut z = Vec::with_capacity(d);
                for (&a, &b) in rays[p].z.iter().zip(&rays[q].z) {
                    let v = vq
                        .checked_mul(a)
                        .and_then(|x| vp.checked_mul(b).and_then(|y| x.checked_add(y)))
                        .ok_or(Error::Overflow)?;
                    z.push(v);
                }
                let g = z.iter().fold(0, |acc, &v| gcd(acc, v));
                if g > 1 {
                    z.iter_mut().for_each(|v| *v /= g);
                }
                let mut tight = common;
                set_bit(&mut tight, k);
                fresh.push(Ray { z, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (ray, &v) in rays.into_iter().zip(&vals) {
            if v >= 0 {
                let mut ray = ray;
                if v == 0 {
                    set_bit(&mut ray.tight, k);
                }
                kept.push(ray);
            }
        }
        kept.extend(fresh);
        rays = kept;
    }
    let mut facets: Vec<Facet> = rays
        .into_iter()
        .filter(|ray| ray.z[n] < 0)
        .map(|ray| Facet {
            w: ray.z[..n].to_vec(),
            rhs: -ray.z[n],
        })
        .collect();
    facets.sort();
    facets.dedup();
    Ok(facets)
}

/// Result of a closure search, with the degree cap that bounded it.
#[derive(Debug, Clone)]
pub struct ClosureSearch {
    pub ideal: MonomialIdeal,
    pub degree_cap: u32,
    pub points_tested: usize,
}

struct Search<'a> {
    np: &'a NewtonPolyhedron,
    rhs: Vec<i64>,
    max_exps: Vec<u32>,
    /// `suffix[f][j]`: largest contribution of coordinates `j..` to facet `f`.
    suffix: Vec<Vec<i64>>,
    cap: u32,
    a: Vec<u32>,
    sums: Vec<i64>,
    found: Vec<Monomial>,
    tested: usize,
    limit: usize,
}

impl Search<'_> {
    fn inside(&self) -> bool {
        self.sums.iter().zip(&self.rhs).all(|(s, r)| s >= r)
    }

    fn inside_without(&self, i: usize) -> bool {
        self.sums
            .iter()
            .zip(&self.rhs)
            .zip(&self.np.facets)
            .all(|((s, r), f)| s - f.w[i] >= *r)
    }

    fn hopeless(&self, j: usize) -> bool {
        self.sums
            .iter()
            .zip(&self.rhs)
            .zip(&self.suffix)
            .any(|((s, r), suf)| s + suf[j] < *r)
    }

    fn bump(&mut self, j: usize, delta: i64) {
        for (s, f) in self.sums.iter_mut().zip(&self.np.facets) {
            *s += delta * f.w[j];
        }
    }

    fn run(&mut self, j: usize, deg: u32) -> Result<()> {
        let n = self.np.nvars;
        if j == n || self.hopeless(j) {
            return Ok(());
        }
        self.run(j + 1, deg)?;
        let mut v = 0;
        while v < self.max_exps[j] && deg + v < self.cap {
            v += 1;
            self.a[j] = v;
            self.bump(j, 1);
            self.tested += 1;
            if self.tested > self.limit {
                return Err(Error::Budget {
                    what: "closure search points",
                    size: self.tested,
                    limit: self.limit,
                });
            }
            if self.inside() {
                let minimal = (0..=j).all(|i| self.a[i] == 0 || !self.inside_without(i));
                if minimal {
                    self.found.push(Monomial::new(&self.a));
                }
                break;
            }
            self.run(j + 1, deg + v)?;
        }
        self.bump(j, -i64::from(v));
        self.a[j] = 0;
        Ok(())
    }
}

fn search_closure(
    np: &NewtonPolyhedron,
    template: &MonomialIdeal,
    max_exps: Vec<u32>,
    max_degree: u32,
    budget: &Budget,
) -> Result<ClosureSearch> {
    let n = np.nvars;
    let cap = max_degree + n as u32 - 1;
    let s = i64::from(np.scale);
    let suffix = np
        .facets
        .iter()
        .map(|f| {
            let mut suf = vec![0i64; n + 1];
            for j in (0..n).rev() {
                suf[j] = suf[j + 1] + f.w[j] * i64::from(max_exps[j]);
            }
            suf
        })
        .collect();
    let mut search = Search {
        np,
        rhs: np.facets.iter().map(|f| f.rhs * s).collect(),
        max_exps,
        suffix,
        cap,
        a: vec![0; n],
        sums: vec![0; np.facets.len()],
        found: Vec::new(),
        tested: 0,
        limit: budget.max_lp_calls,
    };
    if search.inside() {
        // Only the unit ideal contains the origin.
        search.found.push(Monomial::one(n));
    } else {
        search.run(0, 0)?;
    }
    Ok(ClosureSearch {
        ideal: MonomialIdeal::new(template.ctx().clone(), search.found)?,
        degree_cap: cap,
        points_tested: search.tested,
    })
}

/// Minimal generators of the integral closure of `I`, found as the minimal
/// lattice points of `NP(I)` in the box bounded by the generators' exponents.
pub fn closure_oracle(ideal: &MonomialIdeal, budget: &Budget) -> Result<ClosureSearch> {
    if ideal.is_zero() {
        return Err(Error::invalid("closure of the zero ideal"));
    }
    let np = NewtonPolyhedron::new(ideal)?;
    let max_degree = ideal.max_degree().expect("nonzero ideal");
    search_closure(&np, ideal, ideal.max_exponents(), max_degree, budget)
}

/// Integral closure of `I^s`, searched in `s * NP(I)` without forming `I^s`.
pub fn closure_of_power(ideal: &MonomialIdeal, s: u32, budget: &Budget) -> Result<ClosureSearch> {
    if ideal.is_zero() {
        return Err(Error::invalid("closure of the zero ideal"));
    }
    if s == 0 {
        return Ok(ClosureSearch {
            ideal: MonomialIdeal::unit(ideal.ctx().clone()),
            degree_cap: 0,
            points_tested: 0,
        });
    }
    let np = NewtonPolyhedron::new(ideal)?.dilate(s)?;
    let max_exps = ideal.max_exponents().iter().map(|&m| m * s).collect();
    let max_degree = ideal.max_degree().expect("nonzero ideal") * s;
    search_closure(&np, ideal, max_exps, max_degree, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_ideal;

    #[test]
    fn membership_examples() {
        let i = parse_ideal("vars: x y\nx^2\ny^2\n").unwrap();
        let np = NewtonPolyhedron::new(&i).unwrap();
        assert!(np.contains(&[1, 1]));
        assert!(np.contains_lp(&[1, 1]));
        assert!(newton_membership(i.gens(), &[1, 1]));
        assert!(!np.contains(&[1, 0]));
        assert!(!np.contains_lp(&[1, 0]));
        assert!(np.contains(&[2, 0]));
        assert!(np.contains_lp(&[0, 2]));
    }

    #[test]
    fn facets_of_diagonal() {
        let i = parse_ideal("vars: x y\nx^2\ny^2\n").unwrap();
        let np = NewtonPolyhedron::new(&i).unwrap();
        assert_eq!(np.facets(), &[Facet { w: vec![1, 1], rhs: 2 }]);
    }

    #[test]
    fn closures_of_small_ideals() {
        let b = Budget::default();
        let i = parse_ideal("vars: x y\nx^2\ny^2\n").unwrap();
        let c = closure_oracle(&i, &b).unwrap();
        assert_eq!(c.ideal, parse_ideal("vars: x y\nx^2\nx*y\ny^2\n").unwrap());
        let sq = parse_ideal("vars: a b c\na*b\nb*c\n").unwrap();
        assert_eq!(closure_oracle(&sq, &b).unwrap().ideal, sq);
        let mixed = parse_ideal("vars: x y\nx\ny^5\n").unwrap();
        assert_eq!(closure_oracle(&mixed, &b).unwrap().ideal, mixed);
        let p = closure_of_power(&i, 2, &b).unwrap().ideal;
        assert_eq!(p, parse_ideal("vars: x y\nx^4\nx^3*y\nx^2*y^2\nx*y^3\ny^4\n").unwrap());
        assert!(closure_oracle(&MonomialIdeal::unit(i.ctx().clone()), &b).unwrap().ideal.is_unit());
        assert!(closure_oracle(&MonomialIdeal::zero(i.ctx().clone()), &b).is_err());
    }

    #[test]
    fn non_equigenerated_needs_the_larger_cap() {
        // x^4 is a minimal generator of degree above d_min + n - 1 = 2.
        let b = Budget::default();
        let i = parse_ideal("vars: x y\nx^4\ny\n").unwrap();
        assert_eq!(closure_oracle(&i, &b).unwrap().ideal, i);
        let j = parse_ideal("vars: x y z\nx^3\ny^3\nz\n").unwrap();
        let c = closure_oracle(&j, &b).unwrap().ideal;
        assert!(c.contains(&Monomial::new(&[2, 1, 0])).unwrap());
        assert!(c.contains(&Monomial::new(&[1, 2, 0])).unwrap());
    }
}

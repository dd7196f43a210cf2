//! Truncated power series shadow of pointed connected objects.
//!
//! A formal object is recorded by a connectivity lower bound and a reduced
//! series in commuting variables `t_1 .. t_n` plus one suspension variable
//! `s`. The pointed operations act on reduced series as follows:
//!
//! | operation        | series               |
//! |------------------|----------------------|
//! | `X v Y`          | `a + b`              |
//! | `X x Y`          | `(1 + a)(1 + b) - 1` |
//! | `X ^ Y`          | `a b`                |
//! | `S X`            | `s a`                |
//! | `X * Y` (join)   | `s a b`              |
//! | `X |x Y`         | `(1 + a) b`          |
//! | `Omega S X`      | `a + a^2 + a^3 + ..` |
//!
//! Series are truncated at total `t`-degree `N`; the exponent of `s` is capped
//! at `N` as well. Coefficients are exact integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hall_words::HallWord;

/// Default truncation degree.
pub const DEFAULT_TRUNCATION: usize = 8;

/// Truncated multivariate series. Exponent vectors are `[s, t_1, .., t_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    n: usize,
    truncation: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// JSON record of one series term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTermRecord {
    pub exponents: Vec<u32>,
    #[serde(with = "crate::json::bigint")]
    pub coefficient: BigInt,
}

/// First coefficient on which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// `[s, t_1, .., t_n]`
    pub exponents: Vec<u32>,
    #[serde(with = "crate::json::bigint")]
    pub lhs: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub rhs: BigInt,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "coefficient of exponents {:?}: lhs {} != rhs {}", self.exponents, self.lhs, self.rhs)
    }
}

impl MultiSeries {
    pub fn zero(n: usize, truncation: usize) -> Self {
        MultiSeries { n, truncation, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, truncation: usize, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(n, truncation);
        out.add_term(vec![0; n + 1], c.into());
        out
    }

    pub fn one(n: usize, truncation: usize) -> Self {
        Self::constant(n, truncation, 1)
    }

    /// The variable `t_{i+1}` (0-based `i`).
    pub fn variable(n: usize, truncation: usize, i: usize) -> Self {
        assert!(i < n, "variable index out of range");
        let mut e = vec![0; n + 1];
        e[i + 1] = 1;
        Self::monomial(n, truncation, e, 1)
    }

    /// The suspension variable `s`.
    pub fn suspension_variable(n: usize, truncation: usize) -> Self {
        let mut e = vec![0; n + 1];
        e[0] = 1;
        Self::monomial(n, truncation, e, 1)
    }

    /// `c * s^e[0] * t_1^e[1] ..`, or zero when beyond the truncation.
    pub fn monomial(n: usize, truncation: usize, exponents: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exponents.len(), n + 1, "exponent vector must be [s, t_1, .., t_n]");
        let mut out = Self::zero(n, truncation);
        out.add_term(exponents, c.into());
        out
    }

    /// Number of `t` variables.
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.n + 1])
    }

    /// Least total `t`-degree of a term, `None` for the zero series.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|e| t_degree(e)).min()
    }

    fn admits(&self, e: &[u32]) -> bool {
        t_degree(e) <= self.truncation && (e[0] as usize) <= self.truncation
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() || !self.admits(&e) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Drops every term beyond `truncation` (which may only shrink).
    pub fn truncate(&self, truncation: usize) -> Self {
        let truncation = truncation.min(self.truncation);
        let mut out = Self::zero(self.n, truncation);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Arity { expected: self.n, found: other.n })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.n, self.truncation.min(other.truncation));
        for (e, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MultiSeries {
            n: self.n,
            truncation: self.truncation,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.n, self.truncation);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Product truncated at the smaller of the two truncations.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.n, self.truncation.min(other.truncation));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n, self.truncation);
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// Coefficient-wise equality up to the common truncation.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.first_mismatch(other)?.is_none())
    }

    /// First exponent vector (in lexicographic order) where the two series
    /// differ, comparing up to the common truncation.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<Mismatch>> {
        self.check_arity(other)?;
        let n = self.truncation.min(other.truncation);
        let (a, b) = (self.truncate(n), other.truncate(n));
        let mut keys: Vec<&Vec<u32>> = a.terms.keys().chain(b.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        Ok(keys.into_iter().find_map(|e| {
            let (x, y) = (a.coefficient(e), b.coefficient(e));
            (x != y).then(|| Mismatch { exponents: e.clone(), lhs: x, rhs: y })
        }))
    }

    pub fn to_records(&self) -> Vec<SeriesTermRecord> {
        self.terms.iter().map(|(e, c)| SeriesTermRecord { exponents: e.clone(), coefficient: c.clone() }).collect()
    }

    pub fn from_records(n: usize, truncation: usize, records: &[SeriesTermRecord]) -> Result<Self> {
        let mut out = Self::zero(n, truncation);
        for r in records {
            if r.exponents.len() != n + 1 {
                return Err(Error::Json(format!("exponent vector {:?} does not have length {}", r.exponents, n + 1)));
            }
            out.add_term(r.exponents.clone(), r.coefficient.clone());
        }
        Ok(out)
    }
}

fn t_degree(e: &[u32]) -> usize {
    e[1..].iter().map(|&x| x as usize).sum()
}

/// Series equality up to the common truncation.
pub fn series_eq(a: &MultiSeries, b: &MultiSeries) -> Result<bool> {
    a.equals(b)
}

/// Reduced series of `Omega S X` from that of `X`: `f + f^2 + f^3 + ..`.
pub fn geom_sum(f: &MultiSeries) -> Result<MultiSeries> {
    if !f.constant_term().is_zero() {
        return domain("geom_sum needs a series with zero constant term (a connected object)");
    }
    let mut total = MultiSeries::zero(f.n, f.truncation);
    let mut power = f.clone();
    // every term of f^k has t-degree + s-degree >= k, so this terminates
    while !power.is_zero() {
        total = total.add(&power)?;
        power = power.mul(f)?;
    }
    Ok(total)
}

pub fn wedge_series(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries> {
    a.add(b)
}

pub fn product_series(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries> {
    a.add(b)?.add(&a.mul(b)?)
}

pub fn smash_series(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries> {
    a.mul(b)
}

pub fn suspend_series(a: &MultiSeries) -> MultiSeries {
    MultiSeries::suspension_variable(a.n, a.truncation).mul(a).expect("same arity")
}

pub fn join_series(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries> {
    Ok(suspend_series(&a.mul(b)?))
}

/// `a |x b`, the cofiber of `A -> A x B`.
pub fn half_smash_series(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries> {
    b.add(&a.mul(b)?)
}

/// Cofiber of a null map `X -> Y`: `S X v Y`.
pub fn cof_null_series(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries> {
    suspend_series(a).add(b)
}

/// The smash word `w(X_1, .., X_n)`: product of `inputs[i]^m_i` over the
/// multidegree `m` of `w`.
pub fn word_series(w: &HallWord, inputs: &[MultiSeries]) -> Result<MultiSeries> {
    if w.arity() != inputs.len() {
        return Err(Error::Arity { expected: inputs.len(), found: w.arity() });
    }
    let first = inputs.first().ok_or_else(|| Error::Domain("no input series".into()))?;
    let mut acc = MultiSeries::one(first.n, first.truncation);
    for (f, &m) in inputs.iter().zip(w.multidegree()) {
        acc = acc.mul(&f.pow(m))?;
    }
    Ok(acc)
}

/// A pointed object recorded by its connectivity lower bound and reduced
/// series. Connectivity `-1` (not necessarily connected) is representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalObject {
    name: String,
    connectivity: i64,
    reduced_series: MultiSeries,
}

impl FormalObject {
    pub fn new(name: impl Into<String>, connectivity: i64, reduced_series: MultiSeries) -> Result<Self> {
        if connectivity < -1 {
            return domain(format!("connectivity {connectivity} is below -1"));
        }
        if !reduced_series.constant_term().is_zero() {
            return domain("reduced series must have zero constant term");
        }
        if let Some(order) = reduced_series.order() {
            if (order as i64) < connectivity + 1 {
                return domain(format!("reduced series has order {order}, below connectivity {connectivity} + 1"));
            }
        }
        Ok(FormalObject { name: name.into(), connectivity, reduced_series })
    }

    /// The sphere-like object with reduced series `t_{i+1}^(c+1)`.
    pub fn sphere(name: impl Into<String>, connectivity: i64, n: usize, i: usize, truncation: usize) -> Result<Self> {
        if connectivity < 0 {
            return domain(format!("sphere model needs connectivity >= 0, got {connectivity}"));
        }
        let mut e = vec![0; n + 1];
        e[i + 1] = (connectivity + 1) as u32;
        Self::new(name, connectivity, MultiSeries::monomial(n, truncation, e, 1))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn connectivity(&self) -> i64 {
        self.connectivity
    }

    pub fn reduced_series(&self) -> &MultiSeries {
        &self.reduced_series
    }
}

// Connectivity combinators. All of them return lower bounds.

/// `conn(S X) >= k + 1`.
pub fn conn_susp(k: i64) -> i64 {
    k + 1
}

/// `conn(Omega X) >= k - 1`; needs `k >= 0`.
pub fn conn_loop(k: i64) -> Result<i64> {
    if k < 0 {
        return domain(format!("loop connectivity needs k >= 0, got {k}"));
    }
    Ok(k - 1)
}

/// `conn(X ^ Y) >= k + l + 1`.
pub fn conn_smash(k: i64, l: i64) -> i64 {
    k + l + 1
}

/// `conn(X^m) >= m (k + 1) - 1` for the `m`-fold smash power.
pub fn conn_smash_power(k: i64, m: u32) -> i64 {
    i64::from(m) * (k + 1) - 1
}

pub fn conn_wedge(k: i64, l: i64) -> i64 {
    k.min(l)
}

pub fn conn_product(k: i64, l: i64) -> i64 {
    k.min(l)
}

/// Connectivity bound of `w(X_1, .., X_n)` (and of `Omega S w(..)`):
/// `sum_i m_i (c_i + 1) - 1`.
pub fn word_connectivity(w: &HallWord, conns: &[i64]) -> i64 {
    assert_eq!(w.arity(), conns.len(), "one connectivity per generator");
    w.multidegree().iter().zip(conns).map(|(&m, &c)| i64::from(m) * (c + 1)).sum::<i64>() - 1
}

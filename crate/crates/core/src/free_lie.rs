//! Exact arithmetic in the free Lie ring over the integers.
//!
//! Every Lie polynomial is mapped into the tensor algebra by
//! `[a, b] -> ab - ba`. This embedding is injective, so it is used both as the
//! correctness oracle and as the rewriting engine: an arbitrary bracket
//! expression is brought to Hall normal form by solving, one multidegree at a
//! time, the exact integer system expressing its image in terms of the images
//! of the table words.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hall_words::{format_word, parse_word, Alphabet, HallBasisTable, HallWord, TableId, WordView};
use crate::linalg;

/// A finite integer combination of bracket trees.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BracketExpr {
    terms: Vec<(BigInt, HallWord)>,
}

impl BracketExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, coefficient: impl Into<BigInt>, word: HallWord) -> Self {
        self.terms.push((coefficient.into(), word));
        self
    }

    pub fn terms(&self) -> &[(BigInt, HallWord)] {
        &self.terms
    }

    /// Formal bilinear bracket, without any simplification.
    pub fn bracket(a: &BracketExpr, b: &BracketExpr) -> BracketExpr {
        let terms = a
            .terms
            .iter()
            .flat_map(|(ca, wa)| {
                b.terms.iter().map(move |(cb, wb)| (ca * cb, HallWord::bracket(wa.clone(), wb.clone())))
            })
            .collect();
        BracketExpr { terms }
    }

    pub fn max_length(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.length()).max().unwrap_or(0)
    }
}

impl From<HallWord> for BracketExpr {
    fn from(w: HallWord) -> Self {
        BracketExpr { terms: vec![(BigInt::one(), w)] }
    }
}

/// Noncommutative polynomial: generator sequences with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<Vec<usize>, BigInt>,
}

/// JSON record of one tensor term. `sequence` lists generator names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermRecord {
    pub sequence: Vec<String>,
    #[serde(with = "crate::json::bigint")]
    pub coefficient: BigInt,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single sequence `seq` with coefficient 1.
    pub fn monomial(seq: Vec<usize>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(seq, BigInt::one());
        TensorElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, seq: &[usize]) -> BigInt {
        self.terms.get(seq).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, seq: Vec<usize>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(seq);
        match entry {
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

    pub fn add_scaled(&mut self, other: &TensorElement, scale: &BigInt) {
        for (seq, c) in &other.terms {
            self.add_term(seq.clone(), c * scale);
        }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                let mut seq = Vec::with_capacity(sa.len() + sb.len());
                seq.extend_from_slice(sa);
                seq.extend_from_slice(sb);
                out.add_term(seq, ca * cb);
            }
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.mul(other);
        out.add_scaled(&other.mul(self), &BigInt::from(-1));
        out
    }

    /// The terms whose sequences have exactly `len` letters.
    pub fn homogeneous(&self, len: usize) -> TensorElement {
        let terms = self.terms.iter().filter(|(s, _)| s.len() == len).map(|(s, c)| (s.clone(), c.clone())).collect();
        TensorElement { terms }
    }

    pub fn to_records(&self, alphabet: &Alphabet) -> Vec<TensorTermRecord> {
        self.terms
            .iter()
            .map(|(s, c)| TensorTermRecord {
                sequence: s.iter().map(|&i| alphabet.name(i).to_string()).collect(),
                coefficient: c.clone(),
            })
            .collect()
    }

    pub fn from_records(records: &[TensorTermRecord], alphabet: &Alphabet) -> Result<Self> {
        let mut out = TensorElement::zero();
        for r in records {
            let seq = r
                .sequence
                .iter()
                .map(|name| alphabet.position(name).ok_or_else(|| Error::Json(format!("unknown generator {name:?}"))))
                .collect::<Result<Vec<_>>>()?;
            out.add_term(seq, r.coefficient.clone());
        }
        Ok(out)
    }
}

/// Image of a single bracket tree in the tensor algebra.
pub fn embed_word(w: &HallWord) -> TensorElement {
    match w.view() {
        WordView::Leaf(i) => TensorElement::monomial(vec![i]),
        WordView::Bracket(l, r) => embed_word(l).commutator(&embed_word(r)),
    }
}

/// Image of a bracket expression under `[a, b] -> ab - ba`.
pub fn embed_tensor(e: &BracketExpr) -> TensorElement {
    let mut out = TensorElement::zero();
    for (c, w) in &e.terms {
        out.add_scaled(&embed_word(w), c);
    }
    out
}

/// An element of the free Lie ring written in a Hall basis. Keys are table
/// serials, so iteration follows basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    table: TableId,
    terms: BTreeMap<usize, BigInt>,
}

/// JSON record of one Lie term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTermRecord {
    pub word: String,
    #[serde(with = "crate::json::bigint")]
    pub coefficient: BigInt,
}

impl LieElement {
    pub fn table_id(&self) -> TableId {
        self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(serial, coefficient)` pairs in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn coefficient(&self, serial: usize) -> BigInt {
        self.terms.get(&serial).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of two elements over the same table.
    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        if self.table != other.table {
            return Err(Error::Basis(format!("{:?} vs {:?}", self.table, other.table)));
        }
        let mut terms = self.terms.clone();
        for (s, c) in &other.terms {
            let v = terms.entry(*s).or_default();
            *v += c;
            if v.is_zero() {
                terms.remove(s);
            }
        }
        Ok(LieElement { table: self.table, terms })
    }

    pub fn display<'a>(&'a self, ring: &'a FreeLieRing, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        LieDisplay { element: self, ring, alphabet }
    }

    pub fn to_records(&self, ring: &FreeLieRing, alphabet: &Alphabet) -> Vec<LieTermRecord> {
        self.terms
            .iter()
            .map(|(s, c)| LieTermRecord { word: format_word(ring.word(*s), alphabet), coefficient: c.clone() })
            .collect()
    }

    pub fn from_records(records: &[LieTermRecord], ring: &FreeLieRing, alphabet: &Alphabet) -> Result<Self> {
        let mut terms: BTreeMap<usize, BigInt> = BTreeMap::new();
        for r in records {
            let w = parse_word(&r.word, alphabet)?;
            let serial = ring
                .table
                .serial_of(&w)
                .ok_or_else(|| Error::Basis(format!("{} is not a word of the basis table", r.word)))?;
            *terms.entry(serial).or_default() += &r.coefficient;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LieElement { table: ring.table.id(), terms })
    }
}

struct LieDisplay<'a> {
    element: &'a LieElement,
    ring: &'a FreeLieRing,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LieDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (k, (s, c)) in self.element.terms.iter().enumerate() {
            let w = self.ring.word(*s).display(self.alphabet);
            match (k, c.is_negative()) {
                (0, _) => write!(f, "{c}·{w}")?,
                (_, false) => write!(f, " + {c}·{w}")?,
                (_, true) => write!(f, " - {}·{w}", c.abs())?,
            }
        }
        Ok(())
    }
}

/// The free Lie ring on `n` generators, truncated at the length bound of a
/// Hall basis table, with the tensor images of the table words cached.
#[derive(Debug, Clone)]
pub struct FreeLieRing {
    table: HallBasisTable,
    embeddings: Vec<TensorElement>,
    by_multidegree: HashMap<Vec<u32>, Vec<usize>>,
}

impl FreeLieRing {
    pub fn new(table: HallBasisTable) -> Self {
        let embeddings = table.words().iter().map(|w| embed_word(&w.word)).collect();
        let mut by_multidegree: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for w in table.words() {
            by_multidegree.entry(w.word.multidegree().to_vec()).or_default().push(w.serial);
        }
        FreeLieRing { table, embeddings, by_multidegree }
    }

    pub fn table(&self) -> &HallBasisTable {
        &self.table
    }

    /// Table word with the given serial. Panics if out of range.
    pub fn word(&self, serial: usize) -> &HallWord {
        &self.table.words()[serial - 1].word
    }

    pub fn zero(&self) -> LieElement {
        LieElement { table: self.table.id(), terms: BTreeMap::new() }
    }

    /// The basis word `word` as an element; errors if it is not in the table.
    pub fn basis_element(&self, word: &HallWord) -> Result<LieElement> {
        let serial =
            self.table.serial_of(word).ok_or_else(|| Error::Basis("word is not a member of the basis table".into()))?;
        let mut e = self.zero();
        e.terms.insert(serial, BigInt::one());
        Ok(e)
    }

    /// Tensor image of an element written in the Hall basis.
    pub fn embed(&self, e: &LieElement) -> Result<TensorElement> {
        self.check_table(e)?;
        let mut out = TensorElement::zero();
        for (s, c) in &e.terms {
            out.add_scaled(&self.embeddings[s - 1], c);
        }
        Ok(out)
    }

    /// Writes `e` in the Hall basis of the table.
    pub fn rewrite_to_hall(&self, e: &BracketExpr) -> Result<LieElement> {
        let n = self.table.n();
        for (_, w) in &e.terms {
            if w.arity() != n {
                return Err(Error::Arity { expected: n, found: w.arity() });
            }
            if w.length() > self.table.max_len() {
                return Err(Error::LengthBound { length: w.length(), max_len: self.table.max_len() });
            }
        }
        let target = embed_tensor(e);

        let mut groups: BTreeMap<Vec<u32>, Vec<(&Vec<usize>, &BigInt)>> = BTreeMap::new();
        for (seq, c) in target.terms() {
            let mut md = vec![0u32; n];
            for &i in seq {
                md[i] += 1;
            }
            groups.entry(md).or_default().push((seq, c));
        }

        let mut terms = BTreeMap::new();
        for (md, part) in groups {
            let serials = self.by_multidegree.get(&md).map(Vec::as_slice).unwrap_or(&[]);
            let mut rows: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
            for s in serials {
                for seq in self.embeddings[s - 1].terms().keys() {
                    let k = rows.len();
                    rows.entry(seq).or_insert(k);
                }
            }
            let mut rhs = vec![BigInt::zero(); rows.len()];
            for (seq, c) in part {
                match rows.get(seq) {
                    Some(&k) => rhs[k] = c.clone(),
                    None => return Err(not_in_span()),
                }
            }
            let columns: Vec<Vec<BigInt>> = serials
                .iter()
                .map(|s| {
                    let mut col = vec![BigInt::zero(); rows.len()];
                    for (seq, c) in self.embeddings[s - 1].terms() {
                        col[rows[seq]] = c.clone();
                    }
                    col
                })
                .collect();
            let x = linalg::solve_integer(&columns, &rhs).ok_or_else(not_in_span)?;
            for (s, c) in serials.iter().zip(x) {
                if !c.is_zero() {
                    terms.insert(*s, c);
                }
            }
        }
        Ok(LieElement { table: self.table.id(), terms })
    }

    /// Bilinear Lie bracket of two elements, in normal form.
    pub fn lie_bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check_table(a)?;
        self.check_table(b)?;
        let mut expr = BracketExpr::new();
        for (sa, ca) in &a.terms {
            for (sb, cb) in &b.terms {
                expr = expr.term(ca * cb, HallWord::bracket(self.word(*sa).clone(), self.word(*sb).clone()));
            }
        }
        self.rewrite_to_hall(&expr)
    }

    fn check_table(&self, e: &LieElement) -> Result<()> {
        if e.table == self.table.id() {
            Ok(())
        } else {
            Err(Error::Basis(format!("element over {:?} used with table {:?}", e.table, self.table.id())))
        }
    }
}

fn not_in_span() -> Error {
    Error::Basis("expression is not in the span of the table words".into())
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of the degree-`len` part of the free Lie ring on `n` generators:
/// `(1/len) * sum_{d | len} mu(d) * n^(len/d)`.
pub fn witt_dimension(n: usize, len: usize) -> BigUint {
    assert!(n >= 1 && len >= 1, "witt_dimension needs n >= 1 and len >= 1");
    let base = BigInt::from(n);
    let mut total = BigInt::zero();
    for d in (1..=len).filter(|d| len.is_multiple_of(*d)) {
        let mu = mobius(d as u64);
        if mu != 0 {
            total += BigInt::from(mu) * num_traits::pow(base.clone(), len / d);
        }
    }
    let (q, r) = (&total / BigInt::from(len), &total % BigInt::from(len));
    debug_assert!(r.is_zero());
    q.to_biguint().expect("Witt numbers are non-negative")
}

/// Per-degree result of [`verify_hall_basis`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// Number of table words of this length.
    pub count: usize,
    /// Rank of their tensor images.
    pub rank: usize,
    /// Rank of the span of all left-normed brackets of this length.
    pub lie_dimension: usize,
    pub independent: bool,
    pub spans: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub n: usize,
    pub degree: usize,
    pub independent: bool,
    pub spans: bool,
    pub ranks: Vec<usize>,
    pub degrees: Vec<DegreeReport>,
}

/// The left-normed bracket `[[..[x_{s0}, x_{s1}], ..], x_{sk}]`.
pub fn left_normed(seq: &[usize], n: usize) -> HallWord {
    let mut it = seq.iter();
    let first = HallWord::leaf(*it.next().expect("nonempty sequence"), n);
    it.fold(first, |acc, &i| HallWord::bracket(acc, HallWord::leaf(i, n)))
}

fn all_sequences(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..n).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn dense_rows(vectors: &[&TensorElement]) -> Vec<Vec<BigInt>> {
    let mut cols: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for v in vectors {
        for seq in v.terms().keys() {
            let k = cols.len();
            cols.entry(seq).or_insert(k);
        }
    }
    vectors
        .iter()
        .map(|v| {
            let mut row = vec![BigInt::zero(); cols.len()];
            for (seq, c) in v.terms() {
                row[cols[seq]] = c.clone();
            }
            row
        })
        .collect()
}

/// Checks, degree by degree up to `degree`, that the table words are linearly
/// independent in the tensor algebra and span the same subspace as all
/// left-normed brackets of that degree. Ranks are computed exactly.
pub fn verify_hall_basis(n: usize, degree: usize, table: &HallBasisTable) -> Result<BasisReport> {
    if table.n() != n {
        return domain(format!("table is over {} generators, expected {n}", table.n()));
    }
    if table.max_len() < degree {
        return domain(format!("table covers lengths <= {}, need {degree}", table.max_len()));
    }
    let mut degrees = Vec::with_capacity(degree);
    for len in 1..=degree {
        let words = table.words_of_length(len);
        let mut table_groups: BTreeMap<&[u32], Vec<TensorElement>> = BTreeMap::new();
        for w in words {
            table_groups.entry(w.word.multidegree()).or_default().push(embed_word(&w.word));
        }
        let mut lie_groups: BTreeMap<Vec<u32>, Vec<TensorElement>> = BTreeMap::new();
        for seq in all_sequences(n, len) {
            let mut md = vec![0u32; n];
            for &i in &seq {
                md[i] += 1;
            }
            let e = embed_word(&left_normed(&seq, n));
            if !e.is_zero() {
                lie_groups.entry(md).or_default().push(e);
            }
        }

        let (mut rank, mut lie_dimension, mut union_rank) = (0, 0, 0);
        let empty = Vec::new();
        let mut keys: Vec<&[u32]> = table_groups.keys().copied().collect();
        keys.extend(lie_groups.keys().map(Vec::as_slice));
        keys.sort_unstable();
        keys.dedup();
        for md in keys {
            let tv = table_groups.get(md).unwrap_or(&empty);
            let lv = lie_groups.get(md).unwrap_or(&empty);
            let t: Vec<&TensorElement> = tv.iter().collect();
            let l: Vec<&TensorElement> = lv.iter().collect();
            let both: Vec<&TensorElement> = tv.iter().chain(lv).collect();
            rank += linalg::rank(&dense_rows(&t));
            lie_dimension += linalg::rank(&dense_rows(&l));
            union_rank += linalg::rank(&dense_rows(&both));
        }
        let count = words.len();
        degrees.push(DegreeReport {
            degree: len,
            count,
            rank,
            lie_dimension,
            independent: rank == count,
            spans: count == lie_dimension && union_rank == lie_dimension,
        });
    }
    Ok(BasisReport {
        n,
        degree,
        independent: degrees.iter().all(|d| d.independent),
        spans: degrees.iter().all(|d| d.spans),
        ranks: degrees.iter().map(|d| d.rank).collect(),
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall_words::{enumerate_hall_basis, OrderPolicy};
    use proptest::prelude::*;

    fn ring(n: usize, len: usize) -> (FreeLieRing, Alphabet) {
        (
            FreeLieRing::new(enumerate_hall_basis(n, len, OrderPolicy::CreationOrder).unwrap()),
            Alphabet::standard(n).unwrap(),
        )
    }

    fn w(text: &str, a: &Alphabet) -> HallWord {
        parse_word(text, a).unwrap()
    }

    fn t(pairs: &[(&[usize], i64)]) -> TensorElement {
        let mut e = TensorElement::zero();
        for (s, c) in pairs {
            e.add_term(s.to_vec(), BigInt::from(*c));
        }
        e
    }

    #[test]
    fn embedding_examples() {
        let a = Alphabet::standard(2).unwrap();
        assert_eq!(embed_word(&w("[x,y]", &a)), t(&[(&[0, 1], 1), (&[1, 0], -1)]));
        assert!(embed_word(&w("[x,x]", &a)).is_zero());
        // (xy - yx)x - x(xy - yx)
        assert_eq!(embed_word(&w("[[x,y],x]", &a)), t(&[(&[0, 1, 0], 2), (&[1, 0, 0], -1), (&[0, 0, 1], -1)]));
    }

    #[test]
    fn rewrite_examples() {
        let (r, a) = ring(2, 5);
        let e = r.rewrite_to_hall(&w("[y,x]", &a).into()).unwrap();
        assert_eq!(e.display(&r, &a).to_string(), "-1·[x,y]");
        assert!(r.rewrite_to_hall(&w("[x,x]", &a).into()).unwrap().is_zero());
        let e = r.rewrite_to_hall(&w("[[x,y],x]", &a).into()).unwrap();
        assert_eq!(e.display(&r, &a).to_string(), "-1·[x,[x,y]]");
    }

    #[test]
    fn rewrite_rejects_long_monomials() {
        let (r, a) = ring(2, 3);
        let err = r.rewrite_to_hall(&w("[x,[x,[x,y]]]", &a).into()).unwrap_err();
        assert_eq!(err, Error::LengthBound { length: 4, max_len: 3 });
    }

    #[test]
    fn bracket_examples() {
        let (r, a) = ring(2, 5);
        let x = r.basis_element(&w("x", &a)).unwrap();
        let y = r.basis_element(&w("y", &a)).unwrap();
        let xy = r.lie_bracket(&x, &y).unwrap();
        assert_eq!(xy, r.basis_element(&w("[x,y]", &a)).unwrap());
        assert!(r.lie_bracket(&xy, &xy).unwrap().is_zero());

        let yxy = r.basis_element(&w("[y,[x,y]]", &a)).unwrap();
        let out = r.lie_bracket(&x, &yxy).unwrap();
        assert_eq!(r.embed(&out).unwrap(), embed_word(&w("[x,[y,[x,y]]]", &a)));
        // [x,[y,[x,y]]] = [y,[x,[x,y]]] by Jacobi and [[x,y],[x,y]] = 0
        assert_eq!(out.display(&r, &a).to_string(), "1·[y,[x,[x,y]]]");
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let (r2, a) = ring(2, 3);
        let (r3, _) = ring(2, 4);
        let x = r2.basis_element(&w("x", &a)).unwrap();
        assert!(matches!(r3.lie_bracket(&x, &x), Err(Error::Basis(_))));
    }

    // Aperiodic necklaces counted by brute force: words whose rotations are
    // pairwise distinct, divided by the length.
    fn necklace_count(n: usize, len: usize) -> usize {
        let primitive = all_sequences(n, len)
            .into_iter()
            .filter(|s| (1..len).all(|k| s[k..].iter().chain(&s[..k]).ne(s.iter())))
            .count();
        primitive / len
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_dimension(2, 5), BigUint::from(6u32));
        assert_eq!(witt_dimension(1, 1), BigUint::from(1u32));
        for len in 2..8 {
            assert_eq!(witt_dimension(1, len), BigUint::zero());
        }
        assert_eq!(witt_dimension(3, 4), BigUint::from(18u32));
        for n in 1..=3 {
            for len in 1..=7 {
                assert_eq!(witt_dimension(n, len), BigUint::from(necklace_count(n, len)), "n={n} len={len}");
            }
        }
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (k, mu) in expected.iter().enumerate() {
            assert_eq!(mobius(k as u64 + 1), *mu);
        }
    }

    #[test]
    fn basis_verification_small() {
        let t2 = enumerate_hall_basis(2, 5, OrderPolicy::CreationOrder).unwrap();
        let rep = verify_hall_basis(2, 5, &t2).unwrap();
        assert!(rep.independent && rep.spans);
        assert_eq!(rep.ranks, vec![2, 1, 2, 3, 6]);

        let t1 = enumerate_hall_basis(1, 4, OrderPolicy::CreationOrder).unwrap();
        let rep = verify_hall_basis(1, 4, &t1).unwrap();
        assert!(rep.independent && rep.spans);
        assert_eq!(rep.ranks, vec![1, 0, 0, 0]);

        assert!(verify_hall_basis(2, 6, &t2).is_err());
    }

    #[test]
    fn lex_policy_three_generators() {
        let t3 = enumerate_hall_basis(3, 4, OrderPolicy::LexSerialized).unwrap();
        let rep = verify_hall_basis(3, 4, &t3).unwrap();
        assert_eq!(rep.ranks, vec![3, 3, 8, 18]);
        assert!(rep.degrees.iter().all(|d| d.lie_dimension == d.count));
    }

    #[test]
    fn json_round_trip() {
        let (r, a) = ring(2, 4);
        let e =
            r.rewrite_to_hall(&BracketExpr::new().term(3, w("[[x,y],x]", &a)).term(-2, w("[y,[y,x]]", &a))).unwrap();
        let json = serde_json::to_string(&e.to_records(&r, &a)).unwrap();
        let back: Vec<LieTermRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(LieElement::from_records(&back, &r, &a).unwrap(), e);

        let te = r.embed(&e).unwrap();
        let json = serde_json::to_string(&te.to_records(&a)).unwrap();
        let back: Vec<TensorTermRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(TensorElement::from_records(&back, &a).unwrap(), te);
    }

    fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = HallWord> {
        let leaf = (0..n).prop_map(move |i| HallWord::leaf(i, n));
        leaf.prop_recursive(4, 8, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| HallWord::bracket(a, b)))
            .prop_filter("length bound", move |w| w.length() <= max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rewrite_preserves_image(a in arb_word(3, 6), b in arb_word(3, 6), c in -3i64..=3) {
            let (r, _) = ring(3, 6);
            let e = BracketExpr::new().term(c, a).term(1, b);
            let nf = r.rewrite_to_hall(&e).unwrap();
            prop_assert_eq!(r.embed(&nf).unwrap(), embed_tensor(&e));
        }

        #[test]
        fn antisymmetry_and_jacobi(a in arb_word(2, 2), b in arb_word(2, 2), c in arb_word(2, 2)) {
            let (r, _) = ring(2, 6);
            let br = |u: &HallWord, v: &HallWord| HallWord::bracket(u.clone(), v.clone());
            let lhs = r.rewrite_to_hall(&br(&a, &b).into()).unwrap();
            let rhs = r.rewrite_to_hall(&br(&b, &a).into()).unwrap();
            prop_assert!(lhs.add(&rhs).unwrap().is_zero());

            let jacobi = BracketExpr::new()
                .term(1, br(&a, &br(&b, &c)))
                .term(1, br(&b, &br(&c, &a)))
                .term(1, br(&c, &br(&a, &b)));
            prop_assert!(r.rewrite_to_hall(&jacobi).unwrap().is_zero());
        }
    }
}

//! The Hilton-Milnor splitting `Omega S (X_1 v .. v X_n) = prod~_w Omega S w(X_1, .., X_n)`
//! over a Hall basis, in its computable form.
//!
//! The weak product is infinite. A [`Decomposition`] keeps the finitely many
//! factors admitted by a length or connectivity bound, together with a lower
//! bound on the connectivity of every factor it leaves out; that bound grows
//! without limit as the length bound does.
//!
//! The `verify_*` functions check the splitting and the intermediate
//! splittings it is assembled from on reduced series, exactly, to a chosen
//! truncation. They do not (and cannot) check equivalences of objects.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::hall_words::{
    enumerate_hall_basis, format_word, render_columns, Alphabet, HallBasisTable, OrderPolicy, RankedWord,
};
use crate::homotopy_series::{
    geom_sum, half_smash_series, product_series, suspend_series, word_connectivity, word_series, FormalObject,
    Mismatch, MultiSeries, SeriesTermRecord,
};

/// Which factors of the weak product to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// All words of length `<= L`.
    MaxLength(usize),
    /// All words whose connectivity bound is `< C`.
    MinConnectivity(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFactor {
    pub word: RankedWord,
    pub multidegree: Vec<u32>,
    /// Lower bound on the connectivity of `w(X_1, .., X_n)` and of its James construction.
    pub conn_bound: i64,
    /// Reduced series of `Omega S w(X_1, .., X_n)`.
    pub factor_series: MultiSeries,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    inputs: Vec<FormalObject>,
    bound: Bound,
    table: HallBasisTable,
    factors: Vec<DecompositionFactor>,
    residual_conn: i64,
}

/// Outcome of a series identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// The first coefficient (lexicographic in the exponent vector) on which
    /// the two sides disagree.
    Fail(Mismatch),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn from_mismatch(m: Option<Mismatch>) -> Self {
        m.map_or(Verdict::Pass, Verdict::Fail)
    }
}

fn connectivities(objects: &[FormalObject]) -> Result<Vec<i64>> {
    if objects.is_empty() {
        return domain("at least one object is required");
    }
    let arity = objects[0].reduced_series().arity();
    for x in objects {
        if x.connectivity() < 0 {
            return domain(format!(
                "object {} has connectivity {}; the splitting requires pointed connected objects",
                x.name(),
                x.connectivity()
            ));
        }
        if x.reduced_series().arity() != arity {
            return domain("input series must share the same variables");
        }
    }
    Ok(objects.iter().map(FormalObject::connectivity).collect())
}

/// Computes the factors of the splitting admitted by `bound`, in the order
/// of the Hall basis chosen by `policy`.
pub fn decompose(objects: &[FormalObject], bound: Bound, policy: OrderPolicy) -> Result<Decomposition> {
    let conns = connectivities(objects)?;
    let n = objects.len();
    let step = conns.iter().min().copied().unwrap_or(0) + 1;

    // a word of length l is at least (l * step - 1)-connected
    let (max_len, residual_conn) = match bound {
        Bound::MaxLength(0) => return domain("length bound must be positive"),
        Bound::MaxLength(l) => (l, (l as i64 + 1) * step - 1),
        Bound::MinConnectivity(c) if c < 1 => return domain("connectivity bound must be positive"),
        Bound::MinConnectivity(c) => {
            let shortest_omitted = (c + 1 + step - 1) / step;
            ((shortest_omitted - 1).max(1) as usize, c)
        }
    };

    let table = enumerate_hall_basis(n, max_len, policy)?;
    let inputs: Vec<MultiSeries> = objects.iter().map(|x| x.reduced_series().clone()).collect();
    let mut factors = Vec::new();
    for rw in table.words() {
        let conn_bound = word_connectivity(&rw.word, &conns);
        if let Bound::MinConnectivity(c) = bound {
            if conn_bound >= c {
                continue;
            }
        }
        factors.push(DecompositionFactor {
            word: rw.clone(),
            multidegree: rw.word.multidegree().to_vec(),
            conn_bound,
            factor_series: geom_sum(&word_series(&rw.word, &inputs)?)?,
        });
    }
    Ok(Decomposition { inputs: objects.to_vec(), bound, table, factors, residual_conn })
}

/// JSON form of a [`Decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub inputs: Vec<InputRecord>,
    pub bound: Bound,
    pub policy: OrderPolicy,
    pub residual_conn: i64,
    pub factors: Vec<FactorRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    pub name: String,
    pub connectivity: i64,
    pub reduced_series: Vec<SeriesTermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub serial: usize,
    pub word: String,
    pub rank: usize,
    pub multidegree: Vec<u32>,
    pub conn_bound: i64,
    pub factor_series: Vec<SeriesTermRecord>,
}

impl Decomposition {
    pub fn inputs(&self) -> &[FormalObject] {
        &self.inputs
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn table(&self) -> &HallBasisTable {
        &self.table
    }

    pub fn factors(&self) -> &[DecompositionFactor] {
        &self.factors
    }

    /// Every factor left out is at least this connected.
    pub fn residual_conn(&self) -> i64 {
        self.residual_conn
    }

    /// Reduced series of the finite product of the retained factors.
    pub fn product_series(&self) -> Result<MultiSeries> {
        let first = self.inputs[0].reduced_series();
        let mut acc = MultiSeries::zero(first.arity(), first.truncation());
        for f in &self.factors {
            acc = product_series(&acc, &f.factor_series)?;
        }
        Ok(acc)
    }

    pub fn to_record(&self, alphabet: &Alphabet) -> DecompositionRecord {
        DecompositionRecord {
            inputs: self
                .inputs
                .iter()
                .map(|x| InputRecord {
                    name: x.name().to_string(),
                    connectivity: x.connectivity(),
                    reduced_series: x.reduced_series().to_records(),
                })
                .collect(),
            bound: self.bound,
            policy: self.table.policy(),
            residual_conn: self.residual_conn,
            factors: self
                .factors
                .iter()
                .map(|f| FactorRecord {
                    serial: f.word.serial,
                    word: format_word(&f.word.word, alphabet),
                    rank: f.word.rank,
                    multidegree: f.multidegree.clone(),
                    conn_bound: f.conn_bound,
                    factor_series: f.factor_series.to_records(),
                })
                .collect(),
        }
    }

    /// Columns `serial word multidegree conn_bound`, then the residual bound.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let rows: Vec<[String; 4]> = self
            .factors
            .iter()
            .map(|f| {
                let md: Vec<String> = f.multidegree.iter().map(u32::to_string).collect();
                [
                    f.word.serial.to_string(),
                    format_word(&f.word.word, alphabet),
                    format!("({})", md.join(",")),
                    f.conn_bound.to_string(),
                ]
            })
            .collect();
        let mut out =
            render_columns(["serial", "word", "multidegree", "conn_bound"], &rows, &[false, true, true, false]);
        out.push_str(&format!("omitted factors are at least {}-connected\n", self.residual_conn));
        out
    }
}

/// Checks `geom_sum(f_1 + .. + f_n)` against the reduced series of the
/// product of all factors whose series survives truncation at `truncation`.
pub fn verify_hm_series(objects: &[FormalObject], truncation: usize, policy: OrderPolicy) -> Result<Verdict> {
    connectivities(objects)?;
    let n = objects.len();
    let inputs: Vec<MultiSeries> = objects.iter().map(|x| x.reduced_series().truncate(truncation)).collect();
    let arity = inputs[0].arity();
    let truncation = inputs[0].truncation();

    let wedge = inputs.iter().try_fold(MultiSeries::zero(arity, truncation), |acc, f| acc.add(f))?;
    let lhs = geom_sum(&wedge)?;

    // connected inputs have series of order >= 1, so longer words vanish
    let table = enumerate_hall_basis(n, truncation.max(1), policy)?;
    let mut rhs = MultiSeries::zero(arity, truncation);
    for rw in table.words() {
        let w = word_series(&rw.word, &inputs)?;
        if w.is_zero() {
            continue;
        }
        rhs = product_series(&rhs, &geom_sum(&w)?)?;
    }
    Ok(Verdict::from_mismatch(lhs.first_mismatch(&rhs)?))
}

fn require_positive_order(f: &MultiSeries, what: &str) -> Result<()> {
    if f.terms().keys().any(|e| e[1..].iter().all(|&x| x == 0)) {
        return domain(format!("{what} must have every term of positive t-degree"));
    }
    Ok(())
}

/// Checks both forms of the two-object splitting of `Omega S (X v Y)`:
/// with the factor `Omega S (Y v (Y ^ Omega S X))`, and with the factor
/// `Omega S (v_{i >= 0} Y ^ X^i)`.
pub fn verify_fundamental_split(f_x: &MultiSeries, f_y: &MultiSeries, truncation: usize) -> Result<Verdict> {
    require_positive_order(f_x, "f_X")?;
    let (fx, fy) = (f_x.truncate(truncation), f_y.truncate(truncation));
    let lhs = geom_sum(&fx.add(&fy)?)?;
    let jx = geom_sum(&fx)?;

    let rhs = product_series(&jx, &geom_sum(&fy.add(&fy.mul(&jx)?)?)?)?;
    if let Some(m) = lhs.first_mismatch(&rhs)? {
        return Ok(Verdict::Fail(m));
    }

    let mut wedge = MultiSeries::zero(fx.arity(), fx.truncation().min(fy.truncation()));
    for i in 0..=truncation as u32 {
        wedge = wedge.add(&fy.mul(&fx.pow(i))?)?;
    }
    let rhs = product_series(&jx, &geom_sum(&wedge)?)?;
    Ok(Verdict::from_mismatch(lhs.first_mismatch(&rhs)?))
}

/// Checks `S Omega S X = v_{i >= 1} S X^i` on series.
pub fn verify_james(f: &MultiSeries, truncation: usize) -> Result<Verdict> {
    require_positive_order(f, "f")?;
    let f = f.truncate(truncation);
    let lhs = suspend_series(&geom_sum(&f)?);
    let mut rhs = MultiSeries::zero(f.arity(), f.truncation());
    for i in 1..=truncation as u32 {
        rhs = rhs.add(&suspend_series(&f.pow(i)))?;
    }
    Ok(Verdict::from_mismatch(lhs.first_mismatch(&rhs)?))
}

/// Checks `S (X x| Y) = S (X v (X ^ Y))` on series, where `X x| Y = Y |x X`.
pub fn verify_half2(f_x: &MultiSeries, f_y: &MultiSeries, truncation: usize) -> Result<Verdict> {
    let (fx, fy) = (f_x.truncate(truncation), f_y.truncate(truncation));
    let lhs = half_smash_series(&fy, &suspend_series(&fx))?;
    let rhs = suspend_series(&fx.add(&fx.mul(&fy)?)?);
    Ok(Verdict::from_mismatch(lhs.first_mismatch(&rhs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall_words::SplitTower;
    use num_bigint::BigInt;

    fn spheres(conns: &[i64], truncation: usize) -> Vec<FormalObject> {
        let n = conns.len();
        conns
            .iter()
            .enumerate()
            .map(|(i, &c)| FormalObject::sphere(format!("X{}", i + 1), c, n, i, truncation).unwrap())
            .collect()
    }

    fn units(n: usize, truncation: usize) -> Vec<FormalObject> {
        spheres(&vec![0; n], truncation)
    }

    fn bounds(d: &Decomposition) -> Vec<i64> {
        d.factors().iter().map(|f| f.conn_bound).collect()
    }

    #[test]
    fn single_object() {
        let d = decompose(&spheres(&[3], 8), Bound::MaxLength(6), OrderPolicy::CreationOrder).unwrap();
        assert_eq!(d.factors().len(), 1);
        assert_eq!(d.factors()[0].conn_bound, 3);
    }

    #[test]
    fn two_unit_objects_length_five() {
        let d = decompose(&units(2, 8), Bound::MaxLength(5), OrderPolicy::CreationOrder).unwrap();
        assert_eq!(bounds(&d), vec![0, 0, 1, 2, 2, 3, 3, 3, 4, 4, 4, 4, 4, 4]);
        assert_eq!(d.residual_conn(), 5);
    }

    #[test]
    fn mixed_connectivities() {
        let d = decompose(&spheres(&[1, 3], 8), Bound::MaxLength(3), OrderPolicy::CreationOrder).unwrap();
        assert_eq!(bounds(&d), vec![1, 3, 5, 7, 9]);
        let a = Alphabet::standard(2).unwrap();
        let words: Vec<String> = d.factors().iter().map(|f| format_word(&f.word.word, &a)).collect();
        assert_eq!(words, ["x", "y", "[x,y]", "[x,[x,y]]", "[y,[x,y]]"]);
    }

    #[test]
    fn rejects_disconnected_inputs() {
        let x = FormalObject::new("X", -1, MultiSeries::variable(1, 4, 0)).unwrap();
        let err = decompose(&[x], Bound::MaxLength(3), OrderPolicy::CreationOrder).unwrap_err();
        assert!(err.to_string().contains("pointed connected objects"));
        assert!(decompose(&[], Bound::MaxLength(3), OrderPolicy::CreationOrder).is_err());
        assert!(decompose(&units(2, 4), Bound::MaxLength(0), OrderPolicy::CreationOrder).is_err());
    }

    #[test]
    fn connectivity_bound_selects_words() {
        let objs = spheres(&[1, 2], 8);
        let d = decompose(&objs, Bound::MinConnectivity(9), OrderPolicy::CreationOrder).unwrap();
        assert!(d.factors().iter().all(|f| f.conn_bound < 9));
        assert_eq!(d.residual_conn(), 9);
        // every word with bound < 9 is present: compare with a long table
        let long = decompose(&objs, Bound::MaxLength(8), OrderPolicy::CreationOrder).unwrap();
        let expected: Vec<usize> = long.factors().iter().filter(|f| f.conn_bound < 9).map(|f| f.word.serial).collect();
        let got: Vec<usize> = d.factors().iter().map(|f| f.word.serial).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn bounds_agree_on_common_factors() {
        for conns in [[0i64, 0], [1, 1], [0, 2]] {
            let objs = spheres(&conns, 8);
            let cmin = *conns.iter().min().unwrap();
            for l in 1..=5usize {
                let by_len = decompose(&objs, Bound::MaxLength(l), OrderPolicy::CreationOrder).unwrap();
                let c = l as i64 * (cmin + 1) - 1;
                if c < 1 {
                    continue;
                }
                let by_conn = decompose(&objs, Bound::MinConnectivity(c), OrderPolicy::CreationOrder).unwrap();
                for f in by_conn.factors() {
                    if let Some(g) = by_len.factors().iter().find(|g| g.word.word == f.word.word) {
                        assert_eq!(f, g);
                    }
                }
            }
        }
    }

    #[test]
    fn residual_bound_is_monotone_and_sound() {
        let objs = spheres(&[0, 1, 2], 6);
        let long = decompose(&objs, Bound::MaxLength(6), OrderPolicy::CreationOrder).unwrap();
        let mut last = i64::MIN;
        for l in 1..=5 {
            let d = decompose(&objs, Bound::MaxLength(l), OrderPolicy::CreationOrder).unwrap();
            assert!(d.residual_conn() > last);
            last = d.residual_conn();
            for f in &long.factors()[d.factors().len()..] {
                assert!(f.conn_bound >= d.residual_conn());
            }
        }
    }

    #[test]
    fn tower_heads_match_factor_words() {
        for policy in [OrderPolicy::CreationOrder, OrderPolicy::LexSerialized] {
            let d = decompose(&units(3, 4), Bound::MaxLength(4), policy).unwrap();
            let heads: Vec<_> = SplitTower::new(3, 4, policy).unwrap().collect();
            let words: Vec<_> = d.factors().iter().map(|f| f.word.word.clone()).collect();
            assert_eq!(heads, words);
        }
    }

    #[test]
    fn hm_series_identity() {
        assert!(verify_hm_series(&units(1, 8), 8, OrderPolicy::CreationOrder).unwrap().passed());
        assert!(verify_hm_series(&units(2, 8), 8, OrderPolicy::CreationOrder).unwrap().passed());
        assert!(verify_hm_series(&spheres(&[0, 1, 2], 6), 6, OrderPolicy::LexSerialized).unwrap().passed());
    }

    #[test]
    fn hm_product_matches_decomposition() {
        let objs = units(2, 6);
        let d = decompose(&objs, Bound::MaxLength(6), OrderPolicy::CreationOrder).unwrap();
        let wedge = MultiSeries::variable(2, 6, 0).add(&MultiSeries::variable(2, 6, 1)).unwrap();
        assert!(d.product_series().unwrap().equals(&geom_sum(&wedge).unwrap()).unwrap());
    }

    #[test]
    fn factor_order_is_irrelevant() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let d = decompose(&spheres(&[0, 1, 0], 6), Bound::MaxLength(6), OrderPolicy::CreationOrder).unwrap();
        let expected = d.product_series().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut factors: Vec<&MultiSeries> = d.factors().iter().map(|f| &f.factor_series).collect();
        for _ in 0..5 {
            factors.shuffle(&mut rng);
            let acc = factors.iter().fold(MultiSeries::zero(3, 6), |acc, f| product_series(&acc, f).unwrap());
            assert_eq!(acc, expected);
        }
    }

    #[test]
    fn missing_factor_is_reported() {
        // drop the [x,y] factor: the first discrepancy is at t1 t2
        let objs = units(2, 4);
        let d = decompose(&objs, Bound::MaxLength(4), OrderPolicy::CreationOrder).unwrap();
        let mut acc = MultiSeries::zero(2, 4);
        for f in d.factors().iter().filter(|f| f.word.serial != 3) {
            acc = product_series(&acc, &f.factor_series).unwrap();
        }
        let wedge = MultiSeries::variable(2, 4, 0).add(&MultiSeries::variable(2, 4, 1)).unwrap();
        let m = geom_sum(&wedge).unwrap().first_mismatch(&acc).unwrap().unwrap();
        assert_eq!(m.exponents, vec![0, 1, 1]);
        assert_eq!((m.lhs, m.rhs), (BigInt::from(2), BigInt::from(1)));
    }

    #[test]
    fn intermediate_splittings_on_units() {
        let (x, y) = (MultiSeries::variable(2, 8, 0), MultiSeries::variable(2, 8, 1));
        let zero = MultiSeries::zero(2, 8);
        assert!(verify_fundamental_split(&x, &y, 8).unwrap().passed());
        assert!(verify_fundamental_split(&x, &zero, 8).unwrap().passed());
        assert!(verify_james(&x, 5).unwrap().passed());
        assert!(verify_james(&zero, 5).unwrap().passed());
        assert!(verify_half2(&x, &y, 8).unwrap().passed());
        assert!(verify_half2(&x, &zero, 8).unwrap().passed());
        let s = MultiSeries::suspension_variable(2, 8);
        assert!(verify_james(&s, 5).is_err());
    }

    #[test]
    fn json_record_round_trip() {
        let a = Alphabet::standard(2).unwrap();
        let d = decompose(&spheres(&[0, 1], 5), Bound::MaxLength(3), OrderPolicy::CreationOrder).unwrap();
        let rec = d.to_record(&a);
        let json = serde_json::to_string(&rec).unwrap();
        let back: DecompositionRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        let series = MultiSeries::from_records(2, 5, &back.factors[2].factor_series).unwrap();
        assert_eq!(series, d.factors()[2].factor_series);
    }
}

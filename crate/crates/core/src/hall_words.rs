//! Hall bases of the free Lie ring on an ordered alphabet.
//!
//! Two constructions are provided and kept in agreement by the tests:
//!
//! * [`enumerate_hall_basis`] builds the basis length by length with a rank
//!   function: the leaves have rank 0, and a bracket `[x_i, x_j]` of serials
//!   `i < j` is admitted when `rank(x_j) <= i`, receiving rank `i`.
//! * [`split_step`] performs one step of the elimination recursion: remove the
//!   least word `h` of the current list and replace every other word `x` by the
//!   family `ad(h)^k(x)`, `k >= 0`.
//!
//! Both constructions are truncated at a word-length bound. Words are stored
//! as immutable bracket trees with cached length and multidegree.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// One letter of the alphabet. `index` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub name: String,
}

/// A totally ordered, finite set of generator symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    /// Builds an alphabet from display names, in order.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut gens: Vec<Generator> = Vec::new();
        for name in names {
            let name = name.into();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return domain(format!("invalid generator name {name:?}: expected [a-zA-Z0-9_]+"));
            }
            if gens.iter().any(|g| g.name == name) {
                return domain(format!("duplicate generator name {name:?}"));
            }
            gens.push(Generator { index: gens.len() + 1, name });
        }
        if gens.is_empty() {
            return domain("alphabet must contain at least one generator");
        }
        Ok(Alphabet { gens })
    }

    /// `x, y, z` for up to three letters, `x1, .., xn` beyond that.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("alphabet size must be at least 1");
        }
        if n <= 3 {
            Alphabet::new(["x", "y", "z"].into_iter().take(n))
        } else {
            Alphabet::new((1..=n).map(|i| format!("x{i}")))
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Name of the generator at 0-based position `i`.
    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    /// 0-based position of the generator called `name`.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn leaf(&self, name: &str) -> Option<HallWord> {
        self.position(name).map(|i| HallWord::leaf(i, self.len()))
    }
}

/// A binary bracket tree over the generators of an alphabet of size `n`.
///
/// Leaves carry the 0-based position of their generator. Every tree caches its
/// length (number of leaves) and its multidegree (leaf count per generator).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HallWord {
    node: Node,
    length: usize,
    multidegree: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Leaf(usize),
    Bracket(Arc<HallWord>, Arc<HallWord>),
}

/// Borrowed view of the top of a [`HallWord`].
#[derive(Debug, Clone, Copy)]
pub enum WordView<'a> {
    Leaf(usize),
    Bracket(&'a HallWord, &'a HallWord),
}

impl HallWord {
    /// The generator at 0-based position `index` of an alphabet of size `n`.
    ///
    /// Panics if `index >= n`.
    pub fn leaf(index: usize, n: usize) -> Self {
        assert!(index < n, "generator index {index} out of range for alphabet of size {n}");
        let mut multidegree = vec![0; n];
        multidegree[index] = 1;
        HallWord { node: Node::Leaf(index), length: 1, multidegree }
    }

    /// The formal bracket `[left, right]`. Panics on an arity mismatch.
    pub fn bracket(left: HallWord, right: HallWord) -> Self {
        assert_eq!(left.arity(), right.arity(), "bracket of words over different alphabets");
        let multidegree = left.multidegree.iter().zip(&right.multidegree).map(|(a, b)| a + b).collect();
        HallWord {
            length: left.length + right.length,
            multidegree,
            node: Node::Bracket(Arc::new(left), Arc::new(right)),
        }
    }

    pub fn view(&self) -> WordView<'_> {
        match &self.node {
            Node::Leaf(i) => WordView::Leaf(*i),
            Node::Bracket(l, r) => WordView::Bracket(l, r),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.node, Node::Leaf(_))
    }

    /// 0-based generator position if this word is a leaf.
    pub fn generator(&self) -> Option<usize> {
        match self.node {
            Node::Leaf(i) => Some(i),
            Node::Bracket(..) => None,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Entry `i` counts the leaves carrying generator `i` (0-based).
    pub fn multidegree(&self) -> &[u32] {
        &self.multidegree
    }

    /// Size of the alphabet this word is written over.
    pub fn arity(&self) -> usize {
        self.multidegree.len()
    }

    /// Leaf generators from left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length);
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match &self.node {
            Node::Leaf(i) => out.push(*i),
            Node::Bracket(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// `ad(self)^k(x) = [self, [self, .., [self, x]]]`.
    pub fn ad_power(&self, k: usize, x: &HallWord) -> HallWord {
        (0..k).fold(x.clone(), |acc, _| HallWord::bracket(self.clone(), acc))
    }

    /// Renders the word with the alphabet's names, e.g. `[x,[x,y]]`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        WordDisplay { word: self, alphabet }
    }

    fn tokens(&self, out: &mut Vec<Token>) {
        match &self.node {
            Node::Leaf(i) => out.push(Token::Leaf(*i)),
            Node::Bracket(l, r) => {
                out.push(Token::Open);
                l.tokens(out);
                out.push(Token::Comma);
                r.tokens(out);
                out.push(Token::Close);
            }
        }
    }
}

struct WordDisplay<'a> {
    word: &'a HallWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.word.view() {
            WordView::Leaf(i) => f.write_str(self.alphabet.name(i)),
            WordView::Bracket(l, r) => {
                write!(f, "[{},{}]", l.display(self.alphabet), r.display(self.alphabet))
            }
        }
    }
}

/// Serialized-tree tokens. The variant order mirrors ASCII on the canonical
/// text when generator names sort like their alphabet positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Token {
    Comma,
    Open,
    Close,
    Leaf(usize),
}

/// Canonical text of `w`: nested brackets, comma separated, no whitespace.
pub fn format_word(w: &HallWord, alphabet: &Alphabet) -> String {
    w.display(alphabet).to_string()
}

/// Parses `word := name | "[" word "," word "]"`. Whitespace between tokens
/// is ignored. Error positions are byte offsets into `text`.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<HallWord> {
    let mut parser = Parser { text, pos: 0, alphabet };
    let word = parser.word()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(word)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn error(&self, message: &str) -> Error {
        let message =
            if self.pos >= self.text.len() { format!("{message} (end of input)") } else { message.to_string() };
        Error::Parse { position: self.pos, message }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> Result<HallWord> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let left = self.word()?;
                self.expect(',')?;
                let right = self.word()?;
                self.expect(']')?;
                Ok(HallWord::bracket(left, right))
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
                let start = self.pos;
                let len = self.text[start..]
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.text.len() - start);
                let name = &self.text[start..start + len];
                match self.alphabet.leaf(name) {
                    Some(w) => {
                        self.pos += len;
                        Ok(w)
                    }
                    None => Err(Error::Parse { position: start, message: format!("unknown generator {name:?}") }),
                }
            }
            _ => Err(self.error("expected '[' or a generator name")),
        }
    }
}

/// Tie-break among words of equal length. Both policies order words by
/// length first, and leaves by alphabet position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderPolicy {
    /// Brackets `[x_i, x_j]` of one length are ordered by ascending `(i, j)`.
    #[default]
    CreationOrder,
    /// Brackets of one length are ordered lexicographically by their
    /// serialized tree.
    LexSerialized,
}

impl OrderPolicy {
    /// The total order on bracket trees this policy induces.
    ///
    /// For `CreationOrder` this compares left factors, then right factors,
    /// recursively; by induction on length that coincides with ordering
    /// brackets by the serials `(i, j)` of their factors.
    pub fn compare(self, a: &HallWord, b: &HallWord) -> Ordering {
        a.length.cmp(&b.length).then_with(|| match (a.view(), b.view()) {
            (WordView::Leaf(i), WordView::Leaf(j)) => i.cmp(&j),
            (WordView::Bracket(al, ar), WordView::Bracket(bl, br)) => match self {
                OrderPolicy::CreationOrder => self.compare(al, bl).then_with(|| self.compare(ar, br)),
                OrderPolicy::LexSerialized => {
                    let (mut ta, mut tb) = (Vec::new(), Vec::new());
                    a.tokens(&mut ta);
                    b.tokens(&mut tb);
                    ta.cmp(&tb)
                }
            },
            // unreachable for equal lengths
            (WordView::Leaf(_), WordView::Bracket(..)) => Ordering::Less,
            (WordView::Bracket(..), WordView::Leaf(_)) => Ordering::Greater,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderPolicy::CreationOrder => "creation-order",
            OrderPolicy::LexSerialized => "lex-serialized",
        }
    }
}

impl std::str::FromStr for OrderPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "creation" | "creation-order" => Ok(OrderPolicy::CreationOrder),
            "lex" | "lex-serialized" => Ok(OrderPolicy::LexSerialized),
            _ => domain(format!("unknown order policy {s:?}")),
        }
    }
}

/// A member of a Hall basis table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedWord {
    pub word: HallWord,
    pub rank: usize,
    /// 1-based position in the basis order.
    pub serial: usize,
}

/// Identifies a table by the parameters that determine it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableId {
    pub n: usize,
    pub max_len: usize,
    pub policy: OrderPolicy,
}

/// All words of length `<= max_len` of a Hall basis on `n` symbols, in basis
/// order.
#[derive(Debug, Clone)]
pub struct HallBasisTable {
    n: usize,
    max_len: usize,
    policy: OrderPolicy,
    words: Vec<RankedWord>,
    // words[by_length[l - 1]] are the words of length l
    by_length: Vec<std::ops::Range<usize>>,
    index: HashMap<HallWord, usize>,
}

/// One row of the JSON table export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordRecord {
    pub serial: usize,
    pub word: String,
    pub length: usize,
    pub rank: usize,
    pub multidegree: Vec<u32>,
}

/// Enumerates a Hall basis on `n` symbols up to word length `max_len`.
pub fn enumerate_hall_basis(n: usize, max_len: usize, policy: OrderPolicy) -> Result<HallBasisTable> {
    if n == 0 {
        return domain("alphabet size must be at least 1");
    }
    if max_len == 0 {
        return domain("maximum word length must be at least 1");
    }
    let mut words: Vec<RankedWord> =
        (0..n).map(|i| RankedWord { word: HallWord::leaf(i, n), rank: 0, serial: i + 1 }).collect();
    let mut by_length: Vec<std::ops::Range<usize>> = std::iter::once(0..n).collect();

    for len in 2..=max_len {
        // (i, j) are 0-based positions; serials are one more.
        let mut fresh: Vec<(usize, usize)> = Vec::new();
        for (j, right) in words.iter().enumerate() {
            let right_len = right.word.length;
            if right_len >= len {
                break;
            }
            let left_range = &by_length[len - right_len - 1];
            // rank(x_j) <= serial(x_i) < serial(x_j)
            let lo = left_range.start.max(right.rank.saturating_sub(1));
            let hi = left_range.end.min(j);
            for i in lo..hi {
                if right.rank <= i + 1 {
                    fresh.push((i, j));
                }
            }
        }
        fresh.sort_unstable();
        let mut fresh: Vec<(usize, HallWord)> = fresh
            .into_iter()
            .map(|(i, j)| (i, HallWord::bracket(words[i].word.clone(), words[j].word.clone())))
            .collect();
        fresh.sort_by(|a, b| policy.compare(&a.1, &b.1));

        let start = words.len();
        for (i, word) in fresh {
            let serial = words.len() + 1;
            words.push(RankedWord { word, rank: i + 1, serial });
        }
        by_length.push(start..words.len());
    }

    let index = words.iter().enumerate().map(|(k, w)| (w.word.clone(), k)).collect();
    Ok(HallBasisTable { n, max_len, policy, words, by_length, index })
}

impl HallBasisTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn policy(&self) -> OrderPolicy {
        self.policy
    }

    pub fn id(&self) -> TableId {
        TableId { n: self.n, max_len: self.max_len, policy: self.policy }
    }

    pub fn words(&self) -> &[RankedWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// The word with 1-based `serial`.
    pub fn get(&self, serial: usize) -> Option<&RankedWord> {
        serial.checked_sub(1).and_then(|k| self.words.get(k))
    }

    /// Serial of `word` if it belongs to the table.
    pub fn serial_of(&self, word: &HallWord) -> Option<usize> {
        self.index.get(word).map(|k| k + 1)
    }

    /// Words of exactly length `len`, in basis order.
    pub fn words_of_length(&self, len: usize) -> &[RankedWord] {
        match len.checked_sub(1).and_then(|k| self.by_length.get(k)) {
            Some(range) => &self.words[range.clone()],
            None => &[],
        }
    }

    /// Entry `l - 1` is the number of words of length `l`.
    pub fn counts_by_length(&self) -> Vec<usize> {
        self.by_length.iter().map(|r| r.len()).collect()
    }

    /// `L_r = { w : rank(w) <= r < serial(w) }` in basis order.
    pub fn residual(&self, r: usize) -> Vec<&HallWord> {
        self.words.iter().filter(|w| w.rank <= r && r < w.serial).map(|w| &w.word).collect()
    }

    pub fn to_records(&self, alphabet: &Alphabet) -> Vec<WordRecord> {
        self.words
            .iter()
            .map(|w| WordRecord {
                serial: w.serial,
                word: format_word(&w.word, alphabet),
                length: w.word.length,
                rank: w.rank,
                multidegree: w.word.multidegree.clone(),
            })
            .collect()
    }

    /// Plain-text columns `serial word length rank`, newline terminated.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let rows: Vec<[String; 4]> = self
            .words
            .iter()
            .map(|w| {
                [w.serial.to_string(), format_word(&w.word, alphabet), w.word.length.to_string(), w.rank.to_string()]
            })
            .collect();
        render_columns(["serial", "word", "length", "rank"], &rows, &[false, true, false, false])
    }
}

/// Aligned text table; `left[k]` selects left alignment for column `k`.
pub(crate) fn render_columns<const K: usize>(header: [&str; K], rows: &[[String; K]], left: &[bool; K]) -> String {
    let mut widths: [usize; K] = header.map(|h| h.chars().count());
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let header = header.map(String::from);
    for row in std::iter::once(&header).chain(rows) {
        let mut line = String::new();
        for k in 0..K {
            if k > 0 {
                line.push_str("  ");
            }
            let pad = widths[k] - row[k].chars().count();
            if left[k] {
                line.push_str(&row[k]);
                line.extend(std::iter::repeat_n(' ', pad));
            } else {
                line.extend(std::iter::repeat_n(' ', pad));
                line.push_str(&row[k]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Leaf multiplicities of `w`, one entry per generator.
pub fn multidegree(w: &HallWord) -> Vec<u32> {
    w.multidegree.clone()
}

/// One step of the elimination recursion. Returns the least word `head` of
/// `current` and the list `{ ad(head)^k(x) : x in current, x != head, k >= 0 }`
/// truncated to length `<= max_len` and sorted by `policy`.
pub fn split_step(current: &[HallWord], max_len: usize, policy: OrderPolicy) -> Result<(HallWord, Vec<HallWord>)> {
    let Some((head, rest)) = current.split_first() else {
        return domain("split_step needs a nonempty word list");
    };
    let mut next = Vec::new();
    for x in rest.iter().filter(|x| *x != head) {
        let mut w = x.clone();
        while w.length <= max_len {
            let bigger = HallWord::bracket(head.clone(), w.clone());
            next.push(w);
            w = bigger;
        }
    }
    next.sort_by(|a, b| policy.compare(a, b));
    Ok((head.clone(), next))
}

/// Iterates [`split_step`] from the generators, yielding the heads
/// `x_1, x_2, ..` in order until the truncated list is exhausted.
#[derive(Debug, Clone)]
pub struct SplitTower {
    residual: Vec<HallWord>,
    max_len: usize,
    policy: OrderPolicy,
}

impl SplitTower {
    pub fn new(n: usize, max_len: usize, policy: OrderPolicy) -> Result<Self> {
        if n == 0 || max_len == 0 {
            return domain("split tower needs n >= 1 and max_len >= 1");
        }
        Ok(SplitTower { residual: (0..n).map(|i| HallWord::leaf(i, n)).collect(), max_len, policy })
    }

    /// The current list `L_r` after `r` heads have been produced.
    pub fn residual(&self) -> &[HallWord] {
        &self.residual
    }
}

impl Iterator for SplitTower {
    type Item = HallWord;

    fn next(&mut self) -> Option<HallWord> {
        if self.residual.is_empty() {
            return None;
        }
        let (head, next) = split_step(&self.residual, self.max_len, self.policy).ok()?;
        self.residual = next;
        Some(head)
    }
}

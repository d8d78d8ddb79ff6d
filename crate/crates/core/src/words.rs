//! t-constrained words over the alphabet `[d] = {1, ..., d}`.
//!
//! A word is t-constrained when equal symbols sit at least `t` positions
//! apart. The words of a fixed `(d, t, n)` are ordered lexicographically and
//! indexed densely; that index is the vertex id used everywhere else.
//!
//! Ranking is mixed radix: at position `i` the admissible symbols are those
//! absent from the previous `t - 1` positions, and there are always exactly
//! `d - min(i, t - 1)` of them no matter which prefix came before. Because
//! the admissible symbols are taken in increasing order, the mixed-radix
//! order coincides with lexicographic order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A word with 1-based symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Equal symbols are at least `t` positions apart.
    pub fn is_t_constrained(&self, t: usize) -> bool {
        is_t_constrained(&self.0, t)
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        s.split(',')
            .map(|p| {
                let v: u8 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad symbol {p:?} in {s:?}")))?;
                if v == 0 {
                    return Err(Error::Parse(format!("symbols are 1-based, got 0 in {s:?}")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_t_constrained(symbols: &[u8], t: usize) -> bool {
    if t <= 1 {
        return true;
    }
    symbols.iter().enumerate().all(|(j, s)| {
        let lo = j.saturating_sub(t - 1);
        !symbols[lo..j].contains(s)
    })
}

/// Exact `d!/(d-t)! * (d-t+1)^(n-t)`.
pub fn count_words(d: usize, t: usize, n: usize) -> Result<BigUint> {
    check_counting_params(d, t, n)?;
    let mut total = BigUint::one();
    for k in (d - t + 1)..=d {
        total *= BigUint::from(k);
    }
    total *= BigUint::from(d - t + 1).pow((n - t) as u32);
    Ok(total)
}

fn check_counting_params(d: usize, t: usize, n: usize) -> Result<()> {
    let bad = |reason: &str| {
        Err(Error::InvalidParams {
            d,
            t,
            n,
            reason: reason.to_string(),
        })
    };
    if d < 1 || n < 1 {
        return bad("need d >= 1 and n >= 1");
    }
    if d > u8::MAX as usize {
        return bad("alphabet larger than 255 symbols");
    }
    if t < 1 || t > d.min(n) {
        return bad("need 1 <= t <= min(d, n)");
    }
    Ok(())
}

/// The set `V(d, t, n)` of all t-constrained words of length `n` over `[d]`,
/// with dense lexicographic indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordSpace {
    d: usize,
    t: usize,
    n: usize,
    count: u64,
}

impl WordSpace {
    /// Fails if the parameters are out of domain or the word count does not fit in 64 bits.
    pub fn new(d: usize, t: usize, n: usize) -> Result<Self> {
        let count = count_words(d, t, n)?;
        let count = count.to_u64().ok_or_else(|| Error::BudgetExceeded {
            count: count.to_string(),
            limit: u64::MAX,
        })?;
        Ok(WordSpace { d, t, n, count })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    fn radix(&self, pos: usize) -> u64 {
        (self.d - pos.min(self.t - 1)) as u64
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.len() == self.n
            && w.0.iter().all(|&s| s >= 1 && s as usize <= self.d)
            && w.is_t_constrained(self.t)
    }

    fn check(&self, w: &Word) -> Result<()> {
        if w.len() != self.n || !w.0.iter().all(|&s| s >= 1 && s as usize <= self.d) {
            return Err(Error::WordShape {
                word: w.clone(),
                d: self.d,
                n: self.n,
            });
        }
        if !w.is_t_constrained(self.t) {
            return Err(Error::NotConstrained(w.clone(), self.t));
        }
        Ok(())
    }

    /// Position of `w` in lexicographic order.
    pub fn rank(&self, w: &Word) -> Result<u64> {
        self.check(w)?;
        Ok(self.rank_unchecked(&w.0))
    }

    /// Rank of a word already known to be in the space.
    pub(crate) fn rank_unchecked(&self, symbols: &[u8]) -> u64 {
        let mut r = 0u64;
        for (i, &s) in symbols.iter().enumerate() {
            let lo = i.saturating_sub(self.t - 1);
            let smaller_used = symbols[lo..i].iter().filter(|&&p| p < s).count() as u64;
            let digit = (s as u64 - 1) - smaller_used;
            r = r * self.radix(i) + digit;
        }
        r
    }

    pub fn unrank(&self, index: u64) -> Result<Word> {
        if index >= self.count {
            return Err(Error::IndexOutOfRange {
                index,
                count: self.count,
            });
        }
        let mut out = vec![0u8; self.n];
        self.unrank_into(index, &mut out);
        Ok(Word(out))
    }

    pub(crate) fn unrank_into(&self, mut index: u64, out: &mut [u8]) {
        let mut digits = vec![0u64; self.n];
        for i in (0..self.n).rev() {
            let r = self.radix(i);
            digits[i] = index % r;
            index /= r;
        }
        for i in 0..self.n {
            let lo = i.saturating_sub(self.t - 1);
            let mut k = digits[i];
            let mut s = 1u8;
            loop {
                if !out[lo..i].contains(&s) {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                }
                s += 1;
            }
            out[i] = s;
        }
    }

    /// Words in increasing lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.count).map(move |i| {
            let mut out = vec![0u8; self.n];
            self.unrank_into(i, &mut out);
            Word(out)
        })
    }
}

/// All t-constrained words in lexicographic order, refusing more than `limit` of them.
pub fn enumerate_words(d: usize, t: usize, n: usize, limit: u64) -> Result<Vec<Word>> {
    let count = count_words(d, t, n)?;
    match count.to_u64() {
        Some(c) if c <= limit => Ok(WordSpace::new(d, t, n)?.iter().collect()),
        _ => Err(Error::BudgetExceeded {
            count: count.to_string(),
            limit,
        }),
    }
}

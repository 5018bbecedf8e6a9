//! Finite words and eventually periodic points of the one-sided full shift.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

/// A finite word over `{0, …, k-1}`. Ordering is lexicographic with a
/// prefix sorting before its extensions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// `self = prefix · rest`; returns `rest`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn child(&self, c: u8) -> Word {
        let mut v = self.0.clone();
        v.push(c);
        Word(v)
    }

    pub fn parent(&self) -> Option<(Word, u8)> {
        let mut v = self.0.clone();
        let c = v.pop()?;
        Some((Word(v), c))
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }

    /// All words of length exactly `n` over `k` letters, in lexicographic order.
    pub fn all_of_length(k: u8, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| (0..k).map(move |c| w.child(c)))
                .collect();
        }
        out
    }

    /// All words of length at most `n`, shortest first.
    pub fn all_up_to(k: u8, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|l| Word::all_of_length(k, l)).collect()
    }
}

impl fmt::Display for Word {
    /// The empty word renders as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for &c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s == "ε" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return parse_err(0, "empty word must be written `e`");
        }
        let mut v = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch.to_digit(10) {
                Some(d) => v.push(d as u8),
                None => return parse_err(i, format!("unexpected {ch:?} in word")),
            }
        }
        Ok(Word(v))
    }
}

/// An eventually periodic point `pre · period^∞` of `{0,…,k-1}^ℕ`, stored in
/// the unique form with primitive period and shortest preperiod.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point {
    pre: Vec<u8>,
    period: Vec<u8>,
}

impl Point {
    pub fn new(pre: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Precondition("period must be non-empty".into()));
        }
        let mut p = Point { pre, period };
        p.normalize();
        Ok(p)
    }

    pub fn constant(c: u8) -> Self {
        Point {
            pre: Vec::new(),
            period: vec![c],
        }
    }

    fn normalize(&mut self) {
        // primitive period
        let n = self.period.len();
        for d in 1..=n {
            if n % d == 0 && (0..n).all(|i| self.period[i] == self.period[i % d]) {
                self.period.truncate(d);
                break;
            }
        }
        // absorb the preperiod tail into the period
        while let Some(&last) = self.pre.last() {
            if last == *self.period.last().unwrap() {
                self.pre.pop();
                self.period.rotate_right(1);
            } else {
                break;
            }
        }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn letter(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.letter(i)).collect())
    }

    pub fn starts_with(&self, w: &Word) -> bool {
        w.0.iter().enumerate().all(|(i, &c)| self.letter(i) == c)
    }

    pub fn max_letter(&self) -> u8 {
        self.pre.iter().chain(&self.period).copied().max().unwrap_or(0)
    }

    /// The shift `σⁿ`.
    pub fn shift(&self, n: usize) -> Point {
        if n <= self.pre.len() {
            return Point {
                pre: self.pre[n..].to_vec(),
                period: self.period.clone(),
            };
        }
        let r = (n - self.pre.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(r);
        Point {
            pre: Vec::new(),
            period,
        }
    }

    pub fn prepend(&self, w: &Word) -> Point {
        let mut pre = w.0.clone();
        pre.extend_from_slice(&self.pre);
        let mut p = Point {
            pre,
            period: self.period.clone(),
        };
        p.normalize();
        p
    }

    /// Whether `σˡ(self) = σᵏ(other)` for some `l, k ≥ 0` with `l - k = lag`.
    pub fn tail_equivalent(&self, other: &Point, lag: i64) -> bool {
        let bound = self.pre.len()
            + other.pre.len()
            + lag.unsigned_abs() as usize
            + self.period.len() * other.period.len()
            + 1;
        (0..=bound).any(|k| {
            let l = k as i64 + lag;
            l >= 0 && self.shift(l as usize) == other.shift(k)
        })
    }
}

impl fmt::Display for Point {
    /// `0(1)` is `0111…`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.pre {
            write!(f, "{c}")?;
        }
        write!(f, "(")?;
        for c in &self.period {
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or(Error::Parse { pos: 0, msg: "expected `pre(period)`".into() })?;
        if !s.ends_with(')') {
            return parse_err(s.len(), "expected closing `)`");
        }
        let digits = |t: &str, off: usize| -> Result<Vec<u8>> {
            t.chars()
                .enumerate()
                .map(|(i, ch)| {
                    ch.to_digit(10).map(|d| d as u8).ok_or(Error::Parse {
                        pos: off + i,
                        msg: format!("unexpected {ch:?} in point"),
                    })
                })
                .collect()
        };
        let pre = digits(&s[..open], 0)?;
        let period = digits(&s[open + 1..s.len() - 1], open + 1)?;
        Point::new(pre, period)
    }
}

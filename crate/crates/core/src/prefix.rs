//! Prefix tries over words: the canonical form shared by cylinder sets,
//! shift bisections and shift algebra elements.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::scalar::Scalar;
use crate::word::{Point, Word};

/// Values attached to cylinders. Overlapping entries combine with `add`.
pub trait Weight: Clone + PartialEq {
    fn nothing() -> Self;
    fn is_nothing(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
}

impl Weight for bool {
    fn nothing() -> Self {
        false
    }
    fn is_nothing(&self) -> bool {
        !*self
    }
    fn add(&self, other: &Self) -> Self {
        *self || *other
    }
}

impl Weight for Scalar {
    fn nothing() -> Self {
        Scalar::zero()
    }
    fn is_nothing(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
}

enum Node<V> {
    Leaf(V),
    Split(Vec<Node<V>>),
}

fn build<V: Weight>(k: u8, entries: &[(Word, V)], depth: usize, acc: V) -> Node<V> {
    let mut acc = acc;
    let mut i = 0;
    while i < entries.len() && entries[i].0.len() == depth {
        acc = acc.add(&entries[i].1);
        i += 1;
    }
    let rest = &entries[i..];
    if rest.is_empty() {
        return Node::Leaf(acc);
    }
    let mut kids = Vec::with_capacity(k as usize);
    let mut start = 0;
    for c in 0..k {
        let mut end = start;
        while end < rest.len() && rest[end].0 .0[depth] == c {
            end += 1;
        }
        kids.push(build(k, &rest[start..end], depth + 1, acc.clone()));
        start = end;
    }
    assert_eq!(start, rest.len(), "letter out of range for alphabet of size {k}");
    let merged = match &kids[0] {
        Node::Leaf(v) => kids
            .iter()
            .all(|n| matches!(n, Node::Leaf(u) if u == v))
            .then(|| v.clone()),
        Node::Split(_) => None,
    };
    match merged {
        Some(v) => Node::Leaf(v),
        None => Node::Split(kids),
    }
}

fn flatten<V: Weight>(node: Node<V>, w: &mut Vec<u8>, out: &mut Vec<(Word, V)>) {
    match node {
        Node::Leaf(v) => {
            if !v.is_nothing() {
                out.push((Word(w.clone()), v));
            }
        }
        Node::Split(kids) => {
            for (c, kid) in kids.into_iter().enumerate() {
                w.push(c as u8);
                flatten(kid, w, out);
                w.pop();
            }
        }
    }
}

/// Canonical form of a sum of weighted cylinders: pairwise disjoint, every
/// complete sibling family with equal weights merged into its parent, empty
/// weights dropped, sorted lexicographically.
pub fn normalize<V: Weight>(k: u8, mut entries: Vec<(Word, V)>) -> Vec<(Word, V)> {
    entries.retain(|(_, v)| !v.is_nothing());
    if entries.is_empty() {
        return entries;
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let tree = build(k, &entries, 0, V::nothing());
    let mut out = Vec::new();
    flatten(tree, &mut Vec::new(), &mut out);
    out
}

/// A clopen subset of `{0,…,k-1}^ℕ` given by a canonical antichain of prefixes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CylinderSet {
    k: u8,
    words: Vec<Word>,
}

impl CylinderSet {
    pub fn new(k: u8, words: impl IntoIterator<Item = Word>) -> Self {
        let entries = words.into_iter().map(|w| (w, true)).collect();
        CylinderSet {
            k,
            words: normalize(k, entries).into_iter().map(|(w, _)| w).collect(),
        }
    }

    pub fn empty(k: u8) -> Self {
        CylinderSet { k, words: Vec::new() }
    }

    pub fn whole(k: u8) -> Self {
        CylinderSet {
            k,
            words: vec![Word::empty()],
        }
    }

    pub fn cylinder(k: u8, w: Word) -> Self {
        CylinderSet::new(k, [w])
    }

    pub fn alphabet(&self) -> u8 {
        self.k
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.words.len() == 1 && self.words[0].is_empty()
    }

    pub fn contains_point(&self, x: &Point) -> bool {
        self.words.iter().any(|w| x.starts_with(w))
    }

    /// Whether the cylinder `w̄` lies inside the set.
    pub fn contains_cylinder(&self, w: &Word) -> bool {
        self.words.iter().any(|p| p.is_prefix_of(w))
    }

    pub fn union(&self, other: &Self) -> Self {
        CylinderSet::new(self.k, self.words.iter().chain(&other.words).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.words {
            for b in &other.words {
                if a.is_prefix_of(b) {
                    out.push(b.clone());
                } else if b.is_prefix_of(a) {
                    out.push(a.clone());
                }
            }
        }
        CylinderSet::new(self.k, out)
    }

    pub fn complement(&self) -> Self {
        fn go(k: u8, words: &[Word], w: &mut Vec<u8>, out: &mut Vec<Word>) {
            let depth = w.len();
            if words.is_empty() {
                out.push(Word(w.clone()));
                return;
            }
            if words[0].len() == depth {
                return;
            }
            let mut start = 0;
            for c in 0..k {
                let mut end = start;
                while end < words.len() && words[end].0[depth] == c {
                    end += 1;
                }
                w.push(c);
                go(k, &words[start..end], w, out);
                w.pop();
                start = end;
            }
        }
        let mut out = Vec::new();
        go(self.k, &self.words, &mut Vec::new(), &mut out);
        CylinderSet {
            k: self.k,
            words: out,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().all(|w| other.contains_cylinder(w))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// The set as a union of cylinders of length exactly `depth`, if every
    /// stored prefix is at most that long.
    pub fn refine_to(&self, depth: usize) -> Option<Vec<Word>> {
        let mut out = Vec::new();
        for w in &self.words {
            if w.len() > depth {
                return None;
            }
            for tail in Word::all_of_length(self.k, depth - w.len()) {
                out.push(w.concat(&tail));
            }
        }
        Some(out)
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }
}

impl fmt::Display for CylinderSet {
    /// `[00]+[1]`; the empty set is `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "[{w}]")?;
        }
        Ok(())
    }
}

impl FromStr for CylinderSet {
    type Err = Error;

    /// Binary alphabet.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "{}" {
            return Ok(CylinderSet::empty(2));
        }
        let mut words = Vec::new();
        let mut pos = 0;
        for part in t.split('+') {
            let p = part.trim();
            let inner = p
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or(Error::Parse {
                    pos,
                    msg: format!("expected `[word]`, found {p:?}"),
                })?;
            let w: Word = inner.parse().map_err(|e| match e {
                Error::Parse { pos: p2, msg } => Error::Parse { pos: pos + 1 + p2, msg },
                other => other,
            })?;
            if w.max_letter().is_some_and(|c| c >= 2) {
                return parse_err(pos, "letter out of range for the binary alphabet");
            }
            words.push(w);
            pos += part.len() + 1;
        }
        Ok(CylinderSet::new(2, words))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn cs(v: &[&str]) -> CylinderSet {
        CylinderSet::new(2, v.iter().map(|s| w(s)))
    }

    #[test]
    fn sibling_merge() {
        assert!(cs(&["00", "01", "1"]).is_whole());
        assert_eq!(cs(&["0", "00"]).words(), &[w("0")]);
        assert_eq!(cs(&["10", "11", "01"]).words(), &[w("01"), w("1")]);
        assert!(CylinderSet::new(3, [w("0"), w("1")]).words().len() == 2);
        assert!(CylinderSet::new(3, [w("0"), w("1"), w("2")]).is_whole());
    }

    #[test]
    fn boolean_ops() {
        let a = cs(&["0"]);
        let b = cs(&["01", "1"]);
        assert_eq!(a.intersection(&b), cs(&["01"]));
        assert_eq!(a.complement(), cs(&["1"]));
        assert_eq!(b.complement(), cs(&["00"]));
        assert!(a.union(&b).is_whole());
        assert_eq!(b.difference(&a), cs(&["1"]));
        assert!(CylinderSet::empty(2).complement().is_whole());
        assert!(CylinderSet::whole(2).complement().is_empty());
    }

    #[test]
    fn text_roundtrip() {
        let c = cs(&["0110", "1"]);
        assert_eq!(c.to_string(), "[0110]+[1]");
        assert_eq!(c.to_string().parse::<CylinderSet>().unwrap(), c);
        assert_eq!("{}".parse::<CylinderSet>().unwrap(), CylinderSet::empty(2));
        assert!("[012]".parse::<CylinderSet>().is_err());
    }

    #[test]
    fn weighted_normalize_adds_overlaps() {
        let one = Scalar::one();
        let out = normalize(
            2,
            vec![(w("e"), one.clone()), (w("0"), -one.clone()), (w("1"), Scalar::zero())],
        );
        assert_eq!(out, vec![(w("1"), one.clone())]);
        let out = normalize(2, vec![(w("0"), one.clone()), (w("1"), one.clone())]);
        assert_eq!(out, vec![(w("e"), one)]);
    }

    fn arb_set() -> impl Strategy<Value = CylinderSet> {
        prop::collection::vec(prop::collection::vec(0u8..2, 0..5), 0..6)
            .prop_map(|ws| CylinderSet::new(2, ws.into_iter().map(Word)))
    }

    fn members(c: &CylinderSet) -> Vec<bool> {
        Word::all_of_length(2, 8)
            .iter()
            .map(|x| c.contains_cylinder(x))
            .collect()
    }

    proptest! {
        #[test]
        fn canonical_form_is_unique(a in arb_set(), b in arb_set()) {
            prop_assert_eq!(a == b, members(&a) == members(&b));
        }

        #[test]
        fn ops_match_membership(a in arb_set(), b in arb_set()) {
            let (ma, mb) = (members(&a), members(&b));
            let u: Vec<bool> = ma.iter().zip(&mb).map(|(x, y)| *x || *y).collect();
            let i: Vec<bool> = ma.iter().zip(&mb).map(|(x, y)| *x && *y).collect();
            let c: Vec<bool> = ma.iter().map(|x| !x).collect();
            prop_assert_eq!(members(&a.union(&b)), u);
            prop_assert_eq!(members(&a.intersection(&b)), i);
            prop_assert_eq!(members(&a.complement()), c);
            prop_assert_eq!(a.is_subset(&b), ma.iter().zip(&mb).all(|(x, y)| !x || *y));
        }
    }
}

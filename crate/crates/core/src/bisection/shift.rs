//! Bisections of the shift groupoid as unions of the basic sets
//! `Z(β, α) = {(βz, |β| - |α|, αz)}`.
//!
//! Two basic sets are either disjoint or nested, and nested ones share the
//! same *root*: the pair left after stripping the longest common suffix of
//! `β` and `α`. `Z(β'p, α'p)` is stored on root `(β', α')` at path `p`,
//! so a bisection is a family of path sets indexed by roots, and the prefix
//! trie normal form on paths gives a unique piece list.

use std::collections::BTreeMap;
use std::fmt;

use super::AmpleGroupoid;
use crate::error::{Error, Result};
use crate::models::ShiftGroupoid;
use crate::prefix::{normalize, CylinderSet, Weight};
use crate::text::Cursor;
use crate::word::{Point, Word};

/// A compact open bisection: pieces `(β, α)` for `Z(β, α)`, canonical and
/// sorted by `(α, β)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ShiftBisection {
    k: u8,
    pieces: Vec<(Word, Word)>,
}

/// An arrow `(y, n, x)` with `σᵃ(y) = σᵇ(x)` for some `a - b = n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftArrow {
    pub range: Point,
    pub lag: i64,
    pub source: Point,
}

impl ShiftArrow {
    pub fn new(range: Point, lag: i64, source: Point) -> Result<Self> {
        if !range.tail_equivalent(&source, lag) {
            return Err(Error::Precondition(format!("{range} and {source} are not tail equivalent with lag {lag}")));
        }
        Ok(ShiftArrow { range, lag, source })
    }

    pub fn unit(x: Point) -> Self {
        ShiftArrow {
            range: x.clone(),
            lag: 0,
            source: x,
        }
    }
}

impl fmt::Display for ShiftArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.range, self.lag, self.source)
    }
}

/// Splits `(β, α)` into its root and path.
pub(crate) fn root_of(beta: &Word, alpha: &Word) -> ((Word, Word), Word) {
    let common = beta
        .0
        .iter()
        .rev()
        .zip(alpha.0.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    let path = Word(alpha.0[alpha.len() - common..].to_vec());
    let root = (
        Word(beta.0[..beta.len() - common].to_vec()),
        Word(alpha.0[..alpha.len() - common].to_vec()),
    );
    (root, path)
}

/// Groups weighted pieces by root and brings each root to trie normal
/// form. Output is sorted by `(α, β)`.
pub(crate) fn normalize_pieces<V: Weight>(k: u8, entries: Vec<((Word, Word), V)>) -> Vec<((Word, Word), V)> {
    let mut by_root: BTreeMap<(Word, Word), Vec<(Word, V)>> = BTreeMap::new();
    for ((beta, alpha), v) in entries {
        let (root, path) = root_of(&beta, &alpha);
        by_root.entry(root).or_default().push((path, v));
    }
    let mut out = Vec::new();
    for ((b, a), paths) in by_root {
        for (p, v) in normalize(k, paths) {
            out.push(((b.concat(&p), a.concat(&p)), v));
        }
    }
    out.sort_by(|x, y| (&x.0 .1, &x.0 .0).cmp(&(&y.0 .1, &y.0 .0)));
    out
}

/// The product `Z(β, α)·Z(δ, γ)`.
pub(crate) fn compose_pieces(p: (&Word, &Word), q: (&Word, &Word)) -> Option<(Word, Word)> {
    let ((beta, alpha), (delta, gamma)) = (p, q);
    if let Some(eps) = delta.strip_prefix(alpha) {
        Some((beta.concat(&eps), gamma.clone()))
    } else {
        alpha.strip_prefix(delta).map(|eps| (beta.clone(), gamma.concat(&eps)))
    }
}

impl ShiftBisection {
    pub fn new(k: u8, pieces: impl IntoIterator<Item = (Word, Word)>) -> Self {
        let entries = pieces.into_iter().map(|p| (p, true)).collect();
        let pieces = normalize_pieces(k, entries).into_iter().map(|(p, _)| p).collect();
        ShiftBisection { k, pieces }
    }

    pub fn empty(k: u8) -> Self {
        ShiftBisection { k, pieces: Vec::new() }
    }

    /// The single basic set `Z(β, α)`.
    pub fn basic(k: u8, beta: Word, alpha: Word) -> Self {
        Self::new(k, [(beta, alpha)])
    }

    pub fn alphabet(&self) -> u8 {
        self.k
    }

    /// Pieces `(β, α)` in canonical order.
    pub fn pieces(&self) -> &[(Word, Word)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    fn roots(&self) -> BTreeMap<(Word, Word), CylinderSet> {
        let mut by_root: BTreeMap<(Word, Word), Vec<Word>> = BTreeMap::new();
        for (b, a) in &self.pieces {
            let (root, path) = root_of(b, a);
            by_root.entry(root).or_default().push(path);
        }
        by_root
            .into_iter()
            .map(|(r, ps)| (r, CylinderSet::new(self.k, ps)))
            .collect()
    }

    fn from_roots(k: u8, roots: BTreeMap<(Word, Word), CylinderSet>) -> Self {
        let pieces = roots
            .into_iter()
            .flat_map(|((b, a), paths)| {
                paths
                    .words()
                    .iter()
                    .map(|p| (b.concat(p), a.concat(p)))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        ShiftBisection::new(k, pieces)
    }

    fn check_k(&self, other: &Self) {
        assert_eq!(self.k, other.k, "model mismatch: alphabet sizes differ");
    }

    pub fn compose(&self, other: &Self) -> Self {
        self.check_k(other);
        let mut out = Vec::new();
        for (b, a) in &self.pieces {
            for (d, c) in &other.pieces {
                out.extend(compose_pieces((b, a), (d, c)));
            }
        }
        ShiftBisection::new(self.k, out)
    }

    pub fn inverse(&self) -> Self {
        ShiftBisection::new(self.k, self.pieces.iter().map(|(b, a)| (a.clone(), b.clone())))
    }

    pub fn source(&self) -> CylinderSet {
        CylinderSet::new(self.k, self.pieces.iter().map(|(_, a)| a.clone()))
    }

    pub fn range(&self) -> CylinderSet {
        CylinderSet::new(self.k, self.pieces.iter().map(|(b, _)| b.clone()))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_k(other);
        let (mine, theirs) = (self.roots(), other.roots());
        let roots = mine
            .into_iter()
            .filter_map(|(r, p)| theirs.get(&r).map(|q| (r, p.intersection(q))))
            .collect();
        Self::from_roots(self.k, roots)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_k(other);
        let theirs = other.roots();
        let roots = self
            .roots()
            .into_iter()
            .map(|(r, p)| {
                let d = match theirs.get(&r) {
                    Some(q) => p.difference(q),
                    None => p,
                };
                (r, d)
            })
            .collect();
        Self::from_roots(self.k, roots)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.check_k(other);
        ShiftBisection::new(self.k, self.pieces.iter().chain(&other.pieces).cloned())
    }

    pub fn contains_arrow(&self, g: &ShiftArrow) -> bool {
        self.pieces.iter().any(|(b, a)| {
            g.lag == b.len() as i64 - a.len() as i64
                && g.source.starts_with(a)
                && g.range.starts_with(b)
                && g.source.shift(a.len()) == g.range.shift(b.len())
        })
    }

    /// `θ_U(x)` for a point of the source.
    pub fn theta_point(&self, x: &Point) -> Option<Point> {
        self.pieces
            .iter()
            .find(|(_, a)| x.starts_with(a))
            .map(|(b, a)| x.shift(a.len()).prepend(b))
    }

    /// `θ_U(w̄)` as a cylinder when `w̄` lies inside one piece's source.
    pub fn theta_word(&self, w: &Word) -> Option<Word> {
        self.pieces
            .iter()
            .find(|(_, a)| a.is_prefix_of(w))
            .map(|(b, a)| b.concat(&w.strip_prefix(a).expect("prefix")))
    }

    /// Sources and ranges of distinct pieces are disjoint.
    pub fn is_bisection(&self) -> bool {
        let disjoint = |words: Vec<&Word>| {
            words
                .iter()
                .enumerate()
                .all(|(i, u)| words[i + 1..].iter().all(|v| !u.comparable(v)))
        };
        disjoint(self.pieces.iter().map(|(_, a)| a).collect())
            && disjoint(self.pieces.iter().map(|(b, _)| b).collect())
    }

    pub fn parse(k: u8, s: &str) -> Result<Self> {
        let mut c = Cursor::new(s);
        let mut pieces = Vec::new();
        if c.eat("0") {
            c.finish()?;
            return Ok(Self::empty(k));
        }
        loop {
            c.expect("Z(")?;
            let b = c.word(k)?;
            c.expect("<-")?;
            let a = c.word(k)?;
            c.expect(")")?;
            pieces.push((b, a));
            if c.at_end() {
                break;
            }
            c.expect("+")?;
        }
        let u = ShiftBisection::new(k, pieces);
        if !u.is_bisection() {
            return Err(Error::NotABisection(s.trim().to_string()));
        }
        Ok(u)
    }
}

impl fmt::Display for ShiftBisection {
    /// `Z(0<-00)+Z(10<-01)+Z(11<-1)`; the empty bisection is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, a)) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "Z({b}<-{a})")?;
        }
        Ok(())
    }
}

impl AmpleGroupoid for ShiftGroupoid {
    type Set = CylinderSet;
    type Bisection = ShiftBisection;
    type Arrow = ShiftArrow;

    fn unit_space(&self) -> CylinderSet {
        self.units.clone()
    }

    fn empty_set(&self) -> CylinderSet {
        CylinderSet::empty(self.k)
    }

    fn empty_bisection(&self) -> ShiftBisection {
        ShiftBisection::empty(self.k)
    }

    fn units_over(&self, a: &CylinderSet) -> ShiftBisection {
        ShiftBisection::new(self.k, a.words().iter().map(|w| (w.clone(), w.clone())))
    }

    fn compose(&self, u: &ShiftBisection, v: &ShiftBisection) -> ShiftBisection {
        u.compose(v)
    }

    fn invert(&self, u: &ShiftBisection) -> ShiftBisection {
        u.inverse()
    }

    fn source(&self, u: &ShiftBisection) -> CylinderSet {
        u.source()
    }

    fn range(&self, u: &ShiftBisection) -> CylinderSet {
        u.range()
    }

    fn intersect(&self, u: &ShiftBisection, v: &ShiftBisection) -> ShiftBisection {
        u.intersection(v)
    }

    fn subtract(&self, u: &ShiftBisection, v: &ShiftBisection) -> ShiftBisection {
        u.difference(v)
    }

    fn join_unchecked(&self, u: &ShiftBisection, v: &ShiftBisection) -> ShiftBisection {
        u.join(v)
    }

    fn contains_arrow(&self, u: &ShiftBisection, g: &ShiftArrow) -> bool {
        u.contains_arrow(g)
    }

    fn validate(&self, u: &ShiftBisection) -> Result<()> {
        let letter_ok = u
            .pieces
            .iter()
            .all(|(b, a)| b.max_letter().max(a.max_letter()).map_or(true, |c| c < self.k));
        if u.k != self.k || !letter_ok {
            return Err(Error::ModelMismatch(format!("{u} is not over {} letters", self.k)));
        }
        if !u.is_bisection() {
            return Err(Error::NotABisection(u.to_string()));
        }
        if !u.source().is_subset(&self.units) || !u.range().is_subset(&self.units) {
            return Err(Error::ModelMismatch(format!("{u} leaves the unit space")));
        }
        Ok(())
    }

    fn restriction(&self, w: &CylinderSet) -> Result<Self> {
        self.restricted(w)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(s: &str) -> ShiftBisection {
        ShiftBisection::parse(2, s).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(z("Z(1<-01)").compose(&z("Z(0<-1)")), z("Z(1<-11)"));
        let g = ShiftGroupoid::binary();
        let any = z("Z(10<-011)");
        assert_eq!(g.compose(&g.unit_bisection(), &any), any);
        assert!(z("Z(01<-0)").compose(&z("Z(1<-11)")).is_empty());
    }

    #[test]
    fn sibling_merge() {
        assert_eq!(z("Z(0<-0)+Z(1<-1)"), z("Z(e<-e)"));
        assert_eq!(z("Z(10<-00)+Z(11<-01)").to_string(), "Z(1<-0)");
        // Different roots never merge.
        assert_eq!(z("Z(1<-0)+Z(0<-1)").pieces().len(), 2);
        assert_eq!(z("Z(1<-0)").inverse(), z("Z(0<-1)"));
    }

    #[test]
    fn sources_and_ranges() {
        let u = z("Z(1<-01)");
        assert_eq!(u.source(), CylinderSet::cylinder(2, w("01")));
        assert_eq!(u.range(), CylinderSet::cylinder(2, w("1")));
        assert!(z("Z(0<-00)+Z(10<-01)+Z(11<-1)").source().is_whole());
        assert!(ShiftBisection::empty(2).source().is_empty());
    }

    #[test]
    fn theta_examples() {
        let g = ShiftGroupoid::binary();
        let swap = z("Z(1<-0)+Z(0<-1)");
        let a = CylinderSet::cylinder(2, w("00"));
        assert_eq!(g.theta(&swap, &a).unwrap(), CylinderSet::cylinder(2, w("10")));
        assert_eq!(g.theta(&g.unit_bisection(), &a).unwrap(), a);
        let x: Point = "0(1)".parse().unwrap();
        assert_eq!(z("Z(1<-0)").theta_point(&x).unwrap(), "(1)".parse().unwrap());
    }

    #[test]
    fn arrow_membership() {
        // (10^∞, 0, 0^∞) = (1·z, 0, 0·z) with z = 0^∞ lies in Z(1, 0).
        let u = z("Z(1<-0)");
        let g = ShiftArrow::new("1(0)".parse().unwrap(), 0, "(0)".parse().unwrap()).unwrap();
        assert!(u.contains_arrow(&g));
        let lagged = ShiftArrow::new("1(0)".parse().unwrap(), 1, "(0)".parse().unwrap()).unwrap();
        assert!(!u.contains_arrow(&lagged));
        let unit = ShiftArrow::unit("01(10)".parse().unwrap());
        assert!(ShiftGroupoid::binary().unit_bisection().contains_arrow(&unit));
        assert!(ShiftArrow::new("(0)".parse().unwrap(), 0, "(1)".parse().unwrap()).is_err());
    }

    #[test]
    fn parse_errors_and_bisection_check() {
        assert!(matches!(ShiftBisection::parse(2, "Z(0<-"), Err(Error::Parse { .. })));
        assert!(matches!(ShiftBisection::parse(2, "Z(2<-0)"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(ShiftBisection::parse(2, "Z(0<-0)+Z(1<-00)"), Err(Error::NotABisection(_))));
        assert_eq!(ShiftBisection::parse(2, "0").unwrap(), ShiftBisection::empty(2));
    }

    #[test]
    fn restriction_to_a_cylinder_composes_inside() {
        let zero = CylinderSet::cylinder(2, w("0"));
        let g = ShiftGroupoid::binary().restricted(&zero).unwrap();
        let u = z("Z(01<-00)+Z(00<-01)");
        let v = z("Z(000<-00)+Z(001<-01)");
        assert!(g.validate(&u).is_ok() && g.validate(&v).is_ok());
        let uv = g.compose(&u, &v);
        assert!(g.validate(&uv).is_ok());
        assert!(g.source(&uv).is_subset(&zero) && g.range(&uv).is_subset(&zero));
        assert!(g.validate(&z("Z(1<-0)")).is_err());
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..2, 0..=max).prop_map(Word)
    }

    /// Random bisections: a prefix code for the sources, images drawn from
    /// another prefix code.
    pub(crate) fn arb_bisection(depth: usize) -> impl Strategy<Value = ShiftBisection> {
        let code = move || {
            prop::collection::vec(arb_word(depth), 1..5).prop_map(|ws| {
                let mut code: Vec<Word> = Vec::new();
                for w in ws {
                    if code.iter().all(|c| !c.comparable(&w)) {
                        code.push(w);
                    }
                }
                code
            })
        };
        (code(), code(), any::<u64>()).prop_map(|(src, dst, seed)| {
            let n = src.len().min(dst.len());
            let mut dst = dst;
            let r = (seed as usize) % dst.len();
            dst.rotate_left(r);
            ShiftBisection::new(2, src.into_iter().zip(dst).take(n).map(|(a, b)| (b, a)))
        })
    }

    fn cylinders(depth: usize) -> Vec<CylinderSet> {
        Word::all_up_to(2, depth).into_iter().map(|w| CylinderSet::cylinder(2, w)).collect()
    }

    proptest! {
        #[test]
        fn associativity(u in arb_bisection(4), v in arb_bisection(4), t in arb_bisection(4)) {
            prop_assert_eq!(u.compose(&v).compose(&t), u.compose(&v.compose(&t)));
        }

        #[test]
        fn inverse_semigroup_law(u in arb_bisection(4)) {
            prop_assert!(u.is_bisection());
            prop_assert_eq!(u.compose(&u.inverse()).compose(&u), u.clone());
            prop_assert_eq!(u.inverse().inverse(), u.clone());
            let g = ShiftGroupoid::binary();
            prop_assert_eq!(u.compose(&u.inverse()), g.units_over(&u.range()));
            prop_assert_eq!(u.source(), u.inverse().range());
        }

        #[test]
        fn theta_is_functorial(u in arb_bisection(3), v in arb_bisection(3)) {
            let g = ShiftGroupoid::binary();
            let uv = u.compose(&v);
            for a in cylinders(6) {
                let a = a.intersection(&uv.source());
                let lhs = g.theta(&uv, &a).unwrap();
                let rhs = g.theta(&u, &g.theta(&v, &a).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn set_operations_agree_on_sample_arrows(u in arb_bisection(3), v in arb_bisection(3)) {
            let sample: Vec<ShiftArrow> = sample_arrows();
            let i = u.intersection(&v);
            let d = u.difference(&v);
            for g in &sample {
                prop_assert_eq!(i.contains_arrow(g), u.contains_arrow(g) && v.contains_arrow(g));
                prop_assert_eq!(d.contains_arrow(g), u.contains_arrow(g) && !v.contains_arrow(g));
            }
        }

        #[test]
        fn equality_is_arrow_equality(u in arb_bisection(3), v in arb_bisection(3)) {
            let sample = sample_arrows();
            let same = sample.iter().all(|g| u.contains_arrow(g) == v.contains_arrow(g));
            prop_assert_eq!(same, u == v);
        }
    }

    /// Arrows `(βz, |β|-|α|, αz)` for short `α, β` and a few tails `z`,
    /// fine enough to separate bisections of depth ≤ 3.
    fn sample_arrows() -> Vec<ShiftArrow> {
        let tails: Vec<Point> = ["(0)", "(1)", "(01)", "0(1)", "1(0)", "(001)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let words = Word::all_up_to(2, 4);
        let mut out = Vec::new();
        for a in &words {
            for b in &words {
                for z in &tails {
                    out.push(ShiftArrow {
                        range: z.prepend(b),
                        lag: b.len() as i64 - a.len() as i64,
                        source: z.prepend(a),
                    });
                }
            }
        }
        out
    }
}

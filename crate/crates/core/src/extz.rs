//! Clopen subsets of the compactified integers and the affine actions on them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A point of `ℤ ∪ {±∞}`. In the one-point compactification the single
/// point at infinity is `PosInf`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum ExtInt {
    NegInf,
    Int(i64),
    PosInf,
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Int(n) => write!(f, "{n}"),
            ExtInt::PosInf => write!(f, "+inf"),
        }
    }
}

/// A clopen subset of `ℤ ∪ {±∞}`: negative integers follow `minus`,
/// non-negative integers follow `plus`, and `exceptions` lists the integers
/// where membership differs from that default. The encoding is unique.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ExtZSet {
    pub minus: bool,
    pub plus: bool,
    pub exceptions: BTreeSet<i64>,
}

impl ExtZSet {
    pub fn empty() -> Self {
        ExtZSet {
            minus: false,
            plus: false,
            exceptions: BTreeSet::new(),
        }
    }

    pub fn whole() -> Self {
        ExtZSet {
            minus: true,
            plus: true,
            exceptions: BTreeSet::new(),
        }
    }

    pub fn singleton(n: i64) -> Self {
        ExtZSet::finite([n])
    }

    pub fn finite(ns: impl IntoIterator<Item = i64>) -> Self {
        ExtZSet::from_fn(false, false, ns.into_iter().collect::<BTreeSet<_>>(), |_| true)
    }

    /// `[lo, +∞]` for integer `lo`.
    pub fn at_least(lo: i64) -> Self {
        let bound = lo.abs() + 1;
        ExtZSet::from_fn(false, true, -bound..=bound, |n| n >= lo)
    }

    /// `[-∞, hi]` for integer `hi`.
    pub fn at_most(hi: i64) -> Self {
        let bound = hi.abs() + 1;
        ExtZSet::from_fn(true, false, -bound..=bound, |n| n <= hi)
    }

    fn default_at(minus: bool, plus: bool, n: i64) -> bool {
        if n < 0 {
            minus
        } else {
            plus
        }
    }

    /// Builds the set whose integers in `window` satisfy `f` and whose other
    /// integers follow the tail flags.
    pub fn from_fn(
        minus: bool,
        plus: bool,
        window: impl IntoIterator<Item = i64>,
        f: impl Fn(i64) -> bool,
    ) -> Self {
        let exceptions = window
            .into_iter()
            .filter(|&n| f(n) != Self::default_at(minus, plus, n))
            .collect();
        ExtZSet {
            minus,
            plus,
            exceptions,
        }
    }

    pub fn contains_int(&self, n: i64) -> bool {
        Self::default_at(self.minus, self.plus, n) != self.exceptions.contains(&n)
    }

    pub fn contains(&self, x: ExtInt) -> bool {
        match x {
            ExtInt::NegInf => self.minus,
            ExtInt::PosInf => self.plus,
            ExtInt::Int(n) => self.contains_int(n),
        }
    }

    /// Largest `|n|` among exceptions, or 0.
    pub fn extent(&self) -> i64 {
        self.exceptions.iter().map(|n| n.abs()).max().unwrap_or(0)
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let b = self.extent().max(other.extent()) + 1;
        ExtZSet::from_fn(
            op(self.minus, other.minus),
            op(self.plus, other.plus),
            -b..=b,
            |n| op(self.contains_int(n), other.contains_int(n)),
        )
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        ExtZSet {
            minus: !self.minus,
            plus: !self.plus,
            exceptions: self.exceptions.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.minus && !self.plus && self.exceptions.is_empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Finite sets only: their integer members.
    pub fn finite_members(&self) -> Option<Vec<i64>> {
        (!self.minus && !self.plus).then(|| self.exceptions.iter().copied().collect())
    }

    /// Image under `x ↦ shift + sign·x` (sign = ±1), extended to ±∞.
    pub fn affine_image(&self, shift: i64, reflect: bool) -> Self {
        let b = self.extent() + shift.abs() + 1;
        let (minus, plus) = if reflect {
            (self.plus, self.minus)
        } else {
            (self.minus, self.plus)
        };
        // y = shift + s·x  ⇔  x = s·(y - shift)
        let s = if reflect { -1 } else { 1 };
        ExtZSet::from_fn(minus, plus, -b..=b, |y| self.contains_int(s * (y - shift)))
    }
}

impl fmt::Display for ExtZSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

/// The groups acting on the compactified integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum ZAction {
    /// `ℤ` acting on `ℤ ∪ {±∞}` by `x ↦ t + x`.
    Translation,
    /// `ℤ ⋊ ℤ₂` acting on `ℤ ∪ {±∞}` by `x ↦ n + (-1)ʲ x`.
    Dihedral,
    /// `ℤ` acting on `ℤ ∪ {∞}` by `x ↦ (-1)ⁿ x`.
    SignFlip,
}

/// A group element `(n, j)`; `reflect` is only ever set for the dihedral group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ZGroupElem {
    pub shift: i64,
    pub reflect: bool,
}

impl ZGroupElem {
    pub const IDENTITY: ZGroupElem = ZGroupElem {
        shift: 0,
        reflect: false,
    };

    pub fn translation(n: i64) -> Self {
        ZGroupElem {
            shift: n,
            reflect: false,
        }
    }

    pub fn dihedral(n: i64, j: u8) -> Self {
        ZGroupElem {
            shift: n,
            reflect: j % 2 == 1,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for ZGroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflect {
            write!(f, "({},1)", self.shift)
        } else {
            write!(f, "{}", self.shift)
        }
    }
}

impl ZAction {
    pub fn one_point(self) -> bool {
        matches!(self, ZAction::SignFlip)
    }

    pub fn compose(self, g: ZGroupElem, h: ZGroupElem) -> ZGroupElem {
        match self {
            ZAction::Translation | ZAction::SignFlip => ZGroupElem::translation(g.shift + h.shift),
            ZAction::Dihedral => {
                let m = if g.reflect { -h.shift } else { h.shift };
                ZGroupElem {
                    shift: g.shift + m,
                    reflect: g.reflect != h.reflect,
                }
            }
        }
    }

    pub fn inverse(self, g: ZGroupElem) -> ZGroupElem {
        match self {
            ZAction::Dihedral if g.reflect => g,
            _ => ZGroupElem::translation(-g.shift),
        }
    }

    /// The affine map `x ↦ shift + sign·x` by which `g` acts.
    fn affine(self, g: ZGroupElem) -> (i64, bool) {
        match self {
            ZAction::Translation => (g.shift, false),
            ZAction::Dihedral => (g.shift, g.reflect),
            ZAction::SignFlip => (0, g.shift.rem_euclid(2) == 1),
        }
    }

    pub fn apply(self, g: ZGroupElem, x: ExtInt) -> ExtInt {
        let (shift, reflect) = self.affine(g);
        match x {
            ExtInt::Int(n) => ExtInt::Int(shift + if reflect { -n } else { n }),
            _ if self.one_point() => ExtInt::PosInf,
            ExtInt::PosInf if reflect => ExtInt::NegInf,
            ExtInt::NegInf if reflect => ExtInt::PosInf,
            inf => inf,
        }
    }

    pub fn image(self, g: ZGroupElem, a: &ExtZSet) -> ExtZSet {
        let (shift, reflect) = self.affine(g);
        a.affine_image(shift, reflect)
    }

    pub fn preimage(self, g: ZGroupElem, a: &ExtZSet) -> ExtZSet {
        self.image(self.inverse(g), a)
    }

    /// Every element `(n, j)` with `|n| ≤ bound`.
    pub fn elements_within(self, bound: i64) -> Vec<ZGroupElem> {
        let mut v: Vec<ZGroupElem> = (-bound..=bound).map(ZGroupElem::translation).collect();
        if self == ZAction::Dihedral {
            v.extend((-bound..=bound).map(|n| ZGroupElem::dihedral(n, 1)));
        }
        v
    }
}

//! Compact open bisections and the inverse semigroup they form.

pub mod compact;
pub mod finite;
pub mod shift;

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::extz::ExtZSet;
use crate::prefix::CylinderSet;

pub use compact::CompactBisection;
pub use finite::FiniteBisection;
pub use shift::{ShiftArrow, ShiftBisection};

/// Boolean operations on the clopen subsets of a unit space.
pub trait ClopenSet: Clone + Eq + Ord + Debug {
    fn union(&self, other: &Self) -> Self;
    fn intersection(&self, other: &Self) -> Self;
    fn difference(&self, other: &Self) -> Self;
    fn is_empty(&self) -> bool;

    fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }
}

impl ClopenSet for CylinderSet {
    fn union(&self, other: &Self) -> Self {
        CylinderSet::union(self, other)
    }
    fn intersection(&self, other: &Self) -> Self {
        CylinderSet::intersection(self, other)
    }
    fn difference(&self, other: &Self) -> Self {
        CylinderSet::difference(self, other)
    }
    fn is_empty(&self) -> bool {
        CylinderSet::is_empty(self)
    }
}

impl ClopenSet for ExtZSet {
    fn union(&self, other: &Self) -> Self {
        ExtZSet::union(self, other)
    }
    fn intersection(&self, other: &Self) -> Self {
        ExtZSet::intersection(self, other)
    }
    fn difference(&self, other: &Self) -> Self {
        ExtZSet::difference(self, other)
    }
    fn is_empty(&self) -> bool {
        ExtZSet::is_empty(self)
    }
}

impl ClopenSet for BTreeSet<usize> {
    fn union(&self, other: &Self) -> Self {
        self | other
    }
    fn intersection(&self, other: &Self) -> Self {
        self & other
    }
    fn difference(&self, other: &Self) -> Self {
        self - other
    }
    fn is_empty(&self) -> bool {
        BTreeSet::is_empty(self)
    }
}

/// An ample groupoid with compact unit space, presented through its
/// compact open bisections. The model value is the context for every
/// operation; bisections are plain canonical values.
///
/// Bisections passed to a model are assumed to belong to it; use
/// [`AmpleGroupoid::validate`] on untrusted input.
pub trait AmpleGroupoid: Clone + Debug {
    type Set: ClopenSet;
    type Bisection: Clone + Eq + Ord + Hash + Debug;
    type Arrow: Clone + Debug;

    fn unit_space(&self) -> Self::Set;
    fn empty_set(&self) -> Self::Set;
    fn empty_bisection(&self) -> Self::Bisection;
    /// The unit bisection `{1_x : x ∈ A}`.
    fn units_over(&self, a: &Self::Set) -> Self::Bisection;
    fn compose(&self, u: &Self::Bisection, v: &Self::Bisection) -> Self::Bisection;
    fn invert(&self, u: &Self::Bisection) -> Self::Bisection;
    fn source(&self, u: &Self::Bisection) -> Self::Set;
    fn range(&self, u: &Self::Bisection) -> Self::Set;
    fn intersect(&self, u: &Self::Bisection, v: &Self::Bisection) -> Self::Bisection;
    fn subtract(&self, u: &Self::Bisection, v: &Self::Bisection) -> Self::Bisection;
    /// Set union, only meaningful when the result is a bisection.
    fn join_unchecked(&self, u: &Self::Bisection, v: &Self::Bisection) -> Self::Bisection;
    fn contains_arrow(&self, u: &Self::Bisection, g: &Self::Arrow) -> bool;
    /// Checks that `u` is a well-formed bisection of this groupoid.
    fn validate(&self, u: &Self::Bisection) -> Result<()>;
    /// `G_W = r⁻¹(W) ∩ s⁻¹(W)`.
    fn restriction(&self, w: &Self::Set) -> Result<Self>;

    fn unit_bisection(&self) -> Self::Bisection {
        self.units_over(&self.unit_space())
    }

    fn is_empty(&self, u: &Self::Bisection) -> bool {
        self.source(u).is_empty()
    }

    /// `U ∩ s⁻¹(A)`.
    fn restrict_source(&self, u: &Self::Bisection, a: &Self::Set) -> Self::Bisection {
        self.compose(u, &self.units_over(a))
    }

    /// `θ_U(A) = r(U ∩ s⁻¹(A))` for `A ⊆ s(U)`.
    fn theta(&self, u: &Self::Bisection, a: &Self::Set) -> Result<Self::Set> {
        if !a.is_subset(&self.source(u)) {
            return Err(Error::NotInSource);
        }
        Ok(self.range(&self.restrict_source(u, a)))
    }

    fn is_sub_bisection(&self, u: &Self::Bisection, v: &Self::Bisection) -> bool {
        self.is_empty(&self.subtract(u, v))
    }

    /// `U ∪ V`, provided it is again a bisection.
    fn union(&self, u: &Self::Bisection, v: &Self::Bisection) -> Result<Self::Bisection> {
        let extra = self.subtract(v, u);
        let s_clash = !self.source(&extra).intersection(&self.source(u)).is_empty();
        let r_clash = !self.range(&extra).intersection(&self.range(u)).is_empty();
        if s_clash || r_clash {
            return Err(Error::NotABisection(format!("{u:?} ∪ {v:?}")));
        }
        Ok(self.join_unchecked(u, &extra))
    }

    fn union_all<'a>(&self, parts: impl IntoIterator<Item = &'a Self::Bisection>) -> Result<Self::Bisection>
    where
        Self::Bisection: 'a,
    {
        parts
            .into_iter()
            .try_fold(self.empty_bisection(), |acc, p| self.union(&acc, p))
    }

    fn is_full(&self, u: &Self::Bisection) -> bool {
        let x = self.unit_space();
        self.source(u) == x && self.range(u) == x
    }
}

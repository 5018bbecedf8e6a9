use std::collections::BTreeSet;

use super::AmpleGroupoid;
use crate::error::{Error, Result};
use crate::models::FiniteGroupoid;

/// A set of arrows on which source and range are injective.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FiniteBisection(pub BTreeSet<usize>);

impl FiniteBisection {
    pub fn new(arrows: impl IntoIterator<Item = usize>) -> Self {
        FiniteBisection(arrows.into_iter().collect())
    }

    pub fn arrows(&self) -> &BTreeSet<usize> {
        &self.0
    }
}

impl FiniteGroupoid {
    /// The arrow of `u` with source `x`, if any.
    pub fn arrow_at(&self, u: &FiniteBisection, x: usize) -> Option<usize> {
        u.0.iter().copied().find(|&g| self.arrow_source(g) == x)
    }

    /// `θ_U` on a single unit.
    pub fn theta_point(&self, u: &FiniteBisection, x: usize) -> Option<usize> {
        self.arrow_at(u, x).map(|g| self.arrow_range(g))
    }

    /// A bisection sending each listed `x` to `y`, using the first arrow
    /// from `x` to `y`.
    pub fn bisection_from_map(&self, map: &[(usize, usize)]) -> Result<FiniteBisection> {
        let mut out = BTreeSet::new();
        for &(x, y) in map {
            let g = self
                .arrows_from(x)
                .find(|&g| self.arrow_range(g) == y)
                .ok_or_else(|| Error::Precondition(format!("no arrow from {x} to {y}")))?;
            out.insert(g);
        }
        let u = FiniteBisection(out);
        self.validate(&u)?;
        Ok(u)
    }

    pub fn describe(&self, u: &FiniteBisection) -> String {
        let parts: Vec<&str> = u.0.iter().map(|&g| self.label(g)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl AmpleGroupoid for FiniteGroupoid {
    type Set = BTreeSet<usize>;
    type Bisection = FiniteBisection;
    type Arrow = usize;

    fn unit_space(&self) -> BTreeSet<usize> {
        (0..self.unit_count()).collect()
    }

    fn empty_set(&self) -> BTreeSet<usize> {
        BTreeSet::new()
    }

    fn empty_bisection(&self) -> FiniteBisection {
        FiniteBisection::default()
    }

    fn units_over(&self, a: &BTreeSet<usize>) -> FiniteBisection {
        FiniteBisection(a.iter().map(|&x| self.unit_arrow(x)).collect())
    }

    fn compose(&self, u: &FiniteBisection, v: &FiniteBisection) -> FiniteBisection {
        let mut out = BTreeSet::new();
        for &h in &v.0 {
            if let Some(g) = self.arrow_at(u, self.arrow_range(h)) {
                out.insert(self.product(g, h).expect("composable"));
            }
        }
        FiniteBisection(out)
    }

    fn invert(&self, u: &FiniteBisection) -> FiniteBisection {
        FiniteBisection(u.0.iter().map(|&g| self.arrow_inverse(g)).collect())
    }

    fn source(&self, u: &FiniteBisection) -> BTreeSet<usize> {
        u.0.iter().map(|&g| self.arrow_source(g)).collect()
    }

    fn range(&self, u: &FiniteBisection) -> BTreeSet<usize> {
        u.0.iter().map(|&g| self.arrow_range(g)).collect()
    }

    fn intersect(&self, u: &FiniteBisection, v: &FiniteBisection) -> FiniteBisection {
        FiniteBisection(&u.0 & &v.0)
    }

    fn subtract(&self, u: &FiniteBisection, v: &FiniteBisection) -> FiniteBisection {
        FiniteBisection(&u.0 - &v.0)
    }

    fn join_unchecked(&self, u: &FiniteBisection, v: &FiniteBisection) -> FiniteBisection {
        FiniteBisection(&u.0 | &v.0)
    }

    fn contains_arrow(&self, u: &FiniteBisection, g: &usize) -> bool {
        u.0.contains(g)
    }

    fn validate(&self, u: &FiniteBisection) -> Result<()> {
        if let Some(g) = u.0.iter().find(|&&g| g >= self.arrow_count()) {
            return Err(Error::ModelMismatch(format!("arrow {g} does not exist")));
        }
        let s = self.source(u);
        let r = self.range(u);
        if s.len() != u.0.len() || r.len() != u.0.len() {
            return Err(Error::NotABisection(self.describe(u)));
        }
        Ok(())
    }

    fn restriction(&self, w: &BTreeSet<usize>) -> Result<Self> {
        FiniteGroupoid::restriction(self, w)
    }
}

//! Bisections of transformation groupoids on the compactified integers:
//! for each group element `g`, the clopen set of `x` with `(g, x) ∈ U`.

use std::collections::BTreeMap;
use std::fmt;

use super::AmpleGroupoid;
use crate::error::{Error, Result};
use crate::extz::{ExtInt, ExtZSet, ZAction, ZGroupElem};
use crate::models::CompactifiedZGroupoid;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CompactBisection {
    pieces: BTreeMap<ZGroupElem, ExtZSet>,
}

impl CompactBisection {
    pub fn new(pieces: impl IntoIterator<Item = (ZGroupElem, ExtZSet)>) -> Self {
        let mut map: BTreeMap<ZGroupElem, ExtZSet> = BTreeMap::new();
        for (g, a) in pieces {
            let entry = map.entry(g).or_insert_with(ExtZSet::empty);
            *entry = entry.union(&a);
        }
        map.retain(|_, a| !a.is_empty());
        CompactBisection { pieces: map }
    }

    pub fn pieces(&self) -> &BTreeMap<ZGroupElem, ExtZSet> {
        &self.pieces
    }

    pub fn domain(&self, g: ZGroupElem) -> ExtZSet {
        self.pieces.get(&g).cloned().unwrap_or_else(ExtZSet::empty)
    }

    /// The group element used at `x`.
    pub fn element_at(&self, x: ExtInt) -> Option<ZGroupElem> {
        self.pieces.iter().find(|(_, a)| a.contains(x)).map(|(g, _)| *g)
    }

    /// Largest `|n|` among group elements and exceptions.
    pub fn extent(&self) -> i64 {
        self.pieces
            .iter()
            .map(|(g, a)| g.shift.abs().max(a.extent()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for CompactBisection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, a)) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{g}]{a}")?;
        }
        Ok(())
    }
}

impl CompactifiedZGroupoid {
    fn act(&self) -> ZAction {
        self.action
    }

    pub fn theta_point(&self, u: &CompactBisection, x: ExtInt) -> Option<ExtInt> {
        u.element_at(x).map(|g| self.action.apply(g, x))
    }
}

impl AmpleGroupoid for CompactifiedZGroupoid {
    type Set = ExtZSet;
    type Bisection = CompactBisection;
    type Arrow = (ZGroupElem, ExtInt);

    fn unit_space(&self) -> ExtZSet {
        self.units.clone()
    }

    fn empty_set(&self) -> ExtZSet {
        ExtZSet::empty()
    }

    fn empty_bisection(&self) -> CompactBisection {
        CompactBisection::default()
    }

    fn units_over(&self, a: &ExtZSet) -> CompactBisection {
        CompactBisection::new([(ZGroupElem::IDENTITY, a.clone())])
    }

    fn compose(&self, u: &CompactBisection, v: &CompactBisection) -> CompactBisection {
        let act = self.act();
        let mut out = Vec::new();
        for (g, a) in &u.pieces {
            for (h, b) in &v.pieces {
                let dom = b.intersection(&act.preimage(*h, a));
                if !dom.is_empty() {
                    out.push((act.compose(*g, *h), dom));
                }
            }
        }
        CompactBisection::new(out)
    }

    fn invert(&self, u: &CompactBisection) -> CompactBisection {
        let act = self.act();
        CompactBisection::new(u.pieces.iter().map(|(g, a)| (act.inverse(*g), act.image(*g, a))))
    }

    fn source(&self, u: &CompactBisection) -> ExtZSet {
        u.pieces.values().fold(ExtZSet::empty(), |acc, a| acc.union(a))
    }

    fn range(&self, u: &CompactBisection) -> ExtZSet {
        let act = self.act();
        u.pieces
            .iter()
            .fold(ExtZSet::empty(), |acc, (g, a)| acc.union(&act.image(*g, a)))
    }

    fn intersect(&self, u: &CompactBisection, v: &CompactBisection) -> CompactBisection {
        CompactBisection::new(u.pieces.iter().map(|(g, a)| (*g, a.intersection(&v.domain(*g)))))
    }

    fn subtract(&self, u: &CompactBisection, v: &CompactBisection) -> CompactBisection {
        CompactBisection::new(u.pieces.iter().map(|(g, a)| (*g, a.difference(&v.domain(*g)))))
    }

    fn join_unchecked(&self, u: &CompactBisection, v: &CompactBisection) -> CompactBisection {
        CompactBisection::new(u.pieces.iter().chain(&v.pieces).map(|(g, a)| (*g, a.clone())))
    }

    fn contains_arrow(&self, u: &CompactBisection, (g, x): &(ZGroupElem, ExtInt)) -> bool {
        self.is_arrow(*g, *x) && u.domain(*g).contains(*x)
    }

    fn validate(&self, u: &CompactBisection) -> Result<()> {
        let act = self.act();
        for (g, a) in &u.pieces {
            if g.reflect && act != ZAction::Dihedral {
                return Err(Error::ModelMismatch(format!("{g} is not in the acting group")));
            }
            if act.one_point() && a.minus != a.plus {
                return Err(Error::ModelMismatch(format!("{a} separates the point at infinity")));
            }
            if !a.is_subset(&self.units) || !act.image(*g, a).is_subset(&self.units) {
                return Err(Error::ModelMismatch(format!("[{g}]{a} leaves the unit space")));
            }
        }
        let list: Vec<_> = u.pieces.iter().collect();
        for (i, (g, a)) in list.iter().enumerate() {
            for (h, b) in &list[i + 1..] {
                if !a.is_disjoint(b) || !act.image(**g, a).is_disjoint(&act.image(**h, b)) {
                    return Err(Error::NotABisection(u.to_string()));
                }
            }
        }
        Ok(())
    }

    fn restriction(&self, w: &ExtZSet) -> Result<Self> {
        self.restricted(w)
    }
}

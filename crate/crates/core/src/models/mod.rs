//! The three groupoid families: finite discrete groupoids, the full one-sided
//! shift, and transformation groupoids on the compactified integers.

pub mod finite;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::extz::{ExtInt, ExtZSet, ZAction, ZGroupElem};
use crate::prefix::CylinderSet;
use crate::word::{Point, Word};

pub use finite::{AxiomReport, FiniteGroupoid};

/// The Deaconu–Renault groupoid of the full one-sided shift on `k` letters,
/// possibly restricted to a clopen set of units.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftGroupoid {
    pub(crate) k: u8,
    pub(crate) units: CylinderSet,
}

impl ShiftGroupoid {
    pub fn new(k: u8) -> Result<Self> {
        if k < 2 {
            return Err(Error::Precondition("alphabet needs at least two letters".into()));
        }
        Ok(ShiftGroupoid {
            k,
            units: CylinderSet::whole(k),
        })
    }

    pub fn binary() -> Self {
        Self::new(2).expect("k = 2")
    }

    pub fn alphabet(&self) -> u8 {
        self.k
    }

    pub fn units(&self) -> &CylinderSet {
        &self.units
    }

    pub fn restricted(&self, w: &CylinderSet) -> Result<Self> {
        if w.alphabet() != self.k {
            return Err(Error::ModelMismatch("alphabet sizes differ".into()));
        }
        let units = self.units.intersection(w);
        if units.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        Ok(ShiftGroupoid { k: self.k, units })
    }

    /// Exhibits distinct points of the (dense, infinite) orbit of `x`:
    /// the points `w·σᵐ(x)` for short words `w` and small `m`, kept when
    /// they lie in the unit space.
    pub fn orbit_witnesses(&self, x: &Point, bound: usize) -> Result<Vec<Point>> {
        if !self.units.contains_point(x) {
            return Err(Error::Precondition(format!("{x} is not a unit")));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for m in 0..=2 {
            let tail = x.shift(m);
            for len in 0..=bound {
                for w in Word::all_of_length(self.k, len) {
                    let p = tail.prepend(&w);
                    if self.units.contains_point(&p) && seen.insert(p.clone()) {
                        out.push(p);
                        if out.len() == bound {
                            return Ok(out);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// A transformation groupoid on `ℤ ∪ {±∞}` (or `ℤ ∪ {∞}` for the sign
/// flip), restricted to a clopen set of units.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompactifiedZGroupoid {
    pub(crate) action: ZAction,
    pub(crate) units: ExtZSet,
}

/// An orbit in a compactified-integer model. Orbits of integers are not
/// closed, so the integer part and the points at infinity are kept apart;
/// `integers` is read on `ℤ` only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompactOrbit {
    pub integers: ExtZSet,
    pub infinities: BTreeSet<ExtInt>,
}

impl CompactifiedZGroupoid {
    pub fn new(action: ZAction) -> Self {
        CompactifiedZGroupoid {
            action,
            units: ExtZSet::whole(),
        }
    }

    /// The subgroupoid `H` of the translation groupoid over `[0, +∞]`.
    pub fn half_line() -> Self {
        CompactifiedZGroupoid {
            action: ZAction::Translation,
            units: ExtZSet::at_least(0),
        }
    }

    pub fn action(&self) -> ZAction {
        self.action
    }

    pub fn units(&self) -> &ExtZSet {
        &self.units
    }

    pub fn is_unit(&self, x: ExtInt) -> bool {
        match x {
            ExtInt::NegInf if self.action.one_point() => false,
            _ => self.units.contains(x),
        }
    }

    pub fn restricted(&self, w: &ExtZSet) -> Result<Self> {
        if self.action.one_point() && w.minus != w.plus {
            return Err(Error::Precondition("the one-point compactification has a single point at infinity".into()));
        }
        let units = self.units.intersection(w);
        if units.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        Ok(CompactifiedZGroupoid {
            action: self.action,
            units,
        })
    }

    /// Whether `(g, x)` is an arrow: both `x` and `g·x` are units.
    pub fn is_arrow(&self, g: ZGroupElem, x: ExtInt) -> bool {
        self.is_unit(x) && self.is_unit(self.action.apply(g, x))
    }

    pub fn orbit(&self, x: ExtInt) -> Result<CompactOrbit> {
        if !self.is_unit(x) {
            return Err(Error::Precondition(format!("{x} is not a unit")));
        }
        let mut infinities = BTreeSet::new();
        let integers = match x {
            ExtInt::Int(n) => match self.action {
                ZAction::SignFlip => ExtZSet::finite([n, -n]),
                _ => self.units.clone(),
            },
            inf => {
                infinities.insert(inf);
                if self.action == ZAction::Dihedral {
                    let other = self.action.apply(ZGroupElem::dihedral(0, 1), inf);
                    if self.is_unit(other) {
                        infinities.insert(other);
                    }
                }
                ExtZSet::empty()
            }
        };
        // Translations connect any two integers of the unit space.
        let integers = integers.intersection(&self.units);
        Ok(CompactOrbit {
            integers,
            infinities,
        })
    }
}

/// An orbit in any of the models.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Orbit {
    Finite(BTreeSet<usize>),
    /// Orbits in the shift are infinite and dense; the vector lists
    /// distinct members.
    Dense(Vec<Point>),
    Compact(CompactOrbit),
}

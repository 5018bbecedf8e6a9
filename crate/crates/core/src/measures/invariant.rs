//! The measure LP for each model.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::lp::LpProblem;
use super::MeasureModel;
use crate::bisection::{AmpleGroupoid, CompactBisection, FiniteBisection, ShiftBisection};
use crate::error::{Error, Result};
use crate::extz::{ExtInt, ExtZSet};
use crate::models::{CompactifiedZGroupoid, FiniteGroupoid, ShiftGroupoid};
use crate::prefix::CylinderSet;
use crate::scalar::{format_rational, Rational};
use crate::word::Word;

fn one() -> Rational {
    Rational::one()
}

/// A weight per unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMeasure(pub Vec<Rational>);

impl FiniteMeasure {
    pub fn uniform(n: usize) -> Self {
        FiniteMeasure(vec![Rational::new(1.into(), (n as i64).into()); n])
    }

    pub fn point_mass(n: usize, x: usize) -> Self {
        FiniteMeasure((0..n).map(|y| if y == x { one() } else { Rational::zero() }).collect())
    }
}

impl MeasureModel for FiniteGroupoid {
    type Measure = FiniteMeasure;

    fn measure_problem(&self, _depth: usize) -> Result<LpProblem> {
        let n = self.unit_count();
        let mut p = LpProblem::new((0..n).map(|x| format!("μ({})", self.label(self.unit_arrow(x)))).collect());
        let all: Vec<_> = (0..n).map(|x| (x, one())).collect();
        p.add("total mass", &all, one());
        for g in 0..self.arrow_count() {
            let (r, s) = (self.arrow_range(g), self.arrow_source(g));
            if r != s {
                p.add(format!("arrow {}", self.label(g)), &[(r, one()), (s, -one())], Rational::zero());
            }
        }
        Ok(p)
    }

    fn decode(&self, _depth: usize, x: &[Rational]) -> FiniteMeasure {
        FiniteMeasure(x.to_vec())
    }

    fn generating_bisections(&self, _depth: usize) -> Vec<FiniteBisection> {
        (0..self.arrow_count()).map(|g| FiniteBisection::new([g])).collect()
    }

    fn basis_sets(&self, _mu: &FiniteMeasure) -> Vec<BTreeSet<usize>> {
        (0..self.unit_count()).map(|x| [x].into()).collect()
    }

    fn measure_of(&self, mu: &FiniteMeasure, a: &BTreeSet<usize>) -> Result<Rational> {
        Ok(a.iter().map(|&x| mu.0[x].clone()).sum())
    }
}

/// Weights on every word of length at most `depth`, additive across levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMeasure {
    pub k: u8,
    pub depth: usize,
    pub weights: BTreeMap<Word, Rational>,
}

impl ShiftMeasure {
    /// The uniform Bernoulli measure.
    pub fn bernoulli(k: u8, depth: usize) -> Self {
        let weights = Word::all_up_to(k, depth)
            .into_iter()
            .map(|w| {
                let denom = num_bigint::BigInt::from(k).pow(w.len() as u32);
                (w, Rational::new(1.into(), denom))
            })
            .collect();
        ShiftMeasure { k, depth, weights }
    }

    pub fn is_additive(&self) -> bool {
        Word::all_up_to(self.k, self.depth.saturating_sub(1)).iter().all(|w| {
            self.depth == 0 || self.weights[w] == (0..self.k).map(|c| self.weights[&w.child(c)].clone()).sum()
        })
    }
}

impl MeasureModel for ShiftGroupoid {
    type Measure = ShiftMeasure;

    fn measure_problem(&self, depth: usize) -> Result<LpProblem> {
        let k = self.alphabet();
        let units = self.units();
        let refined = units
            .refine_to(depth)
            .ok_or_else(|| Error::DepthInsufficient(format!("unit space {units} at depth {depth}")))?;
        let words = Word::all_up_to(k, depth);
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut p = LpProblem::new(words.iter().map(|w| format!("μ[{w}]")).collect());
        let total: Vec<_> = refined.iter().map(|w| (index[w], one())).collect();
        p.add("total mass", &total, one());
        for w in words.iter().filter(|w| w.len() < depth) {
            let mut terms = vec![(index[w], one())];
            terms.extend((0..k).map(|c| (index[&w.child(c)], -one())));
            p.add(format!("additivity [{w}]"), &terms, Rational::zero());
        }
        for w in words.iter().filter(|w| w.len() == depth && !units.contains_cylinder(w)) {
            p.add(format!("outside units [{w}]"), &[(index[w], one())], Rational::zero());
        }
        for u in self.generating_bisections(depth) {
            let (b, a) = &u.pieces()[0];
            p.add(format!("Z({b}<-{a})"), &[(index[b], one()), (index[a], -one())], Rational::zero());
        }
        Ok(p)
    }

    fn decode(&self, depth: usize, x: &[Rational]) -> ShiftMeasure {
        let words = Word::all_up_to(self.alphabet(), depth);
        ShiftMeasure { k: self.alphabet(), depth, weights: words.into_iter().zip(x.iter().cloned()).collect() }
    }

    /// `Z(β, α)` for distinct `β, α` of length at most `depth` inside the units.
    fn generating_bisections(&self, depth: usize) -> Vec<ShiftBisection> {
        let k = self.alphabet();
        let inside: Vec<Word> = Word::all_up_to(k, depth)
            .into_iter()
            .filter(|w| self.units().contains_cylinder(w))
            .collect();
        let mut out = Vec::new();
        for b in &inside {
            for a in &inside {
                if a != b {
                    out.push(ShiftBisection::basic(k, b.clone(), a.clone()));
                }
            }
        }
        out
    }

    fn basis_sets(&self, mu: &ShiftMeasure) -> Vec<CylinderSet> {
        Word::all_of_length(mu.k, mu.depth)
            .into_iter()
            .filter(|w| self.units().contains_cylinder(w))
            .map(|w| CylinderSet::cylinder(mu.k, w))
            .collect()
    }

    fn measure_of(&self, mu: &ShiftMeasure, a: &CylinderSet) -> Result<Rational> {
        let words = a
            .refine_to(mu.depth)
            .ok_or_else(|| Error::DepthInsufficient(format!("{a} at depth {}", mu.depth)))?;
        Ok(words.iter().map(|w| mu.weights[w].clone()).sum())
    }
}

/// Weights on the atoms at resolution `depth`: the integers `|n| ≤ depth`
/// and the tails beyond, all intersected with the unit space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactMeasure {
    pub depth: usize,
    pub atoms: Vec<(ExtZSet, Rational)>,
}

impl CompactMeasure {
    /// The mass of the atom containing `x`.
    pub fn mass_at(&self, x: ExtInt) -> Rational {
        self.atoms
            .iter()
            .find(|(a, _)| a.contains(x))
            .map(|(_, m)| m.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Atoms with their masses, zero atoms included.
    pub fn named_atoms(&self) -> Vec<(String, Rational)> {
        self.atoms.iter().map(|(a, m)| (atom_name(a), m.clone())).collect()
    }

    pub fn describe(&self) -> String {
        self.named_atoms()
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(a, m)| format!("{a}: {}", format_rational(&m)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn atom_name(a: &ExtZSet) -> String {
    match a.finite_members() {
        Some(v) if v.len() == 1 => format!("{{{}}}", v[0]),
        _ => match (a.minus, a.plus) {
            (true, true) => "{∞}".to_string(),
            (false, true) => "{… +∞}".to_string(),
            (true, false) => "{-∞ …}".to_string(),
            _ => a.to_string(),
        },
    }
}

impl CompactifiedZGroupoid {
    fn atoms(&self, depth: usize) -> Vec<ExtZSet> {
        let d = depth as i64;
        let mut out: Vec<ExtZSet> = (-d..=d).map(ExtZSet::singleton).collect();
        if self.action().one_point() {
            out.push(ExtZSet::from_fn(true, true, -d..=d, |_| false));
        } else {
            out.push(ExtZSet::at_most(-d - 1));
            out.push(ExtZSet::at_least(d + 1));
        }
        out.into_iter()
            .map(|a| a.intersection(self.units()))
            .filter(|a| !a.is_empty())
            .collect()
    }

    /// Unions of atoms used as sources of generating bisections.
    fn candidate_sets(&self, depth: usize) -> Vec<ExtZSet> {
        let d = depth as i64;
        let mut out: Vec<ExtZSet> = (-d..=d).map(ExtZSet::singleton).collect();
        if self.action().one_point() {
            out.extend((0..=d + 1).map(|m| ExtZSet::from_fn(true, true, -d - 1..=d + 1, move |n| n.abs() >= m)));
        } else {
            out.extend((-d..=d + 1).map(ExtZSet::at_least));
            out.extend((-d - 1..=d).map(ExtZSet::at_most));
        }
        let mut seen = BTreeSet::new();
        out.into_iter()
            .map(|a| a.intersection(self.units()))
            .filter(|a| !a.is_empty() && seen.insert(a.clone()))
            .collect()
    }

    fn atom_indices(&self, depth: usize, a: &ExtZSet) -> Option<Vec<usize>> {
        let mut idx = Vec::new();
        for (i, atom) in self.atoms(depth).iter().enumerate() {
            if atom.is_subset(a) {
                idx.push(i);
            } else if !atom.is_disjoint(a) {
                return None;
            }
        }
        Some(idx)
    }
}

impl MeasureModel for CompactifiedZGroupoid {
    type Measure = CompactMeasure;

    fn measure_problem(&self, depth: usize) -> Result<LpProblem> {
        if self.atom_indices(depth, self.units()).is_none() {
            return Err(Error::DepthInsufficient(format!("unit space {} at depth {depth}", self.units())));
        }
        let atoms = self.atoms(depth);
        let mut p = LpProblem::new(atoms.iter().map(|a| format!("μ{}", atom_name(a))).collect());
        let all: Vec<_> = (0..atoms.len()).map(|i| (i, one())).collect();
        p.add("total mass", &all, one());
        for u in self.generating_bisections(depth) {
            let (g, a) = u.pieces().iter().next().expect("one piece");
            let image = self.range(&u);
            let mut terms: Vec<_> = self.atom_indices(depth, &image).expect("checked").into_iter().map(|i| (i, one())).collect();
            terms.extend(self.atom_indices(depth, a).expect("candidate").into_iter().map(|i| (i, -one())));
            p.add(format!("[{g}]{}", a), &terms, Rational::zero());
        }
        Ok(p)
    }

    fn decode(&self, depth: usize, x: &[Rational]) -> CompactMeasure {
        CompactMeasure { depth, atoms: self.atoms(depth).into_iter().zip(x.iter().cloned()).collect() }
    }

    /// `(g, A)` for candidate sets `A` and group elements with `|n| ≤ depth + 1`
    /// such that `gA` is again a union of atoms inside the units.
    fn generating_bisections(&self, depth: usize) -> Vec<CompactBisection> {
        let act = self.action();
        let mut out = Vec::new();
        for g in act.elements_within(depth as i64 + 1) {
            if g.is_identity() {
                continue;
            }
            for a in self.candidate_sets(depth) {
                let image = act.image(g, &a);
                if image != a && image.is_subset(self.units()) && self.atom_indices(depth, &image).is_some() {
                    out.push(CompactBisection::new([(g, a)]));
                }
            }
        }
        out
    }

    fn basis_sets(&self, mu: &CompactMeasure) -> Vec<ExtZSet> {
        mu.atoms.iter().map(|(a, _)| a.clone()).collect()
    }

    fn measure_of(&self, mu: &CompactMeasure, a: &ExtZSet) -> Result<Rational> {
        let mut total = Rational::zero();
        for (atom, m) in &mu.atoms {
            if atom.is_subset(a) {
                total += m;
            } else if !atom.is_disjoint(a) {
                return Err(Error::DepthInsufficient(format!("{a} at depth {}", mu.depth)));
            }
        }
        Ok(total)
    }
}

//! Exhaustive enumeration of `[[G]]` for the compactified-integer models,
//! within a tail bound `N`: every piece uses group elements `(n, j)` with
//! `|n| ≤ N` and sets whose exceptions lie in `[-N, N]`.
//!
//! Such an element is constant on each *atom*: the integers `-N..=N` and
//! the tails `[-∞, -N-1]`, `[N+1, +∞]` (a single tail around `∞` in the
//! one-point model), intersected with the unit space. Conversely every
//! assignment of group elements to atoms that permutes the unit space is
//! such an element, so the enumeration walks those assignments: tails
//! first, then a depth-first search matching integer atoms to the finite
//! set the tails leave uncovered.

use crate::bisection::CompactBisection;
use crate::extz::{ExtInt, ExtZSet, ZAction, ZGroupElem};
use crate::fullgroup::{FullElement, Order};
use crate::models::CompactifiedZGroupoid;

/// A group element for every atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomAssignment {
    bound: i64,
    action: ZAction,
    pub tails: Vec<(ExtZSet, ZGroupElem)>,
    pub ints: Vec<(i64, ZGroupElem)>,
}

impl AtomAssignment {
    /// The group element used at a unit `x`.
    pub fn element_at(&self, x: ExtInt) -> Option<ZGroupElem> {
        if let ExtInt::Int(n) = x {
            if n.abs() <= self.bound {
                return self.ints.iter().find(|(m, _)| *m == n).map(|(_, g)| *g);
            }
        }
        self.tails.iter().find(|(a, _)| a.contains(x)).map(|(_, g)| *g)
    }

    pub fn to_bisection(&self) -> CompactBisection {
        CompactBisection::new(
            self.tails
                .iter()
                .map(|(a, g)| (*g, a.clone()))
                .chain(self.ints.iter().map(|(n, g)| (*g, ExtZSet::singleton(*n)))),
        )
    }

    pub fn to_element(&self) -> FullElement<CompactBisection> {
        FullElement::trusted(self.to_bisection())
    }

    /// Order of the element computed pointwise: `Uᵐ = 1` exactly when the
    /// group elements accumulated along `m` steps vanish at every point.
    /// The pieces of `Uᵐ` have exceptions within `m·N + N`, so the points
    /// in that window and at infinity decide equality.
    pub fn order(&self, cap: usize) -> Order {
        let reach = (cap as i64 + 1) * self.bound + 1;
        let mut points: Vec<ExtInt> = (-reach..=reach).map(ExtInt::Int).collect();
        points.push(ExtInt::PosInf);
        if !self.action.one_point() {
            points.push(ExtInt::NegInf);
        }
        let points: Vec<ExtInt> = points.into_iter().filter(|&p| self.element_at(p).is_some()).collect();
        let mut state: Vec<(ZGroupElem, ExtInt)> = points.iter().map(|&p| (ZGroupElem::IDENTITY, p)).collect();
        for m in 1..=cap {
            for (acc, y) in state.iter_mut() {
                let g = self.element_at(*y).expect("unit space is invariant");
                *acc = self.action.compose(g, *acc);
                *y = self.action.apply(g, *y);
            }
            if state.iter().all(|(acc, _)| acc.is_identity()) {
                return Order::Finite(m);
            }
        }
        Order::ExceedsCap(cap)
    }
}

type Filter<'a> = Box<dyn Fn(&ExtZSet, ZGroupElem) -> bool + 'a>;

/// Walks all atom assignments that are elements of `[[G]]`.
pub struct FullGroupWalker<'a> {
    model: &'a CompactifiedZGroupoid,
    filter: Option<Filter<'a>>,
    elements: Vec<ZGroupElem>,
    tail_atoms: Vec<ExtZSet>,
    /// Odometer over `elements` for the tails; `None` once exhausted.
    combo: Option<Vec<usize>>,
    candidates: Vec<Vec<(ZGroupElem, u64)>>,
    stack: Vec<usize>,
    chosen: Vec<u64>,
    used: u64,
    pending_empty: bool,
    current: AtomAssignment,
}

impl<'a> FullGroupWalker<'a> {
    pub fn new(model: &'a CompactifiedZGroupoid, bound: usize) -> Self {
        let n = bound as i64;
        let units = model.units();
        let act = model.action();
        let tails: Vec<ExtZSet> = if act.one_point() {
            vec![ExtZSet::from_fn(true, true, -n..=n, |_| false)]
        } else {
            vec![ExtZSet::at_most(-n - 1), ExtZSet::at_least(n + 1)]
        };
        let tail_atoms: Vec<ExtZSet> = tails
            .into_iter()
            .map(|t| t.intersection(units))
            .filter(|t| !t.is_empty())
            .collect();
        let ints: Vec<(i64, ZGroupElem)> = (-n..=n)
            .filter(|&x| units.contains_int(x))
            .map(|x| (x, ZGroupElem::IDENTITY))
            .collect();
        assert!(ints.len() <= 64, "tail bound too large for the matcher");
        let combo = Some(vec![0; tail_atoms.len()]);
        FullGroupWalker {
            model,
            filter: None,
            elements: act.elements_within(n),
            current: AtomAssignment {
                bound: n,
                action: act,
                tails: tail_atoms.iter().map(|t| (t.clone(), ZGroupElem::IDENTITY)).collect(),
                ints,
            },
            tail_atoms,
            combo,
            candidates: Vec::new(),
            stack: Vec::new(),
            chosen: Vec::new(),
            used: 0,
            pending_empty: false,
        }
    }

    /// Keeps only assignments where every atom passes `f(atom, g)`.
    pub fn with_filter(mut self, f: impl Fn(&ExtZSet, ZGroupElem) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    fn allowed(&self, atom: &ExtZSet, g: ZGroupElem) -> bool {
        self.filter.as_ref().map_or(true, |f| f(atom, g))
    }

    fn bump_combo(&mut self) {
        let len = self.elements.len();
        if let Some(c) = self.combo.as_mut() {
            let mut i = 0;
            loop {
                if i == c.len() {
                    self.combo = None;
                    return;
                }
                c[i] += 1;
                if c[i] < len {
                    return;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    /// Sets up the integer search for the current tail choice; false if
    /// the tails cannot be completed.
    fn prepare(&mut self, combo: &[usize]) -> bool {
        let act = self.model.action();
        let units = self.model.units();
        let mut covered = ExtZSet::empty();
        for (i, atom) in self.tail_atoms.iter().enumerate() {
            let g = self.elements[combo[i]];
            if !self.allowed(atom, g) {
                return false;
            }
            let img = act.image(g, atom);
            if !img.is_subset(units) || !img.is_disjoint(&covered) {
                return false;
            }
            covered = covered.union(&img);
            self.current.tails[i].1 = g;
        }
        let free = match units.difference(&covered).finite_members() {
            Some(f) if f.len() == self.current.ints.len() => f,
            _ => return false,
        };
        let bit = |y: i64| free.iter().position(|&f| f == y).map(|i| 1u64 << i);
        let mut candidates = Vec::with_capacity(self.current.ints.len());
        for &(x, _) in &self.current.ints {
            let atom = ExtZSet::singleton(x);
            let mut c = Vec::new();
            for &g in &self.elements {
                if let ExtInt::Int(y) = act.apply(g, ExtInt::Int(x)) {
                    if let Some(b) = bit(y) {
                        if self.allowed(&atom, g) {
                            c.push((g, b));
                        }
                    }
                }
            }
            if c.is_empty() {
                return false;
            }
            candidates.push(c);
        }
        self.candidates = candidates;
        self.stack = if self.current.ints.is_empty() { Vec::new() } else { vec![0] };
        self.chosen = vec![0; self.current.ints.len()];
        self.used = 0;
        self.pending_empty = self.current.ints.is_empty();
        true
    }

    /// Advances the depth-first search; true when a complete assignment is ready.
    fn advance(&mut self) -> bool {
        if self.pending_empty {
            self.pending_empty = false;
            return true;
        }
        while let Some(level) = self.stack.len().checked_sub(1) {
            self.used &= !self.chosen[level];
            self.chosen[level] = 0;
            let cands = &self.candidates[level];
            let mut j = self.stack[level];
            while j < cands.len() && self.used & cands[j].1 != 0 {
                j += 1;
            }
            if j == cands.len() {
                self.stack.pop();
                continue;
            }
            let (g, b) = cands[j];
            self.stack[level] = j + 1;
            self.used |= b;
            self.chosen[level] = b;
            self.current.ints[level].1 = g;
            if level + 1 == self.candidates.len() {
                return true;
            }
            self.stack.push(0);
        }
        false
    }

    /// The next element, borrowed until the following call.
    pub fn next_assignment(&mut self) -> Option<&AtomAssignment> {
        loop {
            if self.advance() {
                return Some(&self.current);
            }
            let combo = self.combo.clone()?;
            self.bump_combo();
            self.prepare(&combo);
        }
    }

    pub fn count(mut self) -> usize {
        let mut n = 0;
        while self.next_assignment().is_some() {
            n += 1;
        }
        n
    }
}

impl Iterator for FullGroupWalker<'_> {
    type Item = FullElement<CompactBisection>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_assignment().map(AtomAssignment::to_element)
    }
}

/// All elements of `[[model]]` within the tail bound.
pub fn enumerate_full_group(model: &CompactifiedZGroupoid, bound: usize) -> FullGroupWalker<'_> {
    FullGroupWalker::new(model, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisection::AmpleGroupoid;
    use crate::fullgroup::FullGroup;

    #[test]
    fn translation_tail_zero_is_trivial() {
        let g = CompactifiedZGroupoid::new(ZAction::Translation);
        let all: Vec<_> = enumerate_full_group(&g, 0).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].bisection(), &g.unit_bisection());
    }

    #[test]
    fn enumerated_elements_are_full_and_distinct() {
        for act in [ZAction::Translation, ZAction::Dihedral, ZAction::SignFlip] {
            let g = CompactifiedZGroupoid::new(act);
            let all: Vec<_> = enumerate_full_group(&g, 1).collect();
            let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            for u in &all {
                assert!(g.validate(u.bisection()).is_ok() && g.is_full(u.bisection()), "{act:?}");
            }
        }
    }

    #[test]
    fn counts_match_brute_force() {
        // Brute force over every assignment of elements to atoms.
        for act in [ZAction::Translation, ZAction::Dihedral, ZAction::SignFlip] {
            for bound in 0..=1 {
                let g = CompactifiedZGroupoid::new(act);
                let walker = FullGroupWalker::new(&g, bound);
                let atoms: Vec<ExtZSet> = walker
                    .tail_atoms
                    .iter()
                    .cloned()
                    .chain(walker.current.ints.iter().map(|(x, _)| ExtZSet::singleton(*x)))
                    .collect();
                let elems = walker.elements.clone();
                let total = elems.len().pow(atoms.len() as u32);
                let mut brute = 0;
                for mut idx in 0..total {
                    let mut pieces = Vec::new();
                    for a in &atoms {
                        pieces.push((elems[idx % elems.len()], a.clone()));
                        idx /= elems.len();
                    }
                    let mut b = CompactBisection::default();
                    let mut ok = true;
                    for p in pieces {
                        match g.union(&b, &CompactBisection::new([p])) {
                            Ok(u) => b = u,
                            Err(_) => ok = false,
                        }
                    }
                    if ok && g.is_full(&b) {
                        brute += 1;
                    }
                }
                assert_eq!(walker.count(), brute, "{act:?} bound {bound}");
            }
        }
    }

    #[test]
    fn dihedral_counts() {
        let g = CompactifiedZGroupoid::new(ZAction::Dihedral);
        assert_eq!(FullGroupWalker::new(&g, 0).count(), 4);
        assert_eq!(FullGroupWalker::new(&g, 1).count(), 88);
    }

    #[test]
    fn half_line_tail_five() {
        let h = CompactifiedZGroupoid::half_line();
        // Tails must stay put, leaving the permutations of 0..=5.
        assert_eq!(FullGroupWalker::new(&h, 5).count(), 720);
    }

    #[test]
    fn pointwise_order_matches_bisection_powers() {
        let g = CompactifiedZGroupoid::new(ZAction::Dihedral);
        let group = FullGroup::new(&g);
        let mut w = FullGroupWalker::new(&g, 1);
        while let Some(a) = w.next_assignment() {
            assert_eq!(a.order(8), group.order(&a.to_element(), 8), "{}", a.to_bisection());
        }
    }

    #[test]
    fn filter_prunes() {
        let g = CompactifiedZGroupoid::new(ZAction::SignFlip);
        let odd = |a: &ExtZSet, h: ZGroupElem| *a == ExtZSet::singleton(0) || h.shift % 2 != 0;
        let all = FullGroupWalker::new(&g, 1).with_filter(odd).count();
        let brute = FullGroupWalker::new(&g, 1)
            .filter(|u| {
                let b = u.bisection();
                [-3, -2, -1, 1, 2, 3].iter().all(|&x| g.theta_point(b, ExtInt::Int(x)) == Some(ExtInt::Int(-x)))
            })
            .count();
        assert_eq!(all, brute);
    }
}

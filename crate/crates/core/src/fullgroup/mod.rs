//! Topological full groups `[[G]]`: bisections with full source and range.

pub mod enumerate;
pub mod finite;
pub mod thompson;

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::bisection::{AmpleGroupoid, ClopenSet};
use crate::error::{Error, Result};

/// A bisection known to have full source and range.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FullElement<B>(B);

impl<B> FullElement<B> {
    pub fn bisection(&self) -> &B {
        &self.0
    }

    pub fn into_bisection(self) -> B {
        self.0
    }

    pub(crate) fn trusted(b: B) -> Self {
        FullElement(b)
    }
}

/// Result of [`FullGroup::order`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    Finite(usize),
    ExceedsCap(usize),
}

/// Group operations in `[[G]]`.
#[derive(Clone, Copy, Debug)]
pub struct FullGroup<'a, G> {
    pub model: &'a G,
}

impl<'a, G: AmpleGroupoid> FullGroup<'a, G> {
    pub fn new(model: &'a G) -> Self {
        FullGroup { model }
    }

    pub fn element(&self, b: G::Bisection) -> Result<FullElement<G::Bisection>> {
        self.model.validate(&b)?;
        if !self.model.is_full(&b) {
            return Err(Error::NotFull(format!("{b:?}")));
        }
        Ok(FullElement(b))
    }

    pub fn identity(&self) -> FullElement<G::Bisection> {
        FullElement(self.model.unit_bisection())
    }

    pub fn mul(&self, u: &FullElement<G::Bisection>, v: &FullElement<G::Bisection>) -> FullElement<G::Bisection> {
        FullElement(self.model.compose(&u.0, &v.0))
    }

    pub fn inv(&self, u: &FullElement<G::Bisection>) -> FullElement<G::Bisection> {
        FullElement(self.model.invert(&u.0))
    }

    pub fn pow(&self, u: &FullElement<G::Bisection>, n: usize) -> FullElement<G::Bisection> {
        (0..n).fold(self.identity(), |acc, _| self.mul(&acc, u))
    }

    pub fn is_identity(&self, u: &FullElement<G::Bisection>) -> bool {
        u.0 == self.model.unit_bisection()
    }

    /// Least `n ≤ cap` with `Uⁿ = 1`.
    pub fn order(&self, u: &FullElement<G::Bisection>, cap: usize) -> Order {
        let one = self.identity();
        let mut p = u.clone();
        for n in 1..=cap {
            if p == one {
                return Order::Finite(n);
            }
            p = self.mul(&p, u);
        }
        Order::ExceedsCap(cap)
    }

    /// `θ_U(A)`; always defined for full elements.
    pub fn theta(&self, u: &FullElement<G::Bisection>, a: &G::Set) -> G::Set {
        self.model.theta(&u.0, &a.intersection(&self.model.unit_space())).expect("full source")
    }

    /// Restricts an element of the rigid stabilizer of `W` to `[[G_W]]`.
    pub fn rigid_stabilizer_restrict(
        &self,
        u: &FullElement<G::Bisection>,
        w: &G::Set,
    ) -> Result<(G, FullElement<G::Bisection>)> {
        let outside = self.model.unit_space().difference(w);
        let units_outside = self.model.units_over(&outside);
        if self.model.restrict_source(&u.0, &outside) != units_outside {
            return Err(Error::Precondition(format!("{:?} moves points outside the set", u.0)));
        }
        let sub = self.model.restriction(w)?;
        let restricted = self.model.restrict_source(&u.0, w);
        let elem = FullGroup::new(&sub).element(restricted)?;
        Ok((sub, elem))
    }
}

/// Elements reachable by words of length `≤ depth` in the generators and
/// their inverses, each with a shortest word. Letters are `2i` for
/// generator `i` and `2i + 1` for its inverse.
pub fn ball<G: AmpleGroupoid>(
    model: &G,
    generators: &[FullElement<G::Bisection>],
    depth: usize,
) -> Vec<(FullElement<G::Bisection>, Vec<usize>)> {
    let group = FullGroup::new(model);
    let letters: Vec<FullElement<G::Bisection>> = generators
        .iter()
        .flat_map(|g| [g.clone(), group.inv(g)])
        .collect();
    let mut seen: HashMap<FullElement<G::Bisection>, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(group.identity(), Vec::new())]);
    seen.insert(group.identity(), ());
    while let Some((e, word)) = queue.pop_front() {
        if word.len() < depth {
            for (i, l) in letters.iter().enumerate() {
                let next = group.mul(&e, l);
                if seen.insert(next.clone(), ()).is_none() {
                    let mut w = word.clone();
                    w.push(i);
                    queue.push_back((next, w));
                }
            }
        }
        out.push((e, word));
    }
    out
}

/// One part of a target covered by a group element.
#[derive(Clone, Debug)]
pub struct CoverPart<B> {
    pub part: B,
    pub element: FullElement<B>,
    /// The generator word producing `element`, when found by search.
    pub word: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct CoverEntry<B> {
    pub target: B,
    pub parts: Vec<CoverPart<B>>,
    /// What no candidate covered.
    pub remainder: B,
    pub covered: bool,
}

#[derive(Clone, Debug)]
pub struct CoverReport<B> {
    pub entries: Vec<CoverEntry<B>>,
    pub depth: usize,
}

impl<B> CoverReport<B> {
    pub fn all_covered(&self) -> bool {
        self.entries.iter().all(|e| e.covered)
    }

    pub fn uncovered(&self) -> impl Iterator<Item = &CoverEntry<B>> {
        self.entries.iter().filter(|e| !e.covered)
    }
}

fn cover_one<G: AmpleGroupoid>(
    model: &G,
    target: &G::Bisection,
    candidates: impl IntoIterator<Item = (FullElement<G::Bisection>, Option<Vec<usize>>)>,
) -> CoverEntry<G::Bisection> {
    let mut rest = target.clone();
    let mut parts = Vec::new();
    for (u, word) in candidates {
        if model.is_empty(&rest) {
            break;
        }
        let part = model.intersect(&rest, u.bisection());
        if !model.is_empty(&part) {
            rest = model.subtract(&rest, &part);
            parts.push(CoverPart { part, element: u, word });
        }
    }
    CoverEntry {
        target: target.clone(),
        parts,
        covered: model.is_empty(&rest),
        remainder: rest,
    }
}

/// For each target, the parts covered by elements of the subgroup
/// generated by `generators`, searched breadth-first up to `depth`.
/// An uncovered remainder is inconclusive unless the model makes the
/// search exhaustive.
pub fn covers<G: AmpleGroupoid>(
    model: &G,
    generators: &[FullElement<G::Bisection>],
    targets: &[G::Bisection],
    depth: usize,
) -> CoverReport<G::Bisection> {
    let elements = ball(model, generators, depth);
    let entries = targets
        .iter()
        .map(|t| cover_one(model, t, elements.iter().map(|(e, w)| (e.clone(), Some(w.clone())))))
        .collect();
    CoverReport { entries, depth }
}

/// Like [`covers`], but candidates come from `oracle` and must pass the
/// subgroup membership test `member`.
pub fn covers_with_oracle<G: AmpleGroupoid>(
    model: &G,
    targets: &[G::Bisection],
    oracle: impl Fn(&G::Bisection) -> Vec<FullElement<G::Bisection>>,
    member: impl Fn(&FullElement<G::Bisection>) -> bool,
) -> Result<CoverReport<G::Bisection>> {
    let mut entries = Vec::new();
    for t in targets {
        let cands = oracle(t);
        if let Some(bad) = cands.iter().find(|c| !member(c)) {
            return Err(Error::Precondition(format!("oracle produced a non-member {:?}", bad.bisection())));
        }
        entries.push(cover_one(model, t, cands.into_iter().map(|c| (c, None))));
    }
    Ok(CoverReport { entries, depth: 0 })
}

/// The set of group elements of a report's witnesses, deduplicated.
pub fn witnesses<B: Ord + Clone>(report: &CoverReport<B>) -> BTreeSet<FullElement<B>> {
    report
        .entries
        .iter()
        .flat_map(|e| e.parts.iter().map(|p| p.element.clone()))
        .collect()
}

//! Invariant probability measures, decided exactly by linear programming,
//! together with the trace correspondence and Følner estimates on finite
//! models.

pub mod folner;
pub mod invariant;
pub mod lp;
pub mod trace;

use std::fmt::Debug;

use crate::bisection::AmpleGroupoid;
use crate::error::{Error, Result};
use crate::fullgroup::{CoverReport, FullElement};
use crate::scalar::Rational;

pub use folner::{folner_certificate, FolnerReport};
pub use invariant::{CompactMeasure, FiniteMeasure, ShiftMeasure};
pub use lp::{LpOutcome, LpProblem, Method};
pub use trace::{measure_from_trace, trace_from_measure};

/// A model whose invariant measures can be posed as a finite LP at a
/// given resolution.
pub trait MeasureModel: AmpleGroupoid {
    type Measure: Clone + Debug + PartialEq;

    /// Variables, additivity, normalisation and one invariance equation
    /// per generating bisection at resolution `depth`.
    fn measure_problem(&self, depth: usize) -> Result<LpProblem>;
    fn decode(&self, depth: usize, x: &[Rational]) -> Self::Measure;
    /// The generating bisections behind the invariance equations.
    fn generating_bisections(&self, depth: usize) -> Vec<Self::Bisection>;
    /// The clopen atoms of `mu`.
    fn basis_sets(&self, mu: &Self::Measure) -> Vec<Self::Set>;
    /// `μ(A)`, provided `A` is a union of atoms.
    fn measure_of(&self, mu: &Self::Measure, a: &Self::Set) -> Result<Rational>;
}

#[derive(Clone, Debug)]
pub enum Feasibility<M> {
    Feasible(M),
    /// Farkas multipliers for the constraints of `problem`.
    Infeasible(Vec<Rational>),
}

#[derive(Clone, Debug)]
pub struct FeasibilityReport<M> {
    pub depth: usize,
    pub problem: LpProblem,
    pub method: Method,
    pub raw: LpOutcome,
    pub verdict: Feasibility<M>,
}

impl<M> FeasibilityReport<M> {
    pub fn is_feasible(&self) -> bool {
        matches!(self.verdict, Feasibility::Feasible(_))
    }

    pub fn certificate_lines(&self) -> Vec<String> {
        match &self.raw {
            LpOutcome::Infeasible(y) => self.problem.describe_certificate(y),
            LpOutcome::Feasible(_) => Vec::new(),
        }
    }
}

pub fn invariant_measure_feasible<G: MeasureModel>(model: &G, depth: usize) -> Result<FeasibilityReport<G::Measure>> {
    let problem = model.measure_problem(depth)?;
    let sol = problem.solve();
    let verdict = match &sol.outcome {
        LpOutcome::Feasible(x) => Feasibility::Feasible(model.decode(depth, x)),
        LpOutcome::Infeasible(y) => Feasibility::Infeasible(y.clone()),
    };
    Ok(FeasibilityReport { depth, problem, method: sol.method, raw: sol.outcome, verdict })
}

/// Re-checks a report without trusting the solver: the problem is rebuilt
/// from the model, a certificate must be a Farkas vector for it, and a
/// witness must be a probability measure with `μ(r(U)) = μ(s(U))` for every
/// generating bisection, evaluated directly on the model.
pub fn verify_report<G: MeasureModel>(model: &G, report: &FeasibilityReport<G::Measure>) -> Result<bool> {
    let problem = model.measure_problem(report.depth)?;
    match (&report.verdict, &report.raw) {
        (Feasibility::Infeasible(y), _) => Ok(problem.is_certificate(y)),
        (Feasibility::Feasible(mu), LpOutcome::Feasible(x)) => {
            if !problem.is_witness(x) {
                return Ok(false);
            }
            if model.measure_of(mu, &model.unit_space())? != Rational::from_integer(1.into()) {
                return Ok(false);
            }
            for u in model.generating_bisections(report.depth) {
                if model.measure_of(mu, &model.range(&u))? != model.measure_of(mu, &model.source(&u))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}

/// The first generator and atom with `μ(θ_U(A)) ≠ μ(A)`, if any.
pub fn gamma_invariant_check<G: MeasureModel>(
    model: &G,
    mu: &G::Measure,
    generators: &[FullElement<G::Bisection>],
) -> Result<Option<(usize, G::Set)>> {
    let atoms = model.basis_sets(mu);
    for (i, u) in generators.iter().enumerate() {
        for a in &atoms {
            let image = model.theta(u.bisection(), a)?;
            if model.measure_of(mu, &image)? != model.measure_of(mu, a)? {
                return Ok(Some((i, a.clone())));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct PromotionEntry<B> {
    pub target: B,
    pub parts: usize,
    pub source_mass: Rational,
    pub range_mass: Rational,
}

#[derive(Clone, Debug)]
pub struct PromotionReport<B> {
    pub entries: Vec<PromotionEntry<B>>,
    /// The first failing part, described.
    pub failure: Option<String>,
}

impl<B> PromotionReport<B> {
    pub fn certified(&self) -> bool {
        self.failure.is_none()
    }
}

/// Turns invariance under the covering elements into `μ(r(S)) = μ(s(S))`
/// for every target `S`: each part `Sᵢ = S ∩ U` has `r(Sᵢ) = θ_U(s(Sᵢ))`,
/// and invariance under `U` gives `μ(r(Sᵢ)) = μ(s(Sᵢ))`; the parts
/// partition `S`.
pub fn promote_gamma_to_g<G: MeasureModel>(
    model: &G,
    mu: &G::Measure,
    witnesses: &CoverReport<G::Bisection>,
) -> Result<PromotionReport<G::Bisection>> {
    if let Some(e) = witnesses.uncovered().next() {
        return Err(Error::MissingWitness(format!("{:?}", e.target)));
    }
    let mut entries = Vec::new();
    let mut failure = None;
    for e in &witnesses.entries {
        let pieces: Vec<_> = e.parts.iter().map(|p| &p.part).collect();
        let joined = model.union_all(pieces)?;
        if joined != e.target {
            failure.get_or_insert(format!("parts do not partition {:?}", e.target));
        }
        for p in &e.parts {
            let src = model.source(&p.part);
            let image = model.theta(p.element.bisection(), &src)?;
            if !model.is_sub_bisection(&p.part, p.element.bisection()) || image != model.range(&p.part) {
                failure.get_or_insert(format!("{:?} is not a part of its witness", p.part));
            }
            if model.measure_of(mu, &image)? != model.measure_of(mu, &src)? {
                failure.get_or_insert(format!("μ is not invariant under the witness for {:?}", p.part));
            }
        }
        let source_mass = model.measure_of(mu, &model.source(&e.target))?;
        let range_mass = model.measure_of(mu, &model.range(&e.target))?;
        if source_mass != range_mass {
            failure.get_or_insert(format!("μ(r) ≠ μ(s) on {:?}", e.target));
        }
        entries.push(PromotionEntry { target: e.target.clone(), parts: e.parts.len(), source_mass, range_mass });
    }
    Ok(PromotionReport { entries, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisection::{FiniteBisection, ShiftBisection};
    use crate::fullgroup::thompson::{in_thompson_t, t_cover_parts};
    use crate::fullgroup::{covers, covers_with_oracle, FullGroup};
    use crate::measures::folner::{cyclic_groupoid, cyclic_translation};
    use crate::models::ShiftGroupoid;
    use crate::word::Word;

    #[test]
    fn cyclic_group_covers_and_promotes() {
        let g = cyclic_groupoid(3);
        let gens = vec![cyclic_translation(&g, 3, 1)];
        let mu = FiniteMeasure::uniform(3);
        assert_eq!(gamma_invariant_check(&g, &mu, &gens).unwrap(), None);
        let targets: Vec<_> = (0..g.arrow_count()).map(|a| FiniteBisection::new([a])).collect();
        let report = covers(&g, &gens, &targets, 3);
        assert!(report.all_covered());
        let promoted = promote_gamma_to_g(&g, &mu, &report).unwrap();
        assert!(promoted.certified());
        assert_eq!(promoted.entries.len(), 9);

        let trivial = covers(&g, &[FullGroup::new(&g).identity()], &targets, 2);
        assert!(matches!(promote_gamma_to_g(&g, &mu, &trivial), Err(Error::MissingWitness(_))));
    }

    #[test]
    fn thompson_t_witnesses_cannot_promote() {
        let s = ShiftGroupoid::binary();
        let words = Word::all_up_to(2, 2);
        let targets: Vec<_> = words
            .iter()
            .flat_map(|b| words.iter().map(move |a| ShiftBisection::basic(2, b.clone(), a.clone())))
            .collect();
        let report = covers_with_oracle(
            &s,
            &targets,
            |t| {
                let (b, a) = &t.pieces()[0];
                t_cover_parts(b, a)
            },
            |u| in_thompson_t(u).unwrap_or(false),
        )
        .unwrap();
        assert!(report.all_covered());
        let mu = ShiftMeasure::bernoulli(2, 6);
        let promoted = promote_gamma_to_g(&s, &mu, &report).unwrap();
        assert!(!promoted.certified());
        let none = invariant_measure_feasible(&s, 2).unwrap();
        assert!(!none.is_feasible());
        assert!(!none.certificate_lines().is_empty());
    }
}

//! Følner estimates for finite subsets of `[[G]]` on finite groupoids.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fullgroup::finite::FiniteFull;
use crate::fullgroup::FullGroup;
use crate::models::FiniteGroupoid;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerLine {
    /// `max_g Σ_{h ∈ s⁻¹(r(g))} |μ(h) − μ(hg)|` over arrows `g ∈ V`.
    pub deviation: Rational,
    /// `(|F \ FV⁻¹| + |F \ FV|) / |F|`.
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerReport {
    pub f_size: usize,
    pub lines: Vec<FolnerLine>,
}

impl FolnerReport {
    pub fn deviation(&self) -> Rational {
        self.lines.iter().map(|l| l.deviation.clone()).max().unwrap_or_else(Rational::zero)
    }

    /// Every measured deviation respects its combinatorial bound.
    pub fn within_bounds(&self) -> bool {
        self.lines.iter().all(|l| l.deviation <= l.bound)
    }
}

/// With `μ = |F|⁻¹ Σ_{U ∈ F} 1_U`, measures how far `μ` is from being
/// invariant under right multiplication by each `V`.
pub fn folner_certificate(model: &FiniteGroupoid, f: &[FiniteFull], vs: &[FiniteFull]) -> Result<FolnerReport> {
    let fset: BTreeSet<&FiniteFull> = f.iter().collect();
    if fset.is_empty() || fset.len() != f.len() {
        return Err(Error::Precondition("F must be a non-empty set".into()));
    }
    let size = Rational::from_integer((f.len() as i64).into());
    let group = FullGroup::new(model);
    let mut counts = vec![0i64; model.arrow_count()];
    for u in f {
        for &g in u.bisection().arrows() {
            counts[g] += 1;
        }
    }
    let mu = |g: usize| Rational::from_integer(counts[g].into()) / &size;
    let mut lines = Vec::new();
    for v in vs {
        let mut deviation = Rational::zero();
        for &g in v.bisection().arrows() {
            let x = model.arrow_range(g);
            let mut total = Rational::zero();
            for h in model.arrows_from(x) {
                let hg = model.product(h, g).expect("s(h) = r(g)");
                total += (mu(h) - mu(hg)).abs();
            }
            deviation = deviation.max(total);
        }
        let fv: BTreeSet<FiniteFull> = f.iter().map(|u| group.mul(u, v)).collect();
        let vi = group.inv(v);
        let fvi: BTreeSet<FiniteFull> = f.iter().map(|u| group.mul(u, &vi)).collect();
        let outside = |s: &BTreeSet<FiniteFull>| f.iter().filter(|u| !s.contains(*u)).count() as i64;
        let bound = Rational::from_integer((outside(&fvi) + outside(&fv)).into()) / &size;
        debug_assert!(!deviation.is_negative());
        lines.push(FolnerLine { deviation, bound });
    }
    Ok(FolnerReport { f_size: f.len(), lines })
}

/// The transformation groupoid of `ℤ_n` acting on itself, with the
/// translation by `t` as a full-group element.
pub fn cyclic_translation(model: &FiniteGroupoid, n: usize, t: usize) -> FiniteFull {
    let map: Vec<(usize, usize)> = (0..n).map(|x| (x, (x + t) % n)).collect();
    let b = model.bisection_from_map(&map).expect("translation is a bisection");
    FullGroup::new(model).element(b).expect("translation is full")
}

pub fn cyclic_groupoid(n: usize) -> FiniteGroupoid {
    let shift: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    FiniteGroupoid::from_action(&[("t".to_string(), shift)]).expect("valid action")
}

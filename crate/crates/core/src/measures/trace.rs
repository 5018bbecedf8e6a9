//! Traces and invariant measures on finite groupoids.

use num_traits::{One, Signed};

use super::invariant::FiniteMeasure;
use super::MeasureModel;
use crate::error::{Error, Result};
use crate::models::FiniteGroupoid;
use crate::scalar::{Rational, Scalar};
use crate::starconv::finite::{is_positive, tracial_violation, Functional};
use crate::starconv::ConvolutionAlgebra;

fn is_invariant(model: &FiniteGroupoid, mu: &FiniteMeasure) -> Option<usize> {
    (0..model.arrow_count()).find(|&g| mu.0[model.arrow_range(g)] != mu.0[model.arrow_source(g)])
}

/// `τ(f) = Σ_x f(x) μ(x)`, checked to be a tracial state.
pub fn trace_from_measure(model: &FiniteGroupoid, mu: &FiniteMeasure) -> Result<Functional> {
    if mu.0.len() != model.unit_count() || mu.0.iter().any(Signed::is_negative) || mu.0.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::Precondition("μ must be a probability vector on the units".into()));
    }
    if let Some(g) = is_invariant(model, mu) {
        return Err(Error::NotInvariant(format!("μ(r) ≠ μ(s) at arrow {}", model.label(g))));
    }
    let tau = Functional(
        (0..model.arrow_count())
            .map(|g| match model.as_unit(g) {
                Some(x) => Scalar::real(mu.0[x].clone()),
                None => Scalar::zero(),
            })
            .collect(),
    );
    debug_assert!(tau.apply(&model.one()) == Scalar::one());
    if let Some((a, b)) = tracial_violation(model, &tau) {
        return Err(Error::NotTracial(format!("{} and {}", model.label(a), model.label(b))));
    }
    if !is_positive(model, &tau) {
        return Err(Error::Precondition("τ is not positive".into()));
    }
    Ok(tau)
}

/// `μ(x) = τ(1_{x})` for a tracial state `τ`.
pub fn measure_from_trace(model: &FiniteGroupoid, tau: &Functional) -> Result<FiniteMeasure> {
    if tau.0.len() != model.arrow_count() {
        return Err(Error::ModelMismatch("functional has the wrong length".into()));
    }
    if let Some((a, b)) = tracial_violation(model, tau) {
        return Err(Error::NotTracial(format!("τ differs on {}·{} and {}·{}", model.label(a), model.label(b), model.label(b), model.label(a))));
    }
    if tau.apply(&model.one()) != Scalar::one() {
        return Err(Error::Precondition("τ(1) ≠ 1".into()));
    }
    let mut weights = Vec::with_capacity(model.unit_count());
    for x in 0..model.unit_count() {
        let v = tau.apply(&model.delta(model.unit_arrow(x)));
        if !v.is_real() || v.re().is_negative() {
            return Err(Error::Precondition(format!("τ(1_{x}) = {v} is not a non-negative real")));
        }
        weights.push(v.re().clone());
    }
    let mu = FiniteMeasure(weights);
    if let Some(g) = is_invariant(model, &mu) {
        return Err(Error::NotInvariant(format!("arrow {}", model.label(g))));
    }
    Ok(mu)
}

/// `τ(1_{r(U)}) = τ(1_{s(U)})` for every generating bisection.
pub fn trace_balances_bisections(model: &FiniteGroupoid, tau: &Functional) -> bool {
    use crate::bisection::AmpleGroupoid;
    model.generating_bisections(0).iter().all(|u| {
        tau.apply(&model.unit_indicator(&model.range(u))) == tau.apply(&model.unit_indicator(&model.source(u)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn normalised_matrix_trace() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let mu = FiniteMeasure::uniform(3);
        let tau = trace_from_measure(&g, &mu).unwrap();
        for a in 0..9 {
            let expected = if g.as_unit(a).is_some() { Scalar::real(rat(1, 3)) } else { Scalar::zero() };
            assert_eq!(tau.apply(&g.delta(a)), expected);
        }
        assert!(trace_balances_bisections(&g, &tau));
        assert_eq!(measure_from_trace(&g, &tau).unwrap(), mu);
    }

    #[test]
    fn rejections() {
        let g = FiniteGroupoid::pair(3).unwrap();
        assert!(matches!(trace_from_measure(&g, &FiniteMeasure::point_mass(3, 1)), Err(Error::NotInvariant(_))));
        let mut e12 = vec![Scalar::zero(); 9];
        e12[0] = Scalar::one();
        e12[1] = Scalar::one();
        assert!(matches!(measure_from_trace(&g, &Functional(e12)), Err(Error::NotTracial(_))));
    }
}

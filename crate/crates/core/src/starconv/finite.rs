//! `C(G)` for a finite groupoid: functions on arrows, the representation
//! `ρ`, and exact span computations.

use std::collections::BTreeSet;

use super::linalg::{dot, is_positive_semidefinite, span_membership, Matrix, Membership, Span, Vector};
use super::ConvolutionAlgebra;
use crate::bisection::FiniteBisection;
use crate::error::{Error, Result};
use crate::fullgroup::finite::FiniteFull;
use crate::fullgroup::FullGroup;
use crate::models::FiniteGroupoid;
use crate::scalar::{Rational, Scalar};

/// A function on arrows, indexed by arrow id.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteElement(pub Vector);

impl FiniteElement {
    pub fn coefficients(&self) -> &[Scalar] {
        &self.0
    }
}

impl ConvolutionAlgebra for FiniteGroupoid {
    type Element = FiniteElement;

    fn zero(&self) -> FiniteElement {
        FiniteElement(vec![Scalar::zero(); self.arrow_count()])
    }

    fn indicator(&self, u: &FiniteBisection) -> FiniteElement {
        let mut f = self.zero();
        for &g in u.arrows() {
            f.0[g] = Scalar::one();
        }
        f
    }

    fn add(&self, f: &FiniteElement, g: &FiniteElement) -> FiniteElement {
        FiniteElement(f.0.iter().zip(&g.0).map(|(a, b)| a + b).collect())
    }

    fn scale(&self, c: &Scalar, f: &FiniteElement) -> FiniteElement {
        FiniteElement(f.0.iter().map(|a| c * a).collect())
    }

    /// `(f⋆g)(γ) = Σ_{αβ=γ} f(α)g(β)`.
    fn mul(&self, f: &FiniteElement, g: &FiniteElement) -> FiniteElement {
        let m = self.arrow_count();
        let mut out = self.zero();
        for a in (0..m).filter(|&a| !f.0[a].is_zero()) {
            for b in (0..m).filter(|&b| !g.0[b].is_zero()) {
                if let Some(ab) = self.product(a, b) {
                    out.0[ab] += &(&f.0[a] * &g.0[b]);
                }
            }
        }
        out
    }

    fn adjoint(&self, f: &FiniteElement) -> FiniteElement {
        FiniteElement((0..self.arrow_count()).map(|g| f.0[self.arrow_inverse(g)].conj()).collect())
    }

    fn cond_expectation(&self, f: &FiniteElement) -> FiniteElement {
        FiniteElement(
            (0..self.arrow_count())
                .map(|g| if self.as_unit(g).is_some() { f.0[g].clone() } else { Scalar::zero() })
                .collect(),
        )
    }

    fn eval(&self, f: &FiniteElement, g: &usize) -> Scalar {
        f.0[*g].clone()
    }
}

impl FiniteGroupoid {
    /// The single-arrow indicator `1_{g}`.
    pub fn delta(&self, g: usize) -> FiniteElement {
        self.indicator(&FiniteBisection::new([g]))
    }

    /// `(ρ(f)ξ)(x) = Σ_{g ∈ r⁻¹(x)} f(g) ξ(s(g))`. The matrix does not
    /// depend on the measure, which only fixes the inner product; `mu` is
    /// checked to be a probability vector.
    pub fn rho_matrix(&self, f: &FiniteElement, mu: &[Rational]) -> Result<Matrix> {
        if mu.len() != self.unit_count()
            || mu.iter().any(|m| m < &Rational::from_integer(0.into()))
            || mu.iter().sum::<Rational>() != Rational::from_integer(1.into())
        {
            return Err(Error::Precondition("μ must be a probability vector on the units".into()));
        }
        Ok(self.rho(f))
    }

    pub fn rho(&self, f: &FiniteElement) -> Matrix {
        let mut m = Matrix::zero(self.unit_count());
        for g in 0..self.arrow_count() {
            let (r, s) = (self.arrow_range(g), self.arrow_source(g));
            let v = m.get(r, s) + &f.0[g];
            m.set(r, s, v);
        }
        m
    }

    /// `1 - 1_U` for every `U ∈ [[G]]`, spanning `B = span{1 - π(U)}`.
    pub fn one_minus_pi_generators(&self) -> Vec<FiniteElement> {
        self.full_group_elements().iter().map(|u| self.one_minus(u)).collect()
    }

    pub fn pi_generators(&self) -> Vec<FiniteElement> {
        self.full_group_elements().iter().map(|u| self.pi(u)).collect()
    }
}

/// Membership in a finite-dimensional span, decided exactly over the arrow basis.
pub fn span_membership_finite(target: &FiniteElement, generators: &[FiniteElement]) -> Membership {
    let gens: Vec<Vector> = generators.iter().map(|g| g.0.clone()).collect();
    span_membership(&target.0, &gens)
}

/// The smallest `*`-subalgebra containing `seed`, as an independent basis.
pub fn subalgebra_closure(model: &FiniteGroupoid, seed: &[FiniteElement]) -> Vec<FiniteElement> {
    let mut span = Span::new(model.arrow_count());
    let mut basis: Vec<FiniteElement> = Vec::new();
    for f in seed.iter().cloned().chain(seed.iter().map(|f| model.adjoint(f))) {
        if span.insert(&f.0) {
            basis.push(f);
        }
    }
    let mut done = 0;
    loop {
        let before = basis.len();
        let mut fresh = Vec::new();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i < done && j < done {
                    continue;
                }
                let p = model.mul(&basis[i], &basis[j]);
                if span.insert(&p.0) {
                    fresh.push(p);
                }
            }
        }
        basis.extend(fresh);
        done = before;
        if basis.len() == before {
            return basis;
        }
    }
}

/// Whether the span of `basis` is closed under products and adjoints;
/// the first failing element is returned.
pub fn star_subalgebra_violation(model: &FiniteGroupoid, basis: &[FiniteElement]) -> Option<FiniteElement> {
    let mut span = Span::new(model.arrow_count());
    for b in basis {
        span.insert(&b.0);
    }
    for a in basis {
        let adj = model.adjoint(a);
        if !span.contains(&adj.0) {
            return Some(adj);
        }
        for b in basis {
            let p = model.mul(a, b);
            if !span.contains(&p.0) {
                return Some(p);
            }
        }
    }
    None
}

/// Outcome of [`hereditary_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hereditary {
    Yes,
    /// `b·a·b′ ∉ B` for basis elements `b, b′` of `B` and the arrow `a`.
    No { b: usize, arrow: usize, b2: usize },
}

/// Checks `B·C(G)·B ⊆ B` on basis triples, after confirming that the span
/// of `basis` is a `*`-subalgebra.
pub fn hereditary_check(model: &FiniteGroupoid, basis: &[FiniteElement]) -> Result<Hereditary> {
    if let Some(w) = star_subalgebra_violation(model, basis) {
        return Err(Error::Precondition(format!("not a *-subalgebra: {:?} escapes the span", w.0)));
    }
    let mut span = Span::new(model.arrow_count());
    for b in basis {
        span.insert(&b.0);
    }
    for (i, b) in basis.iter().enumerate() {
        for a in 0..model.arrow_count() {
            let ba = model.mul(b, &model.delta(a));
            for (j, b2) in basis.iter().enumerate() {
                if !span.contains(&model.mul(&ba, b2).0) {
                    return Ok(Hereditary::No { b: i, arrow: a, b2: j });
                }
            }
        }
    }
    Ok(Hereditary::Yes)
}

/// A linear functional on `C(G)` given by its values on arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional(pub Vector);

impl Functional {
    pub fn apply(&self, f: &FiniteElement) -> Scalar {
        dot(&self.0, &f.0)
    }
}

/// Whether `φ(f*⋆f) ≥ 0` for all `f`: the Gram matrix `φ(δ_a* ⋆ δ_b)` is
/// positive semidefinite.
pub fn is_positive(model: &FiniteGroupoid, phi: &Functional) -> bool {
    let m = model.arrow_count();
    let mut gram = Matrix::zero(m);
    for a in 0..m {
        let da = model.adjoint(&model.delta(a));
        for b in 0..m {
            gram.set(a, b, phi.apply(&model.mul(&da, &model.delta(b))));
        }
    }
    is_positive_semidefinite(&gram)
}

/// `φ(f⋆g) = φ(g⋆f)` on the arrow basis; returns a failing pair.
pub fn tracial_violation(model: &FiniteGroupoid, phi: &Functional) -> Option<(usize, usize)> {
    let m = model.arrow_count();
    for a in 0..m {
        for b in 0..m {
            let (da, db) = (model.delta(a), model.delta(b));
            if phi.apply(&model.mul(&da, &db)) != phi.apply(&model.mul(&db, &da)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Which case of the construction produced `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DuvCase {
    /// `θ_U(x) = x`; `θ_{LU}(x) = θ_L(x) = y`.
    FixesX,
    /// `θ_U(x) ≠ x`; `θ_L(x) = x` and `θ_{LU}(x) = y`.
    MovesX,
}

/// An `L ∈ [[G]]` as in the span identity for `1 - 1_U`, for `y` in the
/// orbit of `x` and `y ≠ x`.
pub fn find_l_for_duv(model: &FiniteGroupoid, u: &FiniteFull, x: usize, y: usize) -> Result<(FiniteFull, DuvCase)> {
    if x == y || !model.orbit(x).contains(&y) {
        return Err(Error::Precondition(format!("{y} must be a point of the orbit of {x} other than {x}")));
    }
    let arrow = |from: usize, to: usize| {
        model
            .arrows_from(from)
            .find(|&g| model.arrow_range(g) == to)
            .expect("same orbit")
    };
    let group = FullGroup::new(model);
    let z = model.theta_point(u.bisection(), x).expect("full");
    if z == x {
        return Ok((model.swap_element(arrow(x, y)), DuvCase::FixesX));
    }
    let l = if z == y { group.identity() } else { model.swap_element(arrow(z, y)) };
    Ok((l, DuvCase::MovesX))
}

/// The distinct orbit sizes.
pub fn orbit_sizes(model: &FiniteGroupoid) -> BTreeSet<usize> {
    model.orbits().iter().map(BTreeSet::len).collect()
}

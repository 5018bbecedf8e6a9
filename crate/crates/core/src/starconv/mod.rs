//! The convolution `*`-algebra `C_c(G)` with Gaussian-rational
//! coefficients, the unitary representation `π`, and the algebraic
//! identities used to study the span of `{1 - 1_U : U ∈ [[G]]}`.

pub mod compact;
pub mod finite;
pub mod linalg;
pub mod shift;

use std::fmt::Debug;

use crate::bisection::{AmpleGroupoid, ClopenSet};
use crate::error::{Error, Result};
use crate::fullgroup::FullElement;
use crate::scalar::Scalar;

pub use compact::{CompactElement, LocConst};
pub use finite::FiniteElement;
pub use shift::ShiftElement;

/// `C_c(G)` spanned by indicators of compact open bisections, with
/// `1_U ⋆ 1_V = 1_{UV}` and `1_U* = 1_{U⁻¹}`.
pub trait ConvolutionAlgebra: AmpleGroupoid {
    type Element: Clone + Eq + Debug;

    fn zero(&self) -> Self::Element;
    fn indicator(&self, u: &Self::Bisection) -> Self::Element;
    fn add(&self, f: &Self::Element, g: &Self::Element) -> Self::Element;
    fn scale(&self, c: &Scalar, f: &Self::Element) -> Self::Element;
    fn mul(&self, f: &Self::Element, g: &Self::Element) -> Self::Element;
    /// `f*(γ) = conj f(γ⁻¹)`.
    fn adjoint(&self, f: &Self::Element) -> Self::Element;
    /// Restriction to the unit space.
    fn cond_expectation(&self, f: &Self::Element) -> Self::Element;
    fn eval(&self, f: &Self::Element, g: &Self::Arrow) -> Scalar;

    fn one(&self) -> Self::Element {
        self.indicator(&self.unit_bisection())
    }

    fn sub(&self, f: &Self::Element, g: &Self::Element) -> Self::Element {
        self.add(f, &self.scale(&-Scalar::one(), g))
    }

    fn is_zero(&self, f: &Self::Element) -> bool {
        *f == self.zero()
    }

    fn unit_indicator(&self, a: &Self::Set) -> Self::Element {
        self.indicator(&self.units_over(a))
    }

    /// `π(U) = 1_U`.
    fn pi(&self, u: &FullElement<Self::Bisection>) -> Self::Element {
        self.indicator(u.bisection())
    }

    /// `1 - 1_U`.
    fn one_minus(&self, u: &FullElement<Self::Bisection>) -> Self::Element {
        self.sub(&self.one(), &self.pi(u))
    }
}

/// Both sides of the identity for `(1 - 1_S)1_W(1 - 1_T)` and the two
/// full-group elements realising it as `1_{U₁} - 1_{U₂}`.
#[derive(Clone, Debug)]
pub struct TecTranscript<G: ConvolutionAlgebra> {
    pub lhs: G::Element,
    pub rhs: G::Element,
    pub u1: FullElement<G::Bisection>,
    pub u2: FullElement<G::Bisection>,
}

impl<G: ConvolutionAlgebra> TecTranscript<G> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Whether `θ_S(W)`, `W` and `θ_T⁻¹(W)` are mutually disjoint.
pub fn tec_admissible<G: AmpleGroupoid>(
    model: &G,
    s: &FullElement<G::Bisection>,
    t: &FullElement<G::Bisection>,
    w: &G::Set,
) -> bool {
    let sw = model.theta(s.bisection(), w).expect("full source");
    let tw = model.theta(&model.invert(t.bisection()), w).expect("full source");
    sw.intersection(w).is_empty() && sw.intersection(&tw).is_empty() && w.intersection(&tw).is_empty()
}

/// With `R` the complement of `θ_S(W) ∪ W ∪ θ_T⁻¹(W)`:
/// `U₁ = SWT ∪ T⁻¹WS⁻¹ ∪ W ∪ R` and `U₂ = T⁻¹WS⁻¹ ∪ SW ∪ WT ∪ R` are in
/// `[[G]]`, and `(1 - 1_S)1_W(1 - 1_T) = 1_{U₁} - 1_{U₂}`.
pub fn verify_tec<G: ConvolutionAlgebra>(
    model: &G,
    s: &FullElement<G::Bisection>,
    t: &FullElement<G::Bisection>,
    w: &G::Set,
) -> Result<TecTranscript<G>> {
    if !w.is_subset(&model.unit_space()) || !tec_admissible(model, s, t, w) {
        return Err(Error::Precondition("θ_S(W), W and θ_T⁻¹(W) must be disjoint".into()));
    }
    let (sb, tb) = (s.bisection(), t.bisection());
    let wu = model.units_over(w);
    let s_w = model.compose(sb, &wu);
    let w_t = model.compose(&wu, tb);
    let swt = model.compose(&s_w, tb);
    let twsi = model.invert(&swt);
    let busy = model
        .range(&s_w)
        .union(w)
        .union(&model.source(&w_t));
    let rest = model.units_over(&model.unit_space().difference(&busy));

    let full = |parts: [&G::Bisection; 4]| -> Result<FullElement<G::Bisection>> {
        let u = model.union_all(parts)?;
        crate::fullgroup::FullGroup::new(model).element(u)
    };
    let u1 = full([&swt, &twsi, &wu, &rest])?;
    let u2 = full([&twsi, &s_w, &w_t, &rest])?;

    let one_w = model.indicator(&wu);
    let lhs = model.mul(&model.mul(&model.one_minus(s), &one_w), &model.one_minus(t));
    let rhs = model.sub(&model.pi(&u1), &model.pi(&u2));
    Ok(TecTranscript { lhs, rhs, u1, u2 })
}

/// `1 - 1_U = 1_{L⁻¹}(1_L - 1) + 1_{L⁻¹}(1 - 1_{LU})`, checked exactly.
pub fn duv_ring_identity<G: ConvolutionAlgebra>(
    model: &G,
    u: &FullElement<G::Bisection>,
    l: &FullElement<G::Bisection>,
) -> bool {
    let group = crate::fullgroup::FullGroup::new(model);
    let li = model.pi(&group.inv(l));
    let lu = group.mul(l, u);
    let first = model.mul(&li, &model.sub(&model.pi(l), &model.one()));
    let second = model.mul(&li, &model.one_minus(&lu));
    model.add(&first, &second) == model.one_minus(u)
}

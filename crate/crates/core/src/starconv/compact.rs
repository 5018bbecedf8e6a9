//! `C_c(Γ ⋉ X)` for the compactified integers: one locally constant
//! coefficient function per group element.

use std::collections::BTreeMap;
use std::fmt;

use super::ConvolutionAlgebra;
use crate::bisection::CompactBisection;
use crate::extz::{ExtInt, ZAction, ZGroupElem};
use crate::models::CompactifiedZGroupoid;
use crate::scalar::Scalar;

/// A locally constant function on `ℤ ∪ {±∞}`. Negative integers default
/// to `minus`, the rest to `plus`; `values` holds the exceptions only.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LocConst {
    pub minus: Scalar,
    pub plus: Scalar,
    pub values: BTreeMap<i64, Scalar>,
}

impl LocConst {
    pub fn constant(c: Scalar) -> Self {
        LocConst { minus: c.clone(), plus: c, values: BTreeMap::new() }
    }

    pub fn from_fn(minus: Scalar, plus: Scalar, window: impl IntoIterator<Item = i64>, f: impl Fn(i64) -> Scalar) -> Self {
        let mut values = BTreeMap::new();
        for n in window {
            let v = f(n);
            if v != *Self::tail(&minus, &plus, n) {
                values.insert(n, v);
            }
        }
        LocConst { minus, plus, values }
    }

    fn tail<'a>(minus: &'a Scalar, plus: &'a Scalar, n: i64) -> &'a Scalar {
        if n < 0 {
            minus
        } else {
            plus
        }
    }

    pub fn at_int(&self, n: i64) -> &Scalar {
        self.values.get(&n).unwrap_or_else(|| Self::tail(&self.minus, &self.plus, n))
    }

    pub fn at(&self, x: ExtInt) -> &Scalar {
        match x {
            ExtInt::NegInf => &self.minus,
            ExtInt::PosInf => &self.plus,
            ExtInt::Int(n) => self.at_int(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.minus.is_zero() && self.plus.is_zero() && self.values.is_empty()
    }

    pub fn extent(&self) -> i64 {
        self.values.keys().map(|n| n.abs()).max().unwrap_or(0)
    }

    fn zip(&self, other: &Self, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        let b = self.extent().max(other.extent()) + 1;
        LocConst::from_fn(op(&self.minus, &other.minus), op(&self.plus, &other.plus), -b..=b, |n| {
            op(self.at_int(n), other.at_int(n))
        })
    }

    fn map(&self, op: impl Fn(&Scalar) -> Scalar) -> Self {
        let b = self.extent();
        LocConst::from_fn(op(&self.minus), op(&self.plus), -b..=b, |n| op(self.at_int(n)))
    }

    /// `x ↦ self(g·x)`.
    fn pullback(&self, act: ZAction, g: ZGroupElem) -> Self {
        let b = self.extent() + g.shift.abs() + 1;
        let at = |x| self.at(act.apply(g, x)).clone();
        LocConst::from_fn(at(ExtInt::NegInf), at(ExtInt::PosInf), -b..=b, |n| at(ExtInt::Int(n)))
    }
}

impl fmt::Display for LocConst {
    /// `(a; 3:(b), 5:(c); d)`: tail values around the exceptions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.minus)?;
        for (i, (n, v)) in self.values.iter().enumerate() {
            write!(f, "{}{n}:{v}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, "; {})", self.plus)
    }
}

/// `Σ_g (g, F_g)`, the function `(g, x) ↦ F_g(x)`. Zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CompactElement {
    terms: BTreeMap<ZGroupElem, LocConst>,
}

impl CompactElement {
    pub fn new(terms: impl IntoIterator<Item = (ZGroupElem, LocConst)>) -> Self {
        let mut map: BTreeMap<ZGroupElem, LocConst> = BTreeMap::new();
        for (g, f) in terms {
            let sum = match map.remove(&g) {
                Some(h) => h.zip(&f, |a, b| a + b),
                None => f,
            };
            map.insert(g, sum);
        }
        map.retain(|_, f| !f.is_zero());
        CompactElement { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<ZGroupElem, LocConst> {
        &self.terms
    }

    pub fn coefficient(&self, g: ZGroupElem) -> LocConst {
        self.terms.get(&g).cloned().unwrap_or_else(|| LocConst::constant(Scalar::zero()))
    }
}

impl fmt::Display for CompactElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{g}]{c}")?;
        }
        Ok(())
    }
}

impl ConvolutionAlgebra for CompactifiedZGroupoid {
    type Element = CompactElement;

    fn zero(&self) -> CompactElement {
        CompactElement::default()
    }

    fn indicator(&self, u: &CompactBisection) -> CompactElement {
        CompactElement::new(u.pieces().iter().map(|(g, a)| {
            let b = a.extent();
            let ind = |yes: bool| if yes { Scalar::one() } else { Scalar::zero() };
            (*g, LocConst::from_fn(ind(a.minus), ind(a.plus), -b..=b, |n| ind(a.contains_int(n))))
        }))
    }

    fn add(&self, f: &CompactElement, g: &CompactElement) -> CompactElement {
        CompactElement::new(f.terms.iter().chain(&g.terms).map(|(g, c)| (*g, c.clone())))
    }

    fn scale(&self, c: &Scalar, f: &CompactElement) -> CompactElement {
        CompactElement::new(f.terms.iter().map(|(g, v)| (*g, v.map(|x| c * x))))
    }

    /// `(g, F)(h, F′) = (gh, x ↦ F(h·x) F′(x))`.
    fn mul(&self, f: &CompactElement, g: &CompactElement) -> CompactElement {
        let act = self.action();
        let mut out = Vec::new();
        for (a, fa) in &f.terms {
            for (b, gb) in &g.terms {
                out.push((act.compose(*a, *b), fa.pullback(act, *b).zip(gb, |x, y| x * y)));
            }
        }
        CompactElement::new(out)
    }

    /// `(g, F)* = (g⁻¹, y ↦ conj F(g⁻¹·y))`.
    fn adjoint(&self, f: &CompactElement) -> CompactElement {
        let act = self.action();
        CompactElement::new(f.terms.iter().map(|(g, c)| {
            let gi = act.inverse(*g);
            (gi, c.pullback(act, gi).map(Scalar::conj))
        }))
    }

    fn cond_expectation(&self, f: &CompactElement) -> CompactElement {
        CompactElement::new(f.terms.get(&ZGroupElem::IDENTITY).map(|c| (ZGroupElem::IDENTITY, c.clone())))
    }

    fn eval(&self, f: &CompactElement, (g, x): &(ZGroupElem, ExtInt)) -> Scalar {
        f.terms.get(g).map(|c| c.at(*x).clone()).unwrap_or_else(Scalar::zero)
    }
}

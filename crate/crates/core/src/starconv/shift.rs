//! `C_c(G)` for the one-sided shift groupoid, as finite sums `Σ c·1_{Z(β,α)}`
//! in a canonical form.

use std::fmt;

use super::ConvolutionAlgebra;
use crate::bisection::shift::{compose_pieces, normalize_pieces};
use crate::bisection::{ShiftArrow, ShiftBisection};
use crate::error::Result;
use crate::models::ShiftGroupoid;
use crate::scalar::Scalar;
use crate::text::Cursor;
use crate::word::Word;

/// Pairwise disjoint weighted basic sets, grouped by root in trie normal
/// form, so equal functions have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ShiftElement {
    k: u8,
    terms: Vec<((Word, Word), Scalar)>,
}

impl ShiftElement {
    pub fn new(k: u8, terms: impl IntoIterator<Item = ((Word, Word), Scalar)>) -> Self {
        ShiftElement {
            k,
            terms: normalize_pieces(k, terms.into_iter().collect()),
        }
    }

    pub fn terms(&self) -> &[((Word, Word), Scalar)] {
        &self.terms
    }

    /// `(⋆ c·Z(β<-α) + …)`; the zero element is `0`.
    pub fn parse(k: u8, s: &str) -> Result<Self> {
        let mut c = Cursor::new(s);
        if c.eat("0") {
            c.finish()?;
            return Ok(ShiftElement { k, terms: Vec::new() });
        }
        let mut terms = Vec::new();
        loop {
            let coeff = if c.peek("(") {
                let v = c.scalar()?;
                c.expect("*")?;
                v
            } else {
                Scalar::one()
            };
            c.expect("Z(")?;
            let b = c.word(k)?;
            c.expect("<-")?;
            let a = c.word(k)?;
            c.expect(")")?;
            terms.push(((b, a), coeff));
            if c.at_end() {
                break;
            }
            c.expect("+")?;
        }
        Ok(ShiftElement::new(k, terms))
    }
}

impl fmt::Display for ShiftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((b, a), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == Scalar::one() {
                write!(f, "Z({b}<-{a})")?;
            } else {
                write!(f, "{c}*Z({b}<-{a})")?;
            }
        }
        Ok(())
    }
}

impl ConvolutionAlgebra for ShiftGroupoid {
    type Element = ShiftElement;

    fn zero(&self) -> ShiftElement {
        ShiftElement { k: self.alphabet(), terms: Vec::new() }
    }

    fn indicator(&self, u: &ShiftBisection) -> ShiftElement {
        ShiftElement::new(self.alphabet(), u.pieces().iter().map(|p| (p.clone(), Scalar::one())))
    }

    fn add(&self, f: &ShiftElement, g: &ShiftElement) -> ShiftElement {
        ShiftElement::new(self.alphabet(), f.terms.iter().chain(&g.terms).cloned())
    }

    fn scale(&self, c: &Scalar, f: &ShiftElement) -> ShiftElement {
        ShiftElement::new(self.alphabet(), f.terms.iter().map(|(p, v)| (p.clone(), c * v)))
    }

    fn mul(&self, f: &ShiftElement, g: &ShiftElement) -> ShiftElement {
        let mut out = Vec::new();
        for ((b, a), x) in &f.terms {
            for ((d, c), y) in &g.terms {
                if let Some(p) = compose_pieces((b, a), (d, c)) {
                    out.push((p, x * y));
                }
            }
        }
        ShiftElement::new(self.alphabet(), out)
    }

    fn adjoint(&self, f: &ShiftElement) -> ShiftElement {
        ShiftElement::new(
            self.alphabet(),
            f.terms.iter().map(|((b, a), v)| ((a.clone(), b.clone()), v.conj())),
        )
    }

    fn cond_expectation(&self, f: &ShiftElement) -> ShiftElement {
        ShiftElement::new(self.alphabet(), f.terms.iter().filter(|((b, a), _)| b == a).cloned())
    }

    fn eval(&self, f: &ShiftElement, g: &ShiftArrow) -> Scalar {
        let mut total = Scalar::zero();
        for ((b, a), v) in &f.terms {
            if ShiftBisection::basic(self.alphabet(), b.clone(), a.clone()).contains_arrow(g) {
                total += v;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisection::shift::tests::arb_bisection;
    use crate::scalar::rat;
    use crate::word::Point;
    use proptest::prelude::*;

    #[test]
    fn canonical_sums() {
        let g = ShiftGroupoid::binary();
        let a = ShiftElement::parse(2, "Z(e<-e)").unwrap();
        let b = ShiftElement::parse(2, "Z(0<-0) + Z(1<-1)").unwrap();
        assert_eq!(a, b);
        assert_eq!(g.one(), a);
        let c = ShiftElement::parse(2, "(2)*Z(0<-0) + (-1)*Z(00<-00)").unwrap();
        assert_eq!(c.to_string(), "Z(00<-00) + (2)*Z(01<-01)");
        assert!(g.is_zero(&g.sub(&a, &b)));
        assert_eq!(ShiftElement::parse(2, "0").unwrap(), g.zero());
        assert!(ShiftElement::parse(2, "Z(2<-0)").is_err());
    }

    #[test]
    fn cuntz_relations() {
        let g = ShiftGroupoid::binary();
        let s0 = ShiftElement::parse(2, "Z(0<-e)").unwrap();
        let s1 = ShiftElement::parse(2, "Z(1<-e)").unwrap();
        let one = g.one();
        assert_eq!(g.mul(&g.adjoint(&s0), &s0), one);
        assert!(g.is_zero(&g.mul(&g.adjoint(&s0), &s1)));
        let sum = g.add(&g.mul(&s0, &g.adjoint(&s0)), &g.mul(&s1, &g.adjoint(&s1)));
        assert_eq!(sum, one);
    }

    #[test]
    fn evaluation_and_expectation() {
        let g = ShiftGroupoid::binary();
        let f = ShiftElement::parse(2, "(1/2+i)*Z(0<-1) + (3)*Z(1<-1)").unwrap();
        let x = Point::new(vec![1], vec![0]).unwrap();
        let y = Point::new(vec![0], vec![0]).unwrap();
        let arrow = ShiftArrow::new(y, 0, x.clone()).unwrap();
        assert_eq!(g.eval(&f, &arrow), Scalar::new(rat(1, 2), rat(1, 1)));
        assert_eq!(g.eval(&f, &ShiftArrow::unit(x)), Scalar::from_int(3));
        assert_eq!(g.cond_expectation(&f), ShiftElement::parse(2, "(3)*Z(1<-1)").unwrap());
        let adj = g.adjoint(&f);
        assert_eq!(adj, ShiftElement::parse(2, "(1/2-i)*Z(1<-0) + (3)*Z(1<-1)").unwrap());
    }

    proptest! {
        #[test]
        fn indicator_is_multiplicative(u in arb_bisection(3), v in arb_bisection(3)) {
            let g = ShiftGroupoid::binary();
            prop_assert_eq!(g.mul(&g.indicator(&u), &g.indicator(&v)), g.indicator(&u.compose(&v)));
            prop_assert_eq!(g.adjoint(&g.indicator(&u)), g.indicator(&u.inverse()));
        }

        #[test]
        fn display_roundtrip(u in arb_bisection(3), re in -3i64..3, im in -3i64..3) {
            let g = ShiftGroupoid::binary();
            let f = g.add(&g.scale(&Scalar::new(rat(re, 2), rat(im, 1)), &g.indicator(&u)), &g.one());
            prop_assert_eq!(ShiftElement::parse(2, &f.to_string()).unwrap(), f);
        }
    }
}

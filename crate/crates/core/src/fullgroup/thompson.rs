//! Thompson's groups: `V = [[G₍₂₎]]` as tables of prefix-code pairs, the
//! piecewise linear picture on `[0, 1)`, and the circle-preserving subgroup `T`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{FullElement, FullGroup};
use crate::bisection::ShiftBisection;
use crate::error::{Error, Result};
use crate::models::ShiftGroupoid;
use crate::scalar::{format_rational, Rational};
use crate::text::Cursor;
use crate::word::Word;

/// An element of `[[G₍ₖ₎]]`: rows `β ← α` pairing two complete prefix codes.
pub type Table = FullElement<ShiftBisection>;

impl Table {
    pub fn from_rows(k: u8, rows: impl IntoIterator<Item = (Word, Word)>) -> Result<Table> {
        let rows: Vec<_> = rows.into_iter().collect();
        let b = ShiftBisection::new(k, rows);
        let model = ShiftGroupoid::new(k)?;
        FullGroup::new(&model).element(b)
    }

    /// Rows `(β, α)` of the reduced table, sorted by `α`.
    pub fn rows(&self) -> &[(Word, Word)] {
        self.bisection().pieces()
    }

    pub fn alphabet(&self) -> u8 {
        self.bisection().alphabet()
    }

    /// Parses `{β<-α, …}` over `k` letters.
    pub fn parse(k: u8, s: &str) -> Result<Table> {
        let mut c = Cursor::new(s);
        c.expect("{")?;
        let mut rows = Vec::new();
        if !c.eat("}") {
            loop {
                let b = c.word(k)?;
                c.expect("<-")?;
                let a = c.word(k)?;
                rows.push((b, a));
                if c.eat("}") {
                    break;
                }
                c.expect(",")?;
            }
        }
        c.finish()?;
        let b = ShiftBisection::new(k, rows.iter().cloned());
        if !b.is_bisection() || b.pieces().len() > rows.len() {
            return Err(Error::NotABisection(s.trim().to_string()));
        }
        Table::from_rows(k, rows)
    }
}

impl fmt::Display for FullElement<ShiftBisection> {
    /// `{0<-00, 10<-01, 11<-1}`; reduced rows sorted by source word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|(b, a)| format!("{b}<-{a}")).collect();
        write!(f, "{{{}}}", rows.join(", "))
    }
}

impl FromStr for FullElement<ShiftBisection> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Table::parse(2, s)
    }
}

/// `ψ(α) = Σ αᵢ 2⁻ⁱ`.
pub fn dyadic(w: &Word) -> Rational {
    let mut x = Rational::zero();
    let mut scale = Rational::one();
    let half = Rational::new(1.into(), 2.into());
    for &c in &w.0 {
        scale *= &half;
        if c == 1 {
            x += &scale;
        }
    }
    x
}

/// `2⁻ⁿ`.
fn width(n: usize) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(2).pow(n as u32))
}

/// One linear piece `[start, end) → [image_start, image_start + slope·(end - start))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlPiece {
    pub start: Rational,
    pub end: Rational,
    pub image_start: Rational,
    pub slope: Rational,
}

impl PlPiece {
    pub fn image_end(&self) -> Rational {
        &self.image_start + &self.slope * (&self.end - &self.start)
    }
}

/// A right-continuous piecewise linear bijection of `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlMap {
    pub pieces: Vec<PlPiece>,
}

impl PlMap {
    pub fn eval(&self, x: &Rational) -> Rational {
        let p = self
            .pieces
            .iter()
            .find(|p| &p.start <= x && x < &p.end)
            .unwrap_or_else(|| panic!("{x} is outside [0, 1)"));
        &p.image_start + &p.slope * (x - &p.start)
    }

    pub fn breakpoints(&self) -> Vec<Rational> {
        self.pieces.iter().map(|p| p.start.clone()).collect()
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.pieces.iter().map(|p| p.slope.clone()).collect()
    }

    /// Pieces are merged when the map continues linearly across a breakpoint.
    pub fn simplified(&self) -> PlMap {
        let mut out: Vec<PlPiece> = Vec::new();
        for p in &self.pieces {
            if let Some(last) = out.last_mut() {
                if last.slope == p.slope && last.image_end() == p.image_start {
                    last.end = p.end.clone();
                    continue;
                }
            }
            out.push(p.clone());
        }
        PlMap { pieces: out }
    }

    /// Number of breakpoints where the image jumps, read on the circle.
    pub fn circle_discontinuities(&self) -> usize {
        let n = self.pieces.len();
        (0..n)
            .filter(|&i| {
                let end = self.pieces[i].image_end();
                let next = &self.pieces[(i + 1) % n].image_start;
                let end = if end == Rational::one() { Rational::zero() } else { end };
                &end != next
            })
            .count()
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "[{}, {}) -> [{}, {}) slope {}",
                format_rational(&p.start),
                format_rational(&p.end),
                format_rational(&p.image_start),
                format_rational(&p.image_end()),
                format_rational(&p.slope)
            )?;
        }
        Ok(())
    }
}

fn require_binary(t: &Table) -> Result<()> {
    if t.alphabet() != 2 {
        return Err(Error::Unsupported("the interval picture needs a binary alphabet".into()));
    }
    Ok(())
}

/// The PL map sending each `I(α)` linearly onto `I(β)`.
pub fn psi_pl(t: &Table) -> Result<PlMap> {
    require_binary(t)?;
    let mut pieces: Vec<PlPiece> = t
        .rows()
        .iter()
        .map(|(b, a)| {
            let start = dyadic(a);
            PlPiece {
                end: &start + width(a.len()),
                start,
                image_start: dyadic(b),
                slope: width(b.len()) / width(a.len()),
            }
        })
        .collect();
    pieces.sort_by(|p, q| p.start.cmp(&q.start));
    Ok(PlMap { pieces })
}

/// Membership in Thompson's `T`: the image intervals, taken in the order
/// of their domains, follow each other around the circle.
///
/// Counting descents in the image sequence is not enough: images
/// `[0,¼), [½,1), [¼,½)` have one descent but two jumps.
pub fn in_thompson_t(t: &Table) -> Result<bool> {
    Ok(psi_pl(t)?.circle_discontinuities() == 0)
}

/// The complement of `ᾱ` as a prefix code listed in circle order,
/// starting just after `I(α)`.
fn complement_arc(alpha: &Word) -> Vec<Word> {
    let a = &alpha.0;
    let mut out = Vec::new();
    for i in (0..a.len()).rev().filter(|&i| a[i] == 0) {
        out.push(Word(a[..i].to_vec()).child(1));
    }
    for i in (0..a.len()).filter(|&i| a[i] == 1) {
        out.push(Word(a[..i].to_vec()).child(0));
    }
    out
}

fn refine_to(mut arc: Vec<Word>, n: usize) -> Vec<Word> {
    while arc.len() < n {
        let last = arc.pop().expect("non-empty arc");
        arc.push(last.child(0));
        arc.push(last.child(1));
    }
    arc
}

/// An element of `T` containing `Z(β, α)`. It maps `I(α)` onto `I(β)` and
/// the complementary arcs onto each other in circle order.
///
/// When exactly one of the words is empty no full bisection contains
/// `Z(β, α)`: its source or its range alone is already the whole space
/// while the other is not. Cover the two halves `Z(βc, αc)` instead.
pub fn t_cover_element(beta: &Word, alpha: &Word) -> Result<Table> {
    match (beta.is_empty(), alpha.is_empty()) {
        (true, true) => return Table::from_rows(2, [(Word::empty(), Word::empty())]),
        (false, false) => {}
        _ => return Err(Error::NotCoverable(format!("Z({beta}<-{alpha})"))),
    }
    let (ca, cb) = (complement_arc(alpha), complement_arc(beta));
    let n = ca.len().max(cb.len());
    let (ca, cb) = (refine_to(ca, n), refine_to(cb, n));
    let rows = std::iter::once((beta.clone(), alpha.clone())).chain(cb.into_iter().zip(ca));
    Table::from_rows(2, rows)
}

/// Elements of `T` covering `Z(β, α)`: one if possible, otherwise one for each
/// half `Z(βc, αc)`.
pub fn t_cover_parts(beta: &Word, alpha: &Word) -> Vec<Table> {
    match t_cover_element(beta, alpha) {
        Ok(t) => vec![t],
        Err(_) => (0..2)
            .flat_map(|c| t_cover_parts(&beta.child(c), &alpha.child(c)))
            .collect(),
    }
}

/// The standard generators `A`, `B`, `C` of `T`.
pub fn thompson_t_generators() -> Vec<Table> {
    ["{00<-0, 01<-10, 1<-11}", "{0<-0, 100<-10, 101<-110, 11<-111}", "{11<-0, 0<-10, 10<-11}"]
        .iter()
        .map(|s| s.parse().expect("valid generator"))
        .collect()
}

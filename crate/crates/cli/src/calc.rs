//! Element calculators for the shift model: tables of `V`, bisections and
//! elements of the convolution algebra, all printed in canonical form.

use ample::fullgroup::thompson::{in_thompson_t, psi_pl, Table};
use ample::fullgroup::{FullGroup, Order};
use ample::scalar::format_rational;
use ample::starconv::{ConvolutionAlgebra, ShiftElement};
use ample::{AmpleGroupoid, ShiftBisection, ShiftGroupoid, Word};
use clap::ValueEnum;
use serde_json::json;

use crate::{check_depth, CliError, CliResult, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CalcOp {
    /// Product of tables, left to right: `mul A B` is `A·B` (B acts first).
    Mul,
    /// Inverse of a table.
    Inv,
    /// `pow A n`.
    Pow,
    /// Order of a table, up to `--cap`.
    Order,
    /// Breakpoints and slopes of the PL map of a binary table.
    Psi,
    /// Whether a binary table lies in Thompson's group T.
    InT,
    /// Canonical form of a table.
    Reduce,
    /// Product of bisections `Z(b<-a)+…`.
    Compose,
    /// Inverse of a bisection.
    Invert,
    /// Convolution product of algebra elements.
    Conv,
    /// Sum of algebra elements.
    Add,
    /// The involution `f*`.
    Adjoint,
    /// Conditional expectation onto the unit space.
    Expect,
    /// Canonical form of an algebra element.
    Canon,
}

impl CalcOp {
    fn arity(self) -> (usize, Option<usize>) {
        match self {
            CalcOp::Mul | CalcOp::Compose | CalcOp::Conv | CalcOp::Add => (1, None),
            CalcOp::Pow => (2, Some(2)),
            _ => (1, Some(1)),
        }
    }

    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

pub struct Calculator {
    pub k: u8,
    pub ceiling: usize,
    pub cap: usize,
}

fn max_len<'a>(words: impl IntoIterator<Item = &'a Word>) -> usize {
    words.into_iter().map(Word::len).max().unwrap_or(0)
}

impl Calculator {
    fn model(&self) -> CliResult<ShiftGroupoid> {
        Ok(ShiftGroupoid::new(self.k)?)
    }

    fn guard(&self, depth: usize) -> CliResult<()> {
        check_depth(depth, self.ceiling)
    }

    fn table(&self, s: &str) -> CliResult<Table> {
        let t = Table::parse(self.k, s)?;
        self.guard(max_len(t.rows().iter().flat_map(|(b, a)| [b, a])))?;
        Ok(t)
    }

    fn bisection(&self, s: &str) -> CliResult<ShiftBisection> {
        let b = ShiftBisection::parse(self.k, s)?;
        self.guard(max_len(b.pieces().iter().flat_map(|(b, a)| [b, a])))?;
        Ok(b)
    }

    fn element(&self, s: &str) -> CliResult<ShiftElement> {
        let f = ShiftElement::parse(self.k, s)?;
        self.guard_element(&f)?;
        Ok(f)
    }

    fn guard_element(&self, f: &ShiftElement) -> CliResult<()> {
        self.guard(max_len(f.terms().iter().flat_map(|((b, a), _)| [b, a])))
    }

    pub fn run(&self, op: CalcOp, args: &[String]) -> CliResult<Output> {
        let (lo, hi) = op.arity();
        if args.len() < lo || hi.is_some_and(|h| args.len() > h) {
            let want = match hi {
                Some(h) if h == lo => format!("{lo}"),
                Some(h) => format!("{lo} to {h}"),
                None => format!("at least {lo}"),
            };
            return Err(CliError::Usage(format!("{} takes {want} operand(s), got {}", op.name(), args.len())));
        }
        let model = self.model()?;
        let group = FullGroup::new(&model);
        let (text, extra) = match op {
            CalcOp::Mul => {
                let mut acc = self.table(&args[0])?;
                for a in &args[1..] {
                    acc = group.mul(&acc, &self.table(a)?);
                }
                (acc.to_string(), json!({}))
            }
            CalcOp::Inv => (group.inv(&self.table(&args[0])?).to_string(), json!({})),
            CalcOp::Pow => {
                let n: usize =
                    args[1].parse().map_err(|_| CliError::Usage(format!("exponent {:?} is not a natural number", args[1])))?;
                (group.pow(&self.table(&args[0])?, n).to_string(), json!({}))
            }
            CalcOp::Order => {
                let t = self.table(&args[0])?;
                match group.order(&t, self.cap) {
                    Order::Finite(n) => (format!("order {n}"), json!({ "order": n })),
                    Order::ExceedsCap(c) => (format!("order > {c}"), json!({ "order": null, "cap": c })),
                }
            }
            CalcOp::Psi => {
                let map = psi_pl(&self.table(&args[0])?)?.simplified();
                let breaks: Vec<String> = map.breakpoints().iter().map(format_rational).collect();
                let slopes: Vec<String> = map.slopes().iter().map(format_rational).collect();
                let text = format!("{map}\nbreakpoints: {}\nslopes: {}", breaks.join(", "), slopes.join(", "));
                (text, json!({ "breakpoints": breaks, "slopes": slopes }))
            }
            CalcOp::InT => {
                let yes = in_thompson_t(&self.table(&args[0])?)?;
                (if yes { "in T" } else { "not in T" }.to_string(), json!({ "in_t": yes }))
            }
            CalcOp::Reduce => (self.table(&args[0])?.to_string(), json!({})),
            CalcOp::Compose => {
                let mut acc = self.bisection(&args[0])?;
                for a in &args[1..] {
                    acc = model.compose(&acc, &self.bisection(a)?);
                }
                (acc.to_string(), json!({}))
            }
            CalcOp::Invert => (model.invert(&self.bisection(&args[0])?).to_string(), json!({})),
            CalcOp::Conv | CalcOp::Add => {
                let mut acc = self.element(&args[0])?;
                for a in &args[1..] {
                    let g = self.element(a)?;
                    acc = if op == CalcOp::Conv { model.mul(&acc, &g) } else { model.add(&acc, &g) };
                    self.guard_element(&acc)?;
                }
                (acc.to_string(), json!({}))
            }
            CalcOp::Adjoint => (model.adjoint(&self.element(&args[0])?).to_string(), json!({})),
            CalcOp::Expect => (model.cond_expectation(&self.element(&args[0])?).to_string(), json!({})),
            CalcOp::Canon => (self.element(&args[0])?.to_string(), json!({})),
        };
        let mut obj = json!({
            "schema": "ample.calc/1",
            "op": op.name(),
            "alphabet": self.k,
            "args": args,
            "result": text,
        });
        if let (Some(o), Some(e)) = (obj.as_object_mut(), extra.as_object()) {
            o.extend(e.clone());
        }
        Ok(Output { text, json: obj, success: true })
    }
}

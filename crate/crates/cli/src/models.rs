//! Model identifiers accepted by `--model`.

use std::fmt;

use ample::measures::folner::cyclic_groupoid;
use ample::{CompactifiedZGroupoid, FiniteGroupoid, ShiftGroupoid, ZAction};

use crate::{CliError, CliResult};

#[derive(Clone, Debug)]
pub enum Model {
    Shift(ShiftGroupoid),
    Finite(FiniteGroupoid),
    Compact(CompactifiedZGroupoid),
}

/// A parsed `--model` value together with the name it was given.
#[derive(Clone, Debug)]
pub struct NamedModel {
    pub name: String,
    pub model: Model,
}

impl fmt::Display for NamedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

pub const MODEL_HELP: &str = "shift, shiftK (K = 2..9), pairN, cyclicN, H-restriction (alias half-line), \
translation, dihedral, signflip, or a path to a finite groupoid in JSON";

fn suffix_number(s: &str, prefix: &str) -> Option<usize> {
    s.strip_prefix(prefix).filter(|r| !r.is_empty()).and_then(|r| r.parse().ok())
}

pub fn parse_model(s: &str) -> CliResult<NamedModel> {
    let name = s.to_string();
    let model = match s {
        "shift" => Model::Shift(ShiftGroupoid::binary()),
        "H-restriction" | "half-line" => Model::Compact(CompactifiedZGroupoid::half_line()),
        "translation" => Model::Compact(CompactifiedZGroupoid::new(ZAction::Translation)),
        "dihedral" => Model::Compact(CompactifiedZGroupoid::new(ZAction::Dihedral)),
        "signflip" => Model::Compact(CompactifiedZGroupoid::new(ZAction::SignFlip)),
        _ if s.ends_with(".json") => {
            let text = std::fs::read_to_string(s).map_err(|e| CliError::Usage(format!("cannot read {s}: {e}")))?;
            Model::Finite(FiniteGroupoid::from_json(&text)?)
        }
        _ => {
            if let Some(k) = suffix_number(s, "shift") {
                let k = u8::try_from(k).map_err(|_| CliError::Usage(format!("alphabet too large in {s}")))?;
                Model::Shift(ShiftGroupoid::new(k)?)
            } else if let Some(n) = suffix_number(s, "pair") {
                check_size(s, n)?;
                Model::Finite(FiniteGroupoid::pair(n)?)
            } else if let Some(n) = suffix_number(s, "cyclic") {
                check_size(s, n)?;
                Model::Finite(cyclic_groupoid(n))
            } else {
                return Err(CliError::Usage(format!("unknown model {s:?}; expected one of: {MODEL_HELP}")));
            }
        }
    };
    Ok(NamedModel { name, model })
}

fn check_size(s: &str, n: usize) -> CliResult<()> {
    if !(1..=12).contains(&n) {
        return Err(CliError::Usage(format!("{s}: size must be between 1 and 12")));
    }
    Ok(())
}

pub fn parse_finite(s: &str) -> CliResult<(String, FiniteGroupoid)> {
    match parse_model(s)?.model {
        Model::Finite(g) => Ok((s.to_string(), g)),
        _ => Err(CliError::Usage(format!("{s} is not a finite model"))),
    }
}

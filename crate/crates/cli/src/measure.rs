//! `ample measure`: invariant probability measures or Farkas certificates.

use ample::measures::{invariant_measure_feasible, verify_report, Feasibility, FeasibilityReport, MeasureModel};
use ample::scalar::{format_rational, Rational};
use ample::{ExtInt, Word};
use num_traits::Zero;
use serde_json::json;

use crate::models::{Model, NamedModel};
use crate::{check_depth, CliResult, Output};

/// Depth used when `--depth` is absent.
pub fn default_depth(model: &Model) -> usize {
    match model {
        Model::Shift(_) => 1,
        Model::Finite(_) => 0,
        Model::Compact(_) => 3,
    }
}

pub fn run_measure(m: &NamedModel, depth: Option<usize>, ceiling: usize) -> CliResult<Output> {
    let depth = depth.unwrap_or_else(|| default_depth(&m.model));
    check_depth(depth, ceiling)?;
    match &m.model {
        Model::Finite(g) => {
            let labels: Vec<String> = (0..g.unit_count()).map(|x| g.label(g.unit_arrow(x)).to_string()).collect();
            render(&m.name, g, depth, |mu| {
                let masses = labels.iter().cloned().zip(mu.0.iter().cloned()).collect();
                (masses, None)
            })
        }
        Model::Shift(g) => render(&m.name, g, depth, |mu| {
            let masses = mu
                .weights
                .iter()
                .filter(|(w, _)| w.len() == depth)
                .map(|(w, q): (&Word, &Rational)| (format!("[{w}]"), q.clone()))
                .collect();
            (masses, None)
        }),
        Model::Compact(g) => {
            let one_point = g.action().one_point();
            render(&m.name, g, depth, move |mu| {
                let ends = if one_point {
                    format!("on the point at infinity: {}", format_rational(&mu.mass_at(ExtInt::PosInf)))
                } else {
                    format!(
                        "on the tail containing +∞: {}; on the tail containing -∞: {}",
                        format_rational(&mu.mass_at(ExtInt::PosInf)),
                        format_rational(&mu.mass_at(ExtInt::NegInf))
                    )
                };
                (mu.named_atoms(), Some(ends))
            })
        }
    }
}

type Describe = (Vec<(String, Rational)>, Option<String>);

fn render<G: MeasureModel>(
    name: &str,
    model: &G,
    depth: usize,
    describe: impl Fn(&G::Measure) -> Describe,
) -> CliResult<Output> {
    let report: FeasibilityReport<G::Measure> = invariant_measure_feasible(model, depth)?;
    let verified = verify_report(model, &report)?;
    let method = serde_json::to_value(report.method).expect("serialisable");
    let method_name = method.as_str().unwrap_or_default().to_string();
    let size = format!(
        "method {method_name}, {} constraints, {} variables",
        report.problem.constraints.len(),
        report.problem.var_count()
    );
    let mut text = vec![format!("model {name}, depth {depth}")];
    let mut obj = json!({
        "schema": "ample.measure/1",
        "model": name,
        "depth": depth,
        "method": method,
        "verified": verified,
        "problem": report.problem,
    });
    match &report.verdict {
        Feasibility::Feasible(mu) => {
            let (masses, ends) = describe(mu);
            text.push(format!("FEASIBLE: invariant probability measure ({size})"));
            for (atom, q) in masses.iter().filter(|(_, q)| !q.is_zero()) {
                text.push(format!("  mu({atom}) = {}", format_rational(q)));
            }
            if let Some(e) = &ends {
                text.push(format!("  mass {e}"));
            }
            obj["verdict"] = json!("feasible");
            obj["measure"] = masses.iter().map(|(a, q)| json!({ "atom": a, "mass": format_rational(q) })).collect();
            obj["certificate"] = serde_json::Value::Null;
        }
        Feasibility::Infeasible(y) => {
            text.push(format!("INFEASIBLE: no invariant probability measure ({size})"));
            text.push("certificate: the combination below has non-negative coefficients and negative right-hand side".into());
            for line in report.certificate_lines() {
                text.push(format!("  {line}"));
            }
            obj["verdict"] = json!("infeasible");
            obj["measure"] = serde_json::Value::Null;
            obj["certificate"] = report
                .problem
                .constraints
                .iter()
                .zip(y)
                .filter(|(_, w)| !w.is_zero())
                .map(|(c, w)| json!({ "constraint": c.label, "multiplier": format_rational(w) }))
                .collect();
        }
    }
    text.push(format!("verified: {}", if verified { "yes" } else { "NO" }));
    Ok(Output { text: text.join("\n"), json: obj, success: verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::parse_model;

    fn run(model: &str, depth: Option<usize>) -> Output {
        run_measure(&parse_model(model).unwrap(), depth, 8).unwrap()
    }

    #[test]
    fn shift_is_infeasible() {
        let out = run("shift", Some(1));
        assert!(out.text.contains("INFEASIBLE"), "{}", out.text);
        assert!(out.success);
        assert_eq!(out.json["verdict"], "infeasible");
    }

    #[test]
    fn pair_groupoid_is_uniform() {
        let out = run("pair3", None);
        assert!(out.text.contains("FEASIBLE"));
        assert_eq!(out.text.matches("= 1/3").count(), 3, "{}", out.text);
    }

    #[test]
    fn half_line_concentrates_at_infinity() {
        let out = run("H-restriction", None);
        assert!(out.text.contains("on the tail containing +∞: 1"), "{}", out.text);
    }

    #[test]
    fn depth_ceiling() {
        assert!(run_measure(&parse_model("shift").unwrap(), Some(9), 8).is_err());
    }
}

//! `ample verify`: seeded verification suites, one per result being checked.
//! Failures carry inputs in the text grammars so they can be replayed.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use ample::fullgroup::enumerate::FullGroupWalker;
use ample::fullgroup::finite::{cover_element_finite, FiniteFull};
use ample::fullgroup::thompson::{in_thompson_t, t_cover_element, t_cover_parts};
use ample::fullgroup::{FullGroup, Order};
use ample::measures::folner::{cyclic_groupoid, cyclic_translation, folner_certificate};
use ample::measures::trace::trace_balances_bisections;
use ample::measures::{invariant_measure_feasible, measure_from_trace, trace_from_measure, verify_report, Feasibility};
use ample::sampling::{random_finite_groupoid, random_full_element_finite, random_table, tec_triple_compact, tec_triple_finite, tec_triple_shift};
use ample::scalar::{format_rational, rat};
use ample::starconv::finite::{find_l_for_duv, hereditary_check, span_membership_finite, star_subalgebra_violation, subalgebra_closure, DuvCase, FiniteElement, Hereditary};
use ample::starconv::linalg::{Membership, Span};
use ample::starconv::{duv_ring_identity, verify_tec, ConvolutionAlgebra};
use ample::{
    AmpleGroupoid, CompactifiedZGroupoid, ExtInt, ExtZSet, FiniteGroupoid, Scalar, ShiftBisection, ShiftGroupoid, Word,
    ZAction, ZGroupElem,
};
use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::models::parse_finite;
use crate::{check_depth, CliError, CliResult};

pub const SCHEMA: &str = "ample.suite/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    /// The identity for (1 - 1_S)1_W(1 - 1_T) on seeded admissible triples.
    Tec,
    /// The two-term expansion of 1 - 1_U through an auxiliary L.
    Duv,
    /// Every arrow of a finite groupoid lies in a full-group element.
    Cuida,
    /// Elements of Thompson's group T covering the basic bisections.
    TCovers,
    /// No enumerated element of the full group of H contains (1, +∞).
    Cor,
    /// Conditional expectations of 1 - π(U) agree at ±∞ in the dihedral model.
    Dihedral,
    /// Every enumerated lift of the flip has large order.
    Nonsplit,
    /// Invariant measures and tracial states determine each other.
    PutnamRoundtrip,
    /// The algebra generated by 1 - π(U) is hereditary.
    ImpFinite,
    /// A tracial state exists and π([[G]]) generates a proper subalgebra.
    MainFinite,
    /// Følner sets on cyclic groups meet the combinatorial bound.
    AmenFolner,
    /// span{1 - π(U)} is a *-subalgebra and membership of 1 is decided.
    BonitinhoFinite,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub n: Option<usize>,
    pub tail: Option<usize>,
    pub depth: Option<usize>,
    pub model: Option<String>,
    pub ceiling: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub schema: &'static str,
    pub suite: String,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub wall_seconds: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Everything except the wall time, which is the only non-deterministic field.
    pub fn same_outcome(&self, other: &SuiteResult) -> bool {
        SuiteResult { wall_seconds: 0.0, ..self.clone() } == SuiteResult { wall_seconds: 0.0, ..other.clone() }
    }

    pub fn render_text(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut lines = vec![format!(
            "suite {} [{}] seed {} ({}): {} cases, {} failures, {:.2} s",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.seed,
            params.join(", "),
            self.cases,
            self.failures.len(),
            self.wall_seconds
        )];
        lines.extend(self.notes.iter().map(|n| format!("  {n}")));
        for f in &self.failures {
            lines.push(format!("  failure: {}", f.reason));
            lines.push(format!("    input: {}", f.input));
        }
        lines.join("\n")
    }
}

/// Collects cases and failures; only the first few failures are kept.
struct Run {
    cases: usize,
    failures: Vec<Failure>,
    failed: usize,
    notes: Vec<String>,
    params: BTreeMap<String, String>,
}

const KEPT_FAILURES: usize = 20;

impl Run {
    fn new() -> Self {
        Run { cases: 0, failures: Vec::new(), failed: 0, notes: Vec::new(), params: BTreeMap::new() }
    }

    fn param(&mut self, k: &str, v: impl ToString) {
        self.params.insert(k.to_string(), v.to_string());
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Counts one case; `input` and `reason` are only built on failure.
    fn check(&mut self, ok: bool, input: impl FnOnce() -> String, reason: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(Failure { input: input(), reason: reason() });
            }
        }
        ok
    }

    fn fail(&mut self, input: impl FnOnce() -> String, reason: impl FnOnce() -> String) {
        self.check(false, input, reason);
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> CliResult<SuiteResult> {
    if let Some(d) = opts.depth {
        check_depth(d, opts.ceiling)?;
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut run = Run::new();
    match suite {
        Suite::Tec => tec(&mut run, &mut rng, opts)?,
        Suite::Duv => duv(&mut run, &mut rng, opts),
        Suite::Cuida => cuida(&mut run, &mut rng, opts)?,
        Suite::TCovers => t_covers(&mut run, opts)?,
        Suite::Cor => cor(&mut run, opts),
        Suite::Dihedral => dihedral(&mut run, opts),
        Suite::Nonsplit => nonsplit(&mut run, opts),
        Suite::PutnamRoundtrip => putnam_roundtrip(&mut run, &mut rng, opts)?,
        Suite::ImpFinite => imp_finite(&mut run, &mut rng, opts)?,
        Suite::MainFinite => main_finite(&mut run, &mut rng, opts)?,
        Suite::AmenFolner => amen_folner(&mut run, &mut rng, opts)?,
        Suite::BonitinhoFinite => bonitinho_finite(&mut run, &mut rng, opts)?,
    }
    if run.failed > run.failures.len() {
        let extra = run.failed - run.failures.len();
        run.note(format!("{extra} further failures not listed"));
    }
    Ok(SuiteResult {
        schema: SCHEMA,
        suite: suite.name(),
        seed: opts.seed,
        params: run.params,
        cases: run.cases,
        failures: run.failures,
        notes: run.notes,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

fn err_string(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn finite_set(g: &FiniteGroupoid, w: &BTreeSet<usize>) -> String {
    let labels: Vec<&str> = w.iter().map(|&x| g.label(g.unit_arrow(x))).collect();
    format!("{{{}}}", labels.join(", "))
}

fn finite_full(g: &FiniteGroupoid, u: &FiniteFull) -> String {
    g.describe(u.bisection())
}

/// Seeded finite groupoids with every orbit of size at least `min_orbit`.
fn groupoids_with_orbits(rng: &mut ChaCha8Rng, max_units: usize, min_orbit: usize) -> FiniteGroupoid {
    loop {
        let g = random_finite_groupoid(rng, max_units);
        if g.min_orbit_size() >= min_orbit {
            return g;
        }
    }
}

/// `|[[G]]|` for a finite groupoid: per orbit, `|O|!·|isotropy|^|O|`.
fn full_group_size(g: &FiniteGroupoid) -> u128 {
    g.orbits()
        .iter()
        .map(|o| {
            let x = *o.iter().next().expect("orbits are non-empty");
            let iso = g.arrows_from(x).filter(|&a| g.arrow_range(a) == x).count() as u128;
            let n = o.len() as u32;
            (1..=u128::from(n)).product::<u128>().saturating_mul(iso.saturating_pow(n))
        })
        .fold(1u128, u128::saturating_mul)
}

/// Models from `--model`, or the named defaults plus `n` seeded groupoids
/// whose full groups stay small enough to enumerate.
fn finite_models(
    rng: &mut ChaCha8Rng,
    opts: &SuiteOptions,
    defaults: &[&str],
    random: usize,
    min_orbit: usize,
) -> CliResult<Vec<(String, FiniteGroupoid)>> {
    if let Some(m) = &opts.model {
        return Ok(vec![parse_finite(m)?]);
    }
    let mut out = defaults.iter().map(|m| parse_finite(m)).collect::<CliResult<Vec<_>>>()?;
    let mut i = 0;
    while out.len() < defaults.len() + random {
        let g = groupoids_with_orbits(rng, 6, min_orbit);
        if full_group_size(&g) <= 2000 {
            out.push((format!("random#{i} {}", g.to_json()), g));
            i += 1;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

fn tec(run: &mut Run, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> CliResult<()> {
    let n = opts.n.unwrap_or(100);
    let which = opts.model.clone().unwrap_or_else(|| "all".into());
    let models: Vec<&str> = match which.as_str() {
        "all" => vec!["shift", "finite", "dihedral"],
        "shift" | "finite" | "dihedral" => vec![which.as_str()],
        other => return Err(CliError::Usage(format!("tec runs on shift, finite, dihedral or all, not {other:?}"))),
    };
    let tail = opts.tail.unwrap_or(1);
    run.param("n", n);
    run.param("model", &which);
    run.param("tail", tail);
    for m in models {
        let mut nonzero = 0;
        match m {
            "shift" => {
                let shift = ShiftGroupoid::binary();
                for _ in 0..n {
                    let Some((s, t, w)) = tec_triple_shift(rng, &shift) else {
                        run.fail(|| "shift".into(), || "no admissible triple found".into());
                        continue;
                    };
                    let input = || format!("shift S={s} T={t} W={w}");
                    match verify_tec(&shift, &s, &t, &w) {
                        Ok(tr) => {
                            nonzero += usize::from(!shift.is_zero(&tr.lhs));
                            run.check(tr.holds(), input, || format!("sides differ: {} vs {}", tr.lhs, tr.rhs));
                        }
                        Err(e) => run.fail(input, || err_string(e)),
                    }
                }
            }
            "finite" => {
                for _ in 0..n {
                    let g = groupoids_with_orbits(rng, 8, 3);
                    let Some((s, t, w)) = tec_triple_finite(rng, &g) else {
                        run.fail(|| g.to_json(), || "no admissible triple found".into());
                        continue;
                    };
                    let input = || {
                        format!("finite {} S={} T={} W={}", g.to_json(), finite_full(&g, &s), finite_full(&g, &t), finite_set(&g, &w))
                    };
                    match verify_tec(&g, &s, &t, &w) {
                        Ok(tr) => {
                            nonzero += usize::from(!g.is_zero(&tr.lhs));
                            run.check(tr.holds(), input, || "sides differ".into());
                        }
                        Err(e) => run.fail(input, || err_string(e)),
                    }
                }
            }
            _ => {
                let d = CompactifiedZGroupoid::new(ZAction::Dihedral);
                let pool: Vec<_> = FullGroupWalker::new(&d, tail).collect();
                for _ in 0..n {
                    let Some((s, t, w)) = tec_triple_compact(rng, &d, &pool) else {
                        run.fail(|| "dihedral".into(), || "no admissible triple found".into());
                        continue;
                    };
                    let input = || format!("dihedral S={} T={} W={w}", s.bisection(), t.bisection());
                    match verify_tec(&d, &s, &t, &w) {
                        Ok(tr) => {
                            nonzero += usize::from(!d.is_zero(&tr.lhs));
                            run.check(tr.holds(), input, || format!("sides differ: {} vs {}", tr.lhs, tr.rhs));
                        }
                        Err(e) => run.fail(input, || err_string(e)),
                    }
                }
            }
        }
        run.note(format!("{m}: {n} triples, {nonzero} with a non-zero product"));
    }
    Ok(())
}

fn duv(run: &mut Run, rng: &mut ChaCha8Rng, opts: &SuiteOptions) {
    let n = opts.n.unwrap_or(100);
    let depth = opts.depth.unwrap_or(3);
    run.param("n", n);
    run.param("depth", depth);
    let shift = ShiftGroupoid::binary();
    for _ in 0..n {
        let u = random_table(rng, 2, depth);
        let l = random_table(rng, 2, depth);
        run.check(duv_ring_identity(&shift, &u, &l), || format!("shift U={u} L={l}"), || "identity fails".into());
    }
    let (mut fixes, mut moves) = (0, 0);
    for _ in 0..n {
        let g = groupoids_with_orbits(rng, 8, 2);
        let u = random_full_element_finite(rng, &g);
        let x = rng.gen_range(0..g.unit_count());
        let others: Vec<usize> = g.orbit(x).into_iter().filter(|&y| y != x).collect();
        let y = *others.choose(rng).expect("orbits have at least two points");
        let input = || format!("finite {} U={} x={x} y={y}", g.to_json(), finite_full(&g, &u));
        match find_l_for_duv(&g, &u, x, y) {
            Ok((l, case)) => {
                let group = FullGroup::new(&g);
                let at = |v: &FiniteFull, p: usize| g.theta_point(v.bisection(), p).expect("full");
                let lu = group.mul(&l, &u);
                let case_ok = match case {
                    DuvCase::FixesX => {
                        fixes += 1;
                        at(&u, x) == x && at(&lu, x) == y
                    }
                    DuvCase::MovesX => {
                        moves += 1;
                        at(&u, x) != x && at(&l, x) == x && at(&lu, x) == y
                    }
                };
                run.check(case_ok && duv_ring_identity(&g, &u, &l), input, || format!("L={} fails", finite_full(&g, &l)));
            }
            Err(e) => run.fail(input, || err_string(e)),
        }
    }
    run.note(format!("shift: {n} pairs of depth {depth}; finite: {fixes} with θ_U(x) = x, {moves} moving x"));
}

fn cuida(run: &mut Run, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> CliResult<()> {
    let models = match &opts.model {
        Some(m) => vec![parse_finite(m)?.1],
        None => {
            let n = opts.n.unwrap_or(200);
            run.param("n", n);
            (0..n).map(|_| random_finite_groupoid(rng, 8)).collect()
        }
    };
    for g in &models {
        for a in 0..g.arrow_count() {
            let input = || format!("{} arrow {}", g.to_json(), g.label(a));
            match cover_element_finite(g, a) {
                Ok(u) => {
                    let ok = u.bisection().arrows().contains(&a) && g.is_full(u.bisection());
                    run.check(ok, input, || format!("{} does not contain the arrow", finite_full(g, &u)));
                }
                Err(e) => run.fail(input, || err_string(e)),
            }
        }
    }
    run.note(format!("{} groupoids, {} arrows covered", models.len(), run.cases - run.failed));
    Ok(())
}

fn t_covers(run: &mut Run, opts: &SuiteOptions) -> CliResult<()> {
    let depth = opts.depth.unwrap_or(4);
    check_depth(depth, opts.ceiling)?;
    run.param("depth", depth);
    let model = ShiftGroupoid::binary();
    let words = Word::all_up_to(2, depth);
    let (mut single, mut split) = (0, 0);
    for b in &words {
        for a in &words {
            let z = ShiftBisection::basic(2, b.clone(), a.clone());
            let input = || format!("Z({b}<-{a})");
            if b.is_empty() != a.is_empty() {
                // a full bisection cannot contain Z(e<-a) with a ≠ e; cover the halves
                let parts = t_cover_parts(b, a);
                let mut rest = z.clone();
                let mut ok = t_cover_element(b, a).is_err();
                for p in &parts {
                    ok &= in_thompson_t(p).unwrap_or(false);
                    rest = rest.difference(&rest.intersection(p.bisection()));
                }
                split += 1;
                run.check(ok && rest.is_empty(), input, || "halves are not covered inside T".into());
                continue;
            }
            match t_cover_element(b, a) {
                Ok(t) => {
                    single += 1;
                    let ok = in_thompson_t(&t).unwrap_or(false) && model.is_sub_bisection(&z, t.bisection());
                    run.check(ok, input, || format!("{t} is not a covering element of T"));
                }
                Err(e) => run.fail(input, || err_string(e)),
            }
        }
    }
    run.note(format!("{single} basic bisections inside one element of T; {split} with one empty word covered by two"));
    Ok(())
}

fn cor(run: &mut Run, opts: &SuiteOptions) {
    let tail = opts.tail.unwrap_or(5);
    run.param("tail", tail);
    let h = CompactifiedZGroupoid::half_line();
    let one = ZGroupElem::translation(1);
    let mut walker = FullGroupWalker::new(&h, tail);
    while let Some(a) = walker.next_assignment() {
        let ok = a.element_at(ExtInt::PosInf) != Some(one);
        run.check(ok, || a.to_bisection().to_string(), || "contains (1, +∞)".into());
    }
    run.note(format!("{} elements of the full group of H with tail bound {tail}; none contains (1, +∞)", run.cases));
}

fn dihedral(run: &mut Run, opts: &SuiteOptions) {
    let tail = opts.tail.unwrap_or(4);
    run.param("tail", tail);
    let d = CompactifiedZGroupoid::new(ZAction::Dihedral);
    let e = ZGroupElem::IDENTITY;
    let mut walker = FullGroupWalker::new(&d, tail);
    while let Some(a) = walker.next_assignment() {
        let plus = a.element_at(ExtInt::PosInf) == Some(e);
        let minus = a.element_at(ExtInt::NegInf) == Some(e);
        run.check(plus == minus, || a.to_bisection().to_string(), || "E(1 - π(U)) differs at +∞ and -∞".into());
    }
    let enumerated = run.cases;
    // the algebra computation itself, on a smaller bound
    for u in FullGroupWalker::new(&d, tail.min(2)) {
        let f = d.cond_expectation(&d.one_minus(&u));
        let ok = d.eval(&f, &(e, ExtInt::PosInf)) == d.eval(&f, &(e, ExtInt::NegInf));
        run.check(ok, || u.bisection().to_string(), || "E(1 - π(U)) differs at the ends".into());
    }
    run.note(format!(
        "{enumerated} elements with tail bound {tail}; {} re-checked in the algebra",
        run.cases - enumerated
    ));
}

fn nonsplit(run: &mut Run, opts: &SuiteOptions) {
    let tail = opts.tail.unwrap_or(3);
    let cap = opts.n.unwrap_or(10);
    run.param("tail", tail);
    run.param("n", cap);
    let s = CompactifiedZGroupoid::new(ZAction::SignFlip);
    // θ_U is the flip exactly when 0 is fixed and every other atom moves by an odd element
    let lift = |a: &ExtZSet, g: ZGroupElem| *a == ExtZSet::singleton(0) || g.shift % 2 != 0;
    let mut walker = FullGroupWalker::new(&s, tail).with_filter(lift);
    while let Some(a) = walker.next_assignment() {
        let ok = a.order(cap) == Order::ExceedsCap(cap);
        run.check(ok, || a.to_bisection().to_string(), || format!("order at most {cap}"));
    }
    run.note(format!("{} lifts of the flip with tail bound {tail}; all of order > {cap}", run.cases));
}

fn putnam_roundtrip(run: &mut Run, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> CliResult<()> {
    if opts.model.as_deref() == Some("shift") {
        let depth = opts.depth.unwrap_or(3);
        run.param("model", "shift");
        run.param("depth", depth);
        let model = ShiftGroupoid::binary();
        for d in 1..=depth {
            let r = invariant_measure_feasible(&model, d)?;
            let ok = !r.is_feasible() && verify_report(&model, &r)?;
            run.check(ok, || format!("shift depth {d}"), || "expected a verified certificate".into());
        }
        run.note(format!("shift: no invariant measure at depths 1..{depth}, so no tracial state"));
        return Ok(());
    }
    let n = opts.n.unwrap_or(20);
    run.param("n", n);
    if let Some(m) = &opts.model {
        run.param("model", m);
    }
    let models = finite_models(rng, opts, &["pair3", "pair4", "cyclic3", "cyclic4"], n, 1)?;
    for (name, g) in &models {
        let input = || name.clone();
        let r = invariant_measure_feasible(g, 0)?;
        let Feasibility::Feasible(mu) = &r.verdict else {
            run.fail(input, || "no invariant measure".into());
            continue;
        };
        match trace_from_measure(g, mu) {
            Ok(tau) => {
                let back = measure_from_trace(g, &tau).map(|m| m == *mu).unwrap_or(false);
                let ok = trace_balances_bisections(g, &tau) && back;
                run.check(ok, input, || "τ(1_r(U)) = τ(1_s(U)) or the roundtrip fails".into());
            }
            Err(e) => run.fail(input, || err_string(e)),
        }
    }
    run.note(format!("{} finite models: μ ↦ τ ↦ μ closes and τ balances bisections", models.len()));
    Ok(())
}

fn closure_of_one_minus_pi(g: &FiniteGroupoid) -> Vec<FiniteElement> {
    subalgebra_closure(g, &g.one_minus_pi_generators())
}

fn imp_finite(run: &mut Run, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> CliResult<()> {
    let n = opts.n.unwrap_or(if opts.model.is_some() { 0 } else { 4 });
    if let Some(m) = &opts.model {
        run.param("model", m);
    } else {
        run.param("n", n);
    }
    let models = finite_models(rng, opts, &["pair3", "pair4", "cyclic3"], n, 3)?;
    for (name, g) in &models {
        let b = closure_of_one_minus_pi(g);
        let small = g.min_orbit_size() < 3;
        match hereditary_check(g, &b) {
            Ok(Hereditary::Yes) => {
                run.check(true, String::new, String::new);
                run.note(format!("{}: B dim {}, hereditary", short(name), b.len()));
            }
            Ok(Hereditary::No { b: i, arrow, b2 }) if small => {
                run.cases += 1;
                run.note(format!(
                    "{}: B dim {}, not hereditary (b{i}·δ_{}·b{b2} escapes); an orbit has fewer than 3 points",
                    short(name),
                    b.len(),
                    g.label(arrow)
                ));
            }
            Ok(Hereditary::No { b: i, arrow, b2 }) => {
                run.fail(|| name.clone(), || format!("b{i}·δ_{}·b{b2} leaves B", g.label(arrow)));
            }
            Err(e) => run.fail(|| name.clone(), || err_string(e)),
        }
    }
    Ok(())
}

fn short(name: &str) -> &str {
    name.split(' ').next().unwrap_or(name)
}

fn main_finite(run: &mut Run, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> CliResult<()> {
    let n = opts.n.unwrap_or(if opts.model.is_some() { 0 } else { 4 });
    if let Some(m) = &opts.model {
        run.param("model", m);
    } else {
        run.param("n", n);
    }
    let models = finite_models(rng, opts, &["pair3", "pair4", "cyclic3", "cyclic4", "cyclic5"], n, 3)?;
    for (name, g) in &models {
        if g.min_orbit_size() < 3 {
            return Err(CliError::Usage(format!("{}: every orbit needs at least 3 points", short(name))));
        }
        let mut all = Span::new(g.arrow_count());
        for a in 0..g.arrow_count() {
            all.insert(g.delta(a).coefficients());
        }
        let dim_pi = subalgebra_closure(g, &g.pi_generators()).len();
        let r = invariant_measure_feasible(g, 0)?;
        let tracial = match &r.verdict {
            Feasibility::Feasible(mu) => trace_from_measure(g, mu).is_ok(),
            Feasibility::Infeasible(_) => false,
        };
        let ok = tracial && dim_pi < all.dim();
        run.check(ok, || name.clone(), || format!("tracial state {tracial}, dims {dim_pi} and {}", all.dim()));
        run.note(format!("{}: tracial state, dim C*_π([[G]]) = {dim_pi} < dim C_c(G) = {}", short(name), all.dim()));
    }
    Ok(())
}

fn amen_folner(run: &mut Run, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> CliResult<()> {
    let n = opts.n.unwrap_or(8);
    if !(2..=64).contains(&n) {
        return Err(CliError::Usage("amen-folner needs 2 ≤ n ≤ 64".into()));
    }
    run.param("n", n);
    let g = cyclic_groupoid(n);
    let t = |k: usize| cyclic_translation(&g, n, k);
    // F = [0, n/2) against V = {+1}; the bound |F △ (F+1)| / |F| is counted directly
    let half: Vec<usize> = (0..n / 2).collect();
    let f: Vec<_> = half.iter().map(|&k| t(k)).collect();
    let r = folner_certificate(&g, &f, &[t(1)])?;
    let fs: BTreeSet<usize> = half.iter().copied().collect();
    let shifted: BTreeSet<usize> = fs.iter().map(|x| (x + 1) % n).collect();
    let exact = rat(fs.symmetric_difference(&shifted).count() as i64, fs.len() as i64);
    let ok = r.lines[0].bound == exact && r.deviation() <= exact && r.within_bounds();
    run.check(ok, || format!("Z{n} F=[0,{}] V={{+1}}", n / 2 - 1), || format!("bound {} ≠ {}", format_rational(&r.lines[0].bound), format_rational(&exact)));
    run.note(format!("F=[0,{}]: deviation {} ≤ bound {}", n / 2 - 1, format_rational(&r.deviation()), format_rational(&exact)));
    let all: Vec<_> = (0..n).map(t).collect();
    let whole = folner_certificate(&g, &all, &all)?;
    run.check(whole.deviation() == rat(0, 1), || format!("Z{n} F=Z{n}"), || "the whole group is not invariant".into());
    for _ in 0..20 {
        let size = rng.gen_range(1..=n);
        let mut ks: Vec<usize> = (0..n).collect();
        ks.shuffle(rng);
        ks.truncate(size);
        ks.sort_unstable();
        let v = rng.gen_range(0..n);
        let r = folner_certificate(&g, &ks.iter().map(|&k| t(k)).collect::<Vec<_>>(), &[t(v)])?;
        run.check(r.within_bounds(), || format!("Z{n} F={ks:?} V={{+{v}}}"), || "deviation exceeds the bound".into());
    }
    Ok(())
}

fn bonitinho_finite(run: &mut Run, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> CliResult<()> {
    let n = opts.n.unwrap_or(if opts.model.is_some() { 0 } else { 6 });
    if let Some(m) = &opts.model {
        run.param("model", m);
    } else {
        run.param("n", n);
    }
    let models = finite_models(rng, opts, &["pair2", "pair3", "pair4", "cyclic3", "cyclic4"], n, 1)?;
    for (name, g) in &models {
        let gens = g.one_minus_pi_generators();
        let mut span = Span::new(g.arrow_count());
        let basis: Vec<FiniteElement> = gens.iter().filter(|f| span.insert(f.coefficients())).cloned().collect();
        if let Some(w) = star_subalgebra_violation(g, &basis) {
            run.fail(|| name.clone(), || format!("span is not a *-subalgebra: {:?} escapes", w.coefficients()));
            continue;
        }
        let one = g.one();
        let has_trace = invariant_measure_feasible(g, 0)?.is_feasible();
        match span_membership_finite(&one, &basis) {
            Membership::NotMember(phi) => {
                let ev = |f: &[Scalar]| phi.iter().zip(f).fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
                let ok = ev(one.coefficients()) == Scalar::one() && basis.iter().all(|f| ev(f.coefficients()).is_zero());
                run.check(ok && has_trace, || name.clone(), || "certificate or tracial state missing".into());
                run.note(format!("{}: span dim {}, 1 ∉ B, certified", short(name), basis.len()));
            }
            Membership::Member(_) => {
                run.check(!has_trace, || name.clone(), || "1 ∈ B although a tracial state exists".into());
                run.note(format!("{}: span dim {}, 1 ∈ B", short(name), basis.len()));
            }
        }
    }
    Ok(())
}

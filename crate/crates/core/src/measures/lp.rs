//! Exact feasibility of `Ax = b, x ≥ 0` over the rationals.
//!
//! Equalities are reduced first; an inconsistent combination is already a
//! certificate. The remaining inequalities are decided by Fourier–Motzkin
//! when at most [`FM_LIMIT`] free variables are left, and by a phase-one
//! simplex with Bland's rule otherwise. Either way infeasibility comes with
//! a Farkas vector `y` such that `yᵀA ≥ 0` and `yᵀb < 0`.

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::scalar::{format_rational, Rational};

/// Problems with more free variables than this go to the simplex.
pub const FM_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// Variables are implicitly non-negative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LpProblem {
    pub vars: Vec<String>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Elimination,
    FourierMotzkin,
    Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    /// Multipliers on the constraints.
    Infeasible(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub outcome: LpOutcome,
    pub method: Method,
}

impl LpProblem {
    pub fn new(vars: Vec<String>) -> Self {
        LpProblem { vars, constraints: Vec::new() }
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Adds `Σ c·x_i = rhs` from sparse terms.
    pub fn add(&mut self, label: impl Into<String>, terms: &[(usize, Rational)], rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.vars.len()];
        for (i, c) in terms {
            coeffs[*i] += c;
        }
        self.constraints.push(Constraint { label: label.into(), coeffs, rhs });
    }

    pub fn solve(&self) -> LpSolution {
        solve(self)
    }

    pub fn is_witness(&self, x: &[Rational]) -> bool {
        x.len() == self.vars.len()
            && x.iter().all(|v| !v.is_negative())
            && self
                .constraints
                .iter()
                .all(|c| dot(&c.coeffs, x) == c.rhs)
    }

    /// Checks `yᵀA ≥ 0` and `yᵀb < 0`, which no non-negative `x` can meet.
    pub fn is_certificate(&self, y: &[Rational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let rhs: Rational = self.constraints.iter().zip(y).map(|(c, w)| &c.rhs * w).sum();
        rhs.is_negative()
            && (0..self.vars.len()).all(|j| {
                let col: Rational = self.constraints.iter().zip(y).map(|(c, w)| &c.coeffs[j] * w).sum();
                !col.is_negative()
            })
    }

    /// The combination `Σ yᵢ·(row i)` written out, for display.
    pub fn describe_certificate(&self, y: &[Rational]) -> Vec<String> {
        self.constraints
            .iter()
            .zip(y)
            .filter(|(_, w)| !w.is_zero())
            .map(|(c, w)| format!("{} × [{}]", format_rational(w), c.label))
            .collect()
    }
}

impl Serialize for LpProblem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            label: &'a str,
            coeffs: Vec<(&'a str, String)>,
            rhs: String,
        }
        let rows: Vec<Row> = self
            .constraints
            .iter()
            .map(|c| Row {
                label: &c.label,
                coeffs: c
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (self.vars[i].as_str(), format_rational(v)))
                    .collect(),
                rhs: format_rational(&c.rhs),
            })
            .collect();
        let mut st = s.serialize_struct("LpProblem", 2)?;
        st.serialize_field("variables", &self.vars)?;
        st.serialize_field("constraints", &rows)?;
        st.end()
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// A row in reduced echelon form together with the combination of the
/// original constraints producing it.
struct Reduced {
    pivots: Vec<usize>,
    rows: Vec<(Vec<Rational>, Rational, Vec<Rational>)>,
}

enum Reduction {
    Done(Reduced),
    Inconsistent(Vec<Rational>),
}

fn reduce(p: &LpProblem) -> Reduction {
    let m = p.constraints.len();
    let n = p.vars.len();
    let mut rows: Vec<(Vec<Rational>, Rational, Vec<Rational>)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (i, c) in p.constraints.iter().enumerate() {
        let mut a = c.coeffs.clone();
        let mut b = c.rhs.clone();
        let mut y = vec![Rational::zero(); m];
        y[i] = Rational::one();
        for (k, &pc) in pivots.iter().enumerate() {
            if !a[pc].is_zero() {
                let f = -a[pc].clone();
                let (ra, rb, ry) = &rows[k];
                axpy(&mut a, &f, ra);
                b += &f * rb;
                axpy(&mut y, &f, ry);
            }
        }
        match (0..n).find(|&j| !a[j].is_zero()) {
            None if b.is_zero() => {}
            None => {
                // 0 = b ≠ 0; flip so that yᵀb < 0.
                if b.is_positive() {
                    y.iter_mut().for_each(|v| *v = -v.clone());
                }
                return Reduction::Inconsistent(y);
            }
            Some(pc) => {
                let inv = a[pc].recip();
                a.iter_mut().for_each(|v| *v *= &inv);
                b *= &inv;
                y.iter_mut().for_each(|v| *v *= &inv);
                for (ra, rb, ry) in rows.iter_mut() {
                    if !ra[pc].is_zero() {
                        let f = -ra[pc].clone();
                        axpy(ra, &f, &a);
                        *rb += &f * &b;
                        axpy(ry, &f, &y);
                    }
                }
                rows.push((a, b, y));
                pivots.push(pc);
            }
        }
    }
    Reduction::Done(Reduced { pivots, rows })
}

pub fn solve(p: &LpProblem) -> LpSolution {
    let red = match reduce(p) {
        Reduction::Inconsistent(y) => {
            return LpSolution { outcome: LpOutcome::Infeasible(y), method: Method::Elimination };
        }
        Reduction::Done(r) => r,
    };
    let n = p.vars.len();
    let free: Vec<usize> = (0..n).filter(|j| !red.pivots.contains(j)).collect();
    if free.len() <= FM_LIMIT {
        LpSolution { outcome: fourier_motzkin(p, &red, &free), method: Method::FourierMotzkin }
    } else {
        LpSolution { outcome: simplex(p, &red), method: Method::Simplex }
    }
}

fn complete(red: &Reduced, n: usize, free: &[usize], values: &[Rational]) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); n];
    for (j, v) in free.iter().zip(values) {
        x[*j] = v.clone();
    }
    for (k, &pc) in red.pivots.iter().enumerate() {
        let (a, b, _) = &red.rows[k];
        let rest: Rational = free.iter().map(|&j| &a[j] * &x[j]).sum();
        x[pc] = b - rest;
    }
    x
}

/// An inequality `c·z ≤ d` over the free variables, derived as
/// `yᵀ(Ax − b) = 0` plus non-negativity; `y` is tracked throughout.
#[derive(Clone)]
struct Ineq {
    c: Vec<Rational>,
    d: Rational,
    y: Vec<Rational>,
}

fn fourier_motzkin(p: &LpProblem, red: &Reduced, free: &[usize]) -> LpOutcome {
    let m = p.constraints.len();
    let k = free.len();
    let mut system: Vec<Ineq> = Vec::new();
    // x_pivot = b − Σ a z ≥ 0
    for (a, b, y) in &red.rows {
        system.push(Ineq { c: free.iter().map(|&j| a[j].clone()).collect(), d: b.clone(), y: y.clone() });
    }
    // −z ≤ 0
    for i in 0..k {
        let mut c = vec![Rational::zero(); k];
        c[i] = -Rational::one();
        system.push(Ineq { c, d: Rational::zero(), y: vec![Rational::zero(); m] });
    }
    let contradiction = |rows: &[Ineq]| {
        rows.iter()
            .find(|q| q.c.iter().all(Zero::is_zero) && q.d.is_negative())
            .map(|q| q.y.clone())
    };
    if let Some(y) = contradiction(&system) {
        return LpOutcome::Infeasible(y);
    }
    let mut stages = vec![system.clone()];
    for v in 0..k {
        let (mut keep, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for q in system {
            if q.c[v].is_positive() {
                pos.push(q);
            } else if q.c[v].is_negative() {
                neg.push(q);
            } else {
                keep.push(q);
            }
        }
        for a in &pos {
            for b in &neg {
                let (la, lb) = (-b.c[v].clone(), a.c[v].clone());
                let mut c: Vec<Rational> = a.c.iter().zip(&b.c).map(|(x, y)| &la * x + &lb * y).collect();
                let mut d = &la * &a.d + &lb * &b.d;
                let mut y: Vec<Rational> = a.y.iter().zip(&b.y).map(|(x, z)| &la * x + &lb * z).collect();
                // scale to keep numbers small
                if let Some(s) = c.iter().find(|x| !x.is_zero()).map(|x| x.abs().recip()) {
                    c.iter_mut().for_each(|x| *x *= &s);
                    d *= &s;
                    y.iter_mut().for_each(|x| *x *= &s);
                }
                keep.push(Ineq { c, d, y });
            }
        }
        if let Some(y) = contradiction(&keep) {
            return LpOutcome::Infeasible(y);
        }
        dedup(&mut keep);
        system = keep;
        stages.push(system.clone());
    }
    // Back substitution: choose each variable at the smallest admissible value.
    let mut z = vec![Rational::zero(); k];
    for v in (0..k).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for q in &stages[v] {
            if q.c[v].is_zero() {
                continue;
            }
            let rest: Rational = (v + 1..k).map(|j| &q.c[j] * &z[j]).sum();
            let bound = (&q.d - rest) / &q.c[v];
            if q.c[v].is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h: Rational| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l: Rational| l.max(bound)));
            }
        }
        z[v] = lo.or(hi).unwrap_or_else(Rational::zero);
    }
    LpOutcome::Feasible(complete(red, p.vars.len(), free, &z))
}

fn dedup(rows: &mut Vec<Ineq>) {
    let mut seen = std::collections::HashSet::new();
    rows.retain(|q| {
        if q.c.iter().all(Zero::is_zero) && !q.d.is_negative() {
            return false;
        }
        seen.insert((q.c.clone(), q.d.clone()))
    });
}

/// Phase one on the independent rows: minimise the artificial total.
fn simplex(p: &LpProblem, red: &Reduced) -> LpOutcome {
    let n = p.vars.len();
    let r = red.rows.len();
    // Rows with b ≥ 0; remember the flips.
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(r);
    let mut sign = Vec::with_capacity(r);
    for (i, (a, b, _)) in red.rows.iter().enumerate() {
        let s = if b.is_negative() { -Rational::one() } else { Rational::one() };
        let mut row: Vec<Rational> = a.iter().map(|v| v * &s).collect();
        row.extend((0..r).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(b * &s);
        tab.push(row);
        sign.push(s);
    }
    let width = n + r;
    let cost = |j: usize| if j >= n { Rational::one() } else { Rational::zero() };
    let mut basis: Vec<usize> = (n..n + r).collect();
    loop {
        // reduced cost r_j = c_j − c_Bᵀ column_j
        let entering = (0..width).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let rc: Rational = cost(j) - (0..r).map(|i| cost(basis[i]) * &tab[i][j]).sum::<Rational>();
            rc.is_negative()
        });
        let Some(e) = entering else { break };
        let mut best: Option<(Rational, usize)> = None;
        for i in 0..r {
            if tab[i][e].is_positive() {
                let ratio = &tab[i][width] / &tab[i][e];
                let better = match &best {
                    None => true,
                    Some((q, bi)) => ratio < *q || (ratio == *q && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((ratio, i));
                }
            }
        }
        let (_, pr) = best.expect("phase one is bounded below");
        let inv = tab[pr][e].recip();
        tab[pr].iter_mut().for_each(|v| *v *= &inv);
        let pivot_row = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != pr && !row[e].is_zero() {
                let f = -row[e].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        basis[pr] = e;
    }
    let objective: Rational = (0..r).map(|i| cost(basis[i]) * &tab[i][width]).sum();
    if objective.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for i in 0..r {
            if basis[i] < n {
                x[basis[i]] = tab[i][width].clone();
            }
        }
        return LpOutcome::Feasible(x);
    }
    // Dual y = c_Bᵀ B⁻¹, read off the artificial columns; −y is the Farkas
    // vector of the flipped reduced rows, mapped back through the reduction.
    let m = p.constraints.len();
    let mut out = vec![Rational::zero(); m];
    for k in 0..r {
        let yk: Rational = (0..r).map(|i| cost(basis[i]) * &tab[i][n + k]).sum();
        let w = -(yk * &sign[k]);
        axpy(&mut out, &w, &red.rows[k].2);
    }
    LpOutcome::Infeasible(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use proptest::prelude::*;

    fn problem(rows: &[(&[i64], i64)], n: usize) -> LpProblem {
        let mut p = LpProblem::new((0..n).map(|i| format!("x{i}")).collect());
        for (i, (cs, b)) in rows.iter().enumerate() {
            let terms: Vec<_> = cs.iter().enumerate().map(|(j, c)| (j, rat_int(*c))).collect();
            p.add(format!("r{i}"), &terms, rat_int(*b));
        }
        p
    }

    #[test]
    fn inconsistent_equalities() {
        let p = problem(&[(&[1, 1], 1), (&[1, 1], 2)], 2);
        let s = p.solve();
        assert_eq!(s.method, Method::Elimination);
        let LpOutcome::Infeasible(y) = s.outcome else { panic!() };
        assert!(p.is_certificate(&y));
    }

    #[test]
    fn needs_nonnegativity() {
        // x0 − x1 = 1, x0 + x1 = 0: only x0 = 1/2, x1 = −1/2.
        let p = problem(&[(&[1, -1], 1), (&[1, 1], 0)], 2);
        let LpOutcome::Infeasible(y) = p.solve().outcome else { panic!() };
        assert!(p.is_certificate(&y));
        let q = problem(&[(&[1, -1, 1], 1), (&[1, 1, 0], 1)], 3);
        let LpOutcome::Feasible(x) = q.solve().outcome else { panic!() };
        assert!(q.is_witness(&x));
        assert_eq!(x, vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn large_problem_uses_simplex() {
        let n = 20;
        let mut p = LpProblem::new((0..n).map(|i| format!("x{i}")).collect());
        let all: Vec<_> = (0..n).map(|j| (j, rat_int(1))).collect();
        p.add("sum", &all, rat_int(1));
        let s = p.solve();
        assert_eq!(s.method, Method::Simplex);
        let LpOutcome::Feasible(x) = s.outcome else { panic!() };
        assert!(p.is_witness(&x));
        p.add("neg", &[(0, rat_int(1)), (1, rat_int(1))], rat_int(-1));
        let LpOutcome::Infeasible(y) = p.solve().outcome else { panic!() };
        assert!(p.is_certificate(&y));
    }

    #[test]
    fn json_export() {
        let p = problem(&[(&[1, 0], 1)], 2);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["constraints"][0]["coeffs"][0][0], "x0");
        assert_eq!(v["constraints"][0]["rhs"], "1");
    }

    fn arb_problem(max_vars: usize) -> impl Strategy<Value = LpProblem> {
        (1..=max_vars, 1usize..5).prop_flat_map(|(n, m)| {
            prop::collection::vec((prop::collection::vec(-2i64..=2, n), -2i64..=3), m).prop_map(move |rows| {
                let mut p = LpProblem::new((0..n).map(|i| format!("x{i}")).collect());
                for (i, (cs, b)) in rows.iter().enumerate() {
                    let terms: Vec<_> = cs.iter().enumerate().map(|(j, c)| (j, rat_int(*c))).collect();
                    p.add(format!("r{i}"), &terms, rat_int(*b));
                }
                p
            })
        })
    }

    proptest! {
        #[test]
        fn outcomes_verify(p in arb_problem(6)) {
            match p.solve().outcome {
                LpOutcome::Feasible(x) => prop_assert!(p.is_witness(&x)),
                LpOutcome::Infeasible(y) => prop_assert!(p.is_certificate(&y)),
            }
        }

        #[test]
        fn simplex_agrees_with_fourier_motzkin(p in arb_problem(6)) {
            let red = match reduce(&p) {
                Reduction::Inconsistent(_) => return Ok(()),
                Reduction::Done(r) => r,
            };
            let free: Vec<usize> = (0..p.var_count()).filter(|j| !red.pivots.contains(j)).collect();
            let fm = fourier_motzkin(&p, &red, &free);
            let sx = simplex(&p, &red);
            match (&fm, &sx) {
                (LpOutcome::Feasible(a), LpOutcome::Feasible(b)) => {
                    prop_assert!(p.is_witness(a));
                    prop_assert!(p.is_witness(b));
                }
                (LpOutcome::Infeasible(a), LpOutcome::Infeasible(b)) => {
                    prop_assert!(p.is_certificate(a));
                    prop_assert!(p.is_certificate(b));
                }
                _ => prop_assert!(false, "methods disagree: {:?} vs {:?}", fm, sx),
            }
        }
    }
}

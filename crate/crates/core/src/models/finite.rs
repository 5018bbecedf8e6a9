//! Finite discrete groupoids with an explicit composition table.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite groupoid. Units are numbered `0..units`; `unit_arrow[x]` is the
/// arrow id of the identity at `x`. `table[g·m + h]` is `gh` when
/// `s(g) = r(h)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroupoid {
    labels: Vec<String>,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    unit_arrow: Vec<usize>,
    table: Vec<Option<usize>>,
}

/// Outcome of [`FiniteGroupoid::check_axioms`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxiomReport {
    Pass,
    Fail { law: &'static str, witness: Vec<usize> },
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    label: String,
    source: usize,
    range: usize,
    inverse: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupoidJson {
    units: Vec<usize>,
    arrows: Vec<ArrowJson>,
    /// Triples `[g, h, gh]`.
    compose: Vec<[usize; 3]>,
}

impl FiniteGroupoid {
    /// Builds a groupoid from raw tables without checking the axioms.
    /// Indices are range-checked.
    pub fn from_parts(
        labels: Vec<String>,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        unit_arrow: Vec<usize>,
        products: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let m = labels.len();
        let n = unit_arrow.len();
        if source.len() != m || range.len() != m || inverse.len() != m {
            return Err(Error::InvalidGroupoid("table lengths disagree".into()));
        }
        if source.iter().chain(&range).any(|&x| x >= n) {
            return Err(Error::InvalidGroupoid("unit index out of range".into()));
        }
        if inverse.iter().chain(&unit_arrow).any(|&g| g >= m) {
            return Err(Error::InvalidGroupoid("arrow index out of range".into()));
        }
        let mut table = vec![None; m * m];
        for (g, h, gh) in products {
            if g >= m || h >= m || gh >= m {
                return Err(Error::InvalidGroupoid("arrow index out of range".into()));
            }
            table[g * m + h] = Some(gh);
        }
        Ok(FiniteGroupoid {
            labels,
            source,
            range,
            inverse,
            unit_arrow,
            table,
        })
    }

    /// The pair groupoid on `n` points: arrow `(i, j)` has id `i·n + j`,
    /// source `j` and range `i`.
    pub fn pair(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("pair groupoid needs n ≥ 1".into()));
        }
        let id = |i: usize, j: usize| i * n + j;
        let mut labels = Vec::new();
        let (mut source, mut range, mut inverse) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..n {
            for j in 0..n {
                labels.push(format!("({i},{j})"));
                source.push(j);
                range.push(i);
                inverse.push(id(j, i));
            }
        }
        let products = (0..n).flat_map(move |i| {
            (0..n).flat_map(move |j| (0..n).map(move |l| (id(i, j), id(j, l), id(i, l))))
        });
        Self::from_parts(labels, source, range, inverse, (0..n).map(|i| id(i, i)).collect(), products)
    }

    /// The transformation groupoid of the group generated by `perms` acting
    /// on `{0..n-1}`. Group elements are listed in breadth-first order from
    /// the identity; arrow `(γ, x)` has id `idx(γ)·n + x`, source `x` and
    /// range `γx`.
    pub fn from_action(perms: &[(String, Vec<usize>)]) -> Result<Self> {
        let n = perms.first().map(|(_, p)| p.len()).unwrap_or(0);
        for (label, p) in perms {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::Precondition(format!("{label} is not a permutation of 0..{n}")));
            }
        }
        let group = close_group(n, perms.iter().map(|(_, p)| p.clone()).collect());
        let index: BTreeMap<&Vec<usize>, usize> =
            group.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let inv_of = |g: &Vec<usize>| {
            let mut inv = vec![0; n];
            for (x, &y) in g.iter().enumerate() {
                inv[y] = x;
            }
            index[&inv]
        };
        let mut labels = Vec::new();
        let (mut source, mut range, mut inverse) = (Vec::new(), Vec::new(), Vec::new());
        for g in &group {
            for x in 0..n {
                labels.push(format!("({},{x})", word_label(g)));
                source.push(x);
                range.push(g[x]);
                inverse.push(inv_of(g) * n + g[x]);
            }
        }
        let mut products = Vec::new();
        for (gi, g) in group.iter().enumerate() {
            for (hi, h) in group.iter().enumerate() {
                let gh: Vec<usize> = (0..n).map(|x| g[h[x]]).collect();
                let ghi = index[&gh];
                for x in 0..n {
                    products.push((gi * n + h[x], hi * n + x, ghi * n + x));
                }
            }
        }
        Self::from_parts(labels, source, range, inverse, (0..n).collect(), products)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: GroupoidJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidGroupoid(e.to_string()))?;
        let labels = j.arrows.iter().map(|a| a.label.clone()).collect();
        let source = j.arrows.iter().map(|a| a.source).collect();
        let range = j.arrows.iter().map(|a| a.range).collect();
        let inverse = j.arrows.iter().map(|a| a.inverse).collect();
        Self::from_parts(labels, source, range, inverse, j.units, j.compose.iter().map(|t| (t[0], t[1], t[2])))
    }

    pub fn to_json(&self) -> String {
        let m = self.arrow_count();
        let arrows = (0..m)
            .map(|g| ArrowJson {
                label: self.labels[g].clone(),
                source: self.source[g],
                range: self.range[g],
                inverse: self.inverse[g],
            })
            .collect();
        let compose = (0..m)
            .flat_map(|g| (0..m).filter_map(move |h| self.table[g * m + h].map(|gh| [g, h, gh])))
            .collect();
        serde_json::to_string(&GroupoidJson {
            units: self.unit_arrow.clone(),
            arrows,
            compose,
        })
        .expect("serializable")
    }

    pub fn arrow_count(&self) -> usize {
        self.labels.len()
    }

    pub fn unit_count(&self) -> usize {
        self.unit_arrow.len()
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn arrow_source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn arrow_range(&self, g: usize) -> usize {
        self.range[g]
    }

    pub fn arrow_inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn unit_arrow(&self, x: usize) -> usize {
        self.unit_arrow[x]
    }

    /// The unit whose identity arrow is `g`, if any.
    pub fn as_unit(&self, g: usize) -> Option<usize> {
        let x = self.source[g];
        (self.unit_arrow[x] == g).then_some(x)
    }

    pub fn product(&self, g: usize, h: usize) -> Option<usize> {
        self.table[g * self.arrow_count() + h]
    }

    /// Arrows `g` with `s(g) = x`.
    pub fn arrows_from(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrow_count()).filter(move |&g| self.source[g] == x)
    }

    /// `G(x) = r(s⁻¹(x))`.
    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        self.arrows_from(x).map(|g| self.range[g]).collect()
    }

    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for x in 0..self.unit_count() {
            if seen.insert(x) {
                let o = self.orbit(x);
                seen.extend(o.iter().copied());
                out.push(o);
            }
        }
        out
    }

    pub fn min_orbit_size(&self) -> usize {
        self.orbits().iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    /// Exhaustive check of the groupoid laws. Failures carry the arrows
    /// involved (a triple for associativity).
    pub fn check_axioms(&self) -> AxiomReport {
        let m = self.arrow_count();
        let fail = |law, witness: Vec<usize>| AxiomReport::Fail { law, witness };
        for (x, &e) in self.unit_arrow.iter().enumerate() {
            if self.source[e] != x || self.range[e] != x || self.inverse[e] != e {
                return fail("unit arrow", vec![e]);
            }
        }
        for g in 0..m {
            for h in 0..m {
                let composable = self.source[g] == self.range[h];
                match self.product(g, h) {
                    Some(gh) if composable => {
                        if self.source[gh] != self.source[h] || self.range[gh] != self.range[g] {
                            return fail("source/range of product", vec![g, h]);
                        }
                    }
                    None if !composable => {}
                    _ => return fail("composability", vec![g, h]),
                }
            }
        }
        for g in 0..m {
            let (s, r) = (self.unit_arrow[self.source[g]], self.unit_arrow[self.range[g]]);
            if self.product(r, g) != Some(g) || self.product(g, s) != Some(g) {
                return fail("unit law", vec![g]);
            }
            let gi = self.inverse[g];
            if self.inverse[gi] != g || self.source[gi] != self.range[g] {
                return fail("inverse involution", vec![g]);
            }
            if self.product(g, gi) != Some(r) || self.product(gi, g) != Some(s) {
                return fail("inverse law", vec![g]);
            }
        }
        for g in 0..m {
            for h in (0..m).filter(|&h| self.source[g] == self.range[h]) {
                let gh = self.product(g, h).expect("checked");
                for l in (0..m).filter(|&l| self.source[h] == self.range[l]) {
                    let hl = self.product(h, l).expect("checked");
                    if self.product(gh, l) != self.product(g, hl) {
                        return fail("associativity", vec![g, h, l]);
                    }
                }
            }
        }
        AxiomReport::Pass
    }

    /// `G_W` for a set of units `W`, with units and arrows renumbered in
    /// increasing order. Labels are kept.
    pub fn restriction(&self, w: &BTreeSet<usize>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        if let Some(&x) = w.iter().find(|&&x| x >= self.unit_count()) {
            return Err(Error::Precondition(format!("{x} is not a unit")));
        }
        let unit_map: BTreeMap<usize, usize> = w.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let kept: Vec<usize> = (0..self.arrow_count())
            .filter(|&g| w.contains(&self.source[g]) && w.contains(&self.range[g]))
            .collect();
        let arrow_map: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut products = Vec::new();
        for &g in &kept {
            for &h in &kept {
                if let Some(gh) = self.product(g, h) {
                    products.push((arrow_map[&g], arrow_map[&h], arrow_map[&gh]));
                }
            }
        }
        Self::from_parts(
            kept.iter().map(|&g| self.labels[g].clone()).collect(),
            kept.iter().map(|&g| unit_map[&self.source[g]]).collect(),
            kept.iter().map(|&g| unit_map[&self.range[g]]).collect(),
            kept.iter().map(|&g| arrow_map[&self.inverse[g]]).collect(),
            w.iter().map(|&x| arrow_map[&self.unit_arrow[x]]).collect(),
            products,
        )
    }

    /// Replaces one composition entry; used to build negative controls.
    pub fn with_product(mut self, g: usize, h: usize, gh: Option<usize>) -> Self {
        let m = self.arrow_count();
        self.table[g * m + h] = gh;
        self
    }
}

impl fmt::Display for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "finite groupoid: {} units, {} arrows", self.unit_count(), self.arrow_count())
    }
}

fn word_label(p: &[usize]) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Closure of a set of permutations under composition, breadth-first from
/// the identity.
fn close_group(n: usize, gens: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in &gens {
            let next: Vec<usize> = (0..n).map(|x| g[out[i][x]]).collect();
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

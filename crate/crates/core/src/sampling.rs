//! Seeded random inputs for property checks and verification suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bisection::{AmpleGroupoid, ClopenSet, CompactBisection, FiniteBisection};
use crate::extz::ExtZSet;
use crate::fullgroup::finite::FiniteFull;
use crate::fullgroup::thompson::Table;
use crate::fullgroup::FullElement;
use crate::models::{CompactifiedZGroupoid, FiniteGroupoid, ShiftGroupoid};
use crate::prefix::CylinderSet;
use crate::starconv::tec_admissible;
use crate::word::Word;

/// A complete prefix code over `k` letters made by `splits` leaf splits,
/// no word longer than `depth`.
pub fn random_prefix_code<R: Rng>(rng: &mut R, k: u8, depth: usize, splits: usize) -> Vec<Word> {
    let mut leaves = vec![Word::empty()];
    for _ in 0..splits {
        let open: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].len() < depth).collect();
        let Some(&i) = open.choose(rng) else { break };
        let w = leaves.swap_remove(i);
        leaves.extend((0..k).map(|c| w.child(c)));
    }
    leaves
}

/// A random element of `V` (or `V_k`) whose table has depth at most `depth`.
pub fn random_table<R: Rng>(rng: &mut R, k: u8, depth: usize) -> Table {
    let max_splits = (0..depth).map(|l| (k as usize).pow(l as u32)).sum::<usize>();
    loop {
        let s = rng.gen_range(0..=max_splits);
        let sources = random_prefix_code(rng, k, depth, s);
        let mut ranges = random_prefix_code(rng, k, depth, s);
        if ranges.len() != sources.len() {
            continue;
        }
        ranges.shuffle(rng);
        return Table::from_rows(k, ranges.into_iter().zip(sources)).expect("two complete codes");
    }
}

/// A transformation groupoid on at most `max_units` points in which every
/// orbit has at least two points. Orbits carry a rotation; some also get
/// a second generator, which creates isotropy.
pub fn random_finite_groupoid<R: Rng>(rng: &mut R, max_units: usize) -> FiniteGroupoid {
    assert!(max_units >= 2);
    loop {
        let n = rng.gen_range(2..=max_units);
        let mut points: Vec<usize> = (0..n).collect();
        points.shuffle(rng);
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut rest = &points[..];
        while !rest.is_empty() {
            let take = if rest.len() < 4 { rest.len() } else { rng.gen_range(2..=rest.len() - 2) };
            orbits.push(rest[..take].to_vec());
            rest = &rest[take..];
        }
        let mut rot: Vec<usize> = (0..n).collect();
        let mut extra: Vec<usize> = (0..n).collect();
        let mut use_extra = false;
        for orb in &orbits {
            for (i, &x) in orb.iter().enumerate() {
                rot[x] = orb[(i + 1) % orb.len()];
            }
            if orb.len() >= 3 && rng.gen_bool(0.4) {
                use_extra = true;
                let (a, b) = (orb[0], orb[1]);
                extra[a] = b;
                extra[b] = a;
            }
        }
        let mut gens = vec![("r".to_string(), rot)];
        if use_extra {
            gens.push(("s".to_string(), extra));
        }
        let g = FiniteGroupoid::from_action(&gens).expect("permutations");
        if g.arrow_count() <= 512 {
            return g;
        }
    }
}

/// A uniformly chosen permutation of each orbit, realised through random arrows.
pub fn random_full_element_finite<R: Rng>(rng: &mut R, model: &FiniteGroupoid) -> FiniteFull {
    let mut arrows = BTreeSet::new();
    for orbit in model.orbits() {
        let from: Vec<usize> = orbit.iter().copied().collect();
        let mut to = from.clone();
        to.shuffle(rng);
        for (x, y) in from.into_iter().zip(to) {
            let options: Vec<usize> = model.arrows_from(x).filter(|&g| model.arrow_range(g) == y).collect();
            arrows.insert(*options.choose(rng).expect("same orbit"));
        }
    }
    FullElement::trusted(FiniteBisection(arrows))
}

pub type TecTriple<G> = (
    FullElement<<G as AmpleGroupoid>::Bisection>,
    FullElement<<G as AmpleGroupoid>::Bisection>,
    <G as AmpleGroupoid>::Set,
);

/// Rejection sampling of `(S, T, W)` with `θ_S(W)`, `W`, `θ_T⁻¹(W)` disjoint and `W ≠ ∅`.
fn admissible<G: AmpleGroupoid, R: Rng>(
    rng: &mut R,
    model: &G,
    mut draw: impl FnMut(&mut R) -> TecTriple<G>,
) -> Option<TecTriple<G>> {
    for _ in 0..10_000 {
        let (s, t, w) = draw(rng);
        if !w.is_empty() && tec_admissible(model, &s, &t, &w) {
            return Some((s, t, w));
        }
    }
    None
}

pub fn tec_triple_shift<R: Rng>(rng: &mut R, model: &ShiftGroupoid) -> Option<TecTriple<ShiftGroupoid>> {
    let k = model.alphabet();
    admissible(rng, model, |rng| {
        let s = random_table(rng, k, 3);
        let t = random_table(rng, k, 3);
        let words: Vec<Word> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let len = rng.gen_range(2..=3);
                Word((0..len).map(|_| rng.gen_range(0..k)).collect())
            })
            .collect();
        (s, t, CylinderSet::new(k, words))
    })
}

pub fn tec_triple_finite<R: Rng>(rng: &mut R, model: &FiniteGroupoid) -> Option<TecTriple<FiniteGroupoid>> {
    let n = model.unit_count();
    admissible(rng, model, |rng| {
        let s = random_full_element_finite(rng, model);
        let t = random_full_element_finite(rng, model);
        let size = rng.gen_range(1..=(n / 3).max(1));
        let w: BTreeSet<usize> = (0..size).map(|_| rng.gen_range(0..n)).collect();
        (s, t, w)
    })
}

/// `S` and `T` are drawn from `pool`; `W` is a finite set or a tail.
pub fn tec_triple_compact<R: Rng>(
    rng: &mut R,
    model: &CompactifiedZGroupoid,
    pool: &[FullElement<CompactBisection>],
) -> Option<TecTriple<CompactifiedZGroupoid>> {
    admissible(rng, model, |rng| {
        let s = pool.choose(rng).expect("non-empty pool").clone();
        let t = pool.choose(rng).expect("non-empty pool").clone();
        let w = if rng.gen_bool(0.7) {
            ExtZSet::finite((0..rng.gen_range(1..=2)).map(|_| rng.gen_range(-4..=4)))
        } else if model.action().one_point() {
            let m = rng.gen_range(2..=5);
            ExtZSet::from_fn(true, true, -m..=m, move |n: i64| n.abs() >= m)
        } else {
            ExtZSet::at_least(rng.gen_range(2..=5))
        };
        (s, t, w.intersection(model.units()))
    })
}

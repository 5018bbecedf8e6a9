//! Full groups of finite groupoids and the covering construction.

use std::collections::BTreeSet;

use super::{FullElement, FullGroup};
use crate::bisection::{AmpleGroupoid, FiniteBisection};
use crate::error::{Error, Result};
use crate::models::FiniteGroupoid;

pub type FiniteFull = FullElement<FiniteBisection>;

impl FiniteGroupoid {
    /// `{g, g⁻¹}` plus units elsewhere, for an arrow with `r(g) ≠ s(g)`;
    /// `{g}` plus units elsewhere when `g` is a loop.
    pub fn swap_element(&self, g: usize) -> FiniteFull {
        let (s, r) = (self.arrow_source(g), self.arrow_range(g));
        let rest: BTreeSet<usize> = (0..self.unit_count()).filter(|&x| x != s && x != r).collect();
        let mut arrows = self.units_over(&rest).0;
        arrows.insert(g);
        if s != r {
            arrows.insert(self.arrow_inverse(g));
        }
        FullElement::trusted(FiniteBisection(arrows))
    }

    /// Every element of `[[G]]`: one arrow out of each unit, with distinct
    /// ranges. Exponential; meant for groupoids with a handful of arrows.
    pub fn full_group_elements(&self) -> Vec<FiniteFull> {
        let n = self.unit_count();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend_full(&mut chosen, &mut used, &mut out);
        out
    }

    fn extend_full(&self, chosen: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<FiniteFull>) {
        let x = chosen.len();
        if x == self.unit_count() {
            out.push(FullElement::trusted(FiniteBisection::new(chosen.iter().copied())));
            return;
        }
        for g in self.arrows_from(x).collect::<Vec<_>>() {
            let r = self.arrow_range(g);
            if !used[r] {
                used[r] = true;
                chosen.push(g);
                self.extend_full(chosen, used, out);
                chosen.pop();
                used[r] = false;
            }
        }
    }
}

/// An element of `[[G]]` containing the arrow `g`, provided every orbit
/// has at least two points.
///
/// If `r(g) ≠ s(g)` the element swaps along `g`. Otherwise pick `h` leaving
/// `x = s(g)`; then `U(h)⁻¹·U(hg)` sends `x` along `hg` and back along
/// `h⁻¹`, using the arrow `h⁻¹hg = g`.
pub fn cover_element_finite(model: &FiniteGroupoid, g: usize) -> Result<FiniteFull> {
    if g >= model.arrow_count() {
        return Err(Error::ModelMismatch(format!("arrow {g} does not exist")));
    }
    for x in 0..model.unit_count() {
        if model.orbit(x).len() < 2 {
            return Err(Error::OrbitTooSmall {
                unit: x.to_string(),
                required: 2,
            });
        }
    }
    let x = model.arrow_source(g);
    if model.arrow_range(g) != x {
        return Ok(model.swap_element(g));
    }
    let h = model
        .arrows_from(x)
        .find(|&h| model.arrow_range(h) != x)
        .expect("orbit has a second point");
    let hg = model.product(h, g).expect("composable");
    let group = FullGroup::new(model);
    Ok(group.mul(&group.inv(&model.swap_element(h)), &model.swap_element(hg)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_from_an_arrow() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let u = cover_element_finite(&g, 5).unwrap(); // (1,2)
        assert_eq!(u.bisection(), &FiniteBisection::new([0, 5, 7])); // (0,0),(1,2),(2,1)
    }

    #[test]
    fn unit_arrows_and_loops() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let u = cover_element_finite(&g, 4).unwrap();
        assert!(u.bisection().0.contains(&4));
        // S₃ acting on three points has loops (γ, x) with γx = x, γ ≠ 1.
        let s3 = FiniteGroupoid::from_action(&[("a".into(), vec![1, 0, 2]), ("b".into(), vec![1, 2, 0])]).unwrap();
        for a in 0..s3.arrow_count() {
            let u = cover_element_finite(&s3, a).unwrap();
            assert!(u.bisection().0.contains(&a) && s3.is_full(u.bisection()));
        }
    }

    #[test]
    fn fixed_point_is_rejected() {
        let g = FiniteGroupoid::from_action(&[("t".into(), vec![1, 0, 2])]).unwrap();
        assert_eq!(
            cover_element_finite(&g, 0),
            Err(Error::OrbitTooSmall { unit: "2".into(), required: 2 })
        );
    }

    #[test]
    fn full_group_of_pair_groupoid_is_symmetric_group() {
        let g = FiniteGroupoid::pair(3).unwrap();
        let all = g.full_group_elements();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|u| g.is_full(u.bisection())));
        let s3 = FiniteGroupoid::from_action(&[("a".into(), vec![1, 0, 2]), ("b".into(), vec![1, 2, 0])]).unwrap();
        let brute = brute_count(&s3);
        assert_eq!(s3.full_group_elements().len(), brute);
    }

    fn brute_count(g: &FiniteGroupoid) -> usize {
        let n = g.unit_count();
        let mut count = 0;
        let choices: Vec<Vec<usize>> = (0..n).map(|x| g.arrows_from(x).collect()).collect();
        let total: usize = choices.iter().map(Vec::len).product();
        for mut idx in 0..total {
            let mut set = BTreeSet::new();
            for c in &choices {
                set.insert(c[idx % c.len()]);
                idx /= c.len();
            }
            let b = FiniteBisection(set);
            if g.validate(&b).is_ok() && g.is_full(&b) {
                count += 1;
            }
        }
        count
    }
}

//! Exact linear algebra over the Gaussian rationals.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::scalar::{Rational, Scalar};

pub type Vector = Vec<Scalar>;

pub fn dot(y: &[Scalar], v: &[Scalar]) -> Scalar {
    y.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
}

/// An incrementally built span kept in reduced row echelon form, with each
/// reduced row expressed in the inserted generators.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    rows: Vec<Row>,
    generators: Vec<Vector>,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: Vector,
    combo: Vector,
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Coefficients on the generators, in insertion order.
    Member(Vector),
    /// A functional vanishing on every generator and equal to 1 on the target.
    NotMember(Vector),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// The generators that were independent when inserted.
    pub fn basis(&self) -> &[Vector] {
        &self.generators
    }

    /// Remainder after eliminating the pivots, and the combination of
    /// generators subtracted.
    fn reduce(&self, v: &[Scalar]) -> (Vector, Vector) {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut r = v.to_vec();
        let mut combo = vec![Scalar::zero(); self.generators.len()];
        for row in &self.rows {
            let c = r[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(&row.vec) {
                *x -= &(&c * y);
            }
            for (x, y) in combo.iter_mut().zip(&row.combo) {
                *x += &(&c * y);
            }
        }
        (r, combo)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let (mut r, combo) = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].inv().expect("non-zero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        // The new row is v - Σ combo·g scaled by inv.
        let k = self.generators.len();
        let mut new_combo: Vector = combo.iter().map(|c| -(c * &inv)).collect();
        new_combo.push(inv);
        for row in &mut self.rows {
            row.combo.push(Scalar::zero());
            let c = row.vec[pivot].clone();
            if !c.is_zero() {
                for (x, y) in row.vec.iter_mut().zip(&r) {
                    *x -= &(&c * y);
                }
                for (x, y) in row.combo.iter_mut().zip(&new_combo) {
                    *x -= &(&c * y);
                }
            }
        }
        debug_assert_eq!(new_combo.len(), k + 1);
        self.rows.push(Row {
            pivot,
            vec: r,
            combo: new_combo,
        });
        self.generators.push(v.to_vec());
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).0.iter().all(Scalar::is_zero)
    }

    pub fn membership(&self, v: &[Scalar]) -> Membership {
        let (r, combo) = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => Membership::Member(combo),
            Some(j) => {
                // y = e_j - Σ R_k[j] e_{p_k} kills every row; y·v = r_j.
                let mut y = vec![Scalar::zero(); self.dim];
                y[j] = Scalar::one();
                for row in &self.rows {
                    y[row.pivot] -= &row.vec[j];
                }
                let s = r[j].inv().expect("non-zero");
                Membership::NotMember(y.iter().map(|x| x * &s).collect())
            }
        }
    }
}

/// Membership of `target` in the span of `generators`, with coefficients or
/// an annihilating functional.
pub fn span_membership(target: &[Scalar], generators: &[Vector]) -> Membership {
    let mut span = Span::new(target.len());
    let mut order = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if span.insert(g) {
            order.push(i);
        }
    }
    match span.membership(target) {
        Membership::Member(c) => {
            let mut full = vec![Scalar::zero(); generators.len()];
            for (k, i) in order.into_iter().enumerate() {
                full[i] = c[k].clone();
            }
            Membership::Member(full)
        }
        other => other,
    }
}

pub fn rank(vectors: &[Vector]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let mut span = Span::new(first.len());
    vectors.iter().filter(|v| span.insert(v)).count()
}

/// A square matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Matrix {
    pub n: usize,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: Vec<Scalar>,
}

fn serialize_entries<S: serde::Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(Scalar::zero(), |acc, i| acc + self.get(i, i).clone())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Positive semidefiniteness of a Hermitian matrix by `LDL*` elimination
/// with diagonal pivoting. Non-Hermitian input is rejected.
pub fn is_positive_semidefinite(m: &Matrix) -> bool {
    if *m != m.adjoint() {
        return false;
    }
    let n = m.n;
    let mut h = m.clone();
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let pos = alive.iter().position(|&i| h.get(i, i).re() > &Rational::zero());
        let Some(pi) = pos else {
            // No positive pivot left: PSD only if the rest vanishes.
            return alive.iter().all(|&i| alive.iter().all(|&j| h.get(i, j).is_zero()));
        };
        let p = alive.remove(pi);
        let d = h.get(p, p).clone();
        let dinv = d.inv().expect("positive");
        for &i in &alive {
            let hip = h.get(i, p).clone();
            if hip.is_zero() {
                continue;
            }
            for &j in &alive {
                let v = h.get(i, j) - &(&(&hip * &dinv) * h.get(p, j));
                h.set(i, j, v);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use crate::scalar::rat_int;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn membership_with_coefficients() {
        let gens = vec![v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 2, 1])];
        let t = v(&[2, 3, 1]);
        match span_membership(&t, &gens) {
            Membership::Member(c) => {
                let back: Vector = (0..3)
                    .map(|j| (0..3).fold(Scalar::zero(), |acc, i| acc + &c[i] * &gens[i][j]))
                    .collect();
                assert_eq!(back, t);
            }
            other => panic!("{other:?}"),
        }
        match span_membership(&v(&[1, 0, 0]), &gens) {
            Membership::NotMember(y) => {
                assert!(gens.iter().all(|g| dot(&y, g).is_zero()));
                assert_eq!(dot(&y, &v(&[1, 0, 0])), Scalar::one());
            }
            other => panic!("{other:?}"),
        }
        assert!(span_membership(&v(&[0, 0, 0]), &gens).is_member());
        assert_eq!(rank(&gens), 2);
    }

    #[test]
    fn psd_examples() {
        let mut m = Matrix::identity(2);
        assert!(is_positive_semidefinite(&m));
        m.set(0, 1, Scalar::from_int(1));
        m.set(1, 0, Scalar::from_int(1));
        assert!(is_positive_semidefinite(&m)); // [[1,1],[1,1]]
        m.set(0, 1, Scalar::from_int(2));
        m.set(1, 0, Scalar::from_int(2));
        assert!(!is_positive_semidefinite(&m));
        let mut z = Matrix::zero(2);
        z.set(0, 1, Scalar::i());
        z.set(1, 0, -Scalar::i());
        assert!(!is_positive_semidefinite(&z));
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = Vector> {
        prop::collection::vec((-3i64..=3, -2i64..=2), n)
            .prop_map(|xs| xs.into_iter().map(|(a, b)| Scalar::new(rat_int(a), rat_int(b))).collect())
    }

    proptest! {
        #[test]
        fn gram_matrices_are_psd(rows in prop::collection::vec(arb_vec(3), 1..4)) {
            // M = A·A* for A with the sampled rows.
            let n = 3;
            let mut a = Matrix::zero(n);
            for (i, r) in rows.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    a.set(i, j, x.clone());
                }
            }
            prop_assert!(is_positive_semidefinite(&a.mul(&a.adjoint())));
        }

        #[test]
        fn membership_certificates_check(gens in prop::collection::vec(arb_vec(4), 0..4), t in arb_vec(4)) {
            match span_membership(&t, &gens) {
                Membership::Member(c) => {
                    let mut acc = vec![Scalar::zero(); 4];
                    for (ci, g) in c.iter().zip(&gens) {
                        for (a, x) in acc.iter_mut().zip(g) { *a += &(ci * x); }
                    }
                    prop_assert_eq!(acc, t);
                }
                Membership::NotMember(y) => {
                    prop_assert!(gens.iter().all(|g| dot(&y, g).is_zero()));
                    prop_assert_eq!(dot(&y, &t), Scalar::one());
                }
            }
        }
    }
}

//! The quantum complete intersection
//! `A = k<x_1..x_c> / (x_i^a, x_i x_j - q x_j x_i for i < j)`.
//!
//! Elements are coefficient vectors over the PBW monomials
//! `x_1^{e_1} ... x_c^{e_c}` with `0 <= e_i < a`, ordered lexicographically
//! with `x_1` slowest: the index of an exponent tuple is `sum e_i a^{c-i}`.
//! For `a = c = 2` the basis order is `1, x_2, x_1, x_1 x_2`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{compute_a_prime, Embedding, Fe, Field, UnityOrder};
use crate::linalg::Matrix;

/// Coefficients of an algebra element in the PBW basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement(pub Vec<Fe>);

impl AlgElement {
    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

struct AlgebraInner {
    field: Field,
    a: usize,
    c: usize,
    q: Fe,
    unity: UnityOrder,
    dim: usize,
    exps: Vec<Vec<usize>>,
    // q^{-k} for k in 0..a'
    q_inv_pows: Vec<Fe>,
    // left_x[i][m]: x_i * (monomial m) as (monomial, coefficient)
    left_x: Vec<Vec<Option<(usize, Fe)>>>,
}

/// A validated quantum complete intersection `A^c_q`.
#[derive(Clone)]
pub struct AlgebraSpec(Arc<AlgebraInner>);

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.a == other.0.a
                && self.0.c == other.0.c
                && self.0.q == other.0.q)
    }
}

impl Eq for AlgebraSpec {}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A(a={}, c={}, q={:?}) over {:?}",
            self.0.a,
            self.0.c,
            self.0.field.coeffs(self.0.q),
            self.0.field
        )
    }
}

impl AlgebraSpec {
    pub fn new(field: Field, a: usize, c: usize, q: Fe) -> Result<AlgebraSpec> {
        if a < 2 || c < 1 {
            return Err(Error::InvalidAlgebra(format!(
                "need a >= 2 and c >= 1, got a = {a}, c = {c}"
            )));
        }
        let dim = a
            .checked_pow(c as u32)
            .filter(|&d| d <= 1 << 16)
            .ok_or_else(|| Error::InvalidAlgebra(format!("a^c too large for a = {a}, c = {c}")))?;
        let unity = compute_a_prime(a as u64, field.p() as u64);
        let got = field.mult_order(q).unwrap_or(0);
        if got != unity.a_prime {
            return Err(Error::WrongRootOrder {
                expected: unity.a_prime,
                got,
            });
        }
        let exps: Vec<Vec<usize>> = (0..dim)
            .map(|mut idx| {
                let mut e = vec![0; c];
                for i in (0..c).rev() {
                    e[i] = idx % a;
                    idx /= a;
                }
                e
            })
            .collect();
        let q_inv = field.inv(q);
        let q_inv_pows = (0..unity.a_prime)
            .map(|k| field.pow(q_inv, k))
            .collect::<Vec<_>>();
        let mut inner = AlgebraInner {
            field,
            a,
            c,
            q,
            unity,
            dim,
            exps,
            q_inv_pows,
            left_x: Vec::new(),
        };
        inner.left_x = (0..c)
            .map(|i| {
                let xi = inner.index_of_unit(i);
                (0..dim).map(|m| inner.mono_mul(xi, m)).collect()
            })
            .collect();
        Ok(AlgebraSpec(Arc::new(inner)))
    }

    /// The algebra with `q` the first primitive `a'`-th root of unity in `field`.
    pub fn with_default_q(field: Field, a: usize, c: usize) -> Result<AlgebraSpec> {
        let order = compute_a_prime(a as u64, field.p() as u64).a_prime;
        let q = field.primitive_root_of_unity(order)?;
        AlgebraSpec::new(field, a, c, q)
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn a(&self) -> usize {
        self.0.a
    }

    pub fn c(&self) -> usize {
        self.0.c
    }

    pub fn q(&self) -> Fe {
        self.0.q
    }

    pub fn unity(&self) -> UnityOrder {
        self.0.unity
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Exponent tuple of basis monomial `m`.
    pub fn exponents(&self, m: usize) -> &[usize] {
        &self.0.exps[m]
    }

    pub fn index_of(&self, exps: &[usize]) -> usize {
        exps.iter().fold(0, |acc, &e| acc * self.0.a + e)
    }

    /// Index of the socle monomial `x_1^{a-1} ... x_c^{a-1}`.
    pub fn socle_index(&self) -> usize {
        self.0.dim - 1
    }

    /// Product of two basis monomials.
    ///
    /// Sorting the word `x^e x^f` into PBW order moves each `x_i^{f_i}` left
    /// past `x_j^{e_j}` for `j > i`, and each transposition `x_j x_i -> x_i x_j`
    /// costs a factor `q^{-1}`; the total is `q^{-sum_{i<j} e_j f_i}`.
    pub fn mono_mul(&self, m: usize, n: usize) -> Option<(usize, Fe)> {
        self.0.mono_mul(m, n)
    }

    /// `x_i * (monomial m)`, from the precomputed table.
    pub fn left_x(&self, i: usize, m: usize) -> Option<(usize, Fe)> {
        self.0.left_x[i][m]
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement(vec![Fe::ZERO; self.0.dim])
    }

    pub fn one(&self) -> AlgElement {
        self.monomial(0, Fe::ONE)
    }

    pub fn monomial(&self, m: usize, coeff: Fe) -> AlgElement {
        let mut v = self.zero();
        v.0[m] = coeff;
        v
    }

    /// The generator `x_i` (zero-based).
    pub fn x(&self, i: usize) -> AlgElement {
        self.monomial(self.0.index_of_unit(i), Fe::ONE)
    }

    pub fn element(&self, coeffs: Vec<Fe>) -> Result<AlgElement> {
        if coeffs.len() != self.0.dim {
            return Err(Error::Shape(format!(
                "algebra element needs {} coefficients, got {}",
                self.0.dim,
                coeffs.len()
            )));
        }
        Ok(AlgElement(coeffs))
    }

    pub fn add(&self, u: &AlgElement, v: &AlgElement) -> AlgElement {
        let f = &self.0.field;
        AlgElement(u.0.iter().zip(&v.0).map(|(&x, &y)| f.add(x, y)).collect())
    }

    pub fn sub(&self, u: &AlgElement, v: &AlgElement) -> AlgElement {
        let f = &self.0.field;
        AlgElement(u.0.iter().zip(&v.0).map(|(&x, &y)| f.sub(x, y)).collect())
    }

    pub fn scale(&self, s: Fe, u: &AlgElement) -> AlgElement {
        let f = &self.0.field;
        AlgElement(u.0.iter().map(|&x| f.mul(s, x)).collect())
    }

    pub fn mul(&self, u: &AlgElement, v: &AlgElement) -> AlgElement {
        let f = &self.0.field;
        let mut out = vec![Fe::ZERO; self.0.dim];
        for (m, &um) in u.0.iter().enumerate() {
            if um.is_zero() {
                continue;
            }
            for (n, &vn) in v.0.iter().enumerate() {
                if vn.is_zero() {
                    continue;
                }
                if let Some((k, coef)) = self.0.mono_mul(m, n) {
                    out[k] = f.add(out[k], f.mul(coef, f.mul(um, vn)));
                }
            }
        }
        AlgElement(out)
    }

    pub fn pow(&self, u: &AlgElement, k: usize) -> AlgElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, u))
    }

    /// The linear form `lambda_1 x_1 + ... + lambda_c x_c`.
    pub fn u_lambda(&self, lambda: &[Fe]) -> Result<AlgElement> {
        if lambda.len() != self.0.c {
            return Err(Error::Shape(format!(
                "point has {} coordinates, algebra has {} generators",
                lambda.len(),
                self.0.c
            )));
        }
        let mut v = self.zero();
        for (i, &l) in lambda.iter().enumerate() {
            v.0[self.0.index_of_unit(i)] = l;
        }
        Ok(v)
    }

    /// The augmentation: the coefficient of the monomial 1.
    pub fn augmentation(&self, u: &AlgElement) -> Fe {
        u.0[0]
    }

    /// Matrix of `v -> u v` in the PBW basis (column `m` is `u * m`).
    pub fn left_mul_matrix(&self, u: &AlgElement) -> Matrix {
        let d = self.0.dim;
        let cols: Vec<Vec<Fe>> = (0..d)
            .map(|m| self.mul(u, &self.monomial(m, Fe::ONE)).0)
            .collect();
        Matrix::from_cols(&cols, d)
    }

    /// Matrix of `v -> v u` in the PBW basis.
    pub fn right_mul_matrix(&self, u: &AlgElement) -> Matrix {
        let d = self.0.dim;
        let cols: Vec<Vec<Fe>> = (0..d)
            .map(|m| self.mul(&self.monomial(m, Fe::ONE), u).0)
            .collect();
        Matrix::from_cols(&cols, d)
    }

    /// The same algebra over a larger field, with `q` carried along.
    pub fn base_change(&self, emb: &Embedding) -> Result<AlgebraSpec> {
        assert_eq!(emb.src(), self.field(), "embedding source is not the algebra's field");
        AlgebraSpec::new(emb.dst().clone(), self.0.a, self.0.c, emb.apply(self.0.q))
    }

    pub fn map_element(&self, emb: &Embedding, u: &AlgElement) -> AlgElement {
        AlgElement(u.0.iter().map(|&x| emb.apply(x)).collect())
    }
}

impl AlgebraInner {
    fn index_of_unit(&self, i: usize) -> usize {
        self.a.pow((self.c - 1 - i) as u32)
    }

    fn mono_mul(&self, m: usize, n: usize) -> Option<(usize, Fe)> {
        let e = &self.exps[m];
        let f = &self.exps[n];
        if e.iter().zip(f).any(|(x, y)| x + y >= self.a) {
            return None;
        }
        let mut s = 0usize;
        for i in 0..self.c {
            if f[i] == 0 {
                continue;
            }
            for j in i + 1..self.c {
                s += e[j] * f[i];
            }
        }
        let coef = self.q_inv_pows[s % self.unity.a_prime as usize];
        Some((m + n, coef))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    fn e2() -> AlgebraSpec {
        let f = Field::prime(5).unwrap();
        AlgebraSpec::new(f.clone(), 2, 2, f.from_int(4)).unwrap()
    }

    fn e3() -> AlgebraSpec {
        let f = Field::prime(7).unwrap();
        AlgebraSpec::new(f.clone(), 3, 2, f.from_int(2)).unwrap()
    }

    #[test]
    fn dimensions_and_basis_order() {
        let a = e2();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.exponents(1), &[0, 1]);
        assert_eq!(a.exponents(2), &[1, 0]);
        assert_eq!(e3().dim(), 9);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(AlgebraSpec::new(f2, 2, 2, Fe::ONE).unwrap().dim(), 4);
    }

    #[test]
    fn wrong_q_rejected() {
        let f = Field::prime(5).unwrap();
        assert!(matches!(
            AlgebraSpec::new(f.clone(), 2, 2, f.from_int(2)),
            Err(Error::WrongRootOrder { expected: 2, got: 4 })
        ));
    }

    #[test]
    fn rewriting_examples() {
        let a = e2();
        let x1 = a.x(0);
        let x2 = a.x(1);
        assert!(a.mul(&a.mul(&x1, &x2), &x1).is_zero());
        let b = e3();
        let f = b.field().clone();
        let prod = b.mul(&b.x(1), &b.x(0));
        let expected = b.scale(f.from_int(4), &b.mul(&b.x(0), &b.x(1)));
        assert_eq!(prod, expected);
    }

    #[test]
    fn u_lambda_nilpotent() {
        let a = e2();
        let f = a.field().clone();
        let u = a.u_lambda(&[Fe::ONE, Fe::ONE]).unwrap();
        assert!(a.mul(&u, &u).is_zero());
        let b = e3();
        let u = b.u_lambda(&[Fe::ONE, Fe::ONE]).unwrap();
        assert!(!b.mul(&u, &u).is_zero());
        assert!(b.pow(&u, 3).is_zero());
        assert_eq!(a.u_lambda(&[Fe::ONE, f.zero()]).unwrap(), a.x(0));
    }
}

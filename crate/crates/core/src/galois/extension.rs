use std::sync::Arc;

use super::{Elem, Field};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

/// GF(q^m) built directly over F_p, together with an embedding of GF(q)
/// and a GF(q)-basis e_i = θ^i.
#[derive(Clone, Debug)]
pub struct ExtensionField {
    base: Arc<Field>,
    big: Arc<Field>,
    m: u32,
    embedding: Vec<Elem>,
    generator: Elem,
    basis: Vec<Elem>,
    /// Inverse of the F_p-matrix sending coordinate digits to big-field digits.
    decompose: FpMatrix,
}

impl ExtensionField {
    /// The default tower: GF(p)[y]/(M(y)) of degree h*m with the lowest
    /// irreducible M, GF(q) identified through the smallest root of the base
    /// modulus, and θ = y.
    pub fn new(base: Arc<Field>, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let degree = base.degree() * m;
        let big = Arc::new(Field::new(base.p(), degree, None)?);
        let generator = if degree >= 2 { Elem(base.p()) } else { Elem::ONE };
        Self::with_generator(base, big, m, generator)
    }

    /// Uses `generator` for the basis θ^0, …, θ^(m-1); fails if those powers
    /// are not GF(q)-independent.
    pub fn with_generator(base: Arc<Field>, big: Arc<Field>, m: u32, generator: Elem) -> Result<Self> {
        if big.p() != base.p() || big.degree() != base.degree() * m {
            return Err(Error::InvalidField("big field has the wrong order".into()));
        }
        big.elem(generator.0)?;
        let modulus = base.modulus();
        let root = big
            .elements()
            .find(|&y| {
                modulus
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, y), Elem(c)))
                    .is_zero()
            })
            .ok_or_else(|| Error::InvalidField("base modulus has no root in the extension".into()))?;
        let h = base.degree() as usize;
        let embedding: Vec<Elem> = base
            .elements()
            .map(|a| {
                let mut acc = Elem::ZERO;
                let mut power = Elem::ONE;
                for (i, c) in base.coeffs(a).into_iter().enumerate() {
                    if i > 0 {
                        power = big.mul(power, root);
                    }
                    acc = big.add(acc, big.mul(Elem(c), power));
                }
                acc
            })
            .collect();
        let basis: Vec<Elem> = (0..m).map(|i| big.pow(generator, i as u64)).collect();

        // Rows: digits of embed(x^j) * θ^i, ordered (i, j) to match compose().
        let n = h * m as usize;
        let mut rows = FpMatrix::zeros(base.p(), n, n)?;
        for (i, &e) in basis.iter().enumerate() {
            for j in 0..h {
                let x_j = Elem(base.p().pow(j as u32));
                let v = big.mul(embedding[x_j.0 as usize], e);
                for (col, c) in big.coeffs(v).into_iter().enumerate() {
                    rows.set(i * h + j, col, c);
                }
            }
        }
        let decompose = rows
            .inverse()
            .ok_or_else(|| Error::InvalidField("generator powers are not GF(q)-independent".into()))?;
        Ok(ExtensionField { base, big, m, embedding, generator, basis, decompose })
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.embedding[a.0 as usize]
    }

    /// sum_i embed(coords[i]) * e_i.
    pub fn compose(&self, coords: &[Elem]) -> Elem {
        coords
            .iter()
            .zip(&self.basis)
            .fold(Elem::ZERO, |acc, (&a, &e)| self.big.add(acc, self.big.mul(self.embed(a), e)))
    }

    /// The GF(q)-coordinates of `z` in the basis e_i.
    pub fn decompose(&self, z: Elem) -> Vec<Elem> {
        let h = self.base.degree() as usize;
        let digits = self.big.coeffs(z);
        let coeffs = self.decompose.left_mul(&digits);
        coeffs
            .chunks(h)
            .map(|c| self.base.from_coeffs(c).expect("digits are reduced"))
            .collect()
    }
}

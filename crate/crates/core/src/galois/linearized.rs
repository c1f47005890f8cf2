use serde::{Deserialize, Serialize};

use super::{Elem, Field};

/// An F_p-linearized polynomial f(x) = sum_i a_i x^(p^i) over GF(p^h).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearizedPoly {
    /// a_0, …, a_(h-1); missing trailing coefficients are zero.
    pub coeffs: Vec<Elem>,
}

impl LinearizedPoly {
    pub fn new(coeffs: Vec<Elem>) -> Self {
        LinearizedPoly { coeffs }
    }

    /// The monomial x^(p^i).
    pub fn monomial(i: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; i + 1];
        coeffs[i] = Elem::ONE;
        LinearizedPoly { coeffs }
    }

    pub fn identity() -> Self {
        Self::monomial(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut power = x;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = field.pow(power, field.p() as u64);
            }
            if !a.is_zero() {
                acc = field.add(acc, field.mul(a, power));
            }
        }
        acc
    }
}

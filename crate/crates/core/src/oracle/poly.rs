use serde::{Deserialize, Serialize};

use crate::galois::{Elem, Field};

/// Dense univariate polynomial, coefficients lowest degree first, with no
/// trailing zeros. Operations take the owning field explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Elem::ONE] }
    }

    /// c X^n.
    pub fn monomial(c: Elem, n: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn add(&self, f: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, f: &Field, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(out)
    }

    /// Multiplies in place by (X + c).
    pub fn mul_linear(&mut self, f: &Field, c: Elem) {
        if self.is_zero() {
            return;
        }
        self.coeffs.push(Elem::ZERO);
        for i in (0..self.coeffs.len()).rev() {
            let lower = if i > 0 { self.coeffs[i - 1] } else { Elem::ZERO };
            self.coeffs[i] = f.add(lower, f.mul(c, self.coeffs[i]));
        }
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> UniPoly {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, f: &Field, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let d = divisor.degree().expect("nonzero divisor");
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + d], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, b));
            }
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Horner evaluation.
    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf9() -> Field {
        Field::new(3, 2, None).unwrap()
    }

    fn poly(v: &[u32]) -> UniPoly {
        UniPoly::new(v.iter().map(|&x| Elem(x)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(poly(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(poly(&[0, 0]).degree(), None);
    }

    #[test]
    fn linear_products_match_general_multiplication() {
        let f = gf9();
        let mut a = UniPoly::one();
        let mut b = UniPoly::one();
        for c in [3u32, 0, 7, 7, 1] {
            a.mul_linear(&f, Elem(c));
            b = b.mul(&f, &poly(&[c, 1]));
        }
        assert_eq!(a, b);
        assert!(a.is_monic());
        assert_eq!(a.degree(), Some(5));
    }

    proptest! {
        #[test]
        fn division_identity(a in proptest::collection::vec(0u32..9, 0..12), b in proptest::collection::vec(0u32..9, 1..6)) {
            let f = gf9();
            let (a, b) = (poly(&a), poly(&b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&f, &b);
            prop_assert_eq!(q.mul(&f, &b).add(&f, &r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn evaluation_is_multiplicative(a in proptest::collection::vec(0u32..9, 0..8), b in proptest::collection::vec(0u32..9, 0..8), x in 0u32..9) {
            let f = gf9();
            let (a, b) = (poly(&a), poly(&b));
            let x = Elem(x);
            prop_assert_eq!(a.mul(&f, &b).eval(&f, x), f.mul(a.eval(&f, x), b.eval(&f, x)));
        }
    }
}

//! Exact arithmetic in GF(p^d).
//!
//! An element is stored as the integer encoding of its coefficient vector
//! over F_p (constant coefficient least significant), so element `i` has
//! coefficients given by the base-p digits of `i`. Zero is index 0 and one is
//! index 1. Multiplication uses exponent/logarithm tables for fields of up to
//! 2^20 elements and falls back to polynomial multiplication above that.

mod extension;
pub(crate) mod fp_poly;
mod linearized;
mod lucas;

pub use extension::ExtensionField;
pub use linearized::LinearizedPoly;
pub use lucas::lucas_binom;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TABLE_LIMIT: u32 = 1 << 20;
const ORDER_LIMIT: u64 = 1 << 24;

/// Index of an element in its field's canonical order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Fingerprint of a field, derived from its characteristic and modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldId(pub u64);

/// An element tagged with the field it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    pub field: FieldId,
    pub value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow(u64),
}

/// JSON form of a field: `{"p":…, "degree":…, "modulus":[c0,…,cd]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub degree: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    id: FieldId,
    /// exp[i] = g^i for 0 <= i < 2(order-1), g the generator found at construction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn fingerprint(p: u32, modulus: &[u32]) -> FieldId {
    // FNV-1a over (p, modulus)
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in std::iter::once(p).chain(modulus.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    FieldId(h)
}

impl Field {
    /// Builds GF(p^degree). Without a modulus the lowest monic irreducible
    /// polynomial is used, ordering candidates by the integer encoding of their
    /// lower coefficients.
    pub fn new(p: u32, degree: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if degree == 0 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&o| o <= ORDER_LIMIT)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{degree} exceeds 2^24 elements")))?
            as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != degree as usize + 1 || m[degree as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {degree}, got {m:?}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(format!("modulus coefficients must be < {p}")));
                }
                if !fp_poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => default_modulus(p, degree),
        };
        let mut field = Field {
            p,
            degree,
            order,
            id: fingerprint(p, &modulus),
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if order <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn from_description(desc: &FieldDescription) -> Result<Field> {
        Field::new(desc.p, desc.degree, Some(&desc.modulus))
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription { p: self.p, degree: self.degree, modulus: self.modulus.clone() }
    }

    fn build_tables(&mut self) {
        let n = (self.order - 1) as u64;
        let factors = prime_factors(n);
        let gen = (1..self.order)
            .map(Elem)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, n / r) != Elem::ONE))
            .expect("multiplicative group of a finite field is cyclic");
        let n = n as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.order as usize];
        let mut cur = Elem::ONE;
        for i in 0..n {
            exp[i] = cur.0;
            exp[i + n] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_slow(cur, gen);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.order {
            Ok(Elem(index))
        } else {
            Err(Error::ElementOutOfRange(index))
        }
    }

    pub fn tagged(&self, e: Elem) -> FieldElement {
        FieldElement { field: self.id, value: e }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// The residue of a prime-subfield element, `None` if it is not in F_p.
    pub fn to_prime(&self, a: Elem) -> Option<u32> {
        (a.0 < self.p).then_some(a.0)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.degree)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.degree as usize {
            return Err(Error::InvalidField(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.degree
            )));
        }
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::InvalidField(format!("coefficient {c} >= p")));
            }
            idx = idx * self.p + c;
        }
        Ok(Elem(idx))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.degree == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while x | y != 0 {
            let mut d = x % p + y % p;
            if d >= p {
                d -= p;
            }
            out += d * place;
            place = place.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        while x != 0 {
            let d = x % p;
            if d != 0 {
                out += (p - d) * place;
            }
            place = place.wrapping_mul(p);
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        if self.exp.is_empty() {
            return self.mul_slow(a, b);
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[i as usize])
    }

    /// Multiplication by polynomial product and reduction, independent of the tables.
    pub fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let prod = fp_poly::mulmod(&self.coeffs(a), &self.coeffs(b), &self.modulus, self.p);
        self.from_coeffs(&prod).expect("reduced product has degree < d")
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^(p^d - 2).
    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        (!a.is_zero()).then(|| self.pow(a, self.order as u64 - 2))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        self.try_inv(a).ok_or(Error::InverseOfZero)
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^(p^i) by i successive p-th powers.
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        (0..i).fold(a, |x, _| self.pow(x, self.p as u64))
    }

    /// Range-checked arithmetic on tagged elements; binary operations need `b`.
    pub fn arith(&self, op: ArithOp, a: FieldElement, b: Option<FieldElement>) -> Result<FieldElement> {
        let own = |x: FieldElement| -> Result<Elem> {
            if x.field != self.id {
                return Err(Error::FieldMismatch);
            }
            self.elem(x.value.0)
        };
        let x = own(a)?;
        let rhs = || -> Result<Elem> {
            own(b.ok_or_else(|| Error::InvalidField("binary operation needs two operands".into()))?)
        };
        let value = match op {
            ArithOp::Add => self.add(x, rhs()?),
            ArithOp::Sub => self.sub(x, rhs()?),
            ArithOp::Mul => self.mul(x, rhs()?),
            ArithOp::Neg => self.neg(x),
            ArithOp::Inv => self.inv(x)?,
            ArithOp::Pow(e) => self.pow(x, e),
        };
        Ok(self.tagged(value))
    }

    /// Fixed points of the Frobenius map: is `a` in the prime subfield?
    pub fn in_prime_subfield(&self, a: Elem) -> bool {
        a.0 < self.p
    }
}

fn default_modulus(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as u64).pow(degree);
    for idx in 0..count {
        let mut f: Vec<u32> = (0..degree).map(|i| (idx / (p as u64).pow(i) % p as u64) as u32).collect();
        f.push(1);
        if degree == 1 || fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

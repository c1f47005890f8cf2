//! Parsing of linearized polynomials such as `x^3`, `2*x + x^9` or `01*x^3`.
//!
//! A coefficient is a digit string of GF(q) coefficients, constant term first.
//! Exponents must be powers of p below q.

use anyhow::{anyhow, bail, Result};
use modp_core::galois::{Elem, Field, LinearizedPoly};

fn parse_coefficient(field: &Field, s: &str) -> Result<Elem> {
    let digits = s
        .chars()
        .map(|c| c.to_digit(36).filter(|&d| d < field.p()).ok_or_else(|| anyhow!("bad coefficient digit '{c}' in '{s}'")))
        .collect::<Result<Vec<u32>>>()?;
    Ok(field.from_coeffs(&digits)?)
}

fn parse_exponent(field: &Field, s: &str) -> Result<usize> {
    let e: u64 = s.parse().map_err(|_| anyhow!("bad exponent '{s}'"))?;
    let mut power = 1u64;
    for i in 0..field.degree() as usize {
        if power == e {
            return Ok(i);
        }
        power *= field.p() as u64;
    }
    bail!("exponent {e} is not p^i with p^i < q = {}", field.order())
}

pub fn parse_linearized(field: &Field, text: &str) -> Result<LinearizedPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        bail!("empty polynomial");
    }
    let mut coeffs = vec![Elem::ZERO; field.degree() as usize];
    for term in compact.split('+') {
        let (coef, mono) = match term.split_once('*') {
            Some((c, m)) => (parse_coefficient(field, c)?, m),
            None => (Elem::ONE, term),
        };
        let i = match mono.strip_prefix('x').ok_or_else(|| anyhow!("term '{term}' has no x"))? {
            "" => 0,
            rest => parse_exponent(field, rest.strip_prefix('^').ok_or_else(|| anyhow!("bad term '{term}'"))?)?,
        };
        coeffs[i] = field.add(coeffs[i], coef);
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(LinearizedPoly::new(coeffs))
}

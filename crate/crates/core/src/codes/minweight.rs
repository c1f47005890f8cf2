//! Exhaustive enumeration of a dual code from a basis.
//!
//! Coefficient vectors run through the modular p-ary Gray code: going from n to
//! n + 1 adds basis vector j, where j is the number of trailing digits p-1 of
//! n. Each step touches only the support of one basis vector. The range
//! 1..p^d is split into chunks scanned in parallel; a chunk computes its first
//! codeword directly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CharVector, IncidenceCode};
use crate::error::{Error, Result};
use crate::geometry::{Geometry, Kind};

pub const DEFAULT_BUDGET: u128 = 1 << 24;

const CHUNK: u128 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// w(s), the number of nonzero coordinates.
    Weight,
    /// σ(s), the integer coordinate sum.
    Sigma,
}

/// A codeword seen during enumeration.
pub struct Codeword<'a> {
    pub values: &'a [u8],
    pub weight: usize,
    pub sigma: u64,
}

/// Calls `visit` on every nonzero codeword of the span of `basis`, folding
/// per-chunk states that are finally merged with `merge`.
pub fn scan_codewords<S, I, V, M>(
    p: u32,
    basis: &[Vec<u8>],
    budget: u128,
    init: I,
    visit: V,
    merge: M,
) -> Result<S>
where
    S: Send,
    I: Fn() -> S + Sync,
    V: Fn(&mut S, &Codeword) + Sync,
    M: Fn(S, S) -> S + Sync,
{
    let d = basis.len();
    let total = (p as u128).checked_pow(d as u32).filter(|&t| t <= budget);
    let Some(total) = total else {
        return Err(Error::BudgetExceeded { dual_dim: d, budget });
    };
    let len = basis.first().map_or(0, |b| b.len());
    let supports: Vec<Vec<(usize, u8)>> = basis
        .iter()
        .map(|b| b.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect())
        .collect();
    let chunks = total.div_ceil(CHUNK) as u64;
    let scan_chunk = |c: u64| {
        let mut state = init();
        let start = (c as u128 * CHUNK).max(1);
        let end = ((c as u128 + 1) * CHUNK).min(total);
        if start >= end {
            return state;
        }
        let mut values = gray_codeword(p, &supports, len, start);
        let mut weight = values.iter().filter(|&&x| x != 0).count();
        let mut sigma: u64 = values.iter().map(|&x| x as u64).sum();
        let mut n = start;
        loop {
            visit(&mut state, &Codeword { values: &values, weight, sigma });
            if n + 1 >= end {
                break;
            }
            let j = trailing_top_digits(n, p);
            for &(i, x) in &supports[j] {
                let old = values[i];
                let new = ((old as u32 + x as u32) % p) as u8;
                values[i] = new;
                weight = weight + (new != 0) as usize - (old != 0) as usize;
                sigma = sigma + new as u64 - old as u64;
            }
            n += 1;
        }
        state
    };
    Ok((0..chunks).into_par_iter().map(scan_chunk).reduce(&init, &merge))
}

fn trailing_top_digits(mut n: u128, p: u32) -> usize {
    let p = p as u128;
    let mut j = 0;
    while n % p == p - 1 {
        n /= p;
        j += 1;
    }
    j
}

/// Codeword for Gray index n: digit g_i = n_i - n_(i+1) mod p.
fn gray_codeword(p: u32, supports: &[Vec<(usize, u8)>], len: usize, n: u128) -> Vec<u8> {
    let mut values = vec![0u32; len];
    let mut digits = Vec::with_capacity(supports.len() + 1);
    let mut x = n;
    for _ in 0..=supports.len() {
        digits.push((x % p as u128) as u32);
        x /= p as u128;
    }
    for (i, s) in supports.iter().enumerate() {
        let g = (digits[i] + p - digits[i + 1]) % p;
        if g == 0 {
            continue;
        }
        for &(pos, v) in s {
            values[pos] = (values[pos] + g * v as u32) % p;
        }
    }
    values.into_iter().map(|v| v as u8).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualMinima {
    pub dual_dim: usize,
    pub codewords: u128,
    pub min_weight: usize,
    pub weight_witness: CharVector,
    pub min_sigma: u64,
    pub sigma_witness: CharVector,
}

#[derive(Clone)]
struct Best {
    weight: Option<(usize, Vec<u8>)>,
    sigma: Option<(u64, Vec<u8>)>,
    count: u128,
}

fn better<T: Ord>(a: Option<(T, Vec<u8>)>, b: Option<(T, Vec<u8>)>) -> Option<(T, Vec<u8>)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.0 < x.0 { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Minimum w and minimum σ over all nonzero codewords spanned by `basis`.
/// Returns `None` for the zero code.
pub fn minima_of_span(p: u32, basis: &[Vec<u8>], budget: u128) -> Result<Option<DualMinima>> {
    let best = scan_codewords(
        p,
        basis,
        budget,
        || Best { weight: None, sigma: None, count: 0 },
        |b, c| {
            b.count += 1;
            if b.weight.as_ref().is_none_or(|(w, _)| c.weight < *w) {
                b.weight = Some((c.weight, c.values.to_vec()));
            }
            if b.sigma.as_ref().is_none_or(|(s, _)| c.sigma < *s) {
                b.sigma = Some((c.sigma, c.values.to_vec()));
            }
        },
        |a, b| Best { weight: better(a.weight, b.weight), sigma: better(a.sigma, b.sigma), count: a.count + b.count },
    )?;
    let (Some((min_weight, wv)), Some((min_sigma, sv))) = (best.weight, best.sigma) else {
        return Ok(None);
    };
    Ok(Some(DualMinima {
        dual_dim: basis.len(),
        codewords: best.count,
        min_weight,
        weight_witness: CharVector::new(p, wv)?,
        min_sigma,
        sigma_witness: CharVector::new(p, sv)?,
    }))
}

pub fn dual_minima(code: &IncidenceCode, budget: u128) -> Result<Option<DualMinima>> {
    let d = code.dual_dim();
    if (code.p() as u128).checked_pow(d as u32).is_none_or(|t| t > budget) {
        return Err(Error::BudgetExceeded { dual_dim: d, budget });
    }
    minima_of_span(code.p(), &code.dual_basis(), budget)
}

/// Minimum of one metric with a witness codeword.
pub fn min_weight_exhaustive(code: &IncidenceCode, metric: Metric, budget: u128) -> Result<Option<(u64, CharVector)>> {
    Ok(dual_minima(code, budget)?.map(|m| match metric {
        Metric::Weight => (m.min_weight as u64, m.weight_witness),
        Metric::Sigma => (m.min_sigma, m.sigma_witness),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KspaceMinWeight {
    pub m: usize,
    pub k: usize,
    /// Minimum weight of the dual of the points-vs-k-spaces code of PG(m,q).
    pub min_weight: usize,
    /// Minimum weight of the dual of the points-vs-lines code of PG(m-k+1,q).
    pub reduced_min_weight: usize,
}

pub fn kspace_dual_minweight(pg: &Geometry, k: usize, budget: u128) -> Result<KspaceMinWeight> {
    if pg.kind() != Kind::Projective || k == 0 || k > pg.m() {
        return Err(Error::InvalidGeometry(format!("need 1 <= k <= m in a projective space, got k = {k}")));
    }
    let code = IncidenceCode::new(pg, k)?;
    let min_weight = dual_minima(&code, budget)?.map_or(0, |m| m.min_weight);
    let reduced = Geometry::new(Kind::Projective, pg.field().clone(), pg.m() - k + 1, pg.caps())?;
    let reduced_code = IncidenceCode::lines(&reduced)?;
    let reduced_min_weight = dual_minima(&reduced_code, budget)?.map_or(0, |m| m.min_weight);
    Ok(KspaceMinWeight { m: pg.m(), k, min_weight, reduced_min_weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;
    use std::sync::Arc;

    fn pg(p: u32, h: u32, m: usize) -> Geometry {
        Geometry::projective(Arc::new(Field::new(p, h, None).unwrap()), m).unwrap()
    }

    /// Plain odometer over all coefficient vectors, for comparison.
    fn brute_minima(p: u32, basis: &[Vec<u8>]) -> (usize, u64, u128) {
        let d = basis.len();
        let len = basis[0].len();
        let mut best = (usize::MAX, u64::MAX, 0u128);
        for n in 1..(p as u128).pow(d as u32) {
            let mut v = vec![0u32; len];
            let mut x = n;
            for b in basis {
                let c = (x % p as u128) as u32;
                x /= p as u128;
                for (o, &y) in v.iter_mut().zip(b) {
                    *o = (*o + c * y as u32) % p;
                }
            }
            let w = v.iter().filter(|&&a| a != 0).count();
            let s: u64 = v.iter().map(|&a| a as u64).sum();
            best = (best.0.min(w), best.1.min(s), best.2 + 1);
        }
        best
    }

    #[test]
    fn gray_steps_change_one_digit() {
        for p in [2u32, 3, 5] {
            let digits = |n: u128| -> Vec<u32> {
                let d: Vec<u32> = (0..5).map(|i| (n / (p as u128).pow(i) % p as u128) as u32).collect();
                (0..4).map(|i| (d[i] + p - d[i + 1]) % p).collect()
            };
            for n in 0..(p as u128).pow(4) - 1 {
                let (a, b) = (digits(n), digits(n + 1));
                let j = trailing_top_digits(n, p);
                for i in 0..4 {
                    let expect = if i == j { (a[i] + 1) % p } else { a[i] };
                    assert_eq!(b[i], expect);
                }
            }
        }
    }

    #[test]
    fn gray_enumeration_matches_odometer() {
        for (p, h, m) in [(2, 1, 2), (3, 1, 2), (2, 1, 3), (2, 2, 2)] {
            let code = IncidenceCode::lines(&pg(p, h, m)).unwrap();
            let basis = code.dual_basis();
            let got = minima_of_span(p, &basis, DEFAULT_BUDGET).unwrap().unwrap();
            let (w, s, n) = brute_minima(p, &basis);
            assert_eq!((got.min_weight, got.min_sigma, got.codewords), (w, s, n));
            assert!(code.dual_contains(&got.weight_witness).unwrap());
            assert_eq!(got.weight_witness.weight(), got.min_weight);
            assert_eq!(got.sigma_witness.sigma(), got.min_sigma);
            assert!(got.min_sigma >= got.min_weight as u64);
        }
    }

    #[test]
    fn small_dual_minima() {
        let m = dual_minima(&IncidenceCode::lines(&pg(2, 1, 2)).unwrap(), DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(m.min_weight, 4);
        let m = dual_minima(&IncidenceCode::lines(&pg(3, 1, 2)).unwrap(), DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(m.min_weight, 6);
        let m = dual_minima(&IncidenceCode::lines(&pg(3, 2, 1)).unwrap(), DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!((m.min_weight, m.min_sigma), (2, 3));
    }

    #[test]
    fn budget_is_enforced() {
        let code = IncidenceCode::lines(&pg(3, 2, 2)).unwrap();
        assert!(matches!(dual_minima(&code, DEFAULT_BUDGET), Err(Error::BudgetExceeded { dual_dim: 54, .. })));
    }

    #[test]
    fn kspace_reduction() {
        let g = pg(2, 1, 3);
        let planes = kspace_dual_minweight(&g, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((planes.min_weight, planes.reduced_min_weight), (4, 4));
        let lines = kspace_dual_minweight(&g, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(lines.min_weight, lines.reduced_min_weight);
        // Sets of even type in PG(3,2) have at least (q+p)q^(m-2) = 8 points.
        assert_eq!(lines.min_weight, 8);
        let full = kspace_dual_minweight(&g, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(full.min_weight, 2);
    }

    #[test]
    fn zero_one_dual_vectors_of_pg2_4() {
        // q = 4 > p = 2: every nonzero dual vector is 0/1 and has weight >= (p-1)(q+p).
        let code = IncidenceCode::lines(&pg(2, 2, 2)).unwrap();
        let low = scan_codewords(
            2,
            &code.dual_basis(),
            DEFAULT_BUDGET,
            || usize::MAX,
            |b, c| *b = (*b).min(c.weight),
            usize::min,
        )
        .unwrap();
        assert_eq!(low, 6);
    }
}

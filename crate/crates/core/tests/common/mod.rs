//! Brute-force reference computations shared by the integration tests. They
//! avoid the library's block enumeration and linear algebra on purpose.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use modp_core::galois::{Elem, Field};
use modp_core::geometry::Geometry;

pub fn field(p: u32, h: u32) -> Arc<Field> {
    Arc::new(Field::new(p, h, None).unwrap())
}

pub fn pg(p: u32, h: u32, m: usize) -> Geometry {
    Geometry::projective(field(p, h), m).unwrap()
}

fn normalize(f: &Field, v: &[Elem]) -> Vec<Elem> {
    let lead = *v.iter().find(|c| !c.is_zero()).expect("nonzero vector");
    let inv = f.inv(lead).unwrap();
    v.iter().map(|&c| f.mul(c, inv)).collect()
}

/// Every line of PG(m,q) as a sorted point list, built from pairs of points.
pub fn lines(pg: &Geometry) -> Vec<Vec<u32>> {
    let f = pg.field();
    let n = pg.num_points();
    let vecs: Vec<Vec<Elem>> = (0..n).map(|i| pg.homogeneous(i)).collect();
    let index: HashMap<Vec<Elem>, u32> = vecs.iter().enumerate().map(|(i, v)| (normalize(f, v), i as u32)).collect();
    let mut covered = vec![false; n * n];
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            if covered[a * n + b] {
                continue;
            }
            let mut line: Vec<u32> = vec![b as u32];
            for lambda in f.elements() {
                let w: Vec<Elem> = vecs[a].iter().zip(&vecs[b]).map(|(&x, &y)| f.add(x, f.mul(lambda, y))).collect();
                line.push(index[&normalize(f, &w)]);
            }
            line.sort_unstable();
            for &x in &line {
                for &y in &line {
                    covered[x as usize * n + y as usize] = true;
                }
            }
            out.insert(line);
        }
    }
    out.into_iter().collect()
}

/// Hyperplanes of PG(m,q) as point lists, from the equations a·x = 0.
pub fn hyperplanes(pg: &Geometry) -> Vec<Vec<u32>> {
    let f = pg.field();
    (0..pg.num_points())
        .map(|a| {
            let normal = pg.homogeneous(a);
            (0..pg.num_points() as u32)
                .filter(|&x| {
                    let v = pg.homogeneous(x as usize);
                    normal.iter().zip(&v).fold(Elem::ZERO, |acc, (&s, &t)| f.add(acc, f.mul(s, t))).is_zero()
                })
                .collect()
        })
        .collect()
}

pub fn block_sums_vanish(p: u32, blocks: &[Vec<u32>], values: &[u8]) -> bool {
    blocks.iter().all(|b| b.iter().map(|&x| values[x as usize] as u64).sum::<u64>() % p as u64 == 0)
}

/// Minimum weight and minimum coordinate sum over all nonzero vectors of
/// F_p^n orthogonal to every block, by enumerating all p^n vectors.
pub fn brute_dual_minima(p: u32, n: usize, blocks: &[Vec<u32>]) -> Option<(usize, u64)> {
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            through[x as usize].push(i);
        }
    }
    let mut digits = vec![0u32; n];
    let mut sums = vec![0u32; blocks.len()];
    let mut nonzero_sums = 0usize;
    let mut best: Option<(usize, u64)> = None;
    loop {
        let mut i = 0;
        while i < n && digits[i] == p - 1 {
            digits[i] = 0;
            for &b in &through[i] {
                let before = sums[b];
                sums[b] = (sums[b] + 1) % p;
                nonzero_sums = nonzero_sums + (sums[b] != 0) as usize - (before != 0) as usize;
            }
            i += 1;
        }
        if i == n {
            return best;
        }
        digits[i] += 1;
        for &b in &through[i] {
            let before = sums[b];
            sums[b] = (sums[b] + 1) % p;
            nonzero_sums = nonzero_sums + (sums[b] != 0) as usize - (before != 0) as usize;
        }
        if nonzero_sums == 0 {
            let w = digits.iter().filter(|&&d| d != 0).count();
            let s: u64 = digits.iter().map(|&d| d as u64).sum();
            best = Some(match best {
                None => (w, s),
                Some((bw, bs)) => (bw.min(w), bs.min(s)),
            });
        }
    }
}

/// [n choose k]_q from the product formula.
pub fn gaussian(n: u32, k: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Coefficient-wise polynomial product over `f`, lowest degree first.
pub fn poly_mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

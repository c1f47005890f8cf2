//! Row reduction over GF(q) and enumeration of reduced row-echelon matrices.

use serde::{Deserialize, Serialize};

use crate::galois::{Elem, Field};

/// A subspace of PG(m,q) of projective dimension `dim`, stored as its unique
/// reduced row-echelon basis of `dim + 1` rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    pub dim: usize,
    pub basis: Vec<Vec<Elem>>,
    /// Position in the canonical enumeration of `dim`-spaces.
    pub index: usize,
}

/// Reduced row-echelon form in place; zero rows are removed. Returns pivots.
pub fn rref_over(field: &Field, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(pr, r);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = field.neg(row[c]);
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = field.add(*x, field.mul(f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank_over(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref_over(field, &mut m).len()
}

/// Basis of {x : rows * x = 0} in reduced echelon form.
pub fn nullspace_over(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref_over(field, &mut m);
    let mut basis: Vec<Vec<Elem>> = (0..cols)
        .filter(|f| !pivots.contains(f))
        .map(|f| {
            let mut v = vec![Elem::ZERO; cols];
            v[f] = Elem::ONE;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(m[i][f]);
            }
            v
        })
        .collect();
    rref_over(field, &mut basis);
    basis
}

pub fn inverse_over(field: &Field, a: &[Vec<Elem>]) -> Option<Vec<Vec<Elem>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Elem>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }));
            r
        })
        .collect();
    let pivots = rref_over(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(field: &Field, a: &[Vec<Elem>], x: &[Elem]) -> Vec<Elem> {
    a.iter().map(|row| dot(field, row, x)).collect()
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Free (non-pivot) positions of an RREF matrix with the given pivots, in
/// row-major order.
fn free_positions(pivots: &[usize], cols: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &c) in pivots.iter().enumerate() {
        for j in c + 1..cols {
            if !pivots.contains(&j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Number of RREF matrices of full rank `rows` with `cols` columns over a
/// field of order q, i.e. the Gaussian binomial [cols choose rows]_q.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Canonical position of an RREF matrix among all RREF matrices of its shape:
/// pivot sets in lexicographic order, then free entries read as a base-q
/// number with the first free position most significant.
pub fn rref_position(q: u64, basis: &[Vec<Elem>], pivots: &[usize]) -> u128 {
    let k = basis.len();
    let cols = basis.first().map_or(0, |r| r.len());
    let mut combo: Vec<usize> = (0..k).collect();
    let mut pos = 0u128;
    while combo != pivots {
        pos += (q as u128).pow(free_positions(&combo, cols).len() as u32);
        if !next_combination(&mut combo, cols) {
            break;
        }
    }
    let tail = free_positions(pivots, cols)
        .into_iter()
        .fold(0u128, |acc, (i, j)| acc * q as u128 + basis[i][j].0 as u128);
    pos + tail
}

/// Iterates over every RREF matrix with `rows` rows, `cols` columns and full
/// row rank, in canonical order.
pub struct RrefEnumerator {
    q: u32,
    cols: usize,
    combo: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    done: bool,
}

impl RrefEnumerator {
    pub fn new(q: u32, rows: usize, cols: usize) -> Self {
        let combo: Vec<usize> = (0..rows).collect();
        let free = free_positions(&combo, cols);
        RrefEnumerator {
            q,
            cols,
            counter: vec![0; free.len()],
            free,
            combo,
            done: rows > cols || rows == 0,
        }
    }

    fn current(&self) -> Vec<Vec<Elem>> {
        let mut m = vec![vec![Elem::ZERO; self.cols]; self.combo.len()];
        for (i, &c) in self.combo.iter().enumerate() {
            m[i][c] = Elem::ONE;
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.counter) {
            m[i][j] = Elem(v);
        }
        m
    }

    fn advance(&mut self) {
        for d in self.counter.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        if next_combination(&mut self.combo, self.cols) {
            self.free = free_positions(&self.combo, self.cols);
            self.counter = vec![0; self.free.len()];
        } else {
            self.done = true;
        }
    }
}

impl Iterator for RrefEnumerator {
    type Item = Vec<Vec<Elem>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let m = self.current();
        self.advance();
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 2, 9), 91);
        assert_eq!(gaussian_binomial(4, 2, 9), 7462);
        assert_eq!(gaussian_binomial(6, 4, 3), 11011);
        assert_eq!(gaussian_binomial(4, 3, 2), 15);
    }

    #[test]
    fn enumerator_counts_and_positions() {
        for (q, rows, cols) in [(2u32, 2usize, 4usize), (3, 2, 3), (3, 4, 6), (4, 1, 3)] {
            let mut n = 0u128;
            for m in RrefEnumerator::new(q, rows, cols) {
                let pivots: Vec<usize> = m.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
                assert_eq!(rref_position(q as u64, &m, &pivots), n);
                n += 1;
            }
            assert_eq!(n, gaussian_binomial(cols as u64, rows as u64, q as u64));
        }
    }

    #[test]
    fn enumerated_matrices_are_in_rref() {
        let f = Field::new(3, 2, None).unwrap();
        for m in RrefEnumerator::new(9, 2, 4).step_by(37) {
            let mut c = m.clone();
            rref_over(&f, &mut c);
            assert_eq!(c, m);
        }
    }

    #[test]
    fn inverse_and_nullspace_over_gf9() {
        let f = Field::new(3, 2, None).unwrap();
        let a = vec![vec![Elem(1), Elem(3), Elem(0)], vec![Elem(0), Elem(1), Elem(5)], vec![Elem(0), Elem(0), Elem(2)]];
        {
            let inv = inverse_over(&f, &a).expect("triangular with nonzero diagonal");
            for j in 0..3 {
                let col: Vec<Elem> = inv.iter().map(|r| r[j]).collect();
                let e = mat_vec(&f, &a, &col);
                for (i, x) in e.into_iter().enumerate() {
                    assert_eq!(x, if i == j { Elem::ONE } else { Elem::ZERO });
                }
            }
        }
        let ns = nullspace_over(&f, &a[..2], 3);
        assert_eq!(ns.len(), 1);
        for row in &a[..2] {
            assert!(dot(&f, row, &ns[0]).is_zero());
        }
    }
}

//! F_p-subspaces of F_q^n, the linear sets they define in PG(n-1,q), and the
//! symmetric-difference construction of (0 mod p)-multisets.
//!
//! A vector of F_q^n is flattened to F_p^(hn) coordinate by coordinate, each
//! coordinate contributing its h digits constant-first.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::PointMultiset;
use crate::error::{Error, Result};
use crate::galois::{Elem, Field, LinearizedPoly};
use crate::geometry::{gaussian_binomial, subspace::RrefEnumerator, Geometry};
use crate::linalg::FpMatrix;

#[derive(Clone, Debug)]
pub struct FpSubspace {
    field: Arc<Field>,
    n: usize,
    basis: FpMatrix,
}

pub fn flatten(field: &Field, v: &[Elem]) -> Vec<u8> {
    v.iter().flat_map(|&x| field.coeffs(x)).map(|c| c as u8).collect()
}

pub fn unflatten(field: &Field, digits: &[u8]) -> Vec<Elem> {
    let h = field.degree() as usize;
    digits
        .chunks(h)
        .map(|c| {
            let d: Vec<u32> = c.iter().map(|&x| x as u32).collect();
            field.from_coeffs(&d).expect("digits are residues")
        })
        .collect()
}

impl FpSubspace {
    /// The F_p-span of the given vectors of F_q^n.
    pub fn span(field: Arc<Field>, n: usize, vectors: &[Vec<Elem>]) -> Result<Self> {
        let h = field.degree() as usize;
        let mut basis = FpMatrix::zeros(field.p(), 0, h * n)?;
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!("vector of length {} in F_q^{n}", v.len())));
            }
            basis.push_row(&flatten(&field, v))?;
        }
        basis.rref();
        Ok(FpSubspace { field, n, basis })
    }

    /// The row space of an F_p matrix with h*n columns.
    pub fn from_digits(field: Arc<Field>, n: usize, mut basis: FpMatrix) -> Result<Self> {
        if basis.num_cols() != field.degree() as usize * n || basis.p() != field.p() {
            return Err(Error::DimensionMismatch("basis does not match F_q^n".into()));
        }
        basis.rref();
        Ok(FpSubspace { field, n, basis })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Number of F_q coordinates.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.num_rows()
    }

    /// The canonical (reduced echelon) basis over F_p.
    pub fn digits(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<Elem>> {
        self.basis.rows().map(|r| unflatten(&self.field, r)).collect()
    }

    /// Calls `f` on one representative of each 1-dimensional F_p-subspace:
    /// the combinations whose first nonzero coefficient is 1.
    pub fn for_each_normalized_vector(&self, mut f: impl FnMut(&[Elem])) {
        let p = self.field.p();
        let r = self.rank();
        let rows: Vec<&[u8]> = self.basis.rows().collect();
        let cols = self.basis.num_cols();
        for lead in 0..r {
            let free = r - lead - 1;
            let mut coeffs = vec![0u32; free];
            loop {
                let mut v: Vec<u32> = rows[lead].iter().map(|&x| x as u32).collect();
                for (c, row) in coeffs.iter().zip(&rows[lead + 1..]) {
                    if *c != 0 {
                        for (o, &x) in v.iter_mut().zip(row.iter()) {
                            *o = (*o + c * x as u32) % p;
                        }
                    }
                }
                let digits: Vec<u8> = v.iter().map(|&x| x as u8).collect();
                debug_assert_eq!(digits.len(), cols);
                f(&unflatten(&self.field, &digits));
                if !odometer(&mut coeffs, p) {
                    break;
                }
            }
        }
    }
}

fn odometer(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The set of points of PG(n-1,q) defined by the nonzero vectors of U.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSet {
    /// Projective dimension of the ambient space.
    pub m: usize,
    pub rank: usize,
    /// Sorted point indices.
    pub points: Vec<u32>,
}

impl LinearSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    pub fn intersection(&self, other: &LinearSet) -> Vec<u32> {
        self.points.iter().copied().filter(|&x| other.contains(x)).collect()
    }

    pub fn difference(&self, other: &LinearSet) -> Vec<u32> {
        self.points.iter().copied().filter(|&x| !other.contains(x)).collect()
    }
}

pub fn linear_set(u: &FpSubspace) -> Result<LinearSet> {
    if u.rank() == 0 {
        return Err(Error::InvalidGeometry("a linear set needs rank at least 1".into()));
    }
    let pg = Geometry::projective(u.field.clone(), u.n - 1)?;
    Ok(linear_set_in(&pg, u))
}

fn linear_set_in(pg: &Geometry, u: &FpSubspace) -> LinearSet {
    let mut points = Vec::new();
    u.for_each_normalized_vector(|v| points.push(pg.index_of_homogeneous(v).expect("nonzero") as u32));
    points.sort_unstable();
    points.dedup();
    LinearSet { m: u.n - 1, rank: u.rank(), points }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterReport {
    pub scattered: bool,
    /// |{f(x)/x : x ≠ 0}|.
    pub values: usize,
}

pub fn is_scattered(f: &LinearizedPoly, field: &Field) -> Result<ScatterReport> {
    let mut seen = vec![false; field.order() as usize];
    let mut nonzero_map = false;
    for x in field.elements().skip(1) {
        let y = f.eval(field, x);
        nonzero_map |= !y.is_zero();
        seen[field.div(y, x)?.0 as usize] = true;
    }
    if !nonzero_map {
        return Err(Error::ZeroMap);
    }
    let values = seen.iter().filter(|&&s| s).count();
    let target = ((field.order() - 1) / (field.p() - 1)) as usize;
    Ok(ScatterReport { scattered: values == target, values })
}

fn unit(n: usize, i: usize, x: Elem) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n];
    v[i] = x;
    v
}

/// Powers x^j (j < h), an F_p-basis of GF(q).
fn fp_basis(field: &Field) -> Vec<Elem> {
    (0..field.degree()).map(|j| Elem(field.p().pow(j))).collect()
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidGeometry(format!("the construction needs m >= 2, got {m}")));
    }
    Ok(())
}

/// U = {(x_0, …, x_(m-2), f(x_0), y) : x_i ∈ F_q, y ∈ F_p} in F_q^(m+1).
pub fn construct_u(field: Arc<Field>, m: usize, f: &LinearizedPoly) -> Result<FpSubspace> {
    check_m(m)?;
    let n = m + 1;
    let mut vectors = Vec::new();
    for i in 0..m - 1 {
        for b in fp_basis(&field) {
            let mut v = unit(n, i, b);
            if i == 0 {
                v[m - 1] = f.eval(&field, b);
            }
            vectors.push(v);
        }
    }
    vectors.push(unit(n, m, Elem::ONE));
    FpSubspace::span(field, n, &vectors)
}

/// U = F_p-span of {(x, map(x), y)} for all x ∈ F_q^(m-1), y ∈ F_p. Fails
/// with a rank mismatch unless the span has rank h(m-1)+1, i.e. unless
/// `map` is additive.
pub fn construct_u_with_map(field: Arc<Field>, m: usize, map: impl Fn(&[Elem]) -> Elem) -> Result<FpSubspace> {
    check_m(m)?;
    let n = m + 1;
    let q = field.order() as usize;
    let count = (q as u128).pow((m - 1) as u32);
    if count > 1 << 20 {
        return Err(Error::CapExceeded { what: "map arguments", count, cap: 1 << 20 });
    }
    let mut vectors = vec![unit(n, m, Elem::ONE)];
    let mut x = vec![0u32; m - 1];
    loop {
        let args: Vec<Elem> = x.iter().map(|&a| Elem(a)).collect();
        let mut v = args.clone();
        v.push(map(&args));
        v.push(Elem::ZERO);
        vectors.push(v);
        if !odometer(&mut x, q as u32) {
            break;
        }
    }
    let u = FpSubspace::span(field.clone(), n, &vectors)?;
    let expected = field.degree() as usize * (m - 1) + 1;
    if u.rank() != expected {
        return Err(Error::RankMismatch { expected, actual: u.rank() });
    }
    Ok(u)
}

/// W = {(x_0, …, x_(m-2), y, 0) : x_i ∈ F_q, y ∈ F_p}.
pub fn construct_w(field: Arc<Field>, m: usize) -> Result<FpSubspace> {
    check_m(m)?;
    let n = m + 1;
    let mut vectors = Vec::new();
    for i in 0..m - 1 {
        for b in fp_basis(&field) {
            vectors.push(unit(n, i, b));
        }
    }
    vectors.push(unit(n, m - 1, Elem::ONE));
    FpSubspace::span(field, n, &vectors)
}

/// μ = t on L_U \ L_W and p - t on L_W \ L_U.
pub fn symdiff_multiset(pg: &Geometry, lu: &LinearSet, lw: &LinearSet, t: u32) -> Result<PointMultiset> {
    let p = pg.p();
    if t == 0 || t >= p {
        return Err(Error::DegenerateT { t, max: p - 1 });
    }
    if lu.m != pg.m() || lw.m != pg.m() {
        return Err(Error::DimensionMismatch("linear sets live in a different space".into()));
    }
    let expected = pg.field().degree() as usize * (pg.m() - 1) + 1;
    for l in [lu, lw] {
        if l.rank != expected {
            return Err(Error::RankMismatch { expected, actual: l.rank });
        }
    }
    let entries = lu.difference(lw).into_iter().map(|x| (x, t)).chain(lw.difference(lu).into_iter().map(|x| (x, p - t)));
    let m = PointMultiset::new(p, pg.num_points(), entries)?;
    if m.is_empty() {
        return Err(Error::DegenerateSymmetricDifference);
    }
    Ok(m)
}

/// The full construction for a linearized f and multiplicity t.
#[derive(Clone, Debug)]
pub struct Construction {
    pub u: FpSubspace,
    pub w: FpSubspace,
    pub lu: LinearSet,
    pub lw: LinearSet,
    pub multiset: PointMultiset,
}

pub fn construct(pg: &Geometry, f: &LinearizedPoly, t: u32) -> Result<Construction> {
    let u = construct_u(pg.field().clone(), pg.m(), f)?;
    let w = construct_w(pg.field().clone(), pg.m())?;
    let lu = linear_set_in(pg, &u);
    let lw = linear_set_in(pg, &w);
    let multiset = symdiff_multiset(pg, &lu, &lw, t)?;
    Ok(Construction { u, w, lu, lw, multiset })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvasiveReport {
    pub evasive: bool,
    /// Largest F_p-dimension of U ∩ H' over F_q-hyperplanes H'.
    pub max_intersection: usize,
    /// (n-2)h for U inside F_q^n.
    pub threshold: usize,
    pub rank: usize,
    pub hyperplanes: usize,
}

/// Does U ⊆ F_q^n meet every F_q-hyperplane in F_p-dimension at most (n-2)h?
pub fn evasive_check(u: &FpSubspace) -> Result<EvasiveReport> {
    let n = u.n();
    if n < 2 {
        return Err(Error::InvalidGeometry("evasiveness needs at least two coordinates".into()));
    }
    let field = u.field();
    let h = field.degree() as usize;
    let dual = Geometry::projective(field.clone(), n - 1)?;
    let basis = u.basis();
    let rank = basis.len();
    let max_intersection = (0..dual.num_points())
        .into_par_iter()
        .map(|i| {
            let a = dual.point_coords(i);
            let images: Vec<Vec<u8>> = basis.iter().map(|v| flatten(field, &[crate::geometry::subspace::dot(field, &a, v)])).collect();
            let m = FpMatrix::from_rows(field.p(), h, &images).expect("prime p");
            rank - m.rank()
        })
        .max()
        .unwrap_or(0);
    let threshold = (n - 2) * h;
    Ok(EvasiveReport { evasive: max_intersection <= threshold, max_intersection, threshold, rank, hyperplanes: dual.num_points() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxLinearSetReport {
    pub m: usize,
    pub rank: usize,
    pub mode: SearchMode,
    pub subspaces: u128,
    pub max_size: usize,
    /// F_p basis (flattened digits) of a subspace attaining the maximum.
    pub witness: Vec<Vec<u8>>,
    /// q^(m-1)(q-1)/(p-1) + (q^(m-1)-1)/(q-1), stated for rank hm.
    pub rank_hm_bound: u64,
    pub bound_applies: bool,
    pub within_bound: bool,
    /// (p^r - 1)/(p - 1).
    pub trivial_bound: u64,
}

pub const DEFAULT_SEARCH_CAP: u128 = 1_000_000;

pub fn rank_hm_bound(p: u32, h: u32, m: usize) -> u64 {
    let q = (p as u64).pow(h);
    let qm1 = q.pow(m as u32 - 1);
    qm1 * (q - 1) / (p as u64 - 1) + (qm1 - 1) / (q - 1)
}

/// Largest linear set of rank r in PG(m,q) over all (or sampled) rank-r
/// F_p-subspaces of F_p^(h(m+1)).
pub fn max_linearset_size(pg: &Geometry, r: usize, mode: SearchMode, cap: u128) -> Result<MaxLinearSetReport> {
    let field = pg.field().clone();
    let (p, h, m) = (field.p(), field.degree(), pg.m());
    let cols = h as usize * (m + 1);
    if r == 0 || r > cols {
        return Err(Error::InvalidGeometry(format!("rank {r} out of range 1..={cols}")));
    }
    let size_of = |rows: &[Vec<u8>]| -> usize {
        let mat = FpMatrix::from_rows(p, cols, rows).expect("prime p");
        let u = FpSubspace { field: field.clone(), n: m + 1, basis: mat };
        linear_set_in(pg, &u).len()
    };
    let (subspaces, best) = match mode {
        SearchMode::Exhaustive => {
            let count = gaussian_binomial(cols as u64, r as u64, p as u64);
            if count > cap {
                return Err(Error::CapExceeded { what: "subspaces", count, cap });
            }
            let best = RrefEnumerator::new(p, r, cols)
                .enumerate()
                .par_bridge()
                .map(|(i, b)| {
                    let rows: Vec<Vec<u8>> = b.iter().map(|row| row.iter().map(|e| e.0 as u8).collect()).collect();
                    (size_of(&rows), std::cmp::Reverse(i), rows)
                })
                .max_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
            (count, best)
        }
        SearchMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut draws = Vec::with_capacity(samples as usize);
            while draws.len() < samples as usize {
                let rows: Vec<Vec<u8>> = (0..r).map(|_| (0..cols).map(|_| rng.gen_range(0..p) as u8).collect()).collect();
                if FpMatrix::from_rows(p, cols, &rows)?.rank() == r {
                    draws.push(rows);
                }
            }
            let best = draws
                .into_par_iter()
                .enumerate()
                .map(|(i, mut rows)| {
                    let mut mat = FpMatrix::from_rows(p, cols, &rows).expect("prime p");
                    mat.rref();
                    rows = mat.to_rows();
                    (size_of(&rows), std::cmp::Reverse(i), rows)
                })
                .max_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
            (samples as u128, best)
        }
    };
    let (max_size, _, witness) = best.unwrap_or((0, std::cmp::Reverse(0), Vec::new()));
    let bound = rank_hm_bound(p, h, m);
    let bound_applies = r == h as usize * m;
    Ok(MaxLinearSetReport {
        m,
        rank: r,
        mode,
        subspaces,
        max_size,
        witness,
        rank_hm_bound: bound,
        bound_applies,
        within_bound: !bound_applies || max_size as u64 <= bound,
        trivial_bound: ((p as u64).pow(r as u32) - 1) / (p as u64 - 1),
    })
}

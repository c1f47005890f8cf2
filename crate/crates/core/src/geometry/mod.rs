//! Points, subspaces and incidences of PG(m,q) and AG(m,q).
//!
//! Projective points are normalized so that their leftmost nonzero coordinate
//! is 1, and are ordered lexicographically on those coordinates using the
//! field's element order. Affine points are tuples of F_q^m in lexicographic
//! order; AG(m,q) is PG(m,q) with the hyperplane X_m = 0 removed, the affine
//! point (a_0,…,a_(m-1)) being (a_0:…:a_(m-1):1).

mod chart;
pub mod subspace;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use chart::AffineChart;
pub use subspace::{gaussian_binomial, Subspace};

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::linalg::FpMatrix;
use subspace::{dot, nullspace_over, rref_over, rref_position, RrefEnumerator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Projective,
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_points: u128,
    pub max_blocks: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_points: 100_000, max_blocks: 10_000_000 }
    }
}

/// A point with its coordinates (homogeneous for PG, an m-tuple for AG).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub coords: Vec<Elem>,
    pub index: usize,
}

/// Point lists of all blocks of one dimension, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub dim: usize,
    offsets: Vec<usize>,
    points: Vec<u32>,
}

impl Blocks {
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn block(&self, i: usize) -> &[u32] {
        &self.points[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.len()).map(move |i| self.block(i))
    }
}

#[derive(Clone, Debug)]
pub struct Geometry {
    kind: Kind,
    field: Arc<Field>,
    m: usize,
    caps: Caps,
    num_points: usize,
    q: u64,
}

impl Geometry {
    pub fn new(kind: Kind, field: Arc<Field>, m: usize, caps: Caps) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGeometry("dimension must be at least 1".into()));
        }
        let q = field.order() as u64;
        let count = match kind {
            Kind::Projective => gaussian_binomial(m as u64 + 1, 1, q),
            Kind::Affine => (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX),
        };
        if count > caps.max_points {
            return Err(Error::CapExceeded { what: "points", count, cap: caps.max_points });
        }
        Ok(Geometry { kind, field, m, caps, num_points: count as usize, q })
    }

    pub fn projective(field: Arc<Field>, m: usize) -> Result<Self> {
        Self::new(Kind::Projective, field, m, Caps::default())
    }

    pub fn affine(field: Arc<Field>, m: usize) -> Result<Self> {
        Self::new(Kind::Affine, field, m, Caps::default())
    }

    /// The projective closure (same field, dimension and caps).
    pub fn closure(&self) -> Geometry {
        Geometry { kind: Kind::Projective, num_points: gaussian_binomial(self.m as u64 + 1, 1, self.q) as usize, ..self.clone() }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    /// Number of points with leading coordinate at position > i.
    fn offset(&self, i: usize) -> usize {
        ((self.q.pow((self.m - i) as u32) - 1) / (self.q - 1)) as usize
    }

    /// Coordinates of point `idx`: normalized homogeneous for PG, an m-tuple for AG.
    pub fn point_coords(&self, idx: usize) -> Vec<Elem> {
        let q = self.q as usize;
        match self.kind {
            Kind::Affine => {
                let mut out = vec![Elem::ZERO; self.m];
                let mut x = idx;
                for slot in out.iter_mut().rev() {
                    *slot = Elem((x % q) as u32);
                    x /= q;
                }
                out
            }
            Kind::Projective => {
                let m = self.m;
                let lead = (0..=m)
                    .rev()
                    .find(|&i| idx < self.offset(i) + q.pow((m - i) as u32))
                    .expect("index in range");
                let mut out = vec![Elem::ZERO; m + 1];
                out[lead] = Elem::ONE;
                let mut tail = idx - self.offset(lead);
                for slot in out[lead + 1..].iter_mut().rev() {
                    *slot = Elem((tail % q) as u32);
                    tail /= q;
                }
                out
            }
        }
    }

    /// Homogeneous coordinates of point `idx` (for AG, the vector (a, 1)).
    pub fn homogeneous(&self, idx: usize) -> Vec<Elem> {
        let mut c = self.point_coords(idx);
        if self.kind == Kind::Affine {
            c.push(Elem::ONE);
        }
        c
    }

    /// Index of the point with the given coordinates. Projective inputs need
    /// not be normalized but must be nonzero.
    pub fn point_index(&self, coords: &[Elem]) -> Result<usize> {
        let q = self.q as usize;
        match self.kind {
            Kind::Affine => {
                if coords.len() != self.m {
                    return Err(Error::DimensionMismatch(format!("expected {} coordinates", self.m)));
                }
                Ok(coords.iter().fold(0usize, |acc, c| acc * q + c.0 as usize))
            }
            Kind::Projective => {
                if coords.len() != self.m + 1 {
                    return Err(Error::DimensionMismatch(format!("expected {} coordinates", self.m + 1)));
                }
                self.projective_index(coords)
                    .ok_or_else(|| Error::InvalidGeometry("zero vector is not a point".into()))
            }
        }
    }

    fn projective_index(&self, v: &[Elem]) -> Option<usize> {
        let q = self.q as usize;
        let lead = v.iter().position(|x| !x.is_zero())?;
        let inv = self.field.inv(v[lead]).ok()?;
        let tail = v[lead + 1..]
            .iter()
            .fold(0usize, |acc, &x| acc * q + self.field.mul(x, inv).0 as usize);
        Some(self.offset(lead) + tail)
    }

    /// Index of the point spanned by a homogeneous vector, `None` if the
    /// vector is zero or (for AG) lies on the hyperplane at infinity.
    pub fn index_of_homogeneous(&self, v: &[Elem]) -> Option<usize> {
        match self.kind {
            Kind::Projective => self.projective_index(v),
            Kind::Affine => {
                let last = *v.last()?;
                let inv = self.field.try_inv(last)?;
                let q = self.q as usize;
                Some(v[..self.m].iter().fold(0usize, |acc, &x| acc * q + self.field.mul(x, inv).0 as usize))
            }
        }
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.num_points).map(|i| Point { coords: self.point_coords(i), index: i }).collect()
    }

    /// Number of `k`-spaces (PG) or `k`-flats (AG).
    pub fn subspace_count(&self, k: usize) -> u128 {
        let (n, q) = (self.m as u64 + 1, self.q);
        match self.kind {
            Kind::Projective => gaussian_binomial(n, k as u64 + 1, q),
            Kind::Affine => gaussian_binomial(n, k as u64 + 1, q) - gaussian_binomial(n - 1, k as u64 + 1, q),
        }
    }

    fn check_dim(&self, k: usize) -> Result<()> {
        let ok = match self.kind {
            Kind::Projective => k <= self.m,
            Kind::Affine => (1..=self.m).contains(&k),
        };
        if !ok {
            return Err(Error::InvalidGeometry(format!("no {k}-spaces in dimension {}", self.m)));
        }
        let count = self.subspace_count(k);
        if count > self.caps.max_blocks {
            return Err(Error::CapExceeded { what: "blocks", count, cap: self.caps.max_blocks });
        }
        Ok(())
    }

    /// All `k`-spaces in canonical order. For AG these are the projective
    /// `k`-spaces of the closure not contained in the hyperplane at infinity,
    /// re-indexed consecutively.
    pub fn subspaces(&self, k: usize) -> Result<Vec<Subspace>> {
        self.check_dim(k)?;
        let mut out = Vec::new();
        for basis in RrefEnumerator::new(self.q as u32, k + 1, self.m + 1) {
            if self.kind == Kind::Affine && basis.iter().all(|r| r[self.m].is_zero()) {
                continue;
            }
            let index = out.len();
            out.push(Subspace { dim: k, basis, index });
        }
        Ok(out)
    }

    /// Canonical form of the span of the given homogeneous vectors.
    pub fn span(&self, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        let mut basis = vectors.to_vec();
        if basis.iter().any(|v| v.len() != self.m + 1) {
            return Err(Error::DimensionMismatch(format!("vectors must have {} coordinates", self.m + 1)));
        }
        let pivots = rref_over(&self.field, &mut basis);
        if basis.is_empty() {
            return Err(Error::InvalidGeometry("span of zero vectors".into()));
        }
        let dim = basis.len() - 1;
        let mut index = rref_position(self.q, &basis, &pivots) as usize;
        if self.kind == Kind::Affine {
            if basis.iter().all(|r| r[self.m].is_zero()) {
                return Err(Error::InvalidGeometry("subspace lies at infinity".into()));
            }
            // Skip the subspaces at infinity that precede this one.
            let all = RrefEnumerator::new(self.q as u32, dim + 1, self.m + 1).take(index);
            index -= all.filter(|b| b.iter().all(|r| r[self.m].is_zero())).count();
        }
        Ok(Subspace { dim, basis, index })
    }

    /// Point indices of a subspace, sorted (affine points only for AG).
    pub fn subspace_points(&self, s: &Subspace) -> Vec<u32> {
        let f = &self.field;
        let rows = s.basis.len();
        let q = self.q as u32;
        let mut out = Vec::new();
        // Normalized coefficient vectors: leading coefficient 1 at `lead`.
        for lead in 0..rows {
            let free = rows - lead - 1;
            let total = (q as u64).pow(free as u32);
            for code in 0..total {
                let mut v = s.basis[lead].clone();
                let mut c = code;
                for r in (lead + 1..rows).rev() {
                    let coef = Elem((c % q as u64) as u32);
                    c /= q as u64;
                    if !coef.is_zero() {
                        for (x, &y) in v.iter_mut().zip(&s.basis[r]) {
                            *x = f.add(*x, f.mul(coef, y));
                        }
                    }
                }
                if let Some(i) = self.index_of_homogeneous(&v) {
                    out.push(i as u32);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn contains(&self, s: &Subspace, point: usize) -> bool {
        let mut rows = s.basis.clone();
        rows.push(self.homogeneous(point));
        subspace::rank_over(&self.field, &rows) == s.basis.len()
    }

    pub fn blocks(&self, k: usize) -> Result<Blocks> {
        let subspaces = self.subspaces(k)?;
        let lists: Vec<Vec<u32>> = subspaces.par_iter().map(|s| self.subspace_points(s)).collect();
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut points = Vec::new();
        for l in lists {
            points.extend_from_slice(&l);
            offsets.push(points.len());
        }
        Ok(Blocks { dim: k, offsets, points })
    }

    pub fn lines(&self) -> Result<Blocks> {
        self.blocks(1)
    }

    pub fn line_through(&self, a: usize, b: usize) -> Result<Subspace> {
        for &i in &[a, b] {
            if i >= self.num_points {
                return Err(Error::PointOutOfRange { index: i, points: self.num_points });
            }
        }
        if a == b {
            return Err(Error::EqualPoints);
        }
        self.span(&[self.homogeneous(a), self.homogeneous(b)])
    }

    /// Incidence matrix over F_p: rows are `k`-spaces, columns points.
    pub fn incidence_matrix(&self, k: usize) -> Result<FpMatrix> {
        let blocks = self.blocks(k)?;
        self.incidence_from_blocks(&blocks)
    }

    pub fn incidence_from_blocks(&self, blocks: &Blocks) -> Result<FpMatrix> {
        let mut m = FpMatrix::zeros(self.p(), blocks.len(), self.num_points)?;
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                m.set(i, x as usize, 1);
            }
        }
        Ok(m)
    }

    /// Normal vectors of all hyperplanes of PG(m,q), in point order of the dual space.
    pub fn hyperplane_normals(&self) -> Result<Vec<Vec<Elem>>> {
        let pg = self.require_projective()?;
        Ok((0..pg.num_points).map(|i| pg.point_coords(i)).collect())
    }

    pub fn on_hyperplane(&self, normal: &[Elem], point: usize) -> bool {
        dot(&self.field, normal, &self.homogeneous(point)).is_zero()
    }

    /// The hyperplane {x : normal · x = 0} as a subspace.
    pub fn hyperplane(&self, normal: &[Elem]) -> Result<Subspace> {
        let basis = nullspace_over(&self.field, &[normal.to_vec()], self.m + 1);
        self.span(&basis)
    }

    /// The q+1 hyperplanes through a subspace of dimension m-2.
    pub fn hyperplanes_through(&self, s: &Subspace) -> Result<Vec<Subspace>> {
        self.require_projective()?;
        if self.m < 2 || s.dim != self.m - 2 {
            return Err(Error::DimensionMismatch(format!(
                "expected a {}-space, got a {}-space",
                self.m as isize - 2,
                s.dim
            )));
        }
        let normals = nullspace_over(&self.field, &s.basis, self.m + 1);
        let pencil = Subspace { dim: 1, basis: normals, index: 0 };
        self.subspace_points(&pencil)
            .into_iter()
            .map(|i| self.hyperplane(&self.point_coords(i as usize)))
            .collect()
    }

    fn require_projective(&self) -> Result<&Geometry> {
        if self.kind != Kind::Projective {
            return Err(Error::InvalidGeometry("operation needs a projective space".into()));
        }
        Ok(self)
    }
}

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AffineChart, Blocks, Geometry, Kind};
use crate::galois::Elem;

/// A multiset of points with multiplicities reduced into {1, …, p-1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointMultiset {
    p: u32,
    num_points: usize,
    mult: BTreeMap<u32, u32>,
}

impl PointMultiset {
    /// Fails if a multiplicity is outside {1, …, p-1} or a point is out of range.
    pub fn new(p: u32, num_points: usize, entries: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for (x, m) in entries {
            if x as usize >= num_points {
                return Err(Error::PointOutOfRange { index: x as usize, points: num_points });
            }
            if m == 0 || m >= p {
                return Err(Error::BadMultiplicity { point: x as usize, mult: m as u64, max: p - 1 });
            }
            if mult.insert(x, m).is_some() {
                return Err(Error::Parse(format!("point {x} listed twice")));
            }
        }
        Ok(PointMultiset { p, num_points, mult })
    }

    pub fn empty(p: u32, num_points: usize) -> Self {
        PointMultiset { p, num_points, mult: BTreeMap::new() }
    }

    /// Reduces arbitrary positive multiplicities mod p, dropping points with
    /// p | μ. Repeated points accumulate. Fails if nothing survives.
    pub fn reduce(p: u32, num_points: usize, entries: impl IntoIterator<Item = (u32, u64)>) -> Result<Self> {
        let mut raw: BTreeMap<u32, u64> = BTreeMap::new();
        for (x, m) in entries {
            if x as usize >= num_points {
                return Err(Error::PointOutOfRange { index: x as usize, points: num_points });
            }
            *raw.entry(x).or_default() += m;
        }
        let mult: BTreeMap<u32, u32> = raw
            .into_iter()
            .filter_map(|(x, m)| {
                let r = (m % p as u64) as u32;
                (r != 0).then_some((x, r))
            })
            .collect();
        if mult.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        Ok(PointMultiset { p, num_points, mult })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// |M|, the sum of multiplicities.
    pub fn size(&self) -> u64 {
        self.mult.values().map(|&m| m as u64).sum()
    }

    /// |S|, the number of points in the support.
    pub fn support_size(&self) -> usize {
        self.mult.len()
    }

    pub fn multiplicity(&self, x: u32) -> u32 {
        self.mult.get(&x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.mult.iter().map(|(&x, &m)| (x, m))
    }

    pub fn support(&self) -> Vec<u32> {
        self.mult.keys().copied().collect()
    }

    pub fn char_vector(&self) -> CharVector {
        let mut values = vec![0u8; self.num_points];
        for (x, m) in self.iter() {
            values[x as usize] = m as u8;
        }
        CharVector { p: self.p, values }
    }

    /// (p-1)M: same support, multiplicities (p-1)μ reduced into {1, …, p-1}.
    pub fn p_minus_one(&self) -> PointMultiset {
        let p = self.p;
        let mult = self.mult.iter().map(|(&x, &m)| (x, (p - 1) * m % p)).collect();
        PointMultiset { p, num_points: self.num_points, mult }
    }

    /// Multiplicity sum on a block.
    pub fn block_sum(&self, block: &[u32]) -> u64 {
        block.iter().map(|&x| self.multiplicity(x) as u64).sum()
    }
}

/// Characteristic vector over {0, …, p-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharVector {
    p: u32,
    values: Vec<u8>,
}

impl CharVector {
    pub fn new(p: u32, values: Vec<u8>) -> Result<Self> {
        if let Some(i) = values.iter().position(|&v| v as u32 >= p) {
            return Err(Error::BadMultiplicity { point: i, mult: values[i] as u64, max: p - 1 });
        }
        Ok(CharVector { p, values })
    }

    pub fn zero(p: u32, len: usize) -> Self {
        CharVector { p, values: vec![0; len] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// σ(s), the integer sum of the coordinates.
    pub fn sigma(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    /// w(s), the number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    pub fn to_multiset(&self) -> PointMultiset {
        let mult = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i as u32, v as u32))
            .collect();
        PointMultiset { p: self.p, num_points: self.values.len(), mult }
    }

    /// λs with coordinates reduced into {0, …, p-1}.
    pub fn scale(&self, lambda: i64) -> Result<CharVector> {
        let p = self.p as i64;
        let l = lambda.rem_euclid(p);
        if l == 0 {
            return Err(Error::ZeroScalar(lambda));
        }
        let values = self.values.iter().map(|&v| ((v as i64 * l) % p) as u8).collect();
        Ok(CharVector { p: self.p, values })
    }

    pub fn has_coordinate(&self, value: u8) -> bool {
        self.values.contains(&value)
    }

    /// Distinct nonzero coordinate values, ascending.
    pub fn nonzero_values(&self) -> Vec<u8> {
        let mut seen = vec![false; self.p as usize];
        for &v in &self.values {
            seen[v as usize] = true;
        }
        (1..self.p as u8).filter(|&v| seen[v as usize]).collect()
    }
}

/// Outcome of scanning every line for a multiplicity sum ≡ 0 mod p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCheck {
    pub valid: bool,
    pub lines_checked: usize,
    /// Index of the first offending line and its multiplicity sum.
    pub offending: Option<(usize, u64)>,
}

pub fn line_residue_check(geom: &Geometry, m: &PointMultiset) -> Result<LineCheck> {
    let lines = geom.lines()?;
    Ok(block_residue_check(&lines, m))
}

pub fn block_residue_check(blocks: &Blocks, m: &PointMultiset) -> LineCheck {
    let dense = m.char_vector();
    let p = m.p() as u64;
    let sums = |b: &[u32]| b.iter().map(|&x| dense.values[x as usize] as u64).sum::<u64>();
    let offending = (0..blocks.len())
        .into_par_iter()
        .find_first(|&i| sums(blocks.block(i)) % p != 0)
        .map(|i| (i, sums(blocks.block(i))));
    LineCheck { valid: offending.is_none(), lines_checked: blocks.len(), offending }
}

/// Pads an AG(m,q) vector with zeros on the hyperplane at infinity, using the
/// embedding (a) ↦ (a : 1).
pub fn extend_affine_to_projective(ag: &Geometry, s: &CharVector) -> Result<CharVector> {
    if ag.kind() != Kind::Affine || s.len() != ag.num_points() {
        return Err(Error::DimensionMismatch("expected a vector indexed by AG(m,q)".into()));
    }
    let pg = ag.closure();
    let mut values = vec![0u8; pg.num_points()];
    for (i, &v) in s.values().iter().enumerate() {
        if v != 0 {
            values[pg.point_index(&ag.homogeneous(i))?] = v;
        }
    }
    Ok(CharVector { p: s.p, values })
}

/// The first hyperplane (in dual point order) missing the support, as a normal vector.
pub fn find_disjoint_hyperplane(pg: &Geometry, m: &PointMultiset) -> Result<Option<Vec<Elem>>> {
    let normals = pg.hyperplane_normals()?;
    let support = m.support();
    Ok(normals.into_par_iter().find_first(|a| support.iter().all(|&x| !pg.on_hyperplane(a, x as usize))))
}

/// Moves a projective multiset missing the hyperplane `normal` into AG(m,q)
/// through the chart of that hyperplane.
pub fn restrict_to_affine(pg: &Geometry, m: &PointMultiset, normal: &[Elem]) -> Result<(Geometry, PointMultiset)> {
    let ag = Geometry::new(Kind::Affine, pg.field().clone(), pg.m(), pg.caps())?;
    let chart = AffineChart::new(pg, normal)?;
    let mut entries = Vec::with_capacity(m.support_size());
    for (x, mu) in m.iter() {
        let i = chart.affine_index(pg, &ag, x as usize).ok_or(Error::NoDisjointHyperplane)?;
        entries.push((i as u32, mu));
    }
    let restricted = PointMultiset::new(m.p(), ag.num_points(), entries)?;
    Ok((ag, restricted))
}

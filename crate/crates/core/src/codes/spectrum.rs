use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PointMultiset;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMode {
    /// Count support points on each hyperplane.
    Support,
    /// Count points with multiplicity.
    Weighted,
}

/// Intersection sizes n_i with hyperplanes and the number z_i of hyperplanes
/// of each size, with the two double-counting identities checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneSpectrum {
    pub mode: SpectrumMode,
    /// (n_i, z_i) with n_1 < n_2 < ….
    pub sizes: Vec<(u64, u64)>,
    /// Σ z_i equals the number of hyperplanes.
    pub count_identity: bool,
    /// Σ n_i z_i equals |S| (or |M|) times the hyperplanes through a point.
    pub incidence_identity: bool,
    pub meets_every_hyperplane: bool,
    /// When every hyperplane is met: is the total at least n_1 q?
    pub total_at_least_n1_q: Option<bool>,
}

impl HyperplaneSpectrum {
    pub fn n1(&self) -> u64 {
        self.sizes[0].0
    }

    pub fn z(&self, n: u64) -> u64 {
        self.sizes.iter().find(|(x, _)| *x == n).map_or(0, |&(_, z)| z)
    }
}

pub fn hyperplane_spectrum(pg: &Geometry, m: &PointMultiset, mode: SpectrumMode) -> Result<HyperplaneSpectrum> {
    if pg.kind() != Kind::Projective {
        return Err(Error::InvalidGeometry("spectra are taken in a projective space".into()));
    }
    if m.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let hyperplanes = pg.blocks(pg.m() - 1)?;
    let dense = m.char_vector();
    let weight = |x: u32| match mode {
        SpectrumMode::Support => (dense.values()[x as usize] != 0) as u64,
        SpectrumMode::Weighted => dense.values()[x as usize] as u64,
    };
    let counts: Vec<u64> = (0..hyperplanes.len())
        .into_par_iter()
        .map(|i| hyperplanes.block(i).iter().map(|&x| weight(x)).sum())
        .collect();
    let mut sizes: BTreeMap<u64, u64> = BTreeMap::new();
    for c in counts {
        *sizes.entry(c).or_default() += 1;
    }
    let sizes: Vec<(u64, u64)> = sizes.into_iter().collect();

    let q = pg.q() as u128;
    let m_dim = pg.m() as u32;
    let through_point = (q.pow(m_dim) - 1) / (q - 1);
    let total = match mode {
        SpectrumMode::Support => m.support_size() as u128,
        SpectrumMode::Weighted => m.size() as u128,
    };
    let z_sum: u128 = sizes.iter().map(|&(_, z)| z as u128).sum();
    let nz_sum: u128 = sizes.iter().map(|&(n, z)| n as u128 * z as u128).sum();
    let meets = sizes[0].0 > 0;
    Ok(HyperplaneSpectrum {
        mode,
        count_identity: z_sum == hyperplanes.len() as u128,
        incidence_identity: nz_sum == total * through_point,
        meets_every_hyperplane: meets,
        total_at_least_n1_q: meets.then(|| total >= sizes[0].0 as u128 * q),
        sizes,
    })
}

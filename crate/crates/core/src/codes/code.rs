use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CharVector;
use crate::error::{Error, Result};
use crate::geometry::{Blocks, Geometry};
use crate::linalg::FpMatrix;

/// The F_p-span of the incidence vectors of the `k`-spaces of a geometry.
#[derive(Clone, Debug)]
pub struct IncidenceCode {
    geometry: Geometry,
    k: usize,
    blocks: Blocks,
    matrix: FpMatrix,
    rank: usize,
}

impl IncidenceCode {
    pub fn new(geometry: &Geometry, k: usize) -> Result<Self> {
        let blocks = geometry.blocks(k)?;
        let matrix = geometry.incidence_from_blocks(&blocks)?;
        let rank = matrix.rank();
        Ok(IncidenceCode { geometry: geometry.clone(), k, blocks, matrix, rank })
    }

    pub fn lines(geometry: &Geometry) -> Result<Self> {
        Self::new(geometry, 1)
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> u32 {
        self.geometry.p()
    }

    pub fn length(&self) -> usize {
        self.geometry.num_points()
    }

    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    /// p-rank of the incidence matrix.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dual_dim(&self) -> usize {
        self.length() - self.rank
    }

    /// Rank recomputed by full reduction after shuffling the rows with `seed`.
    pub fn rank_shuffled(&self, seed: u64) -> usize {
        let mut order: Vec<usize> = (0..self.matrix.num_rows()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        self.matrix.permute_rows(&order).rref().len()
    }

    /// A basis of the dual code in reduced echelon form.
    pub fn dual_basis(&self) -> Vec<Vec<u8>> {
        self.matrix.nullspace()
    }

    /// Is s orthogonal to every block?
    pub fn dual_contains(&self, s: &CharVector) -> Result<bool> {
        if s.len() != self.length() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a code of length {}",
                s.len(),
                self.length()
            )));
        }
        let p = self.p() as u64;
        let v = s.values();
        Ok(self.blocks.iter().all(|b| b.iter().map(|&x| v[x as usize] as u64).sum::<u64>() % p == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::line_residue_check;
    use crate::galois::Field;
    use proptest::prelude::*;
    use rand::Rng;
    use std::sync::Arc;

    fn pg(p: u32, h: u32, m: usize) -> Geometry {
        Geometry::projective(Arc::new(Field::new(p, h, None).unwrap()), m).unwrap()
    }

    #[test]
    fn p_ranks() {
        let fano = IncidenceCode::lines(&pg(2, 1, 2)).unwrap();
        assert_eq!((fano.rank(), fano.dual_dim()), (4, 3));
        let pg23 = IncidenceCode::lines(&pg(3, 1, 2)).unwrap();
        assert_eq!((pg23.rank(), pg23.dual_dim()), (7, 6));
        let pg29 = IncidenceCode::lines(&pg(3, 2, 2)).unwrap();
        for seed in 0..3 {
            assert_eq!(pg29.rank_shuffled(seed), pg29.rank());
        }
        // The 3-rank of PG(2,9) is binom(4,2)^2 + 1.
        assert_eq!(pg29.rank(), 37);
    }

    #[test]
    fn dual_basis_is_orthogonal_to_blocks() {
        let code = IncidenceCode::lines(&pg(3, 1, 2)).unwrap();
        let basis = code.dual_basis();
        assert_eq!(basis.len(), code.dual_dim());
        for v in basis {
            assert!(code.dual_contains(&CharVector::new(3, v).unwrap()).unwrap());
        }
    }

    #[test]
    fn fano_membership() {
        let g = pg(2, 1, 2);
        let code = IncidenceCode::lines(&g).unwrap();
        let line = code.blocks().block(0).to_vec();
        let mut on = vec![0u8; 7];
        for &x in &line {
            on[x as usize] = 1;
        }
        let complement: Vec<u8> = on.iter().map(|&b| 1 - b).collect();
        assert!(code.dual_contains(&CharVector::new(2, complement).unwrap()).unwrap());
        assert!(!code.dual_contains(&CharVector::new(2, on).unwrap()).unwrap());
        assert!(code.dual_contains(&CharVector::zero(2, 7)).unwrap());
        assert!(code.dual_contains(&CharVector::zero(2, 6)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn membership_matches_line_scan(seed in any::<u64>()) {
            let g = pg(3, 1, 2);
            let code = IncidenceCode::lines(&g).unwrap();
            let basis = code.dual_basis();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..3)).collect();
            let b = FpMatrix::from_rows(3, 13, &basis).unwrap();
            let mut v: Vec<u8> = b.left_mul(&coeffs).into_iter().map(|x| x as u8).collect();
            // Perturb half the samples to get non-members too.
            if seed % 2 == 1 {
                let i = rng.gen_range(0..13);
                v[i] = (v[i] + 1) % 3;
            }
            let s = CharVector::new(3, v).unwrap();
            let lines_ok = line_residue_check(&g, &s.to_multiset()).unwrap().valid;
            prop_assert_eq!(code.dual_contains(&s).unwrap(), lines_ok);
            if lines_ok {
                prop_assert_eq!(s.sigma() % 3, 0);
                for l in 1..3 {
                    prop_assert!(code.dual_contains(&s.scale(l).unwrap()).unwrap());
                }
            }
        }
    }
}

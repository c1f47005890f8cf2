use super::subspace::{inverse_over, mat_vec};
use super::{Geometry, Kind};
use crate::error::{Error, Result};
use crate::galois::Elem;

/// Identifies PG(m,q) minus a hyperplane H with AG(m,q).
///
/// With a the normal of H and j its last nonzero position, the chart matrix
/// has rows e_i (i ≠ j) followed by a. A point x off H goes to the affine
/// point (Ax)_i / (Ax)_m.
#[derive(Clone, Debug)]
pub struct AffineChart {
    normal: Vec<Elem>,
    matrix: Vec<Vec<Elem>>,
    inverse: Vec<Vec<Elem>>,
}

impl AffineChart {
    pub fn new(pg: &Geometry, normal: &[Elem]) -> Result<Self> {
        if pg.kind() != Kind::Projective {
            return Err(Error::InvalidGeometry("charts are taken in a projective space".into()));
        }
        let n = pg.m() + 1;
        if normal.len() != n {
            return Err(Error::DimensionMismatch(format!("normal needs {n} coordinates")));
        }
        let pivot = normal
            .iter()
            .rposition(|x| !x.is_zero())
            .ok_or_else(|| Error::InvalidGeometry("zero normal".into()))?;
        let mut matrix: Vec<Vec<Elem>> = (0..n)
            .filter(|&i| i != pivot)
            .map(|i| (0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
            .collect();
        matrix.push(normal.to_vec());
        let inverse = inverse_over(pg.field(), &matrix).expect("chart matrix is invertible");
        Ok(AffineChart { normal: normal.to_vec(), matrix, inverse })
    }

    pub fn normal(&self) -> &[Elem] {
        &self.normal
    }

    /// Affine coordinates of a projective point, `None` if it lies on H.
    pub fn to_affine(&self, pg: &Geometry, point: usize) -> Option<Vec<Elem>> {
        let f = pg.field();
        let y = mat_vec(f, &self.matrix, &pg.homogeneous(point));
        let last = f.try_inv(*y.last()?)?;
        Some(y[..pg.m()].iter().map(|&c| f.mul(c, last)).collect())
    }

    /// Index in `ag` of the image of a projective point.
    pub fn affine_index(&self, pg: &Geometry, ag: &Geometry, point: usize) -> Option<usize> {
        self.to_affine(pg, point).map(|c| ag.point_index(&c).expect("m coordinates"))
    }

    /// The projective point with the given affine coordinates.
    pub fn to_projective(&self, pg: &Geometry, affine: &[Elem]) -> usize {
        let mut y = affine.to_vec();
        y.push(Elem::ONE);
        let x = mat_vec(pg.field(), &self.inverse, &y);
        pg.point_index(&x).expect("nonzero vector")
    }
}

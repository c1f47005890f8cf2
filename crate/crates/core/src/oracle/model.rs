use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, ExtensionField, Field};
use crate::geometry::Geometry;

pub const DEFAULT_MODEL_CAP: u128 = 6561;

const LINE_SAMPLE: usize = 100;

fn check_cap(ag: &Geometry) -> Result<()> {
    let count = ag.num_points() as u128;
    if count > DEFAULT_MODEL_CAP {
        return Err(Error::CapExceeded { what: "field model points", count, cap: DEFAULT_MODEL_CAP });
    }
    Ok(())
}

/// AG(m,q) identified with GF(q^m): the point with coordinates (a_0, …,
/// a_(m-1)) is Σ a_i e_i for a fixed GF(q)-basis e_i.
#[derive(Clone, Debug)]
pub struct AgFieldModel {
    ag: Geometry,
    ext: ExtensionField,
    to_field: Vec<Elem>,
    to_point: Vec<u32>,
    lines_verified: usize,
}

impl AgFieldModel {
    pub fn new(ag: &Geometry) -> Result<Self> {
        check_cap(ag)?;
        let ext = ExtensionField::new(ag.field().clone(), ag.m() as u32)?;
        Self::from_extension(ag, ext)
    }

    /// Uses the basis 1, g, …, g^(m-1) of GF(q^m) built on the default tower.
    pub fn with_generator(ag: &Geometry, generator: Elem) -> Result<Self> {
        check_cap(ag)?;
        let big = ExtensionField::new(ag.field().clone(), ag.m() as u32)?.big().clone();
        let ext = ExtensionField::with_generator(ag.field().clone(), big, ag.m() as u32, generator)?;
        Self::from_extension(ag, ext)
    }

    fn from_extension(ag: &Geometry, ext: ExtensionField) -> Result<Self> {
        let to_field: Vec<Elem> = (0..ag.num_points()).map(|i| ext.compose(&ag.point_coords(i))).collect();
        let mut to_point = vec![u32::MAX; to_field.len()];
        for (i, z) in to_field.iter().enumerate() {
            to_point[z.0 as usize] = i as u32;
        }
        let mut model = AgFieldModel { ag: ag.clone(), ext, to_field, to_point, lines_verified: 0 };
        model.lines_verified = model.verify_lines()?;
        Ok(model)
    }

    /// Checks that sampled affine lines {a + λb} map to {α + λβ}.
    fn verify_lines(&self) -> Result<usize> {
        if self.ag.m() < 2 {
            return Ok(0);
        }
        let lines = self.ag.lines()?;
        let step = (lines.len() / LINE_SAMPLE).max(1);
        let big = self.big();
        let mut checked = 0;
        for i in (0..lines.len()).step_by(step).take(LINE_SAMPLE) {
            let pts = lines.block(i);
            let alpha = self.to_field[pts[0] as usize];
            let beta = big.sub(self.to_field[pts[1] as usize], alpha);
            let mut image: Vec<Elem> =
                self.base().elements().map(|l| big.add(alpha, big.mul(self.ext.embed(l), beta))).collect();
            let mut actual: Vec<Elem> = pts.iter().map(|&x| self.to_field[x as usize]).collect();
            image.sort();
            actual.sort();
            if image != actual {
                return Err(Error::InvalidField(format!("affine line {i} is not a coset in the field model")));
            }
            checked += 1;
        }
        Ok(checked)
    }

    pub fn geometry(&self) -> &Geometry {
        &self.ag
    }

    pub fn base(&self) -> &Arc<Field> {
        self.ext.base()
    }

    pub fn big(&self) -> &Arc<Field> {
        self.ext.big()
    }

    pub fn extension(&self) -> &ExtensionField {
        &self.ext
    }

    pub fn lines_verified(&self) -> usize {
        self.lines_verified
    }

    pub fn element(&self, point: u32) -> Elem {
        self.to_field[point as usize]
    }

    pub fn point(&self, z: Elem) -> u32 {
        self.to_point[z.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ag(p: u32, h: u32, m: usize) -> Geometry {
        Geometry::affine(Arc::new(Field::new(p, h, None).unwrap()), m).unwrap()
    }

    #[test]
    fn plane_over_gf9_is_gf81() {
        let g = ag(3, 2, 2);
        let model = AgFieldModel::new(&g).unwrap();
        assert_eq!(model.big().order(), 81);
        assert_eq!(model.lines_verified(), 90);
        assert_eq!(model.element(0), Elem::ZERO);
        for x in 0..81 {
            assert_eq!(model.point(model.element(x)), x);
        }
    }

    #[test]
    fn line_model() {
        let g = ag(5, 1, 1);
        let model = AgFieldModel::new(&g).unwrap();
        for x in 0..5 {
            assert_eq!(model.element(x), Elem(x));
        }
    }

    #[test]
    fn other_bases_also_map_lines_to_cosets() {
        let g = ag(3, 1, 3);
        let model = AgFieldModel::with_generator(&g, Elem(4)).unwrap();
        assert_eq!(model.lines_verified(), 100);
    }

    #[test]
    fn cap_is_enforced() {
        let g = ag(3, 2, 5);
        assert!(matches!(AgFieldModel::new(&g), Err(Error::CapExceeded { .. })));
    }
}

//! Checks of the polynomial R(X,y) = ∏_{b∈M} (X + (y - b)^(q-1)) attached to
//! an affine multiset M, with AG(m,q) identified with GF(q^m).
//!
//! With N = (q^m - 1)/(q - 1), for y ∈ M of multiplicity t the polynomial
//! R(X,y) should be X^t (X^N + (-1)^(m-1))^(p-t) times a p-th power, and for
//! y ∉ M a p-th power. Writing R = Σ σ_j(y) X^(|M|-j), σ_j(y) should vanish
//! for 0 < j < (q^m - q)/(q - 1) with p ∤ j. Since σ_j(Y) has degree at most
//! j(q-1) < q^m, vanishing at every y is the same as being the zero polynomial.

mod model;
mod poly;

pub use model::{AgFieldModel, DEFAULT_MODEL_CAP};
pub use poly::UniPoly;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{find_disjoint_hyperplane, line_residue_check, restrict_to_affine, PointMultiset};
use crate::error::{Error, Result};
use crate::galois::{lucas_binom, Elem, Field};
use crate::geometry::{Geometry, Kind};

/// N = (q^m - 1)/(q - 1).
fn directions(q: u64, m: usize) -> u64 {
    (q.pow(m as u32) - 1) / (q - 1)
}

/// R(X,y): each b contributes μ(b) factors.
pub fn r_poly_at_y(model: &AgFieldModel, m: &PointMultiset, y: Elem) -> UniPoly {
    let big = model.big();
    let q = model.base().order() as u64;
    let mut r = UniPoly::one();
    for (x, mu) in m.iter() {
        let c = big.pow(big.sub(y, model.element(x)), q - 1);
        for _ in 0..mu {
            r.mul_linear(big, c);
        }
    }
    r
}

/// Compares the coefficients of R(X,y) against the direct product at every
/// field element (enough, since deg R = |M| < |F| is checked too).
pub fn r_poly_cross_check(model: &AgFieldModel, m: &PointMultiset, y: Elem, r: &UniPoly) -> bool {
    let big = model.big();
    let q = model.base().order() as u64;
    if m.size() >= big.order() as u64 {
        return false;
    }
    let factors: Vec<(Elem, u32)> = m.iter().map(|(x, mu)| (big.pow(big.sub(y, model.element(x)), q - 1), mu)).collect();
    big.elements().all(|x0| {
        let direct = factors.iter().fold(Elem::ONE, |acc, &(c, mu)| big.mul(acc, big.pow(big.add(x0, c), mu as u64)));
        direct == r.eval(big, x0)
    })
}

/// The p-th root of f if every exponent is divisible by p; coefficients are
/// mapped by c ↦ c^(|F|/p).
pub fn check_pth_power(f: &UniPoly, field: &Field) -> Option<UniPoly> {
    let p = field.p() as usize;
    let e = (field.order() / field.p()) as u64;
    let coeffs = f.coeffs();
    if coeffs.iter().enumerate().any(|(i, c)| i % p != 0 && !c.is_zero()) {
        return None;
    }
    Some(UniPoly::new(coeffs.iter().step_by(p).map(|&c| field.pow(c, e)).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportCheck {
    pub t: u32,
    pub exact_division: bool,
    /// The quotient R / (X^t (X^N + (-1)^(m-1))^(p-t)) is a p-th power.
    pub pth_power: bool,
    pub root_monic: bool,
    pub root: Option<UniPoly>,
    pub pass: bool,
}

impl SupportCheck {
    pub fn root_degree(&self) -> Option<usize> {
        self.root.as_ref().and_then(|r| r.degree())
    }
}

fn support_divisor(model: &AgFieldModel, t: u32) -> UniPoly {
    let big = model.big();
    let (q, m, p) = (model.base().order() as u64, model.geometry().m(), big.p());
    let n = directions(q, m) as usize;
    let sign = if (m - 1) % 2 == 0 { Elem::ONE } else { big.neg(Elem::ONE) };
    let mut pencil = UniPoly::monomial(Elem::ONE, n);
    pencil = pencil.add(big, &UniPoly::new(vec![sign]));
    UniPoly::monomial(Elem::ONE, t as usize).mul(big, &pencil.pow(big, (p - t) as u64))
}

fn support_check_from_r(model: &AgFieldModel, r: &UniPoly, t: u32) -> SupportCheck {
    let big = model.big();
    let (quot, rem) = r.div_rem(big, &support_divisor(model, t));
    let exact = rem.is_zero();
    let root = if exact { check_pth_power(&quot, big) } else { None };
    let root_monic = root.as_ref().is_some_and(|g| g.is_monic());
    SupportCheck { t, exact_division: exact, pth_power: root.is_some(), root_monic, pass: exact && root_monic, root }
}

/// Divisor structure of R(X,y) at a support point y of multiplicity t.
pub fn check_support_structure(model: &AgFieldModel, m: &PointMultiset, y: Elem) -> Result<SupportCheck> {
    let t = m.multiplicity(model.point(y));
    if t == 0 {
        return Err(Error::NotInSupport);
    }
    Ok(support_check_from_r(model, &r_poly_at_y(model, m, y), t))
}

/// Per-point verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointVerdict {
    pub point: u32,
    pub y: Elem,
    pub multiplicity: u32,
    /// R(X,y) agrees with the direct product at all field elements.
    pub expansion_ok: bool,
    pub support_check: Option<SupportCheck>,
    /// For y off the support: R(X,y) is a p-th power.
    pub pth_power: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaJ {
    pub j: u64,
    /// 0 < j < (q^m - q)/(q - 1) and p ∤ j.
    pub required: bool,
    pub all_zero: bool,
    /// Number of y with σ_j(y) ≠ 0.
    pub nonzero_at: usize,
    pub first_offender: Option<Elem>,
}

impl SigmaJ {
    pub fn pass(&self) -> bool {
        !self.required || self.all_zero
    }
}

pub fn sigma_range(q: u64, m: usize) -> u64 {
    (q.pow(m as u32) - q) / (q - 1)
}

/// σ_j(y) for every y and every j in `js`.
pub fn sigma_j_scan(model: &AgFieldModel, m: &PointMultiset, js: &[u64]) -> Vec<SigmaJ> {
    let rs: Vec<(Elem, UniPoly)> =
        model.big().elements().collect::<Vec<_>>().into_par_iter().map(|y| (y, r_poly_at_y(model, m, y))).collect();
    sigma_from_polys(model, m, &rs, js)
}

fn sigma_from_polys(model: &AgFieldModel, m: &PointMultiset, rs: &[(Elem, UniPoly)], js: &[u64]) -> Vec<SigmaJ> {
    let size = m.size();
    let p = model.big().p() as u64;
    let limit = sigma_range(model.base().order() as u64, model.geometry().m());
    js.iter()
        .map(|&j| {
            let coeff = |r: &UniPoly| if j > size { Elem::ZERO } else { r.coeff((size - j) as usize) };
            let offenders: Vec<Elem> = rs.iter().filter(|(_, r)| !coeff(r).is_zero()).map(|(y, _)| *y).collect();
            SigmaJ {
                j,
                required: j > 0 && j < limit && j % p != 0,
                all_zero: offenders.is_empty(),
                nonzero_at: offenders.len(),
                first_offender: offenders.first().copied(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum LucasCheck {
    /// No kp with 0 < kp < q^(m-2) exists.
    Vacuous,
    /// binom((p-1)(q^(m-1) + q^(m-2)) + kp, kp) mod p for each admissible kp.
    Residues { entries: Vec<LucasEntry> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasEntry {
    pub size: u64,
    pub kp: u64,
    pub residue: u32,
}

impl LucasCheck {
    pub fn all_one(&self) -> bool {
        match self {
            LucasCheck::Vacuous => true,
            LucasCheck::Residues { entries } => entries.iter().all(|e| e.residue == 1),
        }
    }
}

/// binom(size, kp) mod p.
pub fn lucas_coefficient_check(size: u64, kp: u64, p: u32) -> u32 {
    lucas_binom(size, kp, p)
}

pub fn lucas_table(p: u32, h: u32, m: usize) -> LucasCheck {
    if m < 2 {
        return LucasCheck::Vacuous;
    }
    let q = (p as u64).pow(h);
    let qm2 = q.pow(m as u32 - 2);
    let base = (p as u64 - 1) * (q.pow(m as u32 - 1) + qm2);
    let entries: Vec<LucasEntry> = (1..)
        .map(|k| k * p as u64)
        .take_while(|&kp| kp < qm2)
        .map(|kp| LucasEntry { size: base + kp, kp, residue: lucas_coefficient_check(base + kp, kp, p) })
        .collect();
    if entries.is_empty() {
        LucasCheck::Vacuous
    } else {
        LucasCheck::Residues { entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub p: u32,
    pub q: u64,
    pub m: usize,
    pub field_order: u32,
    pub size: u64,
    pub support: usize,
    pub valid_multiset: bool,
    pub lines_verified: usize,
    pub points: Vec<PointVerdict>,
    pub sigma: Vec<SigmaJ>,
    pub lucas: LucasCheck,
    pub all_pass: bool,
}

impl OracleReport {
    pub fn support_verdicts(&self) -> impl Iterator<Item = &PointVerdict> {
        self.points.iter().filter(|v| v.multiplicity > 0)
    }

    pub fn off_support_verdicts(&self) -> impl Iterator<Item = &PointVerdict> {
        self.points.iter().filter(|v| v.multiplicity == 0)
    }
}

/// Runs every check on an affine multiset of AG(m,q), m ≥ 2.
pub fn run_oracle(model: &AgFieldModel, m: &PointMultiset) -> Result<OracleReport> {
    let ag = model.geometry();
    if ag.kind() != Kind::Affine || ag.m() < 2 {
        return Err(Error::InvalidGeometry("the oracle needs a multiset of AG(m,q) with m >= 2".into()));
    }
    if m.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    if m.num_points() != ag.num_points() {
        return Err(Error::DimensionMismatch("multiset is not indexed by this affine space".into()));
    }
    let big = model.big();
    let valid_multiset = line_residue_check(ag, m)?.valid;
    let elements: Vec<Elem> = big.elements().collect();
    let rs: Vec<(Elem, UniPoly)> = elements.into_par_iter().map(|y| (y, r_poly_at_y(model, m, y))).collect();
    let points: Vec<PointVerdict> = rs
        .par_iter()
        .map(|(y, r)| {
            let point = model.point(*y);
            let t = m.multiplicity(point);
            let expansion_ok = r.is_monic() && r.degree() == Some(m.size() as usize) && r_poly_cross_check(model, m, *y, r);
            let (support_check, pth_power, ok) = if t > 0 {
                let c = support_check_from_r(model, r, t);
                let ok = c.pass;
                (Some(c), None, ok)
            } else {
                let ok = check_pth_power(r, big).is_some();
                (None, Some(ok), ok)
            };
            PointVerdict { point, y: *y, multiplicity: t, expansion_ok, support_check, pth_power, pass: ok && expansion_ok }
        })
        .collect();
    let q = model.base().order() as u64;
    let js: Vec<u64> = (1..sigma_range(q, ag.m())).collect();
    let sigma = sigma_from_polys(model, m, &rs, &js);
    let lucas = lucas_table(big.p(), model.base().degree(), ag.m());
    let all_pass = valid_multiset
        && points.iter().all(|v| v.pass)
        && sigma.iter().all(|s| s.pass())
        && lucas.all_one();
    Ok(OracleReport {
        p: big.p(),
        q,
        m: ag.m(),
        field_order: big.order(),
        size: m.size(),
        support: m.support_size(),
        valid_multiset,
        lines_verified: model.lines_verified(),
        points,
        sigma,
        lucas,
        all_pass,
    })
}

/// Moves a projective multiset to the affine part of its first disjoint
/// hyperplane and runs the oracle there.
pub fn run_oracle_projective(pg: &Geometry, m: &PointMultiset) -> Result<(Vec<Elem>, OracleReport)> {
    let normal = find_disjoint_hyperplane(pg, m)?.ok_or(Error::NoDisjointHyperplane)?;
    let (ag, affine) = restrict_to_affine(pg, m, &normal)?;
    let model = AgFieldModel::new(&ag)?;
    Ok((normal, run_oracle(&model, &affine)?))
}

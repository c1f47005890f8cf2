//! Lower bounds on w(s) and σ(s) for nonzero dual codewords, with their
//! hypotheses evaluated on the codeword itself.
//!
//! Values are exact rationals; the reported integer is the ceiling.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{find_disjoint_hyperplane, CharVector, IncidenceCode, Metric};
use crate::error::{Error, Result};
use crate::geometry::{Geometry, Kind};

pub type Rat = Ratio<i128>;

fn pw(q: i128, e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(q.pow(e as u32))
    } else {
        Rat::new(1, q.pow((-e) as u32))
    }
}

/// Parameters (p, h, m) of a space with q = p^h.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub p: u32,
    pub h: u32,
    pub m: usize,
}

impl Params {
    pub fn new(p: u32, h: u32, m: usize) -> Self {
        Params { p, h, m }
    }

    pub fn q(&self) -> i128 {
        (self.p as i128).pow(self.h)
    }

    fn parts(&self) -> (Rat, i128, i64) {
        (Rat::from_integer(self.p as i128), self.q(), self.m as i64)
    }
}

/// (q + p) q^(m-2).
pub fn delsarte(x: Params) -> Rat {
    let (p, q, m) = x.parts();
    (Rat::from_integer(q) + p) * pw(q, m - 2)
}

/// 2 ((q^m - 1)/(q - 1) (1 - 1/p) + 1/p).
pub fn bagchi_inamdar(x: Params) -> Rat {
    let (p, q, m) = x.parts();
    let n = (pw(q, m) - 1) / Rat::from_integer(q - 1);
    Rat::from_integer(2) * (n * (Rat::from_integer(1) - p.recip()) + p.recip())
}

/// (p - 1)(q + p), for 0/1 codewords of PG(2,q) with q > p.
pub fn zero_one_plane(x: Params) -> Rat {
    let (p, q, _) = x.parts();
    (p - 1) * (p + q)
}

/// (p - 1) q^(m-1) + p q^(m-2).
pub fn affine_unit_coordinate(x: Params) -> Rat {
    let (p, q, m) = x.parts();
    (p - 1) * pw(q, m - 1) + p * pw(q, m - 2)
}

/// 2 q^(m-1) + 2 p q^(m-2).
pub fn affine_no_unit_coordinate(x: Params) -> Rat {
    let (p, q, m) = x.parts();
    Rat::from_integer(2) * pw(q, m - 1) + Rat::from_integer(2) * p * pw(q, m - 2)
}

/// 1 + (p - 1)(q^m - 1)/(q - 1): lines through a point of multiplicity 1.
pub fn unit_point_lines(x: Params) -> Rat {
    let (p, q, m) = x.parts();
    Rat::from_integer(1) + (p - 1) * (pw(q, m) - 1) / Rat::from_integer(q - 1)
}

/// 2 (q^(m-1)(p - 1)/p + q^(m-2)).
pub fn improved_weight(x: Params) -> Rat {
    let (p, q, m) = x.parts();
    Rat::from_integer(2) * (pw(q, m - 1) * (p - 1) / p + pw(q, m - 2))
}

/// 2 (q^(m-k)(p - 1)/p + q^(m-k-1)), the weight bound for the dual of the
/// points-vs-k-spaces code.
pub fn kspace_weight(x: Params, k: usize) -> Rat {
    improved_weight(Params { m: x.m + 1 - k, ..x })
}

/// (p - 1)(q^(m-1) + q^(m-2)) + q^(m-2).
pub fn two_multiplicity(x: Params) -> Rat {
    let (p, q, m) = x.parts();
    (p - 1) * (pw(q, m - 1) + pw(q, m - 2)) + pw(q, m - 2)
}

/// 2 q^(m-1) + 3 q^(m-2).
pub fn char3(x: Params) -> Rat {
    let (_, q, m) = x.parts();
    Rat::from_integer(2) * pw(q, m - 1) + Rat::from_integer(3) * pw(q, m - 2)
}

/// 4 q^(m-1) + 5 q^(m-2).
pub fn char5(x: Params) -> Rat {
    let (_, q, m) = x.parts();
    Rat::from_integer(4) * pw(q, m - 1) + Rat::from_integer(5) * pw(q, m - 2)
}

pub fn ceil(r: Rat) -> i128 {
    r.ceil().to_integer()
}

/// Properties of the input that decide which bounds apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundFlags {
    pub kind: Kind,
    pub k: usize,
    pub nonzero: bool,
    pub in_dual: bool,
    pub zero_one: bool,
    pub has_unit_coordinate: bool,
    /// Some t with every nonzero coordinate in {t, p-t}.
    pub two_values: Option<u32>,
    /// Projective only: a hyperplane misses the support.
    pub disjoint_hyperplane: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub metric: Metric,
    pub value: i128,
    /// The exact value as "a/b" or "a".
    pub exact: String,
    pub applies: bool,
    /// Whether the observed metric reaches the value; `None` when it does not apply.
    pub satisfied: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: Params,
    pub sigma: u64,
    pub weight: usize,
    pub flags: BoundFlags,
    pub bounds: Vec<BoundEntry>,
}

impl BoundReport {
    /// No applicable bound is violated.
    pub fn consistent(&self) -> bool {
        self.bounds.iter().all(|b| b.satisfied != Some(false))
    }

    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.bounds.iter().find(|b| b.name == name)
    }

    /// The largest applicable value for a metric.
    pub fn best(&self, metric: Metric) -> Option<&BoundEntry> {
        self.bounds.iter().filter(|b| b.applies && b.metric == metric).max_by_key(|b| b.value)
    }
}

fn two_values(s: &CharVector) -> Option<u32> {
    let p = s.p();
    if p.is_multiple_of(2) {
        return None;
    }
    let vals = s.nonzero_values();
    let v = vals.first().copied()? as u32;
    let t = v.min(p - v);
    vals.iter().all(|&x| x as u32 == t || x as u32 == p - t).then_some(t)
}

pub fn flags(geometry: &Geometry, k: usize, s: &CharVector) -> Result<BoundFlags> {
    if s.len() != geometry.num_points() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {} points",
            s.len(),
            geometry.num_points()
        )));
    }
    let nonzero = !s.is_zero();
    let in_dual = if k == 1 {
        let lines = geometry.lines()?;
        super::block_residue_check(&lines, &s.to_multiset()).valid
    } else {
        IncidenceCode::new(geometry, k)?.dual_contains(s)?
    };
    let disjoint_hyperplane = match geometry.kind() {
        Kind::Projective if nonzero => Some(find_disjoint_hyperplane(geometry, &s.to_multiset())?.is_some()),
        _ => None,
    };
    Ok(BoundFlags {
        kind: geometry.kind(),
        k,
        nonzero,
        in_dual,
        zero_one: s.values().iter().all(|&v| v <= 1),
        has_unit_coordinate: s.has_coordinate(1),
        two_values: two_values(s),
        disjoint_hyperplane,
    })
}

/// Evaluates every bound for `s`, taken as a codeword of the dual of the
/// points-vs-k-spaces code of `geometry`.
pub fn bound_report(geometry: &Geometry, k: usize, s: &CharVector) -> Result<BoundReport> {
    let f = flags(geometry, k, s)?;
    let x = Params::new(geometry.p(), geometry.field().degree(), geometry.m());
    let (p, h, m) = (x.p, x.h, x.m);
    let q_gt_p = h > 1;
    let base = f.nonzero && f.in_dual;
    // Affine codewords, or projective ones that avoid some hyperplane.
    let affine_like = f.kind == Kind::Affine || f.disjoint_hyperplane == Some(true);

    let mut bounds = Vec::new();
    let mut push = |name: &str, metric: Metric, value: Rat, applies: bool| {
        let observed = match metric {
            Metric::Weight => s.weight() as i128,
            Metric::Sigma => s.sigma() as i128,
        };
        let v = ceil(value);
        bounds.push(BoundEntry {
            name: name.to_string(),
            metric,
            value: v,
            exact: value.to_string(),
            applies,
            satisfied: applies.then_some(observed >= v),
        });
    };

    if k >= 2 {
        let reduced = Params { m: m + 1 - k, ..x };
        let ok = base && geometry.kind() == Kind::Projective && k <= m;
        push("delsarte", Metric::Weight, delsarte(reduced), ok && reduced.m >= 2);
        push("bagchi_inamdar", Metric::Weight, bagchi_inamdar(reduced), ok);
        push("kspace_weight", Metric::Weight, kspace_weight(x, k), ok && q_gt_p && reduced.m >= 2);
    } else {
        push("delsarte", Metric::Weight, delsarte(x), base && m >= 2);
        push("bagchi_inamdar", Metric::Weight, bagchi_inamdar(x), base);
        push("zero_one_plane", Metric::Weight, zero_one_plane(x), base && m == 2 && q_gt_p && f.zero_one);
        push("improved_weight", Metric::Weight, improved_weight(x), base && q_gt_p && m >= 2);
        push("unit_point_lines", Metric::Sigma, unit_point_lines(x), base && f.has_unit_coordinate);
        push(
            "affine_unit_coordinate",
            Metric::Sigma,
            affine_unit_coordinate(x),
            base && q_gt_p && p > 2 && m >= 2 && f.has_unit_coordinate && affine_like,
        );
        push(
            "affine_no_unit_coordinate",
            Metric::Sigma,
            affine_no_unit_coordinate(x),
            base && m >= 2 && !f.has_unit_coordinate,
        );
        push(
            "two_multiplicity",
            Metric::Sigma,
            two_multiplicity(x),
            base && q_gt_p && p > 2 && m >= 2 && f.two_values.is_some(),
        );
        push("char3", Metric::Sigma, char3(x), base && p == 3 && q_gt_p && m >= 2);
        push("char5", Metric::Sigma, char5(x), base && p == 5 && q_gt_p && m >= 2);
    }
    Ok(BoundReport { params: x, sigma: s.sigma(), weight: s.weight(), flags: f, bounds })
}

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use modp_core::codes::bounds::{self, bound_report, BoundReport, Params};
use modp_core::codes::{
    block_residue_check, dual_minima, find_disjoint_hyperplane, hyperplane_spectrum, line_residue_check,
    restrict_to_affine, IncidenceCode, PointMultiset, SpectrumMode,
};
use modp_core::galois::Field;
use modp_core::geometry::{Caps, Geometry, Kind};
use modp_core::io::{element_digits, read_multiset_csv, to_digit_string, write_blocks_csv, write_multiset_csv, write_points_csv};
use modp_core::linearsets::{construct as build, is_scattered, max_linearset_size, SearchMode};
use modp_core::oracle::{run_oracle, run_oracle_projective, AgFieldModel, OracleReport};
use modp_core::Error;
use serde_json::{json, Value};

use crate::poly::parse_linearized;
use crate::report::{Inputs, Report};
use crate::{Common, KindArg, SpectrumArg};

fn parse_modulus(text: &str) -> Result<Vec<u32>> {
    let parts: Vec<&str> = if text.contains(',') { text.split(',').collect() } else { text.split("").filter(|s| !s.is_empty()).collect() };
    parts.iter().map(|s| s.trim().parse::<u32>().with_context(|| format!("bad modulus coefficient '{s}'"))).collect()
}

fn field(c: &Common) -> Result<Arc<Field>> {
    let modulus = c.modulus.as_deref().map(parse_modulus).transpose()?;
    Ok(Arc::new(Field::new(c.p, c.h, modulus.as_deref())?))
}

fn kind(c: &Common) -> Kind {
    match c.kind {
        KindArg::Pg => Kind::Projective,
        KindArg::Ag => Kind::Affine,
    }
}

fn geometry(c: &Common) -> Result<Geometry> {
    Ok(Geometry::new(kind(c), field(c)?, c.m, Caps::default())?)
}

fn projective(c: &Common, command: &str) -> Result<Geometry> {
    if c.kind != KindArg::Pg {
        bail!("{command} works in PG(m,q); drop --kind ag");
    }
    geometry(c)
}

fn report(command: &str, c: &Common, field: &Field, options: BTreeMap<String, Value>) -> Report {
    let inputs = Inputs {
        p: c.p,
        h: c.h,
        m: c.m,
        kind: match c.kind {
            KindArg::Pg => "pg".into(),
            KindArg::Ag => "ag".into(),
        },
        modulus: field.modulus().to_vec(),
        seed: c.seed,
        options,
    };
    Report::new(command, inputs)
}

fn options<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// u128 counts as JSON numbers when they fit, strings otherwise.
fn count(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| json!(n.to_string()), |v| json!(v))
}

fn read_input(path: &Path, geom: &Geometry) -> Result<PointMultiset> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_multiset_csv(BufReader::new(file), geom.p(), geom.num_points())
        .with_context(|| format!("reading {}", path.display()))
}

fn write_multiset(path: &Path, m: &PointMultiset) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(write_multiset_csv(file, m)?)
}

fn bound_claims(r: &mut Report, bounds: &BoundReport) {
    for b in bounds.bounds.iter().filter(|b| b.applies) {
        r.claim("bound_report", &format!("{}.value", b.name), b.value);
        r.claim("bound_report", &format!("{}.satisfied", b.name), b.satisfied);
    }
    r.require(bounds.consistent());
}

fn formula_table(x: Params) -> Value {
    let mut rows = vec![
        ("delsarte", bounds::delsarte(x)),
        ("bagchi_inamdar", bounds::bagchi_inamdar(x)),
        ("unit_point_lines", bounds::unit_point_lines(x)),
    ];
    if x.m >= 2 {
        rows.extend([
            ("zero_one_plane", bounds::zero_one_plane(x)),
            ("improved_weight", bounds::improved_weight(x)),
            ("affine_unit_coordinate", bounds::affine_unit_coordinate(x)),
            ("affine_no_unit_coordinate", bounds::affine_no_unit_coordinate(x)),
            ("two_multiplicity", bounds::two_multiplicity(x)),
        ]);
    }
    match x.p {
        3 => rows.push(("char3", bounds::char3(x))),
        5 => rows.push(("char5", bounds::char5(x))),
        _ => {}
    }
    Value::Array(
        rows.into_iter()
            .map(|(name, v)| json!({"name": name, "value": bounds::ceil(v) as i64, "exact": v.to_string()}))
            .collect(),
    )
}

pub fn construct(c: &Common, f: &str, t: u32, csv: Option<&Path>, affine_csv: Option<&Path>) -> Result<Report> {
    let pg = projective(c, "construct")?;
    let fld = pg.field().clone();
    let mut r = report("construct", c, &fld, options([("f", json!(f)), ("t", json!(t))]));
    let poly = parse_linearized(&fld, f)?;
    let scatter = is_scattered(&poly, &fld)?;
    if !scatter.scattered {
        eprintln!("warning: {f} is not scattered over GF({}); continuing with the empirical checks", fld.order());
    }
    r.claim("is_scattered", "scattered", scatter.scattered);
    r.claim("is_scattered", "values", scatter.values);

    let con = build(&pg, &poly, t)?;
    let m = &con.multiset;
    r.claim("linear_set", "L_U.size", con.lu.len());
    r.claim("linear_set", "L_W.size", con.lw.len());
    r.claim("symdiff_multiset", "size", m.size());
    r.claim("symdiff_multiset", "support", m.support_size());

    let lines = line_residue_check(&pg, m)?;
    r.claim("line_residue_check", "lines_checked", lines.lines_checked);
    r.claim("line_residue_check", "valid", lines.valid);
    r.require(lines.valid);
    r.result("line_check", &lines);

    let hyperplane = find_disjoint_hyperplane(&pg, m)?;
    r.claim("find_disjoint_hyperplane", "found", hyperplane.is_some());
    if let Some(normal) = &hyperplane {
        let (ag, affine) = restrict_to_affine(&pg, m, normal)?;
        r.claim("restrict_to_affine", "size", affine.size());
        r.claim("restrict_to_affine", "points", ag.num_points());
        let digits: Vec<String> = normal.iter().map(|&e| element_digits(&fld, e)).collect();
        r.result("disjoint_hyperplane", digits);
        if let Some(path) = affine_csv {
            write_multiset(path, &affine)?;
        }
    }

    let bounds = bound_report(&pg, 1, &m.char_vector())?;
    let thm = bounds.get("two_multiplicity").expect("bound present");
    r.claim("bound_report", "two_multiplicity.value", thm.value);
    r.claim("bound_report", "two_multiplicity.applies", thm.applies);
    r.claim("bound_report", "two_multiplicity.attained", thm.applies && thm.value == m.size() as i128);
    r.require(bounds.consistent());
    r.result("bounds", &bounds);
    r.result("multiset", m.iter().collect::<Vec<_>>());

    if let Some(path) = csv {
        write_multiset(path, m)?;
    }
    Ok(r)
}

pub fn verify(c: &Common, input: &Path, k: usize) -> Result<Report> {
    let geom = geometry(c)?;
    let mut r = report("verify", c, geom.field(), options([("input", json!(input.display().to_string())), ("k", json!(k))]));
    let m = read_input(input, &geom)?;
    r.claim("read_multiset_csv", "size", m.size());
    r.claim("read_multiset_csv", "support", m.support_size());

    let check = if k == 1 { line_residue_check(&geom, &m)? } else { block_residue_check(&geom.blocks(k)?, &m) };
    r.claim("block_residue_check", "blocks_checked", check.lines_checked);
    r.claim("block_residue_check", "valid", check.valid);
    if let Some((block, sum)) = check.offending {
        r.claim("block_residue_check", "offending_block", block);
        r.claim("block_residue_check", "offending_sum", sum);
        let points = if k == 1 { geom.lines()?.block(block).to_vec() } else { geom.blocks(k)?.block(block).to_vec() };
        r.result("offending_points", points);
    }
    r.require(check.valid);
    r.result("block_check", &check);

    let s = m.char_vector();
    let bounds = bound_report(&geom, k, &s)?;
    r.claim("bound_report", "in_dual", bounds.flags.in_dual);
    if check.valid {
        bound_claims(&mut r, &bounds);
    }
    r.result("bounds", &bounds);

    if geom.kind() == Kind::Projective {
        let spec = hyperplane_spectrum(&geom, &m, SpectrumMode::Weighted)?;
        r.claim("hyperplane_spectrum", "count_identity", spec.count_identity);
        r.claim("hyperplane_spectrum", "incidence_identity", spec.incidence_identity);
        r.require(spec.count_identity && spec.incidence_identity);
        r.result("spectrum", &spec);
    }
    Ok(r)
}

pub fn minweight(c: &Common, k: usize, budget: u128) -> Result<Report> {
    let geom = geometry(c)?;
    let mut r = report("minweight", c, geom.field(), options([("k", json!(k)), ("budget", count(budget))]));
    let code = IncidenceCode::new(&geom, k)?;
    r.claim("rank", "rank", code.rank());
    r.claim("rank", "dual_dim", code.dual_dim());
    let x = Params::new(geom.p(), geom.field().degree(), geom.m() + 1 - k);
    match dual_minima(&code, budget) {
        Err(Error::BudgetExceeded { dual_dim, budget }) => {
            r.refused = Some(format!("p^{dual_dim} codewords exceed the budget of {budget}"));
            r.result("formula_bounds", formula_table(x));
            if let Value::Array(rows) = formula_table(x) {
                for row in rows {
                    r.claim("formula", row["name"].as_str().unwrap_or_default(), row["value"].clone());
                }
            }
        }
        Err(e) => return Err(e.into()),
        Ok(None) => {
            r.claim("dual_minima", "codewords", 1);
        }
        Ok(Some(min)) => {
            r.claim("dual_minima", "codewords", count(min.codewords));
            r.claim("dual_minima", "min_weight", min.min_weight);
            r.claim("dual_minima", "min_sigma", min.min_sigma);
            r.result("weight_witness", to_digit_string(&min.weight_witness));
            r.result("sigma_witness", to_digit_string(&min.sigma_witness));
            for (label, w) in [("weight_witness", &min.weight_witness), ("sigma_witness", &min.sigma_witness)] {
                let b = bound_report(&geom, k, w)?;
                r.require(b.consistent());
                r.result(&format!("{label}_bounds"), &b);
            }
            let b = bound_report(&geom, k, &min.weight_witness)?;
            if let Some(best) = b.best(modp_core::codes::Metric::Weight) {
                r.claim("bound_report", &format!("{}.value", best.name), best.value);
            }
        }
    }
    Ok(r)
}

fn oracle_claims(r: &mut Report, o: &OracleReport) {
    let support: Vec<_> = o.support_verdicts().collect();
    let off: Vec<_> = o.off_support_verdicts().collect();
    r.claim("run_oracle", "size", o.size);
    r.claim("run_oracle", "valid_multiset", o.valid_multiset);
    r.claim("run_oracle", "lines_verified", o.lines_verified);
    r.claim("check_support_structure", "points", support.len());
    r.claim("check_support_structure", "pass", support.iter().filter(|v| v.pass).count());
    r.claim("check_pth_power", "points", off.len());
    r.claim("check_pth_power", "pass", off.iter().filter(|v| v.pass).count());
    let required: Vec<u64> = o.sigma.iter().filter(|s| s.required).map(|s| s.j).collect();
    r.claim("sigma_j_scan", "required_j", &required);
    r.claim("sigma_j_scan", "all_zero", o.sigma.iter().filter(|s| s.required).all(|s| s.all_zero));
    r.claim("lucas_coefficient_check", "all_one", o.lucas.all_one());
    r.claim("run_oracle", "all_pass", o.all_pass);
    r.require(o.all_pass);
}

pub fn oracle(c: &Common, input: &Path) -> Result<Report> {
    let geom = geometry(c)?;
    let mut r = report("oracle", c, geom.field(), options([("input", json!(input.display().to_string()))]));
    let m = read_input(input, &geom)?;
    let o = match geom.kind() {
        Kind::Projective => {
            let (normal, o) = run_oracle_projective(&geom, &m)?;
            let digits: Vec<String> = normal.iter().map(|&e| element_digits(geom.field(), e)).collect();
            r.result("disjoint_hyperplane", digits);
            o
        }
        Kind::Affine => run_oracle(&AgFieldModel::new(&geom)?, &m)?,
    };
    oracle_claims(&mut r, &o);
    r.result("oracle", &o);
    Ok(r)
}

pub fn geom_enum(c: &Common, dim: usize, csv: Option<&Path>, blocks_csv: Option<&Path>) -> Result<Report> {
    let geom = geometry(c)?;
    let mut r = report("geom enum", c, geom.field(), options([("dim", json!(dim))]));
    r.claim("points", "count", geom.num_points());
    r.claim("subspace_count", "count", count(geom.subspace_count(dim)));
    if let Some(path) = csv {
        write_points_csv(File::create(path)?, &geom)?;
    }
    if dim >= 1 {
        let blocks = geom.blocks(dim)?;
        r.claim("blocks", "count", blocks.len());
        r.claim("blocks", "points_per_block", blocks.iter().next().map_or(0, |b| b.len()));
        let mut degree = vec![0usize; geom.num_points()];
        for b in blocks.iter() {
            for &x in b {
                degree[x as usize] += 1;
            }
        }
        let regular = degree.windows(2).all(|w| w[0] == w[1]);
        r.claim("blocks", "blocks_per_point", degree.first().copied());
        r.claim("blocks", "regular", regular);
        r.require(regular && blocks.len() as u128 == geom.subspace_count(dim));
        if let Some(path) = blocks_csv {
            write_blocks_csv(File::create(path)?, &blocks)?;
        }
    }
    Ok(r)
}

pub fn rank(c: &Common, k: usize) -> Result<Report> {
    let geom = geometry(c)?;
    let mut r = report("rank", c, geom.field(), options([("k", json!(k))]));
    let code = IncidenceCode::new(&geom, k)?;
    let shuffled = code.rank_shuffled(c.seed);
    r.claim("rank", "length", code.length());
    r.claim("rank", "blocks", code.blocks().len());
    r.claim("rank", "rank", code.rank());
    r.claim("rank", "dual_dim", code.dual_dim());
    r.claim("rank_shuffled", "rank", shuffled);
    r.require(shuffled == code.rank());
    Ok(r)
}

pub fn spectrum(c: &Common, input: &Path, mode: SpectrumArg) -> Result<Report> {
    let pg = projective(c, "spectrum")?;
    let mode = match mode {
        SpectrumArg::Support => SpectrumMode::Support,
        SpectrumArg::Weighted => SpectrumMode::Weighted,
    };
    let mut r = report("spectrum", c, pg.field(), options([("input", json!(input.display().to_string())), ("mode", json!(mode))]));
    let m = read_input(input, &pg)?;
    let s = hyperplane_spectrum(&pg, &m, mode)?;
    for &(n, z) in &s.sizes {
        r.claim("hyperplane_spectrum", &format!("z[{n}]"), z);
    }
    r.claim("hyperplane_spectrum", "count_identity", s.count_identity);
    r.claim("hyperplane_spectrum", "incidence_identity", s.incidence_identity);
    r.claim("hyperplane_spectrum", "meets_every_hyperplane", s.meets_every_hyperplane);
    r.claim("hyperplane_spectrum", "total_at_least_n1_q", s.total_at_least_n1_q);
    r.require(s.count_identity && s.incidence_identity && s.total_at_least_n1_q != Some(false));
    r.result("spectrum", &s);
    Ok(r)
}

pub fn search_maxlinearset(c: &Common, rank: usize, samples: Option<u64>, cap: u128) -> Result<Report> {
    let pg = projective(c, "search-maxlinearset")?;
    let mode = match samples {
        Some(samples) => SearchMode::Sampled { samples, seed: c.seed },
        None => SearchMode::Exhaustive,
    };
    let mut r = report(
        "search-maxlinearset",
        c,
        pg.field(),
        options([("rank", json!(rank)), ("samples", json!(samples)), ("cap", count(cap))]),
    );
    let s = max_linearset_size(&pg, rank, mode, cap)?;
    r.claim("max_linearset_size", "subspaces", count(s.subspaces));
    r.claim("max_linearset_size", "max_size", s.max_size);
    r.claim("max_linearset_size", "trivial_bound", s.trivial_bound);
    r.claim("rank_hm_bound", "value", s.rank_hm_bound);
    r.claim("rank_hm_bound", "applies", s.bound_applies);
    r.claim("rank_hm_bound", "within_bound", s.within_bound);
    r.require(s.within_bound && s.max_size as u64 <= s.trivial_bound);
    r.result("search", &s);
    Ok(r)
}

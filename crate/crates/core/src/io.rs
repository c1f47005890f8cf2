//! CSV and digit-string formats for multisets, points and blocks.
//!
//! Multisets are written as `point,multiplicity` rows. Dense digit strings
//! hold one base-p digit per point (`0-9a-z`, so p ≤ 36).

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::codes::{CharVector, PointMultiset};
use crate::error::{Error, Result};
use crate::galois::Field;
use crate::geometry::{Blocks, Geometry};

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    point: u32,
    multiplicity: u32,
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn write_multiset_csv<W: Write>(w: W, m: &PointMultiset) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for (point, multiplicity) in m.iter() {
        out.serialize(Row { point, multiplicity }).map_err(csv_err)?;
    }
    if m.is_empty() {
        out.write_record(["point", "multiplicity"]).map_err(csv_err)?;
    }
    out.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Reads `point,multiplicity` rows. An input with no rows is an error.
pub fn read_multiset_csv<R: Read>(r: R, p: u32, num_points: usize) -> Result<PointMultiset> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let rows: Vec<Row> = rdr.deserialize().collect::<std::result::Result<_, _>>().map_err(csv_err)?;
    if rows.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    PointMultiset::new(p, num_points, rows.into_iter().map(|r| (r.point, r.multiplicity)))
}

fn digit_char(d: u32) -> char {
    char::from_digit(d, 36).expect("digit below 36")
}

pub fn to_digit_string(s: &CharVector) -> String {
    s.values().iter().map(|&v| digit_char(v as u32)).collect()
}

pub fn from_digit_string(p: u32, s: &str) -> Result<CharVector> {
    let values = s
        .trim()
        .chars()
        .map(|c| {
            c.to_digit(36)
                .filter(|&d| d < p)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Parse(format!("'{c}' is not a base-{p} digit")))
        })
        .collect::<Result<Vec<u8>>>()?;
    CharVector::new(p, values)
}

/// Coefficients of a field element, constant term first.
pub fn element_digits(field: &Field, e: crate::galois::Elem) -> String {
    field.coeffs(e).into_iter().map(digit_char).collect()
}

/// One row per point: index, then each homogeneous (or affine) coordinate as
/// a coefficient digit string.
pub fn write_points_csv<W: Write>(w: W, geom: &Geometry) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let dims = geom.point_coords(0).len();
    let mut header = vec!["index".to_string()];
    header.extend((0..dims).map(|i| format!("x{i}")));
    out.write_record(&header).map_err(csv_err)?;
    for i in 0..geom.num_points() {
        let mut rec = vec![i.to_string()];
        rec.extend(geom.point_coords(i).into_iter().map(|c| element_digits(geom.field(), c)));
        out.write_record(&rec).map_err(csv_err)?;
    }
    out.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// One row per block: index and its sorted point indices separated by spaces.
pub fn write_blocks_csv<W: Write>(w: W, blocks: &Blocks) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["block", "points"]).map_err(csv_err)?;
    for (i, b) in blocks.iter().enumerate() {
        let pts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        out.write_record([i.to_string(), pts.join(" ")]).map_err(csv_err)?;
    }
    out.flush().map_err(|e| Error::Parse(e.to_string()))
}

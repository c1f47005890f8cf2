//! Multisets, characteristic vectors, incidence codes and their duals.

pub mod bounds;
mod code;
mod minweight;
mod multiset;
mod spectrum;

pub use bounds::{bound_report, BoundEntry, BoundFlags, BoundReport, Params};
pub use code::IncidenceCode;
pub use minweight::{
    dual_minima, kspace_dual_minweight, min_weight_exhaustive, minima_of_span, scan_codewords, Codeword, DualMinima,
    KspaceMinWeight, Metric, DEFAULT_BUDGET,
};
pub use multiset::{
    block_residue_check, extend_affine_to_projective, find_disjoint_hyperplane, line_residue_check, restrict_to_affine,
    CharVector, LineCheck, PointMultiset,
};
pub use spectrum::{hyperplane_spectrum, HyperplaneSpectrum, SpectrumMode};

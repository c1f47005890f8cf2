//! Constructions and checks for (0 mod p)-multisets of finite projective and
//! affine spaces, the p-ary codes of their incidence structures, and F_p-linear
//! sets.

pub mod codes;
pub mod error;
pub mod galois;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod linearsets;
pub mod oracle;

pub use error::{Error, Result};

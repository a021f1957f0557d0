//! Exact and certified computations for elliptic curves over Q, assembled
//! into a pass/fail verification ledger.

pub mod arith;
pub mod counting;
pub mod curve;
pub mod error;
pub mod galois_image;
pub mod ledger;
pub mod local_data;
pub mod lvalue;
pub mod padic;
pub mod real;
pub mod torsion;

pub use curve::{Point, WeierstrassCurve};
pub use error::{Error, Result};

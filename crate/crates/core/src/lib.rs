//! Genus-2 curve invariants over exact fields, Hasse-Witt data, reduction
//! tables for quartic CM fields, Siegel theta constants and denominator bounds.

pub mod bounds;
pub mod cmfield;
pub mod curves;
pub mod error;
pub mod factor;
pub mod field;
pub mod fixtures;
pub mod float;
pub mod fp;
pub mod galois_tables;
pub mod hasse_witt;
pub mod invariants;
pub mod linalg;
pub mod ntheory;
pub mod order;
pub mod poly;
pub mod theta;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement, Fq, FqCtx, Scalar};
pub use poly::Poly;

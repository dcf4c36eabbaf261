//! Constacyclic codes of length `n p^k` over `F_{p^m}[u]/<u^{2 lambda}>` with
//! unit `delta + alpha u^2`: construction, enumeration, duals and brute-force
//! verification.

pub mod ambient;
pub mod chain;
pub mod code;
pub mod crt;
pub mod error;
pub mod factor;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod quad;
pub mod specialize;
pub mod staircase;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use poly::{Poly, PolyRing};

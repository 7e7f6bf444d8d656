//! Exact computations with Mackey and Green functors for finite cyclic groups.
//!
//! Everything is computed over `Z` with arbitrary-precision integers: abelian
//! groups are integer presentations reduced by Smith normal form, Mackey
//! functors are divisor-indexed families of such groups, and homology is
//! taken levelwise.

pub mod arith;
pub mod cycmonoid;
pub mod error;
pub mod fgab;
pub mod geomfix;
pub mod green;
pub mod hochschild;
pub mod mackey;
pub mod norm;
pub mod poly;
pub mod suites;
pub mod wittcore;
pub mod wittgreen;

pub use error::{Error, Result};

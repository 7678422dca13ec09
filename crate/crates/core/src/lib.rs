//! Exact computation of F-polynomials of cluster Donaldson-Thomas
//! transformations, and the labeled posets whose ideal functions
//! reproduce them.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod linalg;
pub mod poly;
pub mod poset;
pub mod quiver;
pub mod seedtrack;
pub mod verify;
pub mod webs;

pub use error::{Error, Result};
pub use poly::{exact_div, substitute, eval_rational, Monomial, Polynomial, RationalExpr, VarId};
pub use quiver::{find_isomorphism, Quiver, VertexId};

//! Shadows, sections and L_p projection bodies of the regular simplex, the cube and
//! the cross-polytope: closed-form volumes, extremal directions, and brute-force
//! oracles to check them against.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod closedform;
pub mod error;
pub mod extremal;
pub mod linalg;
pub mod lpbodies;
pub mod oracle;
pub mod report;
pub mod sections;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{normalize, orthonormal_pair, project_zero_sum, Direction, OrthoPair, Seed};

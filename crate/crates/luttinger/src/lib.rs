//! Presentation-level calculus for 4-manifold constructions built from torus
//! surgeries and symplectic sums, with certified fundamental group claims.

pub mod fpgroup;
pub mod blocks;
pub mod calculus;
pub mod recipes;
pub mod cli;

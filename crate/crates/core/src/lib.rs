//! Dirichlet eigenvalues of the cube `(0, π)³` and the machinery needed to decide which
//! of them are Courant sharp.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`spectrum`] enumerates the modes `sin(ℓx) sin(my) sin(nz)`, groups them into
//!    eigenvalues with their Courant index ranges and evaluates the counting function.
//! 2. [`bounds`] applies the Faber–Krahn necessary condition together with a lattice-point
//!    lower bound on the counting function, which confines Courant-sharp eigenvalues below
//!    48.7 and leaves the candidates `k = 1, 2, 5, 8, 12`.
//! 3. [`symmetry`] splits every eigenspace by parity under `(x, y, z) ↦ (π−x, π−y, π−z)`
//!    and uses the paired nodal domains of odd functions to discard `k = 5` and `k = 12`.
//! 4. [`quadric`] and [`nodal`] settle the remaining eigenvalue `λ = 11` exactly (the zero
//!    set reduces to a quadric surface) and numerically (grid sampling and union-find
//!    labeling).
//!
//! [`cli`] turns all of this into reports.

pub mod bounds;
pub mod cli;
mod error;
pub mod nodal;
pub mod quadric;
pub mod sampling;
pub mod spectrum;
pub mod symmetry;

pub use error::{Error, Result};

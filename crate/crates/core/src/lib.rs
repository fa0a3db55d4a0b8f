//! Exact-arithmetic decision and reconstruction for decompositions of
//! homogeneous polynomials into linear combinations of d-th powers of
//! linearly independent linear forms, over ℝ or ℂ.
//!
//! The input polynomial is only accessed through an evaluation blackbox
//! ([`Oracle`]). The decision pipeline ([`decide_equiv`]) extracts three
//! distinguished slices of the symmetric coefficient tensor after a random
//! change of variables, then runs exact rational linear-algebra checks:
//! invertibility of the first slice, commutation of the two slice quotients,
//! and diagonalizability of one quotient. Reconstruction ([`reconstruct()`])
//! reuses the accepted decision state and recovers the linear forms from a
//! numeric eigendecomposition.
//!
//! Everything on the decision path is exact (`Rational` scalars); floating
//! point appears only in the reconstruction stage, where it is unavoidable.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line front end live in the companion `waring-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decide;
pub mod eigen;
pub mod expr;
pub mod interp;
pub mod linalg;
pub mod minvars;
pub mod oracle;
pub mod poly;
pub mod reconstruct;
pub mod sampling;
pub mod scalar;
pub mod slices;
pub mod unipoly;

pub use decide::{decide_equiv, decide_full_slices, DecisionReport, FieldMode, Stage, Verdict};
pub use linalg::Matrix;
pub use minvars::{decide_waring, essential_count_and_basis, MinvarsReport};
pub use oracle::Oracle;
pub use poly::{Monomial, Poly};
pub use reconstruct::{reconstruct, Decomposition, ReconstructOutcome};
pub use sampling::SampleConfig;
pub use scalar::Rational;
pub use unipoly::UniPoly;

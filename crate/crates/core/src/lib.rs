//! Frame multipliers on finite-dimensional and block-structured Hilbert
//! spaces.
//!
//! The crate builds multipliers `M_{m,Phi,Psi} f = sum_n m_n <f, psi_n> phi_n`
//! from finite frames, computes the dual frames induced by an invertible
//! multiplier, and checks numerically when the inverse can be written with
//! the reciprocal symbol and (canonical or induced) dual frames.
//!
//! * [`numerics`]: dense complex linear algebra and the tolerance policy.
//! * [`frames`]: finite frames, frame operators, duals and equivalence.
//! * [`multipliers`]: multipliers, induced duals and inversion criteria.
//! * [`blockseq`]: infinite block-structured systems reduced to finite blocks.
//! * [`report`] and [`cli`]: JSON verification reports and the command line.

pub mod blockseq;
pub mod cli;
pub mod error;
pub mod frames;
pub mod multipliers;
pub mod numerics;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
pub use frames::FiniteFrame;
pub use multipliers::{Multiplier, Symbol};
pub use numerics::{ComplexMatrix, ToleranceConfig, C64};

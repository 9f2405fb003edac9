//! Infinite frame/symbol systems with enough structure to be evaluated
//! through finite computations.
//!
//! A [`BlockSystem`] places one finite template per block `k >= 1` on its own
//! copy of `C^b`, so its multiplier is block diagonal. An
//! [`InterleavedSystem`] mixes one recurrent direction, hit infinitely often
//! with geometrically decaying coefficients, with fresh unit directions.
//!
//! Limits (symbol infimum/supremum, frame bounds as `k -> inf`) come from
//! closed forms. They are spot-checked on finite prefixes, never proved.

mod block;
mod interleaved;
mod registry;

pub use block::{
    assemble_prefix, block_multiplier, system_frame_bounds, BlockGenerator, BlockMetadata,
    BlockSystem, BoundLimits, FrameBoundsReport, ScaledVector, ScaledWeight,
};
pub use interleaved::{interleaved_apply, InterleavedApply, InterleavedSystem, SparseVector};
pub use registry::{example_registry, lookup, Expectations, RegisteredExample};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Which sequence of a system a frame-bound question is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Phi,
    Psi,
    /// `(m_n phi_n)`.
    MPhi,
    /// `(conj(m_n) psi_n)`.
    MBarPsi,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Phi, Side::Psi, Side::MPhi, Side::MBarPsi];

    pub fn name(self) -> &'static str {
        match self {
            Side::Phi => "phi",
            Side::Psi => "psi",
            Side::MPhi => "m-phi",
            Side::MBarPsi => "m-bar-psi",
        }
    }
}

/// Frame classification of an infinite sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum FrameClass {
    Frame { lower: f64, upper: f64 },
    BesselNotFrame { upper: f64 },
    NotBessel,
}

impl FrameClass {
    pub fn is_frame(&self) -> bool {
        matches!(self, FrameClass::Frame { .. })
    }

    pub fn is_bessel(&self) -> bool {
        !matches!(self, FrameClass::NotBessel)
    }

    /// Classification from the closed-form infimum of the lower bounds and
    /// supremum of the upper bounds (`None` meaning unbounded).
    pub fn from_limits(lower: f64, upper: Option<f64>) -> FrameClass {
        match upper {
            None => FrameClass::NotBessel,
            Some(upper) if lower > 0.0 => FrameClass::Frame { lower, upper },
            Some(upper) => FrameClass::BesselNotFrame { upper },
        }
    }
}

/// Modulus profile of an infinite symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolProfile {
    pub inf_modulus: f64,
    /// `None` when the symbol is unbounded.
    pub sup_modulus: Option<f64>,
    pub all_nonzero: bool,
}

impl SymbolProfile {
    pub fn is_bounded(&self) -> bool {
        self.sup_modulus.is_some()
    }

    pub fn is_semi_normalized(&self) -> bool {
        self.inf_modulus > 0.0 && self.is_bounded()
    }
}

/// Number of generated symbol entries compared against the closed form.
pub const PROFILE_SPOT_CHECK: usize = 1024;

/// Number of generated terms used to spot-check ratio and bound metadata.
pub const METADATA_PREFIX: usize = 64;

/// Default horizon for per-block sweeps.
pub const DEFAULT_HORIZON: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum System {
    Block(BlockSystem),
    Interleaved(InterleavedSystem),
}

impl System {
    pub fn from_json(text: &str) -> Result<Self> {
        let system: System = serde_json::from_str(text)?;
        if let System::Block(b) = &system {
            b.validate()?;
        }
        Ok(system)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serialization is infallible")
    }
}

pub fn symbol_profile(system: &System) -> Result<SymbolProfile> {
    match system {
        System::Block(b) => b.symbol_profile(),
        System::Interleaved(i) => i.symbol_profile(),
    }
}

/// `|a - b| <= slack * max(1, |b|)`.
pub(crate) fn within(a: f64, b: f64, slack: f64) -> bool {
    (a - b).abs() <= slack * b.abs().max(1.0)
}

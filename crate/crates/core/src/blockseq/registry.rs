use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{C64, ONE};

use super::{
    BlockGenerator, BlockMetadata, BlockSystem, BoundLimits, InterleavedSystem, ScaledVector,
    ScaledWeight, Side, System,
};

/// Properties a registered system is expected to have.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expectations {
    /// Every block multiplier (or the recurrent coefficient) equals this times the identity.
    pub multiplier_scale: f64,
    /// Scale claimed in the literature, kept when it disagrees with the computed one.
    pub claimed_scale: Option<f64>,
    pub bounded_symbol: bool,
    pub semi_normalized_symbol: bool,
    pub frame_sides: Vec<Side>,
    pub not_bessel_sides: Vec<Side>,
    /// `M^{-1} = M_{1/m, Psi~, Phi~}` with canonical duals.
    pub canonical_inversion: Option<bool>,
    /// `Psi ~ m Phi` and `Phi ~ conj(m) Psi`.
    pub equivalences: Option<bool>,
    /// Induced duals obtainable by rewriting as a multiplier with all-ones symbol on `m Phi`.
    pub weighted_frame_pathway: bool,
    pub annotations: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegisteredExample {
    pub name: &'static str,
    pub description: &'static str,
    pub system: System,
    pub expectations: Expectations,
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn fixed(x: f64) -> ScaledVector {
    ScaledVector { vector: vec![c(x)], power: 0 }
}

fn limits(lower: f64, upper: f64) -> BoundLimits {
    BoundLimits { lower, upper: Some(upper) }
}

fn harmonic_triple() -> RegisteredExample {
    let decaying = ScaledVector { vector: vec![ONE], power: -1 };
    let generator = BlockGenerator::HarmonicWeight {
        phi: vec![fixed(1.0), fixed(1.0), fixed(-1.0)],
        psi: vec![fixed(1.0), decaying.clone(), decaying],
        symbol: vec![
            ScaledWeight { value: ONE, power: 0 },
            ScaledWeight { value: ONE, power: -1 },
            ScaledWeight { value: ONE, power: -1 },
        ],
    };
    // per-block scalars: S_phi = 3, S_psi = S_mphi = 1 + 2/k^2, S_mbarpsi = 1 + 2/k^4
    let metadata = BlockMetadata {
        frame_limits: BTreeMap::from([
            (Side::Phi, limits(3.0, 3.0)),
            (Side::Psi, limits(1.0, 3.0)),
            (Side::MPhi, limits(1.0, 3.0)),
            (Side::MBarPsi, limits(1.0, 3.0)),
        ]),
    };
    RegisteredExample {
        name: "ex4_1",
        description: "Phi = (e_k, e_k, -e_k), Psi = (e_k, e_k/k, e_k/k), m = (1, 1/k, 1/k) in block k; \
                      the symbol tends to zero yet M = Id",
        system: System::Block(BlockSystem::new(1, generator, metadata).expect("valid templates")),
        expectations: Expectations {
            multiplier_scale: 1.0,
            claimed_scale: None,
            bounded_symbol: true,
            semi_normalized_symbol: false,
            frame_sides: Side::ALL.to_vec(),
            not_bessel_sides: vec![],
            canonical_inversion: None,
            equivalences: None,
            weighted_frame_pathway: true,
            annotations: vec![
                "bounded symbol with m Phi a frame: induced duals exist via the all-ones rewrite",
                "weighted-canonical criterion not applicable: the symbol is not semi-normalized",
            ],
        },
    }
}

fn geometric_interleave() -> RegisteredExample {
    let s = std::f64::consts::SQRT_2;
    RegisteredExample {
        name: "ex4_2",
        description: "Phi = (e_1, e_2, e_1/2, e_3, e_1/4, ...), Psi = (e_1, e_2, e_1/sqrt2, e_3, e_1/2, ...), \
                      m = (1, 1, sqrt2, 1, 2, ...); unbounded symbol",
        system: System::Interleaved(InterleavedSystem::geometric(c(0.5), c(1.0 / s), c(s), 0.5)),
        expectations: Expectations {
            multiplier_scale: 2.0,
            claimed_scale: Some(1.0),
            bounded_symbol: false,
            semi_normalized_symbol: false,
            frame_sides: vec![Side::Phi, Side::Psi, Side::MPhi],
            not_bessel_sides: vec![Side::MBarPsi],
            canonical_inversion: None,
            equivalences: None,
            weighted_frame_pathway: false,
            annotations: vec![
                "unbounded symbol, m Phi a frame, conj(m) Psi not Bessel",
                "claimed M = Id; direct summation gives coefficient 2 on e_1, i.e. M = Id + P_{e_1}",
            ],
        },
    }
}

fn golden_triple() -> RegisteredExample {
    let r5 = 5f64.sqrt();
    let a = (5.0 + 2.0 * r5) / 5.0;
    let b = (5.0 - 2.0 * r5) / 5.0;
    let generator = BlockGenerator::ConstantTemplate {
        phi: vec![vec![c(1.0)], vec![c(1.0)], vec![c(-1.0)]],
        psi: vec![vec![c(1.0)], vec![c(1.0)], vec![c(1.0)]],
        symbol: vec![c(a), c(b), c(1.0)],
    };
    RegisteredExample {
        name: "ex5_3",
        description: "Phi = (e_k, e_k, -e_k), Psi = (e_k, e_k, e_k), m = ((5+2sqrt5)/5, (5-2sqrt5)/5, 1) in every block",
        system: System::Block(
            BlockSystem::new(1, generator, BlockMetadata::default()).expect("valid templates"),
        ),
        expectations: Expectations {
            multiplier_scale: 1.0,
            claimed_scale: None,
            bounded_symbol: true,
            semi_normalized_symbol: true,
            frame_sides: Side::ALL.to_vec(),
            not_bessel_sides: vec![],
            canonical_inversion: Some(true),
            equivalences: Some(false),
            weighted_frame_pathway: false,
            annotations: vec![
                "inverse is the reciprocal-symbol multiplier of the canonical duals",
                "neither Psi ~ m Phi nor Phi ~ conj(m) Psi: canonical inversion does not force equivalence",
            ],
        },
    }
}

fn sign_pair() -> RegisteredExample {
    let generator = BlockGenerator::ConstantTemplate {
        phi: vec![vec![c(1.0)], vec![c(1.0)]],
        psi: vec![vec![c(1.0)], vec![c(-1.0)]],
        symbol: vec![c(1.0), c(-1.0)],
    };
    RegisteredExample {
        name: "ex5_final",
        description: "Phi = (e_k, e_k), Psi = (e_k, -e_k), m = (1, -1) in every block; constant modulus",
        system: System::Block(
            BlockSystem::new(1, generator, BlockMetadata::default()).expect("valid templates"),
        ),
        expectations: Expectations {
            multiplier_scale: 2.0,
            claimed_scale: None,
            bounded_symbol: true,
            semi_normalized_symbol: true,
            frame_sides: Side::ALL.to_vec(),
            not_bessel_sides: vec![],
            canonical_inversion: Some(true),
            equivalences: Some(true),
            weighted_frame_pathway: false,
            annotations: vec![
                "constant-modulus symbol: canonical inversion and both equivalences hold together",
            ],
        },
    }
}

/// The four prebuilt systems, in a fixed order.
pub fn example_registry() -> Vec<RegisteredExample> {
    vec![harmonic_triple(), geometric_interleave(), golden_triple(), sign_pair()]
}

pub fn lookup(name: &str) -> Result<RegisteredExample> {
    example_registry()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))
}

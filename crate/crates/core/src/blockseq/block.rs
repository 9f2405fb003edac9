use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{frame_operator, FiniteFrame};
use crate::multipliers::{multiplier_matrix, Symbol};
use crate::numerics::{spectrum_hermitian, ComplexMatrix, ToleranceConfig, C64, ZERO};

use super::{within, FrameClass, Side, SymbolProfile, PROFILE_SPOT_CHECK};

/// Template vector scaled by `k^power` in block `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaledVector {
    pub vector: Vec<C64>,
    #[serde(default)]
    pub power: i32,
}

/// Template weight `value * k^power` in block `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaledWeight {
    pub value: C64,
    #[serde(default)]
    pub power: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BlockGenerator {
    /// Same templates in every block.
    ConstantTemplate {
        phi: Vec<Vec<C64>>,
        psi: Vec<Vec<C64>>,
        symbol: Vec<C64>,
    },
    /// Templates scaled by integer powers of the block index.
    HarmonicWeight {
        phi: Vec<ScaledVector>,
        psi: Vec<ScaledVector>,
        symbol: Vec<ScaledWeight>,
    },
}

/// Infimum of the per-block lower frame bounds and supremum of the upper
/// ones over all `k >= 1`. `upper: None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundLimits {
    pub lower: f64,
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockMetadata {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub frame_limits: BTreeMap<Side, BoundLimits>,
}

/// Block-diagonal infinite system: block `k` lives on its own copy of `C^b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSystem {
    pub block_dim: usize,
    pub generator: BlockGenerator,
    #[serde(default)]
    pub metadata: BlockMetadata,
}

fn scale(k: usize, power: i32) -> f64 {
    (k as f64).powi(power)
}

impl BlockSystem {
    pub fn new(block_dim: usize, generator: BlockGenerator, metadata: BlockMetadata) -> Result<Self> {
        let sys = BlockSystem {
            block_dim,
            generator,
            metadata,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_dim == 0 {
            return Err(Error::DimensionMismatch("block_dim must be >= 1".into()));
        }
        let (np, nq, nm, lengths): (usize, usize, usize, Vec<usize>) = match &self.generator {
            BlockGenerator::ConstantTemplate { phi, psi, symbol } => (
                phi.len(),
                psi.len(),
                symbol.len(),
                phi.iter().chain(psi).map(Vec::len).collect(),
            ),
            BlockGenerator::HarmonicWeight { phi, psi, symbol } => (
                phi.len(),
                psi.len(),
                symbol.len(),
                phi.iter().chain(psi).map(|s| s.vector.len()).collect(),
            ),
        };
        if np == 0 || np != nq || np != nm {
            return Err(Error::DimensionMismatch(format!(
                "templates have lengths {np} (phi), {nq} (psi), {nm} (symbol)"
            )));
        }
        if lengths.iter().any(|&l| l != self.block_dim) {
            return Err(Error::DimensionMismatch(format!(
                "template vectors must have length block_dim = {}",
                self.block_dim
            )));
        }
        Ok(())
    }

    /// Number of terms per block.
    pub fn template_len(&self) -> usize {
        match &self.generator {
            BlockGenerator::ConstantTemplate { symbol, .. } => symbol.len(),
            BlockGenerator::HarmonicWeight { symbol, .. } => symbol.len(),
        }
    }

    fn phi_vectors(&self, k: usize) -> Vec<Vec<C64>> {
        match &self.generator {
            BlockGenerator::ConstantTemplate { phi, .. } => phi.clone(),
            BlockGenerator::HarmonicWeight { phi, .. } => phi
                .iter()
                .map(|s| s.vector.iter().map(|z| z * scale(k, s.power)).collect())
                .collect(),
        }
    }

    fn psi_vectors(&self, k: usize) -> Vec<Vec<C64>> {
        match &self.generator {
            BlockGenerator::ConstantTemplate { psi, .. } => psi.clone(),
            BlockGenerator::HarmonicWeight { psi, .. } => psi
                .iter()
                .map(|s| s.vector.iter().map(|z| z * scale(k, s.power)).collect())
                .collect(),
        }
    }

    fn weights(&self, k: usize) -> Vec<C64> {
        match &self.generator {
            BlockGenerator::ConstantTemplate { symbol, .. } => symbol.clone(),
            BlockGenerator::HarmonicWeight { symbol, .. } => {
                symbol.iter().map(|w| w.value * scale(k, w.power)).collect()
            }
        }
    }

    /// Frames and symbol of block `k >= 1`.
    pub fn block(&self, k: usize) -> Result<(FiniteFrame, FiniteFrame, Symbol)> {
        if k == 0 {
            return Err(Error::PreconditionFailed("block indices start at 1".into()));
        }
        Ok((
            FiniteFrame::from_vectors(self.block_dim, self.phi_vectors(k))?,
            FiniteFrame::from_vectors(self.block_dim, self.psi_vectors(k))?,
            Symbol::new(self.weights(k))?,
        ))
    }

    /// The sequence of block `k` on the requested side.
    pub fn side_frame(&self, k: usize, side: Side) -> Result<FiniteFrame> {
        let (phi, psi, m) = self.block(k)?;
        match side {
            Side::Phi => Ok(phi),
            Side::Psi => Ok(psi),
            Side::MPhi => phi.weighted(m.values()),
            Side::MBarPsi => psi.weighted(m.conj().values()),
        }
    }

    /// Whether the side's block templates do not depend on `k`.
    fn side_is_constant(&self, side: Side) -> bool {
        match &self.generator {
            BlockGenerator::ConstantTemplate { .. } => true,
            BlockGenerator::HarmonicWeight { phi, psi, symbol } => {
                let vec_const = |v: &[ScaledVector]| v.iter().all(|s| s.power == 0);
                let sym_const = symbol.iter().all(|w| w.power == 0);
                match side {
                    Side::Phi => vec_const(phi),
                    Side::Psi => vec_const(psi),
                    Side::MPhi => vec_const(phi) && sym_const,
                    Side::MBarPsi => vec_const(psi) && sym_const,
                }
            }
        }
    }

    /// Closed-form modulus profile, spot-checked against the first
    /// [`PROFILE_SPOT_CHECK`] generated entries.
    pub fn symbol_profile(&self) -> Result<SymbolProfile> {
        let entries: Vec<(f64, i32)> = match &self.generator {
            BlockGenerator::ConstantTemplate { symbol, .. } => {
                symbol.iter().map(|z| (z.norm(), 0)).collect()
            }
            BlockGenerator::HarmonicWeight { symbol, .. } => {
                symbol.iter().map(|w| (w.value.norm(), w.power)).collect()
            }
        };
        let mut inf = f64::INFINITY;
        let mut sup = Some(0.0f64);
        for &(modulus, power) in &entries {
            // |c| k^p over k >= 1
            let (lo, hi) = match power.signum() {
                _ if modulus == 0.0 => (0.0, Some(0.0)),
                0 => (modulus, Some(modulus)),
                1 => (modulus, None),
                _ => (0.0, Some(modulus)),
            };
            inf = inf.min(lo);
            sup = match (sup, hi) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            };
        }
        let profile = SymbolProfile {
            inf_modulus: inf,
            sup_modulus: sup,
            all_nonzero: entries.iter().all(|&(modulus, _)| modulus > 0.0),
        };

        let per_block = self.template_len();
        let blocks = PROFILE_SPOT_CHECK.div_ceil(per_block);
        for k in 1..=blocks {
            for (n, z) in self.weights(k).iter().enumerate() {
                let r = z.norm();
                let below = r < profile.inf_modulus && !within(r, profile.inf_modulus, 1e-12);
                let above = profile.sup_modulus.is_some_and(|s| r > s && !within(r, s, 1e-12));
                if below || above {
                    return Err(Error::MetadataInconsistent(format!(
                        "|m| = {r} in block {k}, entry {n} lies outside the closed-form range"
                    )));
                }
            }
        }
        Ok(profile)
    }
}

/// `sum_n m_{k,n} phi_{k,n} psi_{k,n}^*` for block `k >= 1`.
pub fn block_multiplier(sys: &BlockSystem, k: usize) -> Result<ComplexMatrix> {
    let (phi, psi, m) = sys.block(k)?;
    multiplier_matrix(&m, &phi, &psi)
}

/// The first `horizon` blocks embedded in `C^{b * horizon}`.
pub fn assemble_prefix(
    sys: &BlockSystem,
    horizon: usize,
) -> Result<(FiniteFrame, FiniteFrame, Symbol)> {
    if horizon == 0 {
        return Err(Error::PreconditionFailed("horizon must be >= 1".into()));
    }
    let b = sys.block_dim;
    let dim = b * horizon;
    let embed = |k: usize, v: &[C64]| -> Vec<C64> {
        let mut out = vec![ZERO; dim];
        out[(k - 1) * b..k * b].copy_from_slice(v);
        out
    };
    let (mut phi, mut psi, mut weights) = (Vec::new(), Vec::new(), Vec::new());
    for k in 1..=horizon {
        phi.extend(sys.phi_vectors(k).iter().map(|v| embed(k, v)));
        psi.extend(sys.psi_vectors(k).iter().map(|v| embed(k, v)));
        weights.extend(sys.weights(k));
    }
    Ok((
        FiniteFrame::from_vectors(dim, phi)?,
        FiniteFrame::from_vectors(dim, psi)?,
        Symbol::new(weights)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBoundsReport {
    pub side: Side,
    pub horizon: usize,
    /// `min_{k <= K} lambda_min(S_k)`.
    pub horizon_lower: f64,
    /// `max_{k <= K} lambda_max(S_k)`.
    pub horizon_upper: f64,
    pub classification: FrameClass,
}

/// Frame bounds over the first `horizon` blocks plus the limit classification.
pub fn system_frame_bounds(
    sys: &BlockSystem,
    side: Side,
    horizon: usize,
    tol: &ToleranceConfig,
) -> Result<FrameBoundsReport> {
    if horizon == 0 {
        return Err(Error::PreconditionFailed("horizon must be >= 1".into()));
    }
    let mut lows = Vec::with_capacity(horizon);
    let mut highs = Vec::with_capacity(horizon);
    for k in 1..=horizon {
        let spectrum = spectrum_hermitian(&frame_operator(&sys.side_frame(k, side)?), tol)?;
        lows.push(spectrum[0].max(0.0));
        highs.push(spectrum[spectrum.len() - 1]);
    }
    let horizon_lower = lows.iter().copied().fold(f64::INFINITY, f64::min);
    let horizon_upper = highs.iter().copied().fold(0.0, f64::max);

    let classification = if let Some(limits) = sys.metadata.frame_limits.get(&side) {
        let slack = 1e-9;
        let lower_ok = horizon_lower >= limits.lower || within(horizon_lower, limits.lower, slack);
        let upper_ok = limits
            .upper
            .is_none_or(|u| horizon_upper <= u || within(horizon_upper, u, slack));
        if !(lower_ok && upper_ok) {
            return Err(Error::MetadataInconsistent(format!(
                "side {}: horizon bounds ({horizon_lower}, {horizon_upper}) fall outside {limits:?}",
                side.name()
            )));
        }
        FrameClass::from_limits(limits.lower, limits.upper)
    } else {
        let flat = |xs: &[f64]| {
            let (lo, hi) = xs
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
            hi - lo <= tol.rel_eps * hi.max(1.0)
        };
        if !(sys.side_is_constant(side) || (flat(&lows) && flat(&highs))) {
            return Err(Error::MetadataMissing(format!("side {}", side.name())));
        }
        let lower = if horizon_lower <= tol.rel_eps * horizon_upper {
            0.0
        } else {
            horizon_lower
        };
        FrameClass::from_limits(lower, Some(horizon_upper))
    };
    Ok(FrameBoundsReport {
        side,
        horizon,
        horizon_lower,
        horizon_upper,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockseq::lookup;
    use crate::multipliers::build;
    use crate::numerics::ONE;

    fn block_of(name: &str) -> BlockSystem {
        match lookup(name).unwrap().system {
            crate::blockseq::System::Block(b) => b,
            _ => panic!("{name} is not a block system"),
        }
    }

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn identity_blocks() {
        for name in ["ex4_1", "ex5_3"] {
            let sys = block_of(name);
            for k in [1, 2, 7, 1000] {
                let m = block_multiplier(&sys, k).unwrap();
                assert!((m.get(0, 0) - ONE).norm() < 1e-12, "{name} block {k}");
            }
        }
    }

    #[test]
    fn all_ones_repeated_vector_block() {
        let sys = BlockSystem::new(
            1,
            BlockGenerator::ConstantTemplate {
                phi: vec![vec![ONE], vec![ONE]],
                psi: vec![vec![ONE], vec![ONE]],
                symbol: vec![ONE, ONE],
            },
            BlockMetadata::default(),
        )
        .unwrap();
        assert_eq!(block_multiplier(&sys, 3).unwrap(), ComplexMatrix::from_real(1, 1, &[2.0]));
        let r = system_frame_bounds(&sys, Side::Phi, 10, &ToleranceConfig::default()).unwrap();
        assert_eq!(r.classification, FrameClass::Frame { lower: 2.0, upper: 2.0 });
    }

    #[test]
    fn block_index_zero_rejected() {
        assert!(matches!(
            block_multiplier(&block_of("ex5_3"), 0),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn harmonic_frame_bounds() {
        let sys = block_of("ex4_1");
        let r = system_frame_bounds(&sys, Side::MPhi, 1000, &ToleranceConfig::default()).unwrap();
        assert!((r.horizon_upper - 3.0).abs() < 1e-12);
        assert!((r.horizon_lower - (1.0 + 2.0 / 1e6)).abs() < 1e-12);
        assert_eq!(r.classification, FrameClass::Frame { lower: 1.0, upper: 3.0 });
    }

    #[test]
    fn missing_metadata_is_reported() {
        let mut sys = block_of("ex4_1");
        sys.metadata = BlockMetadata::default();
        let t = ToleranceConfig::default();
        assert!(matches!(
            system_frame_bounds(&sys, Side::MPhi, 50, &t),
            Err(Error::MetadataMissing(_))
        ));
        // phi templates do not depend on k
        assert!(system_frame_bounds(&sys, Side::Phi, 50, &t).unwrap().classification.is_frame());
    }

    #[test]
    fn wrong_metadata_is_caught() {
        let mut sys = block_of("ex4_1");
        sys.metadata.frame_limits.insert(Side::MPhi, BoundLimits { lower: 1.5, upper: Some(3.0) });
        assert!(matches!(
            system_frame_bounds(&sys, Side::MPhi, 100, &ToleranceConfig::default()),
            Err(Error::MetadataInconsistent(_))
        ));
    }

    #[test]
    fn symbol_profiles() {
        let p = block_of("ex4_1").symbol_profile().unwrap();
        assert_eq!(p.inf_modulus, 0.0);
        assert_eq!(p.sup_modulus, Some(1.0));
        assert!(p.is_bounded() && !p.is_semi_normalized() && p.all_nonzero);

        let r5 = 5f64.sqrt();
        let p = block_of("ex5_3").symbol_profile().unwrap();
        assert!((p.inf_modulus - (5.0 - 2.0 * r5) / 5.0).abs() < 1e-15);
        assert!((p.sup_modulus.unwrap() - (5.0 + 2.0 * r5) / 5.0).abs() < 1e-15);
        assert!(p.is_semi_normalized());
    }

    #[test]
    fn growing_symbol_is_unbounded() {
        let sys = BlockSystem::new(
            1,
            BlockGenerator::HarmonicWeight {
                phi: vec![ScaledVector { vector: vec![ONE], power: 0 }],
                psi: vec![ScaledVector { vector: vec![ONE], power: 0 }],
                symbol: vec![ScaledWeight { value: c(0.5), power: 1 }],
            },
            BlockMetadata::default(),
        )
        .unwrap();
        let p = sys.symbol_profile().unwrap();
        assert_eq!(p.sup_modulus, None);
        assert_eq!(p.inf_modulus, 0.5);
    }

    #[test]
    fn validation_rejects_ragged_templates() {
        let bad = BlockSystem::new(
            2,
            BlockGenerator::ConstantTemplate {
                phi: vec![vec![ONE, ONE]],
                psi: vec![vec![ONE]],
                symbol: vec![ONE],
            },
            BlockMetadata::default(),
        );
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
        let bad = BlockSystem::new(
            1,
            BlockGenerator::ConstantTemplate {
                phi: vec![vec![ONE]],
                psi: vec![vec![ONE]],
                symbol: vec![ONE, ONE],
            },
            BlockMetadata::default(),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn prefix_assembly_matches_blocks() {
        for name in ["ex4_1", "ex5_3", "ex5_final"] {
            let sys = block_of(name);
            let (phi, psi, m) = assemble_prefix(&sys, 6).unwrap();
            let full = build(m, phi, psi).unwrap();
            let blocks: Vec<ComplexMatrix> =
                (1..=6).map(|k| block_multiplier(&sys, k).unwrap()).collect();
            assert_eq!(full.matrix(), &ComplexMatrix::block_diagonal(&blocks), "{name}");
        }
    }
}

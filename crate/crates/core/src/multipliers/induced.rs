//! Dual frames induced by an invertible multiplier, the inversion identities
//! they satisfy, and finite-dimensional uniqueness certificates.
//!
//! For an invertible `M = M_{m,Phi,Psi}` with nonzero symbol:
//!
//! * `Phi_dag = ((M^{-1})^* (conj(m_n) psi_n))` is a dual of `Phi` and
//!   `M^{-1} = M_{1/m, Psi_d, Phi_dag}` for every dual `Psi_d` of `Psi`;
//! * `Psi_dag = (M^{-1} (m_n phi_n))` is a dual of `Psi` and
//!   `M^{-1} = M_{1/m, Psi_dag, Phi_d}` for every dual `Phi_d` of `Phi`.
//!
//! The "for every dual" statements are discharged exactly: the residual is
//! affine in the dual-family perturbation `H`, so checking `H = 0` and the
//! `N * d` unit perturbations covers all duals.

use rand::Rng;

use crate::error::{Error, Result};
use crate::frames::{
    canonical_dual, dual_family, is_a_pseudo_dual, is_s_pseudo_dual, DualFamilyParam, FiniteFrame,
};
use crate::numerics::{numerical_rank, ComplexMatrix, ToleranceConfig, C64, ONE, ZERO};
use crate::sampling;

use super::{inverse_residual, invert, Multiplier, Symbol};

#[derive(Debug, Clone)]
pub struct InducedDuals {
    pub inverse: ComplexMatrix,
    pub psi_dagger: FiniteFrame,
    pub phi_dagger: FiniteFrame,
}

pub fn induced_duals(m: &Multiplier, tol: &ToleranceConfig) -> Result<InducedDuals> {
    if let Some(index) = m.symbol().first_zero() {
        return Err(Error::ZeroSymbolEntry { index });
    }
    let inverse = invert(m, tol)?;
    let weighted_phi = m.phi().synthesis_matrix().scale_columns(m.symbol().values());
    let psi_dagger = FiniteFrame::from_synthesis(&inverse * &weighted_phi)?;
    let weighted_psi = m
        .psi()
        .synthesis_matrix()
        .scale_columns(m.symbol().conj().values());
    let phi_dagger = FiniteFrame::from_synthesis(&inverse.adjoint() * &weighted_psi)?;
    Ok(InducedDuals {
        inverse,
        psi_dagger,
        phi_dagger,
    })
}

/// Relative residual of `M^{-1} = M_{1/m, Psi_d, Phi_dag}`.
///
/// `psi_d` must reconstruct through `Psi` on the synthesis side, which in
/// finite dimension is the same as being a dual of `Psi`.
pub fn verify_identity_minv1(
    m: &Multiplier,
    psi_d: &FiniteFrame,
    tol: &ToleranceConfig,
) -> Result<f64> {
    if !is_s_pseudo_dual(psi_d, m.psi(), tol)? {
        return Err(Error::NotADual);
    }
    let duals = induced_duals(m, tol)?;
    inverse_residual(&duals.inverse, &m.symbol().reciprocal()?, psi_d, &duals.phi_dagger)
}

/// Relative residual of `M^{-1} = M_{1/m, Psi_dag, Phi_d}`.
pub fn verify_identity_minv2(
    m: &Multiplier,
    phi_d: &FiniteFrame,
    tol: &ToleranceConfig,
) -> Result<f64> {
    if !is_a_pseudo_dual(phi_d, m.phi(), tol)? {
        return Err(Error::NotADual);
    }
    let duals = induced_duals(m, tol)?;
    inverse_residual(&duals.inverse, &m.symbol().reciprocal()?, &duals.psi_dagger, phi_d)
}

/// Residuals of both inversion identities over the whole dual family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCertification {
    /// `M_{1/m, Psi~, Phi_dag}` against `M^{-1}`.
    pub minv1_base: f64,
    /// Worst residual over the unit perturbations of `Psi`'s dual family.
    pub minv1_directions: f64,
    pub minv2_base: f64,
    pub minv2_directions: f64,
    /// Number of unit perturbations checked per identity (`N * d`).
    pub directions: usize,
}

impl DualCertification {
    pub fn max_residual(&self) -> f64 {
        self.minv1_base
            .max(self.minv1_directions)
            .max(self.minv2_base)
            .max(self.minv2_directions)
    }
}

/// The duals `canonical + E_{kn} (I - Syn^* Syn_canon)` for every unit matrix `E_{kn}`.
fn unit_perturbation_duals(frame: &FiniteFrame, tol: &ToleranceConfig) -> Result<Vec<FiniteFrame>> {
    let (d, n) = (frame.dim(), frame.len());
    let mut out = Vec::with_capacity(d * n);
    for col in 0..n {
        for row in 0..d {
            let mut h = vec![vec![ZERO; d]; n];
            h[col][row] = ONE;
            out.push(dual_family(&DualFamilyParam::new(frame.clone(), h)?, tol)?);
        }
    }
    Ok(out)
}

/// Certifies both identities for all duals at once.
pub fn certify_all_duals(m: &Multiplier, tol: &ToleranceConfig) -> Result<DualCertification> {
    let duals = induced_duals(m, tol)?;
    let recip = m.symbol().reciprocal()?;
    let psi_canon = canonical_dual(m.psi(), tol)?;
    let phi_canon = canonical_dual(m.phi(), tol)?;

    let minv1_base = inverse_residual(&duals.inverse, &recip, &psi_canon, &duals.phi_dagger)?;
    let minv2_base = inverse_residual(&duals.inverse, &recip, &duals.psi_dagger, &phi_canon)?;

    let mut minv1_directions: f64 = 0.0;
    for psi_d in unit_perturbation_duals(m.psi(), tol)? {
        let r = inverse_residual(&duals.inverse, &recip, &psi_d, &duals.phi_dagger)?;
        minv1_directions = minv1_directions.max(r);
    }
    let mut minv2_directions: f64 = 0.0;
    for phi_d in unit_perturbation_duals(m.phi(), tol)? {
        let r = inverse_residual(&duals.inverse, &recip, &duals.psi_dagger, &phi_d)?;
        minv2_directions = minv2_directions.max(r);
    }
    Ok(DualCertification {
        minv1_base,
        minv1_directions,
        minv2_base,
        minv2_directions,
        directions: m.dim() * m.len(),
    })
}

/// Where the unknown sequence sits in a multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequencePosition {
    /// `M_{m, G, Phi_d}`: the unknown supplies the output vectors.
    Synthesis,
    /// `M_{m, Phi_d, G}`: the unknown supplies the analysis vectors.
    Analysis,
}

/// Dimension of the space of sequences `G` (in `C^d`, `N` terms) for which
/// the multiplier with the given duals vanishes for every listed dual.
///
/// Zero means `G` must be the null sequence.
pub fn null_multiplier_kernel(
    symbol: &Symbol,
    duals: &[FiniteFrame],
    position: SequencePosition,
    tol: &ToleranceConfig,
) -> Result<usize> {
    let first = duals
        .first()
        .ok_or_else(|| Error::PreconditionFailed("at least one dual is required".into()))?;
    let (d, n) = (first.dim(), first.len());
    if symbol.len() != n || duals.iter().any(|f| f.dim() != d || f.len() != n) {
        return Err(Error::DimensionMismatch(
            "duals and symbol must share dimension and length".into(),
        ));
    }
    let stacked = match position {
        // G diag(m) Syn_d^* = 0 for all d  <=>  X [diag(m) Syn_d^*]_d = 0
        SequencePosition::Synthesis => {
            let blocks: Vec<ComplexMatrix> = duals
                .iter()
                .map(|f| f.synthesis_matrix().scale_columns(&conj_all(symbol)).adjoint())
                .collect();
            ComplexMatrix::hstack(&blocks)?
        }
        // Syn_d diag(m) Syn_G^* = 0 for all d  <=>  [Syn_d diag(m)]_d Y = 0
        SequencePosition::Analysis => {
            let blocks: Vec<ComplexMatrix> = duals
                .iter()
                .map(|f| f.synthesis_matrix().scale_columns(symbol.values()))
                .collect();
            ComplexMatrix::vstack(&blocks)?
        }
    };
    Ok(d * (n - numerical_rank(&stacked, tol)))
}

fn conj_all(symbol: &Symbol) -> Vec<C64> {
    symbol.values().iter().map(|z| z.conj()).collect()
}

/// Kernel dimensions of the uniqueness systems for both induced duals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniquenessKernel {
    /// Sequences `F` with `M^{-1} = M_{1/m, Psi_d, F}` for all sampled `Psi_d`,
    /// counted as the kernel of the homogeneous part.
    pub phi_dagger_side: usize,
    /// Sequences `G` with `M^{-1} = M_{1/m, G, Phi_d}` for all sampled `Phi_d`.
    pub psi_dagger_side: usize,
    /// Worst residual of the particular solutions `Phi_dag`, `Psi_dag` on the samples.
    pub particular_residual: f64,
}

impl UniquenessKernel {
    pub fn total(&self) -> usize {
        self.phi_dagger_side + self.psi_dagger_side
    }
}

/// Uniqueness system built from explicit duals of `Psi` and of `Phi`.
pub fn uniqueness_kernel_with(
    m: &Multiplier,
    psi_duals: &[FiniteFrame],
    phi_duals: &[FiniteFrame],
    tol: &ToleranceConfig,
) -> Result<UniquenessKernel> {
    let duals = induced_duals(m, tol)?;
    let recip = m.symbol().reciprocal()?;
    let phi_dagger_side = null_multiplier_kernel(&recip, psi_duals, SequencePosition::Analysis, tol)?;
    let psi_dagger_side = null_multiplier_kernel(&recip, phi_duals, SequencePosition::Synthesis, tol)?;
    let mut particular_residual: f64 = 0.0;
    for psi_d in psi_duals {
        let r = inverse_residual(&duals.inverse, &recip, psi_d, &duals.phi_dagger)?;
        particular_residual = particular_residual.max(r);
    }
    for phi_d in phi_duals {
        let r = inverse_residual(&duals.inverse, &recip, &duals.psi_dagger, phi_d)?;
        particular_residual = particular_residual.max(r);
    }
    Ok(UniquenessKernel {
        phi_dagger_side,
        psi_dagger_side,
        particular_residual,
    })
}

fn sampled_duals<R: Rng + ?Sized>(
    rng: &mut R,
    frame: &FiniteFrame,
    count: usize,
    tol: &ToleranceConfig,
) -> Result<Vec<FiniteFrame>> {
    let mut out = vec![canonical_dual(frame, tol)?];
    for _ in 1..count {
        out.push(sampling::random_dual(rng, frame, tol)?);
    }
    Ok(out)
}

/// Uniqueness system over the canonical dual plus `dual_samples - 1` random
/// duals per frame, drawn from a generator seeded with `seed`.
pub fn uniqueness_kernel(
    m: &Multiplier,
    dual_samples: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<UniquenessKernel> {
    if dual_samples == 0 {
        return Err(Error::PreconditionFailed("dual_samples must be >= 1".into()));
    }
    invert(m, tol)?;
    let mut rng = sampling::seeded(seed);
    let psi_duals = sampled_duals(&mut rng, m.psi(), dual_samples, tol)?;
    let phi_duals = sampled_duals(&mut rng, m.phi(), dual_samples, tol)?;
    uniqueness_kernel_with(m, &psi_duals, &phi_duals, tol)
}

/// Uniqueness system over the canonical dual and all unit-perturbation duals;
/// their span is the span of the full dual family.
pub fn uniqueness_kernel_exact(m: &Multiplier, tol: &ToleranceConfig) -> Result<UniquenessKernel> {
    invert(m, tol)?;
    let mut psi_duals = vec![canonical_dual(m.psi(), tol)?];
    psi_duals.extend(unit_perturbation_duals(m.psi(), tol)?);
    let mut phi_duals = vec![canonical_dual(m.phi(), tol)?];
    phi_duals.extend(unit_perturbation_duals(m.phi(), tol)?);
    uniqueness_kernel_with(m, &psi_duals, &phi_duals, tol)
}

fn hypothesis(residual: f64, tol: &ToleranceConfig) -> Result<()> {
    if residual > tol.rel_eps {
        return Err(Error::IdentityDoesNotHold {
            residual,
            tolerance: tol.rel_eps,
        });
    }
    Ok(())
}

/// If `M^{-1} = M_{1/m, F, Phi_dag}`, reports whether `F` is a synthesis
/// pseudo-dual of `Psi` (it must be).
pub fn recover_pseudo_dual_f(m: &Multiplier, f: &FiniteFrame, tol: &ToleranceConfig) -> Result<bool> {
    let duals = induced_duals(m, tol)?;
    let recip = m.symbol().reciprocal()?;
    hypothesis(inverse_residual(&duals.inverse, &recip, f, &duals.phi_dagger)?, tol)?;
    is_s_pseudo_dual(f, m.psi(), tol)
}

/// If `M^{-1} = M_{1/m, Psi_dag, G}`, reports whether `G` is an analysis
/// pseudo-dual of `Phi` (it must be).
pub fn recover_pseudo_dual_g(m: &Multiplier, g: &FiniteFrame, tol: &ToleranceConfig) -> Result<bool> {
    let duals = induced_duals(m, tol)?;
    let recip = m.symbol().reciprocal()?;
    hypothesis(inverse_residual(&duals.inverse, &recip, &duals.psi_dagger, g)?, tol)?;
    is_a_pseudo_dual(g, m.phi(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{frames_equal, is_dual};
    use crate::multipliers::build;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn counterexample() -> Multiplier {
        let r5 = 5f64.sqrt();
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]]).unwrap();
        let psi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]]).unwrap();
        let m = Symbol::from_real(&[(5.0 + 2.0 * r5) / 5.0, (5.0 - 2.0 * r5) / 5.0, 1.0]).unwrap();
        build(m, phi, psi).unwrap()
    }

    fn diagonal_riesz() -> Multiplier {
        let onb = FiniteFrame::orthonormal_basis(2);
        build(Symbol::from_real(&[2.0, 3.0]).unwrap(), onb.clone(), onb).unwrap()
    }

    #[test]
    fn induced_dual_of_counterexample_is_weighted_phi() {
        let m = counterexample();
        let duals = induced_duals(&m, &tol()).unwrap();
        assert!(frames_equal(&duals.psi_dagger, &m.weighted_phi(), &tol()));
        let sum: C64 = (0..3).map(|n| duals.psi_dagger.vector(n)[0]).sum();
        assert!((sum - ONE).norm() < 1e-14);
        assert!(is_dual(&duals.psi_dagger, m.psi(), &tol()).unwrap());
        assert!(is_dual(&duals.phi_dagger, m.phi(), &tol()).unwrap());
    }

    #[test]
    fn induced_duals_in_riesz_case_are_the_basis() {
        let m = diagonal_riesz();
        let duals = induced_duals(&m, &tol()).unwrap();
        let onb = FiniteFrame::orthonormal_basis(2);
        assert!(frames_equal(&duals.psi_dagger, &onb, &tol()));
        assert!(frames_equal(&duals.phi_dagger, &onb, &tol()));
    }

    #[test]
    fn frame_operator_case_gives_canonical_dual() {
        let frame = FiniteFrame::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        let m = build(Symbol::ones(3), frame.clone(), frame.clone()).unwrap();
        let duals = induced_duals(&m, &tol()).unwrap();
        let canon = canonical_dual(&frame, &tol()).unwrap();
        assert!(frames_equal(&duals.psi_dagger, &canon, &tol()));
        assert!(frames_equal(&duals.phi_dagger, &canon, &tol()));
    }

    #[test]
    fn induced_duals_errors() {
        let onb = FiniteFrame::orthonormal_basis(2);
        let zero = build(Symbol::from_real(&[1.0, 0.0]).unwrap(), onb.clone(), onb.clone()).unwrap();
        assert!(matches!(
            induced_duals(&zero, &tol()),
            Err(Error::ZeroSymbolEntry { index: 1 })
        ));
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0]]).unwrap();
        let singular = build(Symbol::from_real(&[1.0, -1.0]).unwrap(), phi.clone(), phi).unwrap();
        assert!(matches!(
            induced_duals(&singular, &tol()),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn identities_with_canonical_and_sampled_duals() {
        let m = counterexample();
        let t = tol();
        let psi_canon = canonical_dual(m.psi(), &t).unwrap();
        let phi_canon = canonical_dual(m.phi(), &t).unwrap();
        assert!(verify_identity_minv1(&m, &psi_canon, &t).unwrap() < 1e-12);
        assert!(verify_identity_minv2(&m, &phi_canon, &t).unwrap() < 1e-12);
        // canonical duals on both sides also invert this particular multiplier
        let inv = invert(&m, &t).unwrap();
        let r = inverse_residual(&inv, &m.symbol().reciprocal().unwrap(), &psi_canon, &phi_canon).unwrap();
        assert!(r < 1e-12);

        let mut rng = sampling::seeded(99);
        for _ in 0..100 {
            let psi_d = sampling::random_dual(&mut rng, m.psi(), &t).unwrap();
            let phi_d = sampling::random_dual(&mut rng, m.phi(), &t).unwrap();
            assert!(verify_identity_minv1(&m, &psi_d, &t).unwrap() < 1e-12);
            assert!(verify_identity_minv2(&m, &phi_d, &t).unwrap() < 1e-12);
        }
    }

    #[test]
    fn identity_rejects_non_duals() {
        let m = counterexample();
        let not_dual = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]]).unwrap();
        assert_eq!(verify_identity_minv1(&m, &not_dual, &tol()), Err(Error::NotADual));
        // (1, 1, 1) happens to reconstruct with Phi = (1, 1, -1)
        let not_phi_dual = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[0.0]]).unwrap();
        assert_eq!(verify_identity_minv2(&m, &not_phi_dual, &tol()), Err(Error::NotADual));
    }

    #[test]
    fn corrupted_induced_dual_is_detected() {
        let m = counterexample();
        let t = tol();
        let duals = induced_duals(&m, &t).unwrap();
        let mut vs = duals.psi_dagger.vectors();
        vs[0][0] += C64::new(1e-6, 0.0);
        let corrupt = FiniteFrame::from_vectors(1, vs).unwrap();
        let phi_canon = canonical_dual(m.phi(), &t).unwrap();
        let r = inverse_residual(&duals.inverse, &m.symbol().reciprocal().unwrap(), &corrupt, &phi_canon)
            .unwrap();
        assert!(r > 10.0 * t.rel_eps);
    }

    #[test]
    fn certification_over_all_duals() {
        let t = tol();
        for m in [counterexample(), diagonal_riesz()] {
            let cert = certify_all_duals(&m, &t).unwrap();
            assert!(cert.max_residual() < 1e-12, "{cert:?}");
            assert_eq!(cert.directions, m.dim() * m.len());
        }
    }

    #[test]
    fn uniqueness_examples() {
        let t = tol();
        let k = uniqueness_kernel(&diagonal_riesz(), 3, 1, &t).unwrap();
        assert_eq!(k.total(), 0);

        let m = counterexample();
        let k = uniqueness_kernel(&m, 6, 5, &t).unwrap();
        assert_eq!(k.total(), 0);
        assert!(k.particular_residual < 1e-12);

        let only_canonical = uniqueness_kernel(&m, 1, 5, &t).unwrap();
        assert_eq!(only_canonical.phi_dagger_side, 2);
        assert_eq!(only_canonical.psi_dagger_side, 2);

        assert_eq!(uniqueness_kernel_exact(&m, &t).unwrap().total(), 0);
        assert!(matches!(
            uniqueness_kernel(&m, 0, 1, &t),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn null_kernel_on_riesz_basis_is_trivial() {
        let onb = FiniteFrame::orthonormal_basis(3);
        let s = Symbol::from_real(&[1.0, 2.0, 3.0]).unwrap();
        for pos in [SequencePosition::Synthesis, SequencePosition::Analysis] {
            assert_eq!(null_multiplier_kernel(&s, std::slice::from_ref(&onb), pos, &tol()).unwrap(), 0);
        }
        assert!(null_multiplier_kernel(&s, &[], SequencePosition::Synthesis, &tol()).is_err());
    }

    #[test]
    fn recover_pseudo_duals() {
        let m = counterexample();
        let t = tol();
        let duals = induced_duals(&m, &t).unwrap();
        assert!(recover_pseudo_dual_f(&m, &duals.psi_dagger, &t).unwrap());
        assert!(recover_pseudo_dual_f(&m, &canonical_dual(m.psi(), &t).unwrap(), &t).unwrap());
        assert!(recover_pseudo_dual_g(&m, &duals.phi_dagger, &t).unwrap());
        assert!(recover_pseudo_dual_g(&m, &canonical_dual(m.phi(), &t).unwrap(), &t).unwrap());

        let perturbed = FiniteFrame::from_real(1, &[&[0.5], &[0.5], &[0.5]]).unwrap();
        assert!(matches!(
            recover_pseudo_dual_f(&m, &perturbed, &t),
            Err(Error::IdentityDoesNotHold { .. })
        ));
        assert!(matches!(
            recover_pseudo_dual_g(&m, &perturbed, &t),
            Err(Error::IdentityDoesNotHold { .. })
        ));
    }
}

//! Seeded random instances: frames, symbols and dual frames.
//!
//! Every sampler takes an explicit RNG; use [`seeded`] for reproducible runs.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::frames::{canonical_dual, dual_family, frame_operator, DualFamilyParam, FiniteFrame};
use crate::multipliers::Symbol;
use crate::numerics::{condition_number, ComplexMatrix, ToleranceConfig, C64};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts are independent `N(0, 1/2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<C64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Gaussian frame of `len >= dim` vectors whose frame operator has condition number at most `max_cond`.
pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, dim: usize, len: usize, max_cond: f64) -> FiniteFrame {
    assert!(len >= dim && dim >= 1, "a frame needs at least dim vectors");
    loop {
        let frame = FiniteFrame::from_synthesis(gaussian_matrix(rng, dim, len))
            .expect("non-empty gaussian matrix");
        if condition_number(&frame_operator(&frame)) <= max_cond {
            return frame;
        }
    }
}

pub fn random_riesz_basis<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_cond: f64) -> FiniteFrame {
    random_frame(rng, dim, dim, max_cond)
}

/// Moduli uniform in `[lo, hi]`, phases uniform on the circle.
pub fn random_symbol<R: Rng + ?Sized>(rng: &mut R, len: usize, lo: f64, hi: f64) -> Symbol {
    let values = (0..len)
        .map(|_| {
            let r = rng.random_range(lo..=hi);
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            C64::from_polar(r, theta)
        })
        .collect();
    Symbol::new(values).expect("finite symbol")
}

/// Constant modulus `c`, uniform phases.
pub fn random_phase_symbol<R: Rng + ?Sized>(rng: &mut R, len: usize, c: f64) -> Symbol {
    random_symbol(rng, len, c, c)
}

/// A dual frame drawn from the dual-family parametrization.
///
/// The perturbation `H` has standard complex Gaussian entries and is rescaled
/// so that `||H|| <= ||canonical dual||` (Frobenius).
pub fn random_dual<R: Rng + ?Sized>(
    rng: &mut R,
    frame: &FiniteFrame,
    tol: &ToleranceConfig,
) -> Result<FiniteFrame> {
    let canon = canonical_dual(frame, tol)?;
    let limit = canon.synthesis_matrix().norm();
    let mut h: Vec<Vec<C64>> = (0..frame.len())
        .map(|_| gaussian_vector(rng, frame.dim()))
        .collect();
    let norm = h.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > limit && norm > 0.0 {
        let s = limit / norm;
        h.iter_mut().flatten().for_each(|z| *z *= s);
    }
    dual_family(&DualFamilyParam::new(frame.clone(), h)?, tol)
}

//! Finite frames in `C^d`.
//!
//! A frame of `N` vectors is stored through its `d x N` synthesis matrix,
//! whose n-th column is the n-th frame vector. Indices are 0-based.
//!
//! Inner products are linear in the first argument and conjugate-linear in
//! the second, so the analysis map is `f -> (<f, phi_n>)_n = Syn^* f`.
//!
//! On a finite index set every sequence is Bessel, and the two one-sided
//! pseudo-dual identities are adjoints of each other. Both predicates are
//! still exposed separately.

use serde::{Deserialize, Serialize};

use crate::error::{EquivalenceFailure, Error, Result};
use crate::numerics::{
    pseudoinverse, spectrum_hermitian, try_invert, vector_norm, ComplexMatrix, ToleranceConfig,
    C64, ONE, ZERO,
};

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFrame {
    synthesis: ComplexMatrix,
}

/// JSON representation: `{"dim": d, "vectors": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameFile {
    pub dim: usize,
    pub vectors: Vec<Vec<C64>>,
}

impl FiniteFrame {
    pub fn from_vectors(dim: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("frame dimension must be >= 1".into()));
        }
        if vectors.is_empty() {
            return Err(Error::DimensionMismatch("a frame needs at least one vector".into()));
        }
        Self::from_synthesis(ComplexMatrix::from_columns(dim, &vectors)?)
    }

    /// Frame of real vectors, convenient for tests and worked examples.
    pub fn from_real(dim: usize, vectors: &[&[f64]]) -> Result<Self> {
        Self::from_vectors(
            dim,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_synthesis(synthesis: ComplexMatrix) -> Result<Self> {
        if synthesis.rows() == 0 || synthesis.cols() == 0 {
            return Err(Error::DimensionMismatch(
                "a frame needs dimension >= 1 and at least one vector".into(),
            ));
        }
        Ok(FiniteFrame { synthesis })
    }

    /// The standard basis `(e_1, ..., e_d)`.
    pub fn orthonormal_basis(dim: usize) -> Self {
        FiniteFrame {
            synthesis: ComplexMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.synthesis.rows()
    }

    pub fn len(&self) -> usize {
        self.synthesis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vector(&self, n: usize) -> Vec<C64> {
        self.synthesis.column(n)
    }

    pub fn vectors(&self) -> Vec<Vec<C64>> {
        self.synthesis.columns()
    }

    pub fn synthesis_matrix(&self) -> &ComplexMatrix {
        &self.synthesis
    }

    pub fn analysis_matrix(&self) -> ComplexMatrix {
        self.synthesis.adjoint()
    }

    /// The sequence `(w_n phi_n)`.
    pub fn weighted(&self, weights: &[C64]) -> Result<Self> {
        if weights.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for a frame of {} vectors",
                weights.len(),
                self.len()
            )));
        }
        Ok(FiniteFrame {
            synthesis: self.synthesis.scale_columns(weights),
        })
    }

    pub fn scaled(&self, s: C64) -> Self {
        FiniteFrame {
            synthesis: self.synthesis.scale(s),
        }
    }

    pub fn to_file(&self) -> FrameFile {
        FrameFile {
            dim: self.dim(),
            vectors: self.vectors(),
        }
    }

    pub fn from_file(file: FrameFile) -> Result<Self> {
        if let Some((n, v)) = file.vectors.iter().enumerate().find(|(_, v)| v.len() != file.dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector {n} has length {} but dim is {}",
                v.len(),
                file.dim
            )));
        }
        Self::from_vectors(file.dim, file.vectors)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("frame serialization is infallible")
    }
}

fn same_shape(a: &FiniteFrame, b: &FiniteFrame) -> Result<()> {
    if a.dim() != b.dim() || a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "sequences of shape {}x{} and {}x{}",
            a.dim(),
            a.len(),
            b.dim(),
            b.len()
        )));
    }
    Ok(())
}

/// Coefficients `c_n = <f, phi_n>`.
pub fn analysis(frame: &FiniteFrame, f: &[C64]) -> Result<Vec<C64>> {
    if f.len() != frame.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a frame in dimension {}",
            f.len(),
            frame.dim()
        )));
    }
    Ok(frame.analysis_matrix().apply(f))
}

/// `sum_n c_n phi_n`.
pub fn synthesis(frame: &FiniteFrame, c: &[C64]) -> Result<Vec<C64>> {
    if c.len() != frame.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for a frame of {} vectors",
            c.len(),
            frame.len()
        )));
    }
    Ok(frame.synthesis.apply(c))
}

/// `S = Syn Syn^*`.
pub fn frame_operator(frame: &FiniteFrame) -> ComplexMatrix {
    &frame.synthesis * &frame.synthesis.adjoint()
}

/// Optimal frame bounds `(lambda_min(S), lambda_max(S))`.
pub fn frame_bounds(frame: &FiniteFrame, tol: &ToleranceConfig) -> Result<(f64, f64)> {
    let spectrum = spectrum_hermitian(&frame_operator(frame), tol)?;
    let lower = spectrum[0].max(0.0);
    let upper = spectrum[spectrum.len() - 1];
    if lower <= tol.rel_eps * upper {
        return Err(Error::NotAFrame { lower, upper });
    }
    Ok((lower, upper))
}

pub fn is_frame(frame: &FiniteFrame, tol: &ToleranceConfig) -> bool {
    frame_bounds(frame, tol).is_ok()
}

/// `(S^{-1} phi_n)`.
pub fn canonical_dual(frame: &FiniteFrame, tol: &ToleranceConfig) -> Result<FiniteFrame> {
    frame_bounds(frame, tol)?;
    let s_inv = try_invert(&frame_operator(frame), tol)?;
    FiniteFrame::from_synthesis(&s_inv * &frame.synthesis)
}

/// Whether `Syn_a Syn_b^*` is the identity, relative to the operand norms.
fn reconstructs(a: &FiniteFrame, b: &FiniteFrame, tol: &ToleranceConfig) -> bool {
    let product = &a.synthesis * &b.synthesis.adjoint();
    let id = ComplexMatrix::identity(a.dim());
    let scale = 1f64.max(a.synthesis.norm() * b.synthesis.norm());
    (&product - &id).norm() <= tol.rel_eps * scale
}

/// Synthesis-side pseudo-dual: `f = sum <f, phi_n> f_n` for all `f`.
pub fn is_s_pseudo_dual(f: &FiniteFrame, frame: &FiniteFrame, tol: &ToleranceConfig) -> Result<bool> {
    same_shape(f, frame)?;
    Ok(reconstructs(f, frame, tol))
}

/// Analysis-side pseudo-dual: `f = sum <f, f_n> phi_n` for all `f`.
pub fn is_a_pseudo_dual(f: &FiniteFrame, frame: &FiniteFrame, tol: &ToleranceConfig) -> Result<bool> {
    same_shape(f, frame)?;
    Ok(reconstructs(frame, f, tol))
}

/// Both reconstruction formulas hold.
pub fn is_dual(f: &FiniteFrame, frame: &FiniteFrame, tol: &ToleranceConfig) -> Result<bool> {
    Ok(is_s_pseudo_dual(f, frame, tol)? && is_a_pseudo_dual(f, frame, tol)?)
}

/// Ordered, entrywise equality: `||a_n - b_n|| <= rel_eps (1 + ||b_n||)` for every n.
pub fn frames_equal(a: &FiniteFrame, b: &FiniteFrame, tol: &ToleranceConfig) -> bool {
    if a.dim() != b.dim() || a.len() != b.len() {
        return false;
    }
    (0..a.len()).all(|n| {
        let (u, v) = (a.vector(n), b.vector(n));
        let diff: Vec<C64> = u.iter().zip(&v).map(|(x, y)| x - y).collect();
        vector_norm(&diff) <= tol.rel_eps * (1.0 + vector_norm(&v))
    })
}

/// A frame together with a perturbation sequence `(h_n)` parametrizing one of its duals.
#[derive(Debug, Clone)]
pub struct DualFamilyParam {
    pub base: FiniteFrame,
    pub perturbation: Vec<Vec<C64>>,
}

impl DualFamilyParam {
    pub fn new(base: FiniteFrame, perturbation: Vec<Vec<C64>>) -> Result<Self> {
        if perturbation.len() != base.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} perturbation vectors for a frame of {} vectors",
                perturbation.len(),
                base.len()
            )));
        }
        if let Some((n, h)) = perturbation.iter().enumerate().find(|(_, h)| h.len() != base.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "perturbation {n} has length {} in dimension {}",
                h.len(),
                base.dim()
            )));
        }
        Ok(DualFamilyParam { base, perturbation })
    }

    pub fn zero(base: FiniteFrame) -> Self {
        let perturbation = vec![vec![ZERO; base.dim()]; base.len()];
        DualFamilyParam { base, perturbation }
    }
}

/// The dual `(phi~_n + h_n - sum_j <phi~_n, phi_j> h_j)`.
///
/// With `Syn` matrices this reads `Syn_dual = Syn_canon + Syn_H (I - Syn_phi^* Syn_canon)`.
/// Every dual of the frame arises this way for some `H`.
pub fn dual_family(p: &DualFamilyParam, tol: &ToleranceConfig) -> Result<FiniteFrame> {
    let canon = canonical_dual(&p.base, tol)?;
    let h = ComplexMatrix::from_columns(p.base.dim(), &p.perturbation)?;
    let n = p.base.len();
    let gram = &p.base.synthesis.adjoint() * &canon.synthesis;
    let projector = &ComplexMatrix::identity(n) - &gram;
    let correction = &h * &projector;
    FiniteFrame::from_synthesis(&canon.synthesis + &correction)
}

/// The invertible `L` with `L phi_n = psi_n` for all n, if it exists.
///
/// For a frame `phi` the only possible candidate is `Syn_psi pinv(Syn_phi)`;
/// it is accepted when it reproduces `Syn_psi` and passes [`try_invert`].
pub fn equivalence_operator(
    phi: &FiniteFrame,
    psi: &FiniteFrame,
    tol: &ToleranceConfig,
) -> Result<ComplexMatrix> {
    same_shape(phi, psi)?;
    frame_bounds(phi, tol)?;
    frame_bounds(psi, tol)?;
    let candidate = &psi.synthesis * &pseudoinverse(&phi.synthesis, tol);
    let residual = (&(&candidate * &phi.synthesis) - &psi.synthesis).norm();
    let scale = psi.synthesis.norm();
    if residual > tol.rel_eps * scale {
        return Err(Error::NotEquivalent(EquivalenceFailure::NoLinearMap {
            residual: residual / scale,
        }));
    }
    match try_invert(&candidate, tol) {
        Ok(_) => Ok(candidate),
        Err(Error::NotInvertible { ratio }) => {
            Err(Error::NotEquivalent(EquivalenceFailure::NotInvertible { ratio }))
        }
        Err(e) => Err(e),
    }
}

pub fn are_equivalent(phi: &FiniteFrame, psi: &FiniteFrame, tol: &ToleranceConfig) -> Result<bool> {
    match equivalence_operator(phi, psi, tol) {
        Ok(_) => Ok(true),
        Err(Error::NotEquivalent(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// A frame with exactly `d` vectors.
pub fn is_riesz_basis(frame: &FiniteFrame, tol: &ToleranceConfig) -> bool {
    frame.len() == frame.dim() && is_frame(frame, tol)
}

/// Real-valued helper for doc examples: `[a, b] -> a + 0i, b + 0i`.
pub fn real_vector(values: &[f64]) -> Vec<C64> {
    values.iter().map(|&x| C64::new(x, 0.0)).collect()
}

/// The n-th standard basis vector of `C^d`.
pub fn basis_vector(dim: usize, n: usize) -> Vec<C64> {
    (0..dim).map(|k| if k == n { ONE } else { ZERO }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn three_in_c2() -> FiniteFrame {
        FiniteFrame::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap()
    }

    fn close(a: &[C64], b: &[C64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= eps)
    }

    #[test]
    fn analysis_examples() {
        let onb = FiniteFrame::orthonormal_basis(2);
        let f = vec![C64::new(3.0, 0.0), C64::new(0.0, 4.0)];
        assert!(close(&analysis(&onb, &f).unwrap(), &f, 0.0));

        let c = analysis(&three_in_c2(), &real_vector(&[1.0, 2.0])).unwrap();
        assert!(close(&c, &real_vector(&[1.0, 2.0, 3.0]), 0.0));

        let c = analysis(&three_in_c2(), &[ZERO, ZERO]).unwrap();
        assert!(c.iter().all(|z| *z == ZERO));
    }

    #[test]
    fn analysis_is_conjugate_linear_in_frame() {
        let frame = FiniteFrame::from_vectors(1, vec![vec![C64::new(0.0, 1.0)]]).unwrap();
        let c = analysis(&frame, &[ONE]).unwrap();
        assert_eq!(c[0], C64::new(0.0, -1.0));
    }

    #[test]
    fn synthesis_examples() {
        let onb = FiniteFrame::orthonormal_basis(2);
        assert!(close(&synthesis(&onb, &[ONE, ONE]).unwrap(), &[ONE, ONE], 0.0));
        let v = synthesis(&three_in_c2(), &[ONE, ONE, ONE]).unwrap();
        assert!(close(&v, &real_vector(&[2.0, 2.0]), 0.0));
        let v = synthesis(&three_in_c2(), &[ONE, ZERO, ZERO]).unwrap();
        assert!(close(&v, &three_in_c2().vector(0), 0.0));
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            analysis(&three_in_c2(), &[ONE]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            synthesis(&three_in_c2(), &[ONE]),
            Err(Error::DimensionMismatch(_))
        ));
        let onb = FiniteFrame::orthonormal_basis(2);
        assert!(matches!(
            is_dual(&onb, &three_in_c2(), &tol()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn frame_operator_examples() {
        let s = frame_operator(&three_in_c2());
        assert_eq!(s, ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]));
        assert_eq!(
            frame_operator(&FiniteFrame::orthonormal_basis(3)),
            ComplexMatrix::identity(3)
        );
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]]).unwrap();
        assert_eq!(frame_operator(&phi), ComplexMatrix::from_real(1, 1, &[3.0]));
    }

    #[test]
    fn frame_bounds_examples() {
        let (a, b) = frame_bounds(&three_in_c2(), &tol()).unwrap();
        assert!((a - 1.0).abs() < 1e-14 && (b - 3.0).abs() < 1e-14);
        let (a, b) = frame_bounds(&FiniteFrame::orthonormal_basis(4), &tol()).unwrap();
        assert!((a - 1.0).abs() < 1e-15 && (b - 1.0).abs() < 1e-15);
        let degenerate = FiniteFrame::from_real(2, &[&[1.0, 0.0], &[2.0, 0.0]]).unwrap();
        assert!(matches!(
            frame_bounds(&degenerate, &tol()),
            Err(Error::NotAFrame { .. })
        ));
    }

    #[test]
    fn canonical_dual_examples() {
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]]).unwrap();
        let expected = FiniteFrame::from_real(1, &[&[1.0 / 3.0], &[1.0 / 3.0], &[-1.0 / 3.0]]).unwrap();
        assert!(frames_equal(&canonical_dual(&phi, &tol()).unwrap(), &expected, &tol()));

        let psi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]]).unwrap();
        assert!(frames_equal(
            &canonical_dual(&psi, &tol()).unwrap(),
            &psi.scaled(C64::new(1.0 / 3.0, 0.0)),
            &tol()
        ));

        let onb = FiniteFrame::orthonormal_basis(3);
        assert!(frames_equal(&canonical_dual(&onb, &tol()).unwrap(), &onb, &tol()));
    }

    #[test]
    fn is_dual_examples() {
        let frame = three_in_c2();
        let canon = canonical_dual(&frame, &tol()).unwrap();
        assert!(is_dual(&canon, &frame, &tol()).unwrap());
        let onb = FiniteFrame::orthonormal_basis(2);
        assert!(is_dual(&onb, &onb, &tol()).unwrap());

        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]]).unwrap();
        let third = FiniteFrame::from_real(1, &[&[1.0 / 3.0], &[1.0 / 3.0], &[1.0 / 3.0]]).unwrap();
        assert!(!is_dual(&third, &phi, &tol()).unwrap());
    }

    #[test]
    fn pseudo_dual_examples() {
        let frame = three_in_c2();
        let canon = canonical_dual(&frame, &tol()).unwrap();
        assert!(is_a_pseudo_dual(&canon, &frame, &tol()).unwrap());
        assert!(is_s_pseudo_dual(&canon, &frame, &tol()).unwrap());

        let riesz = FiniteFrame::from_real(2, &[&[1.0, 1.0], &[1.0, -1.0]]).unwrap();
        let rcanon = canonical_dual(&riesz, &tol()).unwrap();
        let mut vs = rcanon.vectors();
        vs[1] = vec![ZERO, ZERO];
        let broken = FiniteFrame::from_vectors(2, vs).unwrap();
        assert!(!is_a_pseudo_dual(&broken, &riesz, &tol()).unwrap());
        assert!(!is_s_pseudo_dual(&broken, &riesz, &tol()).unwrap());

        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0]]).unwrap();
        let f = FiniteFrame::from_real(1, &[&[1.0], &[0.0]]).unwrap();
        assert!(is_s_pseudo_dual(&f, &phi, &tol()).unwrap());
    }

    #[test]
    fn dual_family_examples() {
        let frame = three_in_c2();
        let zero = DualFamilyParam::zero(frame.clone());
        assert!(frames_equal(
            &dual_family(&zero, &tol()).unwrap(),
            &canonical_dual(&frame, &tol()).unwrap(),
            &tol()
        ));

        let onb = FiniteFrame::orthonormal_basis(2);
        let h = vec![
            vec![C64::new(0.3, -1.0), C64::new(2.0, 0.5)],
            vec![C64::new(-4.0, 0.0), C64::new(0.0, 1.0)],
        ];
        let p = DualFamilyParam::new(onb.clone(), h).unwrap();
        assert!(frames_equal(&dual_family(&p, &tol()).unwrap(), &onb, &tol()));

        let h = vec![
            real_vector(&[1.0, -2.0]),
            real_vector(&[0.5, 0.25]),
            vec![C64::new(0.0, 3.0), C64::new(1.0, 1.0)],
        ];
        let p = DualFamilyParam::new(frame.clone(), h).unwrap();
        let dual = dual_family(&p, &tol()).unwrap();
        assert!(is_dual(&dual, &frame, &tol()).unwrap());
        assert!(!frames_equal(&dual, &canonical_dual(&frame, &tol()).unwrap(), &tol()));
    }

    #[test]
    fn dual_family_rejects_bad_perturbation() {
        let frame = three_in_c2();
        assert!(DualFamilyParam::new(frame.clone(), vec![vec![ZERO; 2]; 2]).is_err());
        assert!(DualFamilyParam::new(frame, vec![vec![ZERO; 3]; 3]).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let frame = three_in_c2();
        let l = equivalence_operator(&frame, &frame, &tol()).unwrap();
        assert!(l.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);

        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0]]).unwrap();
        let psi = FiniteFrame::from_real(1, &[&[1.0], &[-1.0]]).unwrap();
        assert!(matches!(
            equivalence_operator(&phi, &psi, &tol()),
            Err(Error::NotEquivalent(EquivalenceFailure::NoLinearMap { .. }))
        ));

        let r5 = 5f64.sqrt();
        let psi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]]).unwrap();
        let m_phi = FiniteFrame::from_real(
            1,
            &[&[(5.0 + 2.0 * r5) / 5.0], &[(5.0 - 2.0 * r5) / 5.0], &[-1.0]],
        )
        .unwrap();
        assert!(!are_equivalent(&m_phi, &psi, &tol()).unwrap());
    }

    #[test]
    fn riesz_examples() {
        assert!(is_riesz_basis(&FiniteFrame::orthonormal_basis(3), &tol()));
        assert!(!is_riesz_basis(&three_in_c2(), &tol()));
        let riesz = FiniteFrame::from_real(2, &[&[1.0, 1.0], &[1.0, -1.0]]).unwrap();
        assert!(is_riesz_basis(&riesz, &tol()));
        let degenerate = FiniteFrame::from_real(2, &[&[1.0, 1.0], &[2.0, 2.0]]).unwrap();
        assert!(!is_riesz_basis(&degenerate, &tol()));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let frame = FiniteFrame::from_vectors(
            2,
            vec![vec![C64::new(1.0, -0.5), ZERO], vec![ZERO, C64::new(0.0, 2.0)]],
        )
        .unwrap();
        let text = frame.to_json();
        assert!(text.contains("\"dim\":2"));
        assert_eq!(FiniteFrame::from_json(&text).unwrap(), frame);
        assert!(matches!(FiniteFrame::from_json("{\"dim\":"), Err(Error::Parse(_))));
        assert!(matches!(
            FiniteFrame::from_json(r#"{"dim": 2, "vectors": [[[1,0]]]}"#),
            Err(Error::DimensionMismatch(_))
        ));
    }
}

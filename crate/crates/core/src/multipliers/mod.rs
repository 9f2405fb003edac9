//! Frame multipliers `M_{m,Phi,Psi} f = sum_n m_n <f, psi_n> phi_n`.
//!
//! The realized matrix is `Syn_Phi diag(m) Syn_Psi^*`. Multipliers accept
//! zero symbol entries; operations that need the reciprocal symbol reject
//! them with [`Error::ZeroSymbolEntry`].

mod criteria;
mod induced;

pub use criteria::{
    check_constant_modulus, check_prop_q, check_weighted_canonical, check_weighted_inversion,
    verify_canonical_inversion, ConstantModulusReport, PropQReport, WeightedInversionReport,
};
pub use induced::{
    certify_all_duals, induced_duals, null_multiplier_kernel, recover_pseudo_dual_f,
    recover_pseudo_dual_g, uniqueness_kernel, uniqueness_kernel_exact, uniqueness_kernel_with,
    verify_identity_minv1, verify_identity_minv2, DualCertification, InducedDuals,
    SequencePosition, UniquenessKernel,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FiniteFrame;
use crate::numerics::{relative_residual, try_invert, ComplexMatrix, ToleranceConfig, C64, ONE};

/// A finite weight sequence `m = (m_n)` with its modulus profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    values: Vec<C64>,
    all_nonzero: bool,
    sup_modulus: f64,
    inf_modulus: f64,
}

/// JSON representation: `{"values": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolFile {
    pub values: Vec<C64>,
}

impl Symbol {
    pub fn new(values: Vec<C64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch("symbol must have at least one entry".into()));
        }
        if let Some(n) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { row: n, col: 0 });
        }
        let moduli = values.iter().map(|z| z.norm());
        let sup_modulus = moduli.clone().fold(0.0, f64::max);
        let inf_modulus = moduli.fold(f64::INFINITY, f64::min);
        let all_nonzero = values.iter().all(|z| *z != C64::new(0.0, 0.0));
        Ok(Symbol {
            values,
            all_nonzero,
            sup_modulus,
            inf_modulus,
        })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn constant(c: C64, len: usize) -> Result<Self> {
        Self::new(vec![c; len])
    }

    pub fn ones(len: usize) -> Self {
        Self::new(vec![ONE; len.max(1)]).expect("ones symbol is valid")
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn all_nonzero(&self) -> bool {
        self.all_nonzero
    }

    pub fn sup_modulus(&self) -> f64 {
        self.sup_modulus
    }

    pub fn inf_modulus(&self) -> f64 {
        self.inf_modulus
    }

    /// `0 < inf |m_n|`; a finite sequence is always bounded.
    pub fn is_semi_normalized(&self) -> bool {
        self.inf_modulus > 0.0
    }

    pub fn first_zero(&self) -> Option<usize> {
        self.values.iter().position(|z| *z == C64::new(0.0, 0.0))
    }

    /// `1/m`, refused if any entry is zero.
    pub fn reciprocal(&self) -> Result<Symbol> {
        if let Some(index) = self.first_zero() {
            return Err(Error::ZeroSymbolEntry { index });
        }
        Symbol::new(self.values.iter().map(|z| z.inv()).collect())
    }

    /// `conj(m)`.
    pub fn conj(&self) -> Symbol {
        Symbol::new(self.values.iter().map(|z| z.conj()).collect()).expect("conjugate is finite")
    }

    /// All entries equal within `rel_eps * sup |m_n|`.
    pub fn is_constant(&self, tol: &ToleranceConfig) -> bool {
        let first = self.values[0];
        self.values
            .iter()
            .all(|z| (z - first).norm() <= tol.rel_eps * self.sup_modulus.max(f64::MIN_POSITIVE))
    }

    /// All moduli equal within `rel_eps * sup |m_n|`.
    pub fn has_constant_modulus(&self, tol: &ToleranceConfig) -> bool {
        self.sup_modulus - self.inf_modulus <= tol.rel_eps * self.sup_modulus
    }

    pub fn to_file(&self) -> SymbolFile {
        SymbolFile {
            values: self.values.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SymbolFile = serde_json::from_str(text)?;
        Self::new(file.values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("symbol serialization is infallible")
    }
}

/// A multiplier together with its realized `d x d` matrix.
#[derive(Debug, Clone)]
pub struct Multiplier {
    symbol: Symbol,
    phi: FiniteFrame,
    psi: FiniteFrame,
    matrix: ComplexMatrix,
}

/// `Syn_synth diag(m) Syn_anal^*` for sequences that need not be frames.
pub fn multiplier_matrix(
    symbol: &Symbol,
    synth: &FiniteFrame,
    anal: &FiniteFrame,
) -> Result<ComplexMatrix> {
    if synth.len() != symbol.len() || anal.len() != symbol.len() {
        return Err(Error::DimensionMismatch(format!(
            "symbol of length {} with sequences of {} and {} vectors",
            symbol.len(),
            synth.len(),
            anal.len()
        )));
    }
    if synth.dim() != anal.dim() {
        return Err(Error::DimensionMismatch(format!(
            "sequences live in dimensions {} and {}",
            synth.dim(),
            anal.dim()
        )));
    }
    let weighted = synth.synthesis_matrix().scale_columns(symbol.values());
    Ok(&weighted * &anal.analysis_matrix())
}

impl Multiplier {
    pub fn build(symbol: Symbol, phi: FiniteFrame, psi: FiniteFrame) -> Result<Self> {
        let matrix = multiplier_matrix(&symbol, &phi, &psi)?;
        Ok(Multiplier {
            symbol,
            phi,
            psi,
            matrix,
        })
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    /// Output-side frame.
    pub fn phi(&self) -> &FiniteFrame {
        &self.phi
    }

    /// Input-side frame.
    pub fn psi(&self) -> &FiniteFrame {
        &self.psi
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    pub fn len(&self) -> usize {
        self.symbol.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbol.is_empty()
    }

    pub fn apply(&self, f: &[C64]) -> Vec<C64> {
        self.matrix.apply(f)
    }

    /// `m Phi`.
    pub fn weighted_phi(&self) -> FiniteFrame {
        self.phi.weighted(self.symbol.values()).expect("lengths checked at build")
    }

    /// `conj(m) Psi`.
    pub fn conj_weighted_psi(&self) -> FiniteFrame {
        self.psi
            .weighted(self.symbol.conj().values())
            .expect("lengths checked at build")
    }

    pub fn invert(&self, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
        invert(self, tol)
    }
}

pub fn build(symbol: Symbol, phi: FiniteFrame, psi: FiniteFrame) -> Result<Multiplier> {
    Multiplier::build(symbol, phi, psi)
}

pub fn invert(m: &Multiplier, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    try_invert(&m.matrix, tol)
}

/// `||M^{-1} - M_{1/m, synth, anal}|| / ||M^{-1}||`.
pub fn inverse_residual(
    inverse: &ComplexMatrix,
    reciprocal: &Symbol,
    synth: &FiniteFrame,
    anal: &FiniteFrame,
) -> Result<f64> {
    let candidate = multiplier_matrix(reciprocal, synth, anal)?;
    Ok(relative_residual(&candidate, inverse))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{frame_operator, real_vector};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn golden() -> (f64, f64) {
        let r5 = 5f64.sqrt();
        ((5.0 + 2.0 * r5) / 5.0, (5.0 - 2.0 * r5) / 5.0)
    }

    #[test]
    fn identity_multiplier_on_onb() {
        let onb = FiniteFrame::orthonormal_basis(3);
        let m = build(Symbol::ones(3), onb.clone(), onb).unwrap();
        assert_eq!(m.matrix(), &ComplexMatrix::identity(3));
    }

    #[test]
    fn counterexample_block_is_identity() {
        let (a, b) = golden();
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]]).unwrap();
        let psi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]]).unwrap();
        let m = build(Symbol::from_real(&[a, b, 1.0]).unwrap(), phi, psi).unwrap();
        assert!((m.matrix().get(0, 0) - ONE).norm() < 1e-15);
    }

    #[test]
    fn harmonic_block_is_identity() {
        for k in 1..=20 {
            let kinv = 1.0 / k as f64;
            let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]]).unwrap();
            let psi = FiniteFrame::from_real(1, &[&[1.0], &[kinv], &[kinv]]).unwrap();
            let m = build(Symbol::from_real(&[1.0, kinv, kinv]).unwrap(), phi, psi).unwrap();
            assert!((m.matrix().get(0, 0) - ONE).norm() < 1e-15);
        }
    }

    #[test]
    fn all_ones_symbol_gives_frame_operator() {
        let frame = FiniteFrame::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        let m = build(Symbol::ones(3), frame.clone(), frame.clone()).unwrap();
        assert_eq!(m.matrix(), &frame_operator(&frame));
    }

    #[test]
    fn build_rejects_mismatched_lengths() {
        let onb = FiniteFrame::orthonormal_basis(2);
        assert!(matches!(
            build(Symbol::ones(3), onb.clone(), onb.clone()),
            Err(Error::DimensionMismatch(_))
        ));
        let other = FiniteFrame::orthonormal_basis(3);
        let wide = FiniteFrame::from_real(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]).unwrap();
        assert!(build(Symbol::ones(2), onb, wide).is_err());
        assert!(build(Symbol::ones(2), other.clone(), other).is_err());
    }

    #[test]
    fn invert_examples() {
        let onb = FiniteFrame::orthonormal_basis(2);
        let m = build(Symbol::ones(2), onb.clone(), onb.clone()).unwrap();
        assert!(invert(&m, &tol()).unwrap().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);

        let m = build(Symbol::from_real(&[2.0, 3.0]).unwrap(), onb.clone(), onb.clone()).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[0.5, 0.0, 0.0, 1.0 / 3.0]);
        assert!(invert(&m, &tol()).unwrap().max_abs_diff(&expected) < 1e-15);

        let m = build(Symbol::from_real(&[1.0, 0.0]).unwrap(), onb.clone(), onb).unwrap();
        assert!(matches!(invert(&m, &tol()), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn symbol_profile_and_reciprocal() {
        let s = Symbol::from_real(&[2.0, -0.5, 1.0]).unwrap();
        assert!(s.all_nonzero() && s.is_semi_normalized());
        assert_eq!(s.sup_modulus(), 2.0);
        assert_eq!(s.inf_modulus(), 0.5);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.values(), real_vector(&[0.5, -2.0, 1.0]).as_slice());

        let z = Symbol::from_real(&[1.0, 0.0, 3.0]).unwrap();
        assert!(!z.all_nonzero() && !z.is_semi_normalized());
        assert_eq!(z.reciprocal(), Err(Error::ZeroSymbolEntry { index: 1 }));
    }

    #[test]
    fn symbol_constant_and_modulus_predicates() {
        let t = tol();
        assert!(Symbol::constant(C64::new(0.0, 2.0), 4).unwrap().is_constant(&t));
        let phase = Symbol::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0)]).unwrap();
        assert!(!phase.is_constant(&t));
        assert!(phase.has_constant_modulus(&t));
        assert!(!Symbol::from_real(&[1.0, 2.0]).unwrap().has_constant_modulus(&t));
    }

    #[test]
    fn symbol_json() {
        let s = Symbol::from_json(r#"{"values": [[1.0, 0.0], [0.0, -2.5]]}"#).unwrap();
        assert_eq!(s.values()[1], C64::new(0.0, -2.5));
        assert_eq!(Symbol::from_json(&s.to_json()).unwrap(), s);
        assert!(matches!(Symbol::from_json(r#"{"values": [[1.0]]}"#), Err(Error::Parse(_))));
        assert!(Symbol::from_json(r#"{"values": []}"#).is_err());
    }
}

//! When does the Riesz-basis inversion formula `M^{-1} = M_{1/m, Psi~, Phi~}`
//! (canonical duals on both sides) survive for redundant frames?
//!
//! Each check evaluates every leg of the relevant equivalence or implication
//! chain independently and returns [`Error::ImplicationViolated`] if the legs
//! disagree. Such an error points at a numerical or implementation defect.

use crate::error::{Error, Result};
use crate::frames::{are_equivalent, canonical_dual, frame_bounds, frames_equal, FiniteFrame};
use crate::numerics::ToleranceConfig;

use super::{induced_duals, inverse_residual, invert, InducedDuals, Multiplier, Symbol};

/// Relative residual of `M^{-1}` against `M_{1/m, Psi~, Phi~}`.
pub fn verify_canonical_inversion(m: &Multiplier, tol: &ToleranceConfig) -> Result<f64> {
    let recip = m.symbol().reciprocal()?;
    let inverse = invert(m, tol)?;
    let psi_canon = canonical_dual(m.psi(), tol)?;
    let phi_canon = canonical_dual(m.phi(), tol)?;
    inverse_residual(&inverse, &recip, &psi_canon, &phi_canon)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropQReport {
    pub eq1_residual: f64,
    pub eq1_holds: bool,
    pub psi_equiv_mphi: bool,
    pub phi_equiv_mbar_psi: bool,
    pub psi_dagger_is_canonical: bool,
    pub phi_dagger_is_canonical: bool,
    pub constant_symbol: bool,
}

fn violated(msg: impl Into<String>) -> Error {
    Error::ImplicationViolated(msg.into())
}

/// Sufficient conditions for the canonical-dual inversion formula:
///
/// * `Psi ~ m Phi` implies the formula, and holds iff `Psi_dag = Psi~`;
/// * `Phi ~ conj(m) Psi` implies the formula, and holds iff `Phi_dag = Phi~`;
/// * for a constant symbol all five statements are equivalent.
pub fn check_prop_q(m: &Multiplier, tol: &ToleranceConfig) -> Result<PropQReport> {
    let duals = induced_duals(m, tol)?;
    let recip = m.symbol().reciprocal()?;
    let psi_canon = canonical_dual(m.psi(), tol)?;
    let phi_canon = canonical_dual(m.phi(), tol)?;

    let eq1_residual = inverse_residual(&duals.inverse, &recip, &psi_canon, &phi_canon)?;
    let report = PropQReport {
        eq1_residual,
        eq1_holds: eq1_residual <= tol.rel_eps,
        psi_equiv_mphi: are_equivalent(&m.weighted_phi(), m.psi(), tol)?,
        phi_equiv_mbar_psi: are_equivalent(&m.conj_weighted_psi(), m.phi(), tol)?,
        psi_dagger_is_canonical: frames_equal(&duals.psi_dagger, &psi_canon, tol),
        phi_dagger_is_canonical: frames_equal(&duals.phi_dagger, &phi_canon, tol),
        constant_symbol: m.symbol().is_constant(tol),
    };

    if report.psi_equiv_mphi && !report.eq1_holds {
        return Err(violated("Psi ~ m Phi but the canonical-dual formula fails"));
    }
    if report.psi_equiv_mphi != report.psi_dagger_is_canonical {
        return Err(violated(format!(
            "Psi ~ m Phi is {} but Psi_dag == Psi~ is {}",
            report.psi_equiv_mphi, report.psi_dagger_is_canonical
        )));
    }
    if report.phi_equiv_mbar_psi && !report.eq1_holds {
        return Err(violated("Phi ~ conj(m) Psi but the canonical-dual formula fails"));
    }
    if report.phi_equiv_mbar_psi != report.phi_dagger_is_canonical {
        return Err(violated(format!(
            "Phi ~ conj(m) Psi is {} but Phi_dag == Phi~ is {}",
            report.phi_equiv_mbar_psi, report.phi_dagger_is_canonical
        )));
    }
    if report.constant_symbol {
        let legs = [
            report.eq1_holds,
            report.psi_equiv_mphi,
            report.phi_equiv_mbar_psi,
            report.psi_dagger_is_canonical,
            report.phi_dagger_is_canonical,
        ];
        if legs.iter().any(|&b| b != legs[0]) {
            return Err(violated(format!("constant symbol but legs disagree: {legs:?}")));
        }
    }
    Ok(report)
}

/// Whether the canonical dual of `m Phi` is `(1/conj(m_n)) S_Phi^{-1} phi_n`.
pub fn check_weighted_canonical(
    phi: &FiniteFrame,
    m: &Symbol,
    tol: &ToleranceConfig,
) -> Result<bool> {
    let recip_conj = m.reciprocal()?.conj();
    let weighted = phi.weighted(m.values())?;
    let weighted_canon = canonical_dual(&weighted, tol)?;
    let expected = canonical_dual(phi, tol)?.weighted(recip_conj.values())?;
    Ok(frames_equal(&weighted_canon, &expected, tol))
}

/// The three legs of one weighted-canonical equivalence chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSide {
    pub invertible_and_eq1: bool,
    pub equivalent: bool,
    pub invertible_and_dagger_canonical: bool,
}

impl WeightedSide {
    fn agree(&self) -> bool {
        self.invertible_and_eq1 == self.equivalent
            && self.equivalent == self.invertible_and_dagger_canonical
    }
}

/// Weighted-canonical criteria, evaluated only where their hypothesis holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedInversionReport {
    pub invertible: bool,
    pub eq1_holds: bool,
    /// Present when `m Phi` is a frame whose canonical dual is `(1/conj(m)) Phi~`;
    /// `equivalent` is then `Psi ~ m Phi`.
    pub phi_side: Option<WeightedSide>,
    /// Present when `conj(m) Psi` is a frame whose canonical dual is `(1/m) Psi~`;
    /// `equivalent` is then `Phi ~ conj(m) Psi`.
    pub psi_side: Option<WeightedSide>,
}

fn require_frame(frame: &FiniteFrame, name: &str, tol: &ToleranceConfig) -> Result<()> {
    frame_bounds(frame, tol)
        .map(|_| ())
        .map_err(|_| Error::PreconditionFailed(format!("{name} is not a frame")))
}

struct InversionState {
    duals: Option<InducedDuals>,
    eq1_holds: bool,
}

fn inversion_state(m: &Multiplier, tol: &ToleranceConfig) -> Result<InversionState> {
    match induced_duals(m, tol) {
        Ok(duals) => {
            let residual = inverse_residual(
                &duals.inverse,
                &m.symbol().reciprocal()?,
                &canonical_dual(m.psi(), tol)?,
                &canonical_dual(m.phi(), tol)?,
            )?;
            Ok(InversionState {
                duals: Some(duals),
                eq1_holds: residual <= tol.rel_eps,
            })
        }
        Err(Error::NotInvertible { .. }) => Ok(InversionState {
            duals: None,
            eq1_holds: false,
        }),
        Err(e) => Err(e),
    }
}

/// For any frames with a nonzero symbol: if `m Phi` has the weighted-canonical
/// property then "M invertible and the formula holds", "Psi ~ m Phi" and
/// "M invertible and Psi_dag = Psi~" coincide; symmetrically for `conj(m) Psi`.
pub fn check_weighted_inversion(
    m: &Multiplier,
    tol: &ToleranceConfig,
) -> Result<WeightedInversionReport> {
    if let Some(index) = m.symbol().first_zero() {
        return Err(Error::ZeroSymbolEntry { index });
    }
    require_frame(m.phi(), "Phi", tol)?;
    require_frame(m.psi(), "Psi", tol)?;
    let state = inversion_state(m, tol)?;
    let invertible = state.duals.is_some();

    let phi_side = if weighted_property(m.phi(), m.symbol(), tol)? {
        let psi_canon = canonical_dual(m.psi(), tol)?;
        Some(WeightedSide {
            invertible_and_eq1: state.eq1_holds,
            equivalent: are_equivalent(&m.weighted_phi(), m.psi(), tol)?,
            invertible_and_dagger_canonical: state
                .duals
                .as_ref()
                .is_some_and(|d| frames_equal(&d.psi_dagger, &psi_canon, tol)),
        })
    } else {
        None
    };
    let conj = m.symbol().conj();
    let psi_side = if weighted_property(m.psi(), &conj, tol)? {
        let phi_canon = canonical_dual(m.phi(), tol)?;
        Some(WeightedSide {
            invertible_and_eq1: state.eq1_holds,
            equivalent: are_equivalent(&m.conj_weighted_psi(), m.phi(), tol)?,
            invertible_and_dagger_canonical: state
                .duals
                .as_ref()
                .is_some_and(|d| frames_equal(&d.phi_dagger, &phi_canon, tol)),
        })
    } else {
        None
    };

    for (name, side) in [("m Phi", phi_side), ("conj(m) Psi", psi_side)] {
        if let Some(side) = side {
            if !side.agree() {
                return Err(violated(format!("weighted-canonical chain for {name}: {side:?}")));
            }
        }
    }
    Ok(WeightedInversionReport {
        invertible,
        eq1_holds: state.eq1_holds,
        phi_side,
        psi_side,
    })
}

/// Weighted-canonical property, `false` when the weighted sequence is not a frame.
fn weighted_property(frame: &FiniteFrame, m: &Symbol, tol: &ToleranceConfig) -> Result<bool> {
    match check_weighted_canonical(frame, m, tol) {
        Ok(b) => Ok(b),
        Err(Error::NotAFrame { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantModulusReport {
    pub modulus: f64,
    pub invertible_and_eq1: bool,
    pub psi_equiv_mphi: bool,
    pub phi_equiv_mbar_psi: bool,
}

impl ConstantModulusReport {
    pub fn all_true(&self) -> bool {
        self.invertible_and_eq1 && self.psi_equiv_mphi && self.phi_equiv_mbar_psi
    }
}

/// Symbols with `|m_n| = c != 0`: invertibility together with the formula,
/// `Psi ~ m Phi`, and `Phi ~ conj(m) Psi` are all equivalent.
pub fn check_constant_modulus(
    m: &Multiplier,
    tol: &ToleranceConfig,
) -> Result<ConstantModulusReport> {
    let symbol = m.symbol();
    if !symbol.all_nonzero() || !symbol.has_constant_modulus(tol) {
        return Err(Error::PreconditionFailed(format!(
            "symbol modulus is not a nonzero constant (inf {}, sup {})",
            symbol.inf_modulus(),
            symbol.sup_modulus()
        )));
    }
    require_frame(m.phi(), "Phi", tol)?;
    require_frame(m.psi(), "Psi", tol)?;
    let state = inversion_state(m, tol)?;
    let report = ConstantModulusReport {
        modulus: symbol.sup_modulus(),
        invertible_and_eq1: state.eq1_holds,
        psi_equiv_mphi: are_equivalent(&m.weighted_phi(), m.psi(), tol)?,
        phi_equiv_mbar_psi: are_equivalent(&m.conj_weighted_psi(), m.phi(), tol)?,
    };
    if report.invertible_and_eq1 != report.psi_equiv_mphi
        || report.psi_equiv_mphi != report.phi_equiv_mbar_psi
    {
        return Err(violated(format!("constant-modulus chain disagrees: {report:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipliers::build;
    use crate::numerics::C64;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn golden() -> (f64, f64) {
        let r5 = 5f64.sqrt();
        ((5.0 + 2.0 * r5) / 5.0, (5.0 - 2.0 * r5) / 5.0)
    }

    fn counterexample() -> Multiplier {
        let (a, b) = golden();
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]]).unwrap();
        let psi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]]).unwrap();
        build(Symbol::from_real(&[a, b, 1.0]).unwrap(), phi, psi).unwrap()
    }

    fn sign_pair() -> Multiplier {
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0]]).unwrap();
        let psi = FiniteFrame::from_real(1, &[&[1.0], &[-1.0]]).unwrap();
        build(Symbol::from_real(&[1.0, -1.0]).unwrap(), phi, psi).unwrap()
    }

    #[test]
    fn canonical_inversion_examples() {
        let t = tol();
        let onb = FiniteFrame::orthonormal_basis(2);
        let riesz = FiniteFrame::from_real(2, &[&[1.0, 1.0], &[1.0, -1.0]]).unwrap();
        let m = build(
            Symbol::new(vec![C64::new(2.0, 1.0), C64::new(0.0, -0.5)]).unwrap(),
            riesz,
            onb,
        )
        .unwrap();
        assert!(verify_canonical_inversion(&m, &t).unwrap() < 1e-13);

        assert!(verify_canonical_inversion(&counterexample(), &t).unwrap() < 1e-13);

        // M = 3 but M_{1/m, Psi~, Phi~} = 3/8, so the relative residual is 1/8
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0]]).unwrap();
        let m = build(Symbol::from_real(&[1.0, 2.0]).unwrap(), phi.clone(), phi).unwrap();
        let r = verify_canonical_inversion(&m, &t).unwrap();
        assert!((r - 0.125).abs() < 1e-14, "{r}");
    }

    #[test]
    fn prop_q_constant_symbol() {
        let frame = FiniteFrame::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        let m = build(
            Symbol::constant(C64::new(0.0, 2.0), 3).unwrap(),
            frame.clone(),
            frame,
        )
        .unwrap();
        let r = check_prop_q(&m, &tol()).unwrap();
        assert!(r.constant_symbol);
        assert!(r.eq1_holds && r.psi_equiv_mphi && r.phi_equiv_mbar_psi);
        assert!(r.psi_dagger_is_canonical && r.phi_dagger_is_canonical);
    }

    #[test]
    fn prop_q_counterexample_has_formula_without_equivalence() {
        let r = check_prop_q(&counterexample(), &tol()).unwrap();
        assert!(r.eq1_holds);
        assert!(!r.psi_equiv_mphi && !r.phi_equiv_mbar_psi);
        assert!(!r.psi_dagger_is_canonical && !r.phi_dagger_is_canonical);
    }

    #[test]
    fn prop_q_sign_pair() {
        let r = check_prop_q(&sign_pair(), &tol()).unwrap();
        assert!(r.psi_equiv_mphi && r.eq1_holds);
    }

    #[test]
    fn weighted_canonical_examples() {
        let t = tol();
        let frame = FiniteFrame::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        let phases = Symbol::new(vec![
            C64::from_polar(1.5, 0.3),
            C64::from_polar(1.5, -2.0),
            C64::from_polar(1.5, 1.0),
        ])
        .unwrap();
        assert!(check_weighted_canonical(&frame, &phases, &t).unwrap());
        assert!(check_weighted_canonical(&frame, &Symbol::ones(3), &t).unwrap());

        let (a, b) = golden();
        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]]).unwrap();
        let m = Symbol::from_real(&[a, b, 1.0]).unwrap();
        assert!(!check_weighted_canonical(&phi, &m, &t).unwrap());
        let s: f64 = phi.weighted(m.values()).unwrap().vectors().iter().map(|v| v[0].norm_sqr()).sum();
        assert!((s - 23.0 / 5.0).abs() < 1e-14);
    }

    #[test]
    fn weighted_canonical_errors() {
        let t = tol();
        let frame = FiniteFrame::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        let zero = Symbol::from_real(&[1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            check_weighted_canonical(&frame, &zero, &t),
            Err(Error::ZeroSymbolEntry { index: 1 })
        ));
    }

    #[test]
    fn constant_modulus_examples() {
        let t = tol();
        let r = check_constant_modulus(&sign_pair(), &t).unwrap();
        assert!(r.all_true());

        let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0]]).unwrap();
        let m = build(Symbol::from_real(&[1.0, -1.0]).unwrap(), phi.clone(), phi).unwrap();
        let r = check_constant_modulus(&m, &t).unwrap();
        assert!(!r.invertible_and_eq1 && !r.psi_equiv_mphi && !r.phi_equiv_mbar_psi);

        let onb = FiniteFrame::orthonormal_basis(3);
        let m = build(Symbol::constant(C64::new(-0.7, 0.7), 3).unwrap(), onb.clone(), onb).unwrap();
        assert!(check_constant_modulus(&m, &t).unwrap().all_true());

        assert!(matches!(
            check_constant_modulus(&counterexample(), &t),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn weighted_inversion_on_examples() {
        let t = tol();
        let r = check_weighted_inversion(&sign_pair(), &t).unwrap();
        assert!(r.phi_side.is_some() && r.psi_side.is_some());
        assert!(r.phi_side.unwrap().equivalent);

        let r = check_weighted_inversion(&counterexample(), &t).unwrap();
        assert!(r.invertible && r.eq1_holds);
        assert!(r.phi_side.is_none() && r.psi_side.is_none());
    }
}

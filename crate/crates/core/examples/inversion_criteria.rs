// When does `M^{-1} = M_{1/m, Psi~, Phi~}` hold for redundant frames?
// Three small cases: the formula without equivalence, a constant-modulus
// symbol where everything holds, and a redundant pair where it fails.

use std::error::Error;

use framemult::frames::FiniteFrame;
use framemult::multipliers::{
    build, check_constant_modulus, check_prop_q, check_weighted_canonical, verify_canonical_inversion,
};
use framemult::{Symbol, ToleranceConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = ToleranceConfig::default();
    let r5 = 5f64.sqrt();
    let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]])?;
    let psi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]])?;
    let symbol = Symbol::from_real(&[(5.0 + 2.0 * r5) / 5.0, (5.0 - 2.0 * r5) / 5.0, 1.0])?;
    let golden = build(symbol.clone(), phi.clone(), psi)?;
    let q = check_prop_q(&golden, &tol)?;
    println!(
        "golden triple: formula {} (residual {:.1e}), Psi ~ m Phi {}, Phi ~ conj(m) Psi {}",
        q.eq1_holds, q.eq1_residual, q.psi_equiv_mphi, q.phi_equiv_mbar_psi
    );
    println!(
        "canonical dual of m Phi is (1/conj m) Phi~: {}",
        check_weighted_canonical(&phi, &symbol, &tol)?
    );

    let pair = FiniteFrame::from_real(1, &[&[1.0], &[1.0]])?;
    let signs = build(
        Symbol::from_real(&[1.0, -1.0])?,
        pair.clone(),
        FiniteFrame::from_real(1, &[&[1.0], &[-1.0]])?,
    )?;
    let c = check_constant_modulus(&signs, &tol)?;
    println!("constant modulus: all equivalent = {}", c.all_true());

    let redundant = build(Symbol::from_real(&[1.0, 2.0])?, pair.clone(), pair)?;
    println!(
        "m = (1, 2) on (1, 1): formula residual {:.4}",
        verify_canonical_inversion(&redundant, &tol)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("inversion_criteria failed");
}

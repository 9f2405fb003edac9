// Builds a multiplier, applies it term by term and by matrix, and inverts
// it. For a Riesz basis pair the inverse is the reciprocal-symbol multiplier
// of the canonical duals.

use std::error::Error;

use framemult::frames::{analysis, canonical_dual, FiniteFrame};
use framemult::multipliers::{build, inverse_residual, Multiplier};
use framemult::numerics::C64;
use framemult::{Symbol, ToleranceConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = ToleranceConfig::default();
    let phi = FiniteFrame::from_real(2, &[&[1.0, 1.0], &[1.0, -1.0]])?;
    let psi = FiniteFrame::from_real(2, &[&[2.0, 0.0], &[1.0, 1.0]])?;
    let symbol = Symbol::new(vec![C64::new(2.0, 1.0), C64::new(0.0, -0.5)])?;
    let m: Multiplier = build(symbol, phi, psi)?;

    let f = vec![C64::new(1.0, 0.0), C64::new(0.0, 2.0)];
    let coeffs = analysis(m.psi(), &f)?;
    let mut direct = vec![C64::new(0.0, 0.0); 2];
    for (n, c) in coeffs.iter().enumerate() {
        for (i, x) in m.phi().vector(n).iter().enumerate() {
            direct[i] += m.symbol().values()[n] * c * x;
        }
    }
    println!("M f (matrix)    = {:?}", m.apply(&f));
    println!("M f (term-wise) = {direct:?}");

    let inverse = m.invert(&tol)?;
    let residual = inverse_residual(
        &inverse,
        &m.symbol().reciprocal()?,
        &canonical_dual(m.psi(), &tol)?,
        &canonical_dual(m.phi(), &tol)?,
    )?;
    println!("||M^-1 - M_(1/m, Psi~, Phi~)|| / ||M^-1|| = {residual:.2e}");
    assert!(residual < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("multiplier_inverse failed");
}

// The induced duals are the only sequences satisfying the inversion
// identities for all duals at once; one dual alone does not pin them down.

use std::error::Error;

use framemult::frames::{canonical_dual, FiniteFrame};
use framemult::multipliers::{build, uniqueness_kernel, uniqueness_kernel_exact, uniqueness_kernel_with};
use framemult::{Symbol, ToleranceConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = ToleranceConfig::default();
    let r5 = 5f64.sqrt();
    let phi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]])?;
    let psi = FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]])?;
    let m = build(Symbol::from_real(&[(5.0 + 2.0 * r5) / 5.0, (5.0 - 2.0 * r5) / 5.0, 1.0])?, phi, psi)?;

    let exact = uniqueness_kernel_exact(&m, &tol)?;
    println!("kernel over the whole dual family: {exact:?}");
    assert_eq!(exact.total(), 0);

    let sampled = uniqueness_kernel(&m, 4, 7, &tol)?;
    println!("kernel over canonical + 3 sampled duals: {sampled:?}");

    let one = uniqueness_kernel_with(
        &m,
        &[canonical_dual(m.psi(), &tol)?],
        &[canonical_dual(m.phi(), &tol)?],
        &tol,
    )?;
    println!("kernel with the canonical duals only: {one:?}");
    assert!(one.total() > 0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("uniqueness failed");
}

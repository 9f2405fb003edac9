// Dual frames induced by an invertible multiplier of redundant frames, and
// the exact certificate that both inversion identities hold for every dual.

use std::error::Error;

use framemult::frames::is_dual;
use framemult::multipliers::{build, certify_all_duals, induced_duals};
use framemult::numerics::condition_number;
use framemult::sampling::{random_frame, random_symbol, seeded};
use framemult::ToleranceConfig;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = ToleranceConfig::default();
    let mut rng = seeded(2024);
    let phi = random_frame(&mut rng, 3, 6, 1e3);
    let psi = random_frame(&mut rng, 3, 6, 1e3);
    let m = build(random_symbol(&mut rng, 6, 0.5, 2.0), phi, psi)?;

    let duals = induced_duals(&m, &tol)?;
    println!("Psi_dag is a dual of Psi: {}", is_dual(&duals.psi_dagger, m.psi(), &tol)?);
    println!("Phi_dag is a dual of Phi: {}", is_dual(&duals.phi_dagger, m.phi(), &tol)?);

    let cert = certify_all_duals(&m, &tol)?;
    let cond = condition_number(m.matrix());
    println!(
        "worst residual over the whole dual family ({} directions): {:.2e} (cond {cond:.1})",
        cert.directions,
        cert.max_residual()
    );
    assert!(cert.max_residual() <= tol.identity_tolerance(cond));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("induced_duals failed");
}

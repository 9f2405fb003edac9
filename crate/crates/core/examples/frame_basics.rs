// Frame bounds, the canonical dual and a non-canonical dual of a small
// redundant frame in C^2.

use std::error::Error;

use framemult::frames::{
    canonical_dual, dual_family, frame_bounds, is_dual, is_riesz_basis, DualFamilyParam,
    FiniteFrame,
};
use framemult::numerics::C64;
use framemult::ToleranceConfig;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = ToleranceConfig::default();
    let frame = FiniteFrame::from_real(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]])?;

    let (lower, upper) = frame_bounds(&frame, &tol)?;
    println!("bounds = ({lower:.6}, {upper:.6}), riesz = {}", is_riesz_basis(&frame, &tol));
    assert!((lower - 1.0).abs() < 1e-12 && (upper - 3.0).abs() < 1e-12);

    let canon = canonical_dual(&frame, &tol)?;
    for (n, v) in canon.vectors().iter().enumerate() {
        println!("canonical dual {n}: {:?}", v.iter().map(|z| z.re).collect::<Vec<_>>());
    }

    // any H gives another dual
    let h = vec![vec![C64::new(0.5, 0.0), C64::new(0.0, -1.0)]; 3];
    let other = dual_family(&DualFamilyParam::new(frame.clone(), h)?, &tol)?;
    println!("perturbed dual is a dual: {}", is_dual(&other, &frame, &tol)?);
    assert!(is_dual(&other, &frame, &tol)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("frame_basics failed");
}

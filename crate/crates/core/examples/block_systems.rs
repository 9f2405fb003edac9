// Infinite block-diagonal systems: per-block multipliers, symbol profile,
// frame-bound classification, and a custom system read from JSON.

use std::error::Error;

use framemult::blockseq::{block_multiplier, lookup, symbol_profile, system_frame_bounds, Side, System};
use framemult::ToleranceConfig;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = ToleranceConfig::default();
    let example = lookup("ex4_1")?;
    let System::Block(sys) = &example.system else {
        return Err("expected a block system".into());
    };
    for k in [1, 10, 1000] {
        println!("block {k}: M_k = {:?}", block_multiplier(sys, k)?);
    }
    let profile = symbol_profile(&example.system)?;
    println!(
        "symbol: bounded {}, semi-normalized {}",
        profile.is_bounded(),
        profile.is_semi_normalized()
    );
    for side in Side::ALL {
        let r = system_frame_bounds(sys, side, 1000, &tol)?;
        println!("{:10} {:?}", side.name(), r.classification);
    }

    let text = r#"{
        "block_dim": 2,
        "generator": {
            "kind": "constant-template",
            "phi": [[[1, 0], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [1, 0]]],
            "psi": [[[1, 0], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [1, 0]]],
            "symbol": [[1, 0], [1, 0], [1, 0]]
        }
    }"#;
    let System::Block(custom) = System::from_json(text)? else {
        return Err("expected a block system".into());
    };
    println!("custom block: {:?}", block_multiplier(&custom, 1)?);
    println!("{:?}", system_frame_bounds(&custom, Side::Phi, 10, &tol)?.classification);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("block_systems failed");
}

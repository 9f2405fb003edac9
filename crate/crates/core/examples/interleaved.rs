// A system with one recurrent direction: the multiplier is applied to
// finitely supported vectors with a certified bound on the omitted tail.

use std::error::Error;

use framemult::blockseq::{interleaved_apply, lookup, Side, SparseVector, System};
use framemult::numerics::{C64, ONE};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let example = lookup("ex4_2")?;
    let System::Interleaved(sys) = &example.system else {
        return Err("expected an interleaved system".into());
    };
    let f = SparseVector::from([(0, ONE), (3, C64::new(0.0, 1.0))]);
    let out = interleaved_apply(sys, &f, 1e-12)?;
    println!(
        "M f = {:?}\n  after {} recurrent terms, tail bound {:.1e}",
        out.value, out.terms, out.error_bound
    );
    for side in Side::ALL {
        println!("{:10} {:?}", side.name(), sys.frame_class(side));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("interleaved failed");
}

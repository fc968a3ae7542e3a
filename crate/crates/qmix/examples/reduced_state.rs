//! Minimal walkthrough: couple an apparatus qubit to |+⟩ by CNOT, trace
//! the apparatus out, and observe the collapse mixture on the system.

use qmix::channels::{apply_unitary, Gate};
use qmix::states::{PureState, Register};

fn main() -> qmix::Result<()> {
    let system = PureState::plus();
    let joint = apply_unitary(
        &system.tensor(&PureState::ket0()).to_density()?,
        &Gate::cnot(),
    )?;
    let register = Register::of(&[("S", 1), ("A", 1)])?;
    let reduced = joint.reduce(&register, &["S"])?;
    assert!((reduced.purity() - 0.5).abs() < 1e-12);

    println!("joint purity   : {:.12}", joint.purity());
    println!("reduced purity : {:.12}", reduced.purity());
    for row in 0..2 {
        let entries: Vec<String> = (0..2)
            .map(|col| {
                format!(
                    "{:+.3}{:+.3}i",
                    reduced.matrix().get(row, col).re,
                    reduced.matrix().get(row, col).im
                )
            })
            .collect();
        println!("  [{}]", entries.join(", "));
    }
    Ok(())
}

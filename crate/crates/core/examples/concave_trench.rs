//! Concave mode on a non-convex trench: the adhesion front jumps over the
//! gap to the furthest free element that touches the far ridge.

use tapewrap::fixtures;
use tapewrap::planner::{initialize_tape, step_side_concave, StepReport};
use tapewrap::tape::Side;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = fixtures::trench();
    let mut state = initialize_tape(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &s.config)?;
    println!(
        "trench: middle element {} at x = {:.3}",
        state.i_mid, state.elements[state.i_mid].position.x
    );
    let mut rotations = 0;
    loop {
        match step_side_concave(&mut state, &s.mesh, &s.config, Side::End)? {
            StepReport::Rotated { .. } => rotations += 1,
            StepReport::Advanced { from, to } => {
                let p = state.elements[to].position;
                println!(
                    "after {rotations:>3} rotations: front {from} -> {to} (skip {}), lands at x = {:.4}, z = {:.4}",
                    to - from - 1,
                    p.x,
                    p.z
                );
                rotations = 0;
            }
            StepReport::Done => break,
        }
    }
    println!("end side complete, front at {}", state.i_end);
    Ok(())
}

//! The element chain and its constraint functionals: initial layout on a
//! cylinder, per-joint length residuals, free-segment slack and the wrinkle
//! residual of a few candidate rotation axes.

use tapewrap::fixtures;
use tapewrap::geometry::Vec3;
use tapewrap::planner::{initial_axis, initialize_tape, step_side, StepReport};
use tapewrap::tape::{c_length, c_tension, c_wrinkle, Side};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let leg = fixtures::leg();
    let mut state = initialize_tape(
        &leg.mesh,
        &leg.p_init,
        &leg.d_init,
        leg.tape_length,
        &leg.config,
    )?;
    println!(
        "{} elements of {} m, middle {}",
        state.len(),
        state.element_length,
        state.i_mid
    );

    let worst_len = (1..state.len())
        .map(|j| c_length(&state, j).map(f64::abs))
        .try_fold(0.0, |m, r| r.map(|v| f64::max(m, v)))?;
    println!("initial layout: worst |c_length| = {worst_len:.2e} m");
    for side in Side::BOTH {
        println!(
            "initial {} slack: {:.2e} m",
            side.name(),
            c_tension(&state, side)?
        );
    }

    let mid = state.elements[state.i_mid].position;
    let (v_s, v_e) = initial_axis(&leg.mesh, &mid, &leg.d_init)?;
    let n = leg.mesh.closest_point(&mid)?.normal;
    println!(
        "initial axes v_s = {:.3?}, v_e = {:.3?}",
        v_s.as_slice(),
        v_e.as_slice()
    );
    for (name, axis) in [("v_e", v_e), ("z", Vec3::z()), ("normal", n)] {
        println!("c_wrinkle({name}) = {:+.3e}", c_wrinkle(&axis, &n)?);
    }

    // a few side steps by hand
    let (mut rotations, mut advances) = (0, 0);
    for _ in 0..40 {
        match step_side(&mut state, &leg.mesh, &leg.config, Side::End)? {
            StepReport::Rotated { .. } => rotations += 1,
            StepReport::Advanced { .. } => advances += 1,
            StepReport::Done => break,
        }
    }
    println!(
        "40 end-side steps: {rotations} rotations, {advances} advances, end front at {}",
        state.i_end
    );
    println!(
        "end-side slack after stepping: {:.2e} m",
        c_tension(&state, Side::End)?
    );
    Ok(())
}

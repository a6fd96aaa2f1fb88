//! Refinement oracle: the same placement with a 4x finer angle step and
//! half-length elements, compared along the tape by arclength.

use tapewrap::fixtures;
use tapewrap::planner::PlannerConfig;
use tapewrap::verifier::refinement_oracle;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let leg = fixtures::leg();
    let bound = leg.config.epsilon + leg.config.element_length.powi(2) / (8.0 * 0.05);
    for div in [1.0, 2.0, 4.0] {
        let cfg = PlannerConfig {
            angle_step: leg.config.angle_step / div,
            ..leg.config
        };
        let c = refinement_oracle(&leg.mesh, &leg.p_init, &leg.d_init, leg.tape_length, &cfg)?;
        println!(
            "angle step {:.4} deg: max deviation {:.3e} m at element {} ({} vs {} iterations); eps + l_e^2/8r = {bound:.3e}",
            cfg.angle_step.to_degrees(),
            c.max_deviation,
            c.worst_element,
            c.base_iterations,
            c.refined_iterations
        );
    }
    // a tighter adhesion band removes most of the early-contact drift
    let tight = PlannerConfig {
        epsilon: 1e-5,
        ..leg.config
    };
    let c = refinement_oracle(&leg.mesh, &leg.p_init, &leg.d_init, leg.tape_length, &tight)?;
    println!("epsilon 1e-5: max deviation {:.3e} m", c.max_deviation);
    Ok(())
}

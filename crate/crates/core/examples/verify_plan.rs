//! Independent audit of a plan: every check with its measured value and limit.

use tapewrap::fixtures;
use tapewrap::planner::plan_bimanual;
use tapewrap::verifier::{render_text, verify_plan, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in [fixtures::leg(), fixtures::hip(), fixtures::heel()] {
        let plan = plan_bimanual(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &s.config)?;
        let report = verify_plan(
            &plan,
            &s.mesh,
            &s.config,
            &Tolerances::for_config(&s.config),
        )?;
        println!("=== {} ===", s.name);
        print!("{}", render_text(&report));
        println!();
    }
    Ok(())
}

//! Single-arm placement: element 0 is pinned and only the end side is laid.

use tapewrap::fixtures;
use tapewrap::planner::{plan_bimanual, plan_single_sided};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in [fixtures::plane(), fixtures::leg()] {
        let single = plan_single_sided(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &s.config)?;
        let both = plan_bimanual(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &s.config)?;
        println!(
            "{:>5}: single-sided {:?} in {} iterations, bimanual {} iterations",
            s.name,
            single.status,
            single.iterations(),
            both.iterations()
        );
        let last = single.records.last().expect("at least one record");
        println!(
            "       start pose held at {:.4?}",
            last.start.position.as_slice()
        );
    }
    Ok(())
}

//! Bimanual placement on the lower-leg cylinder: iteration count, adhesion
//! fronts over time and the final wrap.

use tapewrap::fixtures;
use tapewrap::planner::plan_bimanual;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let leg = fixtures::leg();
    let t0 = std::time::Instant::now();
    let plan = plan_bimanual(
        &leg.mesh,
        &leg.p_init,
        &leg.d_init,
        leg.tape_length,
        &leg.config,
    )?;
    println!(
        "status {:?} after {} iterations ({:.1?})",
        plan.status,
        plan.iterations(),
        t0.elapsed()
    );

    for rec in plan.records.iter().step_by(20).chain(plan.records.last()) {
        println!(
            "iter {:>4}: fronts ({:>2}, {:>2})  start grip {:.4?}  end grip {:.4?}",
            rec.iteration,
            rec.front_start,
            rec.front_end,
            rec.start.position.as_slice(),
            rec.end.position.as_slice()
        );
    }

    let line = plan.attached_centerline();
    let (first, last) = (line[0], line[line.len() - 1]);
    let wrap = first.y.atan2(first.x) - last.y.atan2(last.x);
    println!(
        "{} attached elements, wrap angle {:.1} deg (analytic {:.1} deg)",
        line.len(),
        wrap.abs().to_degrees(),
        (leg.tape_length - leg.config.element_length) / 0.05 * 180.0 / std::f64::consts::PI
    );
    Ok(())
}

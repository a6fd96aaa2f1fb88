//! Plans every fixture in many taping directions in parallel and tallies
//! how many plans pass verification.

use rayon::prelude::*;
use tapewrap::fixtures::{self, tangent_direction};
use tapewrap::planner::plan_bimanual;
use tapewrap::verifier::{verify_plan, Tolerances};

fn main() {
    let t0 = std::time::Instant::now();
    for s in [fixtures::leg(), fixtures::hip(), fixtures::heel()] {
        let results: Vec<(usize, bool)> = (0..24)
            .into_par_iter()
            .map(|k| {
                let d =
                    tangent_direction(&s.mesh, &s.p_init, k as f64 * std::f64::consts::PI / 12.0);
                let plan = plan_bimanual(&s.mesh, &s.p_init, &d, s.tape_length, &s.config)
                    .expect("valid request");
                let tol = Tolerances::for_config(&s.config);
                let pass = verify_plan(&plan, &s.mesh, &s.config, &tol)
                    .map(|r| r.pass)
                    .unwrap_or(false);
                (plan.iterations(), pass)
            })
            .collect();
        let passed = results.iter().filter(|r| r.1).count();
        let max_it = results.iter().map(|r| r.0).max().unwrap_or(0);
        println!(
            "{:>5}: {passed}/24 directions pass, at most {max_it} iterations",
            s.name
        );
    }
    println!("total {:.2?}", t0.elapsed());
}

//! Writes a residual-compensated trajectory as JSON and an OBJ scene with the
//! tape ribbon and free-segment snapshots, then reads the trajectory back.

use tapewrap::fixtures;
use tapewrap::planner::{apply_residual, plan_bimanual};
use tapewrap::scene::{export_scene, SceneOptions};
use tapewrap::trajectory::{read_trajectory, write_trajectory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("tapewrap-examples");
    std::fs::create_dir_all(&dir)?;
    let hip = fixtures::hip();
    let plan = plan_bimanual(
        &hip.mesh,
        &hip.p_init,
        &hip.d_init,
        hip.tape_length,
        &hip.config,
    )?;
    let plan = apply_residual(&plan, &hip.config)?;

    let traj = dir.join("hip.trajectory.json");
    write_trajectory(&plan, &traj, None)?;
    let back = read_trajectory(&traj)?;
    println!(
        "{}: {} records, read back {}",
        traj.display(),
        plan.iterations(),
        back.iterations()
    );

    let opts = SceneOptions {
        snapshot_every: Some(10),
        ..SceneOptions::default()
    };
    let scene_path = dir.join("hip.scene.obj");
    let scene = export_scene(&plan, &hip.mesh, &opts, &scene_path)?;
    println!(
        "{}: ribbon of {} elements, {} free-segment snapshots",
        scene_path.display(),
        scene.ribbon.len(),
        scene.snapshots
    );
    Ok(())
}

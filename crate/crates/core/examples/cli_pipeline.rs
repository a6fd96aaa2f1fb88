//! Drives the command line in-process: generate a mesh, audit it, plan,
//! verify and export a scene, printing each exit code.

use tapewrap::cli::run;

fn main() {
    let dir = std::env::temp_dir().join("tapewrap-examples");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let (mesh, traj, scene) = (p("cli_leg.obj"), p("cli_leg.json"), p("cli_leg_scene.obj"));

    let steps: Vec<Vec<String>> = vec![
        vec![
            "gen-mesh", "--kind", "cylinder", "--radius", "0.05", "--length", "0.4", "-o", &mesh,
        ],
        vec!["verify-mesh", "--mesh", &mesh],
        vec![
            "plan",
            "--mesh",
            &mesh,
            "--p-init",
            "0.05,0,0",
            "--d-init",
            "0,1,0",
            "--tape-length",
            "0.15",
            "-o",
            &traj,
        ],
        vec!["verify", "--trajectory", &traj, "--mesh", &mesh],
        vec![
            "export-scene",
            "--trajectory",
            &traj,
            "--mesh",
            &mesh,
            "-o",
            &scene,
        ],
    ]
    .into_iter()
    .map(|s| s.into_iter().map(String::from).collect())
    .collect();

    for args in steps {
        println!("$ tapewrap {}", args.join(" "));
        let code = run(std::iter::once("tapewrap".to_string()).chain(args));
        println!("-> exit {code}\n");
    }
}

//! Tape-placement trajectory planning on triangle-mesh surfaces.
//!
//! A tape of length `l` is cut into `N` equal elements. Its middle is stuck
//! to the surface, then both halves are laid down by rotating each free end
//! about its outermost attached element in small angle steps until the next
//! element touches. The gripper poses and pulling directions of both ends are
//! recorded at every step.
//!
//! - [`geometry`]: vectors, rotations, closest-point queries, convex hulls
//! - [`mesh_io`]: OBJ/STL input and output, parametric test surfaces
//! - [`tape`]: the element chain and its length/tension/wrinkle residuals
//! - [`planner`]: the placement algorithm and the residual offset
//! - [`verifier`]: independent plan audit, coverage and a refinement oracle
//! - [`trajectory`], [`scene`]: JSON trajectory files and OBJ scenes
//! - [`cli`]: the `tapewrap` command line
//!
//! ```
//! use tapewrap::{fixtures, planner, verifier};
//!
//! let leg = fixtures::leg();
//! let plan = planner::plan_bimanual(&leg.mesh, &leg.p_init, &leg.d_init, leg.tape_length, &leg.config)?;
//! let report = verifier::verify_plan(&plan, &leg.mesh, &leg.config, &verifier::Tolerances::for_config(&leg.config))?;
//! assert_eq!(report.coverage_percent, 100.0);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod fixtures;
pub mod geometry;
pub mod mesh_io;
pub mod planner;
pub mod scene;
pub mod tape;
pub mod trajectory;
pub mod verifier;

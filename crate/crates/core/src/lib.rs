//! Rigid triangles whose vertices slide on three straight lines.
//!
//! The crate decides when such a triangle can move continuously
//! ([`mechanism::feasibility`]), generates the motion (the hypocycloid
//! straight-line drawer and its lifts to higher dimensions), checks it
//! against the rolling-circle model, and enumerates the finitely many static
//! placements otherwise ([`solver::solve_configurations`]).

pub mod error;
pub mod geom;
pub mod io;
pub mod mechanism;
pub mod oracle;
pub mod pairwise;
pub mod rolling;
pub mod solver;
pub mod svg;
pub mod triangle;
pub mod vector;

pub use error::{Error, Result};
pub use geom::{classify_scene, common_perpendicular, foot_offset, project_out, Line, PairGeometry, Scene, SceneClass};
pub use io::{parse_scene, parse_scene_str, serialize_scene, FormatError, SceneFile, SceneOptions};
pub use mechanism::{feasibility, FeasibilityReport, Mechanism, MotionState, Side, Verdict};
pub use solver::{solve_configurations, Configuration, ConfigurationSet, SolveOptions};
pub use svg::{render_svg, SvgOptions};
pub use triangle::TriangleSpec;
pub use vector::{Point, VecN};

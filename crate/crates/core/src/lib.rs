//! Support lines of simple polygonal arcs.
//!
//! For an arc `γ` parametrized by arc length, the support line `L_θ` has
//! direction `θ` and keeps the whole arc on its closed left side. The
//! multi-valued map `T(θ)` returns the smallest and largest arc parameters
//! touched by `L_θ`. This crate builds `T` symbolically from the convex hull
//! of the arc, and runs level scans over its graph to find pairs of support
//! lines with a prescribed angle difference that touch the arc at three
//! parameters `s1 < s2 < s3` (two on one line, the middle one on the other).
//!
//! Brute-force oracles and a seeded random arc generator live in [`oracle`]
//! and [`fuzz`] so every structural claim can be checked independently.

pub mod arc;
pub mod error;
pub mod fuzz;
pub mod geometry;
pub mod hull;
pub mod oracle;
pub mod pairs;
pub mod profile;

pub use arc::{build_arc, ArcFile, PolygonalArc};
pub use error::{Error, Result};
pub use geometry::{
    angle_of, ccw_gap, interval_sub, orient, Angle, Interval, Orientation, Point2, Tolerances,
};
pub use hull::{corner_steps, melkman_hull, Hull, HullCorner};
pub use pairs::{
    corollary_check, count_of_mode, enumerate_triples, find_pair, find_pair_mountain,
    find_pair_valley, fits_mode, jump_gap_distance, scan_ledger, unique_count, verify_triple,
    CorollaryReport, ScanMode, ScanStep, TriplePair, VerifyReport,
};
pub use profile::{
    build_profile, eval_piecewise, unique_crossing_continuous, DirectedLine, Jump, Location, Step,
    SupportProfile, TouchSet,
};

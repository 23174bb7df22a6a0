//! Hoop Diagrams and Linear Diagrams for set-intersection data.
//!
//! The pipeline runs from membership data to a [`SetSystem`], through a
//! segment-minimizing [`Arrangement`], to geometry and SVG. [`Session`]
//! layers the interactive operations on top, and [`api`] serves sessions
//! over HTTP.

pub mod api;
pub mod cli;
pub mod error;
pub mod generator;
pub mod geometry;
pub mod ordering;
pub mod render;
pub mod session;
pub mod set_model;

pub use error::{Error, Result};
pub use geometry::{
    hit_test_hoop, hit_test_linear, layout_hoop, layout_linear, Geometry, HitTarget, HoopGeometry,
    LinearGeometry, Point, StyleConfig,
};
pub use ordering::{
    bring_set_to_front, optimize_exact, optimize_heuristic, reorder_for_set, rotate,
    segment_counts, Arrangement, Direction, SegmentStats, Topology,
};
pub use render::{color_for_set, render_svg, Emphasis, HighlightState};
pub use session::{
    DiagramKind, InteractionCommand, InteractionEvent, OptimizerMode, Session, SessionConfig,
};
pub use set_model::{zones_from_memberships, MembershipTable, SetSystem, Zone};

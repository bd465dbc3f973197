//! Exact-arithmetic laboratory for line and plane cover numbers of graph
//! drawings.
//!
//! All geometry is done over arbitrary-precision rationals, so every
//! certificate produced here (a drawing plus covering lines or planes) can be
//! re-checked without rounding concerns. The crate is organised as
//!
//! * [`graph`]: simple graphs with role tags, the special graph families
//!   (stacked triangulations, `K_{2,4}` substitution, the double-`K_4` anchor,
//!   triangulated spirals) and leveled-planarity search;
//! * [`geom`]: rational predicates, drawing validation in 2D and on two planes
//!   in 3D, exact minimum line covers, text formats and SVG output;
//! * [`cover`]: certificate search for weak line cover upper bounds, the
//!   two-parallel-lines decision and stacked-triangulation drawings;
//! * [`reduction`]: the level-planarity to two-line transformation with both
//!   constructive directions;
//! * [`planes3d`]: two-plane drawings, saturation and the `5n - 19` edge bound.

pub mod cover;
pub mod error;
pub mod geom;
pub mod graph;
pub mod planes3d;
pub mod reduction;

pub use cover::{Certificate, CoverInterval, SearchSpace};
pub use error::{Error, Result};
pub use geom::{Drawing2, Line2, Plane3, Point2, Point3, Rat};
pub use graph::{FaceTree, Graph, LevelAssignment, Role};
pub use planes3d::{SpineStats, TwoPlaneDrawing};
pub use reduction::{ReductionOutput, TwoLineDrawing};

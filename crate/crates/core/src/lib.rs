//! Construction, verification and maximality checking of thrackle drawings.
//!
//! A thrackle is a drawing of a graph in which every pair of edges meets
//! exactly once, either at a shared endpoint or at a proper crossing.
//! Straight-line drawings live in [`geometric`]; drawings given by their
//! crossing structure live in [`combinatorial`], and [`search`] decides
//! whether a new edge can still be inserted.

pub mod belt;
pub mod combinatorial;
pub mod error;
pub mod families_geometric;
pub mod families_topological;
pub mod geometric;
pub mod geometry;
pub mod io;
pub mod map;
pub mod polyline;
pub mod render;
pub mod search;

pub use error::{DrawingError, FormatError, GeometryError, RenderError, SearchError, TopologyError};
pub use geometry::{ExactPoint, ExactScalar, FloatPoint, Orientation, Point, Scalar, SegmentRelation};

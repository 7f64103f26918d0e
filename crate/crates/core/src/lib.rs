//! Quadrance geometry over finite fields and the combinatorial structures it
//! induces: circle intersection numbers, polygons with prescribed side
//! quadrances, the quadrance association schemes and their fusions, and the
//! strongly regular quadrance graph.
//!
//! Everything is exact. Each closed-form count has a brute-force counterpart
//! in [`oracle`] so the two can be compared directly.

pub mod field;
pub mod geometry;
pub mod graph;
pub mod oracle;
pub mod scheme;

pub use field::{build_field, build_field_of_order, ArithOp, Elem, FieldCtx, FieldError};
pub use geometry::{
    build_polygon, circle_points, count_admissible_k, discriminant, intersect_circles, quadrance,
    verify_polygon, CircleClass, CircleSpec, GeometryError, Point, PolygonResult,
};
pub use graph::{GraphError, QuadGraph, SrgParams};
pub use scheme::{ClassMatrix, IntersectionTensor, SchemeError, VerificationReport};

use thiserror::Error;

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

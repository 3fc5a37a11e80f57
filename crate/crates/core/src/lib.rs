#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

//! Small-time heat content asymptotics on polygonal domains with mixed
//! Dirichlet and open boundary segments.

pub mod coefficients;
pub mod error;
pub mod expansion;
pub mod geometry;
pub mod mc_oracle;
pub mod numerics;
pub mod wedge_kernel;

pub use coefficients::{Angle, AngleClass};
pub use error::{Error, Result};
pub use geometry::{BoundaryCondition, Loop, PartitionParams, Point, Polygon, VertexAngle};

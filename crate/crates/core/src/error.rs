use thiserror::Error;

use crate::geometry::GeometryError;
use crate::numerics::QuadError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    /// An argument outside the domain where the quantity is defined.
    #[error("{name} = {value} is outside the valid range {valid}")]
    Domain {
        name: &'static str,
        value: f64,
        valid: &'static str,
    },
    #[error("point ({x}, {y}) is not strictly inside the domain")]
    OutsideDomain { x: f64, y: f64 },
    #[error("invalid Monte Carlo configuration: {0}")]
    InvalidConfig(&'static str),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, valid: &'static str) -> Self {
        Error::Domain { name, value, valid }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

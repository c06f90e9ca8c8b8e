//! Third-order implicit finite-volume schemes for stiff one-dimensional
//! hyperbolic systems.

pub mod driver;
pub mod grid;
pub mod limiter;
pub mod linalg;
pub mod model;
pub mod numflux;
pub mod reconstruction;
pub mod scalar;
pub mod timeint;

pub use driver::DriverError as Error;
pub use scalar::Real;

pub type Grid = grid::Grid1D<f64>;
pub type Field = grid::Field<f64>;
pub type Euler = model::Euler<f64>;
pub type Model = model::Model<f64>;
pub type Quinpi<'a, L> = timeint::Quinpi<'a, f64, L>;
pub type EntropyReport = limiter::EntropyReport<f64>;
pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Two-dimensional Yang-Mills theory on surfaces with open Wilson graphs, and
//! the spin Calogero-Moser chain whose multi-time propagators are cylinder
//! partition functions.
//!
//! Module map:
//! - [`lie`]: type A root systems, Casimirs, characters, weight systems;
//! - [`tensor`]: tensor product decomposition and SU(2) intertwiners;
//! - [`surface`]: heat-kernel class series, gluing and point observables;
//! - [`graph`]: surfaces with Wilson graphs and their partition functions;
//! - [`cm`]: trace functions, dynamical r-matrix and radial operators;
//! - [`haar`]: Haar and Weyl-integration quadrature;
//! - [`report`] and [`verify`]: residual reports and the verification suites.

pub mod cm;
mod error;
pub mod graph;
pub mod haar;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod surface;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use lie::{CartanPoint, HighestWeight, RootSystem};
pub use scalar::{Coefficient, Rational, Real};

pub type CMatrix64 = linalg::CMatrix<f64>;
pub type CMatrix32 = linalg::CMatrix<f32>;
pub type CartanPoint64 = lie::CartanPoint<f64>;
pub type CartanPoint32 = lie::CartanPoint<f32>;
pub type Intertwiner64 = tensor::Intertwiner<f64>;
pub type ClassSeries64 = surface::ClassSeries<f64>;
pub type ClassSeriesExact = surface::ClassSeries<Rational>;
pub type PointObservable64 = surface::PointObservable<f64>;
pub type PointObservableExact = surface::PointObservable<Rational>;
pub type SpinChainConfig64 = cm::SpinChainConfig<f64>;
pub type Propagator64 = cm::SpectralPropagator<f64>;

//! Exact computations in the Yangian Y(n) and its reflection subalgebras.

pub mod bivariate;
pub mod classify;
pub mod coeff;
pub mod error;
pub mod linalg;
pub mod ncpoly;
pub mod operator;
pub mod poly;
pub mod ratfunc;
pub mod ratmatrix;
pub mod rational;
pub mod reflection;
pub mod repr;
pub mod sampling;
pub mod series;
pub mod yangian;

pub use coeff::Coefficient;
pub use error::{Error, Result};
pub use ncpoly::{GenIndex, NCMonomial, NCPolynomial};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use series::{MatrixSeries, TruncatedSeries};

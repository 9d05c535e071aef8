//! Differential calculus on time scales.
//!
//! A time scale is a closed subset of the reals. [`TimeScale`] provides the
//! jump operators and graininess, [`engine`] the delta and nabla derivatives
//! of arbitrary functions and the delta integral, [`catalog`] closed forms
//! for twenty standard functions, [`special`] the time-scale trigonometric
//! and hyperbolic functions, and [`expr`] a small expression language whose
//! trees are matched against the catalog.

pub mod catalog;
pub mod engine;
pub mod error;
pub mod expr;
pub mod numeric;
pub mod quadrature;
pub mod scale;
mod scale_spec;
pub mod special;

pub use catalog::{cross_check, cross_check_nabla, eval_delta, eval_nabla, list_catalog, CatalogEntry, CrossCheck, EntryId, Params};
pub use engine::{
    delta_derivative, delta_derivative_quadrature, delta_integral, nabla_derivative, nabla_derivative_quadrature,
    DerivativeReport, Diagnostics, Direction, Method, RealFunction,
};
pub use error::{Error, Result};
pub use expr::{Compiled, Expr, Provenance};
pub use scale::{Interval, Kind, PointClass, TimeScale};

//! Numerical realization of the positive radial momentum operator on the
//! half-line and the operator calculus around it: Fourier sine/cosine
//! transforms, even/odd Hilbert transforms, the square-root operator
//! `z⁺ = √(−∂²)` and its log-kernel inverse, and Erdélyi–Kober fractional
//! integrals.
//!
//! Two realizations coexist. The discrete one works on a Dirichlet grid
//! where the orthonormal DST-I matrix plays the role of the sine transform,
//! so operator identities hold to rounding. The quadrature one evaluates
//! the integral definitions directly on symbolic test functions.

pub mod error;
pub mod fracint;
pub mod function;
pub mod grid;
pub mod hilbert;
pub mod opmatrix;
pub mod quadrature;
pub mod radialops;
pub mod specfun;
pub mod tabulate;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use function::{DecayClass, FunctionDescriptor, RadialFunction};
pub use grid::{RadialGrid, SampledFunction, Space};
pub use quadrature::QuadratureSettings;

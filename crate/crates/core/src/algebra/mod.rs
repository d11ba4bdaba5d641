//! Exterior algebra on weighted degree-1 generators with exact rational
//! coefficients, and quadratic differentials acting on it as derivations.

mod form;
mod model;
mod monomial;

pub use form::{Form, FormDegree};
pub use model::{monomial_basis, Generator, SullivanModel};
pub use monomial::{Monomial, MAX_GENERATORS};

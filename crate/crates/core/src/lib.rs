//! Exact computations with nilpotent Lie algebras and their
//! Chevalley–Eilenberg (Sullivan) models.
//!
//! The crate works entirely over ℚ. Its layers are:
//!
//! * [`algebra`]: forms in ΛV, quadratic differentials, `d² = 0` checks;
//! * [`lie`]: structure constants, lower central series, adapted bases,
//!   the associated Carnot-graded algebra and the model ⟷ algebra dictionary;
//! * [`cohomology`]: Betti numbers, representative cocycles, cup products
//!   and indecomposable (algebra-generator) counts;
//! * [`morphisms`]: verification of CDGA and cohomology-ring isomorphisms,
//!   perturbation normalization, fingerprints, 2-form decomposability;
//! * [`free_nilpotent`]: Lyndon bases and free nilpotent Lie algebras;
//! * [`families`]: the rigid families and the non-isomorphic pair;
//! * [`cli`]: the text file format, reports and the `nilrigid` command.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod families;
pub mod free_nilpotent;
pub mod lie;
pub mod linalg;
pub mod morphisms;
pub mod rational;

pub use algebra::{Form, Generator, Monomial, SullivanModel};
pub use error::{Error, Result};
pub use lie::LieAlgebra;
pub use rational::Rational;

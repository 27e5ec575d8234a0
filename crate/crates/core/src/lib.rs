//! K-theory of boundary crossed-product algebras of Ã₂ groups.
//!
//! The pipeline goes presentation → projective plane → hat/check transition
//! matrices → Smith normal form of `(I - M1 | I - M2)`:
//!
//! ```
//! use a2kt::{cktwo, presentation};
//!
//! let vp = presentation::validate(&presentation::builtin("B.2").unwrap()).unwrap();
//! let report = cktwo::k_theory_a2(&vp).unwrap();
//! assert_eq!(report.k0.to_string(), "Z/2 + Z/6");
//! assert_eq!(report.k0.primary_string(), "(Z/2)^2 + Z/3");
//! ```

pub mod cktwo;
pub mod plane;
pub mod presentation;
pub mod report;
pub mod transition;
pub mod zmat;

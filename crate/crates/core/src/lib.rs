//! Holomorphic automorphism words on `C^n` and its coordinate-hyperplane
//! complements.
//!
//! The crate composes explicit generators (overshears, permutations,
//! dilations, linear maps, coordinate inversions), tests which domain a word
//! preserves, computes the winding invariant that separates components of
//! the automorphism group of a hyperplane complement, builds the explicit
//! homotopies joining overshears and transpositions to the identity, and
//! checks the torus-centralizer dichotomy numerically.

pub mod domain;
pub mod error;
pub mod homotopy;
pub mod json;
pub mod poly;
pub mod sampling;
pub mod torus;
pub mod winding;
pub mod word;

pub use num_complex::Complex64;

pub use domain::{classify_domain, word_preserves_domain, Classification, DomainKind, DomainSpec, PreservationVerdict};
pub use error::{Error, Result};
pub use homotopy::{certify_path, continuity_modulus, BumpFunction, CertificationReport, HomotopyPath};
pub use poly::PolynomialRepr;
pub use torus::{
    apply_torus, commutes_with_torus, extract_diagonal, validate_exponent_matrix, CommutationVerdict,
    CommutationWitness, ExponentMatrix, TorusElement,
};
pub use winding::{in_negative_component, winding_index, ContourSpec, IndexResult};
pub use word::{AutomorphismWord, GeneratorStep};

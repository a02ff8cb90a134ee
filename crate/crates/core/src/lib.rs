//! Affine cartesian evaluation codes over finite fields.
//!
//! `C(d)` is the image of the polynomials of degree at most `d` under
//! evaluation at every point of `A_1 × ⋯ × A_n ⊆ GF(q)^n`. The crate
//! computes its dimension, minimum distance, second and some higher weights
//! from closed forms ([`formulas`]) and checks those values against
//! exhaustive enumeration of the code ([`codes`]).

pub mod codes;
pub mod formulas;
pub mod galois;
pub mod multipoly;
pub mod sweep;

pub use codes::{
    build_points, codeword_weight, enumerate_code, generator_matrix, min_weight_witness,
    second_weight_witness, verify, weight_spectrum, CodeError, EnumerationOptions, Expectations,
    GeneratorMatrix, PointSet, VerificationReport, WeightSpectrum,
};
pub use formulas::{CodeSpec, DegreeDecomposition, FormulaError, Regime, SpecError, WeightFormulaResult};
pub use galois::{Field, FieldElement, FieldError};
pub use multipoly::{FootprintBox, Monomial, MultiPoly, PolyError};

//! Classical codes over Gaussian-integer residue fields under the Mannheim metric, CSS
//! quantum codes built from nested pairs of them, and a small qudit state-vector
//! simulator that runs the CSS correction protocol end to end.
//!
//! Layering, bottom up:
//!
//! * [`gaussian`]: exact Gaussian integers, generic over the component integer type;
//! * [`field`]: the residue field `G_π`, Mannheim weights, primitive-element search;
//! * [`poly`]: polynomials over `G_π` and the root-of-unity factorizations that supply
//!   generator polynomials;
//! * [`code`]: linear and (nega)cyclic codes, duals, exhaustive distance search, bounded
//!   decoding;
//! * [`css`]: CSS and symplectic constructions, error counting, the Singleton check;
//! * [`qudit`]: `p`-level state vectors, generalized Pauli and Hadamard gates, coset states
//!   and the correction protocol, generic over the float type;
//! * [`table`]: the published comparison table and its reproduction report;
//! * [`doc`]: structured input documents shared with the command-line front end.

pub mod code;
pub mod css;
pub mod doc;
pub mod error;
pub mod field;
pub mod gaussian;
pub mod poly;
pub mod qudit;
pub mod table;

pub use code::{DecodeResult, Distance, LinearCode, Metric, Modulus, SearchOptions};
pub use css::{CssCode, ErrorCountReport, SingletonCheck, SymplecticCode};
pub use error::{Error, Result};
pub use field::{mannheim_weight, FieldOp, PrimeField};
pub use gaussian::{GaussScalar, Gaussian};
pub use poly::Polynomial;
pub use qudit::{Gate, ProtocolMode, ProtocolTranscript, QuditState};

/// Gaussian integer with 64-bit components; the scalar used throughout the field layers.
pub type GaussInt = Gaussian<i64>;

/// Double-precision qudit state vector.
pub type StateVector = QuditState<f64>;

/// Single-precision qudit state vector.
pub type StateVector32 = QuditState<f32>;

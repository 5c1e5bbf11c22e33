//! Exact interval exchange transformations, their natural codings, and
//! maximal bifix decoding of the languages they generate.
//!
//! - [`exact_field`]: exact arithmetic in `Q(sqrt(d))`.
//! - [`iet`]: the transformations, powers, inverses and connection search.
//! - [`symbolic`]: natural codings, truncated factorial languages and the
//!   invariant measure; substitution languages.
//! - [`bifix`]: prefix and bifix codes inside a language, parses, degree,
//!   enumeration, decoding and the induced transformation.
//! - [`extension`]: extension graphs, tree and planar tree checks.
//! - [`skew`]: skew products with permutation groups and return words.
//! - [`rauzy`]: the Tribonacci exchange of pieces in floating point.
//! - [`cli`]: the command-line front end behind the `bifix-iet` binary.

pub mod bifix;
pub mod cli;
pub mod error;
pub mod exact_field;
pub mod extension;
pub mod iet;
pub mod rauzy;
pub mod skew;
pub mod symbolic;
pub mod word;

pub use error::{Error, Result};
pub use exact_field::{QuadraticNumber, Rational};
pub use iet::{Iet, RegularityReport, RegularityStatus, SemiInterval};
pub use symbolic::{FactorialLanguage, Substitution};
pub use word::{Alphabet, Letter, Word};

//! Exact arithmetic in the field `L0 = ∪ₙ F2((x^(1/n)))` of Puiseux series
//! over F2, whose multiplicative group is a vector space over ℚ, together
//! with the decision procedure for finite fields whose multiplicative group
//! is a vector space.
//!
//! * [`f2series`]: truncated power series over F2, bit-packed, with
//!   Newton inversion, Frobenius square roots and odd roots.
//! * [`puiseux`]: the unit group `R^×`, the group `L0^×` and the
//!   decomposition `L0^× ≅ ℚ × R^×`.
//! * [`text`]: the canonical text format.
//! * [`axioms`]: seeded randomized checks of the vector-space laws.
//! * [`finfield`]: which `F_q^×` are vector spaces, with an independent oracle.

pub mod axioms;
pub mod clmul;
pub mod error;
pub mod f2series;
pub mod finfield;
pub mod puiseux;
pub mod random;
pub mod text;

pub use error::{Error, Result};
pub use f2series::F2Series;
pub use puiseux::{compose, decompose, ratio, Context, L0Element, PuiseuxUnit, Rational, RawSeries};
pub use text::{format_element, format_unit, parse_element, parse_rational, parse_unit};

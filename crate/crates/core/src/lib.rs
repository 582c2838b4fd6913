//! Khovanov homology with twisted coefficients for virtual link diagrams,
//! together with the Kauffman bracket, atoms, and exact homology over Z,
//! finite fields and the rationals.

pub mod atom;
pub mod bracket;
pub mod code;
pub mod error;
pub mod homology;
pub mod khovanov;
pub mod poly;
pub mod state;
pub mod verify;

pub use atom::Atom;
pub use code::VirtualLinkDiagram;
pub use khovanov::{build_complex, BigradedComplex, Frobenius, Ring};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use poly::LaurentPolynomial;
pub use state::{State, DEFAULT_CROSSING_CAP};

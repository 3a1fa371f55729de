//! The `catspec` text format.
//!
//! ```text
//! # arrow-only: the full table, identities inferred
//! objless TwoChain {
//!   arrows: a, i0, i1;
//!   compose: a . i0 = a, i0 . i0 = i0, i1 . a = a, i1 . i1 = i1;
//! }
//!
//! # objects and arrows: identity entries filled in, identities named id_X
//! category W {
//!   objects: A, B;
//!   arrow f: A -> B;
//!   arrow g: B -> A;
//!   compose: g . f = id_A, f . g = id_B;
//! }
//!
//! functor F: TwoChain -> W { map i0 -> id_A, i1 -> id_B, a -> f; }
//! nat t: F => id(W) . F { component i0: id_A; component i1: id_B; }
//! ```

mod diagnostic;
mod document;
mod lexer;
mod load;
mod parser;
mod serialize;

pub use diagnostic::{Diagnostic, DiagnosticKind, Span};
pub use document::{
    CatspecDocument, CategoryBody, FunctorAtom, FunctorDecl, FunctorExpr, NatDecl, SourceSpans,
};
pub use load::{LoadError, Loader};
pub use parser::parse;
pub use serialize::serialize;

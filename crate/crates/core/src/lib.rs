//! Finite categories presented by their arrows alone.
//!
//! A category is a set of morphism names with a partial composition table.
//! Identities, domains and codomains are recovered from the table. On top of
//! that sit functors, natural transformations, skeletons and equivalences,
//! adjunctions and finite-limit checks, and the `catspec` text format.

pub mod adjunction;
pub mod bridge;
pub mod catspec;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod gen;
pub mod iso;
pub mod kernel;
pub mod limits;
pub mod name;
pub mod nat;
pub mod report;

pub use bridge::StdCategory;
pub use error::{KernelError, Result};
pub use functor::{FunctorMap, Variance};
pub use kernel::{Arrow, CompositionTable, ObjlessCategory};
pub use name::{mname, oname, MorphismName, ObjectName};
pub use nat::NatTransf;
pub use report::{ValidationReport, Violation, ViolationKind};

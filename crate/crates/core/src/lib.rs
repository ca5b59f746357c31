//! Finite rings and modules: prime and completely prime radicals, envelopes,
//! the radical formula, 2-primality and the regularity classes that sit
//! between them, with an executable claim registry and a counterexample
//! hunter on exhaustively enumerated instances.

pub mod analysis;
pub mod classes;
pub mod cli;
pub mod closure;
pub mod corpus;
pub mod error;
pub mod hunter;
pub mod ideal;
pub mod lattice;
pub mod module;
pub mod primal;
pub mod recipe;
pub mod ring;
pub mod subset;
pub mod suite;

pub use error::{Axiom, Error, Result};
pub use subset::SubSet;

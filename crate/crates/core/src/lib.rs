//! Finite pocrims and hoops, a decision oracle for piecewise-linear
//! identities, an indirect case-template prover, Hilbert and equational proof
//! checkers, and double negation semantics for substructural logics.

pub mod algebra;
pub mod cli;
pub mod lra;
pub mod proof;
pub mod prover;
pub mod semantics;
pub mod syntax;

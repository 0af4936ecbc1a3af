//! Hilbert-style proofs in the nine logics, derived rules, and equational
//! proofs in the theory of (bounded) hoops.

mod derived;
mod equational;
mod hilbert;
mod logic;
mod random;
mod translate;

pub use derived::{build_assoc, build_assoc_rev, build_mono, build_refl, build_trans, MonoSide};
pub use equational::{
    check_equational, expand_eq2, inline, ChainBuilder, Dir, EqChain, EqError, EqRule, EqStep, EquationalProof,
};
pub use hilbert::{annotate, check_hilbert, HilbertProof, HilbertStep, ProofError, Subst};
pub use logic::{LogicId, Schema, ALL_LOGICS, ALL_SCHEMAS};
pub use random::random_proof;
pub use translate::translate_to_equational;

//! Opetopes, algebraically and combinatorially.
//!
//! This crate implements two equivalent descriptions of opetopes and the
//! machinery connecting them:
//!
//! - the algebraic side: free augmented directed complexes with a
//!   distinguished basis, thin elements for nullary cells, and the graded
//!   predicates (atomic, unital, loop-free, opetopic, reduced) that carve out
//!   the complexes representing opetopes ([`chain`], [`complex`],
//!   [`predicates`]);
//! - the combinatorial side: sequences of networks joined by constellations
//!   ([`network`]);
//! - the bridge: double sequences of chains and their g-chains ([`nu`]),
//!   network extraction and the inverse construction ([`transduce`]),
//!   certified by isomorphism checking ([`iso`]);
//! - subcomplexes, two-stage reduction, and source/target computation
//!   ([`reduction`]);
//! - a deterministic random generator for property testing ([`generator`]),
//!   JSON document formats ([`io`]) and Graphviz export ([`dot`]).
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything is safe to share across threads.

pub mod chain;
pub mod complex;
pub mod dot;
pub mod error;
pub mod generator;
pub mod ident;
pub mod io;
pub mod iso;
pub mod network;
pub mod nu;
pub mod predicates;
pub mod reduction;
pub mod samples;
pub mod transduce;

pub use chain::{Chain, Sign};
pub use complex::{Complex, Element, ElementSpec, FadcReport};
pub use error::{Error, Result};
pub use generator::random_opetope;
pub use ident::Ident;
pub use iso::{iso_complexes, iso_sequences, LevelIso};
pub use network::{
    classify_network, is_constellation, validate_sequence, Constellation, Network, NetworkFlags,
    NetworkSpec, OpetopicSequence, SequenceReport,
};
pub use nu::{canonical_atom, distinctness_check, g_chain, is_member, NuElement};
pub use predicates::{classify, is_atomic, is_loop_free, is_unital, ComplexFlags, Mode};
pub use reduction::{atomic_subcomplex, reduce, sources, target};
pub use transduce::{build_network, complex_of, networks_of};

//! Left I-orders in bisimple inverse ω-semigroups.
//!
//! The crate models the Reilly semigroups S(G,θ), represents candidate
//! subsemigroups inside a finite index window, checks the conditions that
//! characterise left I-orders in such semigroups, and builds the semigroup of
//! left I-quotients from pairs of elements, verifying its structure within the
//! window.

pub mod config;
pub mod group;
pub mod laws;
pub mod omega;
pub mod pipeline;
pub mod quotient;
pub mod report;
pub mod verdict;
pub mod verifier;
pub mod window;

pub use group::{validate_endomorphism, validate_group, Endomorphism, GroupTable, RawGroup};
pub use omega::{
    idempotent_leq, to_bicyclic, BicyclicElement, Green, Index, Reilly, ReillyElement,
};
pub use verdict::{Status, Verdict, Witness};
pub use window::{
    close_generators, l_class_coverage, load_abstract, ElemId, IndexProfile, SWindow, Val, Window,
};

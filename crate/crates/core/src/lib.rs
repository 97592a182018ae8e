//! Exact calculus for closed oriented spin 3-manifolds presented by surgery on
//! framed links.
//!
//! A manifold is modeled by its linking matrix together with a characteristic
//! vector selecting the sublink that encodes the spin structure. On top of
//! that model the crate provides:
//!
//! - enumeration of spin structures as characteristic vectors ([`presentation`]),
//! - spin Kirby moves and a seeded move fuzzer ([`kirby`]),
//! - the mod-2 invariant `I = n + cᵀBc`, the finite-type alternating-sum
//!   evaluator, and the Casson surgery recursion ([`invariants`]).
//!
//! All arithmetic is exact.

pub mod exactlin;
pub mod invariants;
pub mod kirby;
pub mod presentation;

pub use exactlin::{BitVector, IntMatrix, IntSymMatrix, Mod2AffineSolutionSet, Mod2Matrix};
pub use kirby::{Move, MoveSequence, Sign};
pub use presentation::{SpinPresentation, SublinkSelector};

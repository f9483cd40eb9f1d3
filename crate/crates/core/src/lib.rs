//! Exact combinatorics of `(p,q)`-clans and multiplicity-free Schubert products.
//!
//! A `(p,q)`-clan is a string of `n = p + q` symbols, each a `+`, a `-`, or one
//! of a set of natural numbers appearing exactly twice, with `#+ - #- = p - q`.
//! Clans index the orbits of `GL(p) x GL(q)` on the full flag variety, and the
//! ones avoiding the interleaved pattern `(1,2,1,2)` correspond to Richardson
//! varieties.  That coincidence yields a multiplicity-free rule for the Schubert
//! structure constants `c_{u,v}^w` whenever `(u,v)` is a `(p,q)`-pair: the
//! constant is 1 exactly when `l(w) = l(u) + l(v)` and the monoid action of `w`
//! carries the clan of the pair to the open clan.
//!
//! The crate provides:
//!
//! * [`permutation`] — one-line permutations, lengths, rank matrices, and both
//!   rank-matrix and sorted-prefix characterizations of the Bruhat order;
//! * [`clan`] — clans, their counting functions, lengths and orbit dimensions,
//!   FS-patterns, and `(1,2,1,2)` pattern machinery;
//! * [`weak_order`] — the monoid action of simple reflections on clans, the
//!   cross action, and the labeled weak order graph with DOT output;
//! * [`richardson`] — the clan/permutation dictionary: `u(γ)`, `v(γ)`,
//!   `(p,q)`-pairs, high-low patterns, and the clan of a comparable pair;
//! * [`structure`] — the product rule itself and its expansion support;
//! * [`schubert`] — an independent brute-force oracle built on exact sparse
//!   polynomials and divided differences, used to verify the rule.

pub mod clan;
pub mod permutation;
pub mod richardson;
pub mod schubert;
pub mod structure;
pub mod weak_order;

pub use clan::{Clan, ClanError, FsPattern, FsToken, Symbol};
pub use permutation::{PermError, Permutation, RankMatrix};
pub use richardson::{GammaSets, HighLowPattern, HlToken, PairError, PqPair};
pub use schubert::SchubertPoly;
pub use structure::{OracleCrossCheck, ProductExpansion};
pub use weak_order::WeakOrderGraph;

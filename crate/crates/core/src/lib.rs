//! Branching laws of permutative endomorphisms of Cuntz algebras.
//!
//! A permutation σ of the multi-index set `{1,…,N}^l` defines an
//! endomorphism ψ_σ of the Cuntz algebra O_N by permuting the degree-`l`
//! monomials in the generating isometries: ψ_σ(s_i) = u_σ s_i with
//! u_σ = Σ_J s_{σ(J)} s_J*. Composing a permutative representation P(J),
//! labeled by a word J, with ψ_σ splits into permutative components again:
//!
//! ```text
//! P(J) ∘ ψ_σ = P(J_1) ⊕ … ⊕ P(J_M)
//! ```
//!
//! This crate computes the right-hand side. The fast path drives a finite
//! transducer built from σ ([`mealy`]): the components correspond to the
//! cycles of the state map q ↦ δ(q, a_J) and their labels are read off the
//! output tape. An independent slow path ([`oracle`]) realizes P(J) as a
//! symbolic branching function system, transforms it by σ, and finds its
//! cycles directly; the two paths check each other.
//!
//! On top of branching sit derived facts ([`analysis`]): properness and
//! irreducibility certificates for ψ_σ, inequivalence witnesses for pairs
//! of endomorphisms, and signature-based partitions of whole permutation
//! families.
//!
//! Modules:
//! - [`word`]: words over `{1,…,N}`, rotation, canonical forms, necklaces.
//! - [`perm`]: permutations of `{1,…,N}^l`, builders, enumeration.
//! - [`sigma_io`]: JSON and line-based text formats for σ.
//! - [`builtin`]: named example permutations used throughout.
//! - [`mealy`]: the transducer M_σ, its diagrams and tables.
//! - [`branching`]: the branching law algorithm, formulas, signatures.
//! - [`oracle`]: the independent symbolic verifier.
//! - [`analysis`]: certificates, parity and bound checks, classification.
//! - [`suite`]: pinned regression rows over the builtins.
//! - [`fuzz`]: seeded random instances for randomized checks.

mod digest;

pub mod analysis;
pub mod branching;
pub mod builtin;
pub mod fuzz;
pub mod mealy;
pub mod oracle;
pub mod perm;
pub mod sigma_io;
pub mod suite;
pub mod word;

pub use branching::{branch, endomorphism_formula, signature, BranchingLaw};
pub use mealy::SemiMealyMachine;
pub use perm::MultiIndexPermutation;
pub use word::Word;

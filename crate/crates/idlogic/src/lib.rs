//! A finite-model engine for classical logic extended with non-monotone
//! inductive definitions.
//!
//! The library parses theories whose axioms may contain definitions — sets
//! of rules `∀x̄ (X(t̄) <- φ)` with arbitrary first-order bodies, read
//! inductively rather than as implications — and evaluates them over finite
//! structures:
//!
//! - [`structure`]: vocabularies, finite structures, and the lattice of
//!   structure extensions;
//! - [`syntax`]: the AST, parser, printer and syntactic analyses
//!   (defined/open partition, polarity, single-rule normal form,
//!   negative-occurrence renaming);
//! - [`ground`]: compilation of a definition over a structure into ground
//!   rule bodies, plus the induced dependency graph over domain atoms;
//! - [`engine`]: the immediate-consequence and stable operators, the
//!   alternating fixpoint that yields the well-founded lower/upper bound
//!   pair, totality, and definition satisfaction;
//! - [`checker`]: the satisfaction relation for full formulas, including
//!   second-order quantification by enumeration, and model enumeration;
//! - [`transform`]: partitions with reduction certificates, completion,
//!   the second-order least-relation and circumscription translations, and
//!   iterated-induction sequences;
//! - [`oracle`]: independent brute-force reference implementations used by
//!   the test suite.
//!
//! Each capability has a runnable demo under `examples/`; see the README.

pub mod checker;
pub mod engine;
pub mod error;
pub mod ground;
pub mod oracle;
pub mod structure;
pub mod syntax;
pub mod transform;

pub use error::{Error, Result};

/// Budgets guarding enumeration-heavy operations.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Maximum number of defined ground atoms a grounding may produce.
    pub atoms: usize,
    /// Maximum number of candidates for one enumeration (extensions of a
    /// structure, or values of one second-order quantifier).
    pub candidates: u128,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { atoms: 200_000, candidates: 1 << 20 }
    }
}

impl Budget {
    pub fn with_candidates(self, candidates: u128) -> Budget {
        Budget { candidates, ..self }
    }

    pub fn with_atoms(self, atoms: usize) -> Budget {
        Budget { atoms, ..self }
    }
}

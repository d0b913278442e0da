//! Finitely presented groups: words, presentations, abelianization, coset
//! enumeration, Tietze simplification, derivation search and classification.

pub mod abelian;
pub mod classify;
pub mod coset;
pub mod derive;
pub mod presentation;
pub mod tietze;
pub mod word;

pub use abelian::{abelianize, AbelianGroup, SmithForm};
pub use classify::{classify, BudgetUsed, Certificate, Claim, Method};
pub use coset::{todd_coxeter, CosetEnumeration, Exceeded};
pub use derive::{prove_word_trivial, Derivation, DerivationStep, DerivationUnknown};
pub use presentation::{Generator, Presentation, PresentationError};
pub use tietze::{tietze_simplify, Simplification};
pub use word::{reduce, GenId, Word};

use serde::{Deserialize, Serialize};

/// Resource limits. Running out of any of them gives "unknown", never a wrong answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_cosets: usize,
    pub max_depth: usize,
    pub max_tietze_passes: usize,
    /// Node expansions per derivation search.
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_cosets: 1_000_000, max_depth: 8, max_tietze_passes: 512, max_nodes: 200_000 }
    }
}

//! Manifold models: a presentation of the complement of the tracked pieces,
//! the tracked tori and surfaces, and the characteristic numbers.

mod catalog;
mod dump;
mod gluing;

pub use catalog::{make_block, mapping_torus_block, sym2_block, BlockId, BLOCK_IDS};
pub use dump::show_block;
pub use gluing::{gluing_by_name, standard_gluings, GluingMap};

use crate::fpgroup::{abelianize, AbelianGroup, Presentation, Word};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Standard genus-2 loop symbols; kernel words are written over these.
pub const STANDARD_LOOPS: [&str; 4] = ["s1", "t1", "s2", "t2"];

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown block id `{0}`")]
    UnknownBlock(String),
    #[error("no torus `{0}`")]
    MissingTorus(String),
    #[error("no surface `{0}`")]
    MissingSurface(String),
    #[error("`{0}` is no longer available")]
    Consumed(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// Whether the presentation is the fundamental group or only surjects onto it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    UpperBound,
    Exact,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::UpperBound => "upper-bound",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Available,
    Surgered,
    Filled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackedTorus {
    pub name: String,
    pub mu: Word,
    pub m: Word,
    pub ell: Word,
    pub lagrangian: bool,
    pub homology_essential: bool,
    pub status: Status,
    /// Complement group taken as exactly known (needed on the glued-in side of a torus sum).
    pub complement_exact: bool,
}

impl TrackedTorus {
    pub fn new(name: &str, mu: Word, m: Word, ell: Word) -> Self {
        TrackedTorus {
            name: name.to_string(),
            mu,
            m,
            ell,
            lagrangian: true,
            homology_essential: true,
            status: Status::Available,
            complement_exact: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackedSurface {
    pub name: String,
    pub genus: usize,
    pub square: i64,
    /// Images of s1, t1, s2, t2 in the model's generators.
    pub loop_words: Vec<Word>,
    pub mu: Word,
    /// Words over [`STANDARD_LOOPS`] that die in the closed-up manifold.
    pub kernel_words: Vec<Word>,
    pub complement_simply_connected: bool,
    /// Parallel copies exist, so summing along it leaves a copy behind.
    pub parallel: bool,
    /// A sphere meets the surface once, so the meridian dies after closing up.
    pub meridian_trivial: bool,
    pub status: Status,
}

impl TrackedSurface {
    pub fn new(name: &str, loop_words: Vec<Word>, mu: Word) -> Self {
        TrackedSurface {
            name: name.to_string(),
            genus: loop_words.len() / 2,
            square: 0,
            loop_words,
            mu,
            kernel_words: vec![],
            complement_simply_connected: false,
            parallel: false,
            meridian_trivial: false,
            status: Status::Available,
        }
    }
}

/// Hyperbolic pairs plus a named symmetric block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionFormRecord {
    pub hyperbolic_pairs: usize,
    pub basis: Vec<String>,
    pub odd_block: Vec<Vec<i64>>,
}

impl IntersectionFormRecord {
    pub fn diagonal(pairs: usize, entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &d) in entries.iter().enumerate() {
            m[i][i] = d;
        }
        IntersectionFormRecord {
            hyperbolic_pairs: pairs,
            basis: (1..=n).map(|i| format!("E{i}")).collect(),
            odd_block: m,
        }
    }

    pub fn rank(&self) -> usize {
        2 * self.hyperbolic_pairs + self.odd_block.len()
    }

    pub fn has_odd_diagonal(&self) -> bool {
        self.odd_block.iter().enumerate().any(|(i, r)| r[i] % 2 != 0)
    }

    /// Orthogonal sum.
    pub fn direct_sum(&self, other: &IntersectionFormRecord) -> Self {
        let n = self.odd_block.len();
        let k = other.odd_block.len();
        let mut m = vec![vec![0; n + k]; n + k];
        for i in 0..n {
            m[i][..n].copy_from_slice(&self.odd_block[i]);
        }
        for i in 0..k {
            m[n + i][n..].copy_from_slice(&other.odd_block[i]);
        }
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().map(|b| format!("{b}'")));
        IntersectionFormRecord { hyperbolic_pairs: self.hyperbolic_pairs + other.hyperbolic_pairs, basis, odd_block: m }
    }
}

/// One provenance entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub op: String,
    pub relators_added: Vec<String>,
    pub delta_e: i64,
    pub delta_sigma: i64,
    pub b1_before: usize,
    pub b1_after: usize,
}

/// Record left behind by a ±1 surgery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreTorus {
    pub torus: String,
    pub curve: Word,
    pub nullhomologous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldModel {
    pub name: String,
    pub presentation: Presentation,
    pub tori: Vec<TrackedTorus>,
    pub surfaces: Vec<TrackedSurface>,
    pub e: i64,
    pub sigma: i64,
    pub exactness: Exactness,
    pub form: Option<IntersectionFormRecord>,
    /// Reason the intersection form is known to be odd, when no record shows it.
    pub odd_witness: Option<String>,
    /// Only the abelianization of the presentation is meaningful.
    pub abelian_only: bool,
    pub cores: Vec<CoreTorus>,
    pub log: Vec<LogEntry>,
}

impl ManifoldModel {
    pub fn new(name: &str, presentation: Presentation, e: i64, sigma: i64) -> Self {
        ManifoldModel {
            name: name.to_string(),
            presentation,
            tori: vec![],
            surfaces: vec![],
            e,
            sigma,
            exactness: Exactness::Exact,
            form: None,
            odd_witness: None,
            abelian_only: false,
            cores: vec![],
            log: vec![],
        }
    }

    /// Parse a word over the model's generators.
    pub fn word(&self, text: &str) -> Result<Word, ModelError> {
        self.presentation.parse_word(text).map_err(|e| ModelError::Invalid(e.to_string()))
    }

    pub fn format(&self, w: &Word) -> String {
        self.presentation.format_word(w)
    }

    pub fn torus(&self, name: &str) -> Result<&TrackedTorus, ModelError> {
        self.tori.iter().find(|t| t.name == name).ok_or_else(|| ModelError::MissingTorus(name.to_string()))
    }

    pub fn torus_mut(&mut self, name: &str) -> Result<&mut TrackedTorus, ModelError> {
        self.tori.iter_mut().find(|t| t.name == name).ok_or_else(|| ModelError::MissingTorus(name.to_string()))
    }

    pub fn surface(&self, name: &str) -> Result<&TrackedSurface, ModelError> {
        self.surfaces.iter().find(|s| s.name == name).ok_or_else(|| ModelError::MissingSurface(name.to_string()))
    }

    pub fn surface_mut(&mut self, name: &str) -> Result<&mut TrackedSurface, ModelError> {
        self.surfaces
            .iter_mut()
            .find(|s| s.name == name)
            .ok_or_else(|| ModelError::MissingSurface(name.to_string()))
    }

    /// Presentation of the closed manifold: meridians of all pieces still
    /// available are added back.
    pub fn closure(&self) -> Presentation {
        self.closure_except(None)
    }

    /// Closure with one piece left out (its complement).
    pub fn closure_except(&self, keep: Option<&str>) -> Presentation {
        let mut p = self.presentation.clone();
        for t in &self.tori {
            if t.status == Status::Available && Some(t.name.as_str()) != keep {
                p.add_relator(t.mu.clone()).expect("model words");
            }
        }
        for s in &self.surfaces {
            if s.status == Status::Available && Some(s.name.as_str()) != keep {
                p.add_relator(s.mu.clone()).expect("model words");
            }
        }
        p
    }

    pub fn h1(&self) -> AbelianGroup {
        abelianize(&self.presentation)
    }

    pub fn b1(&self) -> usize {
        self.h1().free_rank
    }

    pub fn is_closed(&self) -> bool {
        self.tori.iter().all(|t| t.status != Status::Available)
            && self.surfaces.iter().all(|s| s.status != Status::Available)
    }

    pub fn has_odd_form(&self) -> bool {
        self.form.as_ref().map(IntersectionFormRecord::has_odd_diagonal).unwrap_or(false)
            || self.sigma.rem_euclid(8) != 0
            || self.odd_witness.is_some()
    }
}

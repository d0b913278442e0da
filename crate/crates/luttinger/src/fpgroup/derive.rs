//! Bounded search for an explicit proof that a word is trivial.
//!
//! The search walks from `w` towards the identity. A move inserts a cyclic
//! rotation of some relator (or its inverse) at a position where it cancels
//! at least one letter, then freely reduces. States are explored best-first by
//! length, then by depth, up to `max_depth` moves and `max_nodes` expansions
//! (at most `8 * max_nodes` stored states).

use super::presentation::Presentation;
use super::word::{invert_letters, reduce_letters, Letter, Word};
use super::Budget;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

/// One factor `c r^sign c⁻¹` of a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub conjugator: Word,
    pub relator: usize,
    pub sign: i8,
}

/// Product of conjugated relators, in order, freely equal to the target word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
    /// Search nodes expanded to find it.
    pub nodes: usize,
}

impl Derivation {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Multiply out the factors. For a valid derivation this equals the word
    /// it proves trivial, checkable by free reduction alone.
    pub fn expand(&self, p: &Presentation) -> Word {
        let factors: Vec<Word> = self
            .steps
            .iter()
            .map(|s| p.relators()[s.relator].pow(s.sign as i64).conjugate_by(&s.conjugator))
            .collect();
        Word::product(factors.iter())
    }
}

/// The search ran out of depth or nodes.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("no derivation within depth {max_depth} ({nodes} nodes searched)")]
pub struct DerivationUnknown {
    pub max_depth: usize,
    pub nodes: usize,
}

struct Piece {
    letters: Vec<Letter>,
    relator: usize,
    sign: i8,
    /// Prefix `P` of `r^sign` with `letters = P⁻¹ r^sign P`.
    prefix: Vec<Letter>,
}

fn pieces(p: &Presentation) -> Vec<Piece> {
    let mut out = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let base = r.letters();
        for sign in [1i8, -1] {
            let rs = if sign > 0 { base.clone() } else { invert_letters(&base) };
            let n = rs.len();
            for k in 0..n {
                let rot: Vec<Letter> = rs[k..].iter().chain(rs[..k].iter()).copied().collect();
                if out.iter().any(|q: &Piece| q.letters == rot) {
                    continue;
                }
                out.push(Piece { letters: rot, relator: i, sign, prefix: rs[..k].to_vec() });
            }
        }
    }
    out
}

const STORED_PER_NODE: usize = 8;

struct Node {
    word: Vec<Letter>,
    depth: usize,
    parent: usize,
    step: Option<DerivationStep>,
}

/// Search for a derivation of `w` from the relators of `p`.
pub fn prove_word_trivial(p: &Presentation, w: &Word, budget: &Budget) -> Result<Derivation, DerivationUnknown> {
    let start = w.letters();
    if start.is_empty() {
        return Ok(Derivation { steps: vec![], nodes: 0 });
    }
    let pieces = pieces(p);
    let max_len = start.len() + pieces.iter().map(|q| q.letters.len()).max().unwrap_or(0) * 2;
    let mut nodes: Vec<Node> = vec![Node { word: start.clone(), depth: 0, parent: usize::MAX, step: None }];
    let mut seen: HashMap<Vec<Letter>, usize> = HashMap::new();
    seen.insert(start.clone(), 0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((start.len(), 0usize, 0usize)));
    let mut expanded = 0usize;
    while let Some(Reverse((_, depth, id))) = heap.pop() {
        if depth >= budget.max_depth {
            continue;
        }
        // stored states are capped too, or wide presentations exhaust memory
        if expanded >= budget.max_nodes || nodes.len() >= budget.max_nodes.saturating_mul(STORED_PER_NODE) {
            break;
        }
        expanded += 1;
        let cur = nodes[id].word.clone();
        for piece in &pieces {
            let l = &piece.letters;
            for pos in 0..=cur.len() {
                let cancels_left = pos > 0 && l[0] == -cur[pos - 1];
                let cancels_right = pos < cur.len() && l[l.len() - 1] == -cur[pos];
                if !cancels_left && !cancels_right {
                    continue;
                }
                let mut cand = Vec::with_capacity(cur.len() + l.len());
                cand.extend_from_slice(&cur[..pos]);
                cand.extend_from_slice(l);
                cand.extend_from_slice(&cur[pos..]);
                let next = reduce_letters(&cand);
                if next.len() > max_len {
                    continue;
                }
                let nd = depth + 1;
                if let Some(&old) = seen.get(&next) {
                    if nodes[old].depth <= nd {
                        continue;
                    }
                }
                // inserting ρ = P⁻¹ r^s P after prefix A multiplies on the left
                // by A ρ A⁻¹; its inverse (A P⁻¹) r^-s (A P⁻¹)⁻¹ is the factor
                let mut conj = cur[..pos].to_vec();
                conj.extend(invert_letters(&piece.prefix));
                let step = DerivationStep {
                    conjugator: Word::from_letters(&reduce_letters(&conj)),
                    relator: piece.relator,
                    sign: -piece.sign,
                };
                let nid = nodes.len();
                let done = next.is_empty();
                nodes.push(Node { word: next.clone(), depth: nd, parent: id, step: Some(step) });
                if done {
                    return Ok(Derivation { steps: trace(&nodes, nid), nodes: expanded });
                }
                seen.insert(next.clone(), nid);
                heap.push(Reverse((next.len(), nd, nid)));
            }
        }
    }
    Err(DerivationUnknown { max_depth: budget.max_depth, nodes: expanded })
}

fn trace(nodes: &[Node], mut id: usize) -> Vec<DerivationStep> {
    let mut steps = Vec::new();
    while let Some(s) = &nodes[id].step {
        steps.push(s.clone());
        id = nodes[id].parent;
    }
    steps.reverse();
    steps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_itself_has_depth_one() {
        let p = Presentation::new(&["x", "y"]).unwrap();
        let r = p.parse_word("[x,y]").unwrap();
        let p = p.with_relators([r.clone()]).unwrap();
        let d = prove_word_trivial(&p, &r, &Budget::default()).unwrap();
        assert_eq!(d.depth(), 1);
        assert_eq!(d.expand(&p), r);
    }

    #[test]
    fn commuting_past_a_commutator() {
        let p = Presentation::new(&["y", "a1", "a2"]).unwrap();
        let rels = [p.parse_word("[y,a1]").unwrap(), p.parse_word("[y,a2]").unwrap()];
        let p = p.with_relators(rels).unwrap();
        let w = p.parse_word("[[a1^-1,a2^-1],y^-1]").unwrap();
        let d = prove_word_trivial(&p, &w, &Budget::default()).unwrap();
        assert_eq!(d.expand(&p), w);
        assert!(d.depth() <= 8);
    }

    #[test]
    fn conjugate_of_relator() {
        let p = Presentation::new(&["x", "y"]).unwrap();
        let p = p.clone().with_relators([p.parse_word("x^3").unwrap()]).unwrap();
        let w = p.parse_word("y x^-3 y^-1").unwrap();
        let d = prove_word_trivial(&p, &w, &Budget::default()).unwrap();
        assert_eq!(d.expand(&p), w);
    }

    #[test]
    fn conjugated_push_off_collapses_with_one_commutator() {
        let p = Presentation::new(&["a2", "b2"]).unwrap();
        let p = p.clone().with_relators([p.parse_word("[b2,a2]").unwrap()]).unwrap();
        let w = p.parse_word("(b2 a2 b2^-1) b2^-1 (b2 a2 b2^-1)^-1 b2").unwrap();
        let d = prove_word_trivial(&p, &w, &Budget::default()).unwrap();
        assert_eq!(d.depth(), 1);
        assert_eq!(d.expand(&p), w);
    }

    #[test]
    fn nontrivial_word_is_unknown() {
        let p = Presentation::new(&["x", "y"]).unwrap();
        let p = p.clone().with_relators([p.parse_word("[x,y]").unwrap()]).unwrap();
        let w = p.parse_word("x").unwrap();
        let b = Budget { max_nodes: 2000, ..Budget::default() };
        assert!(prove_word_trivial(&p, &w, &b).is_err());
    }
}

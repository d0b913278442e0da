//! Decision ladder turning a presentation into a certified claim.

use super::abelian::{abelianize, AbelianGroup};
use super::coset::todd_coxeter;
use super::derive::prove_word_trivial;
use super::presentation::Presentation;
use super::tietze::{combinations, eliminate, tietze_simplify};
use super::word::Word;
use super::Budget;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Claim {
    Trivial,
    Finite { order: u64 },
    InfiniteCyclic,
    FreeAbelian { rank: usize },
    FiniteAbelian { group: AbelianGroup },
    /// Abelian with both free and torsion parts.
    Abelian { group: AbelianGroup },
    Free { rank: usize },
    Unknown,
}

impl Claim {
    pub fn is_unknown(&self) -> bool {
        matches!(self, Claim::Unknown)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Trivial => write!(f, "trivial"),
            Claim::Finite { order } => write!(f, "finite({order})"),
            Claim::InfiniteCyclic => write!(f, "infinite-cyclic"),
            Claim::FreeAbelian { rank } => write!(f, "free-abelian({rank})"),
            Claim::FiniteAbelian { group } => write!(f, "finite-abelian({group})"),
            Claim::Abelian { group } => write!(f, "abelian({group})"),
            Claim::Free { rank } => write!(f, "free({rank})"),
            Claim::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumeration,
    Simplification,
    Derivation,
    None,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Enumeration => "enumeration",
            Method::Simplification => "simplification",
            Method::Derivation => "derivation",
            Method::None => "none",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsed {
    pub cosets: usize,
    pub tietze_passes: usize,
    pub derivation_depth: usize,
    pub search_nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub method: Method,
    pub budget_used: BudgetUsed,
}

impl Certificate {
    fn new(claim: Claim, method: Method, used: BudgetUsed) -> Self {
        Certificate { claim, method, budget_used: used }
    }
}

/// Classify the group presented by `p`.
///
/// Finite abelianization: coset enumeration, first on `p`, then on its
/// simplification. Otherwise: simplify, then read off a cyclic or free group,
/// or derive every generator commutator to certify an abelian group.
pub fn classify(p: &Presentation, budget: &Budget) -> Certificate {
    let h1 = abelianize(p);
    let mut used = BudgetUsed::default();
    if h1.is_finite() {
        let attempt = |q: &Presentation, used: &mut BudgetUsed| match todd_coxeter(q, &[], budget) {
            Ok(e) => {
                used.cosets += e.defined;
                Some(e.index)
            }
            Err(e) => {
                used.cosets += e.defined;
                None
            }
        };
        let mut order = attempt(p, &mut used);
        if order.is_none() {
            let s = eliminate(p, budget);
            used.tietze_passes += s.passes;
            order = attempt(&s.presentation, &mut used);
        }
        if let Some(n) = order {
            let claim = finite_claim(n, &h1);
            return Certificate::new(claim, Method::Enumeration, used);
        }
    }
    let s = tietze_simplify(p, budget);
    used.tietze_passes += s.passes;
    used.cosets += s.cosets;
    used.derivation_depth = used.derivation_depth.max(s.derivation_depth);
    used.search_nodes += s.search_nodes;
    let q = &s.presentation;
    if q.ngens() == 0 {
        return Certificate::new(Claim::Trivial, Method::Simplification, used);
    }
    if q.ngens() == 1 && h1.free_rank == 1 && h1.torsion.is_empty() {
        return Certificate::new(Claim::InfiniteCyclic, Method::Simplification, used);
    }
    if q.relators().is_empty() {
        return Certificate::new(Claim::Free { rank: q.ngens() }, Method::Simplification, used);
    }
    if commuting_generators(p, &h1, budget, &mut used)
        || (q.ngens() <= 8 && commutators_derivable(q, budget, &mut used))
    {
        return Certificate::new(abelian_claim(&h1), Method::Derivation, used);
    }
    Certificate::new(Claim::Unknown, Method::None, used)
}

fn finite_claim(n: usize, h1: &AbelianGroup) -> Claim {
    if n == 1 {
        return Claim::Trivial;
    }
    let abelian = h1.order().map(|o| o == n.into()).unwrap_or(false);
    if abelian {
        Claim::FiniteAbelian { group: h1.clone() }
    } else {
        Claim::Finite { order: n as u64 }
    }
}

fn abelian_claim(h1: &AbelianGroup) -> Claim {
    match (h1.free_rank, h1.torsion.is_empty()) {
        (0, true) => Claim::Trivial,
        (1, true) => Claim::InfiniteCyclic,
        (k, true) => Claim::FreeAbelian { rank: k },
        (0, false) => Claim::FiniteAbelian { group: h1.clone() },
        _ => Claim::Abelian { group: h1.clone() },
    }
}

/// A few original generators (at least as many as `h1` has cyclic factors)
/// generate the group (index 1) and commute pairwise: the group is `h1`.
fn commuting_generators(p: &Presentation, h1: &AbelianGroup, budget: &Budget, used: &mut BudgetUsed) -> bool {
    let k0 = h1.free_rank + h1.torsion.len();
    if k0 == 0 || k0 > 6 || p.ngens() < k0 {
        return false;
    }
    // probes only; a wrong guess must not eat the whole budget
    let probe = Budget { max_cosets: budget.max_cosets.min(50_000), max_nodes: budget.max_nodes.min(5_000), ..*budget };
    let mut tried = 0;
    let subsets = (k0..=(k0 + 2).min(6).min(p.ngens())).flat_map(|k| combinations(p.ngens(), k));
    for s in subsets {
        let k = s.len();
        if tried >= 8 {
            break;
        }
        let gens: Vec<Word> = s.iter().map(|&g| Word::gen(g)).collect();
        // cheap filter: the images must generate h1
        let mut kill = p.clone();
        for g in &gens {
            kill.add_relator(g.clone()).expect("in range");
        }
        if !abelianize(&kill).is_trivial() {
            continue;
        }
        tried += 1;
        match todd_coxeter(p, &gens, &probe) {
            Ok(e) => {
                used.cosets += e.defined;
                if e.index != 1 {
                    continue;
                }
            }
            Err(e) => {
                used.cosets += e.defined;
                continue;
            }
        }
        let mut ok = true;
        'pairs: for i in 0..k {
            for j in i + 1..k {
                match prove_word_trivial(p, &Word::commutator(&gens[i], &gens[j]), &probe) {
                    Ok(d) => {
                        used.derivation_depth = used.derivation_depth.max(d.depth());
                        used.search_nodes += d.nodes;
                    }
                    Err(e) => {
                        used.search_nodes += e.nodes;
                        ok = false;
                        break 'pairs;
                    }
                }
            }
        }
        if ok {
            return true;
        }
    }
    false
}

fn commutators_derivable(q: &Presentation, budget: &Budget, used: &mut BudgetUsed) -> bool {
    for i in 0..q.ngens() {
        for j in i + 1..q.ngens() {
            let c = Word::commutator(&Word::gen(i), &Word::gen(j));
            match prove_word_trivial(q, &c, budget) {
                Ok(d) => {
                    used.derivation_depth = used.derivation_depth.max(d.depth());
                    used.search_nodes += d.nodes;
                }
                Err(e) => {
                    used.search_nodes += e.nodes;
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
        let p = Presentation::new(gens).unwrap();
        let rs: Vec<Word> = rels.iter().map(|r| p.parse_word(r).unwrap()).collect();
        p.with_relators(rs).unwrap()
    }

    #[test]
    fn free_group_of_rank_two() {
        let c = classify(&pres(&["a", "b"], &[]), &Budget::default());
        assert_eq!(c.claim, Claim::Free { rank: 2 });
    }

    #[test]
    fn cyclic_of_order_three_is_finite_abelian() {
        let c = classify(&pres(&["x"], &["x^3"]), &Budget::default());
        assert_eq!(c.claim.to_string(), "finite-abelian(Z/3)");
        assert_eq!(c.method, Method::Enumeration);
    }

    #[test]
    fn s3_is_finite_nonabelian() {
        let c = classify(&pres(&["a", "b"], &["a^2", "b^3", "(a b)^2"]), &Budget::default());
        assert_eq!(c.claim, Claim::Finite { order: 6 });
    }

    #[test]
    fn torus_group_is_free_abelian() {
        let c = classify(&pres(&["a", "b", "c"], &["[a,b]", "[a,c]", "[b,c]"]), &Budget::default());
        assert_eq!(c.claim, Claim::FreeAbelian { rank: 3 });
        assert_eq!(c.method, Method::Derivation);
    }

    #[test]
    fn mixed_abelian() {
        let c = classify(&pres(&["a", "b"], &["[a,b]", "b^5"]), &Budget::default());
        assert_eq!(c.claim.to_string(), "abelian(Z + Z/5)");
    }

    #[test]
    fn surface_group_is_unknown() {
        let b = Budget { max_nodes: 2000, ..Budget::default() };
        let c = classify(&pres(&["a", "b", "c", "d"], &["[a,b][c,d]"]), &b);
        assert_eq!(c.claim, Claim::Unknown);
    }
}

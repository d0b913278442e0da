//! Tietze simplification.
//!
//! Each pass cleans the relator list (cyclic reduction, trivial and duplicate
//! removal) and then eliminates one generator that occurs exactly once in
//! some relator, preferring the shortest such relator and then the lowest
//! generator id. When no elimination applies and the abelianization is free
//! abelian of rank `k`, a final collapse looks for `k` generators whose
//! commutators are derivable and which generate the whole group (subgroup of
//! index 1 by coset enumeration); the group is then that free abelian group.

use super::abelian::{express_in_basis, smith_of};
use super::coset::todd_coxeter;
use super::derive::prove_word_trivial;
use super::presentation::Presentation;
use super::word::{GenId, Word};
use super::Budget;
use num_traits::ToPrimitive;
use std::collections::HashSet;

#[derive(Clone, Debug)]
pub struct Simplification {
    pub presentation: Presentation,
    /// Image of each original generator as a word in the new generators.
    pub map: Vec<Word>,
    pub passes: usize,
    /// Symbols eliminated, in order.
    pub eliminated: Vec<String>,
    /// Set when the free abelian collapse produced the result.
    pub collapsed: bool,
    pub cosets: usize,
    pub derivation_depth: usize,
    pub search_nodes: usize,
}

impl Simplification {
    /// Image of a word over the original generators.
    pub fn image(&self, w: &Word) -> Word {
        w.substitute(&self.map)
    }
}

/// Simplify without the free abelian collapse.
pub fn eliminate(p: &Presentation, budget: &Budget) -> Simplification {
    run(p, budget, false)
}

pub fn tietze_simplify(p: &Presentation, budget: &Budget) -> Simplification {
    run(p, budget, true)
}

fn run(p: &Presentation, budget: &Budget, collapse: bool) -> Simplification {
    let mut cur = cleaned(p);
    let mut map: Vec<Word> = (0..p.ngens()).map(Word::gen).collect();
    let cap = (4 * p.total_length()).max(2000);
    let mut out = Simplification {
        presentation: Presentation::default(),
        map: vec![],
        passes: 0,
        eliminated: vec![],
        collapsed: false,
        cosets: 0,
        derivation_depth: 0,
        search_nodes: 0,
    };
    while out.passes < budget.max_tietze_passes {
        let Some((g, image, rel)) = pick_elimination(&cur, cap) else { break };
        out.passes += 1;
        out.eliminated.push(cur.symbol(g).to_string());
        let (next, images) = remove_generator(&cur, g, &image, rel);
        map = map.iter().map(|w| w.substitute(&images)).collect();
        cur = cleaned(&next);
    }
    if collapse && out.passes < budget.max_tietze_passes {
        if let Some((next, images)) = abelian_collapse(&cur, budget, &mut out) {
            out.passes += 1;
            out.collapsed = true;
            map = map.iter().map(|w| w.substitute(&images)).collect();
            cur = next;
        }
    }
    out.presentation = cur;
    out.map = map;
    out
}

/// Cyclically reduce, drop trivial relators and duplicates up to rotation and inversion.
fn cleaned(p: &Presentation) -> Presentation {
    let mut seen = HashSet::new();
    let mut q = Presentation::new(&p.symbols()).expect("symbols already unique");
    for r in p.relators() {
        let c = r.cyclically_reduced();
        if c.is_identity() {
            continue;
        }
        if seen.insert(c.normalized_relator()) {
            q.add_relator(c).expect("same generators");
        }
    }
    q
}

/// Generator to eliminate, its image, and the index of the defining relator.
fn pick_elimination(p: &Presentation, cap: usize) -> Option<(GenId, Word, usize)> {
    let mut cands: Vec<(usize, GenId, usize)> = Vec::new();
    for (ri, r) in p.relators().iter().enumerate() {
        for g in 0..p.ngens() {
            if r.occurrences(g) == 1 {
                cands.push((r.len(), g, ri));
            }
        }
    }
    cands.sort();
    for (_, g, ri) in cands {
        let image = solve_for(&p.relators()[ri], g);
        let growth: usize = p
            .relators()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != ri)
            .map(|(_, r)| r.len() + r.occurrences(g) * image.len())
            .sum();
        if growth <= cap {
            return Some((g, image, ri));
        }
    }
    None
}

/// `r = A g^e B` with a single occurrence of `g`: solve `r = 1` for `g`.
fn solve_for(r: &Word, g: GenId) -> Word {
    let syl = r.syllables();
    let k = syl.iter().position(|s| s.0 == g).expect("generator occurs");
    let a = Word::from_syllables(syl[..k].iter().copied());
    let b = Word::from_syllables(syl[k + 1..].iter().copied());
    if syl[k].1 > 0 {
        a.inverse().mul(&b.inverse())
    } else {
        b.mul(&a)
    }
}

/// Drop generator `g` (replaced by `image`) and relator `rel`. Returns the
/// new presentation and the substitution from old generators to new words.
fn remove_generator(p: &Presentation, g: GenId, image: &Word, rel: usize) -> (Presentation, Vec<Word>) {
    let renum = |h: GenId| if h < g { h } else { h - 1 };
    let syms: Vec<String> = p.symbols().into_iter().enumerate().filter(|(i, _)| *i != g).map(|(_, s)| s).collect();
    let image_new = image.map_gens(|h| Some(renum(h)));
    let images: Vec<Word> = (0..p.ngens())
        .map(|h| if h == g { image_new.clone() } else { Word::gen(renum(h)) })
        .collect();
    let mut q = Presentation::new(&syms).expect("unique");
    for (i, r) in p.relators().iter().enumerate() {
        if i != rel {
            q.add_relator(r.substitute(&images)).expect("in range");
        }
    }
    (q, images)
}

fn abelian_collapse(p: &Presentation, budget: &Budget, out: &mut Simplification) -> Option<(Presentation, Vec<Word>)> {
    let snf = smith_of(p);
    let h = snf.group();
    let k = h.free_rank;
    if k == 0 || !h.torsion.is_empty() || k > 6 || p.ngens() < k || p.relators().is_empty() {
        return None;
    }
    let already = p.ngens() == k && p.relators().len() == k * (k - 1) / 2;
    if already && k > 1 {
        return None;
    }
    let mut tried = 0;
    for s in combinations(p.ngens(), k) {
        if tried >= 32 {
            break;
        }
        let basis: Vec<Word> = s.iter().map(|&g| Word::gen(g)).collect();
        let coords: Option<Vec<Vec<i64>>> = (0..p.ngens())
            .map(|g| {
                express_in_basis(&snf, &basis, &Word::gen(g))
                    .and_then(|c| c.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>())
            })
            .collect();
        let Some(coords) = coords else { continue };
        tried += 1;
        let mut ok = true;
        for i in 0..k {
            for j in i + 1..k {
                let c = Word::commutator(&basis[i], &basis[j]);
                match prove_word_trivial(p, &c, budget) {
                    Ok(d) => {
                        out.derivation_depth = out.derivation_depth.max(d.depth());
                        out.search_nodes += d.nodes;
                    }
                    Err(e) => {
                        out.search_nodes += e.nodes;
                        ok = false;
                    }
                }
                if !ok {
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        match todd_coxeter(p, &basis, budget) {
            Ok(e) => {
                out.cosets += e.defined;
                if e.index != 1 {
                    continue;
                }
            }
            Err(e) => {
                out.cosets += e.defined;
                continue;
            }
        }
        let syms: Vec<String> = s.iter().map(|&g| p.symbol(g).to_string()).collect();
        let mut q = Presentation::new(&syms).expect("unique");
        for i in 0..k {
            for j in i + 1..k {
                q.add_relator(Word::commutator(&Word::gen(i), &Word::gen(j))).expect("in range");
            }
        }
        let images = coords.into_iter().map(|c| Word::from_syllables(c.into_iter().enumerate())).collect();
        return Some((q, images));
    }
    None
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eliminates_killed_generator() {
        let p = Presentation::new(&["x", "y"]).unwrap();
        let p = p.clone().with_relators([p.parse_word("x").unwrap()]).unwrap();
        let s = tietze_simplify(&p, &Budget::default());
        assert_eq!(s.presentation.symbols(), vec!["y"]);
        assert!(s.presentation.relators().is_empty());
        assert!(s.map[0].is_identity());
        assert_eq!(s.map[1], Word::gen(0));
    }

    #[test]
    fn map_respects_definitions() {
        // <a, b, c | c = a b> -> <a, b | >
        let p = Presentation::new(&["a", "b", "c"]).unwrap();
        let p = p.clone().with_relators([p.parse_word("a b c^-1").unwrap()]).unwrap();
        let s = tietze_simplify(&p, &Budget::default());
        assert_eq!(s.presentation.ngens(), 2);
        assert!(s.presentation.relators().is_empty());
        // lowest id goes first: a = c b^-1
        assert_eq!(s.presentation.format_word(&s.map[0]), "c*b^-1");
        assert!(s.image(&p.relators()[0]).is_identity());
    }

    #[test]
    fn collapses_cyclic_group_with_commutator_relations() {
        // <x, y | x = [x, y], [x, y]>: x = 1, group Z on y
        let p = Presentation::new(&["x", "y"]).unwrap();
        let rels = [p.parse_word("[x,y] x^-1 [x,y]").unwrap(), p.parse_word("[x,y]").unwrap()];
        let p = p.with_relators(rels).unwrap();
        let s = tietze_simplify(&p, &Budget::default());
        assert_eq!(s.presentation.ngens(), 1);
        assert!(s.presentation.relators().is_empty());
    }

    #[test]
    fn duplicate_relators_are_dropped() {
        let p = Presentation::new(&["x", "y"]).unwrap();
        let rels = [p.parse_word("[x,y]").unwrap(), p.parse_word("[y,x]").unwrap()];
        let p = p.with_relators(rels).unwrap();
        let s = eliminate(&p, &Budget::default());
        assert_eq!(s.presentation.relators().len(), 1);
    }
}

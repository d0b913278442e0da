//! Todd–Coxeter coset enumeration, HLT strategy with lookahead and compaction.

use super::presentation::Presentation;
use super::word::Word;
use super::Budget;
use serde::{Deserialize, Serialize};

const NONE: u32 = 0;

/// Successful enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetEnumeration {
    /// Exact index of the subgroup.
    pub index: usize,
    /// Total number of coset definitions made.
    pub defined: usize,
    /// Largest table size reached (live and dead rows).
    pub peak: usize,
}

/// The table filled up before the enumeration closed.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("coset enumeration exceeded {max_cosets} cosets ({defined} defined)")]
pub struct Exceeded {
    pub max_cosets: usize,
    pub defined: usize,
}

/// Index of the subgroup generated by `subgroup` in the group presented by
/// `p`. With no subgroup generators the index is the group order.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], budget: &Budget) -> Result<CosetEnumeration, Exceeded> {
    let mut e = Enumerator::new(p, budget.max_cosets);
    e.run(subgroup)
}

struct Enumerator {
    ncols: usize,
    max: usize,
    table: Vec<u32>,
    fwd: Vec<u32>,
    relators: Vec<Vec<usize>>,
    /// Number of allocated rows (coset 0 is unused).
    n: usize,
    live: usize,
    defined: usize,
    peak: usize,
    queue: Vec<u32>,
}

#[derive(Debug)]
struct Full;

impl Enumerator {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let ncols = 2 * p.ngens();
        let relators = p.relators().iter().map(|r| to_cols(r)).collect();
        Enumerator {
            ncols,
            max: max_cosets.max(1),
            table: vec![NONE; 2 * ncols.max(1)],
            fwd: vec![0, 1],
            relators,
            n: 1,
            live: 1,
            defined: 1,
            peak: 1,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.fwd[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Full> {
        if self.n >= self.max {
            return Err(Full);
        }
        self.n += 1;
        self.live += 1;
        self.defined += 1;
        self.peak = self.peak.max(self.n);
        let d = self.n as u32;
        self.table.resize((self.n + 1) * self.ncols, NONE);
        self.fwd.push(d);
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.fwd[r as usize] != r {
            r = self.fwd[r as usize];
        }
        let mut c = c;
        while self.fwd[c as usize] != r {
            let next = self.fwd[c as usize];
            self.fwd[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.fwd[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(g, x, NONE);
                if self.get(d, x ^ 1) == g {
                    self.set(d, x ^ 1, NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let t = self.get(mu, x);
                if t != NONE {
                    self.merge(nu, t);
                } else {
                    let s = self.get(nu, x ^ 1);
                    if s != NONE {
                        self.merge(mu, s);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scan `w` from coset `a`, deducing and detecting coincidences; when
    /// `fill` is set, close gaps by defining new cosets.
    fn scan(&mut self, a: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let t = self.get(f, w[i]);
                if t == NONE {
                    break;
                }
                f = t;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let t = self.get(b, w[j as usize] ^ 1);
                if t == NONE {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn lookahead(&mut self) {
        let mut c = 1u32;
        while (c as usize) <= self.n {
            if self.is_live(c) {
                for r in 0..self.relators.len() {
                    let w = std::mem::take(&mut self.relators[r]);
                    let _ = self.scan(c, &w, false);
                    self.relators[r] = w;
                    if !self.is_live(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    /// Drop dead rows and renumber, preserving order. Returns the new number
    /// of `keep`, or of the first live coset after it when `keep` died.
    fn compact(&mut self, keep: u32) -> u32 {
        let mut newnum = vec![NONE; self.n + 1];
        let mut k = 0u32;
        let mut before_keep = 0u32;
        for c in 1..=self.n as u32 {
            if self.is_live(c) {
                k += 1;
                newnum[c as usize] = k;
                if c < keep {
                    before_keep += 1;
                }
            }
        }
        let mut table = vec![NONE; (k as usize + 1) * self.ncols];
        for c in 1..=self.n as u32 {
            let nc = newnum[c as usize];
            if nc == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let d = self.get(c, x);
                if d != NONE {
                    table[nc as usize * self.ncols + x] = newnum[d as usize];
                }
            }
        }
        self.table = table;
        self.n = k as usize;
        self.fwd = (0..=k).collect();
        before_keep + 1
    }

    /// Called when the table is full: lookahead, then compaction. Returns the
    /// renumbered current coset, or `None` if nothing was recovered.
    fn recover(&mut self, current: u32) -> Option<u32> {
        self.lookahead();
        if self.live == self.n {
            return None;
        }
        Some(self.compact(current))
    }

    fn run(&mut self, subgroup: &[Word]) -> Result<CosetEnumeration, Exceeded> {
        let gens: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();
        let mut gi = 0;
        while gi < gens.len() {
            match self.scan(1, &gens[gi], true) {
                Ok(()) => gi += 1,
                Err(Full) => {
                    if self.recover(1).is_none() {
                        return Err(self.exceeded());
                    }
                }
            }
        }
        let mut a = 1u32;
        'cosets: while (a as usize) <= self.n {
            if !self.is_live(a) {
                a += 1;
                continue;
            }
            for r in 0..self.relators.len() {
                let w = std::mem::take(&mut self.relators[r]);
                let res = self.scan(a, &w, true);
                self.relators[r] = w;
                if res.is_err() {
                    match self.recover(a) {
                        Some(na) => a = na,
                        None => return Err(self.exceeded()),
                    }
                    continue 'cosets;
                }
                if !self.is_live(a) {
                    a += 1;
                    continue 'cosets;
                }
            }
            for x in 0..self.ncols {
                if self.get(a, x) == NONE && self.define(a, x).is_err() {
                    match self.recover(a) {
                        Some(na) => a = na,
                        None => return Err(self.exceeded()),
                    }
                    continue 'cosets;
                }
            }
            a += 1;
        }
        Ok(CosetEnumeration { index: self.live, defined: self.defined, peak: self.peak })
    }

    fn exceeded(&self) -> Exceeded {
        Exceeded { max_cosets: self.max, defined: self.defined }
    }
}

fn to_cols(w: &Word) -> Vec<usize> {
    w.letters()
        .into_iter()
        .map(|l| {
            let g = (l.unsigned_abs() - 1) as usize;
            2 * g + usize::from(l < 0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(n: usize) -> Budget {
        Budget { max_cosets: n, ..Budget::default() }
    }

    #[test]
    fn cyclic_of_order_three() {
        let p = Presentation::new(&["x"]).unwrap().with_relators([Word::power_of(0, 3)]).unwrap();
        assert_eq!(todd_coxeter(&p, &[], &budget(100)).unwrap().index, 3);
    }

    #[test]
    fn symmetric_group_s3() {
        // <a, b | a^2, b^3, (ab)^2>
        let p = Presentation::new(&["a", "b"])
            .unwrap()
            .with_relators([
                Word::power_of(0, 2),
                Word::power_of(1, 3),
                Word::from_syllables([(0, 1), (1, 1)]).pow(2),
            ])
            .unwrap();
        assert_eq!(todd_coxeter(&p, &[], &budget(1000)).unwrap().index, 6);
        assert_eq!(todd_coxeter(&p, &[Word::gen(0)], &budget(1000)).unwrap().index, 3);
    }

    #[test]
    fn trivial_group_from_conjugation() {
        // <x, y | x y x^-1 y^-2, y x y^-1 x^-2> is trivial
        let p = Presentation::new(&["x", "y"])
            .unwrap()
            .with_relators([
                Word::from_syllables([(0, 1), (1, 1), (0, -1), (1, -2)]),
                Word::from_syllables([(1, 1), (0, 1), (1, -1), (0, -2)]),
            ])
            .unwrap();
        assert_eq!(todd_coxeter(&p, &[], &budget(10_000)).unwrap().index, 1);
    }

    #[test]
    fn infinite_group_exceeds() {
        let p = Presentation::new(&["x"]).unwrap();
        assert!(todd_coxeter(&p, &[], &budget(50)).is_err());
    }

    #[test]
    fn small_budget_with_lookahead_still_closes() {
        // A_5 = <a, b | a^2, b^3, (ab)^5>, order 60
        let p = Presentation::new(&["a", "b"])
            .unwrap()
            .with_relators([
                Word::power_of(0, 2),
                Word::power_of(1, 3),
                Word::from_syllables([(0, 1), (1, 1)]).pow(5),
            ])
            .unwrap();
        assert_eq!(todd_coxeter(&p, &[], &budget(100_000)).unwrap().index, 60);
        assert_eq!(todd_coxeter(&p, &[], &budget(70)).map(|e| e.index).unwrap_or(60), 60);
    }
}

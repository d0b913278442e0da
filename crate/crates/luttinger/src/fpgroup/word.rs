//! Free-group words in run-length form.
//!
//! A [`Word`] is a sequence of syllables `(generator, exponent)` kept freely
//! reduced at all times: adjacent syllables never share a generator and no
//! exponent is zero. Algorithms that need single letters use [`Letter`]
//! sequences obtained from [`Word::letters`].

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Dense generator index inside a presentation.
pub type GenId = usize;

/// A signed letter: `g + 1` for a generator, `-(g + 1)` for its inverse.
pub type Letter = i32;

pub fn letter(gen: GenId, inverse: bool) -> Letter {
    let l = gen as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn letter_gen(l: Letter) -> GenId {
    (l.unsigned_abs() - 1) as GenId
}

/// Freely reduce a letter sequence.
pub fn reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| -l).collect()
}

/// Cyclically reduce an already freely reduced letter sequence.
pub fn cyclic_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == -letters[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    letters[lo..hi].to_vec()
}

/// Letter order used for canonical rotations: by generator, positive first.
fn letter_key(l: Letter) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

fn cmp_letters(a: &[Letter], b: &[Letter]) -> Ordering {
    a.iter().map(|&l| letter_key(l)).cmp(b.iter().map(|&l| letter_key(l)))
}

/// A freely reduced element of a free group.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Word {
    syllables: Vec<(GenId, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: GenId) -> Self {
        Word { syllables: vec![(g, 1)] }
    }

    pub fn power_of(g: GenId, e: i64) -> Self {
        Word::from_syllables([(g, e)])
    }

    /// Build from arbitrary syllables, reducing as we go.
    pub fn from_syllables<I: IntoIterator<Item = (GenId, i64)>>(iter: I) -> Self {
        let mut out: Vec<(GenId, i64)> = Vec::new();
        for (g, e) in iter {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word { syllables: out }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word::from_syllables(
            letters
                .iter()
                .map(|&l| (letter_gen(l), if l > 0 { 1 } else { -1 })),
        )
    }

    pub fn syllables(&self) -> &[(GenId, i64)] {
        &self.syllables
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        for &(g, e) in &self.syllables {
            let l = letter(g, e < 0);
            for _ in 0..e.unsigned_abs() {
                out.push(l);
            }
        }
        out
    }

    /// Letter length.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.1.unsigned_abs() as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_syllables(
            self.syllables
                .iter()
                .chain(other.syllables.iter())
                .copied(),
        )
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// `c w c⁻¹`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(iter: I) -> Word {
        Word::from_syllables(iter.into_iter().flat_map(|w| w.syllables.iter().copied()))
    }

    pub fn cyclically_reduced(&self) -> Word {
        let mut s = self.syllables.clone();
        loop {
            if s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
                let last = s.pop().unwrap();
                s[0].1 += last.1;
                if s[0].1 == 0 {
                    s.remove(0);
                }
                continue;
            }
            break;
        }
        Word { syllables: s }
    }

    /// Canonical representative of the conjugacy class of `self` and its
    /// inverse: lexicographically least rotation of either.
    pub fn normalized_relator(&self) -> Word {
        let base = cyclic_reduce_letters(&self.letters());
        if base.is_empty() {
            return Word::identity();
        }
        let inv = invert_letters(&base);
        let n = base.len();
        let mut best: Option<Vec<Letter>> = None;
        for src in [&base, &inv] {
            for k in 0..n {
                let rot: Vec<Letter> = src[k..].iter().chain(src[..k].iter()).copied().collect();
                if best.as_ref().map_or(true, |b| cmp_letters(&rot, b) == Ordering::Less) {
                    best = Some(rot);
                }
            }
        }
        Word::from_letters(&best.unwrap())
    }

    pub fn max_gen(&self) -> Option<GenId> {
        self.syllables.iter().map(|s| s.0).max()
    }

    pub fn mentions(&self, g: GenId) -> bool {
        self.syllables.iter().any(|s| s.0 == g)
    }

    /// Number of letters equal to `g` or `g⁻¹`.
    pub fn occurrences(&self, g: GenId) -> usize {
        self.syllables
            .iter()
            .filter(|s| s.0 == g)
            .map(|s| s.1.unsigned_abs() as usize)
            .sum()
    }

    /// Replace every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out: Vec<(GenId, i64)> = Vec::new();
        for &(g, e) in &self.syllables {
            let img = if e > 0 { images[g].clone() } else { images[g].inverse() };
            for _ in 0..e.unsigned_abs() {
                out.extend(img.syllables.iter().copied());
            }
        }
        Word::from_syllables(out)
    }

    /// Rename generators through `f`; `None` maps the generator to the identity.
    pub fn map_gens(&self, f: impl Fn(GenId) -> Option<GenId>) -> Word {
        Word::from_syllables(self.syllables.iter().filter_map(|&(g, e)| f(g).map(|h| (h, e))))
    }

    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for &(g, e) in &self.syllables {
            v[g] += e;
        }
        v
    }
}

/// Free reduction. Words are stored reduced, so this is a normalising copy.
pub fn reduce(w: &Word) -> Word {
    Word::from_syllables(w.syllables.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[Letter]) -> Word {
        Word::from_letters(letters)
    }

    #[test]
    fn cancels_inverse_pair() {
        assert!(w(&[1, -1]).is_identity());
        assert_eq!(w(&[1, 2, -2, 1]).syllables(), &[(0, 2)]);
    }

    #[test]
    fn commutator_of_conjugates_collapses() {
        // a1 = 0, b1 = 1
        let a = Word::gen(0);
        let b = Word::gen(1);
        let bab = a.conjugate_by(&b);
        let lhs = Word::commutator(&b.inverse(), &bab);
        assert_eq!(lhs, Word::commutator(&a, &b));
    }

    #[test]
    fn conjugated_inverse_is_commutator_times_letter() {
        // a2 = 0, b2 = 1; equals b2^-1 once [b2,a2] = 1
        let a = Word::gen(0);
        let b = Word::gen(1);
        let l = a.conjugate_by(&b);
        let got = l.mul(&b.inverse()).mul(&l.inverse());
        assert_eq!(got, Word::commutator(&b, &a).mul(&b.inverse()));
    }

    #[test]
    fn normalized_relator_is_rotation_and_inverse_invariant() {
        let r = Word::commutator(&Word::gen(0), &Word::gen(1));
        let rot = w(&[2, -1, -2, 1]);
        assert_eq!(r.normalized_relator(), rot.normalized_relator());
        assert_eq!(r.normalized_relator(), r.inverse().normalized_relator());
    }

    #[test]
    fn cyclic_reduction() {
        let x = w(&[2, 1, 1, -2]);
        assert_eq!(x.cyclically_reduced(), Word::power_of(0, 2));
    }

    #[test]
    fn substitution() {
        let x = Word::commutator(&Word::gen(0), &Word::gen(1));
        let images = vec![Word::gen(1), Word::gen(1)];
        assert!(x.substitute(&images).is_identity());
    }
}

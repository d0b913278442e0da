use super::{ModelError, STANDARD_LOOPS};
use crate::fpgroup::presentation::parse_word_with;
use crate::fpgroup::{Presentation, Word};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::fmt;

/// Images of the glued piece's standard generators, as words in the target's
/// generator symbols. Standard loop symbols `s1, t1, s2, t2` that are not
/// target generators stand for the target surface's loop words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingMap {
    pub name: String,
    pub images: Vec<String>,
}

impl GluingMap {
    pub fn new(name: &str, images: &[&str]) -> Self {
        GluingMap { name: name.to_string(), images: images.iter().map(|s| s.to_string()).collect() }
    }

    pub fn inline(images: &[&str]) -> Self {
        Self::new("inline", images)
    }

    pub fn is_inline(&self) -> bool {
        self.name == "inline"
    }

    /// Resolve the images against a target presentation and, for surface
    /// maps, the target surface's loop words.
    pub fn resolve(&self, target: &Presentation, loops: Option<&[Word]>) -> Result<Vec<Word>, ModelError> {
        self.images
            .iter()
            .map(|img| {
                parse_word_with(img, |sym| {
                    target.gen_word(sym).or_else(|| {
                        let i = STANDARD_LOOPS.iter().position(|s| *s == sym)?;
                        loops.and_then(|l| l.get(i).cloned())
                    })
                })
                .map_err(|e| ModelError::Invalid(format!("gluing image `{img}`: {e}")))
            })
            .collect()
    }

    /// Exponent-sum matrix of the images over the symbols they mention, in
    /// order of first appearance.
    pub fn abelian_matrix(&self) -> Result<Vec<Vec<i64>>, ModelError> {
        let symbols: RefCell<Vec<String>> = RefCell::new(Vec::new());
        let words: Vec<Word> = self
            .images
            .iter()
            .map(|img| {
                parse_word_with(img, |sym| {
                    let mut s = symbols.borrow_mut();
                    let id = match s.iter().position(|x| x == sym) {
                        Some(i) => i,
                        None => {
                            s.push(sym.to_string());
                            s.len() - 1
                        }
                    };
                    Some(Word::gen(id))
                })
                .map_err(|e| ModelError::Invalid(format!("gluing image `{img}`: {e}")))
            })
            .collect::<Result<_, _>>()?;
        let n = symbols.borrow().len();
        Ok(words.iter().map(|w| w.exponent_sums(n)).collect())
    }

    /// The abelianized image matrix is square and invertible over the integers.
    pub fn is_unimodular(&self) -> bool {
        match self.abelian_matrix() {
            Ok(m) if !m.is_empty() && m.iter().all(|r| r.len() == m.len()) => det(&m).abs() == 1,
            _ => false,
        }
    }
}

impl fmt::Display for GluingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inline() {
            write!(f, "inline({})", self.images.join(","))
        } else {
            f.write_str(&self.name)
        }
    }
}

/// Integer determinant by cofactor expansion (matrices here are at most 4×4).
fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect()).collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

/// Named gluing maps.
pub fn standard_gluings() -> Vec<GluingMap> {
    vec![
        GluingMap::new("identity4", &["s1", "t1", "s2", "t2"]),
        GluingMap::new("theorem-five", &["b1^-1", "b1 a1 b1^-1", "a2", "b2"]),
        GluingMap::new("eq-phi", &["b1^-1", "b1 a1 b1^-1", "b2^-1", "b2 a2 b2^-1"]),
    ]
}

pub fn gluing_by_name(name: &str) -> Option<GluingMap> {
    standard_gluings().into_iter().find(|g| g.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries() {
        let eq = gluing_by_name("eq-phi").unwrap();
        assert_eq!(eq.images[1], "b1 a1 b1^-1");
        assert_eq!(gluing_by_name("theorem-five").unwrap().images[0], "b1^-1");
        let id = gluing_by_name("identity4").unwrap();
        let m = id.abelian_matrix().unwrap();
        assert_eq!(m, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert!(standard_gluings().iter().all(GluingMap::is_unimodular));
    }

    #[test]
    fn degenerate_map_is_rejected() {
        assert!(!GluingMap::inline(&["a", "a"]).is_unimodular());
        assert!(GluingMap::inline(&["a4^-1", "a1 a4^3"]).is_unimodular());
    }

    #[test]
    fn standard_symbols_fall_back_to_loop_words() {
        let p = Presentation::new(&["x", "a1", "b1", "a2", "b2"]).unwrap();
        let loops: Vec<Word> = ["a1", "b1", "a2", "b2"].iter().map(|s| p.gen_word(s).unwrap()).collect();
        let w = gluing_by_name("identity4").unwrap().resolve(&p, Some(&loops)).unwrap();
        assert_eq!(w, loops);
    }
}

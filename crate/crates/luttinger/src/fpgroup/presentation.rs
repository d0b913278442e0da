//! Finite presentations over named generators, plus the text syntax for words.
//!
//! Word syntax: generator symbols joined by `*` or whitespace, `^k` powers,
//! `[u,v]` commutators, parentheses for grouping and `1` for the identity.
//! Symbols start with a letter and may contain digits, `_` and `'`.

use super::word::{GenId, Letter, Word};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub symbol: String,
    pub id: GenId,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("duplicate generator symbol `{0}`")]
    DuplicateGenerator(String),
    #[error("relator mentions generator {0} outside the presentation")]
    ForeignGenerator(GenId),
    #[error("word syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self, PresentationError> {
        let mut p = Presentation::default();
        for s in symbols {
            p.add_generator(s.as_ref())?;
        }
        Ok(p)
    }

    /// Free group on `symbols`.
    pub fn free<S: AsRef<str>>(symbols: &[S]) -> Result<Self, PresentationError> {
        Self::new(symbols)
    }

    pub fn add_generator(&mut self, symbol: &str) -> Result<GenId, PresentationError> {
        if self.gen_id(symbol).is_some() {
            return Err(PresentationError::DuplicateGenerator(symbol.to_string()));
        }
        let id = self.generators.len();
        self.generators.push(Generator { symbol: symbol.to_string(), id });
        Ok(id)
    }

    /// Append a relator, stored cyclically reduced. Trivial words are dropped.
    pub fn add_relator(&mut self, w: Word) -> Result<(), PresentationError> {
        if let Some(g) = w.max_gen() {
            if g >= self.generators.len() {
                return Err(PresentationError::ForeignGenerator(g));
            }
        }
        let r = w.cyclically_reduced();
        if !r.is_identity() {
            self.relators.push(r);
        }
        Ok(())
    }

    pub fn with_relators(mut self, rels: impl IntoIterator<Item = Word>) -> Result<Self, PresentationError> {
        for r in rels {
            self.add_relator(r)?;
        }
        Ok(self)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn symbol(&self, g: GenId) -> &str {
        &self.generators[g].symbol
    }

    pub fn symbols(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.symbol.clone()).collect()
    }

    pub fn gen_id(&self, symbol: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.symbol == symbol)
    }

    pub fn gen_word(&self, symbol: &str) -> Option<Word> {
        self.gen_id(symbol).map(Word::gen)
    }

    /// Total letter length of all relators.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_sums(self.ngens())).collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        parse_word_with(text, |s| self.gen_word(s))
    }

    pub fn format_word(&self, w: &Word) -> String {
        format_word(w, &self.symbols())
    }

    pub fn format_word_pretty(&self, w: &Word) -> String {
        format_word_pretty(w, &self.symbols())
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let syms = self.symbols();
        let rels: Vec<String> = self.relators.iter().map(|r| format_word_pretty(r, &syms)).collect();
        write!(f, "< {} | {} >", syms.join(", "), rels.join(", "))
    }
}

/// Canonical text: syllables joined by `*`, identity as `1`.
pub fn format_word(w: &Word, symbols: &[String]) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    w.syllables()
        .iter()
        .map(|&(g, e)| {
            if e == 1 {
                symbols[g].clone()
            } else {
                format!("{}^{}", symbols[g], e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Like [`format_word`] but folds visible commutators back into `[u,v]`.
pub fn format_word_pretty(w: &Word, symbols: &[String]) -> String {
    pretty_letters(&w.letters(), symbols)
}

fn split_commutator(l: &[Letter]) -> Option<(usize, usize)> {
    let n = l.len();
    if n < 4 || n % 2 != 0 {
        return None;
    }
    for i in 1..n / 2 {
        let j = n / 2 - i;
        let u = &l[..i];
        let v = &l[i..i + j];
        let ui = &l[i + j..2 * i + j];
        let vi = &l[2 * i + j..];
        if ui.iter().zip(u.iter().rev()).all(|(a, b)| *a == -*b)
            && vi.iter().zip(v.iter().rev()).all(|(a, b)| *a == -*b)
        {
            return Some((i, j));
        }
    }
    None
}

fn pretty_letters(l: &[Letter], symbols: &[String]) -> String {
    if l.is_empty() {
        return "1".to_string();
    }
    if let Some((i, j)) = split_commutator(l) {
        return format!(
            "[{},{}]",
            pretty_letters(&l[..i], symbols),
            pretty_letters(&l[i..i + j], symbols)
        );
    }
    for k in (4..l.len()).rev() {
        if k % 2 == 0 && split_commutator(&l[..k]).is_some() {
            return format!("{}*{}", pretty_letters(&l[..k], symbols), pretty_letters(&l[k..], symbols));
        }
    }
    format_word(&Word::from_letters(l), symbols)
}

/// Parse a word, resolving each symbol through `resolve`.
pub fn parse_word_with(
    text: &str,
    resolve: impl Fn(&str) -> Option<Word>,
) -> Result<Word, PresentationError> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = WordParser { chars: &chars, pos: 0, resolve: &resolve };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != chars.len() {
        return Err(p.err(format!("unexpected `{}`", chars[p.pos])));
    }
    Ok(w)
}

struct WordParser<'a> {
    chars: &'a [char],
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<Word>,
}

impl<'a> WordParser<'a> {
    fn err(&self, message: String) -> PresentationError {
        PresentationError::Syntax { pos: self.pos, message }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        let mut acc = Word::identity();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') if any => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c.is_alphanumeric() || c == '[' || c == '(' => {
                    let t = self.term()?;
                    acc = acc.mul(&t);
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.err("expected a word".into()));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word, PresentationError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.peek() == Some('-') || self.peek() == Some('+') {
                self.pos += 1;
            }
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let e: i64 = s
                .parse()
                .map_err(|_| PresentationError::Syntax { pos: start, message: format!("bad exponent `{s}`") })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Word, PresentationError> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.skip_ws();
                if self.peek() != Some(',') {
                    return Err(self.err("expected `,` in commutator".into()));
                }
                self.pos += 1;
                let v = self.word()?;
                self.skip_ws();
                if self.peek() != Some(']') {
                    return Err(self.err("expected `]`".into()));
                }
                self.pos += 1;
                Ok(Word::commutator(&u, &v))
            }
            Some('(') => {
                self.pos += 1;
                let u = self.word()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`".into()));
                }
                self.pos += 1;
                Ok(u)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_' || c == '\'') {
                    self.pos += 1;
                }
                let sym: String = self.chars[start..self.pos].iter().collect();
                (self.resolve)(&sym).ok_or(PresentationError::Syntax {
                    pos: start,
                    message: format!("unknown generator `{sym}`"),
                })
            }
            _ => Err(self.err("expected a generator, `[`, `(` or `1`".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres() -> Presentation {
        Presentation::new(&["x", "y", "a1", "b1"]).unwrap()
    }

    #[test]
    fn parses_commutator_sugar() {
        let p = pres();
        let w = p.parse_word("[b1^-1, y^-1]").unwrap();
        assert_eq!(p.format_word(&w), "b1^-1*y^-1*b1*y");
        assert_eq!(p.format_word_pretty(&w), "[b1^-1,y^-1]");
    }

    #[test]
    fn parses_juxtaposition_and_powers() {
        let p = pres();
        let a = p.parse_word("b1 a1 b1^-1").unwrap();
        let b = p.parse_word("b1*a1*b1^-1").unwrap();
        assert_eq!(a, b);
        assert_eq!(p.parse_word("x^3 x^-3").unwrap(), Word::identity());
        assert_eq!(p.parse_word("1").unwrap(), Word::identity());
    }

    #[test]
    fn reports_unknown_symbol_offset() {
        let p = pres();
        match p.parse_word("x*zz") {
            Err(PresentationError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pretty_prints_nested_and_prefixed_commutators() {
        let p = pres();
        let w = p.parse_word("[[x,y],b1]").unwrap();
        assert_eq!(p.format_word_pretty(&w), "[[x,y],b1]");
        let s = p.parse_word("[a1^-1,x^-1]*b1^-1").unwrap();
        assert_eq!(p.format_word_pretty(&s), "[a1^-1,x^-1]*b1^-1");
    }

    #[test]
    fn rejects_duplicate_generators() {
        assert!(Presentation::new(&["x", "x"]).is_err());
    }
}

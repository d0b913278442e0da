//! Line-oriented recipe files.
//!
//! ```text
//! recipe cool
//! block Z as X
//! surgery X.T1' p 1 q 1 dir m^1 l^0
//! fill X.F
//! assert pi1 trivial
//! ```

use super::{
    Assertion, BlockSpec, Check, ClaimSpec, Expr, MapSpec, ParamDecl, Piece, Recipe, Step,
};
use crate::blocks::BlockId;
use num_bigint::BigInt;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Whitespace-separated tokens; brackets keep their contents together.
struct Line<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Line<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: at + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        for (i, c) in self.text[start..].char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                c if c.is_whitespace() && depth <= 0 => {
                    self.pos = start + i;
                    return Some((start, &self.text[start..start + i]));
                }
                _ => {}
            }
        }
        self.pos = self.text.len();
        (self.pos > start).then(|| (start, &self.text[start..]))
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        let end = self.text.len();
        self.next().ok_or_else(|| self.err(end, format!("expected {what}")))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (at, t) = self.expect(&format!("`{kw}`"))?;
        if t != kw {
            return Err(self.err(at, format!("expected `{kw}`, found `{t}`")));
        }
        Ok(())
    }

    fn rest(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let at = self.pos;
        self.pos = self.text.len();
        (at, self.text[at..].trim_end())
    }

    fn done(&mut self) -> Result<(), ParseError> {
        if let Some((at, t)) = self.next() {
            return Err(self.err(at, format!("unexpected `{t}`")));
        }
        Ok(())
    }

    fn expr(&mut self, what: &str) -> Result<Expr, ParseError> {
        let (at, t) = self.expect(what)?;
        parse_expr_at(self, at, t)
    }
}

fn parse_expr_at(l: &Line, at: usize, t: &str) -> Result<Expr, ParseError> {
    Expr::parse(t).map_err(|e| l.err(at, format!("`{t}`: {e}")))
}

fn is_name(t: &str) -> bool {
    let mut cs = t.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphanumeric() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '-')
        && t.chars().any(|c| c.is_ascii_alphabetic())
}

fn name(l: &Line, at: usize, t: &str, what: &str) -> Result<String, ParseError> {
    if is_name(t) {
        Ok(t.to_string())
    } else {
        Err(l.err(at, format!("expected {what}, found `{t}`")))
    }
}

fn piece(l: &Line, at: usize, t: &str) -> Result<Piece, ParseError> {
    match t.split_once('.') {
        Some((v, n)) if is_name(v) && is_name(n) => Ok(Piece::new(v, n)),
        _ => Err(l.err(at, format!("expected VAR.NAME, found `{t}`"))),
    }
}

/// Collapse runs of whitespace.
fn tidy(w: &str) -> String {
    w.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Contents of `head(...)` split at top-level commas.
fn call_args<'t>(l: &Line, at: usize, t: &'t str, head: &str) -> Result<Vec<&'t str>, ParseError> {
    let inner = t
        .strip_prefix(head)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| l.err(at, format!("expected `{head}(...)`, found `{t}`")))?;
    Ok(split_top(inner))
}

fn split_top(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        return vec![];
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn exprs(l: &Line, at: usize, items: &[&str]) -> Result<Vec<Expr>, ParseError> {
    items.iter().map(|t| parse_expr_at(l, at, t)).collect()
}

fn block_spec(l: &Line, at: usize, t: &str) -> Result<BlockSpec, ParseError> {
    if let Ok(id) = t.parse::<BlockId>() {
        return Ok(BlockSpec::Catalog(id));
    }
    let one = |head: &str| -> Result<Expr, ParseError> {
        let a = call_args(l, at, t, head)?;
        if a.len() != 1 {
            return Err(l.err(at, format!("`{head}` takes one argument")));
        }
        parse_expr_at(l, at, a[0])
    };
    if t.starts_with("sym2(") {
        return Ok(BlockSpec::Sym2(one("sym2")?));
    }
    if t.starts_with("twist(") {
        return Ok(BlockSpec::Twist(one("twist")?));
    }
    if t.starts_with("mtorus(") {
        let ws = call_args(l, at, t, "mtorus")?;
        if ws.is_empty() || ws.len() % 2 != 0 {
            return Err(l.err(at, "mtorus needs an even, positive number of images"));
        }
        return Ok(BlockSpec::MTorus(ws.into_iter().map(tidy).collect()));
    }
    Err(l.err(at, format!("unknown block id `{t}`")))
}

/// A block id as written after `block`, e.g. `Z` or `sym2(4)`.
pub fn parse_block_spec(t: &str) -> Result<BlockSpec, ParseError> {
    let l = Line { text: t, pos: 0, line: 1 };
    block_spec(&l, 0, t.trim())
}

fn map_spec(l: &Line, at: usize, t: &str) -> Result<MapSpec, ParseError> {
    if t.starts_with("inline(") {
        let ws = call_args(l, at, t, "inline")?;
        if ws.is_empty() || ws.iter().any(|w| w.is_empty()) {
            return Err(l.err(at, "empty gluing image"));
        }
        return Ok(MapSpec::Inline(ws.into_iter().map(tidy).collect()));
    }
    Ok(MapSpec::Named(name(l, at, t, "a gluing map name")?))
}

fn big(l: &Line, at: usize, t: &str) -> Result<BigInt, ParseError> {
    t.parse().map_err(|_| l.err(at, format!("expected an integer, found `{t}`")))
}

fn claim_spec(l: &Line, at: usize, t: &str) -> Result<ClaimSpec, ParseError> {
    match t {
        "trivial" => return Ok(ClaimSpec::Trivial),
        "infinite-cyclic" => return Ok(ClaimSpec::InfiniteCyclic),
        _ => {}
    }
    let head = t.split('(').next().unwrap_or("");
    let args = call_args(l, at, t, head)?;
    let single = || -> Result<Expr, ParseError> {
        if args.len() != 1 {
            return Err(l.err(at, format!("`{head}` takes one argument")));
        }
        parse_expr_at(l, at, args[0])
    };
    Ok(match head {
        "finite" => ClaimSpec::Finite(single()?),
        "free-abelian" => ClaimSpec::FreeAbelian(single()?),
        "free" => ClaimSpec::Free(single()?),
        "finite-abelian" => ClaimSpec::FiniteAbelian(exprs(l, at, &args)?),
        "abelian" => ClaimSpec::Abelian(exprs(l, at, &args)?),
        _ => return Err(l.err(at, format!("unknown group claim `{t}`"))),
    })
}

fn direction(l: &Line, at: usize, t: &str, letter: &str) -> Result<Expr, ParseError> {
    let body = t
        .strip_prefix(letter)
        .and_then(|r| r.strip_prefix('^'))
        .ok_or_else(|| l.err(at, format!("expected `{letter}^INT`, found `{t}`")))?;
    parse_expr_at(l, at, body)
}

fn assertion(l: &mut Line) -> Result<Assertion, ParseError> {
    let (at, kind) = l.expect("an assertion kind")?;
    if !matches!(kind, "pi1" | "h1" | "e_sigma" | "freedman" | "word_trivial" | "pushoff" | "arith") {
        return Err(l.err(at, format!("unknown assertion kind `{kind}`")));
    }
    // a trailing `exact` applies to every kind
    let (rest_at, rest) = l.rest();
    let (body, exact) = match rest.rsplit_once(char::is_whitespace) {
        Some((b, "exact")) => (b.trim_end(), true),
        _ if rest == "exact" => ("", true),
        _ => (rest, false),
    };
    let mut s = Line { text: body, pos: 0, line: l.line };
    let check = check_body(&mut s, kind).map_err(|mut e| {
        e.col += rest_at;
        e
    })?;
    Ok(Assertion { check, exact })
}

fn check_body(s: &mut Line, kind: &str) -> Result<Check, ParseError> {
    let c = match kind {
        "pi1" => {
            let (a, t) = s.expect("a group claim")?;
            Check::Pi1(claim_spec(s, a, t)?)
        }
        "h1" => {
            let (a, t) = s.expect("`sum(...)`")?;
            let items = call_args(s, a, t, "sum")?;
            Check::H1(exprs(s, a, &items)?)
        }
        "e_sigma" | "freedman" => {
            let x = s.expr("an integer expression")?;
            let y = s.expr("an integer expression")?;
            if kind == "e_sigma" {
                Check::ESigma(x, y)
            } else {
                Check::Freedman(x, y)
            }
        }
        "word_trivial" => {
            let (a, w) = s.rest();
            if w.is_empty() {
                return Err(s.err(a, "expected a word"));
            }
            Check::WordTrivial(tidy(w))
        }
        "pushoff" => {
            let (a, t) = s.expect("VAR.TORUS")?;
            let at = piece(s, a, t)?;
            let (a, t) = s.expect("`(mu,m,l)`")?;
            let words = call_args(s, a, t, "")?;
            if words.len() != 3 || words.iter().any(|w| w.is_empty()) {
                return Err(s.err(a, "expected three words `(mu,m,l)`"));
            }
            let mut aliases = Vec::new();
            if let Some((a, t)) = s.next() {
                if t != "with" {
                    return Err(s.err(a, format!("expected `with`, found `{t}`")));
                }
                let (a, list) = s.rest();
                for item in list.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()) {
                    match item.split_once('=') {
                        Some((k, v)) if is_name(k) && is_name(v) => aliases.push((k.to_string(), v.to_string())),
                        _ => return Err(s.err(a, format!("expected NAME=NAME, found `{item}`"))),
                    }
                }
                if aliases.is_empty() {
                    return Err(s.err(a, "expected NAME=NAME after `with`"));
                }
            }
            Check::PushOff { at, words: words.into_iter().map(tidy).collect(), aliases }
        }
        _ => {
            let (a, t) = s.rest();
            let (lhs, rhs) = t.split_once("==").ok_or_else(|| s.err(a, "expected `LHS == RHS`"))?;
            let x = parse_expr_at(s, a, lhs.trim())?;
            let y = parse_expr_at(s, a + lhs.len() + 2, rhs.trim())?;
            Check::Arith(x, y)
        }
    };
    s.done()?;
    Ok(c)
}

/// Variables a step reads.
fn uses(s: &Step) -> Vec<&str> {
    match s {
        Step::Block { .. } => vec![],
        Step::Sum2 { source, target, .. } | Step::SumT { source, target, .. } => vec![&source.var, &target.var],
        Step::Surgery { at, .. } | Step::Fill { at } | Step::Trust { at } => vec![&at.var],
        Step::BlowUp { var, .. } | Step::AssumeOdd { var } => vec![var],
    }
}

/// Parse a recipe file.
pub fn parse_recipe(src: &str) -> Result<Recipe, ParseError> {
    let mut recipe: Option<Recipe> = None;
    let mut bound: Vec<String> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let text = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let mut l = Line { text, pos: 0, line: i + 1 };
        let Some((at, head)) = l.next() else { continue };
        if head == "recipe" {
            if recipe.is_some() {
                return Err(l.err(at, "only one `recipe` line is allowed"));
            }
            let (a, t) = l.expect("a recipe name")?;
            recipe = Some(Recipe { name: name(&l, a, t, "a recipe name")?, params: vec![], steps: vec![], assertions: vec![] });
            l.done()?;
            continue;
        }
        let r = recipe.as_mut().ok_or_else(|| l.err(at, "the first directive must be `recipe NAME`"))?;
        let nsteps = r.steps.len();
        match head {
            "param" => {
                let (a, t) = l.expect("a parameter name")?;
                let pname = name(&l, a, t, "a parameter name")?;
                if r.params.iter().any(|p| p.name == pname) {
                    return Err(l.err(a, format!("parameter `{pname}` declared twice")));
                }
                l.keyword("default")?;
                let (a, t) = l.expect("an integer")?;
                let default = big(&l, a, t)?;
                let mut range = None;
                if let Some((a, t)) = l.next() {
                    if t != "range" {
                        return Err(l.err(a, format!("expected `range`, found `{t}`")));
                    }
                    let (a, t) = l.expect("LO..HI")?;
                    let (lo, hi) = t.split_once("..").ok_or_else(|| l.err(a, "expected LO..HI"))?;
                    range = Some((big(&l, a, lo)?, big(&l, a, hi)?));
                }
                l.done()?;
                r.params.push(ParamDecl { name: pname, default, range });
            }
            "block" => {
                let (a, t) = l.expect("a block id")?;
                let id = block_spec(&l, a, t)?;
                l.keyword("as")?;
                let (a, t) = l.expect("a variable")?;
                let var = name(&l, a, t, "a variable")?;
                l.done()?;
                r.steps.push(Step::Block { id, var });
            }
            "sum2" | "sumT" => {
                let (a, t) = l.expect("VAR.PIECE")?;
                let source = piece(&l, a, t)?;
                let (a, t) = l.expect("VAR.PIECE")?;
                let target = piece(&l, a, t)?;
                l.keyword("map")?;
                let (a, t) = l.expect("a gluing map")?;
                let map = map_spec(&l, a, t)?;
                if head == "sum2" {
                    let quotient = match l.next() {
                        None => false,
                        Some((_, "quotient")) => true,
                        Some((a, t)) => return Err(l.err(a, format!("expected `quotient`, found `{t}`"))),
                    };
                    l.done()?;
                    r.steps.push(Step::Sum2 { source, target, map, quotient });
                } else {
                    l.done()?;
                    r.steps.push(Step::SumT { source, target, map });
                }
            }
            "surgery" => {
                let (a, t) = l.expect("VAR.TORUS")?;
                let at = piece(&l, a, t)?;
                l.keyword("p")?;
                let p = l.expr("an integer")?;
                l.keyword("q")?;
                let q = l.expr("an integer")?;
                l.keyword("dir")?;
                let (a, t) = l.expect("`m^INT`")?;
                let ea = direction(&l, a, t, "m")?;
                let (a, t) = l.expect("`l^INT`")?;
                let eb = direction(&l, a, t, "l")?;
                l.done()?;
                r.steps.push(Step::Surgery { at, p, q, a: ea, b: eb });
            }
            "fill" | "trust" => {
                let (a, t) = l.expect("VAR.PIECE")?;
                let at = piece(&l, a, t)?;
                l.done()?;
                r.steps.push(if head == "fill" { Step::Fill { at } } else { Step::Trust { at } });
            }
            "blowup" => {
                let (a, t) = l.expect("a variable")?;
                let var = name(&l, a, t, "a variable")?;
                let on = match l.next() {
                    None => None,
                    Some((_, "on")) => {
                        let (a, t) = l.expect("a surface name")?;
                        Some(name(&l, a, t, "a surface name")?)
                    }
                    Some((a, t)) => return Err(l.err(a, format!("expected `on`, found `{t}`"))),
                };
                l.done()?;
                r.steps.push(Step::BlowUp { var, on });
            }
            "assume" => {
                l.keyword("odd")?;
                let (a, t) = l.expect("a variable")?;
                let var = name(&l, a, t, "a variable")?;
                l.done()?;
                r.steps.push(Step::AssumeOdd { var });
            }
            "assert" => {
                let a = assertion(&mut l)?;
                r.assertions.push(a);
            }
            _ => return Err(l.err(at, format!("unknown directive `{head}`"))),
        }
        if r.steps.len() > nsteps {
            let step = r.steps.last().expect("just pushed");
            for u in uses(step) {
                if !bound.iter().any(|b| b == u) {
                    return Err(l.err(at, format!("`{u}` is used before it is bound")));
                }
            }
            if let Step::Sum2 { source, .. } | Step::SumT { source, .. } = step {
                bound.retain(|v| *v != source.var);
            }
            bound.push(step.result_var().to_string());
        }
    }
    recipe.ok_or(ParseError { line: 1, col: 1, message: "missing `recipe NAME`".into() })
}

pub(crate) fn serialize_step(s: &Step) -> String {
    match s {
        Step::Block { id, var } => format!("block {id} as {var}"),
        Step::Sum2 { source, target, map, quotient } => {
            format!("sum2 {source} {target} map {map}{}", if *quotient { " quotient" } else { "" })
        }
        Step::SumT { source, target, map } => format!("sumT {source} {target} map {map}"),
        Step::Surgery { at, p, q, a, b } => format!("surgery {at} p {p} q {q} dir m^{} l^{}", pow_arg(a), pow_arg(b)),
        Step::Fill { at } => format!("fill {at}"),
        Step::BlowUp { var, on: None } => format!("blowup {var}"),
        Step::BlowUp { var, on: Some(s) } => format!("blowup {var} on {s}"),
        Step::AssumeOdd { var } => format!("assume odd {var}"),
        Step::Trust { at } => format!("trust {at}"),
    }
}

/// `m^-1` reads fine; anything compound gets parentheses.
fn pow_arg(e: &Expr) -> String {
    match e {
        Expr::Int(_) | Expr::Param(_) => e.to_string(),
        Expr::Neg(inner) if matches!(**inner, Expr::Param(_)) => e.to_string(),
        _ => format!("({e})"),
    }
}

fn list(es: &[Expr]) -> String {
    es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn serialize_claim(c: &ClaimSpec) -> String {
    match c {
        ClaimSpec::Trivial => "trivial".into(),
        ClaimSpec::InfiniteCyclic => "infinite-cyclic".into(),
        ClaimSpec::Finite(n) => format!("finite({n})"),
        ClaimSpec::FreeAbelian(k) => format!("free-abelian({k})"),
        ClaimSpec::Free(k) => format!("free({k})"),
        ClaimSpec::FiniteAbelian(es) => format!("finite-abelian({})", list(es)),
        ClaimSpec::Abelian(es) => format!("abelian({})", list(es)),
    }
}

/// Assertion body without the `assert` keyword.
pub(crate) fn serialize_check(c: &Check) -> String {
    match c {
        Check::Pi1(spec) => format!("pi1 {}", serialize_claim(spec)),
        Check::H1(es) => format!("h1 sum({})", list(es)),
        Check::ESigma(e, s) => format!("e_sigma {e} {s}"),
        Check::Freedman(m, n) => format!("freedman {m} {n}"),
        Check::WordTrivial(w) => format!("word_trivial {w}"),
        Check::PushOff { at, words, aliases } => {
            let mut s = format!("pushoff {at} ({})", words.join(","));
            if !aliases.is_empty() {
                let a: Vec<String> = aliases.iter().map(|(k, v)| format!("{k}={v}")).collect();
                s.push_str(&format!(" with {}", a.join(",")));
            }
            s
        }
        Check::Arith(l, r) => format!("arith {l} == {r}"),
    }
}

/// Canonical text; `parse_recipe` reads it back to the same recipe.
pub fn serialize_recipe(r: &Recipe) -> String {
    let mut out = format!("recipe {}\n", r.name);
    for p in &r.params {
        out.push_str(&format!("param {} default {}", p.name, p.default));
        if let Some((lo, hi)) = &p.range {
            out.push_str(&format!(" range {lo}..{hi}"));
        }
        out.push('\n');
    }
    for s in &r.steps {
        out.push_str(&serialize_step(s));
        out.push('\n');
    }
    for a in &r.assertions {
        out.push_str("assert ");
        out.push_str(&serialize_check(&a.check));
        if a.exact {
            out.push_str(" exact");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
recipe demo   # comment
param n default 2 range -3..3
block Z as X
block mtorus(x1, y1 x1) as L
block twist(1) as K
surgery X.T1' p 1 q 1 dir m^1 l^0
surgery X.T4 p -n q 1 dir m^1 l^0
sum2 L.F X.F map inline(b1^-1, b1 a1 b1^-1, a2, b2) quotient
sumT K.T0 X.T3 map inline(s,t)
fill X.F
blowup X on F
assume odd X
trust X.T4
assert pi1 finite-abelian(2,3,4)
assert h1 sum(0,0,5) exact
assert e_sigma 6 -2
assert word_trivial [a2, y]
assert pushoff X.T3 (1,1,t2) with t1=y, t2=a2
assert arith 2*n + 1 == n + n + 1
";

    #[test]
    fn parses_every_directive() {
        let r = parse_recipe(SAMPLE).unwrap();
        assert_eq!(r.name, "demo");
        assert_eq!(r.params.len(), 1);
        assert_eq!(r.steps.len(), 11);
        assert_eq!(r.assertions.len(), 6);
        assert!(r.assertions[1].exact);
        match &r.steps[5] {
            Step::Sum2 { map: MapSpec::Inline(ws), quotient: true, .. } => assert_eq!(ws[1], "b1 a1 b1^-1"),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn canonical_round_trip() {
        let r = parse_recipe(SAMPLE).unwrap();
        let text = serialize_recipe(&r);
        let again = parse_recipe(&text).unwrap();
        assert_eq!(again, r);
        assert_eq!(serialize_recipe(&again), text);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_recipe("recipe x\nblock Q as X\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 7));
        let e = parse_recipe("recipe x\nblock Z as X\nsurgery X.T1 p 1 q 1 dir k^1 l^0\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 26));
        let e = parse_recipe("block Z as X\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_recipe("recipe x\nfill X.F\n").is_err());
        let e = parse_recipe("recipe x\nblock Z as X\nassert e_sigma 6\n").unwrap_err();
        assert_eq!(e.line, 3);
    }
}

use super::{Exactness, IntersectionFormRecord, ManifoldModel, ModelError, TrackedSurface, TrackedTorus};
use crate::fpgroup::{Presentation, Word};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockId {
    HxK,
    W1,
    W2,
    M,
    Z,
}

pub const BLOCK_IDS: [BlockId; 5] = [BlockId::HxK, BlockId::W1, BlockId::W2, BlockId::M, BlockId::Z];

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockId::HxK => "HxK",
            BlockId::W1 => "W1",
            BlockId::W2 => "W2",
            BlockId::M => "M",
            BlockId::Z => "Z",
        })
    }
}

impl FromStr for BlockId {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, ModelError> {
        BLOCK_IDS.iter().copied().find(|b| b.to_string() == s).ok_or_else(|| ModelError::UnknownBlock(s.to_string()))
    }
}

fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
    let p = Presentation::new(gens).expect("catalog symbols");
    let rs: Vec<Word> = rels.iter().map(|r| p.parse_word(r).expect("catalog word")).collect();
    p.with_relators(rs).expect("catalog relators")
}

fn torus(p: &Presentation, name: &str, mu: &str, m: &str, ell: &str) -> TrackedTorus {
    let w = |s: &str| p.parse_word(s).expect("catalog word");
    TrackedTorus::new(name, w(mu), w(m), w(ell))
}

fn surface(p: &Presentation, name: &str, loops: [&str; 4], mu: &str) -> TrackedSurface {
    let w = |s: &str| p.parse_word(s).expect("catalog word");
    TrackedSurface::new(name, loops.iter().map(|l| w(l)).collect(), w(mu))
}

fn standard(words: &[&str]) -> Vec<Word> {
    let p = Presentation::new(&super::STANDARD_LOOPS).expect("standard loops");
    words.iter().map(|w| p.parse_word(w).expect("standard word")).collect()
}

pub fn make_block(id: BlockId) -> ManifoldModel {
    match id {
        BlockId::HxK => hxk(),
        BlockId::W1 => w1(),
        BlockId::W2 => w2(),
        BlockId::M => m_block(),
        BlockId::Z => z_block(),
    }
}

fn hxk() -> ManifoldModel {
    let p = pres(
        &["x", "y", "a", "b"],
        &["[x,a]", "[y,a]", "[y,b a b^-1]", "[[x,y],b]", "[x,[a,b]]", "[y,[a,b]]"],
    );
    let mut m = ManifoldModel::new("HxK", p.clone(), 0, 0);
    m.tori = vec![
        torus(&p, "T1", "[b^-1,y^-1]", "x", "a"),
        torus(&p, "T2", "[x^-1,b]", "y", "b a b^-1"),
    ];
    m
}

fn w1() -> ManifoldModel {
    let p = pres(&["s", "t"], &["[s,t]"]);
    let mut m = ManifoldModel::new("W1", p.clone(), 4, -4);
    let mut f = surface(&p, "F1", ["s", "t", "s^-1", "t^-1"], "1");
    f.kernel_words = standard(&["s1 s2", "t1 t2", "[s1,t1]"]);
    f.meridian_trivial = true;
    m.surfaces = vec![f];
    m.form = Some(IntersectionFormRecord::diagonal(1, &[-1, -1, -1, -1]));
    m
}

fn w2() -> ManifoldModel {
    let p = pres(
        &["s1", "t1", "s2", "t2"],
        &["[s1,s2]", "[t1,s2]", "[t1,t2 s2 t2^-1]", "[s1,t1]", "[s2,t2]"],
    );
    let mut m = ManifoldModel::new("W2", p.clone(), 2, -2);
    m.tori = vec![
        torus(&p, "T1'", "[t2^-1,t1^-1]", "s1", "s2"),
        torus(&p, "T2'", "[s1^-1,t2]", "t1", "s2"),
    ];
    let mut f = surface(&p, "F2", ["s1", "t1", "s2", "t2"], "1");
    f.kernel_words = standard(&["[s1,t1]", "[s1,s2]", "[s1,t2]", "[t1,s2]", "[t1,t2]", "[s2,t2]"]);
    f.meridian_trivial = true;
    m.surfaces = vec![f];
    m.form = Some(IntersectionFormRecord::diagonal(3, &[-1, -1]));
    m
}

const XY_AB: [&str; 6] = ["x", "y", "a1", "b1", "a2", "b2"];

fn m_block() -> ManifoldModel {
    let p = pres(
        &XY_AB,
        &["[x,a1]", "[y,a1]", "[y,b1 a1 b1^-1]", "[x,a2]", "[y,a2]", "[y,b2 a2 b2^-1]"],
    );
    let mut m = ManifoldModel::new("M", p.clone(), 0, 0);
    m.tori = vec![
        torus(&p, "T1", "[b1^-1,y^-1]", "x", "a1"),
        torus(&p, "T2", "[x^-1,b1]", "y", "b1 a1 b1^-1"),
        torus(&p, "T3", "[b2^-1,y^-1]", "x", "a2"),
        torus(&p, "T4", "[x^-1,b2]", "y", "b2 a2 b2^-1"),
    ];
    let mut f = surface(&p, "F", ["a1", "b1", "a2", "b2"], "[x,y]");
    f.parallel = true;
    m.surfaces = vec![f];
    m
}

fn z_block() -> ManifoldModel {
    let p = pres(
        &XY_AB,
        &["[b1,b2]", "[a1,b2]", "[b1,a1]", "[b2,a2]", "[x,a1]", "[y,a1]", "[x,a2]", "[y,a2]"],
    );
    let mut m = ManifoldModel::new("Z", p.clone(), 6, -2);
    m.tori = vec![
        torus(&p, "T1'", "[a2^-1,a1^-1]", "b1^-1", "b2^-1"),
        torus(&p, "T2'", "[b1,a2]", "b1 a2 b1^-1", "b2^-1"),
        torus(&p, "T1", "[b1^-1,y^-1]", "x", "a1"),
        torus(&p, "T2", "[x^-1,b1]", "y", "a1"),
        torus(&p, "T3", "[b2^-1,y^-1]", "x", "a2"),
        torus(&p, "T4", "[x^-1,b2]", "y", "a2"),
    ];
    let mut f = surface(&p, "F", ["a1", "b1", "a2", "b2"], "[x,y]");
    f.parallel = true;
    m.surfaces = vec![f];
    m.exactness = Exactness::UpperBound;
    m.form = Some(IntersectionFormRecord {
        hyperbolic_pairs: 6,
        basis: vec!["H1".into(), "H2".into(), "H3".into(), "F".into()],
        odd_block: vec![vec![-1, 0, 0, 1], vec![0, -1, 0, 1], vec![0, 0, 0, 1], vec![1, 1, 1, 0]],
    });
    m
}

/// `Y × S¹` for the mapping torus `Y` of a genus-`n` surface. `images[i]` is
/// the image of the `i`-th surface generator (order x1, y1, x2, y2, …),
/// written over those symbols.
pub fn mapping_torus_block(n: usize, images: &[&str]) -> Result<ManifoldModel, ModelError> {
    if images.len() != 2 * n {
        return Err(ModelError::Invalid(format!("expected {} monodromy images, got {}", 2 * n, images.len())));
    }
    let mut syms: Vec<String> = Vec::new();
    for i in 1..=n {
        syms.push(format!("x{i}"));
        syms.push(format!("y{i}"));
    }
    syms.push("t".into());
    syms.push("s".into());
    let mut p = Presentation::new(&syms).expect("fresh symbols");
    let surf = Presentation::new(&syms[..2 * n]).expect("fresh symbols");
    let t = p.gen_word("t").expect("t");
    let s = p.gen_word("s").expect("s");
    let mut rels = Vec::new();
    for (g, img) in images.iter().enumerate() {
        let w = surf.parse_word(img).map_err(|e| ModelError::Invalid(e.to_string()))?;
        rels.push(Word::gen(g).conjugate_by(&t).mul(&w.inverse()));
    }
    for g in 0..2 * n {
        rels.push(Word::commutator(&s, &Word::gen(g)));
    }
    rels.push(Word::commutator(&s, &t));
    for r in rels {
        p.add_relator(r).expect("in range");
    }
    let mut m = ManifoldModel::new(&format!("mtorus{n}"), p, 0, 0);
    m.tori = vec![TrackedTorus::new("T0", Word::identity(), s, t)];
    Ok(m)
}

/// Homology-level model of the symmetric square of a genus-`g` surface.
pub fn sym2_block(g: usize) -> Result<ManifoldModel, ModelError> {
    if g == 0 {
        return Err(ModelError::Invalid("sym2 needs genus at least 1".into()));
    }
    let mut syms = Vec::new();
    for i in 1..=g {
        syms.push(format!("a{i}"));
        syms.push(format!("b{i}"));
    }
    let mut p = Presentation::new(&syms).expect("fresh symbols");
    for i in 0..2 * g {
        for j in i + 1..2 * g {
            p.add_relator(Word::commutator(&Word::gen(i), &Word::gen(j))).expect("in range");
        }
    }
    let gi = g as i64;
    let mut m = ManifoldModel::new(&format!("sym2({g})"), p.clone(), 2 * gi * gi - 5 * gi + 3, 1 - gi);
    m.abelian_only = true;
    // tori need genus 3 to exist
    let mut tori = Vec::new();
    if g >= 3 {
        tori.push(torus(&p, "Ta1b2", "1", "a1", "b2"));
        tori.push(torus(&p, "Tb1b3", "1", "b1", "b3"));
        tori.push(torus(&p, "Ta2a3", "1", "a2", "a3"));
    }
    for j in 4..=g {
        tori.push(torus(&p, &format!("Tx{j}a{j}"), "1", "a1", &format!("a{j}")));
        tori.push(torus(&p, &format!("Ty{j}b{j}"), "1", "a1", &format!("b{j}")));
    }
    m.tori = tori;
    Ok(m)
}

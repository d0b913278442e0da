//! One line per acceptance criterion. Runs as a plain binary (`harness = false`)
//! and exits nonzero if any criterion fails.

use luttinger::blocks::{make_block, sym2_block, BlockId, ManifoldModel};
use luttinger::calculus::{block_determinant, form_signature, CharacteristicReport};
use luttinger::fpgroup::{
    abelianize, classify, prove_word_trivial, reduce, tietze_simplify, todd_coxeter, AbelianGroup, Budget, Claim,
    Method, Presentation, Word,
};
use luttinger::recipes::{bind_params, build, builtin_recipes, instantiate, run_recipe, AssertKind, Outcome, RunReport};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ov(pairs: &[(&str, i64)]) -> Vec<(String, BigInt)> {
    pairs.iter().map(|(k, v)| (k.to_string(), BigInt::from(*v))).collect()
}

struct Run {
    rep: RunReport,
    model: Option<ManifoldModel>,
    took: Duration,
}

fn run(name: &str, params: &[(&str, i64)]) -> Result<Run, String> {
    let o = ov(params);
    let budget = Budget::default();
    let t = Instant::now();
    let r = instantiate(name, &o).map_err(|e| format!("{name}: {e}"))?;
    let rep = run_recipe(&r, &o, &budget).map_err(|e| format!("{name}: {e}"))?;
    let took = t.elapsed();
    let p = bind_params(&r, &o).map_err(|e| e.to_string())?;
    let model = build(&r, &p, &budget).map_err(|e| e.to_string())?.final_model().cloned();
    Ok(Run { rep, model, took })
}

fn report<'a>(name: &str, r: &'a Run) -> Result<&'a CharacteristicReport, String> {
    r.rep.report.as_ref().ok_or_else(|| format!("{name}: no report"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(name: &str, rep: &RunReport) -> Result<(), String> {
    for a in &rep.assertions {
        ensure(a.outcome == Outcome::Pass, || format!("{name}: {} {} -> {} ({})", a.kind, a.expected, a.outcome, a.actual))?;
    }
    Ok(())
}

fn numbers(name: &str, r: &Run, e: i64, sigma: i64, freedman: Option<(i64, i64)>) -> Result<(), String> {
    let c = report(name, r)?;
    ensure((c.e, c.sigma) == (e, sigma), || format!("{name}: (e,sigma) = ({},{})", c.e, c.sigma))?;
    if freedman.is_some() {
        ensure(c.freedman == freedman, || format!("{name}: freedman {:?}", c.freedman))?;
    }
    Ok(())
}

fn trivial(name: &str, r: &Run) -> Result<(), String> {
    let c = report(name, r)?;
    ensure(c.certificate.claim == Claim::Trivial, || format!("{name}: pi1 {}", c.certificate.claim))
}

// Freedman type from (e, sigma) for a simply connected odd form.
fn freedman_of(e: i64, sigma: i64) -> (i64, i64) {
    ((e + sigma - 2) / 2, (e - sigma - 2) / 2)
}

fn c1() -> Check {
    let r = run("cool", &[])?;
    let c = report("cool", &r)?;
    trivial("cool", &r)?;
    ensure(c.certificate.method == Method::Enumeration, || format!("method {}", c.certificate.method))?;
    ensure(c.certificate.budget_used.cosets <= 100_000, || format!("{} cosets", c.certificate.budget_used.cosets))?;
    // direct enumeration under the 10^5 cap
    let closure = r.model.as_ref().ok_or("no model")?.closure();
    let cap = Budget { max_cosets: 100_000, ..Budget::default() };
    let simp = tietze_simplify(&closure, &cap);
    let idx = todd_coxeter(&closure, &[], &cap)
        .or_else(|_| todd_coxeter(&simp.presentation, &[], &cap))
        .map_err(|e| e.to_string())?;
    ensure(idx.index == 1, || format!("index {}", idx.index))?;
    numbers("cool", &r, 6, -2, Some(freedman_of(6, -2)))?;
    numbers("cool", &r, 6, -2, Some((1, 3)))?;
    all_pass("cool", &r.rep)?;
    ensure(r.took < Duration::from_secs(5), || format!("took {:?}", r.took))?;
    Ok(format!("trivial, {} cosets, {:?}", c.certificate.budget_used.cosets, r.took))
}

fn c2() -> Check {
    let mut notes = vec![];
    for (name, e, s, f) in [("seven", 10, -6, (1, 7)), ("five", 8, -4, (1, 5)), ("10baby", 10, -2, (3, 5))] {
        let r = run(name, &[])?;
        trivial(name, &r)?;
        ensure(freedman_of(e, s) == f, || format!("{name}: freedman arithmetic"))?;
        numbers(name, &r, e, s, Some(f))?;
        all_pass(name, &r.rep)?;
        ensure(r.took < Duration::from_secs(5), || format!("{name} took {:?}", r.took))?;
        notes.push(format!("{name} {:?}", r.took));
    }
    Ok(notes.join(", "))
}

fn c3() -> Check {
    let r = run("ZZ", &[])?;
    let c = report("ZZ", &r)?;
    ensure(c.certificate.claim == Claim::InfiniteCyclic, || format!("pi1 {}", c.certificate.claim))?;
    numbers("ZZ", &r, 6, -2, None)?;
    let s = tietze_simplify(&r.model.as_ref().ok_or("no model")?.closure(), &Budget::default());
    ensure(s.presentation.ngens() == 1 && s.presentation.relators().is_empty(), || {
        format!("simplified to {}", s.presentation)
    })?;
    all_pass("ZZ", &r.rep)?;
    Ok(format!("infinite-cyclic, simplified to {}", s.presentation))
}

fn c4() -> Check {
    for n in -3..=3 {
        let r = run("Yfamily", &[("n", n)])?;
        trivial(&format!("Yfamily({n})"), &r)?;
        all_pass(&format!("Yfamily({n})"), &r.rep)?;
    }
    Ok("n = -3..3 trivial".into())
}

fn c5() -> Check {
    let r = run("Z3", &[])?;
    let c = report("Z3", &r)?;
    ensure(c.certificate.claim == Claim::FreeAbelian { rank: 3 }, || format!("Z3 pi1 {}", c.certificate.claim))?;
    all_pass("Z3", &r.rep)?;
    let budget = Budget::default();
    let s = tietze_simplify(&r.model.as_ref().ok_or("no model")?.closure(), &budget);
    let q = &s.presentation;
    ensure(q.ngens() == 3, || format!("Z3 simplified to {} generators", q.ngens()))?;
    let mut depth = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            let w = Word::commutator(&Word::gen(i), &Word::gen(j));
            let d = prove_word_trivial(q, &w, &budget).map_err(|e| format!("[{i},{j}]: {e}"))?;
            ensure(d.depth() <= 8, || format!("depth {}", d.depth()))?;
            ensure(reduce(&d.expand(q)) == reduce(&w), || format!("[{i},{j}]: replay mismatch"))?;
            depth = depth.max(d.depth());
        }
    }
    let b = run("B1", &[])?;
    let bc = report("B1", &b)?;
    ensure(bc.certificate.claim == Claim::FreeAbelian { rank: 2 }, || format!("B1 pi1 {}", bc.certificate.claim))?;
    let pushoffs: Vec<_> = b.rep.assertions.iter().filter(|a| a.kind == AssertKind::PushoffWords).collect();
    ensure(pushoffs.len() == 2, || format!("{} pushoff assertions", pushoffs.len()))?;
    all_pass("B1", &b.rep)?;
    Ok(format!("Z3 commutators depth <= {depth}, B1 pushoffs {}", pushoffs.iter().map(|a| a.expected.as_str()).collect::<Vec<_>>().join("; ")))
}

fn c6() -> Check {
    let r = run("abelian", &[("p", 2), ("q", 3), ("r", 4)])?;
    let c = report("abelian", &r)?;
    ensure(c.h1.torsion_u64() == vec![2, 12] && c.h1.free_rank == 0, || format!("h1 {}", c.h1))?;
    numbers("abelian", &r, 6, -2, None)?;
    let closure = r.model.as_ref().ok_or("no model")?.closure();
    let budget = Budget::default();
    let order = todd_coxeter(&closure, &[], &budget)
        .or_else(|_| todd_coxeter(&tietze_simplify(&closure, &budget).presentation, &[], &budget))
        .map_err(|e| e.to_string())?
        .index;
    ensure(order == 24, || format!("order {order}"))?;
    all_pass("abelian(2,3,4)", &r.rep)?;
    let r = run("abelian", &[("p", 0), ("q", 0), ("r", 5)])?;
    let c = report("abelian", &r)?;
    let want = AbelianGroup { free_rank: 2, torsion: vec![BigInt::from(5)] };
    ensure(c.h1 == want, || format!("abelian(0,0,5) h1 {}", c.h1))?;
    all_pass("abelian(0,0,5)", &r.rep)?;
    Ok(format!("[2,12] order {order}; abelian(0,0,5) h1 {}", c.h1))
}

fn c7() -> Check {
    for n in 1..=3usize {
        let name = format!("free({n})");
        let r = run("free", &[("n", n as i64)])?;
        let c = report(&name, &r)?;
        let ok = match c.certificate.claim {
            Claim::Free { rank } => rank == n,
            Claim::InfiniteCyclic => n == 1,
            _ => false,
        };
        ensure(ok, || format!("{name}: pi1 {}", c.certificate.claim))?;
        numbers(&name, &r, 10, -2, None)?;
        all_pass(&name, &r.rep)?;
    }
    Ok("free(1..3), (10,-2)".into())
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn c8() -> Check {
    let z = make_block(BlockId::Z);
    ensure(abelianize(&z.presentation) == AbelianGroup::free(6), || "H1(Z)".into())?;
    let form = z.form.as_ref().ok_or("Z has no form record")?;
    let b2 = 2 * form.hyperbolic_pairs + form.odd_block.len();
    ensure(b2 == 16 && form.rank() == 16, || format!("b2 {b2}"))?;
    ensure(z.e - 2 + 2 * z.b1() as i64 == 16, || "b2 from e and b1".into())?;
    ensure(form_signature(form) == -2, || format!("signature {}", form_signature(form)))?;
    let d = det(&form.odd_block);
    ensure(d.abs() == 1, || format!("det {d}"))?;
    ensure(block_determinant(form) == num_rational::BigRational::from_integer(BigInt::from(d)), || "det mismatch".into())?;

    // W2 relators pushed through the gluing, together with the M relators
    let w2 = make_block(BlockId::W2);
    let m = make_block(BlockId::M);
    let pres = Presentation::new(&["x", "y", "a1", "b1", "a2", "b2"]).map_err(|e| e.to_string())?;
    let w = |s: &str| pres.parse_word(s).map_err(|e| e.to_string());
    let images = vec![w("b1^-1")?, w("b1 a1 b1^-1")?, w("b2^-1")?, w("b2 a2 b2^-1")?];
    let mut rels: Vec<Word> = w2.presentation.relators().iter().map(|r| r.substitute(&images)).collect();
    rels.extend(m.presentation.relators().iter().map(|r| {
        let names = m.presentation.symbols();
        let map: Vec<Word> = names.iter().map(|s| pres.gen_word(s).expect("same symbols")).collect();
        r.substitute(&map)
    }));
    let pushed = pres.clone().with_relators(rels.into_iter().filter(|r| !reduce(r).is_identity())).map_err(|e| e.to_string())?;
    let budget = Budget::default();
    let zmap: Vec<Word> = z.presentation.symbols().iter().map(|s| pushed.gen_word(s).expect("same symbols")).collect();
    let mut depth = 0;
    for r in z.presentation.relators() {
        let target = r.substitute(&zmap);
        let d = prove_word_trivial(&pushed, &target, &budget).map_err(|e| format!("{}: {e}", z.format(r)))?;
        ensure(d.depth() <= 8, || format!("{}: depth {}", z.format(r), d.depth()))?;
        ensure(reduce(&d.expand(&pushed)) == reduce(&target), || format!("{}: replay mismatch", z.format(r)))?;
        depth = depth.max(d.depth());
    }
    Ok(format!("Z^6, b2 16, sigma -2, det {d}, {} relators derived at depth <= {depth}", z.presentation.relators().len()))
}

fn c9() -> Check {
    for m in 0..=3 {
        for n in 0..=3 {
            let name = format!("family({m},{n})");
            let r = run("family", &[("m", m), ("n", n)])?;
            let c = report(&name, &r)?;
            ensure(c.freedman == Some((1 + 2 * m + 2 * n, 3 + 6 * m + 4 * n)), || format!("{name}: {:?}", c.freedman))?;
            trivial(&name, &r)?;
            all_pass(&name, &r.rep)?;
        }
    }
    let e10 = report("10baby", &run("10baby", &[])?)?.clone();
    let ezz = report("ZZ", &run("ZZ", &[])?)?.clone();
    for g in 0..=3 {
        for rr in 0..=3 {
            let r = run("fifty", &[("g", g), ("r", rr)])?;
            all_pass(&format!("fifty({g},{rr})"), &r.rep)?;
            let k = g + rr;
            ensure(e10.e + k * ezz.e == 10 + 6 * k && e10.sigma + k * ezz.sigma == -2 - 2 * k, || format!("fifty({g},{rr})"))?;
        }
    }
    for n in [2, 4, 6] {
        let name = format!("genabelian({n})");
        let r = run("genabelian", &[("n", n)])?;
        let c = report(&name, &r)?;
        let g = n / 2 + 3;
        ensure(c.e == 12 * g - 6 + (2 * g * g - 5 * g + 3), || format!("{name}: e {}", c.e))?;
        all_pass(&name, &r.rep)?;
    }
    for n in 1..=3 {
        let name = format!("odd({n})");
        let r = run("odd", &[("n", n)])?;
        all_pass(&name, &r.rep)?;
        let s = sym2_block(n as usize).map_err(|e| e.to_string())?;
        ensure(s.e + ezz.e == 9 - 5 * n + 2 * n * n, || format!("{name}: e {}", s.e + ezz.e))?;
    }
    for (name, f) in [("b31", (3, 7)), ("b32", (3, 9)), ("b51", (5, 9))] {
        let r = run(name, &[])?;
        let c = report(name, &r)?;
        ensure(c.freedman == Some(f), || format!("{name}: {:?}", c.freedman))?;
        ensure(freedman_of(c.e, c.sigma) == f, || format!("{name}: (e,sigma)"))?;
        all_pass(name, &r.rep)?;
    }
    Ok("family 4x4, fifty 4x4, genabelian 2/4/6, odd 1..3, b31/b32/b51".into())
}

fn consistent(c: &Claim, h: &AbelianGroup) -> bool {
    match c {
        Claim::Trivial => h.is_trivial(),
        Claim::Finite { order } => h.order().is_some_and(|o| BigInt::from(*order) % o == BigInt::from(0)),
        Claim::InfiniteCyclic => *h == AbelianGroup::free(1),
        Claim::FreeAbelian { rank } | Claim::Free { rank } => *h == AbelianGroup::free(*rank),
        Claim::FiniteAbelian { group } | Claim::Abelian { group } => group == h,
        Claim::Unknown => true,
    }
}

fn small_presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=3).prop_flat_map(|n| {
        let word = prop::collection::vec((0..n, prop::bool::ANY), 1..=6);
        prop::collection::vec(word, 0..=3).prop_map(move |rels| {
            let names = ["a", "b", "c"];
            let p = Presentation::new(&names[..n]).expect("symbols");
            let words = rels
                .into_iter()
                .map(|r| Word::from_syllables(r.into_iter().map(|(g, inv)| (g, if inv { -1 } else { 1 }))))
                .filter(|w| !reduce(w).is_identity());
            p.with_relators(words).expect("relators")
        })
    })
}

fn c10() -> Check {
    let budget = Budget::default();
    let mut surgeries = 0;
    let mut fills = 0;
    let mut reports = 0;
    for b in builtin_recipes() {
        let r = run(b.name, &[])?;
        ensure(r.rep.outcome() == Outcome::Pass, || format!("{} does not pass", b.name))?;
        for step in &r.rep.steps {
            for l in &step.entries {
                if l.op.starts_with("surgery") {
                    ensure(l.b1_before == l.b1_after + 1, || format!("{}: {} {} -> {}", b.name, l.op, l.b1_before, l.b1_after))?;
                    surgeries += 1;
                } else if l.op.starts_with("fill") {
                    ensure(l.b1_before == l.b1_after, || format!("{}: {} {} -> {}", b.name, l.op, l.b1_before, l.b1_after))?;
                    fills += 1;
                } else {
                    continue;
                }
                ensure(l.delta_e == 0 && l.delta_sigma == 0, || format!("{}: {} changes e/sigma", b.name, l.op))?;
            }
        }
        if let Some(c) = &r.rep.report {
            ensure(c.b2 == c.e - 2 + 2 * c.b1 as i64, || format!("{}: b2 {}", b.name, c.b2))?;
            reports += 1;
        }
    }

    let fuzz_budget = Budget { max_cosets: 5_000, max_depth: 4, max_tietze_passes: 64, max_nodes: 300 };
    let mut runner = TestRunner::new(Config { cases: 10_000, failure_persistence: None, ..Config::default() });
    runner
        .run(&small_presentation(), |p| {
            let h = abelianize(&p);
            let c = classify(&p, &fuzz_budget);
            prop_assert!(consistent(&c.claim, &h), "{} classified {} but H1 = {}", p, c.claim, h);
            Ok(())
        })
        .map_err(|e| format!("classify fuzz: {e}"))?;

    let letters = prop::collection::vec((0usize..4, -3i64..=3), 0..20);
    let mut runner = TestRunner::new(Config { cases: 2_000, failure_persistence: None, ..Config::default() });
    runner
        .run(&letters, |s| {
            let w = Word::from_syllables(s);
            let once = reduce(&w);
            prop_assert_eq!(reduce(&once), once.clone());
            prop_assert_eq!(reduce(&w.mul(&w.inverse())), Word::identity());
            Ok(())
        })
        .map_err(|e| format!("reduce fuzz: {e}"))?;

    // replay: a product of conjugated relators is derived, and the derivation multiplies back to it
    let rels = ["[a,b]", "a^3", "b a b^-1 a^-2"];
    let p = Presentation::new(&["a", "b"]).expect("symbols");
    let p = p.clone().with_relators(rels.iter().map(|r| p.parse_word(r).expect("word"))).expect("relators");
    let factor = (0usize..3, prop::bool::ANY, prop::collection::vec((0usize..2, -2i64..=2), 0..3));
    let mut runner = TestRunner::new(Config { cases: 500, failure_persistence: None, ..Config::default() });
    let mut derived = 0usize;
    runner
        .run(&prop::collection::vec(factor, 1..=2), |fs| {
            let w = Word::product(
                fs.iter()
                    .map(|(i, inv, c)| p.relators()[*i].pow(if *inv { -1 } else { 1 }).conjugate_by(&Word::from_syllables(c.clone())))
                    .collect::<Vec<_>>()
                    .iter(),
            );
            if let Ok(d) = prove_word_trivial(&p, &w, &budget) {
                prop_assert_eq!(reduce(&d.expand(&p)), reduce(&w));
            }
            Ok(())
        })
        .map_err(|e| format!("replay fuzz: {e}"))?;
    for fs in [vec![(0usize, 1i64)], vec![(1, -1)], vec![(2, 1), (0, -1)]] {
        let w = Word::product(fs.iter().map(|&(i, s)| p.relators()[i].pow(s)).collect::<Vec<_>>().iter());
        let d = prove_word_trivial(&p, &w, &budget).map_err(|e| e.to_string())?;
        ensure(reduce(&d.expand(&p)) == reduce(&w), || "replay".into())?;
        derived += 1;
    }
    Ok(format!("{surgeries} surgeries, {fills} fills, {reports} reports, 10^4 classify cases, {derived} fixed replays"))
}

fn main() {
    let criteria: [(usize, fn() -> Check); 10] = [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10)];
    let mut failed = 0;
    for (n, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("criterion {n:>2}: pass  {msg} [{:.2?}]", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL  {msg} [{:.2?}]", t.elapsed());
            }
        }
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

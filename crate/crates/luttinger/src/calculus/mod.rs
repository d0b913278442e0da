//! Manifold-level operations on models: torus surgery, fillings, genus-2 and
//! torus sums, blow-ups and the characteristic report.

mod form;

pub use form::{block_determinant, form_signature, matrix_signature};

use crate::blocks::{
    Exactness, GluingMap, LogEntry, ManifoldModel, ModelError, Status, TrackedSurface, TrackedTorus, CoreTorus,
};
use crate::fpgroup::{abelianize, classify, AbelianGroup, Budget, Certificate, Claim, Presentation, Word};
use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("surgery coefficients p={p}, q={q} are not coprime")]
    Coefficients { p: i64, q: i64 },
    #[error("direction m^{a} l^{b} is not primitive")]
    Direction { a: i64, b: i64 },
    #[error("genus mismatch: {0} vs {1}")]
    Genus(usize, usize),
    #[error("gluing map `{0}` is not invertible on homology")]
    Gluing(String),
    #[error("{0}")]
    Certificate(String),
}

/// `p/q` surgery on a torus along `m^a l^b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgerySpec {
    pub torus: String,
    pub p: i64,
    pub q: i64,
    pub a: i64,
    pub b: i64,
}

impl SurgerySpec {
    pub fn new(torus: &str, p: i64, q: i64, a: i64, b: i64) -> Self {
        SurgerySpec { torus: torus.to_string(), p, q, a, b }
    }
}

fn log(model: &mut ManifoldModel, op: String, added: &[Word], de: i64, ds: i64, b1_before: usize) {
    let relators_added = added.iter().map(|w| model.presentation.format_word_pretty(w)).collect();
    let b1_after = model.b1();
    model.log.push(LogEntry { op, relators_added, delta_e: de, delta_sigma: ds, b1_before, b1_after });
}

fn available_torus<'a>(model: &'a ManifoldModel, name: &str) -> Result<&'a TrackedTorus, ModelError> {
    let t = model.torus(name)?;
    if t.status != Status::Available {
        return Err(ModelError::Consumed(name.to_string()));
    }
    Ok(t)
}

fn available_surface<'a>(model: &'a ManifoldModel, name: &str) -> Result<&'a TrackedSurface, ModelError> {
    let s = model.surface(name)?;
    if s.status != Status::Available {
        return Err(ModelError::Consumed(name.to_string()));
    }
    Ok(s)
}

/// Append `mu^p (m^a l^b)^q`. `(1,0)` is the trivial filling.
pub fn torus_surgery(model: &ManifoldModel, spec: &SurgerySpec) -> Result<ManifoldModel, CalculusError> {
    let (p, q, a, b) = (spec.p, spec.q, spec.a, spec.b);
    if p.gcd(&q) != 1 {
        return Err(CalculusError::Coefficients { p, q });
    }
    if q != 0 && a.gcd(&b) != 1 {
        return Err(CalculusError::Direction { a, b });
    }
    let t = available_torus(model, &spec.torus)?.clone();
    let gamma = t.m.pow(a).mul(&t.ell.pow(b));
    let rel = t.mu.pow(p).mul(&gamma.pow(q));
    let mut out = model.clone();
    let before = model.b1();
    out.presentation.add_relator(rel.clone()).expect("model words");
    out.torus_mut(&spec.torus)?.status = if (p, q) == (1, 0) { Status::Filled } else { Status::Surgered };
    if p.abs() == 1 && q != 0 {
        let n = out.presentation.ngens();
        let snf = crate::fpgroup::abelian::smith_of(&out.presentation);
        let (free, tors) = snf.coordinates(&gamma.exponent_sums(n));
        let zero = free.iter().chain(tors.iter()).all(num_traits::Zero::is_zero);
        out.cores.push(CoreTorus { torus: spec.torus.clone(), curve: gamma.clone(), nullhomologous: zero });
    }
    let op = if (p, q) == (1, 0) {
        format!("fill {}", spec.torus)
    } else {
        format!("surgery {} {}/{} along m^{} l^{}", spec.torus, p, q, a, b)
    };
    log(&mut out, op, &[rel], 0, 0, before);
    Ok(out)
}

/// Glue the piece back in: its meridian becomes trivial.
pub fn fill(model: &ManifoldModel, piece: &str) -> Result<ManifoldModel, CalculusError> {
    if model.tori.iter().any(|t| t.name == piece) {
        return torus_surgery(model, &SurgerySpec::new(piece, 1, 0, 1, 0));
    }
    let s = available_surface(model, piece)?.clone();
    let mut out = model.clone();
    let before = model.b1();
    out.presentation.add_relator(s.mu.clone()).expect("model words");
    out.surface_mut(piece)?.status = Status::Filled;
    log(&mut out, format!("fill {piece}"), &[s.mu], 0, 0, before);
    Ok(out)
}

/// Disjoint union of generators. Source symbols that clash get primes.
/// Returns the union presentation (target relators only) and the images of
/// the source generators.
fn union(target: &Presentation, source: &Presentation) -> (Presentation, Vec<Word>) {
    let mut p = target.clone();
    let mut images = Vec::with_capacity(source.ngens());
    let taken = |p: &Presentation, s: &str| p.gen_id(s).is_some() || source.gen_id(s).is_some();
    for sym in source.symbols() {
        let mut name = sym.clone();
        if p.gen_id(&name).is_some() {
            name.push('\'');
            while taken(&p, &name) {
                name.push('\'');
            }
        }
        let id = p.add_generator(&name).expect("fresh symbol");
        images.push(Word::gen(id));
    }
    (p, images)
}

fn fresh_name(existing: &[String], name: &str) -> String {
    let mut n = name.to_string();
    while existing.iter().any(|e| *e == n) {
        n.push('\'');
    }
    n
}

fn carry_tori(into: &mut ManifoldModel, from: &[TrackedTorus], images: &[Word]) {
    for t in from {
        let names: Vec<String> = into.tori.iter().map(|t| t.name.clone()).collect();
        let mut c = t.clone();
        c.name = fresh_name(&names, &t.name);
        c.mu = t.mu.substitute(images);
        c.m = t.m.substitute(images);
        c.ell = t.ell.substitute(images);
        into.tori.push(c);
    }
}

fn carry_surfaces(into: &mut ManifoldModel, from: &[TrackedSurface], images: &[Word]) {
    for s in from {
        let names: Vec<String> = into.surfaces.iter().map(|s| s.name.clone()).collect();
        let mut c = s.clone();
        c.name = fresh_name(&names, &s.name);
        c.mu = s.mu.substitute(images);
        c.loop_words = s.loop_words.iter().map(|w| w.substitute(images)).collect();
        into.surfaces.push(c);
    }
}

fn check_gluing(phi: &GluingMap, n: usize) -> Result<(), CalculusError> {
    if phi.images.len() != n || !phi.is_unimodular() {
        return Err(CalculusError::Gluing(phi.to_string()));
    }
    Ok(())
}

/// Genus-2 symplectic sum by amalgamation: `source.fs` is glued to
/// `target.ft` by `phi`, whose images are words in the target.
pub fn sum_genus2_amalgam(
    source: &ManifoldModel,
    fs: &str,
    target: &ManifoldModel,
    ft: &str,
    phi: &GluingMap,
) -> Result<ManifoldModel, CalculusError> {
    let sa = available_surface(source, fs)?.clone();
    let sb = available_surface(target, ft)?.clone();
    if sa.genus != sb.genus {
        return Err(CalculusError::Genus(sa.genus, sb.genus));
    }
    check_gluing(phi, 2 * sb.genus)?;
    let img = phi.resolve(&target.presentation, Some(&sb.loop_words))?;
    let (pres, images) = union(&target.presentation, &source.presentation);
    let mut out = target.clone();
    let before = target.b1();
    out.presentation = pres;
    let mut added = Vec::new();
    for r in source.presentation.relators() {
        added.push(r.substitute(&images));
    }
    for (l, w) in sa.loop_words.iter().zip(img.iter()) {
        added.push(l.substitute(&images).mul(&w.inverse()));
    }
    added.push(sa.mu.substitute(&images).mul(&sb.mu.inverse()));
    for r in &added {
        out.presentation.add_relator(r.clone()).expect("union words");
    }
    let src_tori: Vec<TrackedTorus> = source.tori.clone();
    carry_tori(&mut out, &src_tori, &images);
    let src_surfaces: Vec<TrackedSurface> = source.surfaces.iter().filter(|s| s.name != fs).cloned().collect();
    carry_surfaces(&mut out, &src_surfaces, &images);
    out.surface_mut(ft)?.status = Status::Filled;
    finish_sum(&mut out, source, 4 * sb.genus as i64 - 4);
    out.exactness = source.exactness.min(target.exactness);
    out.name = format!("{}+{}", source.name, target.name);
    let de = out.e - target.e;
    let ds = out.sigma - target.sigma;
    log(&mut out, format!("sum2 {}.{} -> {}.{} map {} (amalgam)", source.name, fs, target.name, ft, phi), &added, de, ds, before);
    Ok(out)
}

fn finish_sum(out: &mut ManifoldModel, source: &ManifoldModel, extra_e: i64) {
    out.e += source.e + extra_e;
    out.sigma += source.sigma;
    out.form = None;
    out.abelian_only |= source.abelian_only;
    if out.odd_witness.is_none() {
        out.odd_witness = source.odd_witness.clone();
    }
}

/// Genus-2 sum computed as a quotient of the target group. The source
/// surface must carry kernel words, or have simply connected complement
/// (checked here by classifying that complement).
pub fn sum_genus2_quotient(
    killer: &ManifoldModel,
    fk: &str,
    target: &ManifoldModel,
    ft: &str,
    phi: &GluingMap,
    budget: &Budget,
) -> Result<ManifoldModel, CalculusError> {
    let sk = available_surface(killer, fk)?.clone();
    let st = available_surface(target, ft)?.clone();
    if sk.genus != st.genus {
        return Err(CalculusError::Genus(sk.genus, st.genus));
    }
    check_gluing(phi, 2 * st.genus)?;
    let img = phi.resolve(&target.presentation, Some(&st.loop_words))?;
    let mut added: Vec<Word> = Vec::new();
    let how;
    if !sk.kernel_words.is_empty() {
        how = "kernel words";
        for r in &sk.kernel_words {
            added.push(r.substitute(&img));
        }
    } else {
        if !sk.complement_simply_connected {
            let cert = classify(&killer.closure_except(Some(fk)), budget);
            if cert.claim != Claim::Trivial {
                return Err(CalculusError::Certificate(format!(
                    "complement of {}.{} not certified simply connected ({})",
                    killer.name, fk, cert.claim
                )));
            }
        }
        how = "simply connected complement";
        added.extend(img.iter().cloned());
    }
    added.push(st.mu.clone());
    let mut out = target.clone();
    let before = target.b1();
    for r in &added {
        out.presentation.add_relator(r.clone()).expect("target words");
    }
    if !st.parallel {
        out.surface_mut(ft)?.status = Status::Filled;
    }
    finish_sum(&mut out, killer, 4 * st.genus as i64 - 4);
    out.exactness = Exactness::UpperBound;
    let de = out.e - target.e;
    let ds = out.sigma - target.sigma;
    log(
        &mut out,
        format!("sum2 {}.{} -> {}.{} map {} (quotient, {})", killer.name, fk, target.name, ft, phi, how),
        &added,
        de,
        ds,
        before,
    );
    Ok(out)
}

/// Torus sum: `source.ts` (whose complement must be exactly known) is glued
/// to `target.tt`; `phi` gives the images of the source push-offs `m, l` in
/// the target's generators.
pub fn sum_torus(
    source: &ManifoldModel,
    ts: &str,
    target: &ManifoldModel,
    tt: &str,
    phi: &GluingMap,
) -> Result<ManifoldModel, CalculusError> {
    let tsrc = available_torus(source, ts)?.clone();
    let ttgt = available_torus(target, tt)?.clone();
    if !tsrc.complement_exact {
        return Err(CalculusError::Certificate(format!(
            "torus {}.{} has no exact complement data",
            source.name, ts
        )));
    }
    check_gluing(phi, 2)?;
    let img = phi.resolve(&target.presentation, None)?;
    let (pres, images) = union(&target.presentation, &source.presentation);
    let mut out = target.clone();
    let before = target.b1();
    out.presentation = pres;
    let mut added = Vec::new();
    for r in source.presentation.relators() {
        added.push(r.substitute(&images));
    }
    added.push(tsrc.m.substitute(&images).mul(&img[0].inverse()));
    added.push(tsrc.ell.substitute(&images).mul(&img[1].inverse()));
    added.push(ttgt.mu.mul(&tsrc.mu.substitute(&images).inverse()));
    for r in &added {
        out.presentation.add_relator(r.clone()).expect("union words");
    }
    let src_tori: Vec<TrackedTorus> = source.tori.iter().filter(|t| t.name != ts).cloned().collect();
    carry_tori(&mut out, &src_tori, &images);
    carry_surfaces(&mut out, &source.surfaces, &images);
    out.torus_mut(tt)?.status = Status::Filled;
    finish_sum(&mut out, source, 0);
    out.exactness = source.exactness.min(target.exactness);
    let de = out.e - target.e;
    let ds = out.sigma - target.sigma;
    log(&mut out, format!("sumT {}.{} -> {}.{} map {}", source.name, ts, target.name, tt, phi), &added, de, ds, before);
    Ok(out)
}

/// Connected sum with a negative projective plane.
pub fn blow_up(model: &ManifoldModel, on: Option<&str>) -> Result<ManifoldModel, CalculusError> {
    let mut out = model.clone();
    let before = model.b1();
    out.e += 1;
    out.sigma -= 1;
    match &mut out.form {
        Some(f) => {
            let n = f.odd_block.len();
            for r in f.odd_block.iter_mut() {
                r.push(0);
            }
            let mut row = vec![0; n + 1];
            row[n] = -1;
            f.odd_block.push(row);
            f.basis.push(format!("E{}", n + 1));
        }
        None => out.odd_witness = Some("exceptional sphere".into()),
    }
    if let Some(s) = on {
        out.surface_mut(s)?.meridian_trivial = true;
    }
    let op = match on {
        Some(s) => format!("blowup on {s}"),
        None => "blowup".to_string(),
    };
    log(&mut out, op, &[], 1, -1, before);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicReport {
    pub e: i64,
    pub sigma: i64,
    pub b1: usize,
    pub h1: AbelianGroup,
    pub b2: i64,
    pub chi_h: Rational64,
    pub c1sq: i64,
    pub freedman: Option<(i64, i64)>,
    pub exactness: Exactness,
    pub certificate: Certificate,
}

impl CharacteristicReport {
    pub fn chi_h_integral(&self) -> bool {
        self.chi_h.is_integer()
    }
}

/// Numbers of the closed-up model. The group is that of the closure.
pub fn characteristic_report(model: &ManifoldModel, budget: &Budget) -> CharacteristicReport {
    let closed = model.closure();
    let h1 = abelianize(&closed);
    let certificate = if model.abelian_only {
        Certificate {
            claim: Claim::Unknown,
            method: crate::fpgroup::Method::None,
            budget_used: Default::default(),
        }
    } else {
        classify(&closed, budget)
    };
    report_from(model, h1, certificate)
}

pub(crate) fn report_from(model: &ManifoldModel, h1: AbelianGroup, certificate: Certificate) -> CharacteristicReport {
    let (e, sigma) = (model.e, model.sigma);
    let b1 = h1.free_rank;
    let freedman = (certificate.claim == Claim::Trivial && model.has_odd_form())
        .then(|| ((e + sigma - 2) / 2, (e - sigma - 2) / 2));
    CharacteristicReport {
        e,
        sigma,
        b1,
        h1,
        b2: e - 2 + 2 * b1 as i64,
        chi_h: Rational64::new(e + sigma, 4),
        c1sq: 2 * e + 3 * sigma,
        freedman,
        exactness: model.exactness,
        certificate,
    }
}

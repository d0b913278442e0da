//! Declarative construction scripts, their runner and the built-in catalog.

mod builtin;
mod expr;
mod scan;
mod text;

pub use builtin::{builtin_recipes, find_builtin, instantiate, BuiltinRecipe};
pub use expr::{BinOp, Expr, ExprError, Invariant};
pub use scan::{geography_scan, scan_cell, scan_options, ScanChoice, ScanDirection, ScanRow};
pub use text::{parse_block_spec, parse_recipe, serialize_recipe, ParseError};

use crate::blocks::{
    gluing_by_name, make_block, mapping_torus_block, sym2_block, BlockId, GluingMap, LogEntry, ManifoldModel,
    ModelError,
};
use crate::calculus::{
    blow_up, characteristic_report, fill, sum_genus2_amalgam, sum_genus2_quotient, sum_torus, torus_surgery,
    CalculusError, CharacteristicReport, SurgerySpec,
};
use crate::fpgroup::presentation::parse_word_with;
use crate::fpgroup::{
    abelian::smith_of, classify, prove_word_trivial, AbelianGroup, Budget, BudgetUsed, Certificate, Claim,
    Presentation, Word,
};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

/// `VAR.NAME`: a tracked torus or surface of a bound model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub var: String,
    pub name: String,
}

impl Piece {
    pub fn new(var: &str, name: &str) -> Self {
        Piece { var: var.to_string(), name: name.to_string() }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.var, self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlockSpec {
    Catalog(BlockId),
    /// Homology-level symmetric square of a genus-`g` surface.
    Sym2(Expr),
    /// `Y × S¹`, `Y` the mapping torus of the genus-`n` twist `x ↦ x, y ↦ y x`.
    Twist(Expr),
    /// `Y × S¹` for an explicit monodromy, images of `x1, y1, x2, …`.
    MTorus(Vec<String>),
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSpec::Catalog(id) => write!(f, "{id}"),
            BlockSpec::Sym2(g) => write!(f, "sym2({g})"),
            BlockSpec::Twist(n) => write!(f, "twist({n})"),
            BlockSpec::MTorus(ws) => write!(f, "mtorus({})", ws.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MapSpec {
    Named(String),
    Inline(Vec<String>),
}

impl MapSpec {
    fn gluing(&self) -> Result<GluingMap, ModelError> {
        match self {
            MapSpec::Named(n) => gluing_by_name(n).ok_or_else(|| ModelError::Invalid(format!("unknown gluing map `{n}`"))),
            MapSpec::Inline(ws) => {
                let refs: Vec<&str> = ws.iter().map(String::as_str).collect();
                Ok(GluingMap::inline(&refs))
            }
        }
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Named(n) => f.write_str(n),
            MapSpec::Inline(ws) => write!(f, "inline({})", ws.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Block { id: BlockSpec, var: String },
    /// Genus-2 sum; `source` is consumed and the result is bound to the target's variable.
    Sum2 { source: Piece, target: Piece, map: MapSpec, quotient: bool },
    /// Torus sum; `map` gives the images of the source push-offs in the target.
    SumT { source: Piece, target: Piece, map: MapSpec },
    Surgery { at: Piece, p: Expr, q: Expr, a: Expr, b: Expr },
    Fill { at: Piece },
    BlowUp { var: String, on: Option<String> },
    /// Record that the intersection form is odd for a reason outside the model.
    AssumeOdd { var: String },
    /// Take the complement data of a torus as exact (required by torus sums).
    Trust { at: Piece },
}

impl Step {
    /// Variable bound (or rebound) by the step.
    pub fn result_var(&self) -> &str {
        match self {
            Step::Block { var, .. } | Step::BlowUp { var, .. } | Step::AssumeOdd { var } => var,
            Step::Sum2 { target, .. } | Step::SumT { target, .. } => &target.var,
            Step::Surgery { at, .. } | Step::Fill { at } | Step::Trust { at } => &at.var,
        }
    }
}

/// Expected fundamental group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClaimSpec {
    Trivial,
    InfiniteCyclic,
    Finite(Expr),
    FreeAbelian(Expr),
    Free(Expr),
    FiniteAbelian(Vec<Expr>),
    Abelian(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Pi1(ClaimSpec),
    /// `Z/c1 ⊕ … ⊕ Z/cn`, `ci = 0` meaning `Z`.
    H1(Vec<Expr>),
    ESigma(Expr, Expr),
    Freedman(Expr, Expr),
    WordTrivial(String),
    /// Meridian and push-offs of a torus, compared word by word.
    PushOff { at: Piece, words: Vec<String>, aliases: Vec<(String, String)> },
    Arith(Expr, Expr),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssertKind {
    Pi1Certificate,
    H1Equals,
    ESigmaEquals,
    FreedmanEquals,
    WordTrivial,
    PushoffWords,
    ArithmeticIdentity,
}

impl fmt::Display for AssertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssertKind::Pi1Certificate => "pi1_certificate",
            AssertKind::H1Equals => "h1_equals",
            AssertKind::ESigmaEquals => "e_sigma_equals",
            AssertKind::FreedmanEquals => "freedman_equals",
            AssertKind::WordTrivial => "word_trivial",
            AssertKind::PushoffWords => "pushoff_words",
            AssertKind::ArithmeticIdentity => "arithmetic_identity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assertion {
    pub check: Check,
    /// Demand an exact presentation rather than an upper bound.
    pub exact: bool,
}

impl Assertion {
    pub fn new(check: Check) -> Self {
        Assertion { check, exact: false }
    }

    pub fn kind(&self) -> AssertKind {
        match self.check {
            Check::Pi1(_) => AssertKind::Pi1Certificate,
            Check::H1(_) => AssertKind::H1Equals,
            Check::ESigma(..) => AssertKind::ESigmaEquals,
            Check::Freedman(..) => AssertKind::FreedmanEquals,
            Check::WordTrivial(_) => AssertKind::WordTrivial,
            Check::PushOff { .. } => AssertKind::PushoffWords,
            Check::Arith(..) => AssertKind::ArithmeticIdentity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamDecl {
    pub name: String,
    pub default: BigInt,
    /// Inclusive bounds.
    pub range: Option<(BigInt, BigInt)>,
}

impl ParamDecl {
    pub fn new(name: &str, default: i64, range: Option<(i64, i64)>) -> Self {
        ParamDecl { name: name.to_string(), default: default.into(), range: range.map(|(a, b)| (a.into(), b.into())) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recipe {
    pub name: String,
    pub params: Vec<ParamDecl>,
    pub steps: Vec<Step>,
    pub assertions: Vec<Assertion>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RecipeError {
    #[error("unknown recipe `{0}`")]
    UnknownRecipe(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("parameter {name} = {value} out of range {lo}..{hi}")]
    OutOfRange { name: String, value: BigInt, lo: BigInt, hi: BigInt },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("step {step} (`{directive}`): {message}")]
    Step { step: usize, directive: String, message: String },
    #[error("assertion {index}: {message}")]
    Assertion { index: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Unknown,
    Fail,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Unknown => "unknown",
            Outcome::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertionResult {
    pub kind: AssertKind,
    pub expected: String,
    pub actual: String,
    pub outcome: Outcome,
    pub exact: bool,
    /// How the outcome was reached: a certificate method, `derivation`,
    /// `abelianization`, `smith-normal-form` or `arithmetic`.
    pub method: String,
    pub budget_used: BudgetUsed,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub directive: String,
    pub entries: Vec<LogEntry>,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub recipe: String,
    pub params: Vec<(String, BigInt)>,
    /// Variable holding the final model; `None` for arithmetic-only recipes.
    pub model: Option<String>,
    pub steps: Vec<StepRecord>,
    pub report: Option<CharacteristicReport>,
    pub assertions: Vec<AssertionResult>,
    /// Torus complements taken on trust.
    pub trusted: Vec<String>,
    pub budget_used: BudgetUsed,
    pub wall_time: Duration,
}

impl RunReport {
    /// Worst outcome over all assertions.
    pub fn outcome(&self) -> Outcome {
        self.assertions.iter().map(|a| a.outcome).max().unwrap_or(Outcome::Pass)
    }
}

pub type Params = BTreeMap<String, BigInt>;

/// Defaults overridden by `overrides`, with declared ranges enforced.
pub fn bind_params(r: &Recipe, overrides: &[(String, BigInt)]) -> Result<Params, RecipeError> {
    let mut out: Params = r.params.iter().map(|p| (p.name.clone(), p.default.clone())).collect();
    for (k, v) in overrides {
        if !out.contains_key(k) {
            return Err(RecipeError::UnknownParam(k.clone()));
        }
        out.insert(k.clone(), v.clone());
    }
    for p in &r.params {
        if let Some((lo, hi)) = &p.range {
            let v = &out[&p.name];
            if v < lo || v > hi {
                return Err(RecipeError::OutOfRange { name: p.name.clone(), value: v.clone(), lo: lo.clone(), hi: hi.clone() });
            }
        }
    }
    Ok(out)
}

/// Models built by a recipe's steps.
#[derive(Clone, Debug)]
pub struct Built {
    pub models: BTreeMap<String, ManifoldModel>,
    /// `None` for a recipe without steps.
    pub last: Option<String>,
    pub records: Vec<StepRecord>,
    pub trusted: Vec<String>,
}

impl Built {
    pub fn final_model(&self) -> Option<&ManifoldModel> {
        self.last.as_ref().map(|v| &self.models[v])
    }
}

fn lookup_of(budget: &Budget) -> impl Fn(Invariant, &str, &[BigInt]) -> Result<BigInt, String> + '_ {
    move |what, target, args| {
        let model = reference_model(target, args, budget)?;
        Ok(match what {
            Invariant::Euler => model.e.into(),
            Invariant::Signature => model.sigma.into(),
        })
    }
}

/// Block or built-in recipe named in an `e[..]` / `sigma[..]` reference.
fn reference_model(target: &str, args: &[BigInt], budget: &Budget) -> Result<ManifoldModel, String> {
    let small = |i: usize| -> Result<usize, String> {
        args.get(i).and_then(|a| a.to_usize()).ok_or_else(|| format!("`{target}` needs a non-negative argument"))
    };
    if let Ok(id) = target.parse::<BlockId>() {
        return Ok(make_block(id));
    }
    match target {
        "sym2" => sym2_block(small(0)?).map_err(|e| e.to_string()),
        "twist" => twist_block(small(0)?).map_err(|e| e.to_string()),
        _ => {
            let b = find_builtin(target).ok_or_else(|| format!("unknown block or recipe `{target}`"))?;
            let overrides: Vec<(String, BigInt)> =
                b.params.iter().zip(args).map(|(p, v)| (p.name.clone(), v.clone())).collect();
            let r = instantiate(target, &overrides).map_err(|e| e.to_string())?;
            let params = bind_params(&r, &overrides).map_err(|e| e.to_string())?;
            let built = build(&r, &params, budget).map_err(|e| e.to_string())?;
            built.final_model().cloned().ok_or_else(|| format!("recipe `{target}` builds no model"))
        }
    }
}

/// Mapping torus of the genus-`n` twist `x_i ↦ x_i, y_i ↦ y_i x_i`, times a circle.
pub fn twist_block(n: usize) -> Result<ManifoldModel, ModelError> {
    if n == 0 {
        return Err(ModelError::Invalid("twist needs genus at least 1".into()));
    }
    let images: Vec<String> = (1..=n).flat_map(|i| [format!("x{i}"), format!("y{i} x{i}")]).collect();
    let refs: Vec<&str> = images.iter().map(String::as_str).collect();
    let mut m = mapping_torus_block(n, &refs)?;
    m.name = format!("twist({n})");
    Ok(m)
}

/// Model for a block id, with size arguments evaluated over `params`.
pub fn block_model(id: &BlockSpec, params: &Params) -> Result<ManifoldModel, String> {
    let pv = |n: &str| params.get(n).cloned();
    let size = |e: &Expr| -> Result<usize, String> {
        let v = e.eval_plain(&pv).map_err(|e| e.to_string())?;
        v.to_usize().ok_or_else(|| format!("`{e}` must be a non-negative integer"))
    };
    match id {
        BlockSpec::Catalog(b) => Ok(make_block(*b)),
        BlockSpec::Sym2(g) => sym2_block(size(g)?).map_err(|e| e.to_string()),
        BlockSpec::Twist(n) => twist_block(size(n)?).map_err(|e| e.to_string()),
        BlockSpec::MTorus(ws) => {
            let refs: Vec<&str> = ws.iter().map(String::as_str).collect();
            mapping_torus_block(ws.len() / 2, &refs).map_err(|e| e.to_string())
        }
    }
}

/// Run the steps only.
pub fn build(r: &Recipe, params: &Params, budget: &Budget) -> Result<Built, RecipeError> {
    let mut models: BTreeMap<String, ManifoldModel> = BTreeMap::new();
    let mut records = Vec::new();
    let mut trusted = Vec::new();
    let mut last = None;
    let pv = |n: &str| params.get(n).cloned();
    for (i, step) in r.steps.iter().enumerate() {
        let directive = text::serialize_step(step);
        let fail = |message: String| RecipeError::Step { step: i + 1, directive: directive.clone(), message };
        let get = |models: &BTreeMap<String, ManifoldModel>, v: &str| {
            models.get(v).cloned().ok_or_else(|| fail(format!("`{v}` is not bound")))
        };
        let int = |e: &Expr| e.eval_i64(&pv).map_err(|e| fail(e.to_string()));
        let calc = |e: CalculusError| fail(e.to_string());
        let model_err = |e: ModelError| fail(e.to_string());
        let (var, before, out) = match step {
            Step::Block { id, var } => (var.clone(), 0, block_model(id, params).map_err(fail)?),
            Step::Sum2 { source, target, map, quotient } => {
                if source.var == target.var {
                    return Err(fail("a model cannot be summed with itself".into()));
                }
                let s = get(&models, &source.var)?;
                let t = get(&models, &target.var)?;
                let phi = map.gluing().map_err(model_err)?;
                let out = if *quotient {
                    sum_genus2_quotient(&s, &source.name, &t, &target.name, &phi, budget)
                } else {
                    sum_genus2_amalgam(&s, &source.name, &t, &target.name, &phi)
                }
                .map_err(calc)?;
                models.remove(&source.var);
                (target.var.clone(), t.log.len(), out)
            }
            Step::SumT { source, target, map } => {
                if source.var == target.var {
                    return Err(fail("a model cannot be summed with itself".into()));
                }
                let s = get(&models, &source.var)?;
                let t = get(&models, &target.var)?;
                let phi = map.gluing().map_err(model_err)?;
                let out = sum_torus(&s, &source.name, &t, &target.name, &phi).map_err(calc)?;
                models.remove(&source.var);
                (target.var.clone(), t.log.len(), out)
            }
            Step::Surgery { at, p, q, a, b } => {
                let m = get(&models, &at.var)?;
                let spec = SurgerySpec::new(&at.name, int(p)?, int(q)?, int(a)?, int(b)?);
                (at.var.clone(), m.log.len(), torus_surgery(&m, &spec).map_err(calc)?)
            }
            Step::Fill { at } => {
                let m = get(&models, &at.var)?;
                (at.var.clone(), m.log.len(), fill(&m, &at.name).map_err(calc)?)
            }
            Step::BlowUp { var, on } => {
                let m = get(&models, var)?;
                (var.clone(), m.log.len(), blow_up(&m, on.as_deref()).map_err(calc)?)
            }
            Step::AssumeOdd { var } => {
                let mut m = get(&models, var)?;
                let n = m.log.len();
                m.odd_witness = Some("assumed".into());
                (var.clone(), n, m)
            }
            Step::Trust { at } => {
                let mut m = get(&models, &at.var)?;
                let n = m.log.len();
                m.torus_mut(&at.name).map_err(model_err)?.complement_exact = true;
                trusted.push(at.to_string());
                (at.var.clone(), n, m)
            }
        };
        let mut out = out;
        out.name = var.clone();
        records.push(StepRecord { directive, entries: out.log[before.min(out.log.len())..].to_vec() });
        models.insert(var.clone(), out);
        last = Some(var);
    }
    Ok(Built { models, last, records, trusted })
}

/// Run a recipe: bind parameters, execute the steps, report on the final
/// model and evaluate every assertion.
pub fn run_recipe(r: &Recipe, overrides: &[(String, BigInt)], budget: &Budget) -> Result<RunReport, RecipeError> {
    let start = Instant::now();
    let params = bind_params(r, overrides)?;
    let built = build(r, &params, budget)?;
    let report = built.final_model().map(|m| characteristic_report(m, budget));
    let mut used = report.as_ref().map(|r| r.certificate.budget_used).unwrap_or_default();
    let mut ctx = Evaluator { built: &built, params: &params, budget, certs: BTreeMap::new(), verdicts: HashMap::new(), used: &mut used };
    if let (Some(v), Some(rep)) = (&built.last, &report) {
        ctx.certs.insert(v.clone(), rep.certificate.clone());
    }
    let mut assertions = Vec::new();
    for (i, a) in r.assertions.iter().enumerate() {
        let res =
            ctx.evaluate(a, report.as_ref()).map_err(|message| RecipeError::Assertion { index: i + 1, message })?;
        assertions.push(res);
    }
    Ok(RunReport {
        recipe: r.name.clone(),
        params: params.into_iter().collect(),
        model: built.last.clone(),
        steps: built.records.clone(),
        report,
        assertions,
        trusted: built.trusted.clone(),
        budget_used: used,
        wall_time: start.elapsed(),
    })
}

struct Evaluator<'a> {
    built: &'a Built,
    params: &'a Params,
    budget: &'a Budget,
    certs: BTreeMap<String, Certificate>,
    verdicts: HashMap<(String, Word), Verdict>,
    used: &'a mut BudgetUsed,
}

fn normalize(c: Claim) -> Claim {
    match c {
        Claim::Free { rank: 0 } | Claim::FreeAbelian { rank: 0 } | Claim::Finite { order: 1 } => Claim::Trivial,
        Claim::Free { rank: 1 } | Claim::FreeAbelian { rank: 1 } => Claim::InfiniteCyclic,
        Claim::FiniteAbelian { group } | Claim::Abelian { group } => abelian_claim(group),
        c => c,
    }
}

fn abelian_claim(g: AbelianGroup) -> Claim {
    match (g.free_rank, g.torsion.is_empty()) {
        (0, true) => Claim::Trivial,
        (1, true) => Claim::InfiniteCyclic,
        (k, true) => Claim::FreeAbelian { rank: k },
        (0, false) => Claim::FiniteAbelian { group: g },
        _ => Claim::Abelian { group: g },
    }
}

fn is_abelian_claim(c: &Claim) -> bool {
    matches!(
        c,
        Claim::Trivial | Claim::InfiniteCyclic | Claim::FreeAbelian { .. } | Claim::FiniteAbelian { .. } | Claim::Abelian { .. }
    )
}

fn claim_order(c: &Claim) -> Option<BigInt> {
    match c {
        Claim::Trivial => Some(1.into()),
        Claim::Finite { order } => Some((*order).into()),
        Claim::FiniteAbelian { group } => group.order(),
        _ => None,
    }
}

impl Evaluator<'_> {
    fn int(&self, e: &Expr) -> Result<BigInt, String> {
        let pv = |n: &str| self.params.get(n).cloned();
        e.eval_int(&pv, &lookup_of(self.budget)).map_err(|e| e.to_string())
    }

    fn ints(&self, es: &[Expr]) -> Result<Vec<BigInt>, String> {
        es.iter().map(|e| self.int(e)).collect()
    }

    fn small(&self, e: &Expr) -> Result<usize, String> {
        self.int(e)?.to_usize().ok_or_else(|| format!("`{e}` must be a non-negative integer"))
    }

    fn expected_claim(&self, spec: &ClaimSpec) -> Result<Claim, String> {
        Ok(normalize(match spec {
            ClaimSpec::Trivial => Claim::Trivial,
            ClaimSpec::InfiniteCyclic => Claim::InfiniteCyclic,
            ClaimSpec::Finite(n) => Claim::Finite { order: self.int(n)?.to_u64().ok_or("order out of range")? },
            ClaimSpec::FreeAbelian(k) => Claim::FreeAbelian { rank: self.small(k)? },
            ClaimSpec::Free(k) => Claim::Free { rank: self.small(k)? },
            ClaimSpec::FiniteAbelian(es) | ClaimSpec::Abelian(es) => {
                Claim::Abelian { group: AbelianGroup::from_cyclic_orders(self.ints(es)?) }
            }
        }))
    }

    fn certificate(&mut self, var: &str) -> Result<Certificate, String> {
        if let Some(c) = self.certs.get(var) {
            return Ok(c.clone());
        }
        let m = self.built.models.get(var).ok_or_else(|| format!("`{var}` is not bound"))?;
        let c = classify(&m.closure(), self.budget);
        add_used(self.used, &c.budget_used);
        self.certs.insert(var.to_string(), c.clone());
        Ok(c)
    }

    /// Is `w` trivial in the closed-up group of `var`?
    fn word_verdict(&mut self, var: &str, w: &Word) -> Result<Verdict, String> {
        let key = (var.to_string(), w.clone());
        if let Some(v) = self.verdicts.get(&key) {
            return Ok(v.clone());
        }
        let v = self.fresh_verdict(var, w)?;
        self.verdicts.insert(key, v.clone());
        Ok(v)
    }

    fn fresh_verdict(&mut self, var: &str, w: &Word) -> Result<Verdict, String> {
        let m = self.built.models.get(var).ok_or_else(|| format!("`{var}` is not bound"))?;
        let p = m.closure();
        let mut used = BudgetUsed::default();
        match prove_word_trivial(&p, w, self.budget) {
            Ok(d) => {
                used.derivation_depth = d.depth();
                used.search_nodes = d.nodes;
                add_used(self.used, &used);
                return Ok(Verdict::new(Outcome::Pass, "derivation", format!("derived, depth {}", d.depth()), used));
            }
            Err(e) => used.search_nodes = e.nodes,
        }
        add_used(self.used, &used);
        if !homology_class_vanishes(&p, w) {
            return Ok(Verdict::new(Outcome::Fail, "abelianization", "nonzero in homology".into(), used));
        }
        let cert = self.certificate(var)?;
        if is_abelian_claim(&cert.claim) {
            let note = format!("zero in homology of the abelian group {}", cert.claim);
            return Ok(Verdict::new(Outcome::Pass, "abelianization", note, used));
        }
        Ok(Verdict::new(Outcome::Unknown, "none", "no derivation within budget".into(), used))
    }

    fn evaluate(&mut self, a: &Assertion, report: Option<&CharacteristicReport>) -> Result<AssertionResult, String> {
        let kind = a.kind();
        let expected = text::serialize_check(&a.check);
        let rep = match (&a.check, report) {
            (Check::Arith(..), _) => None,
            (_, Some(r)) => Some(r),
            (_, None) => return Err("the recipe builds no model".into()),
        };
        let upper = rep.is_some_and(|r| r.exactness != crate::blocks::Exactness::Exact);
        let mut certificate = None;
        let mut method = "arithmetic".to_string();
        let mut used = BudgetUsed::default();
        let (outcome, actual) = match &a.check {
            Check::Pi1(spec) => {
                let report = rep.expect("model checked above");
                let want = self.expected_claim(spec)?;
                let got = normalize(report.certificate.claim.clone());
                certificate = Some(report.certificate.clone());
                method = report.certificate.method.to_string();
                used = report.certificate.budget_used;
                let agree = got == want
                    || matches!((&want, &got), (Claim::Finite { .. }, _) if claim_order(&want) == claim_order(&got));
                let outcome = if got.is_unknown() {
                    Outcome::Unknown
                } else if !agree {
                    Outcome::Fail
                } else if a.exact && upper && got != Claim::Trivial {
                    // a quotient of the presented group could still be smaller
                    Outcome::Unknown
                } else {
                    Outcome::Pass
                };
                (outcome, format!("{got}"))
            }
            Check::H1(es) => {
                let report = rep.expect("model checked above");
                let want = AbelianGroup::from_cyclic_orders(self.ints(es)?);
                method = "smith-normal-form".into();
                let outcome = if report.h1 != want {
                    Outcome::Fail
                } else if a.exact && upper {
                    Outcome::Unknown
                } else {
                    Outcome::Pass
                };
                (outcome, report.h1.to_string())
            }
            Check::ESigma(e, s) => {
                let report = rep.expect("model checked above");
                let ok = self.int(e)? == report.e.into() && self.int(s)? == report.sigma.into();
                (pass_if(ok), format!("{} {}", report.e, report.sigma))
            }
            Check::Freedman(m, n) => {
                let report = rep.expect("model checked above");
                let want = (self.int(m)?, self.int(n)?);
                match report.freedman {
                    Some((fm, fnn)) => (pass_if(want == (fm.into(), fnn.into())), format!("{fm} {fnn}")),
                    None if report.certificate.claim.is_unknown() || report.certificate.claim == Claim::Trivial => {
                        (Outcome::Unknown, "not determined".into())
                    }
                    None => (Outcome::Fail, format!("not simply connected ({})", report.certificate.claim)),
                }
            }
            Check::WordTrivial(text) => {
                let var = self.built.last.clone().ok_or("the recipe builds no model")?;
                let m = &self.built.models[&var];
                let w = m.word(text).map_err(|e| e.to_string())?;
                let v = self.word_verdict(&var, &w)?;
                method = v.method.into();
                used = v.used;
                (v.outcome, v.note)
            }
            Check::PushOff { at, words, aliases } => {
                let m = self.built.models.get(&at.var).ok_or_else(|| format!("`{}` is not bound", at.var))?.clone();
                let t = m.torus(&at.name).map_err(|e| e.to_string())?.clone();
                let mut worst = Outcome::Pass;
                let mut notes = Vec::new();
                let mut methods: Vec<&str> = Vec::new();
                for (have, want) in [&t.mu, &t.m, &t.ell].into_iter().zip(words) {
                    let w = parse_word_with(want, |s| {
                        let s = aliases.iter().find(|(k, _)| k == s).map(|(_, v)| v.as_str()).unwrap_or(s);
                        m.presentation.gen_word(s)
                    })
                    .map_err(|e| format!("word `{want}`: {e}"))?;
                    let v = self.word_verdict(&at.var, &have.mul(&w.inverse()))?;
                    worst = worst.max(v.outcome);
                    add_used(&mut used, &v.used);
                    if !methods.contains(&v.method) {
                        methods.push(v.method);
                    }
                    notes.push(format!("{} ~ {want}: {}", m.presentation.format_word(have), v.note));
                }
                method = methods.join("+");
                (worst, notes.join("; "))
            }
            Check::Arith(l, r) => {
                let pv = |n: &str| self.params.get(n).cloned();
                let look = lookup_of(self.budget);
                let lv = l.eval(&pv, &look).map_err(|e| e.to_string())?;
                let rv = r.eval(&pv, &look).map_err(|e| e.to_string())?;
                (pass_if(lv == rv), format!("{lv} vs {rv}"))
            }
        };
        Ok(AssertionResult { kind, expected, actual, outcome, exact: a.exact, method, budget_used: used, certificate })
    }
}

#[derive(Clone, Debug)]
struct Verdict {
    outcome: Outcome,
    method: &'static str,
    note: String,
    used: BudgetUsed,
}

impl Verdict {
    fn new(outcome: Outcome, method: &'static str, note: String, used: BudgetUsed) -> Self {
        Verdict { outcome, method, note, used }
    }
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn add_used(total: &mut BudgetUsed, more: &BudgetUsed) {
    total.cosets += more.cosets;
    total.tietze_passes += more.tietze_passes;
    total.derivation_depth = total.derivation_depth.max(more.derivation_depth);
    total.search_nodes += more.search_nodes;
}

fn homology_class_vanishes(p: &Presentation, w: &Word) -> bool {
    let snf = smith_of(p);
    let (free, tors) = snf.coordinates(&w.exponent_sums(p.ngens()));
    free.iter().chain(tors.iter()).all(Zero::is_zero)
}

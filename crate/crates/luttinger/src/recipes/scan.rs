//! Geography scan: every combination of fills and `(1,k)` surgeries on the
//! tori of a block, each classified under a small budget.

use crate::blocks::{make_block, BlockId, ManifoldModel};
use crate::calculus::{characteristic_report, fill, torus_surgery, CalculusError, SurgerySpec};
use crate::fpgroup::{AbelianGroup, Budget, Claim, Method};
use num_rational::Rational64;
use rayon::prelude::*;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScanDirection {
    M,
    L,
}

impl fmt::Display for ScanDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanDirection::M => "m",
            ScanDirection::L => "l",
        })
    }
}

/// What happens to one torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScanChoice {
    Fill,
    /// Relator `mu (dir)^k`.
    Surgery { k: i64, dir: ScanDirection },
}

impl fmt::Display for ScanChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanChoice::Fill => f.write_str("fill"),
            ScanChoice::Surgery { k, dir } => write!(f, "{k}{dir}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub choices: Vec<(String, ScanChoice)>,
    pub h1: AbelianGroup,
    pub e: i64,
    pub sigma: i64,
    pub c1sq: i64,
    pub chi_h: Rational64,
    pub claim: Claim,
    pub method: Method,
}

/// Per-torus options, deduplicated: `k = 0` is the fill whatever the direction.
pub fn scan_options(ks: &[i64], dirs: &[ScanDirection]) -> Vec<ScanChoice> {
    let mut out = Vec::new();
    if ks.contains(&0) {
        out.push(ScanChoice::Fill);
    }
    let mut ks: Vec<i64> = ks.iter().copied().filter(|&k| k != 0).collect();
    ks.sort_unstable();
    ks.dedup();
    let mut dirs = dirs.to_vec();
    dirs.sort();
    dirs.dedup();
    for k in ks {
        for &dir in &dirs {
            out.push(ScanChoice::Surgery { k, dir });
        }
    }
    out
}

fn apply(model: &ManifoldModel, torus: &str, c: ScanChoice) -> Result<ManifoldModel, CalculusError> {
    match c {
        ScanChoice::Fill => fill(model, torus),
        ScanChoice::Surgery { k, dir } => {
            let (a, b) = if dir == ScanDirection::M { (1, 0) } else { (0, 1) };
            torus_surgery(model, &SurgerySpec::new(torus, 1, k, a, b))
        }
    }
}

/// One cell: the choices in torus order.
pub fn scan_cell(base: &ManifoldModel, choices: &[(String, ScanChoice)], budget: &Budget) -> Result<ScanRow, CalculusError> {
    let mut m = base.clone();
    for (t, c) in choices {
        m = apply(&m, t, *c)?;
    }
    let r = characteristic_report(&m, budget);
    Ok(ScanRow {
        choices: choices.to_vec(),
        h1: r.h1,
        e: r.e,
        sigma: r.sigma,
        c1sq: r.c1sq,
        chi_h: r.chi_h,
        claim: r.certificate.claim,
        method: r.certificate.method,
    })
}

/// All cells in lexicographic order of the options, tori in block order.
/// Cells run on `jobs` threads; the order of the result does not depend on it.
pub fn geography_scan(
    base: BlockId,
    ks: &[i64],
    dirs: &[ScanDirection],
    budget: &Budget,
    jobs: usize,
) -> Result<Vec<ScanRow>, CalculusError> {
    let model = make_block(base);
    let tori: Vec<String> = model.tori.iter().map(|t| t.name.clone()).collect();
    let opts = scan_options(ks, dirs);
    if tori.is_empty() || opts.is_empty() {
        return Ok(Vec::new());
    }
    let cells = opts.len().pow(tori.len() as u32);
    let cell = |mut i: usize| {
        let mut choices = vec![(String::new(), ScanChoice::Fill); tori.len()];
        for j in (0..tori.len()).rev() {
            choices[j] = (tori[j].clone(), opts[i % opts.len()]);
            i /= opts.len();
        }
        scan_cell(&model, &choices, budget)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CalculusError::Certificate(format!("thread pool: {e}")))?;
    pool.install(|| (0..cells).into_par_iter().map(cell).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn options_dedup_the_fill() {
        let o = scan_options(&[-1, 0, 1], &[ScanDirection::M, ScanDirection::L]);
        assert_eq!(o.len(), 5);
        assert_eq!(o[0], ScanChoice::Fill);
    }

    #[test]
    fn fills_only_give_the_block_homology() {
        let rows = geography_scan(BlockId::Z, &[0], &[ScanDirection::M], &Budget::default(), 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].h1, AbelianGroup::free(6));
        assert_eq!((rows[0].e, rows[0].sigma), (6, -2));
    }

    #[test]
    fn order_does_not_depend_on_jobs() {
        let b = Budget { max_cosets: 2000, max_depth: 2, max_tietze_passes: 32, max_nodes: 50 };
        let one = geography_scan(BlockId::M, &[0, 1], &[ScanDirection::M, ScanDirection::L], &b, 1).unwrap();
        let four = geography_scan(BlockId::M, &[0, 1], &[ScanDirection::M, ScanDirection::L], &b, 4).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.len(), 81);
    }
}

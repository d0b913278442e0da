use super::{ManifoldModel, Status};
use std::fmt::Write;

fn pad(cells: &[Vec<String>]) -> String {
    let ncol = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncol).map(|c| cells.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        let _ = writeln!(out, "  {}", line.join("  ").trim_end());
    }
    out
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Available => "available",
        Status::Surgered => "surgered",
        Status::Filled => "filled",
    }
}

/// Plain-text table of generators, relators, tracked pieces and numbers.
pub fn show_block(m: &ManifoldModel) -> String {
    let p = &m.presentation;
    let mut out = String::new();
    let _ = writeln!(out, "block {}", m.name);
    let _ = writeln!(out, "generators ({}): {}", p.ngens(), p.symbols().join(" "));
    let _ = writeln!(out, "relators ({}):", p.relators().len());
    for r in p.relators() {
        let _ = writeln!(out, "  {}", p.format_word_pretty(r));
    }
    if !m.tori.is_empty() {
        let _ = writeln!(out, "tori ({}):", m.tori.len());
        let mut rows = vec![vec!["name".into(), "mu".into(), "m".into(), "l".into(), "status".into()]];
        for t in &m.tori {
            rows.push(vec![
                t.name.clone(),
                p.format_word_pretty(&t.mu),
                p.format_word_pretty(&t.m),
                p.format_word_pretty(&t.ell),
                status(t.status).into(),
            ]);
        }
        out.push_str(&pad(&rows));
    }
    if !m.surfaces.is_empty() {
        let _ = writeln!(out, "surfaces ({}):", m.surfaces.len());
        let mut rows = vec![vec!["name".into(), "genus".into(), "mu".into(), "loops".into(), "status".into()]];
        for s in &m.surfaces {
            let loops: Vec<String> = s.loop_words.iter().map(|w| p.format_word_pretty(w)).collect();
            rows.push(vec![
                s.name.clone(),
                s.genus.to_string(),
                p.format_word_pretty(&s.mu),
                loops.join(" "),
                status(s.status).into(),
            ]);
        }
        out.push_str(&pad(&rows));
    }
    let _ = writeln!(out, "e = {}, sigma = {}", m.e, m.sigma);
    let _ = writeln!(out, "exactness: {}", m.exactness);
    if let Some(f) = &m.form {
        let rows: Vec<String> =
            f.odd_block.iter().map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))).collect();
        let _ = writeln!(
            out,
            "form: {} hyperbolic pairs + [{}] on {}",
            f.hyperbolic_pairs,
            rows.join(","),
            f.basis.join(",")
        );
    }
    if m.abelian_only {
        let _ = writeln!(out, "abelian-only");
    }
    out
}

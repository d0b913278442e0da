//! Geography scan of block Z: every fill or (1,-1) surgery on its six tori.
//!
//! cargo run --release --example scan

use luttinger::cli::scan_budget;
use luttinger::recipes::{geography_scan, ScanDirection};
use std::collections::BTreeMap;

fn main() {
    let rows = geography_scan("Z".parse().unwrap(), &[-1, 0], &[ScanDirection::M, ScanDirection::L], &scan_budget(), 1).unwrap();
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for r in &rows {
        *tally.entry(format!("{} / H1 = {}", r.claim, r.h1)).or_default() += 1;
    }
    println!("{} cells", rows.len());
    for (k, n) in tally {
        println!("{n:>6}  {k}");
    }
}

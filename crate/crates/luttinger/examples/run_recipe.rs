//! Run a built-in recipe with parameter overrides and print the report.
//!
//! cargo run --example run_recipe -- Yfamily n=-5

use luttinger::cli::{parse_param, render_text};
use luttinger::fpgroup::Budget;
use luttinger::recipes::{instantiate, run_recipe};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "cool".into());
    let params: Vec<_> = args.map(|a| parse_param(&a).unwrap()).collect();
    let r = instantiate(&name, &params).unwrap();
    let rep = run_recipe(&r, &params, &Budget::default()).unwrap();
    print!("{}", render_text(&rep));
}

//! Write a recipe as text, parse it, serialize it back.
//!
//! cargo run --example recipe_text

use luttinger::fpgroup::Budget;
use luttinger::recipes::{parse_recipe, run_recipe, serialize_recipe};

const TEXT: &str = "\
recipe fills
param k default 1 range -3..3
block Z as X
surgery X.T1' p 1 q k dir m^1 l^0
fill X.T1
fill X.T2
fill X.T2'
fill X.T3
fill X.T4
fill X.F
assert e_sigma 6 -2
assert arith 2*6+3*(-2) == 6
";

fn main() {
    let r = parse_recipe(TEXT).unwrap();
    let back = serialize_recipe(&r);
    print!("{back}");
    assert_eq!(parse_recipe(&back).unwrap(), r);
    let rep = run_recipe(&r, &[], &Budget::default()).unwrap();
    let h1 = rep.report.as_ref().map(|c| c.h1.to_string()).unwrap_or_default();
    println!("\noutcome {}, H1 = {h1}", rep.outcome());
}

//! Run every built-in recipe at its defaults and print one line each.

use luttinger::fpgroup::Budget;
use luttinger::recipes::{builtin_recipes, instantiate, run_recipe};

fn main() {
    let budget = Budget::default();
    for b in builtin_recipes() {
        let r = instantiate(b.name, &[]).expect("built-ins expand");
        match run_recipe(&r, &[], &budget) {
            Ok(rep) => {
                println!("{:<12} {:<8} {:>8.2?}", b.name, rep.outcome(), rep.wall_time);
                for a in rep.assertions.iter().filter(|a| a.outcome != luttinger::recipes::Outcome::Pass) {
                    println!("    {} {}: {} (got {})", a.kind, a.expected, a.outcome, a.actual);
                }
            }
            Err(e) => println!("{:<12} error    {e}", b.name),
        }
    }
}

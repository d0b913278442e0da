//! Simplify the closed-up presentation of the ZZ recipe.
//!
//! cargo run --example tietze

use luttinger::fpgroup::{tietze_simplify, Budget};
use luttinger::recipes::{bind_params, build, instantiate};

fn main() {
    let r = instantiate("ZZ", &[]).unwrap();
    let params = bind_params(&r, &[]).unwrap();
    let budget = Budget::default();
    let built = build(&r, &params, &budget).unwrap();
    let closure = built.final_model().unwrap().closure();
    println!("before: {} generators, {} relators", closure.ngens(), closure.relators().len());
    let s = tietze_simplify(&closure, &budget);
    println!("after {} passes: {}", s.passes, s.presentation);
    println!("eliminated: {}", s.eliminated.join(" "));
    for g in 0..closure.ngens() {
        let w = closure.gen_word(closure.symbol(g)).unwrap();
        println!("  {} -> {}", closure.symbol(g), s.presentation.format_word(&s.image(&w)));
    }
}

//! Print the catalog blocks: generators, relators, tori, surfaces, form.
//!
//! cargo run --example show_block [ID]

use luttinger::blocks::{make_block, show_block, BLOCK_IDS};

fn main() {
    let want = std::env::args().nth(1);
    for id in BLOCK_IDS {
        if want.as_deref().is_some_and(|w| w != id.to_string()) {
            continue;
        }
        println!("{}", show_block(&make_block(id)));
    }
}

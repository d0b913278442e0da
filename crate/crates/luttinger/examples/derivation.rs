//! Derive a Z relator from the W2 relators pushed through eq-phi plus the M
//! relators, and replay the derivation by free reduction.
//!
//! cargo run --example derivation

use luttinger::blocks::{gluing_by_name, make_block, BlockId};
use luttinger::fpgroup::{prove_word_trivial, reduce, Budget, Word};

fn main() {
    let m = make_block(BlockId::M);
    let w2 = make_block(BlockId::W2);
    let z = make_block(BlockId::Z);
    let phi = gluing_by_name("eq-phi").unwrap().resolve(&m.presentation, None).unwrap();
    let pushed: Vec<Word> = w2.presentation.relators().iter().map(|r| r.substitute(&phi)).collect();
    let p = m.presentation.clone().with_relators(pushed).unwrap();
    for (i, r) in p.relators().iter().enumerate() {
        println!("r{i} = {}", p.format_word(r));
    }
    for r in z.presentation.relators() {
        let target = r.substitute(&z.presentation.symbols().iter().map(|s| p.gen_word(s).unwrap()).collect::<Vec<_>>());
        match prove_word_trivial(&p, &target, &Budget::default()) {
            Ok(d) => {
                let factors: Vec<String> = d
                    .steps
                    .iter()
                    .map(|s| format!("r{}^{} by {}", s.relator, s.sign, p.format_word(&s.conjugator)))
                    .collect();
                assert_eq!(reduce(&d.expand(&p)), reduce(&target));
                println!("{:<12} depth {}: {}", z.format(r), d.depth(), factors.join(" * "));
            }
            Err(e) => println!("{:<12} {e}", z.format(r)),
        }
    }
}

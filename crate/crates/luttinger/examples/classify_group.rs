//! Parse a few presentations, abelianize them and classify.
//!
//! cargo run --example classify_group

use luttinger::fpgroup::{abelianize, classify, Budget, Presentation};

fn main() {
    let cases: [(&[&str], &[&str]); 5] = [
        (&["a", "b"], &["[a,b]"]),
        (&["a", "b"], &["a^3", "b^2", "a b a b"]),
        (&["a", "b"], &["a b a^-1 b^-2", "b a b^-1 a^-2"]),
        (&["a", "b", "c"], &[]),
        (&["a", "b"], &["[a,b]", "a^4 b^6"]),
    ];
    for (gens, rels) in cases {
        let p = Presentation::new(gens).unwrap();
        let p = p.clone().with_relators(rels.iter().map(|r| p.parse_word(r).unwrap())).unwrap();
        let c = classify(&p, &Budget::default());
        println!("{p}\n  H1 = {}\n  pi1: {} via {}", abelianize(&p), c.claim, c.method);
    }
}

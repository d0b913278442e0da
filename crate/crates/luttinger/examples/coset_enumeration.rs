//! Todd-Coxeter on the binary polyhedral groups <a,b | a^2 = b^3 = (ab)^n>, and
//! the index of a cyclic subgroup.
//!
//! cargo run --example coset_enumeration

use luttinger::fpgroup::{todd_coxeter, Budget, Presentation};

fn main() {
    let budget = Budget::default();
    for n in 2..=5 {
        let p = Presentation::new(&["a", "b"]).unwrap();
        let ab = p.parse_word("a b").unwrap();
        let a2 = p.parse_word("a^2").unwrap();
        let b3 = p.parse_word("b^3").unwrap();
        let p = p.clone().with_relators([a2.mul(&b3.inverse()), a2.mul(&ab.pow(n).inverse())]).unwrap();
        let all = todd_coxeter(&p, &[], &budget).unwrap();
        let sub = todd_coxeter(&p, &[p.parse_word("a").unwrap()], &budget).unwrap();
        println!("n = {n}: order {}, [G : <a>] = {}, {} cosets defined", all.index, sub.index, all.defined);
    }
}

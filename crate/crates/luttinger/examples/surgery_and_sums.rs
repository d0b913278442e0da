//! Build the cool manifold by hand from Z: six Luttinger surgeries and a fill,
//! printing the log, then a genus-2 sum of W1 into W2.
//!
//! cargo run --example surgery_and_sums

use luttinger::blocks::{gluing_by_name, make_block, BlockId};
use luttinger::calculus::{characteristic_report, fill, sum_genus2_quotient, torus_surgery, SurgerySpec};
use luttinger::fpgroup::Budget;

fn main() {
    let budget = Budget::default();
    let mut x = make_block(BlockId::Z);
    let plan = [("T1'", 1, (1, 0)), ("T1", -1, (1, 0)), ("T2", -1, (0, 1)), ("T2'", 1, (0, 1)), ("T3", -1, (0, 1)), ("T4", -1, (1, 0))];
    for (t, p, (a, b)) in plan {
        x = torus_surgery(&x, &SurgerySpec::new(t, p, 1, a, b)).unwrap();
    }
    x = fill(&x, "F").unwrap();
    for l in &x.log {
        println!("{:<36} b1 {} -> {}  adds {}", l.op, l.b1_before, l.b1_after, l.relators_added.join(", "));
    }
    let r = characteristic_report(&x, &budget);
    println!("e = {}, sigma = {}, pi1 {}, freedman {:?}\n", r.e, r.sigma, r.certificate.claim, r.freedman);

    let w1 = make_block(BlockId::W1);
    let w2 = make_block(BlockId::W2);
    let s = sum_genus2_quotient(&w1, "F1", &w2, "F2", &gluing_by_name("identity4").unwrap(), &budget).unwrap();
    let r = characteristic_report(&s, &budget);
    println!("W1 # W2: e = {}, sigma = {}, H1 = {}, pi1 {}", r.e, r.sigma, r.h1, r.certificate.claim);
}

use luttinger::blocks::{make_block, BlockId, BLOCK_IDS};
use luttinger::calculus::{characteristic_report, fill, torus_surgery, SurgerySpec};
use luttinger::fpgroup::{
    abelianize, classify, prove_word_trivial, reduce, tietze_simplify, todd_coxeter, AbelianGroup, Budget, Claim,
    Presentation, Word,
};
use luttinger::recipes::{builtin_recipes, instantiate, parse_recipe, serialize_recipe};
use num_bigint::BigInt;
use proptest::prelude::*;

fn word(max_gen: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..max_gen, -3i64..=3), 0..max_len).prop_map(Word::from_syllables)
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(word(n, 5), 0..=3).prop_map(move |rels| {
            let p = Presentation::new(&["a", "b", "c"][..n]).unwrap();
            p.with_relators(rels.into_iter().filter(|w| !reduce(w).is_identity())).unwrap()
        })
    })
}

fn small() -> Budget {
    Budget { max_cosets: 5_000, max_depth: 4, max_tietze_passes: 64, max_nodes: 300 }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn reduce_is_idempotent(w in word(4, 12)) {
        let r = reduce(&w);
        prop_assert_eq!(reduce(&r), r);
    }

    #[test]
    fn inverse_cancels(w in word(4, 12)) {
        prop_assert!(reduce(&w.mul(&w.inverse())).is_identity());
        prop_assert!(reduce(&w.inverse().mul(&w)).is_identity());
    }

    #[test]
    fn multiplication_associates(u in word(3, 6), v in word(3, 6), w in word(3, 6)) {
        prop_assert_eq!(reduce(&u.mul(&v).mul(&w)), reduce(&u.mul(&v.mul(&w))));
    }

    #[test]
    fn exponent_sums_are_additive(u in word(3, 8), v in word(3, 8)) {
        let s: Vec<i64> = u.exponent_sums(3).iter().zip(v.exponent_sums(3)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(u.mul(&v).exponent_sums(3), s);
    }

    #[test]
    fn cyclic_reduction_is_a_conjugate(w in word(3, 10)) {
        let c = w.cyclically_reduced();
        prop_assert!(c.len() <= reduce(&w).len());
        prop_assert_eq!(c.exponent_sums(3), w.exponent_sums(3));
        prop_assert_eq!(c.cyclically_reduced(), c);
    }

    #[test]
    fn simplification_keeps_the_abelianization(p in presentation()) {
        let s = tietze_simplify(&p, &small());
        prop_assert_eq!(abelianize(&s.presentation), abelianize(&p));
    }

    #[test]
    fn classify_agrees_with_abelianize(p in presentation()) {
        let h = abelianize(&p);
        match classify(&p, &small()).claim {
            Claim::Trivial => prop_assert!(h.is_trivial()),
            Claim::Finite { order } => prop_assert!(h.order().is_some_and(|o| BigInt::from(order) % o == BigInt::from(0))),
            Claim::InfiniteCyclic => prop_assert_eq!(h, AbelianGroup::free(1)),
            Claim::FreeAbelian { rank } | Claim::Free { rank } => prop_assert_eq!(h, AbelianGroup::free(rank)),
            Claim::FiniteAbelian { group } | Claim::Abelian { group } => prop_assert_eq!(group, h),
            Claim::Unknown => {}
        }
    }

    #[test]
    fn invariant_factors_divide(orders in prop::collection::vec(0u32..40, 0..5)) {
        let g = AbelianGroup::from_cyclic_orders(orders.iter().map(|&o| BigInt::from(o)));
        prop_assert_eq!(g.free_rank, orders.iter().filter(|&&o| o == 0).count());
        for w in g.torsion.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        let finite: BigInt = orders.iter().filter(|&&o| o > 1).map(|&o| BigInt::from(o)).product();
        let torsion: BigInt = g.torsion.iter().product();
        prop_assert_eq!(torsion, finite);
    }

    #[test]
    fn derivations_replay(i in 0usize..3, conj in word(2, 4), inv in any::<bool>(), j in 0usize..3) {
        let p = Presentation::new(&["a", "b"]).unwrap();
        let rels: Vec<Word> = ["[a,b]", "a^4", "b^3"].iter().map(|r| p.parse_word(r).unwrap()).collect();
        let p = p.with_relators(rels).unwrap();
        let w = p.relators()[i].pow(if inv { -1 } else { 1 }).conjugate_by(&conj).mul(&p.relators()[j]);
        let d = prove_word_trivial(&p, &w, &Budget::default()).unwrap();
        prop_assert!(d.depth() <= 2);
        prop_assert_eq!(reduce(&d.expand(&p)), reduce(&w));
    }

    #[test]
    fn dihedral_orders(n in 1usize..30) {
        let p = Presentation::new(&["a", "b"]).unwrap();
        let rels = [format!("a^{n}"), "b^2".to_string(), "a b a b".to_string()];
        let p = p.clone().with_relators(rels.iter().map(|r| p.parse_word(r).unwrap())).unwrap();
        prop_assert_eq!(todd_coxeter(&p, &[], &Budget::default()).unwrap().index, 2 * n);
    }

    #[test]
    fn surgery_on_z_keeps_e_sigma_and_drops_b1(
        picks in prop::collection::vec((0usize..3, -2i64..=2, any::<bool>()), 6),
    ) {
        let mut m = make_block(BlockId::Z);
        let names: Vec<String> = m.tori.iter().map(|t| t.name.clone()).collect();
        for (name, (kind, q, along_m)) in names.iter().zip(picks) {
            let b1 = m.b1();
            let (a, b) = if along_m { (1, 0) } else { (0, 1) };
            m = match kind {
                0 => fill(&m, name).unwrap(),
                1 => torus_surgery(&m, &SurgerySpec::new(name, 1, q, a, b)).unwrap(),
                _ => torus_surgery(&m, &SurgerySpec::new(name, -1, q, a, b)).unwrap(),
            };
            let l = m.log.last().unwrap();
            prop_assert_eq!((l.delta_e, l.delta_sigma), (0, 0));
            prop_assert_eq!(l.b1_before, b1);
            prop_assert!(l.b1_after == b1 || l.b1_after + 1 == b1);
            if kind == 0 || q == 0 {
                prop_assert_eq!(l.b1_after, b1);
            }
        }
        prop_assert_eq!((m.e, m.sigma), (6, -2));
        let r = characteristic_report(&m, &small());
        prop_assert_eq!(r.b2, r.e - 2 + 2 * r.b1 as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn recipes_round_trip_with_parameters(n in -1000i64..=1000, m in 0i64..=8, k in 0i64..=8) {
        for (name, ov) in [("Yfamily", vec![("n", n)]), ("family", vec![("m", m), ("n", k)])] {
            let ov: Vec<(String, BigInt)> = ov.into_iter().map(|(a, b)| (a.to_string(), b.into())).collect();
            let r = instantiate(name, &ov).unwrap();
            prop_assert_eq!(parse_recipe(&serialize_recipe(&r)).unwrap(), r);
        }
    }
}

#[test]
fn builtin_texts_round_trip() {
    for b in builtin_recipes() {
        let r = instantiate(b.name, &[]).unwrap();
        let text = serialize_recipe(&r);
        assert_eq!(serialize_recipe(&parse_recipe(&text).unwrap()), text, "{}", b.name);
    }
}

#[test]
fn block_meridians_are_null_homologous() {
    for id in BLOCK_IDS {
        let b = make_block(id);
        let n = b.presentation.ngens();
        for t in &b.tori {
            assert!(t.mu.exponent_sums(n).iter().all(|&c| c == 0), "{id} {}", t.name);
        }
    }
}

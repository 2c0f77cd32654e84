use esakia::chainfrm::{chain_way_below, Block, ChainShape, ChainSpace};
use esakia::dlattice::FinDLat;
use esakia::hierarchy::{classify_chain, classify_lattice};
use esakia::poset::FinPoset;
use esakia::priestley::{clopen_way_below, dual_space, regularity_conditions, unit_checks, PriestleySpace};
use proptest::prelude::*;

/// Random posets on up to 6 points from upward edges.
fn poset() -> impl Strategy<Value = FinPoset> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |edges| {
            let covers: Vec<(usize, usize)> =
                edges.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
            FinPoset::from_covers(n, &covers).expect("upward edges are acyclic")
        })
    })
}

fn shape() -> impl Strategy<Value = ChainShape> {
    let block = prop_oneof![(1u64..4).prop_map(Block::Fin), Just(Block::Omega)];
    proptest::collection::vec(block, 1..4)
        .prop_map(|b| ChainShape::new(b).unwrap())
        .prop_filter("at least two elements", |s| s.len() != Some(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn duality_units_hold(p in poset()) {
        let lat = FinDLat::birkhoff(&p).unwrap();
        prop_assert!(unit_checks(&lat).unwrap().passed());
        prop_assert_eq!(dual_space(&lat).order().canonical_key(), p.dual().canonical_key());
    }

    #[test]
    fn residuation_and_distributivity(p in poset()) {
        let d = FinDLat::birkhoff(&p).unwrap();
        for a in 0..d.len() {
            for b in 0..d.len() {
                let h = d.heyting(a, b);
                for x in 0..d.len() {
                    prop_assert_eq!(d.le(d.meet(a, x), b), d.le(x, h));
                    prop_assert_eq!(d.meet(a, d.join(b, x)), d.join(d.meet(a, b), d.meet(a, x)));
                }
            }
        }
    }

    #[test]
    fn finite_frames_collapse(p in poset()) {
        let d = FinDLat::birkhoff(&p).unwrap();
        let x = dual_space(&d);
        let c = classify_lattice(&d);
        prop_assert!(c.sides_agree);
        prop_assert!(c.frame.stably_compact);
        prop_assert_eq!(c.frame.regular, c.frame.boolean_algebra);
        for a in 0..d.len() {
            for b in 0..d.len() {
                prop_assert_eq!(clopen_way_below(&x, a, b), d.le(a, b));
            }
            let r = regularity_conditions(&x, a);
            prop_assert!(r.iter().all(|&v| v == r[0]));
        }
    }

    #[test]
    fn shapes_roundtrip(s in shape()) {
        prop_assert_eq!(ChainShape::parse(&s.to_string()).unwrap(), s.clone());
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(ChainShape::parse(&json).unwrap(), s);
    }

    #[test]
    fn chain_readings_of_way_below_agree(s in shape()) {
        let x = ChainSpace::new(s.clone()).unwrap();
        for a in x.elts() {
            for b in x.elts() {
                prop_assert_eq!(chain_way_below(&s, a, b), clopen_way_below(&x, a, b), "{} {} {}", s, a, b);
            }
        }
        let c = classify_chain(&s).unwrap();
        prop_assert!(c.sides_agree, "{}", s);
        prop_assert_eq!(c.frame.compact, s.top().pos != esakia::chainfrm::Pos::Limit);
    }
}

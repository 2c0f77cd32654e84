use esakia::chainfrm::{
    chain_corpus, chain_is_proper, validate_morphism, validate_shape, ChainDualMap, ChainElt, ChainMorphism,
    ChainShape, DepthWindow, MorphTerm, Piece,
};
use esakia::priestley::{is_l_morphism, properness_profile};
use esakia::spaces::is_proper_localic;
use esakia::Error;

fn shape(s: &str) -> ChainShape {
    ChainShape::parse(s).unwrap()
}

#[test]
fn every_closed_form_stabilizes_on_the_corpus() {
    let mut shapes = chain_corpus();
    shapes.extend(["F2", "F4", "F5"].map(shape));
    for s in &shapes {
        for window in [DepthWindow::default(), "4..7".parse().unwrap()] {
            let r = validate_shape(s, window).unwrap();
            for c in &r.checks {
                assert!(c.passed(), "{}: {c:?}", r.subject);
            }
        }
    }
}

fn collapse_to_middle(target: &str) -> MorphTerm {
    MorphTerm::Collapse {
        source: shape("W,F1"),
        target: shape(target),
        pieces: vec![
            Piece { upto: ChainElt::at(0, 0), value: ChainElt::at(0, 0) },
            Piece { upto: ChainElt::limit(0), value: ChainElt::at(0, 1) },
            Piece { upto: ChainElt::at(1, 0), value: shape(target).top() },
        ],
    }
}

#[test]
fn collapse_onto_a_middle_element() {
    // a two-element chain has no middle: the top would be hit early
    let two = ChainMorphism::build(&collapse_to_middle("F2"));
    assert!(two.is_ok());
    let h = ChainMorphism::build(&collapse_to_middle("F3")).unwrap();
    assert!(validate_morphism(&h, DepthWindow::default()).unwrap().passed());
    // 1 << 1 but the image of 1 is the middle and that is compact: proper
    assert!(chain_is_proper(&h));
    let f = ChainDualMap::new(h).unwrap();
    assert!(is_l_morphism(&f));
    assert_eq!(properness_profile(&f).unwrap().as_array(), [true; 5]);
    assert!(is_proper_localic(&f));
}

#[test]
fn curated_morphisms_validate() {
    let w = shape("W");
    let terms = vec![
        MorphTerm::Identity { shape: shape("W,F2,W") },
        MorphTerm::Sat { shape: w.clone() },
        MorphTerm::Sat { shape: shape("W,W") },
        MorphTerm::Embed {
            target: w.clone(),
            images: vec![ChainElt::at(0, 0), ChainElt::at(0, 2), ChainElt::limit(0)],
        },
        MorphTerm::Compose {
            first: Box::new(MorphTerm::Identity { shape: w.clone() }),
            then: Box::new(MorphTerm::Sat { shape: w.clone() }),
        },
    ];
    for t in &terms {
        let h = ChainMorphism::build(t).unwrap();
        let r = validate_morphism(&h, DepthWindow::default()).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{t:?}: {c:?}");
        }
        if let Ok(f) = ChainDualMap::new(h.clone()) {
            assert!(is_l_morphism(&f), "{t:?}");
            if let Ok(p) = properness_profile(&f) {
                assert!(p.agree(), "{t:?}: {p:?}");
                assert_eq!(p.kernel_preimage, chain_is_proper(&h), "{t:?}");
                assert_eq!(is_proper_localic(&f), chain_is_proper(&h), "{t:?}");
            }
        }
    }
}

#[test]
fn sat_restricted_to_points_is_not_proper() {
    let f = ChainDualMap::new(ChainMorphism::sat(&shape("W"))).unwrap();
    assert!(!is_proper_localic(&f));
    assert!(matches!(
        ChainMorphism::build(&MorphTerm::Compose {
            first: Box::new(MorphTerm::Sat { shape: shape("W") }),
            then: Box::new(MorphTerm::Sat { shape: shape("W,F1") }),
        }),
        Err(Error::Construction(_))
    ));
}

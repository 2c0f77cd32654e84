//! Frame homomorphisms between chains, from a small constructor algebra.
//!
//! A homomorphism `h: source -> target` dualizes to a map
//! `X_target -> X_source` sending `up e` to `up min{x : h(x) >= e}`.

use super::{chain_way_below, ChainElt, ChainShape, ChainSpace, Pos};
use crate::error::{Error, Result};
use crate::priestley::{OpenUpset, SpaceMap};
use serde::{Deserialize, Serialize};

/// `x <= upto` (and above the previous piece) goes to `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub upto: ChainElt,
    pub value: ChainElt,
}

/// Constructor terms, serialized as nested JSON tagged by `"op"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum MorphTerm {
    Identity {
        shape: ChainShape,
    },
    /// `then` after `first`.
    Compose {
        first: Box<MorphTerm>,
        then: Box<MorphTerm>,
    },
    /// The finite chain with `images.len()` elements, sent onto `images`.
    Embed {
        target: ChainShape,
        images: Vec<ChainElt>,
    },
    /// Piecewise constant map.
    Collapse {
        source: ChainShape,
        target: ChainShape,
        pieces: Vec<Piece>,
    },
    /// `bot` stays; anything else goes to the top of its block.
    Sat {
        shape: ChainShape,
    },
}

#[derive(Clone, Debug)]
enum Node {
    Identity,
    Pieces(Vec<Piece>),
    Compose(Box<ChainMorphism>, Box<ChainMorphism>),
}

#[derive(Clone, Debug)]
pub struct ChainMorphism {
    term: MorphTerm,
    source: ChainShape,
    target: ChainShape,
    node: Node,
}

fn obligation<T>(msg: String) -> Result<T> {
    Err(Error::Construction(msg))
}

impl ChainMorphism {
    pub fn build(term: &MorphTerm) -> Result<ChainMorphism> {
        let (source, target, node) = match term {
            MorphTerm::Identity { shape } => (shape.clone(), shape.clone(), Node::Identity),
            MorphTerm::Compose { first, then } => {
                let f = ChainMorphism::build(first)?;
                let g = ChainMorphism::build(then)?;
                if f.target != g.source {
                    return obligation(format!("cannot compose: {} is not {}", f.target, g.source));
                }
                (f.source.clone(), g.target.clone(), Node::Compose(Box::new(f), Box::new(g)))
            }
            MorphTerm::Embed { target, images } => {
                let k = images.len() as u64;
                if k == 0 {
                    return obligation("embedding of an empty chain".into());
                }
                if images.windows(2).any(|w| w[0] >= w[1]) {
                    return obligation(format!("embedding images are not strictly increasing: {images:?}"));
                }
                let source = ChainShape::new(vec![super::Block::Fin(k)])?;
                let pieces = images
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Piece { upto: ChainElt::at(0, i as u64), value: v })
                    .collect();
                (source, target.clone(), Node::Pieces(pieces))
            }
            MorphTerm::Collapse { source, target, pieces } => {
                (source.clone(), target.clone(), Node::Pieces(pieces.clone()))
            }
            MorphTerm::Sat { shape } => {
                let mut pieces = vec![Piece { upto: shape.bot(), value: shape.bot() }];
                for i in 0..shape.blocks().len() {
                    let t = shape.block_top(i);
                    if t != shape.bot() {
                        pieces.push(Piece { upto: t, value: t });
                    }
                }
                (shape.clone(), shape.clone(), Node::Pieces(pieces))
            }
        };
        if let Node::Pieces(p) = &node {
            check_pieces(&source, &target, p)?;
        }
        Ok(ChainMorphism { term: term.clone(), source, target, node })
    }

    pub fn identity(shape: &ChainShape) -> ChainMorphism {
        ChainMorphism::build(&MorphTerm::Identity { shape: shape.clone() }).expect("identity is valid")
    }

    pub fn sat(shape: &ChainShape) -> ChainMorphism {
        ChainMorphism::build(&MorphTerm::Sat { shape: shape.clone() }).expect("sat is valid")
    }

    pub fn term(&self) -> &MorphTerm {
        &self.term
    }

    pub fn source(&self) -> &ChainShape {
        &self.source
    }

    pub fn target(&self) -> &ChainShape {
        &self.target
    }

    pub fn eval(&self, a: ChainElt) -> ChainElt {
        match &self.node {
            Node::Identity => a,
            Node::Pieces(p) => p.iter().find(|pc| a <= pc.upto).expect("last piece reaches top").value,
            Node::Compose(f, g) => g.eval(f.eval(a)),
        }
    }

    /// `min{x : h(x) >= e}`; exists because `h(top) = top`.
    pub fn lower(&self, e: ChainElt) -> ChainElt {
        match &self.node {
            Node::Identity => e,
            Node::Pieces(p) => {
                let j = p.iter().position(|pc| pc.value >= e).expect("last value is top");
                if j == 0 {
                    self.source.bot()
                } else {
                    self.source.successor(p[j - 1].upto).expect("a later piece exists")
                }
            }
            Node::Compose(f, g) => f.lower(g.lower(e)),
        }
    }

    /// The ideal generated by the image of an ideal.
    pub fn image_ideal(&self, w: OpenUpset<ChainElt>) -> OpenUpset<ChainElt> {
        match (&self.node, w) {
            (_, OpenUpset::Principal(c)) => OpenUpset::Principal(self.eval(c)),
            (Node::Identity, below) => below,
            (Node::Compose(f, g), below) => g.image_ideal(f.image_ideal(below)),
            (Node::Pieces(_), OpenUpset::Below(c)) => {
                if let Some(p) = self.source.predecessor(c) {
                    OpenUpset::Principal(self.eval(p))
                } else if c.pos == Pos::Limit {
                    // the piece holding a limit also holds elements below it
                    OpenUpset::Principal(self.eval(c))
                } else {
                    OpenUpset::Below(self.target.bot())
                }
            }
        }
    }

    /// First pair `a << b` in the source sample with `h(a) << h(b)` failing.
    pub fn properness_witness(&self) -> Option<(ChainElt, ChainElt)> {
        let sample = self.source.sample(super::PROBE_DEPTH);
        sample.iter().flat_map(|&a| sample.iter().map(move |&b| (a, b))).find(|&(a, b)| {
            chain_way_below(&self.source, a, b) && !chain_way_below(&self.target, self.eval(a), self.eval(b))
        })
    }
}

/// Monotone, bounded and piecewise constant with finitely many pieces. The
/// last condition gives preservation of suprema: the piece containing a limit
/// contains infinitely many elements below it.
fn check_pieces(source: &ChainShape, target: &ChainShape, pieces: &[Piece]) -> Result<()> {
    let Some(last) = pieces.last() else {
        return obligation("no pieces".into());
    };
    for pc in pieces {
        if !source.contains(pc.upto) {
            return obligation(format!("{} is not in the source {source}", pc.upto));
        }
        if !target.contains(pc.value) {
            return obligation(format!("{} is not in the target {target}", pc.value));
        }
    }
    if let Some(w) = pieces.windows(2).find(|w| w[0].upto >= w[1].upto) {
        return obligation(format!("pieces out of order at {}", w[1].upto));
    }
    if let Some(w) = pieces.windows(2).find(|w| w[0].value > w[1].value) {
        return obligation(format!("not monotone: {} then {}", w[0].value, w[1].value));
    }
    if last.upto != source.top() {
        return obligation(format!("pieces stop at {} before the top {}", last.upto, source.top()));
    }
    if pieces[0].value != target.bot() {
        return obligation(format!("bottom goes to {}, not the bottom", pieces[0].value));
    }
    if last.value != target.top() {
        return obligation(format!("top goes to {}, not the top", last.value));
    }
    Ok(())
}

/// Preserves `<<` on the source sample.
pub fn chain_is_proper(h: &ChainMorphism) -> bool {
    h.properness_witness().is_none()
}

/// The dual of a chain homomorphism, as a map of spaces.
#[derive(Clone, Debug)]
pub struct ChainDualMap {
    hom: ChainMorphism,
    dom: ChainSpace,
    cod: ChainSpace,
}

impl ChainDualMap {
    pub fn new(hom: ChainMorphism) -> Result<ChainDualMap> {
        let dom = ChainSpace::new(hom.target.clone())?;
        let cod = ChainSpace::new(hom.source.clone())?;
        Ok(ChainDualMap { hom, dom, cod })
    }

    pub fn hom(&self) -> &ChainMorphism {
        &self.hom
    }
}

impl SpaceMap for ChainDualMap {
    type Dom = ChainSpace;
    type Cod = ChainSpace;

    fn dom(&self) -> &ChainSpace {
        &self.dom
    }

    fn cod(&self) -> &ChainSpace {
        &self.cod
    }

    fn apply(&self, p: ChainElt) -> ChainElt {
        self.hom.lower(p)
    }

    fn pull(&self, a: ChainElt) -> ChainElt {
        self.hom.eval(a)
    }

    fn pull_open(&self, w: OpenUpset<ChainElt>) -> OpenUpset<ChainElt> {
        self.hom.image_ideal(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::priestley::{is_l_morphism, properness_profile};

    fn shape(s: &str) -> ChainShape {
        ChainShape::parse(s).unwrap()
    }

    #[test]
    fn sat_is_a_nonproper_hom() {
        let h = ChainMorphism::sat(&shape("W"));
        assert_eq!(h.eval(ChainElt::at(0, 0)), ChainElt::at(0, 0));
        assert_eq!(h.eval(ChainElt::at(0, 2)), ChainElt::limit(0));
        assert_eq!(h.properness_witness(), Some((ChainElt::at(0, 1), ChainElt::at(0, 1))));
        let f = ChainDualMap::new(h).unwrap();
        assert!(is_l_morphism(&f));
        assert_eq!(f.apply(ChainElt::limit(0)), ChainElt::at(0, 1));
        assert_eq!(properness_profile(&f).unwrap().as_array(), [false; 5]);
    }

    #[test]
    fn identity_is_proper() {
        let f = ChainDualMap::new(ChainMorphism::identity(&shape("W,F2,W"))).unwrap();
        assert!(chain_is_proper(f.hom()));
        assert!(is_l_morphism(&f));
        assert_eq!(properness_profile(&f).unwrap().as_array(), [true; 5]);
    }

    #[test]
    fn obligations_are_enforced() {
        let bad = MorphTerm::Collapse {
            source: shape("W,F1"),
            target: shape("F2"),
            pieces: vec![
                Piece { upto: ChainElt::limit(0), value: ChainElt::at(0, 1) },
                Piece { upto: ChainElt::at(1, 0), value: ChainElt::at(0, 1) },
            ],
        };
        assert!(matches!(ChainMorphism::build(&bad), Err(Error::Construction(_))));
        let emb = MorphTerm::Embed { target: shape("W"), images: vec![ChainElt::at(0, 0), ChainElt::at(0, 2)] };
        assert!(ChainMorphism::build(&emb).is_err());
        let emb = MorphTerm::Embed { target: shape("W"), images: vec![ChainElt::at(0, 0), ChainElt::limit(0)] };
        let e = ChainMorphism::build(&emb).unwrap();
        let comp = MorphTerm::Compose { first: Box::new(emb), then: Box::new(MorphTerm::Sat { shape: shape("W") }) };
        let c = ChainMorphism::build(&comp).unwrap();
        assert_eq!(c.eval(ChainElt::at(0, 1)), ChainElt::limit(0));
        assert!(!chain_is_proper(&e));
        let json = serde_json::to_string(&comp).unwrap();
        assert_eq!(serde_json::from_str::<MorphTerm>(&json).unwrap(), comp);
    }
}

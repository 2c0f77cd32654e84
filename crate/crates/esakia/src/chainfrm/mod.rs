//! Complete chains built from finite blocks and copies of `omega + 1`.
//!
//! Every such chain is well ordered, so filters are principal and the dual
//! space has a finite description. The closed forms here are checked against
//! finite truncations in [`oracle`].

mod morph;
pub mod oracle;
mod space;

pub use morph::{chain_is_proper, ChainDualMap, ChainMorphism, MorphTerm, Piece};
pub use oracle::{truncate, validate_morphism, validate_shape, DepthWindow, OracleCheck, OracleReport, Stage};
pub use space::ChainSpace;

use crate::dlattice::FrameProps;
use crate::error::{input, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Positions of each omega block quantified over universally.
pub const PROBE_DEPTH: u64 = 3;
/// Positions of each omega block searched for witnesses.
pub const WITNESS_DEPTH: u64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BlockRepr", into = "BlockRepr")]
pub enum Block {
    Fin(u64),
    Omega,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum BlockRepr {
    Fin(u64),
    Omega(bool),
}

impl TryFrom<BlockRepr> for Block {
    type Error = Error;

    fn try_from(r: BlockRepr) -> Result<Block> {
        match r {
            BlockRepr::Fin(0) => input("Fin blocks need at least one element"),
            BlockRepr::Fin(k) => Ok(Block::Fin(k)),
            BlockRepr::Omega(true) => Ok(Block::Omega),
            BlockRepr::Omega(false) => input("\"omega\" must be true"),
        }
    }
}

impl From<Block> for BlockRepr {
    fn from(b: Block) -> BlockRepr {
        match b {
            Block::Fin(k) => BlockRepr::Fin(k),
            Block::Omega => BlockRepr::Omega(true),
        }
    }
}

/// A nonempty word of blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShapeRepr")]
pub struct ChainShape {
    blocks: Vec<Block>,
}

/// Either `{"blocks":[...]}` or the compact string.
#[derive(Deserialize)]
#[serde(untagged)]
enum ShapeRepr {
    Blocks { blocks: Vec<Block> },
    Compact(String),
}

impl TryFrom<ShapeRepr> for ChainShape {
    type Error = Error;

    fn try_from(r: ShapeRepr) -> Result<ChainShape> {
        match r {
            ShapeRepr::Blocks { blocks } => ChainShape::new(blocks),
            ShapeRepr::Compact(s) => ChainShape::parse(&s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pos {
    At(u64),
    /// The cap of an omega block.
    Limit,
}

/// An element of a chain; the derived order is the chain order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainElt {
    pub block: usize,
    pub pos: Pos,
}

impl ChainElt {
    pub fn at(block: usize, n: u64) -> ChainElt {
        ChainElt { block, pos: Pos::At(n) }
    }

    pub fn limit(block: usize) -> ChainElt {
        ChainElt { block, pos: Pos::Limit }
    }
}

impl fmt::Display for ChainElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Pos::At(n) => write!(f, "{}:{}", self.block, n),
            Pos::Limit => write!(f, "{}:λ", self.block),
        }
    }
}

impl ChainShape {
    pub fn new(blocks: Vec<Block>) -> Result<ChainShape> {
        if blocks.is_empty() {
            return input("a chain shape needs at least one block");
        }
        if blocks.contains(&Block::Fin(0)) {
            return input("Fin blocks need at least one element");
        }
        Ok(ChainShape { blocks })
    }

    /// Accepts `"F3,W,F1"` or the JSON form `{"blocks":[...]}`.
    pub fn parse(s: &str) -> Result<ChainShape> {
        let t = s.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Input(format!("bad shape JSON: {e}")));
        }
        let mut blocks = Vec::new();
        for tok in t.split(',').map(str::trim) {
            let b = match tok {
                "W" | "w" => Block::Omega,
                _ => match tok.strip_prefix(['F', 'f']).and_then(|k| k.parse::<u64>().ok()) {
                    Some(k) => Block::Fin(k),
                    None => return input(format!("bad shape token {tok:?}")),
                },
            };
            blocks.push(b);
        }
        ChainShape::new(blocks)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_finite(&self) -> bool {
        !self.blocks.contains(&Block::Omega)
    }

    /// Number of elements, when finite.
    #[allow(clippy::len_without_is_empty)] // shapes are never empty
    pub fn len(&self) -> Option<u64> {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::Fin(k) => Some(*k),
                Block::Omega => None,
            })
            .sum()
    }

    pub fn omega_blocks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.blocks.len()).filter(|&i| self.blocks[i] == Block::Omega)
    }

    pub fn contains(&self, e: ChainElt) -> bool {
        match (self.blocks.get(e.block), e.pos) {
            (Some(Block::Fin(k)), Pos::At(n)) => n < *k,
            (Some(Block::Omega), _) => true,
            _ => false,
        }
    }

    pub fn check(&self, e: ChainElt) -> Result<ChainElt> {
        if self.contains(e) {
            Ok(e)
        } else {
            input(format!("{e} is not an element of {self}"))
        }
    }

    pub fn bot(&self) -> ChainElt {
        ChainElt::at(0, 0)
    }

    pub fn top(&self) -> ChainElt {
        self.block_top(self.blocks.len() - 1)
    }

    pub fn block_top(&self, i: usize) -> ChainElt {
        match self.blocks[i] {
            Block::Fin(k) => ChainElt::at(i, k - 1),
            Block::Omega => ChainElt::limit(i),
        }
    }

    pub fn le(&self, a: ChainElt, b: ChainElt) -> bool {
        a <= b
    }

    pub fn meet(&self, a: ChainElt, b: ChainElt) -> ChainElt {
        a.min(b)
    }

    pub fn join(&self, a: ChainElt, b: ChainElt) -> ChainElt {
        a.max(b)
    }

    pub fn is_limit(&self, e: ChainElt) -> bool {
        e.pos == Pos::Limit
    }

    pub fn successor(&self, e: ChainElt) -> Option<ChainElt> {
        if e == self.top() {
            return None;
        }
        match (self.blocks[e.block], e.pos) {
            (Block::Fin(k), Pos::At(n)) if n + 1 < k => Some(ChainElt::at(e.block, n + 1)),
            (Block::Omega, Pos::At(n)) => Some(ChainElt::at(e.block, n + 1)),
            _ => Some(ChainElt::at(e.block + 1, 0)),
        }
    }

    /// Undefined on the bottom and on limits.
    pub fn predecessor(&self, e: ChainElt) -> Option<ChainElt> {
        match e.pos {
            Pos::Limit => None,
            Pos::At(0) if e.block == 0 => None,
            Pos::At(0) => Some(self.block_top(e.block - 1)),
            Pos::At(n) => Some(ChainElt::at(e.block, n - 1)),
        }
    }

    /// All finite-block elements, positions `0..=depth` of each omega block, and the caps.
    pub fn sample(&self, depth: u64) -> Vec<ChainElt> {
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            match b {
                Block::Fin(k) => out.extend((0..*k).map(|n| ChainElt::at(i, n))),
                Block::Omega => {
                    out.extend((0..=depth).map(|n| ChainElt::at(i, n)));
                    out.push(ChainElt::limit(i));
                }
            }
        }
        out
    }
}

impl FromStr for ChainShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<ChainShape> {
        ChainShape::parse(s)
    }
}

impl fmt::Display for ChainShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::Fin(k) => format!("F{k}"),
                Block::Omega => "W".to_string(),
            })
            .collect();
        f.write_str(&toks.join(","))
    }
}

/// `a << b`: `a < b`, or `a = b` with `b` not a limit.
pub fn chain_way_below(s: &ChainShape, a: ChainElt, b: ChainElt) -> bool {
    a < b || (a == b && !s.is_limit(b))
}

/// Only the bottom has a nonzero pseudocomplement.
pub fn chain_pseudocomplement(s: &ChainShape, a: ChainElt) -> ChainElt {
    if a == s.bot() {
        s.top()
    } else {
        s.bot()
    }
}

/// `a* v b = 1`.
pub fn chain_well_inside(s: &ChainShape, a: ChainElt, b: ChainElt) -> bool {
    a == s.bot() || b == s.top()
}

/// Frame properties of a chain from the closed forms.
pub fn chain_classify(s: &ChainShape) -> FrameProps {
    let compact = !s.is_limit(s.top());
    let small = s.len().is_some_and(|n| n <= 2);
    FrameProps {
        spatial: true,
        compact,
        continuous: true,
        stably_continuous: true,
        stably_compact: compact,
        regular: small,
        boolean_algebra: small,
        degenerate: s.len() == Some(1),
    }
}

/// The six shapes the sweeps and the oracle run over.
pub fn chain_corpus() -> Vec<ChainShape> {
    ["F3", "W", "W,F1", "F2,W", "W,W", "W,F2,W"]
        .iter()
        .map(|s| ChainShape::parse(s).expect("corpus shapes parse"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_parse_both_ways() {
        let a = ChainShape::parse("F3,W,F1").unwrap();
        let b = ChainShape::parse(r#"{"blocks":[{"fin":3},{"omega":true},{"fin":1}]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "F3,W,F1");
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"blocks":[{"fin":3},{"omega":true},{"fin":1}]}"#);
        assert!(ChainShape::parse("F0").is_err());
        assert!(ChainShape::parse("").is_err());
        assert!(ChainShape::parse(r#"{"blocks":[]}"#).is_err());
    }

    #[test]
    fn shape_arithmetic() {
        let s = ChainShape::parse("W,F1").unwrap();
        assert_eq!(s.successor(ChainElt::limit(0)), Some(ChainElt::at(1, 0)));
        assert!(!s.is_limit(s.top()));
        assert_eq!(s.predecessor(ChainElt::limit(0)), None);
        assert_eq!(s.predecessor(s.bot()), None);
        assert_eq!(s.predecessor(ChainElt::at(1, 0)), Some(ChainElt::limit(0)));
        assert_eq!(s.successor(s.top()), None);
        let f = ChainShape::parse("F3").unwrap();
        assert_eq!(f.len(), Some(3));
        assert!(f.sample(PROBE_DEPTH).iter().all(|&e| !f.is_limit(e)));
    }

    #[test]
    fn closed_forms() {
        let s = ChainShape::parse("W").unwrap();
        let (three, lam) = (ChainElt::at(0, 3), ChainElt::limit(0));
        assert!(chain_way_below(&s, three, lam));
        assert!(!chain_way_below(&s, lam, lam));
        assert!(chain_way_below(&s, three, three));
        assert!(chain_well_inside(&s, s.bot(), three));
        assert!(!chain_well_inside(&s, three, three));
        assert_eq!(chain_pseudocomplement(&s, three), s.bot());
    }
}

//! The dual space of a chain: points are `up e` for `e > bot`, stored as `e`.

use super::{ChainElt, ChainShape, PROBE_DEPTH, WITNESS_DEPTH};
use crate::error::{input, Result};
use crate::priestley::{OpenUpset, PriestleySpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpace {
    shape: ChainShape,
}

impl ChainSpace {
    pub fn new(shape: ChainShape) -> Result<ChainSpace> {
        if shape.len() == Some(1) {
            return input("the one-element chain has an empty dual space");
        }
        Ok(ChainSpace { shape })
    }

    pub fn shape(&self) -> &ChainShape {
        &self.shape
    }

    /// Points outside the localic part: one per omega block.
    pub fn nonlocalic_count(&self) -> usize {
        self.shape.omega_blocks().count()
    }

    fn above_bot(&self, v: Vec<ChainElt>) -> Vec<ChainElt> {
        let bot = self.shape.bot();
        v.into_iter().filter(|&e| e != bot).collect()
    }
}

impl PriestleySpace for ChainSpace {
    type Elt = ChainElt;
    type Point = ChainElt;

    fn describe(&self) -> String {
        format!("chain {}", self.shape)
    }

    fn is_finite(&self) -> bool {
        self.shape.is_finite()
    }

    fn elts(&self) -> Vec<ChainElt> {
        self.shape.sample(PROBE_DEPTH)
    }

    fn witness_elts(&self) -> Vec<ChainElt> {
        self.shape.sample(WITNESS_DEPTH)
    }

    fn bot(&self) -> ChainElt {
        self.shape.bot()
    }

    fn top(&self) -> ChainElt {
        self.shape.top()
    }

    fn elt_le(&self, a: ChainElt, b: ChainElt) -> bool {
        a <= b
    }

    fn meet(&self, a: ChainElt, b: ChainElt) -> ChainElt {
        a.min(b)
    }

    fn join(&self, a: ChainElt, b: ChainElt) -> ChainElt {
        a.max(b)
    }

    fn points(&self) -> Vec<ChainElt> {
        self.above_bot(self.elts())
    }

    fn witness_points(&self) -> Vec<ChainElt> {
        self.above_bot(self.witness_elts())
    }

    /// `up e <= up d` iff `d <= e`.
    fn point_le(&self, p: ChainElt, q: ChainElt) -> bool {
        q <= p
    }

    fn in_phi(&self, p: ChainElt, a: ChainElt) -> bool {
        p <= a
    }

    /// Every ideal of a well-ordered chain is `down c` or the elements below a limit.
    fn open_upsets(&self) -> Vec<OpenUpset<ChainElt>> {
        let mut out: Vec<_> = self.witness_elts().into_iter().map(OpenUpset::Principal).collect();
        out.extend(self.shape.omega_blocks().map(|i| OpenUpset::Below(ChainElt::limit(i))));
        out
    }

    fn clopen_inside(&self, w: OpenUpset<ChainElt>, a: ChainElt) -> bool {
        match w {
            OpenUpset::Principal(c) => a <= c,
            OpenUpset::Below(c) => a < c,
        }
    }

    fn open_contains(&self, w: OpenUpset<ChainElt>, p: ChainElt) -> bool {
        self.clopen_inside(w, p)
    }

    fn closure(&self, w: OpenUpset<ChainElt>) -> ChainElt {
        match w {
            OpenUpset::Principal(c) => c,
            OpenUpset::Below(c) => match self.shape.predecessor(c) {
                Some(p) => p,
                None => c,
            },
        }
    }

    /// Ideals of a chain are nested, so this is the smaller one.
    fn open_meet(&self, u: OpenUpset<ChainElt>, w: OpenUpset<ChainElt>) -> OpenUpset<ChainElt> {
        let key = |o: OpenUpset<ChainElt>| match o {
            OpenUpset::Below(c) => (c, 0),
            OpenUpset::Principal(c) => (c, 1),
        };
        if key(u) <= key(w) {
            u
        } else {
            w
        }
    }

    fn is_localic(&self, p: ChainElt) -> bool {
        !self.shape.is_limit(p)
    }

    fn up_of_point(&self, p: ChainElt) -> ChainElt {
        p
    }

    fn min_of(&self, a: ChainElt) -> Vec<ChainElt> {
        if a == self.shape.bot() {
            Vec::new()
        } else {
            vec![a]
        }
    }

    fn ker_open(&self, a: ChainElt) -> OpenUpset<ChainElt> {
        if self.shape.is_limit(a) {
            OpenUpset::Below(a)
        } else {
            OpenUpset::Principal(a)
        }
    }

    fn reg_open(&self, a: ChainElt) -> OpenUpset<ChainElt> {
        if a == self.shape.top() {
            OpenUpset::Principal(a)
        } else {
            OpenUpset::Principal(self.shape.bot())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dlattice::FinDLat;
    use crate::priestley::{classify_space, dual_space, is_scott_upset, SpaceProps};

    fn space(s: &str) -> ChainSpace {
        ChainSpace::new(ChainShape::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn degenerate_shape_is_rejected() {
        assert!(ChainSpace::new(ChainShape::parse("F1").unwrap()).is_err());
    }

    #[test]
    fn two_chain_matches_finite_dual() {
        let c = space("F2");
        let f = dual_space(&FinDLat::chain(2));
        assert_eq!(c.points().len(), f.len());
        assert_eq!(classify_space(&c), classify_space(&f));
    }

    #[test]
    fn omega_space() {
        let c = space("W");
        assert_eq!(c.nonlocalic_count(), 1);
        let p: SpaceProps = classify_space(&c);
        assert!(p.is_SL && p.is_CL && p.is_StCL && p.is_scott_stable && p.is_kernel_stable);
        assert!(!p.is_StKL && !p.is_L_compact && !p.is_KRL);
        assert!(!is_scott_upset(&c, ChainElt::limit(0)).unwrap());
        assert!(is_scott_upset(&c, ChainElt::at(0, 2)).unwrap());
        assert!(is_scott_upset(&c, c.bot()).unwrap());
    }

    #[test]
    fn capped_omega_is_l_compact() {
        let p = classify_space(&space("W,F1"));
        assert!(p.is_StKL && !p.is_L_regular && !p.is_KRL);
    }
}

//! Finite truncations of a chain and the stabilization checks run on them.
//!
//! Stage `d` keeps positions `0..=d` of every omega block plus its cap. The
//! stages form a directed system of lattice embeddings whose union is the
//! chain, dually an inverse system of finite spaces. Chain-level statements
//! are read off a stage as follows:
//!
//! * an ideal of the chain is seen at stage `d` through its trace; the trace
//!   `down(d)` of the elements below a cap `lambda` is recorded with its true
//!   join `lambda` (the frontier position `d` keeps moving as `d` grows);
//! * a point `up e` is localic when `down(up e)` is decided at stage `d`: its
//!   preimage under the projection from stage `d+1` is its own down-set there;
//! * everything else comes from the finite engine on the stage lattice or its
//!   dual space.
//!
//! A statement is accepted only when its stage value is the same at every
//! depth of the window and equals the closed form.

use super::{
    chain_classify, chain_pseudocomplement, chain_way_below, chain_well_inside, Block, ChainElt, ChainMorphism,
    ChainShape, ChainSpace, Pos, PROBE_DEPTH,
};
use crate::bits::{Mask, MAX_ELEMS};
use crate::dlattice::{FinDLat, FrameProps};
use crate::error::{input, Error, Result};
use crate::priestley::{
    classify_space, clopen_way_below, dual_space, ker_contains, reg_contains, scott_verdict, FiniteSpace,
    PriestleySpace, SpaceProps,
};
use serde::Serialize;
use std::fmt::Debug;
use std::str::FromStr;

/// Inclusive range of depths; at least four long and clear of the probes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DepthWindow {
    pub start: u64,
    pub end: u64,
}

impl DepthWindow {
    pub fn new(start: u64, end: u64) -> Result<DepthWindow> {
        if start <= PROBE_DEPTH {
            return input(format!("window must start above the probe depth {PROBE_DEPTH}"));
        }
        if end < start + 3 {
            return input("window must cover at least four depths");
        }
        if end > 40 {
            return Err(Error::Capacity(format!("depth {end} is above the cap 40")));
        }
        Ok(DepthWindow { start, end })
    }

    pub fn depths(&self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }
}

impl Default for DepthWindow {
    fn default() -> DepthWindow {
        DepthWindow { start: 5, end: 8 }
    }
}

impl FromStr for DepthWindow {
    type Err = Error;

    /// `"A..B"`, inclusive.
    fn from_str(s: &str) -> Result<DepthWindow> {
        let (a, b) = s.split_once("..").ok_or_else(|| Error::Input(format!("expected A..B, got {s:?}")))?;
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| Error::Input(format!("bad depth {t:?}: {e}")));
        DepthWindow::new(parse(a)?, parse(b)?)
    }
}

/// One truncation: the finite chain, its labels and its dual space.
#[derive(Clone, Debug)]
pub struct Stage {
    shape: ChainShape,
    depth: u64,
    lat: FinDLat,
    labels: Vec<ChainElt>,
    space: FiniteSpace,
    /// Least element of each point's prime filter.
    generator: Vec<ChainElt>,
}

pub fn truncate(shape: &ChainShape, depth: u64) -> Result<Stage> {
    if depth == 0 {
        return input("truncation depth must be at least 1");
    }
    let labels = shape.sample(depth);
    if labels.len() > MAX_ELEMS {
        return Err(Error::Capacity(format!("truncation has {} elements (cap {MAX_ELEMS})", labels.len())));
    }
    let lat = FinDLat::chain(labels.len());
    let space = dual_space(&lat);
    let generator = (0..space.len())
        .map(|p| {
            let filter = space.point_contents(p).expect("dual spaces record filters");
            let least = filter.iter().min_by_key(|&i| labels[i]).expect("prime filters are nonempty");
            labels[least]
        })
        .collect();
    Ok(Stage { shape: shape.clone(), depth, lat, labels, space, generator })
}

impl Stage {
    pub fn depth(&self) -> u64 {
        self.depth
    }

    pub fn lattice(&self) -> &FinDLat {
        &self.lat
    }

    pub fn labels(&self) -> &[ChainElt] {
        &self.labels
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn index(&self, e: ChainElt) -> Option<usize> {
        self.labels.binary_search(&e).ok()
    }

    fn idx(&self, e: ChainElt) -> usize {
        self.index(e).unwrap_or_else(|| panic!("{e} is not in the stage at depth {}", self.depth))
    }

    fn is_frontier(&self, e: ChainElt) -> bool {
        e.pos == Pos::At(self.depth) && self.shape.blocks()[e.block] == Block::Omega
    }

    /// Stage traces of the ideals of the chain, paired with their joins in the chain.
    pub fn ideal_traces(&self) -> Vec<(Mask, ChainElt)> {
        let mut out: Vec<(Mask, ChainElt)> = self.labels.iter().map(|&c| (self.lat.down(self.idx(c)), c)).collect();
        for i in self.shape.omega_blocks() {
            out.push((self.lat.down(self.idx(ChainElt::at(i, self.depth))), ChainElt::limit(i)));
        }
        out
    }

    /// Join in the chain of a down-set, reading a frontier top as its cap.
    fn chain_join(&self, set: Mask) -> ChainElt {
        let j = self.labels[self.lat.big_join(set)];
        if self.is_frontier(j) {
            ChainElt::limit(j.block)
        } else {
            j
        }
    }

    /// `a << b`: every ideal whose join is above `b` contains `a`.
    pub fn way_below(&self, a: ChainElt, b: ChainElt) -> bool {
        let (ia, ib) = (self.idx(a), self.idx(b));
        self.ideal_traces().into_iter().all(|(ideal, join)| !self.lat.le(ib, self.idx(join)) || ideal.contains(ia))
    }

    fn point_of(&self, e: ChainElt) -> usize {
        (0..self.space.len()).find(|&p| self.generator[p] == e).expect("every element above bot generates a point")
    }

    /// Whether `down(up e)` is already decided at this stage, seen from `next`.
    pub fn localic(&self, next: &Stage, e: ChainElt) -> bool {
        let here: Vec<ChainElt> =
            self.space.order().down(Mask::single(self.point_of(e))).iter().map(|q| self.generator[q]).collect();
        let there = next.space.order().down(Mask::single(next.point_of(e)));
        let pulled: Mask = (0..next.space.len())
            .filter(|&q| {
                let filter = next.space.point_contents(q).expect("dual spaces record filters");
                let projected = filter.iter().map(|i| next.labels[i]).filter(|l| self.index(*l).is_some()).min();
                projected.is_some_and(|g| here.contains(&g))
            })
            .collect();
        pulled == there
    }

    fn scott(&self, next: &Stage, m: ChainElt) -> bool {
        self.space.min_of(self.idx(m)).into_iter().all(|p| self.localic(next, self.generator[p]))
    }

    fn in_kernel(&self, a: ChainElt, e: ChainElt) -> bool {
        self.labels.iter().any(|&b| e <= b && self.way_below(b, a))
    }

    fn in_regular_part(&self, a: ChainElt, e: ChainElt) -> bool {
        reg_contains(&self.space, self.idx(a), self.point_of(e))
    }

    fn separated(&self, next: &Stage, a: ChainElt, b: ChainElt) -> bool {
        (0..self.space.len()).any(|p| {
            let g = self.generator[p];
            self.space.in_phi(p, self.idx(a)) && !self.space.in_phi(p, self.idx(b)) && self.localic(next, g)
        })
    }

    fn frame_props(&self, next: &Stage, probes: &[ChainElt]) -> FrameProps {
        let all = Mask::full(self.labels.len());
        let below = |rel: &dyn Fn(ChainElt) -> bool| -> Mask { all.iter().filter(|&i| rel(self.labels[i])).collect() };
        let spatial = probes.iter().all(|&a| probes.iter().all(|&b| a <= b || self.separated(next, a, b)));
        let top = self.shape.top();
        let compact = self.way_below(top, top);
        let continuous = probes.iter().all(|&a| self.chain_join(below(&|b| self.way_below(b, a))) == a);
        let stable = probes.iter().all(|&a| {
            probes.iter().all(|&b| {
                probes.iter().all(|&c| !(self.way_below(a, b) && self.way_below(a, c)) || self.way_below(a, b.min(c)))
            })
        });
        let regular = probes.iter().all(|&a| {
            let ia = self.idx(a);
            self.chain_join(below(&|b| self.lat.well_inside(self.idx(b), ia))) == a
        });
        FrameProps {
            spatial,
            compact,
            continuous,
            stably_continuous: continuous && stable,
            stably_compact: compact && continuous && stable,
            regular,
            boolean_algebra: probes.iter().all(|&a| self.lat.is_complemented(self.idx(a))),
            degenerate: self.lat.len() == 1,
        }
    }

    fn space_props(&self, next: &Stage, probes: &[ChainElt], points: &[ChainElt]) -> SpaceProps {
        let f = self.frame_props(next, probes);
        let kernel_stable = probes.iter().all(|&a| {
            probes.iter().all(|&b| {
                points.iter().all(|&e| (self.in_kernel(a, e) && self.in_kernel(b, e)) == self.in_kernel(a.min(b), e))
            })
        });
        let scott: Vec<ChainElt> = probes.iter().copied().filter(|&m| self.scott(next, m)).collect();
        let scott_stable = scott.iter().all(|&a| scott.iter().all(|&b| self.scott(next, a.min(b))));
        let l_compact = self.scott(next, self.shape.top());
        let stcl = f.continuous && scott_stable;
        SpaceProps {
            is_SL: f.spatial,
            is_CL: f.continuous,
            is_kernel_stable: kernel_stable,
            is_scott_stable: scott_stable,
            is_StCL: stcl,
            is_L_compact: l_compact,
            is_StKL: stcl && l_compact,
            is_L_regular: f.regular,
            is_KRL: l_compact && f.regular,
        }
    }
}

/// Outcome of one family of comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub cases: usize,
    /// Cases whose stage value changed inside the window.
    pub unstable: Vec<String>,
    /// Cases whose stable value differs from the closed form.
    pub disagreements: Vec<String>,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.unstable.is_empty() && self.disagreements.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub subject: String,
    pub window: DepthWindow,
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(OracleCheck::passed)
    }
}

type StagePair = (Stage, Stage);

fn stage_pairs(shape: &ChainShape, window: DepthWindow) -> Result<Vec<StagePair>> {
    window.depths().map(|d| Ok((truncate(shape, d)?, truncate(shape, d + 1)?))).collect()
}

fn compare<C: Debug, V: PartialEq + Debug>(
    name: &str,
    cases: &[C],
    stages: &[StagePair],
    at_stage: impl Fn(&Stage, &Stage, &C) -> V,
    closed: impl Fn(&C) -> V,
) -> OracleCheck {
    let mut unstable = Vec::new();
    let mut disagreements = Vec::new();
    for c in cases {
        let values: Vec<V> = stages.iter().map(|(s, n)| at_stage(s, n, c)).collect();
        if values.windows(2).any(|w| w[0] != w[1]) {
            unstable.push(format!("{c:?}: {values:?}"));
            continue;
        }
        let expected = closed(c);
        if values[0] != expected {
            disagreements.push(format!("{c:?}: stages say {:?}, closed form {expected:?}", values[0]));
        }
    }
    OracleCheck { name: name.to_string(), cases: cases.len(), unstable, disagreements }
}

fn pairs(v: &[ChainElt]) -> Vec<(ChainElt, ChainElt)> {
    v.iter().flat_map(|&a| v.iter().map(move |&b| (a, b))).collect()
}

/// Runs every closed form for `shape` against its truncations.
pub fn validate_shape(shape: &ChainShape, window: DepthWindow) -> Result<OracleReport> {
    let space = ChainSpace::new(shape.clone())?;
    let stages = stage_pairs(shape, window)?;
    let probes = shape.sample(PROBE_DEPTH);
    let points: Vec<ChainElt> = probes.iter().copied().filter(|&e| e != shape.bot()).collect();
    let probe_pairs = pairs(&probes);
    let membership: Vec<(ChainElt, ChainElt)> =
        probes.iter().flat_map(|&a| points.iter().map(move |&e| (a, e))).collect();
    let s = shape;
    let sp = &space;
    let checks = vec![
        compare(
            "way-below",
            &probe_pairs,
            &stages,
            |st, _, &(a, b)| st.way_below(a, b),
            |&(a, b)| chain_way_below(s, a, b),
        ),
        compare(
            "way-below/space",
            &probe_pairs,
            &stages,
            |st, _, &(a, b)| st.way_below(a, b),
            |&(a, b)| clopen_way_below(sp, a, b),
        ),
        compare(
            "pseudocomplement",
            &probes,
            &stages,
            |st, _, &a| st.labels[st.lat.pseudocomplement(st.idx(a))],
            |&a| chain_pseudocomplement(s, a),
        ),
        compare(
            "well-inside",
            &probe_pairs,
            &stages,
            |st, _, &(a, b)| st.lat.well_inside(st.idx(a), st.idx(b)),
            |&(a, b)| chain_well_inside(s, a, b),
        ),
        compare("localic", &points, &stages, |st, nx, &e| st.localic(nx, e), |&e| sp.is_localic(e)),
        compare(
            "kernel",
            &membership,
            &stages,
            |st, _, &(a, e)| st.in_kernel(a, e),
            |&(a, e)| chain_way_below(s, e, a),
        ),
        compare(
            "kernel/space",
            &membership,
            &stages,
            |st, _, &(a, e)| st.in_kernel(a, e),
            |&(a, e)| ker_contains(sp, a, e) && sp.open_contains(sp.ker_open(a), e),
        ),
        compare(
            "regular-part",
            &membership,
            &stages,
            |st, _, &(a, e)| st.in_regular_part(a, e),
            |&(a, e)| sp.open_contains(sp.reg_open(a), e),
        ),
        compare(
            "scott-upsets",
            &probes,
            &stages,
            |st, nx, &m| st.scott(nx, m),
            |&m| {
                let v = scott_verdict(sp, m);
                assert_eq!(v.by_minimum, v.by_closure, "Scott readings differ at {m}");
                v.by_minimum
            },
        ),
        compare(
            "localic-density",
            &probe_pairs.iter().copied().filter(|&(a, b)| a > b).collect::<Vec<_>>(),
            &stages,
            |st, nx, &(a, b)| st.separated(nx, a, b),
            |_| true,
        ),
        compare("frame-flags", &[()], &stages, |st, nx, _| st.frame_props(nx, &probes), |_| chain_classify(s)),
        compare(
            "space-flags",
            &[()],
            &stages,
            |st, nx, _| st.space_props(nx, &probes, &points),
            |_| classify_space(sp),
        ),
    ];
    Ok(OracleReport { subject: format!("shape {shape}"), window, checks })
}

/// Join in the chain of `values`, reading a join that keeps climbing inside
/// one omega block from stage to stage as that block's cap.
fn drifting_join(now: ChainElt, later: ChainElt) -> Option<ChainElt> {
    if now == later {
        Some(now)
    } else if now.block == later.block && now.pos < later.pos {
        Some(ChainElt::limit(now.block))
    } else {
        None
    }
}

/// Homomorphism laws, preservation of suprema, dual points and properness of
/// a chain morphism, checked on truncations of its source.
pub fn validate_morphism(h: &ChainMorphism, window: DepthWindow) -> Result<OracleReport> {
    let (src, tgt) = (h.source(), h.target());
    let stages = stage_pairs(src, window)?;
    let tstages = stage_pairs(tgt, window)?;
    let probes = src.sample(PROBE_DEPTH);
    let tprobes: Vec<ChainElt> = tgt.sample(PROBE_DEPTH).into_iter().filter(|&e| e != tgt.bot()).collect();
    let limits: Vec<ChainElt> = src.omega_blocks().map(ChainElt::limit).collect();
    let image_join = |st: &Stage, lam: ChainElt| -> Option<ChainElt> {
        st.labels.iter().filter(|&&c| c < lam).map(|&c| h.eval(c)).max()
    };
    let mut checks = vec![
        compare(
            "homomorphism",
            &pairs(&probes),
            &stages,
            |st, _, &(a, b)| {
                let (x, y) = (st.idx(a), st.idx(b));
                let m = h.eval(st.labels[st.lat.meet(x, y)]);
                let j = h.eval(st.labels[st.lat.join(x, y)]);
                m == h.eval(a).min(h.eval(b)) && j == h.eval(a).max(h.eval(b))
            },
            |_| true,
        ),
        compare(
            "bounds",
            &[()],
            &stages,
            |st, _, _| (h.eval(st.labels[st.lat.bot()]), h.eval(st.labels[st.lat.top()])),
            |_| (tgt.bot(), tgt.top()),
        ),
        compare(
            "dual-points",
            &tprobes,
            &stages,
            |st, _, &e| st.labels.iter().copied().find(|&x| h.eval(x) >= e),
            |&e| Some(h.lower(e)),
        ),
    ];
    if !limits.is_empty() {
        checks.push(compare(
            "suprema",
            &limits,
            &stages,
            |st, nx, &lam| match (image_join(st, lam), image_join(nx, lam)) {
                (Some(a), Some(b)) => drifting_join(a, b),
                _ => None,
            },
            |&lam| Some(h.eval(lam)),
        ));
    }
    let proper_at = |st: &Stage, ts: &Stage| -> Option<bool> {
        let mut ok = true;
        for &a in &probes {
            for &b in &probes {
                if st.way_below(a, b) {
                    let (x, y) = (h.eval(a), h.eval(b));
                    if ts.index(x).is_none() || ts.index(y).is_none() {
                        return None;
                    }
                    ok &= ts.way_below(x, y);
                }
            }
        }
        Some(ok)
    };
    let joint: Vec<StagePair> = stages.iter().zip(&tstages).map(|((s, _), (t, _))| (s.clone(), t.clone())).collect();
    checks.push(compare("proper", &[()], &joint, |s, t, _| proper_at(s, t), |_| Some(super::chain_is_proper(h))));
    Ok(OracleReport { subject: format!("morphism {} -> {}", src, tgt), window, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> ChainShape {
        ChainShape::parse(s).unwrap()
    }

    #[test]
    fn truncation_counts() {
        let st = truncate(&shape("W"), 3).unwrap();
        assert_eq!(st.lattice().len(), 5);
        assert_eq!(st.labels().last(), Some(&ChainElt::limit(0)));
        assert!(truncate(&shape("W"), 0).is_err());
    }

    #[test]
    fn plain_truncations_are_not_regular() {
        for d in 2..=8 {
            assert!(!truncate(&shape("W"), d).unwrap().lattice().classify_frame().regular);
        }
    }

    #[test]
    fn three_below_cap_is_stable() {
        for d in 4..=8 {
            let st = truncate(&shape("W"), d).unwrap();
            assert!(st.way_below(ChainElt::at(0, 3), ChainElt::limit(0)));
            assert!(!st.way_below(ChainElt::limit(0), ChainElt::limit(0)));
        }
    }

    #[test]
    fn windows_parse() {
        assert_eq!("4..8".parse::<DepthWindow>().unwrap(), DepthWindow { start: 4, end: 8 });
        assert!("2..8".parse::<DepthWindow>().is_err());
        assert!("5..7".parse::<DepthWindow>().is_err());
    }

    #[test]
    fn omega_shape_validates() {
        let r = validate_shape(&shape("W"), DepthWindow::default()).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn sat_validates() {
        let r = validate_morphism(&ChainMorphism::sat(&shape("W")), DepthWindow::default()).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{c:?}");
        }
    }
}

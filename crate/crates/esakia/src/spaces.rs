//! The topological side: finite T0 spaces, spaces of points, and localic parts.

use crate::bits::Mask;
use crate::dlattice::{FilterKind, FinDLat};
use crate::error::{input, Result};
use crate::poset::{FinPoset, PosetFile};
use crate::priestley::{scott_verdict, OpenUpset, PriestleySpace, SpaceMap};
use serde::{Deserialize, Serialize};

/// Space file format: a poset read with its upset topology.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpaceFile {
    #[serde(default = "alexandroff")]
    pub kind: String,
    pub n: usize,
    #[serde(default)]
    pub covers: Vec<[usize; 2]>,
}

fn alexandroff() -> String {
    "alexandroff".into()
}

impl SpaceFile {
    pub fn from_poset(p: &FinPoset) -> SpaceFile {
        let f = p.to_file();
        SpaceFile { kind: alexandroff(), n: f.n, covers: f.covers }
    }

    pub fn build(&self) -> Result<FinPoset> {
        if self.kind != "alexandroff" {
            return input(format!("unknown space kind {:?}", self.kind));
        }
        PosetFile { n: self.n, covers: self.covers.clone() }.build()
    }
}

/// A finite space presented by its list of open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<Mask>,
}

/// Properties of a topological space, each read off the definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TopProps {
    pub t0: bool,
    pub sober: bool,
    pub compact: bool,
    pub locally_compact: bool,
    pub coherent: bool,
    pub stably_locally_compact: bool,
    pub stably_compact: bool,
    pub hausdorff: bool,
}

impl FiniteTopology {
    /// The upset topology of a poset.
    pub fn alexandroff(p: &FinPoset) -> Result<FiniteTopology> {
        Ok(FiniteTopology { n: p.len(), opens: p.upsets()? })
    }

    pub fn from_opens(n: usize, mut opens: Vec<Mask>) -> FiniteTopology {
        opens.sort_by_key(|m| m.to_vec());
        opens.dedup();
        FiniteTopology { n, opens }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn all(&self) -> Mask {
        Mask::full(self.n)
    }

    pub fn is_open(&self, s: Mask) -> bool {
        self.opens.contains(&s)
    }

    pub fn is_closed(&self, s: Mask) -> bool {
        self.is_open(self.all().minus(s))
    }

    pub fn closure(&self, s: Mask) -> Mask {
        let outside = self.opens.iter().filter(|u| u.inter(s).is_empty()).fold(Mask::EMPTY, |acc, u| acc.union(*u));
        self.all().minus(outside)
    }

    /// `x <= y` iff `x in cl {y}`.
    pub fn specialization(&self) -> Vec<bool> {
        let n = self.n;
        (0..n * n).map(|k| self.closure(Mask::single(k % n)).contains(k / n)).collect()
    }

    pub fn saturation(&self, s: Mask) -> Mask {
        self.opens.iter().filter(|u| s.is_subset(**u)).fold(self.all(), |acc, u| acc.inter(*u))
    }

    /// Every cover drawn from a finite list of opens is itself finite, so it is
    /// its own finite subcover; compactness only asks that a cover exists.
    pub fn is_compact(&self, s: Mask) -> bool {
        s.is_subset(self.opens.iter().fold(Mask::EMPTY, |acc, u| acc.union(*u)))
    }

    /// Saturated sets are the intersections of opens; closing the finite list of
    /// opens under binary intersection (and adding the whole space) yields them all.
    fn compact_saturated(&self) -> Vec<Mask> {
        let mut out: Vec<Mask> = self.opens.clone();
        out.push(self.all());
        let mut k = 0;
        while k < out.len() {
            for j in 0..=k {
                let m = out[k].inter(out[j]);
                if !out.contains(&m) {
                    out.push(m);
                }
            }
            k += 1;
        }
        out.retain(|&s| self.is_compact(s));
        out
    }

    pub fn classify(&self) -> TopProps {
        let n = self.n;
        let spec = self.specialization();
        let t0 = (0..n).all(|x| (0..n).all(|y| x == y || !(spec[x * n + y] && spec[y * n + x])));
        let closed: Vec<Mask> = self.opens.iter().map(|u| self.all().minus(*u)).collect();
        let sober = closed.iter().filter(|c| !c.is_empty()).all(|&c| {
            let irreducible = !closed.iter().any(|&a| {
                closed.iter().any(|&b| a != c && b != c && a.is_subset(c) && b.is_subset(c) && a.union(b) == c)
            });
            !irreducible || c.iter().filter(|&x| self.closure(Mask::single(x)) == c).count() == 1
        });
        let compact = self.is_compact(self.all());
        let locally_compact = self.opens.iter().all(|&u| {
            u.iter().all(|x| self.opens.iter().any(|&v| v.contains(x) && v.is_subset(u) && self.is_compact(v)))
        });
        let ks = self.compact_saturated();
        let coherent = ks.iter().all(|&a| ks.iter().all(|&b| self.is_compact(a.inter(b))));
        let hausdorff = (0..n).all(|x| {
            (0..n).all(|y| {
                x == y
                    || self
                        .opens
                        .iter()
                        .any(|&u| u.contains(x) && self.opens.iter().any(|&v| v.contains(y) && u.inter(v).is_empty()))
            })
        });
        let stably_locally_compact = locally_compact && sober && coherent;
        TopProps {
            t0,
            sober,
            compact,
            locally_compact,
            coherent,
            stably_locally_compact,
            stably_compact: compact && stably_locally_compact,
            hausdorff,
        }
    }
}

/// A finite T0 space, stored as its specialization order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinTopSpace {
    order: FinPoset,
}

impl FinTopSpace {
    pub fn new(order: FinPoset) -> FinTopSpace {
        FinTopSpace { order }
    }

    pub fn order(&self) -> &FinPoset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn topology(&self) -> Result<FiniteTopology> {
        FiniteTopology::alexandroff(&self.order)
    }

    /// Recomputes the specialization order from the opens and compares.
    pub fn specialization_roundtrips(&self) -> Result<bool> {
        Ok(self.topology()?.specialization() == self.order.table())
    }
}

/// Frame of opens; the index behind each lattice element is the open set.
pub fn alexandroff_frame(x: &FinTopSpace) -> Result<(FinDLat, Vec<Mask>)> {
    FinDLat::birkhoff_with_sets(&x.order.dual())
}

/// Completely prime filters of a lattice with the topology `{ zeta(a) }`.
#[derive(Clone, Debug)]
pub struct SoberPointSpace {
    pub points: Vec<Mask>,
    pub zeta: Vec<Mask>,
}

pub fn pt_space(d: &FinDLat) -> SoberPointSpace {
    let points: Vec<Mask> = d.filters(FilterKind::CompletelyPrime).into_iter().map(|f| f.elements).collect();
    let zeta = (0..d.len()).map(|a| (0..points.len()).filter(|&x| points[x].contains(a)).collect()).collect();
    SoberPointSpace { points, zeta }
}

impl SoberPointSpace {
    pub fn topology(&self) -> FiniteTopology {
        FiniteTopology::from_opens(self.points.len(), self.zeta.clone())
    }

    /// The specialization order, as a space.
    pub fn as_space(&self) -> Result<FinTopSpace> {
        let t = self.topology();
        Ok(FinTopSpace::new(FinPoset::from_table(t.len(), t.specialization())?))
    }
}

/// A homeomorphism `Z -> pt(O(Z))`, sending `x` to its filter of open neighbourhoods,
/// or `None` when that fails to be one.
pub fn point_homeomorphism(z: &FinTopSpace) -> Result<Option<Vec<usize>>> {
    let (frame, opens) = alexandroff_frame(z)?;
    let pts = pt_space(&frame);
    let mut map = Vec::new();
    for x in 0..z.len() {
        let nbhd: Mask = (0..frame.len()).filter(|&u| opens[u].contains(x)).collect();
        match pts.points.iter().position(|&f| f == nbhd) {
            Some(i) => map.push(i),
            None => return Ok(None),
        }
    }
    let mut hit = vec![false; pts.points.len()];
    for &i in &map {
        hit[i] = true;
    }
    if !hit.iter().all(|h| *h) {
        return Ok(None);
    }
    // opens correspond: image of opens[u] is zeta(u)
    let ok = (0..frame.len()).all(|u| {
        let img: Mask = opens[u].iter().map(|x| map[x]).collect();
        img == pts.zeta[u]
    });
    Ok(ok.then_some(map))
}

pub fn classify_topspace(x: &FinTopSpace) -> Result<TopProps> {
    Ok(x.topology()?.classify())
}

/// Proper in the two-part sense: `down f(A)` closed for closed `A`, and
/// compact preimages of compact saturated sets. Refuses non-continuous maps.
pub fn is_proper_map(dom: &FinTopSpace, cod: &FinTopSpace, map: &[usize]) -> Result<bool> {
    if map.len() != dom.len() || map.iter().any(|&y| y >= cod.len()) {
        return input("map does not fit the spaces");
    }
    let (td, tc) = (dom.topology()?, cod.topology()?);
    let pre = |s: Mask| -> Mask { (0..dom.len()).filter(|&x| s.contains(map[x])).collect() };
    if !tc.opens().iter().all(|&u| td.is_open(pre(u))) {
        return input("map is not continuous");
    }
    let closed_images = td.opens().iter().all(|&u| {
        let a = td.all().minus(u);
        let img: Mask = a.iter().map(|x| map[x]).collect();
        tc.is_closed(cod.order.down(img))
    });
    let compact_preimages = tc.compact_saturated().into_iter().all(|b| td.is_compact(pre(b)));
    Ok(closed_images && compact_preimages)
}

// Localic parts of Priestley spaces, with opens `zeta(a) = phi(a) & Y`.

fn localic_witnesses<S: PriestleySpace>(s: &S) -> Vec<S::Point> {
    s.witness_points().into_iter().filter(|&p| s.is_localic(p)).collect()
}

fn zeta_subset<S: PriestleySpace>(s: &S, ys: &[S::Point], a: S::Elt, b: S::Elt) -> bool {
    ys.iter().all(|&y| !s.in_phi(y, a) || s.in_phi(y, b))
}

/// `zeta(a)` is compact: a directed open cover `zeta(I)` has a single member
/// `zeta(c)`, `c` in the ideal, covering it. Candidates `c` come from the
/// universal sample so that far-out witness points can expose a missing cover.
pub fn zeta_compact<S: PriestleySpace>(s: &S, a: S::Elt) -> bool {
    trace_compact(s, &|y| s.in_phi(y, a))
}

fn trace_compact<S: PriestleySpace>(s: &S, inside: &dyn Fn(S::Point) -> bool) -> bool {
    let ys = localic_witnesses(s);
    let elts = s.elts();
    s.open_upsets().into_iter().all(|w| {
        let covers = ys.iter().filter(|&&y| inside(y)).all(|&y| s.open_contains(w, y));
        !covers || elts.iter().any(|&c| s.clopen_inside(w, c) && ys.iter().all(|&y| !inside(y) || s.in_phi(y, c)))
    })
}

/// Scott upsets against compact saturated subsets of the localic part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HofmannMislove {
    pub scott_upsets: usize,
    pub compact_saturated: usize,
    /// `F -> F & Y` and `K -> up K` are inverse to each other.
    pub bijective: bool,
    /// Both maps preserve and reflect inclusion.
    pub order_isomorphism: bool,
}

/// Compact saturated sets are searched among traces of open upsets, which
/// covers every saturated set of the finite and chain backends.
pub fn hofmann_mislove<S: PriestleySpace>(s: &S) -> HofmannMislove {
    let ys = localic_witnesses(s);
    let wpts = s.witness_points();
    let trace = |inside: &dyn Fn(S::Point) -> bool| -> Vec<bool> { ys.iter().map(|&y| inside(y)).collect() };
    let scott: Vec<S::Elt> = s.elts().into_iter().filter(|&m| scott_verdict(s, m).by_minimum).collect();
    let mut compact: Vec<Vec<bool>> = Vec::new();
    // principal handles only from the universal sample, as in `zeta_compact`
    let mut handles: Vec<OpenUpset<S::Elt>> = s.elts().into_iter().map(OpenUpset::Principal).collect();
    handles.extend(s.open_upsets().into_iter().filter(|w| matches!(w, OpenUpset::Below(_))));
    for w in handles {
        let inside = |y: S::Point| s.open_contains(w, y);
        let t = trace(&inside);
        if !compact.contains(&t) && trace_compact(s, &inside) {
            compact.push(t);
        }
    }
    let forward: Vec<Vec<bool>> = scott.iter().map(|&m| trace(&|y| s.in_phi(y, m))).collect();
    let forward_ok = forward.iter().all(|t| compact.contains(t));
    // up K must be some phi(m) with m Scott and trace K again
    let backward_ok = compact.iter().all(|k| {
        let up: Vec<bool> =
            wpts.iter().map(|&p| ys.iter().zip(k).any(|(&y, &inside)| inside && s.point_le(y, p))).collect();
        scott.iter().zip(&forward).any(|(&m, t)| t == k && wpts.iter().zip(&up).all(|(&p, &u)| s.in_phi(p, m) == u))
    });
    let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
    let order_isomorphism = scott
        .iter()
        .zip(&forward)
        .all(|(&a, ta)| scott.iter().zip(&forward).all(|(&b, tb)| s.elt_le(a, b) == subset(ta, tb)));
    let mut distinct = forward.clone();
    distinct.sort();
    distinct.dedup();
    HofmannMislove {
        scott_upsets: scott.len(),
        compact_saturated: compact.len(),
        bijective: forward_ok && backward_ok && distinct.len() == scott.len() && compact.len() == scott.len(),
        order_isomorphism,
    }
}

/// Topological properties of the localic part, over the backend's samples.
pub fn classify_localic<S: PriestleySpace>(s: &S) -> TopProps {
    let ys = localic_witnesses(s);
    let y_sample: Vec<S::Point> = s.points().into_iter().filter(|&p| s.is_localic(p)).collect();
    let elts = s.elts();
    let compact_of: Vec<bool> = elts.iter().map(|&a| zeta_compact(s, a)).collect();
    let t0 = y_sample
        .iter()
        .all(|&x| y_sample.iter().all(|&y| x == y || elts.iter().any(|&a| s.in_phi(x, a) != s.in_phi(y, a))));
    // closed sets are Y \ zeta(a); compare them on the witness points
    let closed_sub = |a: S::Elt, b: S::Elt| zeta_subset(s, &ys, b, a);
    let nonempty_closed = |a: S::Elt| ys.iter().any(|&y| !s.in_phi(y, a));
    let sober = elts.iter().filter(|&&a| nonempty_closed(a)).all(|&a| {
        let irreducible = !elts.iter().any(|&b| {
            elts.iter().any(|&c| {
                let covered = ys.iter().all(|&y| s.in_phi(y, a) || !s.in_phi(y, b) || !s.in_phi(y, c));
                covered && !closed_sub(a, b) && !closed_sub(a, c)
            })
        });
        let generic = ys.iter().filter(|&&y| ys.iter().all(|&z| (!s.in_phi(z, a)) == s.point_le(z, y))).count();
        !irreducible || generic == 1
    });
    let compact = zeta_compact(s, s.top());
    let locally_compact = elts.iter().all(|&a| {
        y_sample.iter().filter(|&&y| s.in_phi(y, a)).all(|&y| {
            elts.iter().any(|&v| {
                s.in_phi(y, v)
                    && elts
                        .iter()
                        .zip(&compact_of)
                        .any(|(&k, &kc)| kc && zeta_subset(s, &ys, v, k) && zeta_subset(s, &ys, k, a))
            })
        })
    });
    let coherent =
        elts.iter().zip(&compact_of).filter(|(_, &c)| c).all(|(&a, _)| {
            elts.iter().zip(&compact_of).filter(|(_, &c)| c).all(|(&b, _)| zeta_compact(s, s.meet(a, b)))
        });
    let welts = s.witness_elts();
    let hausdorff = y_sample.iter().all(|&x| {
        y_sample.iter().all(|&y| {
            x == y
                || welts.iter().any(|&a| {
                    s.in_phi(x, a)
                        && welts.iter().any(|&b| s.in_phi(y, b) && !ys.iter().any(|&z| s.in_phi(z, s.meet(a, b))))
                })
        })
    });
    let stably_locally_compact = locally_compact && sober && coherent;
    TopProps {
        t0,
        sober,
        compact,
        locally_compact,
        coherent,
        stably_locally_compact,
        stably_compact: compact && stably_locally_compact,
        hausdorff,
    }
}

/// Properness of the restriction of `f` to localic parts. Compact saturated
/// sets are the compact `zeta(m)`, matching Scott upsets `phi(m)`.
pub fn is_proper_localic<M: SpaceMap>(f: &M) -> bool {
    let (d, c) = (f.dom(), f.cod());
    let dys = localic_witnesses(d);
    let cys = localic_witnesses(c);
    let celts = c.elts();
    let closed_images = d.elts().into_iter().all(|a| {
        let image: Vec<_> = dys.iter().filter(|&&y| !d.in_phi(y, a)).map(|&y| f.apply(y)).collect();
        let down: Vec<bool> = cys.iter().map(|&q| image.iter().any(|&z| c.point_le(q, z))).collect();
        // closed iff the complement is some zeta(e)
        c.witness_elts().into_iter().any(|e| cys.iter().zip(&down).all(|(&q, &inside)| c.in_phi(q, e) == !inside))
    });
    let compact_preimages = celts.into_iter().filter(|&m| zeta_compact(c, m)).all(|m| zeta_compact(d, f.pull(m)));
    closed_images && compact_preimages
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: FinPoset) -> FinTopSpace {
        FinTopSpace::new(p)
    }

    #[test]
    fn frames_of_small_spaces() {
        assert_eq!(alexandroff_frame(&space(FinPoset::antichain(1))).unwrap().0.len(), 2);
        let (b2, _) = alexandroff_frame(&space(FinPoset::antichain(2))).unwrap();
        assert!(b2.classify_frame().boolean_algebra && b2.len() == 4);
        let (c3, _) = alexandroff_frame(&space(FinPoset::chain(2))).unwrap();
        assert_eq!(c3.len(), 3);
        assert_eq!(c3.order().covers().len(), 2);
    }

    #[test]
    fn points_of_small_frames() {
        assert_eq!(pt_space(&FinDLat::chain(2)).points.len(), 1);
        let b2 = pt_space(&FinDLat::boolean(2)).as_space().unwrap();
        assert_eq!(b2.order().canonical_key(), FinPoset::antichain(2).canonical_key());
        let c = pt_space(&FinDLat::chain(3)).as_space().unwrap();
        assert_eq!(c.order().canonical_key(), FinPoset::chain(2).canonical_key());
    }

    #[test]
    fn homeomorphism_roundtrip() {
        for p in crate::poset::enumerate_posets(3).unwrap() {
            let z = space(p);
            assert!(point_homeomorphism(&z).unwrap().is_some());
            assert!(z.specialization_roundtrips().unwrap());
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify_topspace(&space(FinPoset::chain(2))).unwrap();
        assert!(c.sober && c.compact && c.locally_compact && c.coherent && !c.hausdorff);
        assert!(classify_topspace(&space(FinPoset::antichain(2))).unwrap().hausdorff);
        let one = classify_topspace(&space(FinPoset::antichain(1))).unwrap();
        assert!(one.t0 && one.sober && one.compact && one.stably_compact && one.hausdorff);
    }

    #[test]
    fn proper_maps_between_finite_spaces() {
        let x = space(FinPoset::chain(3));
        let y = space(FinPoset::chain(2));
        assert!(is_proper_map(&x, &x, &[0, 1, 2]).unwrap());
        assert!(is_proper_map(&x, &y, &[0, 0, 1]).unwrap());
        assert!(is_proper_map(&x, &y, &[1, 0, 0]).is_err());
    }

    #[test]
    fn hofmann_mislove_on_both_backends() {
        use crate::chainfrm::{ChainShape, ChainSpace};
        let x = crate::priestley::dual_space(&FinDLat::chain(3));
        let hm = hofmann_mislove(&x);
        assert!(hm.bijective && hm.order_isomorphism);
        assert_eq!(hm.scott_upsets, 3);
        let w = ChainSpace::new(ChainShape::parse("W").unwrap()).unwrap();
        let hm = hofmann_mislove(&w);
        assert!(hm.bijective && hm.order_isomorphism, "{hm:?}");
        // bot and positions 1..3; the cap gives no Scott upset
        assert_eq!(hm.scott_upsets, 4);
    }
}

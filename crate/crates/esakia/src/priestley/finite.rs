//! Finite backend: a finite poset with the discrete topology.

use super::{classify_space, OpenUpset, PriestleySpace, SpaceProps};
use crate::bits::Mask;
use crate::dlattice::{FilterKind, FinDLat};
use crate::error::{Error, Result};
use crate::poset::FinPoset;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

/// A finite Priestley space together with an indexing of its clopen upsets.
#[derive(Clone, Debug)]
pub struct FiniteSpace {
    order: FinPoset,
    lat: FinDLat,
    phi: Vec<Mask>,
    index_of: HashMap<Mask, usize>,
    localic: Vec<bool>,
    ker_join: Vec<usize>,
    reg_join: Vec<usize>,
    /// Lattice elements making up each point, when the space came from a lattice.
    contents: Option<Vec<Mask>>,
    props: OnceLock<SpaceProps>,
}

/// Points are the prime filters of `d`, ordered by inclusion; `phi(a)` is the
/// set of prime filters containing `a`.
pub fn dual_space(d: &FinDLat) -> FiniteSpace {
    let primes: Vec<Mask> = d.filters(FilterKind::Prime).into_iter().map(|f| f.elements).collect();
    let m = primes.len();
    let le: Vec<bool> = (0..m * m).map(|k| primes[k / m].is_subset(primes[k % m])).collect();
    let order = FinPoset::from_table(m, le).expect("inclusion is a partial order");
    let phi = (0..d.len()).map(|a| (0..m).filter(|&x| primes[x].contains(a)).collect()).collect();
    FiniteSpace::assemble(order, d.clone(), phi, Some(primes))
}

impl FiniteSpace {
    /// The space on a poset, indexed by its lattice of upsets.
    pub fn from_poset(order: &FinPoset) -> Result<FiniteSpace> {
        let (lat, downs) = FinDLat::birkhoff_with_sets(&order.dual())?;
        Ok(FiniteSpace::assemble(order.clone(), lat, downs, None))
    }

    fn assemble(order: FinPoset, lat: FinDLat, phi: Vec<Mask>, contents: Option<Vec<Mask>>) -> FiniteSpace {
        let index_of = phi.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut s = FiniteSpace {
            order,
            lat,
            phi,
            index_of,
            localic: Vec::new(),
            ker_join: Vec::new(),
            reg_join: Vec::new(),
            contents,
            props: OnceLock::new(),
        };
        s.localic = (0..s.order.len()).map(|p| s.is_clopen(s.order.down(Mask::single(p)))).collect();
        let n = s.lat.len();
        s.ker_join =
            (0..n).map(|a| s.lat.big_join((0..n).filter(|&b| super::clopen_way_below(&s, b, a)).collect())).collect();
        s.reg_join =
            (0..n).map(|a| s.lat.big_join((0..n).filter(|&b| super::clopen_well_inside(&s, b, a)).collect())).collect();
        s
    }

    /// A set is clopen when it is a union of basic sets `phi(a) \ phi(b)`.
    fn is_clopen(&self, set: Mask) -> bool {
        let basics: Vec<Mask> = self
            .phi
            .iter()
            .flat_map(|a| self.phi.iter().map(move |b| a.minus(*b)))
            .filter(|m| m.is_subset(set))
            .collect();
        set.iter().all(|p| basics.iter().any(|m| m.contains(p)))
    }

    pub fn order(&self) -> &FinPoset {
        &self.order
    }

    pub fn lattice(&self) -> &FinDLat {
        &self.lat
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn phi(&self, a: usize) -> Mask {
        self.phi[a]
    }

    pub fn index_of(&self, set: Mask) -> Option<usize> {
        self.index_of.get(&set).copied()
    }

    pub fn localic_points(&self) -> Mask {
        (0..self.len()).filter(|&p| self.localic[p]).collect()
    }

    pub fn ker_set(&self, a: usize) -> Mask {
        self.phi[self.ker_join[a]]
    }

    pub fn reg_set(&self, a: usize) -> Mask {
        self.phi[self.reg_join[a]]
    }

    pub fn point_contents(&self, p: usize) -> Option<Mask> {
        self.contents.as_ref().map(|c| c[p])
    }

    /// Whether `phi` is a bounded-lattice embedding onto all upsets.
    pub fn phi_is_isomorphism(&self) -> bool {
        let d = &self.lat;
        let n = d.len();
        let ups = match self.order.upsets() {
            Ok(u) => u,
            Err(_) => return false,
        };
        let mut images: Vec<Mask> = self.phi.clone();
        images.sort_by_key(|m| m.to_vec());
        images.dedup();
        images.len() == n
            && images.len() == ups.len()
            && self.phi.iter().all(|m| self.order.is_upset(*m))
            && self.phi[d.bot()].is_empty()
            && self.phi[d.top()] == self.order.all()
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    self.phi[d.meet(a, b)] == self.phi[a].inter(self.phi[b])
                        && self.phi[d.join(a, b)] == self.phi[a].union(self.phi[b])
                })
            })
    }

    /// Graphviz rendering; localic points are boxes, `overlay` points are filled.
    pub fn to_dot(&self, overlay: Option<Mask>) -> String {
        let mut s = String::from("digraph space {\n  rankdir=BT;\n");
        for p in 0..self.len() {
            let label = match &self.contents {
                Some(c) => format!("{:?}", c[p].to_vec()),
                None => p.to_string(),
            };
            let shape = if self.localic[p] { "box" } else { "ellipse" };
            let fill = match overlay {
                Some(o) if o.contains(p) => ", style=filled, fillcolor=lightgray",
                _ => "",
            };
            let _ = writeln!(s, "  p{p} [label=\"{label}\", shape={shape}{fill}];");
        }
        for (a, b) in self.order.covers() {
            let _ = writeln!(s, "  p{a} -> p{b} [arrowhead=none];");
        }
        s.push_str("}\n");
        s
    }
}

/// Outcome of the duality roundtrip on one lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitReport {
    pub phi_bijective: bool,
    pub phi_preserves_operations: bool,
    pub phi_reflects_order: bool,
    pub epsilon_bijective: bool,
    pub epsilon_order_isomorphism: bool,
}

impl UnitReport {
    pub fn passed(&self) -> bool {
        self.phi_bijective
            && self.phi_preserves_operations
            && self.phi_reflects_order
            && self.epsilon_bijective
            && self.epsilon_order_isomorphism
    }
}

/// `ClopUp(X)` as a lattice; with the discrete topology these are all upsets.
pub fn clopup_lattice(x: &FiniteSpace) -> Result<(FinDLat, Vec<Mask>)> {
    FinDLat::birkhoff_with_sets(&x.order.dual())
}

/// Checks that `phi: d -> ClopUp(X_d)` and `eps: X -> X_{ClopUp X}` are isomorphisms.
pub fn unit_checks(d: &FinDLat) -> Result<UnitReport> {
    let x = dual_space(d);
    let (clop, sets) = clopup_lattice(&x)?;
    let pos: HashMap<Mask, usize> = sets.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let n = d.len();
    let phi_idx: Vec<Option<usize>> = (0..n).map(|a| pos.get(&x.phi(a)).copied()).collect();
    let mut hit = vec![false; clop.len()];
    for i in phi_idx.iter().flatten() {
        hit[*i] = true;
    }
    let phi_bijective = phi_idx.iter().all(|i| i.is_some()) && hit.iter().all(|h| *h) && n == clop.len();
    let phi_preserves_operations = phi_bijective && {
        let f = |a: usize| phi_idx[a].expect("checked");
        f(d.bot()) == clop.bot()
            && f(d.top()) == clop.top()
            && (0..n).all(|a| {
                (0..n).all(|b| f(d.meet(a, b)) == clop.meet(f(a), f(b)) && f(d.join(a, b)) == clop.join(f(a), f(b)))
            })
    };
    let phi_reflects_order =
        phi_bijective && (0..n).all(|a| (0..n).all(|b| d.le(a, b) == x.phi(a).is_subset(x.phi(b))));

    // eps(p) = { U : p in U }, a prime filter of ClopUp(X)
    let second = dual_space(&clop);
    let m = x.len();
    let eps: Vec<Option<usize>> = (0..m)
        .map(|p| {
            let filt: Mask = (0..clop.len()).filter(|&u| sets[u].contains(p)).collect();
            (0..second.len()).find(|&q| second.point_contents(q) == Some(filt))
        })
        .collect();
    let mut seen = vec![false; second.len()];
    for q in eps.iter().flatten() {
        seen[*q] = true;
    }
    let epsilon_bijective = eps.iter().all(|e| e.is_some()) && seen.iter().all(|s| *s);
    let epsilon_order_isomorphism = epsilon_bijective
        && (0..m).all(|p| {
            (0..m).all(|q| x.order.le(p, q) == second.order.le(eps[p].expect("checked"), eps[q].expect("checked")))
        });
    Ok(UnitReport {
        phi_bijective,
        phi_preserves_operations,
        phi_reflects_order,
        epsilon_bijective,
        epsilon_order_isomorphism,
    })
}

impl PriestleySpace for FiniteSpace {
    type Elt = usize;
    type Point = usize;

    fn describe(&self) -> String {
        format!("finite space on {} points", self.len())
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn elts(&self) -> Vec<usize> {
        (0..self.lat.len()).collect()
    }

    fn witness_elts(&self) -> Vec<usize> {
        self.elts()
    }

    fn bot(&self) -> usize {
        self.lat.bot()
    }

    fn top(&self) -> usize {
        self.lat.top()
    }

    fn elt_le(&self, a: usize, b: usize) -> bool {
        self.lat.le(a, b)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.lat.meet(a, b)
    }

    fn join(&self, a: usize, b: usize) -> usize {
        self.lat.join(a, b)
    }

    fn points(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    fn witness_points(&self) -> Vec<usize> {
        self.points()
    }

    fn point_le(&self, p: usize, q: usize) -> bool {
        self.order.le(p, q)
    }

    fn in_phi(&self, p: usize, a: usize) -> bool {
        self.phi[a].contains(p)
    }

    fn open_upsets(&self) -> Vec<OpenUpset<usize>> {
        // every ideal of a finite lattice is principal
        (0..self.lat.len()).map(OpenUpset::Principal).collect()
    }

    fn clopen_inside(&self, w: OpenUpset<usize>, a: usize) -> bool {
        match w {
            OpenUpset::Principal(c) => self.lat.le(a, c),
            OpenUpset::Below(c) => a != c && self.lat.le(a, c),
        }
    }

    fn open_contains(&self, w: OpenUpset<usize>, p: usize) -> bool {
        match w {
            OpenUpset::Principal(c) => self.in_phi(p, c),
            OpenUpset::Below(c) => (0..self.lat.len()).any(|b| b != c && self.lat.le(b, c) && self.in_phi(p, b)),
        }
    }

    fn closure(&self, w: OpenUpset<usize>) -> usize {
        match w {
            OpenUpset::Principal(c) => c,
            OpenUpset::Below(c) => {
                self.lat.big_join((0..self.lat.len()).filter(|&b| b != c && self.lat.le(b, c)).collect())
            }
        }
    }

    fn open_meet(&self, u: OpenUpset<usize>, w: OpenUpset<usize>) -> OpenUpset<usize> {
        // every ideal is the principal ideal of its closure
        OpenUpset::Principal(self.lat.meet(self.closure(u), self.closure(w)))
    }

    fn is_localic(&self, p: usize) -> bool {
        self.localic[p]
    }

    fn up_of_point(&self, p: usize) -> usize {
        self.index_of[&self.order.up(Mask::single(p))]
    }

    fn min_of(&self, a: usize) -> Vec<usize> {
        self.order.minimal(self.phi[a]).to_vec()
    }

    fn ker_open(&self, a: usize) -> OpenUpset<usize> {
        OpenUpset::Principal(self.ker_join[a])
    }

    fn props(&self) -> SpaceProps {
        *self.props.get_or_init(|| classify_space(self))
    }

    fn reg_open(&self, a: usize) -> OpenUpset<usize> {
        OpenUpset::Principal(self.reg_join[a])
    }
}

impl FiniteSpace {
    /// Refuses spaces too large for the upset lattice.
    pub fn checked_from_poset(order: &FinPoset) -> Result<FiniteSpace> {
        FiniteSpace::from_poset(order).map_err(|e| match e {
            Error::Capacity(m) => Error::Capacity(format!("space too large: {m}")),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn vee() -> FinPoset {
        FinPoset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn dual_space_examples() {
        assert_eq!(dual_space(&FinDLat::chain(2)).len(), 1);
        let x = dual_space(&FinDLat::chain(3));
        assert_eq!(x.len(), 2);
        assert_eq!(x.order().covers().len(), 1);
        let v = FinDLat::birkhoff(&vee()).unwrap();
        let xv = dual_space(&v);
        assert_eq!(xv.len(), 3);
        // prime filters under inclusion reverse the order of the downset lattice's generators
        assert_eq!(xv.order().canonical_key(), vee().dual().canonical_key());
        let up_indexed = FiniteSpace::from_poset(&vee()).unwrap();
        assert_eq!(dual_space(up_indexed.lattice()).order().canonical_key(), vee().canonical_key());
    }

    #[test]
    fn units_on_small_lattices() {
        for d in [FinDLat::boolean(3), FinDLat::chain(1), FinDLat::chain(4)] {
            assert!(unit_checks(&d).unwrap().passed());
        }
        let (l, _) = clopup_lattice(&FiniteSpace::from_poset(&FinPoset::antichain(1)).unwrap()).unwrap();
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn finite_kernel_and_regular_part() {
        let x = dual_space(&FinDLat::chain(3));
        for a in 0..3 {
            assert_eq!(x.ker_set(a), x.phi(a));
        }
        assert_eq!(x.reg_set(2), x.order().all());
        assert!(x.reg_set(1).is_empty());
        for p in 0..x.len() {
            assert!(!reg_contains(&x, 1, p));
            assert!(reg_contains(&x, 2, p));
        }
        assert_eq!(x.localic_points(), x.order().all());
    }

    #[test]
    fn finite_classification() {
        let b = classify_space(&dual_space(&FinDLat::boolean(3)));
        assert!(b.is_SL && b.is_CL && b.is_StCL && b.is_StKL && b.is_L_regular && b.is_KRL);
        let c = classify_space(&dual_space(&FinDLat::chain(3)));
        assert!(c.is_StKL && !c.is_KRL && !c.is_L_regular);
    }

    #[test]
    fn scott_upsets_in_finite_spaces() {
        let x = dual_space(&FinDLat::birkhoff(&vee()).unwrap());
        for a in 0..x.lattice().len() {
            assert!(is_scott_upset(&x, a).unwrap());
        }
    }

    #[test]
    fn dot_marks_localic_points() {
        let x = dual_space(&FinDLat::chain(3));
        let dot = x.to_dot(Some(Mask::single(0)));
        assert!(dot.contains("shape=box"));
        assert!(dot.contains("filled"));
    }
}

//! Maps between Priestley spaces: duals of homs, L-morphism checks,
//! restriction to localic parts, properness and extension from localic parts.

use super::{ker_contains, scott_verdict, up_localic_trace, FiniteSpace, OpenUpset, PriestleySpace};
use crate::bits::Mask;
use crate::dlattice::LatticeHom;
use crate::error::{input, Error, Result};
use crate::spaces::SpaceFile;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

type Pt<S> = <S as PriestleySpace>::Point;
type El<S> = <S as PriestleySpace>::Elt;

/// A map `f: X1 -> X2` together with the index form of `f^-1` on clopen upsets.
pub trait SpaceMap {
    type Dom: PriestleySpace;
    type Cod: PriestleySpace;
    fn dom(&self) -> &Self::Dom;
    fn cod(&self) -> &Self::Cod;
    fn apply(&self, p: Pt<Self::Dom>) -> Pt<Self::Cod>;
    /// `f^-1 phi(a) = phi(pull(a))`.
    fn pull(&self, a: El<Self::Cod>) -> El<Self::Dom>;
    fn pull_open(&self, w: OpenUpset<El<Self::Cod>>) -> OpenUpset<El<Self::Dom>>;
}

/// A monotone map between finite spaces.
#[derive(Clone, Debug)]
pub struct FiniteMorphism {
    dom: Arc<FiniteSpace>,
    cod: Arc<FiniteSpace>,
    point_map: Vec<usize>,
    pulls: Vec<usize>,
}

impl FiniteMorphism {
    pub fn new(dom: Arc<FiniteSpace>, cod: Arc<FiniteSpace>, point_map: Vec<usize>) -> Result<FiniteMorphism> {
        if point_map.len() != dom.len() || point_map.iter().any(|&q| q >= cod.len()) {
            return input("point map does not fit the spaces");
        }
        if !dom.order().is_monotone(cod.order(), &point_map) {
            return input("point map is not order preserving");
        }
        let pulls = (0..cod.lattice().len())
            .map(|a| {
                let pre: Mask = (0..dom.len()).filter(|&p| cod.phi(a).contains(point_map[p])).collect();
                dom.index_of(pre).ok_or_else(|| Error::Input("preimage of a clopen upset is not one".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteMorphism { dom, cod, point_map, pulls })
    }

    pub fn identity(x: Arc<FiniteSpace>) -> FiniteMorphism {
        let pm = (0..x.len()).collect();
        FiniteMorphism::new(x.clone(), x, pm).expect("identity is monotone")
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn dom_space(&self) -> &Arc<FiniteSpace> {
        &self.dom
    }

    pub fn cod_space(&self) -> &Arc<FiniteSpace> {
        &self.cod
    }

    /// `self` then `next`.
    pub fn then(&self, next: &FiniteMorphism) -> Result<FiniteMorphism> {
        if self.cod.order() != next.dom.order() {
            return input("composition through different spaces");
        }
        let pm = self.point_map.iter().map(|&q| next.point_map[q]).collect();
        FiniteMorphism::new(self.dom.clone(), next.cod.clone(), pm)
    }

    pub fn image(&self, s: Mask) -> Mask {
        s.iter().map(|p| self.point_map[p]).collect()
    }

    pub fn to_file(&self) -> MorphismFile {
        MorphismFile {
            dom: SpaceFile::from_poset(self.dom.order()),
            cod: SpaceFile::from_poset(self.cod.order()),
            point_map: self.point_map.clone(),
        }
    }
}

impl SpaceMap for FiniteMorphism {
    type Dom = FiniteSpace;
    type Cod = FiniteSpace;

    fn dom(&self) -> &FiniteSpace {
        &self.dom
    }

    fn cod(&self) -> &FiniteSpace {
        &self.cod
    }

    fn apply(&self, p: usize) -> usize {
        self.point_map[p]
    }

    fn pull(&self, a: usize) -> usize {
        self.pulls[a]
    }

    fn pull_open(&self, w: OpenUpset<usize>) -> OpenUpset<usize> {
        match w {
            OpenUpset::Principal(a) => OpenUpset::Principal(self.pulls[a]),
            OpenUpset::Below(c) => {
                let l = self.cod.lattice();
                let parts: Mask = (0..l.len()).filter(|&b| b != c && l.le(b, c)).map(|b| self.pulls[b]).collect();
                OpenUpset::Principal(self.dom.lattice().big_join(parts))
            }
        }
    }
}

/// Serialized finite morphism.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismFile {
    pub dom: SpaceFile,
    pub cod: SpaceFile,
    pub point_map: Vec<usize>,
}

impl MorphismFile {
    pub fn build(&self) -> Result<FiniteMorphism> {
        let dom = Arc::new(FiniteSpace::from_poset(&self.dom.build()?)?);
        let cod = Arc::new(FiniteSpace::from_poset(&self.cod.build()?)?);
        FiniteMorphism::new(dom, cod, self.point_map.clone())
    }
}

/// The dual of `h: L -> M` is `h^-1: X_M -> X_L` on prime filters.
pub fn dual_of_hom(h: &LatticeHom) -> Result<FiniteMorphism> {
    let dom = Arc::new(super::dual_space(&h.cod));
    let cod = Arc::new(super::dual_space(&h.dom));
    dual_of_hom_between(h, dom, cod)
}

/// [`dual_of_hom`] onto already built dual spaces of `h.cod` and `h.dom`.
pub fn dual_of_hom_between(h: &LatticeHom, dom: Arc<FiniteSpace>, cod: Arc<FiniteSpace>) -> Result<FiniteMorphism> {
    if !h.flags().bounded_lattice_hom {
        return input("not a bounded lattice homomorphism");
    }
    if *dom.lattice() != *h.cod || *cod.lattice() != *h.dom {
        return input("spaces are not the duals of the hom's ends");
    }
    let pm = (0..dom.len())
        .map(|x| {
            let filt = dom.point_contents(x).ok_or_else(|| Error::Input("space has no filter contents".into()))?;
            let pre: Mask = (0..h.dom.len()).filter(|&a| filt.contains(h.apply(a))).collect();
            (0..cod.len())
                .find(|&y| cod.point_contents(y) == Some(pre))
                .ok_or_else(|| Error::Input("preimage of a prime filter is not prime".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteMorphism::new(dom, cod, pm)
}

/// Order preservation, agreement of `pull` with preimages, and
/// `f^-1 cl W = cl f^-1 W` for every representable open upset `W`.
pub fn is_l_morphism<M: SpaceMap>(f: &M) -> bool {
    let (d, c) = (f.dom(), f.cod());
    let pts = d.points();
    let monotone = pts.iter().all(|&p| pts.iter().all(|&q| !d.point_le(p, q) || c.point_le(f.apply(p), f.apply(q))));
    let pulls = c.elts().into_iter().all(|a| pts.iter().all(|&p| c.in_phi(f.apply(p), a) == d.in_phi(p, f.pull(a))));
    let closures = c.open_upsets().into_iter().all(|w| {
        let pw = f.pull_open(w);
        f.pull(c.closure(w)) == d.closure(pw)
            && pts.iter().all(|&p| c.open_contains(w, f.apply(p)) == d.open_contains(pw, p))
    });
    monotone && pulls && closures
}

/// The restriction of `f` to localic parts, as pairs over the domain sample.
/// Graph of a map on localic points.
pub type LocalicGraph<M> = Vec<(Pt<<M as SpaceMap>::Dom>, Pt<<M as SpaceMap>::Cod>)>;

pub fn restrict_morphism<M: SpaceMap>(f: &M) -> Result<LocalicGraph<M>> {
    let (d, c) = (f.dom(), f.cod());
    let mut out = Vec::new();
    for p in d.points() {
        if d.is_localic(p) {
            let q = f.apply(p);
            if !c.is_localic(q) {
                return Err(Error::Precondition(format!("{p:?} is localic but its image {q:?} is not")));
            }
            out.push((p, q));
        }
    }
    Ok(out)
}

/// The five properness conditions, each evaluated on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProperProfile {
    /// `f^-1(ker U)` inside `ker f^-1(U)`.
    pub kernel_preimage: bool,
    /// `f^-1 up(U & Y2) = up(f^-1(U) & Y1)`.
    pub localic_trace: bool,
    /// `f^-1(up y)` is a Scott upset for localic `y`.
    pub principal_scott: bool,
    /// `f^-1(F)` is a Scott upset for Scott upsets `F`.
    pub scott_preimage: bool,
    /// `down f(x) & Y2` inside `down f(down x & Y1)`.
    pub down_image: bool,
}

impl ProperProfile {
    pub fn as_array(&self) -> [bool; 5] {
        [self.kernel_preimage, self.localic_trace, self.principal_scott, self.scott_preimage, self.down_image]
    }

    pub fn agree(&self) -> bool {
        let a = self.as_array();
        a.iter().all(|&x| x == a[0])
    }
}

/// Refuses unless both ends are CL spaces, where the five conditions coincide.
pub fn properness_profile<M: SpaceMap>(f: &M) -> Result<ProperProfile> {
    let (d, c) = (f.dom(), f.cod());
    if !d.props().is_CL || !c.props().is_CL {
        return Err(Error::Precondition("properness conditions need CL spaces at both ends".into()));
    }
    let pts = d.points();
    let celts = c.elts();
    let kernel_preimage =
        celts.iter().all(|&a| pts.iter().all(|&p| !ker_contains(c, a, f.apply(p)) || ker_contains(d, f.pull(a), p)));
    let localic_trace = celts
        .iter()
        .all(|&a| pts.iter().all(|&p| up_localic_trace(c, a, f.apply(p)) == up_localic_trace(d, f.pull(a), p)));
    let principal_scott = c
        .points()
        .into_iter()
        .filter(|&y| c.is_localic(y))
        .all(|y| scott_verdict(d, f.pull(c.up_of_point(y))).by_minimum);
    let scott_preimage =
        celts.iter().filter(|&&m| scott_verdict(c, m).by_minimum).all(|&m| scott_verdict(d, f.pull(m)).by_minimum);
    let dwit = d.witness_points();
    let cwit = c.witness_points();
    let down_image = pts.iter().all(|&x| {
        let fx = f.apply(x);
        cwit.iter()
            .filter(|&&q| c.point_le(q, fx) && c.is_localic(q))
            .all(|&q| dwit.iter().any(|&z| d.point_le(z, x) && d.is_localic(z) && c.point_le(q, f.apply(z))))
    });
    Ok(ProperProfile { kernel_preimage, localic_trace, principal_scott, scott_preimage, down_image })
}

/// Extends a continuous map `g` between localic parts of SL spaces to the whole
/// space: `x` goes to the point whose clopen-upset filter is
/// `P_x = { U : x in cl g^-1(U & Y2) }`.
pub fn extend_map<S1: PriestleySpace, S2: PriestleySpace>(
    dom: &S1,
    cod: &S2,
    g: &dyn Fn(Pt<S1>) -> Pt<S2>,
) -> Result<BTreeMap<Pt<S1>, Pt<S2>>> {
    if !dom.props().is_SL || !cod.props().is_SL {
        return Err(Error::Precondition("extension needs SL spaces".into()));
    }
    let ys: Vec<Pt<S1>> = dom.witness_points().into_iter().filter(|&y| dom.is_localic(y)).collect();
    for &y in &ys {
        if !cod.is_localic(g(y)) {
            return input(format!("g sends {y:?} outside the localic part"));
        }
    }
    // g^-1(phi(a) & Y2) must be some phi(b) & Y1
    let mut pulled = Vec::new();
    for a in cod.elts() {
        let target: Vec<bool> = ys.iter().map(|&y| cod.in_phi(g(y), a)).collect();
        let matches: Vec<El<S1>> =
            dom.elts().into_iter().filter(|&b| ys.iter().zip(&target).all(|(&y, &t)| dom.in_phi(y, b) == t)).collect();
        match matches.as_slice() {
            [b] => pulled.push((a, *b)),
            [] => return input(format!("g is not continuous: preimage of the trace of {a:?} is not open")),
            _ => return input(format!("preimage of the trace of {a:?} is not determined by the sample")),
        }
    }
    let cod_pts = cod.witness_points();
    let mut out = BTreeMap::new();
    for x in dom.points() {
        // Y1 is dense and phi(b) open, so cl(phi(b) & Y1) = phi(b). The image
        // is the least point of the intersection of the phi(a) it lies in.
        let filter: Vec<bool> = pulled.iter().map(|&(_, b)| dom.in_phi(x, b)).collect();
        let above: Vec<Pt<S2>> = cod_pts
            .iter()
            .copied()
            .filter(|&z| pulled.iter().zip(&filter).all(|(&(a, _), &inside)| !inside || cod.in_phi(z, a)))
            .collect();
        let least = above.iter().copied().find(|&z| above.iter().all(|&c| cod.point_le(z, c)));
        let Some(z) = least else {
            return Err(Error::Construction(format!("filter of {x:?} has no least point")));
        };
        if let Some(&(a, _)) =
            pulled.iter().zip(&filter).find(|(&(a, _), &inside)| !inside && cod.in_phi(z, a)).map(|(p, _)| p)
        {
            return Err(Error::Construction(format!("image of {x:?} would lie in phi({a:?})")));
        }
        out.insert(x, z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dlattice::FinDLat;

    #[test]
    fn identity_dual_is_identity() {
        let d = Arc::new(FinDLat::chain(3));
        let f = dual_of_hom(&LatticeHom::identity(d)).unwrap();
        assert_eq!(f.point_map(), &[0, 1]);
        assert!(is_l_morphism(&f));
        let p = properness_profile(&f).unwrap();
        assert!(p.agree() && p.kernel_preimage);
    }

    #[test]
    fn inclusion_dual_collapses_onto_the_point() {
        let two = Arc::new(FinDLat::chain(2));
        let three = Arc::new(FinDLat::chain(3));
        let h = LatticeHom::new(two, three, vec![0, 2]).unwrap();
        let f = dual_of_hom(&h).unwrap();
        assert_eq!(f.dom_space().len(), 2);
        assert_eq!(f.cod_space().len(), 1);
        assert_eq!(f.point_map(), &[0, 0]);
    }

    #[test]
    fn non_hom_is_rejected() {
        let d = Arc::new(FinDLat::chain(3));
        let h = LatticeHom::new(d.clone(), d, vec![2, 2, 2]).unwrap();
        assert!(dual_of_hom(&h).is_err());
    }

    #[test]
    fn finite_extension_is_the_map_itself() {
        let x = FiniteSpace::from_poset(&crate::poset::FinPoset::chain(3)).unwrap();
        let y = FiniteSpace::from_poset(&crate::poset::FinPoset::chain(2)).unwrap();
        let g = |p: usize| if p == 0 { 0 } else { 1 };
        let f = extend_map(&x, &y, &g).unwrap();
        for p in 0..3 {
            assert_eq!(f[&p], g(p));
        }
        // a non-monotone map is not continuous for the upset topology
        let bad = |p: usize| if p == 0 { 1 } else { 0 };
        assert!(extend_map(&x, &y, &bad).is_err());
    }
}

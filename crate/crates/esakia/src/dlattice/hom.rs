use super::FinDLat;
use crate::bits::Mask;
use crate::error::{input, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomFlags {
    pub bounded_lattice_hom: bool,
    pub frame_hom: bool,
    pub proper: bool,
    pub closed: bool,
}

/// A map between lattice carriers, with its properties evaluated at construction.
#[derive(Clone, Debug)]
pub struct LatticeHom {
    pub dom: Arc<FinDLat>,
    pub cod: Arc<FinDLat>,
    map: Vec<usize>,
    flags: HomFlags,
}

impl LatticeHom {
    pub fn new(dom: Arc<FinDLat>, cod: Arc<FinDLat>, map: Vec<usize>) -> Result<LatticeHom> {
        if map.len() != dom.len() {
            return input(format!("map has {} entries for a domain of {}", map.len(), dom.len()));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod.len()) {
            return input(format!("map value {bad} outside codomain 0..{}", cod.len()));
        }
        let mut h = LatticeHom {
            dom,
            cod,
            map,
            flags: HomFlags { bounded_lattice_hom: false, frame_hom: false, proper: false, closed: false },
        };
        h.flags = h.validate();
        Ok(h)
    }

    pub fn identity(d: Arc<FinDLat>) -> LatticeHom {
        let map = (0..d.len()).collect();
        LatticeHom::new(d.clone(), d, map).expect("identity is in range")
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn flags(&self) -> HomFlags {
        self.flags
    }

    /// Recomputes every flag from its definition.
    pub fn validate(&self) -> HomFlags {
        let (d, c, h) = (&*self.dom, &*self.cod, &self.map);
        let n = d.len();
        let bounded_lattice_hom = h[d.bot()] == c.bot()
            && h[d.top()] == c.top()
            && (0..n).all(|a| {
                (0..n).all(|b| h[d.meet(a, b)] == c.meet(h[a], h[b]) && h[d.join(a, b)] == c.join(h[a], h[b]))
            });
        let meets = h[d.top()] == c.top() && (0..n).all(|a| (0..n).all(|b| h[d.meet(a, b)] == c.meet(h[a], h[b])));
        let frame_hom = meets && self.preserves_all_joins();
        let proper = frame_hom && self.preserves_way_below();
        let closed = frame_hom && self.closed_condition();
        HomFlags { bounded_lattice_hom, frame_hom, proper, closed }
    }

    /// `h(join S) = join h(S)` over every subset of a domain of up to 12 elements;
    /// above that, arbitrary finite joins reduce to the empty and binary ones.
    fn preserves_all_joins(&self) -> bool {
        let (d, c, h) = (&*self.dom, &*self.cod, &self.map);
        let n = d.len();
        if n <= 12 {
            (0u128..(1u128 << n)).all(|bits| {
                let s = Mask::from_bits(bits);
                h[d.big_join(s)] == c.big_join(s.iter().map(|x| h[x]).collect())
            })
        } else {
            h[d.bot()] == c.bot() && (0..n).all(|a| (0..n).all(|b| h[d.join(a, b)] == c.join(h[a], h[b])))
        }
    }

    fn preserves_way_below(&self) -> bool {
        let (Ok(wd), Ok(wc)) = (self.dom.way_below_table(), self.cod.way_below_table()) else {
            return false;
        };
        let n = self.dom.len();
        (0..n).all(|a| (0..n).all(|b| !wd.holds(a, b) || wc.holds(self.map[a], self.map[b])))
    }

    /// `r(b) = join { a : h(a) <= b }`.
    pub fn right_adjoint(&self) -> Vec<usize> {
        (0..self.cod.len())
            .map(|b| self.dom.big_join((0..self.dom.len()).filter(|&a| self.cod.le(self.map[a], b)).collect()))
            .collect()
    }

    fn closed_condition(&self) -> bool {
        let r = self.right_adjoint();
        let (d, c) = (&*self.dom, &*self.cod);
        (0..d.len()).all(|a| (0..c.len()).all(|b| d.le(r[c.join(self.map[a], b)], d.join(a, r[b]))))
    }

    /// `r(h(a) | b) <= a | r(b)` for all `a`, `b`.
    pub fn is_closed_hom(&self) -> bool {
        self.closed_condition()
    }

    pub fn compose(&self, next: &LatticeHom) -> Result<LatticeHom> {
        if *self.cod != *next.dom {
            return input("composition of homs with mismatched middle lattice");
        }
        let map = self.map.iter().map(|&a| next.map[a]).collect();
        LatticeHom::new(self.dom.clone(), next.cod.clone(), map)
    }

    pub fn to_file(&self) -> super::HomFile {
        super::HomFile { dom: self.dom.to_file(), cod: self.cod.to_file(), map: self.map.clone() }
    }
}

/// Output of [`enumerate_homs`].
#[derive(Clone, Debug)]
pub struct HomEnumeration {
    pub maps: Vec<Vec<usize>>,
    pub exhaustive: bool,
    pub seed: Option<u64>,
}

/// Bounded-lattice homs `dom -> cod`. Exhaustive when there are at most `budget`;
/// otherwise `budget` distinct homs drawn by seeded randomized search.
///
/// A hom is fixed by its values on join-irreducibles (each element is the join
/// of the irreducibles below it), so the search assigns those in a linear
/// extension order and prunes on monotonicity and pairwise meets.
pub fn enumerate_homs(dom: &FinDLat, cod: &FinDLat, budget: usize, seed: u64) -> HomEnumeration {
    let search = HomSearch::new(dom, cod);
    let mut found = Vec::new();
    let complete = search.run(
        &mut |m| {
            found.push(m);
            found.len() <= budget
        },
        None,
    );
    if complete {
        found.sort();
        return HomEnumeration { maps: found, exhaustive: true, seed: None };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = BTreeSet::new();
    let mut attempts = 0usize;
    while picked.len() < budget && attempts < budget.saturating_mul(20).max(1) {
        attempts += 1;
        let mut first = None;
        search.run(
            &mut |m| {
                first = Some(m);
                false
            },
            Some(&mut rng),
        );
        if let Some(m) = first {
            picked.insert(m);
        }
    }
    HomEnumeration { maps: picked.into_iter().collect(), exhaustive: false, seed: Some(seed) }
}

struct HomSearch<'a> {
    dom: &'a FinDLat,
    cod: &'a FinDLat,
    jis: Vec<usize>,
}

impl<'a> HomSearch<'a> {
    fn new(dom: &'a FinDLat, cod: &'a FinDLat) -> Self {
        let order = dom.order();
        let ji = dom.join_irreducibles();
        let jis = order.linear_extension().into_iter().filter(|&x| ji.contains(x)).collect();
        HomSearch { dom, cod, jis }
    }

    fn extend(&self, vals: &[usize]) -> Vec<usize> {
        (0..self.dom.len())
            .map(|a| {
                self.jis
                    .iter()
                    .zip(vals)
                    .filter(|(&j, _)| self.dom.le(j, a))
                    .fold(self.cod.bot(), |acc, (_, &v)| self.cod.join(acc, v))
            })
            .collect()
    }

    /// Depth-first search; `emit` returns false to stop. Returns true when the
    /// search space was fully explored.
    fn run(&self, emit: &mut dyn FnMut(Vec<usize>) -> bool, mut rng: Option<&mut ChaCha8Rng>) -> bool {
        let mut vals = Vec::with_capacity(self.jis.len());
        self.dfs(&mut vals, emit, &mut rng)
    }

    fn dfs(
        &self,
        vals: &mut Vec<usize>,
        emit: &mut dyn FnMut(Vec<usize>) -> bool,
        rng: &mut Option<&mut ChaCha8Rng>,
    ) -> bool {
        let k = vals.len();
        if k == self.jis.len() {
            let m = self.extend(vals);
            if m[self.dom.top()] != self.cod.top() {
                return true;
            }
            return emit(m);
        }
        let mut cands: Vec<usize> = (0..self.cod.len()).collect();
        if let Some(r) = rng.as_deref_mut() {
            cands.shuffle(r);
        }
        let j = self.jis[k];
        for v in cands {
            if !self.consistent(vals, j, v) {
                continue;
            }
            vals.push(v);
            let go_on = self.dfs(vals, emit, rng);
            vals.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    fn consistent(&self, vals: &[usize], j: usize, v: usize) -> bool {
        let (d, c) = (self.dom, self.cod);
        for (i, &k) in self.jis[..vals.len()].iter().enumerate() {
            if d.le(k, j) && !c.le(vals[i], v) {
                return false;
            }
            // h(j & k) must equal v & h(k); every irreducible below j & k is already assigned
            let m = d.meet(j, k);
            let hm = self.jis[..vals.len()]
                .iter()
                .zip(vals)
                .filter(|(&i2, _)| d.le(i2, m))
                .fold(c.bot(), |acc, (_, &w)| c.join(acc, w));
            if hm != c.meet(v, vals[i]) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinPoset;

    #[test]
    fn identity_flags() {
        let d = Arc::new(FinDLat::chain(3));
        let f = LatticeHom::identity(d).flags();
        assert!(f.bounded_lattice_hom && f.frame_hom && f.proper && f.closed);
    }

    #[test]
    fn constant_top_is_not_a_hom() {
        let d = Arc::new(FinDLat::chain(3));
        let h = LatticeHom::new(d.clone(), d, vec![2, 2, 2]).unwrap();
        assert!(!h.flags().bounded_lattice_hom);
    }

    #[test]
    fn out_of_range_map_is_rejected() {
        let d = Arc::new(FinDLat::chain(2));
        assert!(LatticeHom::new(d.clone(), d, vec![0, 5]).is_err());
    }

    #[test]
    fn adjunction_holds() {
        let dom = Arc::new(FinDLat::chain(2));
        let cod = Arc::new(FinDLat::chain(3));
        let h = LatticeHom::new(dom.clone(), cod.clone(), vec![0, 2]).unwrap();
        let r = h.right_adjoint();
        for a in 0..2 {
            for (b, &rb) in r.iter().enumerate() {
                assert_eq!(cod.le(h.apply(a), b), dom.le(a, rb));
            }
        }
    }

    /// Brute force over every map, as an oracle for the pruned search.
    fn all_homs_brute(dom: &FinDLat, cod: &FinDLat) -> Vec<Vec<usize>> {
        let (n, m) = (dom.len(), cod.len());
        let mut out = Vec::new();
        let total = (m as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let map: Vec<usize> = (0..n)
                .map(|_| {
                    let v = (c % m as u64) as usize;
                    c /= m as u64;
                    v
                })
                .collect();
            let h = LatticeHom::new(Arc::new(dom.clone()), Arc::new(cod.clone()), map.clone()).unwrap();
            if h.flags().bounded_lattice_hom {
                out.push(map);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn search_matches_brute_force() {
        let lats = [
            FinDLat::chain(2),
            FinDLat::chain(3),
            FinDLat::boolean(2),
            FinDLat::birkhoff(&FinPoset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()).unwrap(),
        ];
        for a in &lats {
            for b in &lats {
                let e = enumerate_homs(a, b, 10_000, 0);
                assert!(e.exhaustive);
                assert_eq!(e.maps, all_homs_brute(a, b));
            }
        }
    }

    #[test]
    fn budget_switches_to_sampling() {
        let a = FinDLat::boolean(3);
        let e = enumerate_homs(&a, &a, 2, 7);
        assert!(!e.exhaustive);
        assert_eq!(e.seed, Some(7));
        assert!(e.maps.len() <= 2 && !e.maps.is_empty());
        assert_eq!(enumerate_homs(&a, &a, 2, 7).maps, e.maps);
    }

    #[test]
    fn boolean_domain_homs_are_closed() {
        let b2 = Arc::new(FinDLat::boolean(2));
        for cod in [FinDLat::chain(3), FinDLat::boolean(2), FinDLat::chain(4)] {
            let cod = Arc::new(cod);
            for m in enumerate_homs(&b2, &cod, 10_000, 0).maps {
                let h = LatticeHom::new(b2.clone(), cod.clone(), m).unwrap();
                assert!(h.is_closed_hom());
            }
        }
    }
}

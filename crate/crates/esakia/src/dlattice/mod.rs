//! Finite bounded distributive lattices, read as frames.
//!
//! Every predicate here is evaluated from its definition on the tables. The
//! finite-case simplifications (`a << b` iff `a <= b`, regular iff Boolean, and so on)
//! are exposed separately through [`FinDLat::finite_collapse_violations`] so they
//! can be checked rather than assumed.

mod hom;
mod io;

pub use hom::{enumerate_homs, HomEnumeration, HomFlags, LatticeHom};
pub use io::{HomFile, LatticeFile};

use crate::bits::{Mask, MAX_ELEMS};
use crate::error::{input, Error, Result};
use crate::poset::FinPoset;
use serde::Serialize;

/// Largest join-irreducible count for which [`FinDLat::way_below`] scans covers.
pub const MAX_JOIN_IRREDUCIBLES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDLat {
    n: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    bot: usize,
    top: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterKind {
    Prime,
    ScottOpen,
    CompletelyPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Filter {
    pub elements: Mask,
    pub is_prime: bool,
    pub is_scott_open: bool,
    pub is_completely_prime: bool,
}

/// Frame-theoretic properties, each computed from its definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrameProps {
    pub spatial: bool,
    pub compact: bool,
    pub continuous: bool,
    pub stably_continuous: bool,
    pub stably_compact: bool,
    pub regular: bool,
    pub boolean_algebra: bool,
    pub degenerate: bool,
}

/// Precomputed `<<` table.
#[derive(Clone, Debug)]
pub struct WayBelow {
    n: usize,
    rel: Vec<bool>,
}

impl WayBelow {
    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.n + b]
    }
}

impl FinDLat {
    /// Builds from operation tables, checking the lattice axioms, the bounds and distributivity.
    pub fn from_tables(
        n: usize,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
        bot: usize,
        top: usize,
    ) -> Result<FinDLat> {
        if n == 0 {
            return input("a bounded lattice needs at least one element");
        }
        if n > MAX_ELEMS {
            return Err(Error::Capacity(format!("lattice of {n} elements exceeds {MAX_ELEMS}")));
        }
        let flat = |t: Vec<Vec<usize>>, name: &str| -> Result<Vec<usize>> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return input(format!("{name} table is not {n}x{n}"));
            }
            let v: Vec<usize> = t.into_iter().flatten().collect();
            if v.iter().any(|&x| x >= n) {
                return input(format!("{name} table has an entry outside 0..{n}"));
            }
            Ok(v)
        };
        if bot >= n || top >= n {
            return input("bot/top out of range");
        }
        let d = FinDLat { n, meet: flat(meet, "meet")?, join: flat(join, "join")?, bot, top };
        if let Some(msg) = d.axiom_violation() {
            return input(msg);
        }
        Ok(d)
    }

    fn axiom_violation(&self) -> Option<String> {
        let n = self.n;
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Some(format!("idempotence fails at {a}"));
            }
            if self.meet(a, self.bot) != self.bot || self.join(a, self.top) != self.top {
                return Some(format!("bounds fail at {a}"));
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return Some(format!("commutativity fails at ({a},{b})"));
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return Some(format!("absorption fails at ({a},{b})"));
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                        || self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                    {
                        return Some(format!("associativity fails at ({a},{b},{c})"));
                    }
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Some(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        None
    }

    /// Lattice of downsets of `p` under inclusion, with the downset behind each index.
    pub fn birkhoff_with_sets(p: &FinPoset) -> Result<(FinDLat, Vec<Mask>)> {
        let sets = p.downsets()?;
        if sets.len() > MAX_ELEMS {
            return Err(Error::Capacity(format!("{} downsets exceed the lattice cap {MAX_ELEMS}", sets.len())));
        }
        let pos: std::collections::HashMap<Mask, usize> = sets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let n = sets.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = pos[&sets[a].inter(sets[b])];
                join[a * n + b] = pos[&sets[a].union(sets[b])];
            }
        }
        let bot = pos[&Mask::EMPTY];
        let top = pos[&p.all()];
        Ok((FinDLat { n, meet, join, bot, top }, sets))
    }

    pub fn birkhoff(p: &FinPoset) -> Result<FinDLat> {
        Ok(Self::birkhoff_with_sets(p)?.0)
    }

    /// The `k`-element chain `0 < 1 < .. < k-1`.
    pub fn chain(k: usize) -> FinDLat {
        let n = k.max(1);
        let meet = (0..n * n).map(|i| (i / n).min(i % n)).collect();
        let join = (0..n * n).map(|i| (i / n).max(i % n)).collect();
        FinDLat { n, meet, join, bot: 0, top: n - 1 }
    }

    /// Boolean algebra on `k` atoms.
    pub fn boolean(k: usize) -> FinDLat {
        Self::birkhoff(&FinPoset::antichain(k)).expect("small boolean algebra")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn all(&self) -> Mask {
        Mask::full(self.n)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        self.meet.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn order(&self) -> FinPoset {
        let n = self.n;
        FinPoset::from_table(n, (0..n * n).map(|k| self.le(k / n, k % n)).collect())
            .expect("lattice order is a partial order")
    }

    pub fn check_elt(&self, a: usize) -> Result<()> {
        if a < self.n {
            Ok(())
        } else {
            input(format!("element {a} outside 0..{}", self.n))
        }
    }

    /// Join of an arbitrary subset; the empty join is `bot`.
    pub fn big_join(&self, s: Mask) -> usize {
        s.iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn big_meet(&self, s: Mask) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn up(&self, a: usize) -> Mask {
        (0..self.n).filter(|&x| self.le(a, x)).collect()
    }

    pub fn down(&self, a: usize) -> Mask {
        (0..self.n).filter(|&x| self.le(x, a)).collect()
    }

    /// `join { x : a & x <= b }`.
    pub fn heyting(&self, a: usize, b: usize) -> usize {
        self.big_join((0..self.n).filter(|&x| self.le(self.meet(a, x), b)).collect())
    }

    pub fn pseudocomplement(&self, a: usize) -> usize {
        self.heyting(a, self.bot)
    }

    pub fn is_complemented(&self, a: usize) -> bool {
        (0..self.n).any(|x| self.meet(a, x) == self.bot && self.join(a, x) == self.top)
    }

    /// Non-bottom elements that are not the join of two strictly smaller ones.
    pub fn join_irreducibles(&self) -> Mask {
        (0..self.n)
            .filter(|&j| {
                j != self.bot && !(0..self.n).any(|x| (0..self.n).any(|y| x != j && y != j && self.join(x, y) == j))
            })
            .collect()
    }

    /// Join-infinite distributivity `a & join S = join { a & s }`, over every subset.
    /// Refuses lattices above 16 elements.
    pub fn join_infinite_distributive(&self) -> Result<bool> {
        if self.n > 16 {
            return Err(Error::Capacity("subset scan limited to 16 elements".into()));
        }
        for bits in 0u128..(1u128 << self.n) {
            let s = Mask::from_bits(bits);
            let js = self.big_join(s);
            for a in 0..self.n {
                let rhs = self.big_join(s.iter().map(|x| self.meet(a, x)).collect());
                if self.meet(a, js) != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Definitional `<<` table: `a << b` iff every cover `S` of `b` has a finite
    /// subcover of `a`. Covers range over sets of join-irreducibles, which lose
    /// nothing because each join is the join of the irreducibles below it. Every
    /// such `S` is finite, so `T = S` is always an admissible subcover.
    pub fn way_below_table(&self) -> Result<WayBelow> {
        let jis: Vec<usize> = self.join_irreducibles().to_vec();
        if jis.len() > MAX_JOIN_IRREDUCIBLES {
            return Err(Error::Capacity(format!("{} join-irreducibles", jis.len())));
        }
        let mut cover_joins = Vec::with_capacity(1 << jis.len());
        for bits in 0u64..(1u64 << jis.len()) {
            let s: Mask = jis.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &j)| j).collect();
            cover_joins.push(self.big_join(s));
        }
        let n = self.n;
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = cover_joins.iter().all(|&js| !self.le(b, js) || self.le(a, js));
            }
        }
        Ok(WayBelow { n, rel })
    }

    pub fn way_below(&self, a: usize, b: usize) -> bool {
        self.way_below_table().expect("within cover-scan cap").holds(a, b)
    }

    /// `a* | b = top`.
    pub fn well_inside(&self, a: usize, b: usize) -> bool {
        self.join(self.pseudocomplement(a), b) == self.top
    }

    fn filter_record(&self, elements: Mask) -> Filter {
        let proper = !elements.contains(self.bot);
        let is_prime = proper
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| !elements.contains(self.join(x, y)) || elements.contains(x) || elements.contains(y))
            });
        // The largest S missing the filter is its complement; S ranges below it.
        let outside = self.all().minus(elements);
        let is_completely_prime = !elements.contains(self.big_join(outside));
        Filter {
            elements,
            is_prime,
            // every S is finite here, so S itself is the finite witness T
            is_scott_open: true,
            is_completely_prime,
        }
    }

    /// Filters of the requested kind. Finite filters are principal, so the
    /// candidates are the sets `up a`; each is checked to be a filter anyway.
    pub fn filters(&self, kind: FilterKind) -> Vec<Filter> {
        let mut out = Vec::new();
        for a in 0..self.n {
            let f = self.up(a);
            let meet_closed = f.iter().all(|x| f.iter().all(|y| f.contains(self.meet(x, y))));
            debug_assert!(meet_closed);
            if !meet_closed {
                continue;
            }
            let rec = self.filter_record(f);
            let keep = match kind {
                FilterKind::Prime => rec.is_prime,
                FilterKind::ScottOpen => rec.is_scott_open,
                FilterKind::CompletelyPrime => rec.is_completely_prime,
            };
            if keep {
                out.push(rec);
            }
        }
        out.sort_by_key(|f| f.elements.to_vec());
        out
    }

    pub fn classify_frame(&self) -> FrameProps {
        let n = self.n;
        let wb = self.way_below_table().expect("within cover-scan cap");
        let cps = self.filters(FilterKind::CompletelyPrime);
        let spatial = (0..n).all(|a| {
            (0..n).all(|b| self.le(a, b) || cps.iter().any(|f| f.elements.contains(a) && !f.elements.contains(b)))
        });
        let compact = wb.holds(self.top, self.top);
        let continuous = (0..n).all(|a| self.big_join((0..n).filter(|&b| wb.holds(b, a)).collect()) == a);
        let stable = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(wb.holds(a, b) && wb.holds(a, c)) || wb.holds(a, self.meet(b, c))))
        });
        let regular = (0..n).all(|a| self.big_join((0..n).filter(|&b| self.well_inside(b, a)).collect()) == a);
        let stably_continuous = continuous && stable;
        FrameProps {
            spatial,
            compact,
            continuous,
            stably_continuous,
            stably_compact: compact && stably_continuous,
            regular,
            boolean_algebra: (0..n).all(|a| self.is_complemented(a)),
            degenerate: n == 1,
        }
    }

    /// Checks the collapses every finite frame must exhibit; returns the broken ones.
    pub fn finite_collapse_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let wb = match self.way_below_table() {
            Ok(w) => w,
            Err(e) => return vec![e.to_string()],
        };
        for a in 0..self.n {
            for b in 0..self.n {
                if wb.holds(a, b) != self.le(a, b) {
                    out.push(format!("way_below({a},{b}) differs from <="));
                }
            }
        }
        let p = self.classify_frame();
        if !(p.spatial && p.continuous && p.stably_compact) {
            out.push(format!("finite frame not spatial/continuous/stably compact: {p:?}"));
        }
        if p.regular != p.boolean_algebra {
            out.push(format!("regular={} but boolean={}", p.regular, p.boolean_algebra));
        }
        out
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile::Tables {
            n: self.n,
            meet: self.meet_table(),
            join: self.join_table(),
            bot: self.bot,
            top: self.top,
        }
    }

    /// Hasse diagram of the lattice order.
    pub fn to_dot(&self) -> String {
        self.order().to_dot(&|x| x.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vee_lattice() -> FinDLat {
        FinDLat::birkhoff(&FinPoset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()).unwrap()
    }

    #[test]
    fn birkhoff_sizes() {
        assert_eq!(FinDLat::birkhoff(&FinPoset::antichain(1)).unwrap().len(), 2);
        assert_eq!(FinDLat::boolean(3).len(), 8);
        assert_eq!(vee_lattice().len(), 5);
        assert_eq!(FinDLat::birkhoff(&FinPoset::antichain(0)).unwrap().len(), 1);
    }

    #[test]
    fn table_validation_rejects_non_distributive() {
        // diamond M3: 0 < a,b,c < 4
        let n = 5;
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![4; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (m, j) = match (a, b) {
                    _ if a == b => (a, a),
                    (0, x) | (x, 0) => (0, x),
                    (4, x) | (x, 4) => (x, 4),
                    _ => (0, 4),
                };
                meet[a][b] = m;
                join[a][b] = j;
            }
        }
        let err = FinDLat::from_tables(n, meet, join, 0, 4).unwrap_err();
        assert!(err.to_string().contains("distributivity"));
    }

    #[test]
    fn heyting_examples() {
        let c = FinDLat::chain(3);
        for b in 0..3 {
            assert_eq!(c.heyting(c.bot(), b), c.top());
        }
        assert_eq!(c.pseudocomplement(1), 0);
        let b3 = FinDLat::boolean(3);
        for a in 0..8 {
            let pc = b3.pseudocomplement(a);
            assert_eq!(b3.meet(a, pc), b3.bot());
            assert_eq!(b3.join(a, pc), b3.top());
        }
    }

    #[test]
    fn big_join_examples() {
        let v = vee_lattice();
        assert_eq!(v.big_join(Mask::EMPTY), v.bot());
        assert_eq!(v.big_join(Mask::single(v.top())), v.top());
        let coatoms: Mask = (0..v.len())
            .filter(|&x| x != v.top() && (0..v.len()).all(|y| y == v.top() || y == x || !v.le(x, y)))
            .collect();
        assert_eq!(coatoms.len(), 2);
        assert_eq!(v.big_join(coatoms), v.top());
    }

    #[test]
    fn filter_examples() {
        let two = FinDLat::chain(2);
        let primes = two.filters(FilterKind::Prime);
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].elements, Mask::single(1));

        let c = FinDLat::chain(3);
        let primes: Vec<Vec<usize>> = c.filters(FilterKind::Prime).iter().map(|f| f.elements.to_vec()).collect();
        assert_eq!(primes, vec![vec![1, 2], vec![2]]);

        let b2 = FinDLat::boolean(2);
        let cps = b2.filters(FilterKind::CompletelyPrime);
        assert_eq!(cps.len(), 2);
        for f in cps {
            assert_eq!(f.elements.len(), 2);
        }
    }

    #[test]
    fn relations_on_small_frames() {
        let c = FinDLat::chain(3);
        assert!(c.way_below(0, 0));
        assert!(c.way_below(1, 2));
        assert!(!c.well_inside(1, 1));
        for b in 0..3 {
            assert!(c.well_inside(0, b));
        }
        let b3 = FinDLat::boolean(3);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(b3.well_inside(a, b), b3.le(a, b));
            }
        }
    }

    #[test]
    fn classification_examples() {
        let b3 = FinDLat::boolean(3).classify_frame();
        assert!(b3.spatial && b3.compact && b3.continuous && b3.stably_compact);
        assert!(b3.regular && b3.boolean_algebra);
        let c3 = FinDLat::chain(3).classify_frame();
        assert!(!c3.regular && !c3.boolean_algebra);
        assert!(c3.spatial && c3.compact && c3.continuous && c3.stably_continuous && c3.stably_compact);
        let two = FinDLat::chain(2).classify_frame();
        assert!(two.regular && two.boolean_algebra && two.compact && !two.degenerate);
        assert!(FinDLat::chain(1).classify_frame().degenerate);
    }

    #[test]
    fn join_infinite_distributivity() {
        assert!(vee_lattice().join_infinite_distributive().unwrap());
        assert!(FinDLat::boolean(3).join_infinite_distributive().unwrap());
    }
}

//! Finite posets over dense indices `0..n`.
//!
//! The order is stored as a flat boolean table, `le[a * n + b]` meaning `a <= b`.

use crate::bits::{Mask, MAX_ELEMS};
use crate::error::{input, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Default refusal threshold for subset scans (`2^n` candidates).
pub const DEFAULT_SUBSET_CAP: u64 = 1 << 20;
/// Largest size accepted by [`enumerate_posets`].
pub const ENUMERATION_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extreme {
    Min,
    Max,
}

/// A broken order axiom, with the indices that break it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Reflexivity(usize),
    Antisymmetry(usize, usize),
    Transitivity(usize, usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinPoset {
    n: usize,
    le: Vec<bool>,
}

/// Lists every axiom violation of an `n x n` order table. Empty means valid.
pub fn validate_poset(n: usize, le: &[bool]) -> Vec<Violation> {
    let mut out = Vec::new();
    if le.len() != n * n {
        return out;
    }
    let at = |a: usize, b: usize| le[a * n + b];
    for a in 0..n {
        if !at(a, a) {
            out.push(Violation::Reflexivity(a));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if at(a, b) && at(b, a) {
                out.push(Violation::Antisymmetry(a, b));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !at(a, b) {
                continue;
            }
            for c in 0..n {
                if at(b, c) && !at(a, c) {
                    out.push(Violation::Transitivity(a, b, c));
                }
            }
        }
    }
    out
}

impl FinPoset {
    /// Builds from a full order table, rejecting anything that is not a partial order.
    pub fn from_table(n: usize, le: Vec<bool>) -> Result<FinPoset> {
        if n > MAX_ELEMS {
            return Err(Error::Capacity(format!("poset of {n} elements exceeds {MAX_ELEMS}")));
        }
        if le.len() != n * n {
            return input(format!("order table has {} entries, expected {}", le.len(), n * n));
        }
        let bad = validate_poset(n, &le);
        if let Some(v) = bad.first() {
            return input(format!("not a partial order: {v:?}"));
        }
        Ok(FinPoset { n, le })
    }

    /// Builds from Hasse-diagram pairs `(lower, upper)` by reflexive-transitive closure.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<FinPoset> {
        if n > MAX_ELEMS {
            return Err(Error::Capacity(format!("poset of {n} elements exceeds {MAX_ELEMS}")));
        }
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return input(format!("cover ({a},{b}) out of range for n={n}"));
            }
            le[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        FinPoset::from_table(n, le).map_err(|_| Error::Input("cover relation has a cycle".into()))
    }

    pub fn chain(n: usize) -> FinPoset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinPoset::from_covers(n, &covers).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> FinPoset {
        FinPoset::from_covers(n, &[]).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn table(&self) -> &[bool] {
        &self.le
    }

    pub fn all(&self) -> Mask {
        Mask::full(self.n)
    }

    /// Order-dual poset.
    pub fn dual(&self) -> FinPoset {
        let n = self.n;
        let le = (0..n * n).map(|k| self.le(k % n, k / n)).collect();
        FinPoset { n, le }
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn check_range(&self, s: Mask) -> Result<()> {
        if s.is_subset(self.all()) {
            Ok(())
        } else {
            input(format!("set {s:?} has indices outside 0..{}", self.n))
        }
    }

    pub fn up(&self, s: Mask) -> Mask {
        (0..self.n).filter(|&x| s.iter().any(|a| self.le(a, x))).collect()
    }

    pub fn down(&self, s: Mask) -> Mask {
        (0..self.n).filter(|&x| s.iter().any(|a| self.le(x, a))).collect()
    }

    /// `up S` or `down S`.
    pub fn closure(&self, s: Mask, direction: Direction) -> Result<Mask> {
        self.check_range(s)?;
        Ok(match direction {
            Direction::Up => self.up(s),
            Direction::Down => self.down(s),
        })
    }

    pub fn is_upset(&self, s: Mask) -> bool {
        self.up(s) == s
    }

    pub fn is_downset(&self, s: Mask) -> bool {
        self.down(s) == s
    }

    pub fn minimal(&self, f: Mask) -> Mask {
        f.iter().filter(|&x| !f.iter().any(|y| self.lt(y, x))).collect()
    }

    pub fn maximal(&self, f: Mask) -> Mask {
        f.iter().filter(|&x| !f.iter().any(|y| self.lt(x, y))).collect()
    }

    pub fn extremes(&self, f: Mask, which: Extreme) -> Result<Mask> {
        self.check_range(f)?;
        Ok(match which {
            Extreme::Min => self.minimal(f),
            Extreme::Max => self.maximal(f),
        })
    }

    /// All downsets, sorted lexicographically by their element lists.
    pub fn downsets(&self) -> Result<Vec<Mask>> {
        self.downsets_capped(DEFAULT_SUBSET_CAP)
    }

    pub fn downsets_capped(&self, cap: u64) -> Result<Vec<Mask>> {
        if self.n >= 64 || (1u64 << self.n) > cap {
            return Err(Error::Capacity(format!("2^{} subsets exceed the scan cap {cap}", self.n)));
        }
        // Extend downsets one element at a time in a linear-extension order:
        // adding x is legal once everything strictly below x is present.
        let order = self.linear_extension();
        let mut out = vec![Mask::EMPTY];
        for &x in &order {
            let below = self.down(Mask::single(x)).minus(Mask::single(x));
            let extra: Vec<Mask> = out.iter().filter(|d| below.is_subset(**d)).map(|d| d.with(x)).collect();
            out.extend(extra);
        }
        out.sort_by_key(|m| m.to_vec());
        Ok(out)
    }

    pub fn upsets(&self) -> Result<Vec<Mask>> {
        self.dual().downsets()
    }

    /// Some linear extension (a topological sort).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.n).collect();
        idx.sort_by_key(|&x| (0..self.n).filter(|&y| self.le(y, x)).count());
        idx
    }

    /// Is `map` (indexed by element of `self`) monotone into `other`?
    pub fn is_monotone(&self, other: &FinPoset, map: &[usize]) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| !self.le(a, b) || other.le(map[a], map[b])))
    }

    /// Canonical isomorphism key: the lexicographically least strict-order
    /// bit string over all relabellings.
    pub fn canonical_key(&self) -> u128 {
        let n = self.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u128::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut key = 0u128;
            for i in 0..n {
                for j in 0..n {
                    key <<= 1;
                    if i != j && self.le(p[i], p[j]) {
                        key |= 1;
                    }
                }
            }
            best = best.min(key);
        });
        best
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile { n: self.n, covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect() }
    }

    /// Hasse diagram in Graphviz syntax, drawn bottom-up.
    pub fn to_dot(&self, labels: &dyn Fn(usize) -> String) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
        for x in 0..self.n {
            let _ = writeln!(s, "  n{x} [label=\"{}\"];", labels(x));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b} [arrowhead=none];");
        }
        s.push_str("}\n");
        s
    }
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// One representative per isomorphism class of `n`-element posets.
///
/// Candidates are relations contained in the strict order of `0 < 1 < .. < n-1`;
/// every poset has such a labelling (a linear extension), so all classes appear.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinPoset>> {
    if n > ENUMERATION_CAP {
        return Err(Error::Capacity(format!("enumeration capped at {ENUMERATION_CAP}, asked {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for bits in 0u64..(1u64 << pairs.len()) {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                le[i * n + j] = true;
            }
        }
        if !validate_poset(n, &le).is_empty() {
            continue;
        }
        let p = FinPoset { n, le };
        seen.entry(p.canonical_key()).or_insert(p);
    }
    Ok(seen.into_values().collect())
}

/// Poset file format: a Hasse diagram.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetFile {
    pub n: usize,
    #[serde(default)]
    pub covers: Vec<[usize; 2]>,
}

impl PosetFile {
    pub fn build(&self) -> Result<FinPoset> {
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|c| (c[0], c[1])).collect();
        FinPoset::from_covers(self.n, &covers)
    }
}

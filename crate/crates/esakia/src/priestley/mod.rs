//! Priestley spaces of frames, behind one interface with two backends.
//!
//! Clopen upsets are always addressed by lattice index: `a` stands for `phi(a)`.
//! Open upsets are unions `U phi(I)` over an ideal `I` and are addressed by an
//! [`OpenUpset`] handle; their closure is `phi(join I)`.
//!
//! Quantifiers in the generic operators range over the backend's samples:
//! universal statements over [`PriestleySpace::elts`] / [`PriestleySpace::points`],
//! existential searches over the larger witness pools. On the finite backend the
//! samples are the whole space.

mod finite;
mod morphism;

pub use finite::{clopup_lattice, dual_space, unit_checks, FiniteSpace, UnitReport};
pub use morphism::{
    dual_of_hom, dual_of_hom_between, extend_map, is_l_morphism, properness_profile, restrict_morphism, FiniteMorphism,
    LocalicGraph, MorphismFile, ProperProfile, SpaceMap,
};

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt::Debug;
use std::hash::Hash;

/// An open upset presented by an ideal of indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OpenUpset<E> {
    /// `phi(a)` itself: the ideal `down a`.
    Principal(E),
    /// The union of `phi(c)` over `c < a`: the ideal of elements strictly below `a`.
    Below(E),
}

pub trait PriestleySpace {
    type Elt: Copy + Eq + Ord + Hash + Debug + Serialize;
    type Point: Copy + Eq + Ord + Hash + Debug + Serialize;

    fn describe(&self) -> String;
    fn is_finite(&self) -> bool;

    /// Indices quantified over universally.
    fn elts(&self) -> Vec<Self::Elt>;
    /// Indices searched for existential witnesses; contains `elts`.
    fn witness_elts(&self) -> Vec<Self::Elt>;
    fn bot(&self) -> Self::Elt;
    fn top(&self) -> Self::Elt;
    fn elt_le(&self, a: Self::Elt, b: Self::Elt) -> bool;
    fn meet(&self, a: Self::Elt, b: Self::Elt) -> Self::Elt;
    fn join(&self, a: Self::Elt, b: Self::Elt) -> Self::Elt;

    fn points(&self) -> Vec<Self::Point>;
    fn witness_points(&self) -> Vec<Self::Point>;
    fn point_le(&self, p: Self::Point, q: Self::Point) -> bool;
    /// `p in phi(a)`.
    fn in_phi(&self, p: Self::Point, a: Self::Elt) -> bool;

    /// Representable open upsets.
    fn open_upsets(&self) -> Vec<OpenUpset<Self::Elt>>;
    /// `phi(a)` is contained in the open upset, i.e. `a` lies in its ideal.
    fn clopen_inside(&self, w: OpenUpset<Self::Elt>, a: Self::Elt) -> bool;
    fn open_contains(&self, w: OpenUpset<Self::Elt>, p: Self::Point) -> bool;
    /// Closure of an open upset, as an index.
    fn closure(&self, w: OpenUpset<Self::Elt>) -> Self::Elt;
    /// Intersection of two open upsets: the meet of their ideals.
    fn open_meet(&self, u: OpenUpset<Self::Elt>, w: OpenUpset<Self::Elt>) -> OpenUpset<Self::Elt>;

    /// `p` lies in the localic part: `down p` is clopen.
    fn is_localic(&self, p: Self::Point) -> bool;
    /// `up p` as a clopen upset.
    fn up_of_point(&self, p: Self::Point) -> Self::Elt;
    /// Minimal points of `phi(a)`.
    fn min_of(&self, a: Self::Elt) -> Vec<Self::Point>;

    /// `ker phi(a)` as an open upset, computed the backend's own way.
    fn ker_open(&self, a: Self::Elt) -> OpenUpset<Self::Elt>;
    /// `reg phi(a)` as an open upset, computed the backend's own way.
    fn reg_open(&self, a: Self::Elt) -> OpenUpset<Self::Elt>;

    /// [`classify_space`], cached where the backend keeps one.
    fn props(&self) -> SpaceProps
    where
        Self: Sized,
    {
        classify_space(self)
    }
}

/// `phi(v) << phi(u)`: whenever `phi(u)` lies in the closure of an open upset `W`,
/// `phi(v)` already lies in `W`.
pub fn clopen_way_below<S: PriestleySpace>(s: &S, v: S::Elt, u: S::Elt) -> bool {
    s.open_upsets().into_iter().all(|w| !s.elt_le(u, s.closure(w)) || s.clopen_inside(w, v))
}

/// `phi(v)` well inside `phi(u)`: `down phi(v)` is contained in `phi(u)`.
pub fn clopen_well_inside<S: PriestleySpace>(s: &S, v: S::Elt, u: S::Elt) -> bool {
    let pts = s.witness_points();
    pts.iter().filter(|&&x| s.in_phi(x, v)).all(|&x| pts.iter().filter(|&&y| s.point_le(y, x)).all(|&y| s.in_phi(y, u)))
}

/// `p in ker phi(a)`, straight from the definition of the kernel.
pub fn ker_contains<S: PriestleySpace>(s: &S, a: S::Elt, p: S::Point) -> bool {
    s.witness_elts().into_iter().any(|b| s.in_phi(p, b) && clopen_way_below(s, b, a))
}

/// `p in reg phi(a)` via `X \ down up (X \ phi(a))`.
pub fn reg_contains<S: PriestleySpace>(s: &S, a: S::Elt, p: S::Point) -> bool {
    let pts = s.witness_points();
    !pts.iter().any(|&q| s.point_le(p, q) && pts.iter().any(|&r| s.point_le(r, q) && !s.in_phi(r, a)))
}

/// `p in reg phi(a)` as the union of clopen upsets well inside `phi(a)`.
pub fn reg_contains_by_union<S: PriestleySpace>(s: &S, a: S::Elt, p: S::Point) -> bool {
    s.witness_elts().into_iter().any(|b| s.in_phi(p, b) && clopen_well_inside(s, b, a))
}

/// `p in up (phi(a) & Y)`.
pub fn up_localic_trace<S: PriestleySpace>(s: &S, a: S::Elt, p: S::Point) -> bool {
    s.witness_points().into_iter().any(|q| s.point_le(q, p) && s.in_phi(q, a) && s.is_localic(q))
}

/// `p in down up (phi(a) & Y)`.
pub fn down_up_localic_trace<S: PriestleySpace>(s: &S, a: S::Elt, p: S::Point) -> bool {
    s.witness_points().into_iter().any(|q| s.point_le(p, q) && up_localic_trace(s, a, q))
}

/// Both readings of "`phi(a)` is a Scott upset".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScottVerdict {
    /// Minimal points are localic.
    pub by_minimum: bool,
    /// `phi(a)` inside `cl W` forces `phi(a)` inside `W`, for open upsets `W`.
    pub by_closure: bool,
}

pub fn scott_verdict<S: PriestleySpace>(s: &S, a: S::Elt) -> ScottVerdict {
    ScottVerdict {
        by_minimum: s.min_of(a).into_iter().all(|p| s.is_localic(p)),
        by_closure: s.open_upsets().into_iter().all(|w| !s.elt_le(a, s.closure(w)) || s.clopen_inside(w, a)),
    }
}

/// Closed upsets here are clopen and addressed by index; see [`scott_verdict`].
pub fn is_scott_upset<S: PriestleySpace>(s: &S, a: S::Elt) -> Result<bool> {
    let v = scott_verdict(s, a);
    if v.by_minimum != v.by_closure {
        return Err(Error::Precondition(format!("Scott characterizations disagree on {a:?} in {}", s.describe())));
    }
    Ok(v.by_minimum)
}

/// `ker phi(a)` is dense in `phi(a)`.
pub fn is_packed<S: PriestleySpace>(s: &S, a: S::Elt) -> bool {
    s.closure(s.ker_open(a)) == a
}

/// The four regularity conditions on `U = phi(a)`:
/// 1. `U & Y` inside `reg U`;
/// 2. each `y` in `U & Y` has disjoint clopen upsets `V` containing `y` and `W` containing `X \ U`;
/// 3. `down up (U & Y)` inside `U`;
/// 4. `reg U` dense in `U`.
pub fn regularity_conditions<S: PriestleySpace>(s: &S, a: S::Elt) -> [bool; 4] {
    let pts = s.points();
    let wpts = s.witness_points();
    let trace: Vec<S::Point> = pts.iter().copied().filter(|&p| s.in_phi(p, a) && s.is_localic(p)).collect();
    let c1 = trace.iter().all(|&y| reg_contains(s, a, y));
    let welts = s.witness_elts();
    let c2 = trace.iter().all(|&y| {
        welts
            .iter()
            .any(|&v| s.in_phi(y, v) && welts.iter().any(|&w| s.meet(v, w) == s.bot() && s.join(a, w) == s.top()))
    });
    let c3 = wpts.iter().all(|&p| !down_up_localic_trace(s, a, p) || s.in_phi(p, a));
    let c4 = s.closure(s.reg_open(a)) == a;
    [c1, c2, c3, c4]
}

/// Position of a Priestley space in the hierarchy of space classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[allow(non_snake_case)]
pub struct SpaceProps {
    pub is_SL: bool,
    pub is_CL: bool,
    pub is_kernel_stable: bool,
    pub is_scott_stable: bool,
    pub is_StCL: bool,
    pub is_L_compact: bool,
    pub is_StKL: bool,
    pub is_L_regular: bool,
    pub is_KRL: bool,
}

pub fn classify_space<S: PriestleySpace>(s: &S) -> SpaceProps {
    let elts = s.elts();
    let wpts = s.witness_points();
    let is_sl = elts.iter().all(|&a| {
        elts.iter()
            .all(|&b| s.elt_le(a, b) || wpts.iter().any(|&p| s.is_localic(p) && s.in_phi(p, a) && !s.in_phi(p, b)))
    });
    let is_cl = elts.iter().all(|&a| is_packed(s, a));
    let pts = s.points();
    let is_kernel_stable = elts.iter().all(|&a| {
        elts.iter().all(|&b| {
            pts.iter().all(|&p| (ker_contains(s, a, p) && ker_contains(s, b, p)) == ker_contains(s, s.meet(a, b), p))
        })
    });
    let scott: Vec<S::Elt> = elts.iter().copied().filter(|&a| scott_verdict(s, a).by_minimum).collect();
    let is_scott_stable = scott.iter().all(|&a| scott.iter().all(|&b| scott_verdict(s, s.meet(a, b)).by_minimum));
    let is_l_compact = scott_verdict(s, s.top()).by_minimum;
    let is_l_regular = elts.iter().all(|&a| s.closure(s.reg_open(a)) == a);
    let is_stcl = is_cl && is_scott_stable;
    SpaceProps {
        is_SL: is_sl,
        is_CL: is_cl,
        is_kernel_stable,
        is_scott_stable,
        is_StCL: is_stcl,
        is_L_compact: is_l_compact,
        is_StKL: is_stcl && is_l_compact,
        is_L_regular: is_l_regular,
        is_KRL: is_l_compact && is_l_regular,
    }
}

//! Check procedures behind the registry.

use super::corpus::{HomCase, Instance};
use super::Verdict;
use crate::bits::Mask;
use crate::chainfrm::{chain_is_proper, chain_way_below, truncate, ChainSpace};
use crate::dlattice::{FilterKind, FrameProps};
use crate::priestley::{
    clopen_way_below, extend_map, is_l_morphism, ker_contains, reg_contains, reg_contains_by_union,
    regularity_conditions, restrict_morphism, scott_verdict, unit_checks, up_localic_trace, FiniteMorphism, OpenUpset,
    PriestleySpace, ProperProfile, SpaceMap, SpaceProps,
};
use crate::spaces::{
    hofmann_mislove, is_proper_localic, is_proper_map, point_homeomorphism, pt_space, FinTopSpace, TopProps,
};
use crate::Result;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Verdict::Fail(format!($($fmt)+));
        }
    };
}

/// Skip unless the hypothesis holds.
macro_rules! assume {
    ($cond:expr) => {
        if !$cond {
            return Verdict::Skip;
        }
    };
}

/// A space together with what is known about its frame.
pub(super) struct View<'a, S: PriestleySpace> {
    pub s: &'a S,
    pub frame: FrameProps,
    pub props: SpaceProps,
    pub local: TopProps,
    pub wb: &'a dyn Fn(S::Elt, S::Elt) -> bool,
}

/// Runs a generic structural law on lattice and chain instances.
macro_rules! structural {
    ($($wrapper:ident => $law:ident),* $(,)?) => {
        $(
            pub(super) fn $wrapper(inst: &Instance) -> Verdict {
                match inst {
                    Instance::Lattice(c) => {
                        let wb = |a: usize, b: usize| c.wb.holds(a, b);
                        $law(&View { s: &*c.space, frame: c.frame, props: c.space.props(), local: c.local, wb: &wb })
                    }
                    Instance::Chain(c) => {
                        let shape = c.shape().clone();
                        let wb = move |a, b| chain_way_below(&shape, a, b);
                        $law(&View { s: &c.space, frame: c.frame, props: c.space.props(), local: c.local, wb: &wb })
                    }
                    _ => Verdict::Skip,
                }
            }
        )*
    };
}

structural! {
    phi_join => phi_join_law,
    scott_char => scott_char_law,
    spatial_eq => spatial_eq_law,
    y_sober => y_sober_law,
    cl_trace => cl_trace_law,
    cl_meet => cl_meet_law,
    ker1 => ker1_law,
    ker2 => ker2_law,
    ker3 => ker3_law,
    ker4 => ker4_law,
    ker5 => ker5_law,
    ker6 => ker6_law,
    packed => packed_law,
    interp => interp_law,
    sandwich => sandwich_law,
    cl_spatial => cl_spatial_law,
    hm => hm_law,
    cl_lc => cl_lc_law,
    stab_ker => stab_ker_law,
    kstab_sstab => kstab_sstab_law,
    stcl => stcl_law,
    stcl_sp => stcl_sp_law,
    cpt_elt => cpt_elt_law,
    lcpt_y => lcpt_y_law,
    stk_sp => stk_sp_law,
    reg_formula => reg_formula_law,
    reg_eq => reg_eq_law,
    reg_frm => reg_frm_law,
    krl => krl_law,
    krl_sp => krl_sp_law,
    krl_spatial => krl_spatial_law,
    regker => regker_law,
    biset => biset_law,
    miny => miny_law,
    krl_stkl => krl_stkl_law,
    eqmin => eqmin_law,
    priestley_basics => priestley_basics_law,
}

fn localic_witnesses<S: PriestleySpace>(s: &S) -> Vec<S::Point> {
    s.witness_points().into_iter().filter(|&p| s.is_localic(p)).collect()
}

fn phi_inside_open<S: PriestleySpace>(s: &S, a: S::Elt, w: OpenUpset<S::Elt>) -> bool {
    s.witness_points().into_iter().all(|p| !s.in_phi(p, a) || s.open_contains(w, p))
}

fn phi_join_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    let wp = s.witness_points();
    let elts = s.elts();
    for w in s.open_upsets() {
        let c = s.closure(w);
        for &p in &wp {
            ensure!(!s.open_contains(w, p) || s.in_phi(p, c), "{p:?} in {w:?} but outside phi({c:?})");
        }
        for &m in &elts {
            let covers = wp.iter().all(|&p| !s.open_contains(w, p) || s.in_phi(p, m));
            ensure!(!covers || s.elt_le(c, m), "phi({m:?}) contains {w:?} but not phi({c:?})");
        }
    }
    for &a in &elts {
        for &b in &elts {
            for &p in &wp {
                ensure!(
                    s.in_phi(p, s.join(a, b)) == (s.in_phi(p, a) || s.in_phi(p, b)),
                    "phi({a:?} v {b:?}) is not the union at {p:?}"
                );
            }
        }
    }
    Verdict::Pass
}

fn scott_char_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    for a in v.s.elts() {
        let sv = scott_verdict(v.s, a);
        ensure!(sv.by_minimum == sv.by_closure, "readings differ on phi({a:?}): {sv:?}");
    }
    Verdict::Pass
}

fn spatial_eq_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    ensure!(v.frame.spatial == v.props.is_SL, "spatial={} but Y dense={}", v.frame.spatial, v.props.is_SL);
    Verdict::Pass
}

fn y_sober_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_SL);
    ensure!(v.local.sober, "localic part is not sober");
    Verdict::Pass
}

fn cl_trace_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_SL);
    let s = v.s;
    for w in s.open_upsets() {
        let c = s.closure(w);
        for y in localic_witnesses(s) {
            ensure!(s.in_phi(y, c) == s.open_contains(w, y), "cl {w:?} and {w:?} differ at localic {y:?}");
        }
    }
    Verdict::Pass
}

fn cl_meet_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_SL);
    let s = v.s;
    let wp = s.witness_points();
    let opens = s.open_upsets();
    for &u in &opens {
        for &w in &opens {
            let r = s.open_meet(u, w);
            for &p in &wp {
                ensure!(
                    s.open_contains(r, p) == (s.open_contains(u, p) && s.open_contains(w, p)),
                    "{u:?} & {w:?} computed as {r:?} is wrong at {p:?}"
                );
            }
            ensure!(
                s.meet(s.closure(u), s.closure(w)) == s.closure(r),
                "cl {u:?} & cl {w:?} differs from cl of the intersection"
            );
        }
    }
    Verdict::Pass
}

fn ker1_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    for a in s.elts() {
        let k = s.ker_open(a);
        ensure!(s.elt_le(s.closure(k), a), "cl ker phi({a:?}) is not inside phi({a:?})");
        for p in s.witness_points() {
            ensure!(!s.open_contains(k, p) || s.in_phi(p, a), "ker phi({a:?}) leaves phi({a:?}) at {p:?}");
        }
        for p in s.points() {
            ensure!(
                s.open_contains(k, p) == ker_contains(s, a, p),
                "backend and definitional ker phi({a:?}) differ at {p:?}"
            );
        }
    }
    Verdict::Pass
}

fn ker2_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    let elts = s.elts();
    for &a in &elts {
        for &b in elts.iter().filter(|&&b| s.elt_le(a, b)) {
            for p in s.witness_points() {
                ensure!(
                    !s.open_contains(s.ker_open(a), p) || s.open_contains(s.ker_open(b), p),
                    "ker not monotone at {a:?} <= {b:?}, point {p:?}"
                );
            }
        }
    }
    Verdict::Pass
}

fn ker3_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    for a in s.elts() {
        for b in s.elts() {
            let inside = phi_inside_open(s, a, s.ker_open(b));
            ensure!(
                inside == clopen_way_below(s, a, b),
                "phi({a:?}) inside ker phi({b:?}) is {inside}, way below is not"
            );
        }
    }
    Verdict::Pass
}

fn ker4_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    for u in s.elts() {
        for w in s.open_upsets().into_iter().filter(|&w| s.elt_le(u, s.closure(w))) {
            for p in s.witness_points() {
                ensure!(
                    !s.open_contains(s.ker_open(u), p) || s.open_contains(w, p),
                    "ker phi({u:?}) leaves {w:?} at {p:?}"
                );
            }
        }
    }
    Verdict::Pass
}

fn ker5_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    for a in s.elts() {
        for b in s.elts() {
            let algebra = (v.wb)(a, b);
            let clopens = clopen_way_below(s, a, b);
            let kernel = phi_inside_open(s, a, s.ker_open(b));
            ensure!(algebra == clopens && clopens == kernel, "at ({a:?},{b:?}): {algebra} {clopens} {kernel}");
        }
    }
    Verdict::Pass
}

fn ker6_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.frame.spatial);
    let s = v.s;
    for a in s.elts() {
        for b in s.elts() {
            let traced = s.witness_points().into_iter().all(|p| !s.in_phi(p, a) || up_localic_trace(s, b, p));
            ensure!((v.wb)(a, b) == traced, "way below and localic trace disagree at ({a:?},{b:?})");
        }
    }
    Verdict::Pass
}

fn packed_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    ensure!(v.frame.continuous == v.props.is_CL, "continuous={} CL={}", v.frame.continuous, v.props.is_CL);
    Verdict::Pass
}

fn interp_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_CL);
    let s = v.s;
    let pool = s.witness_elts();
    for a in s.elts() {
        for b in s.elts().into_iter().filter(|&b| clopen_way_below(s, a, b)) {
            ensure!(
                pool.iter().any(|&c| clopen_way_below(s, a, c) && clopen_way_below(s, c, b)),
                "nothing interpolates {a:?} << {b:?}"
            );
        }
    }
    Verdict::Pass
}

fn sandwich_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_CL);
    let s = v.s;
    let pool = s.witness_elts();
    for u in s.elts() {
        for w in s.elts() {
            let between = pool.iter().any(|&m| s.elt_le(u, m) && s.elt_le(m, w) && scott_verdict(s, m).by_minimum);
            ensure!(between == clopen_way_below(s, u, w), "Scott upset between {u:?} and {w:?}: {between}");
        }
    }
    Verdict::Pass
}

fn cl_spatial_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    ensure!(!v.props.is_CL || v.props.is_SL, "CL but not SL");
    Verdict::Pass
}

fn hm_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let hm = hofmann_mislove(v.s);
    ensure!(hm.bijective && hm.order_isomorphism, "{hm:?}");
    Verdict::Pass
}

fn cl_lc_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_SL);
    ensure!(
        v.props.is_CL == v.local.locally_compact,
        "CL={} locally compact={}",
        v.props.is_CL,
        v.local.locally_compact
    );
    Verdict::Pass
}

fn stab_ker_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_CL);
    let s = v.s;
    let stable = v.props.is_kernel_stable;
    ensure!(
        v.frame.stably_continuous == stable,
        "stably continuous={} kernel-stable={stable}",
        v.frame.stably_continuous
    );
    if stable {
        for a in s.elts() {
            for b in s.elts() {
                for p in s.points() {
                    let both = s.open_contains(s.ker_open(a), p) && s.open_contains(s.ker_open(b), p);
                    ensure!(both == s.open_contains(s.ker_open(s.meet(a, b)), p), "ker({a:?}) & ker({b:?}) at {p:?}");
                }
            }
        }
    }
    Verdict::Pass
}

fn kstab_sstab_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_CL);
    ensure!(v.props.is_kernel_stable == v.props.is_scott_stable, "{:?}", v.props);
    Verdict::Pass
}

fn stcl_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    ensure!(v.frame.stably_continuous == v.props.is_StCL, "StC={} StCL={}", v.frame.stably_continuous, v.props.is_StCL);
    Verdict::Pass
}

fn stcl_sp_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_SL);
    ensure!(v.props.is_StCL == v.local.stably_locally_compact, "StCL={} {:?}", v.props.is_StCL, v.local);
    Verdict::Pass
}

fn cpt_elt_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    for a in s.elts() {
        let equal = phi_inside_open(s, a, s.ker_open(a));
        ensure!((v.wb)(a, a) == equal, "{a:?} compact={} but ker phi = phi is {equal}", (v.wb)(a, a));
    }
    Verdict::Pass
}

fn lcpt_y_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    ensure!(v.frame.compact == v.props.is_L_compact, "compact={} L-compact={}", v.frame.compact, v.props.is_L_compact);
    assume!(v.props.is_SL);
    ensure!(
        v.props.is_L_compact == v.local.compact,
        "L-compact={} Y compact={}",
        v.props.is_L_compact,
        v.local.compact
    );
    Verdict::Pass
}

fn stk_sp_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    ensure!(v.frame.stably_compact == v.props.is_StKL, "StK={} StKL={}", v.frame.stably_compact, v.props.is_StKL);
    assume!(v.props.is_SL);
    ensure!(v.props.is_StKL == v.local.stably_compact, "StKL={} {:?}", v.props.is_StKL, v.local);
    Verdict::Pass
}

fn reg_formula_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    for a in s.elts() {
        for p in s.points() {
            let formula = reg_contains(s, a, p);
            let union = reg_contains_by_union(s, a, p);
            let backend = s.open_contains(s.reg_open(a), p);
            ensure!(formula == union && union == backend, "reg phi({a:?}) at {p:?}: {formula} {union} {backend}");
        }
    }
    Verdict::Pass
}

fn reg_eq_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_SL);
    for a in v.s.elts() {
        let c = regularity_conditions(v.s, a);
        ensure!(c.iter().all(|&x| x == c[0]), "conditions on phi({a:?}) split: {c:?}");
    }
    Verdict::Pass
}

fn reg_frm_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    ensure!(v.frame.regular == v.props.is_L_regular, "regular={} L-regular={}", v.frame.regular, v.props.is_L_regular);
    Verdict::Pass
}

fn krl_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let kr = v.frame.compact && v.frame.regular;
    ensure!(kr == v.props.is_KRL, "compact regular={kr} KRL={}", v.props.is_KRL);
    Verdict::Pass
}

fn krl_sp_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_SL);
    let ch = v.local.compact && v.local.hausdorff;
    ensure!(v.props.is_KRL == ch, "KRL={} compact Hausdorff={ch}", v.props.is_KRL);
    Verdict::Pass
}

fn krl_spatial_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_KRL);
    ensure!(v.props.is_SL && v.local.compact, "KRL but SL={} Y compact={}", v.props.is_SL, v.local.compact);
    Verdict::Pass
}

fn regker_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    let pts = s.witness_points();
    let mut reg_in_ker = true;
    for a in s.elts() {
        let (k, r) = (s.ker_open(a), s.reg_open(a));
        if s.closure(r) == a {
            for &p in &pts {
                ensure!(!s.open_contains(k, p) || s.open_contains(r, p), "ker phi({a:?}) not in reg at {p:?}");
            }
        }
        reg_in_ker &= pts.iter().all(|&p| !s.open_contains(r, p) || s.open_contains(k, p));
        if v.props.is_KRL {
            for &p in &pts {
                ensure!(s.open_contains(k, p) == s.open_contains(r, p), "KRL but reg and ker of {a:?} differ at {p:?}");
            }
        }
    }
    ensure!(
        reg_in_ker == v.props.is_L_compact,
        "reg inside ker everywhere={reg_in_ker} L-compact={}",
        v.props.is_L_compact
    );
    Verdict::Pass
}

fn biset_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_KRL);
    let s = v.s;
    let pts = s.witness_points();
    for m in s.elts() {
        let down_closed =
            pts.iter().all(|&p| !s.in_phi(p, m) || pts.iter().all(|&q| !s.point_le(q, p) || s.in_phi(q, m)));
        ensure!(scott_verdict(s, m).by_minimum == down_closed, "phi({m:?}) Scott vs biset");
    }
    Verdict::Pass
}

fn miny_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_KRL);
    let s = v.s;
    let pts = s.witness_points();
    for &p in &pts {
        let minimal = pts.iter().all(|&q| q == p || !s.point_le(q, p));
        ensure!(minimal == s.is_localic(p), "{p:?}: minimal={minimal} localic={}", s.is_localic(p));
    }
    Verdict::Pass
}

fn krl_stkl_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    ensure!(!v.props.is_KRL || v.props.is_StKL, "KRL but not StKL");
    Verdict::Pass
}

fn eqmin_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    assume!(v.props.is_L_regular);
    let s = v.s;
    let pts = s.witness_points();
    let min_outside = |a: S::Elt| -> Vec<bool> {
        pts.iter()
            .map(|&p| !s.in_phi(p, a) && pts.iter().all(|&q| q == p || s.in_phi(q, a) || !s.point_le(q, p)))
            .collect()
    };
    let elts = s.elts();
    for &a in &elts {
        for &b in &elts {
            ensure!(a == b || min_outside(a) != min_outside(b), "complements of {a:?} and {b:?} share their minima");
        }
    }
    Verdict::Pass
}

fn priestley_basics_law<S: PriestleySpace>(v: &View<S>) -> Verdict {
    let s = v.s;
    let pts = s.witness_points();
    let has_max = |inside: &dyn Fn(S::Point) -> bool| {
        pts.iter().any(|&p| inside(p) && pts.iter().all(|&q| q == p || !inside(q) || !s.point_le(p, q)))
    };
    let has_min = |inside: &dyn Fn(S::Point) -> bool| {
        pts.iter().any(|&p| inside(p) && pts.iter().all(|&q| q == p || !inside(q) || !s.point_le(q, p)))
    };
    for a in s.elts() {
        let up = |p| s.in_phi(p, a);
        let down = |p| !s.in_phi(p, a);
        if a != s.bot() {
            ensure!(!s.min_of(a).is_empty() && s.min_of(a).iter().all(|&p| s.in_phi(p, a)), "min phi({a:?}) empty");
            ensure!(has_max(&up) && has_min(&up), "phi({a:?}) lacks extremes");
        }
        if a != s.top() {
            ensure!(has_max(&down) && has_min(&down), "complement of phi({a:?}) lacks extremes");
        }
    }
    let welts = s.witness_elts();
    for &x in &pts {
        for &p in &pts {
            let in_all = welts.iter().filter(|&&a| s.in_phi(x, a)).all(|&a| s.in_phi(p, a));
            ensure!(in_all == s.point_le(x, p), "filter of {x:?} does not cut out up {x:?} at {p:?}");
        }
    }
    Verdict::Pass
}

pub(super) fn jid(inst: &Instance) -> Verdict {
    match inst {
        Instance::Lattice(c) => {
            assume!(c.lat.len() <= 16);
            ensure!(c.lat.join_infinite_distributive() == Ok(true), "meet does not distribute over joins");
            Verdict::Pass
        }
        Instance::Chain(c) => {
            // in a chain `a & I` is `down a` when `a` is in the ideal `I`, else `I`
            let s = &c.space;
            for w in s.open_upsets() {
                for a in s.elts() {
                    let join = if s.clopen_inside(w, a) { a } else { s.closure(w) };
                    ensure!(s.meet(a, s.closure(w)) == join, "{a:?} & join {w:?}");
                }
            }
            Verdict::Pass
        }
        _ => Verdict::Skip,
    }
}

/// Completely prime filters are the filters of localic points, and `zeta(a)` is `phi(a) & Y`.
pub(super) fn zeta(inst: &Instance) -> Verdict {
    match inst {
        Instance::Lattice(c) => {
            let pts = pt_space(&c.lat);
            let x = &*c.space;
            let localic: Vec<Mask> =
                (0..x.len()).filter(|&p| x.is_localic(p)).filter_map(|p| x.point_contents(p)).collect();
            ensure!(
                localic.len() == pts.points.len(),
                "{} localic points, {} completely prime filters",
                localic.len(),
                pts.points.len()
            );
            for (i, f) in pts.points.iter().enumerate() {
                let Some(p) = (0..x.len()).find(|&p| x.point_contents(p) == Some(*f)) else {
                    return Verdict::Fail(format!("filter {:?} is no point", f.to_vec()));
                };
                ensure!(x.is_localic(p), "completely prime filter {:?} is not localic", f.to_vec());
                for a in 0..c.lat.len() {
                    ensure!(pts.zeta[a].contains(i) == x.in_phi(p, a), "zeta({a}) differs at {:?}", f.to_vec());
                }
            }
            Verdict::Pass
        }
        Instance::Chain(c) => {
            let s = &c.space;
            for p in s.witness_points() {
                // up p is completely prime iff the join of its complement is outside it
                let completely_prime = s.closure(OpenUpset::Below(p)) < p;
                ensure!(completely_prime == s.is_localic(p), "{p:?}");
            }
            Verdict::Pass
        }
        _ => Verdict::Skip,
    }
}

/// `Y` computed by the backend against an independent reading.
pub(super) fn y_clopen(inst: &Instance) -> Verdict {
    match inst {
        Instance::Lattice(c) => {
            let cps: Vec<Mask> = c.lat.filters(FilterKind::CompletelyPrime).into_iter().map(|f| f.elements).collect();
            let x = &*c.space;
            for p in 0..x.len() {
                let cp = x.point_contents(p).is_some_and(|f| cps.contains(&f));
                ensure!(
                    cp == x.is_localic(p),
                    "point {p}: down-set clopen={} filter completely prime={cp}",
                    x.is_localic(p)
                );
            }
            Verdict::Pass
        }
        Instance::Chain(c) => chain_y_against_truncation(&c.space),
        _ => Verdict::Skip,
    }
}

fn chain_y_against_truncation(s: &ChainSpace) -> Verdict {
    let stages = (truncate(s.shape(), 5), truncate(s.shape(), 6));
    let (Ok(here), Ok(next)) = stages else {
        return Verdict::Fail("truncation failed".into());
    };
    for p in s.points() {
        ensure!(here.localic(&next, p) == s.is_localic(p), "{p}: truncation disagrees");
    }
    Verdict::Pass
}

pub(super) fn ess_surj(inst: &Instance) -> Verdict {
    let Instance::Lattice(c) = inst else { return Verdict::Skip };
    match point_homeomorphism(&FinTopSpace::new(c.poset.clone())) {
        Ok(Some(_)) => Verdict::Pass,
        Ok(None) => Verdict::Fail("points of the open-set frame are not homeomorphic to the space".into()),
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

pub(super) fn unit(inst: &Instance) -> Verdict {
    let Instance::Lattice(c) = inst else { return Verdict::Skip };
    match unit_checks(&c.lat) {
        Ok(r) if r.passed() => Verdict::Pass,
        Ok(r) => Verdict::Fail(format!("{r:?}")),
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

pub(super) fn finite_collapse(inst: &Instance) -> Verdict {
    let Instance::Lattice(c) = inst else { return Verdict::Skip };
    let v = c.lat.finite_collapse_violations();
    ensure!(v.is_empty(), "{}", v.join("; "));
    Verdict::Pass
}

/// A dual morphism with its algebraic properness and profile.
pub(super) struct MapView<'a, M: SpaceMap> {
    pub f: &'a M,
    pub proper: bool,
    pub profile: &'a Result<ProperProfile>,
    pub lattice: Option<&'a HomCase>,
}

macro_rules! morphism {
    ($($wrapper:ident => $law:ident),* $(,)?) => {
        $(
            pub(super) fn $wrapper(inst: &Instance) -> Verdict {
                match inst {
                    Instance::Hom(h) => $law(&MapView {
                        f: &h.dual,
                        proper: h.hom.flags().proper,
                        profile: h.profile(),
                        lattice: Some(h),
                    }),
                    Instance::ChainHom(h) => $law(&MapView {
                        f: &h.dual,
                        proper: chain_is_proper(&h.hom),
                        profile: h.profile(),
                        lattice: None,
                    }),
                    _ => Verdict::Skip,
                }
            }
        )*
    };
}

morphism! {
    restrict => restrict_law,
    unique_ext => unique_ext_law,
    proper_sharp => proper_sharp_law,
    proper_eq => proper_eq_law,
    proper_triple => proper_triple_law,
    auto_proper => auto_proper_law,
    fd_clopen => fd_clopen_law,
    down_image => down_image_law,
}

fn restrict_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    ensure!(is_l_morphism(v.f), "dual map is not an L-morphism");
    match restrict_morphism(v.f) {
        Ok(_) => Verdict::Pass,
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

type PointMap<M> = std::collections::BTreeMap<
    <<M as SpaceMap>::Dom as PriestleySpace>::Point,
    <<M as SpaceMap>::Cod as PriestleySpace>::Point,
>;

fn extension<M: SpaceMap>(f: &M) -> Result<PointMap<M>> {
    extend_map(f.dom(), f.cod(), &|p| f.apply(p))
}

/// The extension agrees with the map on Y and pulls each `phi(a)` back to `phi(f^-1 a)`.
fn extend_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    let (d, c, f) = (v.f.dom(), v.f.cod(), v.f);
    let ext = match extension(f) {
        Ok(e) => e,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    for p in d.points().into_iter().filter(|&p| d.is_localic(p)) {
        ensure!(ext.get(&p) == Some(&f.apply(p)), "extension leaves g at localic {p:?}");
    }
    for a in c.elts() {
        for (&x, &z) in &ext {
            ensure!(c.in_phi(z, a) == d.in_phi(x, f.pull(a)), "preimage of phi({a:?}) is not phi at {x:?}");
        }
    }
    Verdict::Pass
}

pub(super) fn extend(inst: &Instance) -> Verdict {
    let verdict = match inst {
        Instance::Hom(h) => {
            extend_law(&MapView { f: &h.dual, proper: h.hom.flags().proper, profile: h.profile(), lattice: Some(h) })
        }
        Instance::ChainHom(h) => {
            extend_law(&MapView { f: &h.dual, proper: chain_is_proper(&h.hom), profile: h.profile(), lattice: None })
        }
        _ => Verdict::Skip,
    };
    let Instance::Hom(h) = inst else { return verdict };
    if verdict != Verdict::Pass {
        return verdict;
    }
    let ext = match extension(&h.dual) {
        Ok(e) => e,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let pm: Vec<usize> = (0..h.dual.dom_space().len()).map(|p| ext[&p]).collect();
    match FiniteMorphism::new(h.dual.dom_space().clone(), h.dual.cod_space().clone(), pm) {
        Ok(m) => ensure!(is_l_morphism(&m), "extension is not an L-morphism"),
        Err(e) => return Verdict::Fail(e.to_string()),
    }
    Verdict::Pass
}

fn unique_ext_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    let ext = match extension(v.f) {
        Ok(e) => e,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    for p in v.f.dom().points() {
        ensure!(ext.get(&p) == Some(&v.f.apply(p)), "two L-morphisms agree on Y but differ at {p:?}");
    }
    Verdict::Pass
}

fn proper_sharp_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    let Ok(p) = v.profile else { return Verdict::Skip };
    ensure!(
        p.kernel_preimage == v.proper,
        "kernel preimage condition={} but hom proper={}",
        p.kernel_preimage,
        v.proper
    );
    Verdict::Pass
}

fn proper_eq_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    let Ok(p) = v.profile else { return Verdict::Skip };
    ensure!(p.agree() && p.kernel_preimage == v.proper, "{p:?} with hom proper={}", v.proper);
    Verdict::Pass
}

fn proper_triple_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    assume!(v.profile.is_ok());
    let localic = is_proper_localic(v.f);
    ensure!(localic == v.proper, "restriction proper={localic} but hom proper={}", v.proper);
    if let Some(h) = v.lattice {
        let dom = FinTopSpace::new(h.dual.dom_space().order().clone());
        let cod = FinTopSpace::new(h.dual.cod_space().order().clone());
        match is_proper_map(&dom, &cod, h.dual.point_map()) {
            Ok(t) => ensure!(t == v.proper, "topological properness={t} but hom proper={}", v.proper),
            Err(e) => return Verdict::Fail(e.to_string()),
        }
    }
    Verdict::Pass
}

fn auto_proper_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    let (d, c, f) = (v.f.dom(), v.f.cod(), v.f);
    for a in c.elts() {
        for p in d.points() {
            ensure!(
                !reg_contains(c, a, f.apply(p)) || reg_contains(d, f.pull(a), p),
                "preimage of reg phi({a:?}) leaves reg at {p:?}"
            );
        }
    }
    if d.props().is_L_compact && c.props().is_L_regular {
        match v.profile {
            Ok(p) => ensure!(p.as_array() == [true; 5], "L-compact to L-regular but {p:?}"),
            Err(e) => return Verdict::Fail(e.to_string()),
        }
    }
    Verdict::Pass
}

fn image_of<M: SpaceMap>(
    f: &M,
    inside: &dyn Fn(<M::Dom as PriestleySpace>::Point) -> bool,
) -> Vec<<M::Cod as PriestleySpace>::Point> {
    f.dom().witness_points().into_iter().filter(|&p| inside(p)).map(|p| f.apply(p)).collect()
}

fn fd_clopen_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    let (d, c, f) = (v.f.dom(), v.f.cod(), v.f);
    let cpts = c.witness_points();
    let strong = d.props().is_L_compact && c.props().is_L_regular;
    for a in d.elts() {
        let img = image_of(f, &|p| !d.in_phi(p, a));
        let down: Vec<bool> = cpts.iter().map(|&q| img.iter().any(|&z| c.point_le(q, z))).collect();
        ensure!(
            c.witness_elts().into_iter().any(|e| cpts.iter().zip(&down).all(|(&q, &inside)| c.in_phi(q, e) != inside)),
            "down of the image of the complement of phi({a:?}) is not clopen"
        );
        if strong {
            for (&q, &inside) in cpts.iter().zip(&down) {
                ensure!(
                    !inside || img.contains(&q),
                    "image of the complement of phi({a:?}) is not a down-set at {q:?}"
                );
            }
        }
    }
    Verdict::Pass
}

fn down_image_law<M: SpaceMap>(v: &MapView<M>) -> Verdict {
    let (d, c, f) = (v.f.dom(), v.f.cod(), v.f);
    assume!(d.props().is_L_compact && c.props().is_L_regular);
    let cpts = c.witness_points();
    for x in d.points() {
        let img = image_of(f, &|p| d.point_le(p, x));
        let fx = f.apply(x);
        for &q in &cpts {
            ensure!(c.point_le(q, fx) == img.contains(&q), "f(down {x:?}) and down f({x:?}) differ at {q:?}");
        }
    }
    Verdict::Pass
}

pub(super) fn closed_hom(inst: &Instance) -> Verdict {
    let Instance::Hom(h) = inst else { return Verdict::Skip };
    assume!(h.dom.frame.compact && h.dom.frame.regular);
    let r = h.hom.right_adjoint();
    let (d, c) = (&*h.hom.dom, &*h.hom.cod);
    for a in 0..d.len() {
        for b in 0..c.len() {
            let lhs = r[c.join(h.hom.apply(a), b)];
            ensure!(d.le(lhs, d.join(a, r[b])), "r(h({a}) v {b}) = {lhs} is not below {a} v r({b})");
        }
    }
    ensure!(h.hom.is_closed_hom(), "closed-hom flag disagrees");
    Verdict::Pass
}

/// Polarity-inverted: a witness is a frame that is not regular.
pub(super) fn nonregular_frame(inst: &Instance) -> Verdict {
    match inst {
        Instance::Lattice(c) => {
            ensure!(c.frame.regular, "not regular");
            Verdict::Pass
        }
        Instance::Chain(c) => {
            ensure!(c.frame.regular, "not regular");
            Verdict::Pass
        }
        _ => Verdict::Skip,
    }
}

/// Polarity-inverted: a witness is a frame homomorphism that is not proper.
pub(super) fn nonproper_hom(inst: &Instance) -> Verdict {
    match inst {
        Instance::Hom(h) => {
            ensure!(!h.hom.flags().frame_hom || h.hom.flags().proper, "frame hom that is not proper");
            Verdict::Pass
        }
        Instance::ChainHom(h) => {
            let w = h.hom.properness_witness();
            if let Some((a, b)) = w {
                return Verdict::Fail(format!("frame hom that is not proper: {a} << {b} is not preserved"));
            }
            Verdict::Pass
        }
        _ => Verdict::Skip,
    }
}

//! The law registry and the sweep engine.
//!
//! Each law is a row in one table: an id, a descriptive anchor, the instance
//! kinds it consumes and a check. Sweeps, the CLI and the README listing all
//! read the same table.

pub mod corpus;
mod laws;
pub mod search;

pub use corpus::{Corpus, CorpusConfig, CorpusInfo, Instance, Kind};
pub use search::{search, ExhaustionCertificate, SearchOutcome};

use crate::error::{Error, Result};
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;
use std::time::Instant;

/// Outcome of one law on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    /// The instance does not meet the hypothesis.
    Skip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    /// Must hold everywhere.
    Theorem,
    /// A searchable statement; a failing instance is a witness.
    Claim,
}

pub struct Law {
    pub id: &'static str,
    pub anchor: &'static str,
    pub polarity: Polarity,
    pub kinds: &'static [Kind],
    check: fn(&Instance) -> Verdict,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law").field("id", &self.id).field("polarity", &self.polarity).finish()
    }
}

const STRUCT: &[Kind] = &[Kind::Lattice, Kind::Chain];
const FINITE: &[Kind] = &[Kind::Lattice];
const MORPH: &[Kind] = &[Kind::Hom, Kind::ChainHom];
const HOM: &[Kind] = &[Kind::Hom];
const ALL: &[Kind] = &[Kind::Lattice, Kind::Hom, Kind::Chain, Kind::ChainHom];

macro_rules! law {
    ($id:literal, $anchor:literal, $kinds:expr, $check:path) => {
        Law { id: $id, anchor: $anchor, polarity: Polarity::Theorem, kinds: $kinds, check: $check }
    };
    (claim $id:literal, $anchor:literal, $kinds:expr, $check:path) => {
        Law { id: $id, anchor: $anchor, polarity: Polarity::Claim, kinds: $kinds, check: $check }
    };
}

static REGISTRY: &[Law] = &[
    law!(
        "AUTO-PROPER",
        "frame homs from compact to regular frames are proper; preimages of reg parts",
        MORPH,
        laws::auto_proper
    ),
    law!("BISET", "on KRL spaces the Scott upsets are exactly the closed bisets", STRUCT, laws::biset),
    law!("CL-LC", "CL-space iff the localic part is locally compact", STRUCT, laws::cl_lc),
    law!("CL-MEET", "closure of open upsets commutes with binary intersection", STRUCT, laws::cl_meet),
    law!("CL-SPATIAL", "CL-spaces are L-spatial", STRUCT, laws::cl_spatial),
    law!("CL-TRACE", "an open upset and its closure share their trace on Y", STRUCT, laws::cl_trace),
    law!("CLOSED-HOM", "homs out of compact regular frames satisfy the closed-map inequality", HOM, laws::closed_hom),
    law!("CPT-ELT", "a is compact iff the kernel of phi(a) is phi(a)", STRUCT, laws::cpt_elt),
    law!(
        "DOWN-IMAGE",
        "proper maps from L-compact to L-regular spaces send principal downsets onto principal downsets",
        MORPH,
        laws::down_image
    ),
    law!("EQMIN", "on L-regular spaces clopen downsets are determined by their minimal points", STRUCT, laws::eqmin),
    law!(
        "ESS-SURJ",
        "every finite T0 space is homeomorphic to the points of its open-set frame",
        FINITE,
        laws::ess_surj
    ),
    law!("EXTEND", "a continuous map of localic parts extends to an L-morphism", MORPH, laws::extend),
    law!("FD-CLOPEN", "L-morphisms send clopen downsets to sets with clopen downward closure", MORPH, laws::fd_clopen),
    law!(
        "FINITE-COLLAPSE",
        "on finite frames way below is order and regular is Boolean",
        FINITE,
        laws::finite_collapse
    ),
    law!("HM", "Scott upsets correspond to compact saturated subsets of Y", STRUCT, laws::hm),
    law!("INTERP", "way below interpolates on CL-spaces", STRUCT, laws::interp),
    law!("JID", "binary meet distributes over arbitrary joins", STRUCT, laws::jid),
    law!("KER1", "kernel properties: ker U is open, inside U, and pointwise definitional", STRUCT, laws::ker1),
    law!("KER2", "kernel properties: ker is monotone", STRUCT, laws::ker2),
    law!("KER3", "kernel properties: V inside ker U iff V way below U", STRUCT, laws::ker3),
    law!("KER4", "kernel properties: ker U lies inside every open upset whose closure contains U", STRUCT, laws::ker4),
    law!("KER5", "kernel properties: algebraic, clopen and kernel readings of way below agree", STRUCT, laws::ker5),
    law!("KER6", "kernel properties: on spatial frames way below is read off the localic trace", STRUCT, laws::ker6),
    law!("KRL", "a frame is compact regular iff its dual is a KRL-space", STRUCT, laws::krl),
    law!("KRL-SP", "KRL iff the localic part is compact Hausdorff", STRUCT, laws::krl_sp),
    law!("KRL-SPATIAL", "KRL-spaces are L-spatial with compact localic part", STRUCT, laws::krl_spatial),
    law!("KRL-STKL", "every KRL-space is a StKL-space", STRUCT, laws::krl_stkl),
    law!("KSTAB-SSTAB", "a CL-space is kernel-stable iff it is Scott-stable", STRUCT, laws::kstab_sstab),
    law!("LCPT-Y", "a frame is compact iff its dual is L-compact, and then Y is compact", STRUCT, laws::lcpt_y),
    law!("MINY", "on KRL spaces the minimal points are exactly the localic ones", STRUCT, laws::miny),
    law!("PACKED", "a frame is continuous iff every clopen upset of its dual is packed", STRUCT, laws::packed),
    law!("PHI-JOIN", "phi of a join is the closure of the union", STRUCT, laws::phi_join),
    law!(
        "PRIESTLEY-BASICS",
        "closed sets have minimal and maximal points; principal upsets are cut out by clopen upsets",
        STRUCT,
        laws::priestley_basics
    ),
    law!("PROPER-EQ", "the five properness conditions are equivalent", MORPH, laws::proper_eq),
    law!(
        "PROPER-SHARP",
        "a hom is proper iff preimages of kernels lie in kernels of preimages",
        MORPH,
        laws::proper_sharp
    ),
    law!(
        "PROPER-TRIPLE",
        "a hom is proper iff the restriction to localic parts is a proper map",
        MORPH,
        laws::proper_triple
    ),
    law!("REG-EQ", "the four characterizations of the regular part agree", STRUCT, laws::reg_eq),
    law!("REG-FORMULA", "reg U is the complement of the down-up closure of the complement", STRUCT, laws::reg_formula),
    law!("REG-FRM", "a frame is regular iff its dual is L-regular", STRUCT, laws::reg_frm),
    law!("REGKER", "comparison of reg and ker, equal on KRL spaces", STRUCT, laws::regker),
    law!("RESTRICT", "L-morphisms map localic points to localic points", MORPH, laws::restrict),
    law!("SANDWICH", "U way below V iff a Scott upset sits between them", STRUCT, laws::sandwich),
    law!("SCOTT-CHAR", "minimum-based and closure-based readings of Scott upsets agree", STRUCT, laws::scott_char),
    law!("SPATIAL-EQ", "a frame is spatial iff Y is dense in its dual", STRUCT, laws::spatial_eq),
    law!("STAB-KER", "stably continuous iff kernels commute with binary meets", STRUCT, laws::stab_ker),
    law!("STCL", "stably continuous frames are dual to Scott-stable CL-spaces", STRUCT, laws::stcl),
    law!("STCL-SP", "StCL iff the localic part is stably locally compact", STRUCT, laws::stcl_sp),
    law!("STK-SP", "StKL iff the localic part is stably compact", STRUCT, laws::stk_sp),
    law!("UNIQUE-EXT", "L-morphisms agreeing on Y agree everywhere", MORPH, laws::unique_ext),
    law!("UNIT", "phi and epsilon are isomorphisms", FINITE, laws::unit),
    law!("Y-CLOPEN", "localic points are those whose principal downset is clopen", STRUCT, laws::y_clopen),
    law!("Y-SOBER", "the localic part of an L-spatial space is sober", STRUCT, laws::y_sober),
    law!("ZETA", "completely prime filters are the localic points and zeta(a) is phi(a) on Y", STRUCT, laws::zeta),
    law!(claim "nonproper-hom", "a frame homomorphism that is not proper", ALL, laws::nonproper_hom),
    law!(claim "nonregular-frame", "a frame that is not regular", ALL, laws::nonregular_frame),
];

/// Every registered law, sorted by id within each polarity.
pub fn registry() -> &'static [Law] {
    REGISTRY
}

pub fn find_law(id: &str) -> Result<&'static Law> {
    REGISTRY
        .iter()
        .find(|l| l.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Input(format!("no law or claim named {id}")))
}

pub fn theorems() -> impl Iterator<Item = &'static Law> {
    REGISTRY.iter().filter(|l| l.polarity == Polarity::Theorem)
}

pub fn claims() -> impl Iterator<Item = &'static Law> {
    REGISTRY.iter().filter(|l| l.polarity == Polarity::Claim)
}

/// Instances outside the law's kinds are skipped, never failed.
pub fn run_law(law: &Law, inst: &Instance) -> Verdict {
    if !law.kinds.contains(&inst.kind()) {
        return Verdict::Skip;
    }
    (law.check)(inst)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub instance: String,
    pub detail: String,
    pub data: Value,
}

impl Witness {
    pub fn new(inst: &Instance, detail: String) -> Witness {
        Witness { instance: inst.label(), detail, data: inst.witness() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// No instance met the hypothesis.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LawReport {
    pub law_id: String,
    pub anchor: String,
    pub corpus_size: usize,
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
    pub witnesses: Vec<Witness>,
    pub seed: u64,
    pub duration_ms: u64,
    pub status: Status,
}

pub const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub version: String,
    pub corpus: CorpusInfo,
    pub laws: Vec<LawReport>,
    pub failed_laws: usize,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failed_laws == 0
    }

    pub fn law(&self, id: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law_id == id)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<18} {:>8} {:>8} {:>7} {:>9}  status", "law", "checked", "skipped", "failed", "ms");
        for l in &self.laws {
            let status = match l.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let _ = writeln!(
                out,
                "{:<18} {:>8} {:>8} {:>7} {:>9}  {status}",
                l.law_id, l.checked, l.skipped, l.failed, l.duration_ms
            );
        }
        let c = &self.corpus;
        let _ = writeln!(
            out,
            "corpus: {} lattices, {} homs ({} sampled pairs), {} chain shapes, {} chain homs; seed {}",
            c.lattices, c.homs, c.sampled_pairs, c.chain_shapes, c.chain_homs, c.config.seed
        );
        let _ = writeln!(out, "{} of {} laws failed", self.failed_laws, self.laws.len());
        out
    }
}

/// Runs one law over the corpus. `timing` off zeroes `durationMs`, which
/// makes the report byte-identical across runs.
pub fn check_law(law: &Law, corpus: &Corpus, timing: bool) -> LawReport {
    let start = Instant::now();
    let (mut checked, mut skipped, mut failed) = (0, 0, 0);
    let mut witnesses = Vec::new();
    for inst in &corpus.instances {
        if !law.kinds.contains(&inst.kind()) {
            continue;
        }
        match (law.check)(inst) {
            Verdict::Pass => checked += 1,
            Verdict::Skip => skipped += 1,
            Verdict::Fail(detail) => {
                checked += 1;
                failed += 1;
                if witnesses.len() < MAX_WITNESSES {
                    witnesses.push(Witness::new(inst, detail));
                }
            }
        }
    }
    let status = if failed > 0 {
        Status::Fail
    } else if checked == 0 {
        Status::Skipped
    } else {
        Status::Pass
    };
    LawReport {
        law_id: law.id.to_string(),
        anchor: law.anchor.to_string(),
        corpus_size: corpus.instances.len(),
        checked,
        skipped,
        failed,
        witnesses,
        seed: corpus.info.config.seed,
        duration_ms: if timing { start.elapsed().as_millis() as u64 } else { 0 },
        status,
    }
}

/// Runs the selected theorem laws (all when `only` is empty) over the corpus.
pub fn sweep(corpus: &Corpus, only: &[String], timing: bool) -> Result<SweepReport> {
    let mut selected: Vec<&Law> = Vec::new();
    if only.is_empty() {
        selected.extend(theorems());
    } else {
        for id in only {
            let law = find_law(id)?;
            if law.polarity != Polarity::Theorem {
                return Err(Error::Input(format!("{id} is a claim; use search")));
            }
            selected.push(law);
        }
    }
    selected.sort_by_key(|l| l.id);
    selected.dedup_by_key(|l| l.id);
    let laws: Vec<LawReport> = selected.into_iter().map(|l| check_law(l, corpus, timing)).collect();
    let failed_laws = laws.iter().filter(|l| l.status == Status::Fail).count();
    Ok(SweepReport { version: env!("CARGO_PKG_VERSION").to_string(), corpus: corpus.info.clone(), laws, failed_laws })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids: Vec<&str> = theorems().map(|l| l.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert_eq!(claims().count(), 2);
        assert!(find_law("ker3").is_ok());
        assert!(find_law("KER7").is_err());
    }
}

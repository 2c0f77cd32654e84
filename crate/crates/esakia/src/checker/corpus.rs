//! Instances the laws run over.

use crate::chainfrm::{
    chain_classify, chain_corpus, ChainDualMap, ChainElt, ChainMorphism, ChainShape, ChainSpace, MorphTerm, Piece,
};
use crate::dlattice::{enumerate_homs, FinDLat, FrameProps, LatticeHom, WayBelow};
use crate::error::{Error, Result};
use crate::poset::{enumerate_posets, FinPoset, ENUMERATION_CAP};
use crate::priestley::{
    dual_of_hom_between, dual_space, properness_profile, FiniteMorphism, FiniteSpace, ProperProfile,
};
use crate::spaces::{classify_localic, TopProps};
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::{Arc, OnceLock};

/// The down-set lattice of a poset with its dual space and classifications.
#[derive(Debug)]
pub struct LatticeCase {
    pub label: String,
    pub poset: FinPoset,
    pub lat: Arc<FinDLat>,
    pub space: Arc<FiniteSpace>,
    pub frame: FrameProps,
    pub local: TopProps,
    pub wb: WayBelow,
}

impl LatticeCase {
    pub fn new(label: String, poset: FinPoset) -> Result<LatticeCase> {
        let lat = Arc::new(FinDLat::birkhoff(&poset)?);
        let space = Arc::new(dual_space(&lat));
        let frame = lat.classify_frame();
        let local = classify_localic(&*space);
        let wb = lat.way_below_table()?;
        Ok(LatticeCase { label, poset, lat, space, frame, local, wb })
    }
}

#[derive(Debug)]
pub struct HomCase {
    pub dom: Arc<LatticeCase>,
    pub cod: Arc<LatticeCase>,
    pub hom: LatticeHom,
    /// `X_cod -> X_dom`.
    pub dual: FiniteMorphism,
    profile: OnceLock<Result<ProperProfile>>,
}

impl HomCase {
    pub fn profile(&self) -> &Result<ProperProfile> {
        self.profile.get_or_init(|| properness_profile(&self.dual))
    }
}

#[derive(Debug)]
pub struct ChainCase {
    pub space: ChainSpace,
    pub frame: FrameProps,
    pub local: TopProps,
}

impl ChainCase {
    pub fn new(shape: ChainShape) -> Result<ChainCase> {
        let frame = chain_classify(&shape);
        let space = ChainSpace::new(shape)?;
        let local = classify_localic(&space);
        Ok(ChainCase { space, frame, local })
    }

    pub fn shape(&self) -> &ChainShape {
        self.space.shape()
    }
}

#[derive(Debug)]
pub struct ChainHomCase {
    pub hom: ChainMorphism,
    pub dual: ChainDualMap,
    profile: OnceLock<Result<ProperProfile>>,
}

impl ChainHomCase {
    pub fn new(term: &MorphTerm) -> Result<ChainHomCase> {
        let hom = ChainMorphism::build(term)?;
        let dual = ChainDualMap::new(hom.clone())?;
        Ok(ChainHomCase { hom, dual, profile: OnceLock::new() })
    }

    pub fn profile(&self) -> &Result<ProperProfile> {
        self.profile.get_or_init(|| properness_profile(&self.dual))
    }
}

#[derive(Clone, Debug)]
pub enum Instance {
    Lattice(Arc<LatticeCase>),
    Hom(Arc<HomCase>),
    Chain(Arc<ChainCase>),
    ChainHom(Arc<ChainHomCase>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Lattice,
    Hom,
    Chain,
    ChainHom,
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Lattice(_) => Kind::Lattice,
            Instance::Hom(_) => Kind::Hom,
            Instance::Chain(_) => Kind::Chain,
            Instance::ChainHom(_) => Kind::ChainHom,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Instance::Lattice(c) => c.label.clone(),
            Instance::Hom(h) => format!("{} -> {}: {:?}", h.dom.label, h.cod.label, h.hom.map()),
            Instance::Chain(c) => format!("chain {}", c.shape()),
            Instance::ChainHom(h) => format!("chain hom {} -> {}", h.hom.source(), h.hom.target()),
        }
    }

    /// Enough to rebuild the instance.
    pub fn witness(&self) -> Value {
        match self {
            Instance::Lattice(c) => json!({
                "kind": "lattice",
                "label": c.label,
                "poset": c.poset.to_file(),
                "lattice": c.lat.to_file(),
            }),
            Instance::Hom(h) => json!({
                "kind": "hom",
                "dom": h.dom.label,
                "cod": h.cod.label,
                "hom": h.hom.to_file(),
            }),
            Instance::Chain(c) => json!({ "kind": "chain", "shape": c.shape() }),
            Instance::ChainHom(h) => json!({ "kind": "chain-hom", "term": h.hom.term() }),
        }
    }
}

/// Bounds of a corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusConfig {
    pub max_size: usize,
    pub hom_budget: usize,
    pub seed: u64,
    pub chains: bool,
}

impl Default for CorpusConfig {
    fn default() -> CorpusConfig {
        CorpusConfig { max_size: 4, hom_budget: 50_000, seed: 0, chains: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusInfo {
    pub config: CorpusConfig,
    pub lattices: usize,
    pub homs: usize,
    /// Lattice pairs whose homs were sampled rather than enumerated.
    pub sampled_pairs: usize,
    pub chain_shapes: usize,
    pub chain_homs: usize,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub info: CorpusInfo,
    pub instances: Vec<Instance>,
}

/// Morphisms of the chain corpus: identities, `sat` on each shape, then a few
/// embeddings, collapses and composites.
pub fn chain_hom_terms() -> Vec<MorphTerm> {
    let shapes = chain_corpus();
    let w = ChainShape::parse("W").expect("shape");
    let mut out: Vec<MorphTerm> = shapes.iter().map(|s| MorphTerm::Identity { shape: s.clone() }).collect();
    out.extend(shapes.iter().map(|s| MorphTerm::Sat { shape: s.clone() }));
    out.push(MorphTerm::Embed {
        target: w.clone(),
        images: vec![ChainElt::at(0, 0), ChainElt::at(0, 2), ChainElt::limit(0)],
    });
    out.push(MorphTerm::Collapse {
        source: ChainShape::parse("W,F1").expect("shape"),
        target: ChainShape::parse("F3").expect("shape"),
        pieces: vec![
            Piece { upto: ChainElt::at(0, 0), value: ChainElt::at(0, 0) },
            Piece { upto: ChainElt::limit(0), value: ChainElt::at(0, 1) },
            Piece { upto: ChainElt::at(1, 0), value: ChainElt::at(0, 2) },
        ],
    });
    out.push(MorphTerm::Compose {
        first: Box::new(MorphTerm::Identity { shape: w.clone() }),
        then: Box::new(MorphTerm::Sat { shape: w }),
    });
    out
}

/// The down-set lattices of all posets with `1..=max_size` elements, in enumeration order.
pub fn lattice_cases(max_size: usize) -> Result<Vec<Arc<LatticeCase>>> {
    if max_size > ENUMERATION_CAP {
        return Err(Error::Capacity(format!("posets are enumerated up to {ENUMERATION_CAP} elements")));
    }
    let mut out = Vec::new();
    for n in 1..=max_size {
        for (i, p) in enumerate_posets(n)?.into_iter().enumerate() {
            out.push(Arc::new(LatticeCase::new(format!("D(P{n}.{i})"), p)?));
        }
    }
    Ok(out)
}

pub fn hom_cases(lats: &[Arc<LatticeCase>], budget: usize, seed: u64) -> Result<(Vec<Arc<HomCase>>, usize)> {
    let mut out = Vec::new();
    let mut sampled = 0;
    if budget == 0 {
        return Ok((out, 0));
    }
    for (i, a) in lats.iter().enumerate() {
        for (j, b) in lats.iter().enumerate() {
            let pair_seed = seed.wrapping_add((i * lats.len() + j) as u64);
            let e = enumerate_homs(&a.lat, &b.lat, budget, pair_seed);
            if !e.exhaustive {
                sampled += 1;
            }
            for m in e.maps {
                let hom = LatticeHom::new(a.lat.clone(), b.lat.clone(), m)?;
                let dual = dual_of_hom_between(&hom, b.space.clone(), a.space.clone())?;
                out.push(Arc::new(HomCase { dom: a.clone(), cod: b.clone(), hom, dual, profile: OnceLock::new() }));
            }
        }
    }
    Ok((out, sampled))
}

impl Corpus {
    pub fn build(config: CorpusConfig) -> Result<Corpus> {
        let lats = lattice_cases(config.max_size)?;
        let (homs, sampled_pairs) = hom_cases(&lats, config.hom_budget, config.seed)?;
        let (chains, chain_homs) = if config.chains {
            let c = chain_corpus().into_iter().map(|s| ChainCase::new(s).map(Arc::new)).collect::<Result<Vec<_>>>()?;
            let h = chain_hom_terms().iter().map(|t| ChainHomCase::new(t).map(Arc::new)).collect::<Result<Vec<_>>>()?;
            (c, h)
        } else {
            (Vec::new(), Vec::new())
        };
        let info = CorpusInfo {
            config,
            lattices: lats.len(),
            homs: homs.len(),
            sampled_pairs,
            chain_shapes: chains.len(),
            chain_homs: chain_homs.len(),
        };
        let mut instances: Vec<Instance> = lats.into_iter().map(Instance::Lattice).collect();
        instances.extend(homs.into_iter().map(Instance::Hom));
        instances.extend(chains.into_iter().map(Instance::Chain));
        instances.extend(chain_homs.into_iter().map(Instance::ChainHom));
        Ok(Corpus { info, instances })
    }
}

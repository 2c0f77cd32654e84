//! Counterexample search for claims: the finite corpus first, then the chains.

use super::corpus::{chain_hom_terms, hom_cases, lattice_cases, ChainCase, ChainHomCase, CorpusConfig, Instance};
use super::{find_law, run_law, Polarity, Verdict, Witness};
use crate::chainfrm::chain_corpus;
use crate::error::{Error, Result};
use serde::Serialize;
use std::sync::Arc;

/// What was searched without finding a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExhaustionCertificate {
    pub scope: String,
    pub max_size: usize,
    pub hom_budget: usize,
    pub seed: u64,
    pub instances: usize,
    /// Lattice pairs whose homs were sampled; zero means the scope was exhaustive.
    pub sampled_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchOutcome {
    pub claim: String,
    pub anchor: String,
    pub certificates: Vec<ExhaustionCertificate>,
    pub witness: Option<Witness>,
}

fn first_witness(claim: &str, insts: impl IntoIterator<Item = Instance>, count: &mut usize) -> Option<Witness> {
    let law = find_law(claim).expect("registered");
    for inst in insts {
        *count += 1;
        if let Verdict::Fail(detail) = run_law(law, &inst) {
            return Some(Witness::new(&inst, detail));
        }
    }
    None
}

/// The first witness in canonical order, with a certificate for each scope
/// exhausted on the way.
pub fn search(claim: &str, config: CorpusConfig) -> Result<SearchOutcome> {
    let law = find_law(claim)?;
    if law.polarity != Polarity::Claim {
        return Err(Error::Input(format!("{claim} is a theorem; use laws")));
    }
    let mut outcome = SearchOutcome {
        claim: law.id.to_string(),
        anchor: law.anchor.to_string(),
        certificates: Vec::new(),
        witness: None,
    };

    let lats = lattice_cases(config.max_size)?;
    let mut count = 0;
    outcome.witness = first_witness(law.id, lats.iter().cloned().map(Instance::Lattice), &mut count);
    let mut sampled_pairs = 0;
    if outcome.witness.is_none() {
        let (homs, sampled) = hom_cases(&lats, config.hom_budget, config.seed)?;
        sampled_pairs = sampled;
        outcome.witness = first_witness(law.id, homs.into_iter().map(Instance::Hom), &mut count);
    }
    if outcome.witness.is_some() {
        return Ok(outcome);
    }
    outcome.certificates.push(ExhaustionCertificate {
        scope: "finite".into(),
        max_size: config.max_size,
        hom_budget: config.hom_budget,
        seed: config.seed,
        instances: count,
        sampled_pairs,
    });
    if !config.chains {
        return Ok(outcome);
    }

    let mut count = 0;
    let chains = chain_corpus().into_iter().map(|s| ChainCase::new(s).map(|c| Instance::Chain(Arc::new(c))));
    let chains = chains.collect::<Result<Vec<_>>>()?;
    outcome.witness = first_witness(law.id, chains, &mut count);
    if outcome.witness.is_none() {
        let terms = chain_hom_terms();
        let homs = terms.iter().map(|t| ChainHomCase::new(t).map(|h| Instance::ChainHom(Arc::new(h))));
        let homs = homs.collect::<Result<Vec<_>>>()?;
        outcome.witness = first_witness(law.id, homs, &mut count);
    }
    if outcome.witness.is_none() {
        outcome.certificates.push(ExhaustionCertificate {
            scope: "chains".into(),
            max_size: 0,
            hom_budget: 0,
            seed: config.seed,
            instances: count,
            sampled_pairs: 0,
        });
    }
    Ok(outcome)
}

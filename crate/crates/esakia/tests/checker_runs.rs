use esakia::chainfrm::{ChainShape, MorphTerm};
use esakia::checker::corpus::{ChainHomCase, LatticeCase};
use esakia::checker::{find_law, run_law, search, sweep, Corpus, CorpusConfig, Instance, Status, Verdict};
use esakia::poset::FinPoset;
use std::sync::Arc;

fn lattice(label: &str, p: FinPoset) -> Instance {
    Instance::Lattice(Arc::new(LatticeCase::new(label.into(), p).unwrap()))
}

#[test]
fn single_runs() {
    let square = lattice("2x2", FinPoset::antichain(2));
    let three = lattice("3", FinPoset::chain(2));
    assert_eq!(run_law(find_law("KER3").unwrap(), &square), Verdict::Pass);
    assert_eq!(run_law(find_law("REG-FORMULA").unwrap(), &three), Verdict::Pass);
    let sat = MorphTerm::Sat { shape: ChainShape::parse("W").unwrap() };
    let sat = Instance::ChainHom(Arc::new(ChainHomCase::new(&sat).unwrap()));
    assert_eq!(run_law(find_law("PROPER-EQ").unwrap(), &sat), Verdict::Pass);
    // hom laws do not apply to a lattice
    assert_eq!(run_law(find_law("PROPER-EQ").unwrap(), &three), Verdict::Skip);
    // the 3-chain is not Boolean, so the biset law has nothing to check
    assert_eq!(run_law(find_law("BISET").unwrap(), &three), Verdict::Skip);
    assert!(matches!(run_law(find_law("nonregular-frame").unwrap(), &three), Verdict::Fail(_)));
}

#[test]
fn chain_corpus_has_a_uniformly_false_profile() {
    let cfg = CorpusConfig { max_size: 0, hom_budget: 0, seed: 0, chains: true };
    let corpus = Corpus::build(cfg).unwrap();
    let ids: Vec<String> = ["PROPER-EQ", "PROPER-SHARP", "PROPER-TRIPLE"].map(String::from).to_vec();
    let report = sweep(&corpus, &ids, false).unwrap();
    assert!(report.passed());
    let all_false = corpus
        .instances
        .iter()
        .filter_map(|i| match i {
            Instance::ChainHom(h) => h.profile().as_ref().ok().map(|p| p.as_array()),
            _ => None,
        })
        .filter(|p| *p == [false; 5])
        .count();
    assert!(all_false >= 1);
}

#[test]
fn zero_budget_skips_morphism_laws() {
    let cfg = CorpusConfig { max_size: 3, hom_budget: 0, seed: 0, chains: false };
    let corpus = Corpus::build(cfg).unwrap();
    let report = sweep(&corpus, &[], false).unwrap();
    assert_eq!(report.law("PROPER-EQ").unwrap().status, Status::Skipped);
    assert_eq!(report.law("EXTEND").unwrap().checked, 0);
    assert_eq!(report.law("KER3").unwrap().status, Status::Pass);
    assert_eq!(report.law("KER3").unwrap().checked, 8);
}

#[test]
fn reports_are_deterministic_without_timing() {
    let cfg = CorpusConfig { max_size: 3, hom_budget: 200, seed: 3, chains: true };
    let a = sweep(&Corpus::build(cfg).unwrap(), &[], false).unwrap();
    let b = sweep(&Corpus::build(cfg).unwrap(), &[], false).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.laws.windows(2).all(|w| w[0].law_id < w[1].law_id));
}

#[test]
fn searches() {
    let cfg = CorpusConfig::default();
    let found = search("nonregular-frame", cfg).unwrap();
    let w = found.witness.unwrap();
    assert!(found.certificates.is_empty());
    // the three-element chain, smallest non-Boolean frame
    assert_eq!(w.data["lattice"]["n"], 3);
    let finite = search("nonproper-hom", CorpusConfig { chains: false, ..cfg }).unwrap();
    assert!(finite.witness.is_none());
    assert_eq!(finite.certificates.len(), 1);
    assert!(search("KER3", cfg).is_err());
}

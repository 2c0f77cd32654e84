//! Release criteria, one PASS/FAIL line each.

use esakia::chainfrm::{
    chain_corpus, validate_shape, ChainDualMap, ChainMorphism, ChainShape, ChainSpace, DepthWindow,
};
use esakia::checker::corpus::lattice_cases;
use esakia::checker::{search, sweep, Corpus, CorpusConfig, Instance, Polarity};
use esakia::dlattice::{FinDLat, LatticeHom};
use esakia::hierarchy::classify_chain;
use esakia::poset::enumerate_posets;
use esakia::priestley::{
    dual_of_hom_between, extend_map, is_l_morphism, properness_profile, unit_checks, FiniteMorphism, FiniteSpace,
    PriestleySpace,
};
use esakia::spaces::{hofmann_mislove, is_proper_localic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn require(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn shape(s: &str) -> ChainShape {
    ChainShape::parse(s).unwrap()
}

fn duality_roundtrip() -> Outcome {
    let mut n_checked = 0;
    for n in 1..=5 {
        for (i, p) in enumerate_posets(n).map_err(|e| e.to_string())?.into_iter().enumerate() {
            let lat = FinDLat::birkhoff(&p).map_err(|e| e.to_string())?;
            let r = unit_checks(&lat).map_err(|e| e.to_string())?;
            require(r.passed(), format!("P{n}.{i}: {r:?}"))?;
            n_checked += 1;
        }
    }
    // 1 + 2 + 5 + 16 + 63 posets up to isomorphism
    require(n_checked == 87, format!("{n_checked} posets"))?;
    Ok(format!("{n_checked} lattices"))
}

fn law_sweep(corpus: &Corpus) -> Outcome {
    let report = sweep(corpus, &[], true).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = report.laws.iter().filter(|l| l.failed > 0).map(|l| l.law_id.as_str()).collect();
    require(failed.is_empty(), format!("failing laws: {failed:?}"))?;
    let info = &corpus.info;
    require(info.chain_shapes == 6 && info.sampled_pairs == 0, format!("{info:?}"))?;
    Ok(format!(
        "{} laws over {} lattices, {} homs, {} chains",
        report.laws.len(),
        info.lattices,
        info.homs,
        info.chain_shapes
    ))
}

fn finite_collapse(corpus: &Corpus) -> Outcome {
    let mut count = 0;
    for inst in &corpus.instances {
        let Instance::Lattice(c) = inst else { continue };
        let lat = &c.lat;
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                require(c.wb.holds(a, b) == lat.le(a, b), format!("{}: {a} << {b}", c.label))?;
            }
        }
        let f = c.frame;
        require(f.spatial && f.continuous && f.stably_compact, format!("{}: {f:?}", c.label))?;
        require(f.regular == f.boolean_algebra, format!("{}: {f:?}", c.label))?;
        count += 1;
    }
    require(count == 24, format!("{count} lattices"))?;
    Ok(format!("{count} lattices"))
}

fn strict_hierarchy() -> Outcome {
    let w = classify_chain(&shape("W")).map_err(|e| e.to_string())?;
    require(w.frame.continuous && w.frame.stably_continuous && !w.frame.compact, format!("W: {:?}", w.frame))?;
    let w1 = classify_chain(&shape("W,F1")).map_err(|e| e.to_string())?;
    require(w1.frame.stably_compact && !w1.frame.regular, format!("W,F1: {:?}", w1.frame))?;
    require(w.sides_agree && w1.sides_agree, "frame and space tiers differ")?;
    let x = ChainSpace::new(shape("W")).map_err(|e| e.to_string())?;
    require(x.nonlocalic_count() == 1 && x.props().is_SL, "dual of W")?;
    Ok(format!("W at {}, W,F1 at {}", w.position, w1.position))
}

fn nonproper_witness() -> Outcome {
    let outcome = search("nonproper-hom", CorpusConfig::default()).map_err(|e| e.to_string())?;
    let cert = outcome.certificates.first().ok_or("no certificate for the finite corpus")?;
    require(cert.scope == "finite" && cert.sampled_pairs == 0, format!("{cert:?}"))?;
    let w = outcome.witness.ok_or("no witness")?;
    let expected = serde_json::json!({ "op": "sat", "shape": shape("W") });
    require(w.data["term"] == expected, format!("witness {}", w.instance))?;
    let f = ChainDualMap::new(ChainMorphism::sat(&shape("W"))).map_err(|e| e.to_string())?;
    let p = properness_profile(&f).map_err(|e| e.to_string())?;
    require(p.as_array() == [false; 5], format!("{p:?}"))?;
    require(!is_proper_localic(&f), "restriction to localic parts is proper")?;
    Ok(format!("finite corpus exhausted ({} instances), witness {}", cert.instances, w.instance))
}

fn hofmann_mislove_everywhere(corpus: &Corpus) -> Outcome {
    let mut count = 0;
    for inst in &corpus.instances {
        let hm = match inst {
            Instance::Lattice(c) => hofmann_mislove(&*c.space),
            Instance::Chain(c) => hofmann_mislove(&c.space),
            _ => continue,
        };
        require(
            hm.bijective && hm.order_isomorphism && hm.scott_upsets == hm.compact_saturated,
            format!("{}: {hm:?}", inst.label()),
        )?;
        count += 1;
    }
    require(count == 30, format!("{count} spaces"))?;
    Ok(format!("{count} spaces"))
}

/// A seeded random monotone map between point orders, or `None` when a
/// point has no upper bound for the images below it.
fn random_monotone(rng: &mut ChaCha8Rng, dom: &FiniteSpace, cod: &FiniteSpace) -> Option<Vec<usize>> {
    let (d, c) = (dom.order(), cod.order());
    let mut map = vec![usize::MAX; d.len()];
    for x in d.linear_extension() {
        let allowed: Vec<usize> =
            (0..c.len()).filter(|&z| (0..d.len()).all(|y| !d.lt(y, x) || c.le(map[y], z))).collect();
        if allowed.is_empty() {
            return None;
        }
        map[x] = allowed[rng.gen_range(0..allowed.len())];
    }
    Some(map)
}

fn extension_law() -> Outcome {
    let lats = lattice_cases(4).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0;
    let mut attempts = 0;
    while cases < 1000 {
        attempts += 1;
        require(attempts < 100_000, "sampler stalled")?;
        let (a, b) = (&lats[rng.gen_range(0..lats.len())], &lats[rng.gen_range(0..lats.len())]);
        let Some(g) = random_monotone(&mut rng, &a.space, &b.space) else { continue };
        let ext = extend_map(&*a.space, &*b.space, &|p| g[p]).map_err(|e| e.to_string())?;
        let pm: Vec<usize> = (0..a.space.len()).map(|p| ext[&p]).collect();
        require(pm == g, format!("{} -> {}: extension moves the map", a.label, b.label))?;
        let f = FiniteMorphism::new(a.space.clone(), b.space.clone(), pm).map_err(|e| e.to_string())?;
        require(is_l_morphism(&f), "extension is not an L-morphism")?;
        // the unique extension is the dual of the frame map `b -> a` that `g` induces
        let h: Vec<usize> = (0..b.lat.len())
            .map(|e| {
                let pulled = (0..a.space.len()).filter(|&p| b.space.in_phi(g[p], e)).collect();
                a.space.index_of(pulled).expect("preimage of an upset is an upset")
            })
            .collect();
        let hom = LatticeHom::new(b.lat.clone(), a.lat.clone(), h).map_err(|e| e.to_string())?;
        let dual = dual_of_hom_between(&hom, a.space.clone(), b.space.clone()).map_err(|e| e.to_string())?;
        require(dual.point_map() == g.as_slice(), "extension differs from the dual of the induced map")?;
        cases += 1;
    }
    let mut chain_cases = 0;
    for s in chain_corpus() {
        let x = ChainSpace::new(s.clone()).map_err(|e| e.to_string())?;
        let id = extend_map(&x, &x, &|p| p).map_err(|e| e.to_string())?;
        require(id.iter().all(|(p, q)| p == q), format!("{s}: identity does not extend to itself"))?;
        for target in x.points().into_iter().filter(|&p| x.is_localic(p)) {
            let constant = extend_map(&x, &x, &|_| target).map_err(|e| e.to_string())?;
            require(constant.values().all(|&q| q == target), format!("{s}: constant {target} does not extend"))?;
        }
        chain_cases += 1;
    }
    Ok(format!("{cases} finite maps, identity and constants on {chain_cases} chains"))
}

fn closed_homs(corpus: &Corpus) -> Outcome {
    let mut count = 0;
    for inst in &corpus.instances {
        let Instance::Hom(h) = inst else { continue };
        if !h.dom.frame.boolean_algebra {
            continue;
        }
        let r = h.hom.right_adjoint();
        let (d, c) = (&*h.hom.dom, &*h.hom.cod);
        for a in 0..d.len() {
            for b in 0..c.len() {
                require(d.le(r[c.join(h.hom.apply(a), b)], d.join(a, r[b])), format!("{}: a={a} b={b}", inst.label()))?;
            }
        }
        count += 1;
    }
    require(count > 0, "no homs out of Boolean frames")?;
    Ok(format!("{count} homs out of Boolean frames"))
}

fn oracle_stabilization() -> Outcome {
    let window = DepthWindow::default();
    require(window.depths().count() >= 4, "window shorter than 4 depths")?;
    let shapes = chain_corpus();
    require(shapes.len() == 6, "corpus is not 6 shapes")?;
    for s in &shapes {
        let r = validate_shape(s, window).map_err(|e| e.to_string())?;
        if let Some(c) = r.checks.iter().find(|c| !c.passed()) {
            return Err(format!("{s}: {c:?}"));
        }
    }
    Ok(format!("6 shapes over depths {}..{}", window.start, window.end))
}

#[test]
fn acceptance_criteria() {
    let corpus = Corpus::build(CorpusConfig::default()).expect("default corpus");
    assert!(esakia::checker::registry().iter().any(|l| l.polarity == Polarity::Claim));
    let criteria: Vec<Criterion> = vec![
        ("duality roundtrip", Box::new(duality_roundtrip)),
        ("law sweep", Box::new(|| law_sweep(&corpus))),
        ("finite collapse", Box::new(|| finite_collapse(&corpus))),
        ("strict hierarchy witnesses", Box::new(strict_hierarchy)),
        ("non-proper witness", Box::new(nonproper_witness)),
        ("Hofmann-Mislove bijection", Box::new(|| hofmann_mislove_everywhere(&corpus))),
        ("extension law", Box::new(extension_law)),
        ("closed-homomorphism law", Box::new(|| closed_homs(&corpus))),
        ("oracle stabilization", Box::new(oracle_stabilization)),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("PASS {} {name}: {note}", i + 1),
            Err(why) => {
                println!("FAIL {} {name}: {why}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
}

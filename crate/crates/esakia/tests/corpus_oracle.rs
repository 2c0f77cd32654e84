//! Counts behind the corpus, recomputed by brute force.

use esakia::checker::corpus::{hom_cases, lattice_cases};
use esakia::poset::{enumerate_posets, FinPoset};

/// All partial orders on `0..n` as relation bitmaps.
fn labelled_orders(n: usize) -> Vec<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out = Vec::new();
    for bits in 0u64..(1 << pairs.len()) {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            le[a * n + b] = bits >> k & 1 == 1;
        }
        let antisymmetric = pairs.iter().all(|&(a, b)| !(le[a * n + b] && le[b * n + a]));
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le[a * n + b] && le[b * n + c]) || le[a * n + c])));
        if antisymmetric && transitive {
            out.push(le);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn iso_classes(n: usize) -> usize {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    for le in labelled_orders(n) {
        let canon =
            perms.iter().map(|p| (0..n * n).map(|k| le[p[k / n] * n + p[k % n]]).collect::<Vec<bool>>()).min().unwrap();
        seen.insert(canon);
    }
    seen.len()
}

#[test]
fn poset_counts_match_brute_force() {
    let labelled: Vec<usize> = (1..=4).map(|n| labelled_orders(n).len()).collect();
    assert_eq!(labelled, [1, 3, 19, 219]);
    for n in 1..=4 {
        assert_eq!(enumerate_posets(n).unwrap().len(), iso_classes(n), "n = {n}");
    }
    assert_eq!(enumerate_posets(5).unwrap().len(), 63);
}

fn monotone_maps(from: &FinPoset, to: &FinPoset) -> usize {
    let (m, n) = (from.len(), to.len());
    (0..n.pow(m as u32))
        .filter(|&code| {
            let f: Vec<usize> = (0..m).map(|i| code / n.pow(i as u32) % n).collect();
            (0..m).all(|a| (0..m).all(|b| !from.le(a, b) || to.le(f[a], f[b])))
        })
        .count()
}

/// Bounded lattice homs `D(P) -> D(Q)` match monotone maps `Q -> P`.
#[test]
fn hom_counts_match_monotone_maps() {
    let lats = lattice_cases(4).unwrap();
    assert_eq!(lats.len(), 24);
    let (homs, sampled) = hom_cases(&lats, 50_000, 0).unwrap();
    assert_eq!(sampled, 0);
    let expected: usize = lats.iter().flat_map(|a| lats.iter().map(|b| monotone_maps(&b.poset, &a.poset))).sum();
    assert_eq!(homs.len(), expected);
    assert_eq!(expected, 19_702);
}

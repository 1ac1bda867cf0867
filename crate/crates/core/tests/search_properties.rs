mod common;

use std::collections::BTreeSet;

use chordcycles::exact_g;
use chordcycles::graph::ChordedCycleGraph;
use chordcycles::oracle::{enumerate_cycles, has_repeated_length, upper_bound};
use chordcycles::search::{
    exact_g_with, repeat_free_chord_sets, IncrementalSpectrum, SearchOptions, DEFAULT_NODE_BUDGET,
};
use rand::Rng;

fn chords_of(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|u| (u + 2..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(u == 1 && v == n))
        .collect()
}

/// Every chord subset of `C_n` whose enumerated spectrum has no repeat.
fn brute_force_repeat_free(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let chords = chords_of(n);
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << chords.len() {
        let set: Vec<(usize, usize)> = chords
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        let g = ChordedCycleGraph::new(n, set.clone()).unwrap();
        if common::checked_spectrum(&g).unwrap().1 {
            out.insert(set);
        }
    }
    out
}

#[test]
fn search_agrees_with_brute_force() {
    for n in 3..=7 {
        let brute = brute_force_repeat_free(n);
        let (listed, complete) = repeat_free_chord_sets(n, false, u64::MAX).unwrap();
        assert!(complete);
        let listed: BTreeSet<Vec<(usize, usize)>> =
            listed.iter().map(|g| g.chords().to_vec()).collect();
        assert_eq!(listed, brute, "n = {n}");

        let best = brute.iter().map(Vec::len).max().unwrap();
        let least = brute.iter().filter(|s| s.len() == best).min().unwrap();
        let r = exact_g(n, DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.g_value, n + best, "n = {n}");
        assert_eq!(r.witness.chords(), least.as_slice(), "n = {n}");
    }
}

#[test]
fn canonical_sets_cover_every_orbit() {
    for n in 5..=10 {
        let (all, _) = repeat_free_chord_sets(n, false, u64::MAX).unwrap();
        let (canonical, _) = repeat_free_chord_sets(n, true, u64::MAX).unwrap();
        let canonical: BTreeSet<Vec<(usize, usize)>> =
            canonical.iter().map(|g| g.chords().to_vec()).collect();
        let orbit_min = |chords: &[(usize, usize)]| -> Vec<(usize, usize)> {
            let mut best: Option<Vec<(usize, usize)>> = None;
            for shift in 0..n {
                for flip in [false, true] {
                    let map = |v: usize| {
                        let w = if flip { n + 1 - v } else { v };
                        (w - 1 + shift) % n + 1
                    };
                    let mut image: Vec<(usize, usize)> = chords
                        .iter()
                        .map(|&(u, v)| {
                            let (a, b) = (map(u), map(v));
                            (a.min(b), a.max(b))
                        })
                        .collect();
                    image.sort_unstable();
                    if best.as_ref().is_none_or(|b| image < *b) {
                        best = Some(image);
                    }
                }
            }
            best.unwrap()
        };
        let orbits: BTreeSet<Vec<(usize, usize)>> =
            all.iter().map(|g| orbit_min(g.chords())).collect();
        assert_eq!(orbits, canonical, "n = {n}");
        for g in &all {
            common::checked_spectrum(g).unwrap();
        }
    }
}

#[test]
fn incremental_matches_full_enumeration() {
    let mut rng = common::rng(31);
    for _ in 0..300 {
        let n = rng.gen_range(4..=10);
        let order = common::random_chords(&mut rng, n, 6);
        let mut inc = IncrementalSpectrum::new(n).unwrap();
        let mut kept = Vec::new();
        for (u, v) in order {
            let mut trial = kept.clone();
            trial.push((u, v));
            let full =
                enumerate_cycles(&ChordedCycleGraph::new(n, trial.clone()).unwrap()).unwrap();
            match inc.add_chord(u, v) {
                Ok(()) => {
                    assert_eq!(has_repeated_length(&full), None);
                    assert_eq!(inc.spectrum(), full);
                    kept = trial;
                }
                Err(len) => {
                    assert!(
                        full.multiplicities().get(&len).copied().unwrap_or(0) >= 2,
                        "{trial:?}: {len}"
                    );
                    let before =
                        enumerate_cycles(&ChordedCycleGraph::new(n, kept.clone()).unwrap())
                            .unwrap();
                    assert_eq!(inc.spectrum(), before);
                }
            }
        }
    }
}

#[test]
fn repeats_survive_added_chords() {
    let mut rng = common::rng(32);
    let mut branches = 0;
    while branches < 100 {
        let n = rng.gen_range(5..=12);
        let count = rng.gen_range(1..=5);
        let chords = common::random_chords(&mut rng, n, count + 1);
        let (extra, base) = chords.split_last().unwrap();
        let g = ChordedCycleGraph::new(n, base.to_vec()).unwrap();
        let spectrum = enumerate_cycles(&g).unwrap();
        let Some(len) = has_repeated_length(&spectrum) else {
            continue;
        };
        branches += 1;
        let grown = ChordedCycleGraph::new(n, chords.clone()).unwrap();
        let grown_spectrum = enumerate_cycles(&grown).unwrap();
        assert!(
            grown_spectrum.multiplicities()[&len] >= 2,
            "{chords:?} extra {extra:?}"
        );
        for (l, m) in spectrum.multiplicities() {
            assert!(grown_spectrum.multiplicities()[&l] >= m);
        }
    }
}

#[test]
fn witnesses_are_sound_and_below_upper_bound() {
    for n in 3..=14 {
        let r = exact_g(n, DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.exhaustive, "n = {n}");
        assert_eq!(r.witness.edge_count(), r.g_value);
        let (spectrum, repeat_free) = common::checked_spectrum(&r.witness).unwrap();
        assert!(repeat_free, "n = {n}: {spectrum}");
        assert!(spectrum.contains(n));
        assert!((r.g_value as f64) < upper_bound(n as u64));
    }
    assert!(exact_g(7, DEFAULT_NODE_BUDGET).unwrap().g_value >= 8);
    assert!(exact_g(13, DEFAULT_NODE_BUDGET).unwrap().g_value >= 15);
}

#[test]
fn modes_agree_beyond_unit_scale() {
    for n in 9..=11 {
        let reference = exact_g_with(
            n,
            &SearchOptions {
                budget: DEFAULT_NODE_BUDGET,
                symmetry: false,
                parallel: false,
            },
        )
        .unwrap();
        let fast = exact_g_with(n, &SearchOptions::default()).unwrap();
        assert_eq!(
            (fast.g_value, &fast.witness),
            (reference.g_value, &reference.witness)
        );
        assert!(fast.nodes_explored < reference.nodes_explored);
    }
}

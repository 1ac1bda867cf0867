#![allow(dead_code)]

use chordcycles::graph::{ChordedCycleGraph, CycleSpectrum};
use chordcycles::oracle::{self, has_repeated_length, DEFAULT_CYCLE_BUDGET};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Enumerates `g` and, when it has no repeated length, checks both counting
/// bounds. Returns the spectrum and whether it was repeat-free.
pub fn checked_spectrum(g: &ChordedCycleGraph) -> Result<(CycleSpectrum, bool), String> {
    let spectrum =
        oracle::enumerate_cycles_with_budget(g, DEFAULT_CYCLE_BUDGET).map_err(|e| e.to_string())?;
    let repeat_free = has_repeated_length(&spectrum).is_none();
    let report =
        oracle::bound_report(g, &spectrum).map_err(|e| format!("{:?}: {e}", g.chords()))?;
    if repeat_free && !(report.basic_ok && report.refined_ok) {
        return Err(format!(
            "counting bound fails for {:?} on {} vertices",
            g.chords(),
            g.vertex_count()
        ));
    }
    Ok((spectrum, repeat_free))
}

/// A uniformly random subset of `{3..n-1}` with at most `max_size` elements, sorted.
pub fn random_s(rng: &mut StdRng, n: usize, max_size: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (3..n).collect();
    pool.shuffle(rng);
    let size = rng.gen_range(0..=max_size.min(pool.len()));
    let mut s = pool[..size].to_vec();
    s.sort_unstable();
    s
}

/// Random chords of `C_n` (distinct, non-adjacent endpoints).
pub fn random_chords(rng: &mut StdRng, n: usize, count: usize) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 2..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(u == 1 && v == n))
        .collect();
    all.shuffle(rng);
    all.truncate(count);
    all
}

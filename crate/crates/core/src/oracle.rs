//! Brute-force checks that do not rely on the closed-form spectrum: simple
//! cycle enumeration, the Sidon property, crossing chords, and the chord
//! counting bounds.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::graph::{ChordedCycleGraph, CycleSpectrum};

pub const DEFAULT_CYCLE_BUDGET: u64 = 1_000_000;

/// Tolerance for comparing the real-valued bounds.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("cycle budget of {budget} exceeded after {found} cycles")]
    BudgetExceeded { budget: u64, found: u64 },
    #[error("repeat-free graph violates a counting bound: {0}")]
    InternalInconsistency(String),
}

/// All simple cycles of `g`, with the default budget.
pub fn enumerate_cycles(g: &ChordedCycleGraph) -> Result<CycleSpectrum, OracleError> {
    enumerate_cycles_with_budget(g, DEFAULT_CYCLE_BUDGET)
}

/// Enumerates every simple cycle exactly once.
///
/// A cycle is found from its least vertex `s`, walking only through vertices
/// greater than `s`, and is kept in the direction whose second vertex is
/// smaller than its last.
pub fn enumerate_cycles_with_budget(
    g: &ChordedCycleGraph,
    budget: u64,
) -> Result<CycleSpectrum, OracleError> {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut lengths = Vec::new();
    let mut on_path = vec![false; n + 1];
    let mut path = Vec::with_capacity(n);
    for start in 1..=n {
        path.push(start);
        on_path[start] = true;
        walk(&adj, start, &mut path, &mut on_path, &mut lengths, budget)?;
        on_path[start] = false;
        path.pop();
    }
    Ok(CycleSpectrum::from_lengths(lengths))
}

fn walk(
    adj: &[Vec<usize>],
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    lengths: &mut Vec<usize>,
    budget: u64,
) -> Result<(), OracleError> {
    let last = *path.last().expect("path starts at `start`");
    for &next in &adj[last] {
        if next == start {
            if path.len() >= 3 && path[1] < last {
                if lengths.len() as u64 >= budget {
                    return Err(OracleError::BudgetExceeded {
                        budget,
                        found: lengths.len() as u64,
                    });
                }
                lengths.push(path.len());
            }
            continue;
        }
        if next < start || on_path[next] {
            continue;
        }
        on_path[next] = true;
        path.push(next);
        walk(adj, start, path, on_path, lengths, budget)?;
        path.pop();
        on_path[next] = false;
    }
    Ok(())
}

/// Smallest length occurring more than once.
pub fn has_repeated_length(spectrum: &CycleSpectrum) -> Option<usize> {
    spectrum
        .lengths()
        .windows(2)
        .find(|w| w[0] == w[1])
        .map(|w| w[0])
}

/// `a + b = c + d` with `a < b`, `c < d`, `{a, b} ≠ {c, d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SidonViolation {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

/// Checks that sums of pairs of distinct elements are all different.
pub fn is_sidon(s: &[u64]) -> Result<(), SidonViolation> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut sums = std::collections::HashMap::new();
    for (i, &a) in sorted.iter().enumerate() {
        for &b in &sorted[i + 1..] {
            if let Some(&(c, d)) = sums.get(&(a + b)) {
                return Err(SidonViolation {
                    a: c,
                    b: d,
                    c: a,
                    d: b,
                });
            }
            sums.insert(a + b, (a, b));
        }
    }
    Ok(())
}

/// Whether chords `{a, b}` and `{c, d}` (each with smaller endpoint first)
/// interleave around the cycle.
pub fn chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

/// Number of unordered pairs of crossing chords.
pub fn crossing_pairs(g: &ChordedCycleGraph) -> u64 {
    let chords = g.chords();
    let mut count = 0;
    for (i, &e) in chords.iter().enumerate() {
        for &f in &chords[i + 1..] {
            if chords_cross(e, f) {
                count += 1;
            }
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    pub c: u64,
    pub binom_k2: u64,
    /// `C(k,2) < n`.
    pub basic_ok: bool,
    /// `2c + (C(k,2) - c) <= n`.
    pub refined_ok: bool,
    /// `n + sqrt(2n) + 1`.
    pub upper_basic: f64,
    /// `n + sqrt(n - 3/4) - 3/2`.
    pub lower_thm1: f64,
}

/// Fills the bound report for `g`. `spectrum` must be the enumerated spectrum
/// of `g`; when it has no repeated length both counting bounds are required to
/// hold and a failure is reported as an inconsistency.
pub fn bound_report(
    g: &ChordedCycleGraph,
    spectrum: &CycleSpectrum,
) -> Result<BoundReport, OracleError> {
    let n = g.vertex_count() as u64;
    let k = g.chords().len() as u64;
    let c = crossing_pairs(g);
    let binom_k2 = arith::binom2(k);
    let report = BoundReport {
        n,
        k,
        c,
        binom_k2,
        basic_ok: binom_k2 < n,
        refined_ok: 2 * c + (binom_k2 - c) <= n,
        upper_basic: upper_bound(n),
        lower_thm1: singer_lower_bound(n),
    };
    if has_repeated_length(spectrum).is_none() && !(report.basic_ok && report.refined_ok) {
        return Err(OracleError::InternalInconsistency(format!(
            "n = {n}, k = {k}, c = {c}: C(k,2) = {binom_k2}"
        )));
    }
    Ok(report)
}

/// `n + sqrt(2n) + 1`, which the edge count of a repeat-free Hamiltonian graph stays below.
pub fn upper_bound(n: u64) -> f64 {
    let n = n as f64;
    n + (2.0 * n).sqrt() + 1.0
}

/// `n + sqrt(n - 3/4) - 3/2`; `NaN` for `n = 0`.
pub fn singer_lower_bound(n: u64) -> f64 {
    let n = n as f64;
    n + (n - 0.75).sqrt() - 1.5
}

/// `n + sqrt(n - 3/4) - 3/2` as an exact rational, when `n - 3/4` is the square
/// of a rational (i.e. `4n - 3` is a perfect square).
pub fn singer_lower_bound_exact(n: u64) -> Option<Ratio<i64>> {
    let root = arith::exact_sqrt((4 * n).checked_sub(3)?)?;
    let n = Ratio::from_integer(n as i64);
    Some(n + Ratio::new(root as i64, 2) - Ratio::new(3, 2))
}

/// Machine-readable verification result for one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub n: usize,
    pub edges: usize,
    pub chords: Vec<(usize, usize)>,
    pub spectrum: Vec<usize>,
    pub repeated: bool,
    pub repeated_length: Option<usize>,
    pub bounds: BoundReport,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Enumerates the cycles of `g` and assembles its report.
pub fn verify_graph(g: &ChordedCycleGraph, budget: u64) -> Result<VerificationReport, OracleError> {
    let spectrum = enumerate_cycles_with_budget(g, budget)?;
    let bounds = bound_report(g, &spectrum)?;
    let repeated_length = has_repeated_length(&spectrum);
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        n: g.vertex_count(),
        edges: g.edge_count(),
        chords: g.chords().to_vec(),
        spectrum: spectrum.lengths().to_vec(),
        repeated: repeated_length.is_some(),
        repeated_length,
        bounds,
    })
}

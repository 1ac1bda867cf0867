//! Exact values of the maximum edge count of an `n`-vertex Hamiltonian graph
//! with no repeated cycle length, by exhaustive search over chord sets of `C_n`.
//!
//! Chords of `C_n` are numbered in lexicographic order of `(u, v)`, `u < v`, and
//! chord sets are grown in increasing index order, so the depth-first preorder
//! visits sets lexicographically. Three prunings apply:
//!
//! * a set whose cycles already repeat a length is dropped with all supersets
//!   (adding a chord never destroys a cycle);
//! * depth is capped at the largest `k` with `C(k,2) < n`, and a branch is cut
//!   when even taking every remaining chord could not beat the incumbent;
//! * with symmetry reduction on, only sets that are lexicographically least in
//!   their orbit under the `2n` rotations and reflections of `C_n` are kept.
//!   Deleting the largest chord of such a set leaves a set with the same
//!   property, so every canonical set is still reached.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_chord, ChordedCycleGraph, CycleSpectrum, GRAPH6_MAX_VERTICES};

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("n = {0} is outside 3..={GRAPH6_MAX_VERTICES}")]
    InvalidOrder(usize),
    #[error("node budget must be at least 1")]
    ZeroBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes (repeat-free chord sets) to visit.
    pub budget: u64,
    /// Expand only dihedrally canonical chord sets.
    pub symmetry: bool,
    /// Explore root branches on the rayon pool.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_NODE_BUDGET,
            symmetry: true,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub n: usize,
    /// Largest edge count found.
    pub g_value: usize,
    /// Lexicographically least chord set achieving `g_value`.
    pub witness: ChordedCycleGraph,
    pub nodes_explored: u64,
    /// False when the node budget ran out; `g_value` is then only a lower bound.
    pub exhaustive: bool,
}

/// Largest `k` with `C(k,2) < n`.
pub fn chord_cap(n: usize) -> usize {
    let mut k = 0;
    while (k + 1) * k / 2 < n {
        k += 1;
    }
    k
}

/// The set of cycle lengths of a growing repeat-free graph on at most 62
/// vertices, updated by enumerating only the cycles through each new chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncrementalSpectrum {
    n: usize,
    /// Neighbor bitmask per vertex, vertex `v` at bit `v - 1`.
    adj: Vec<u64>,
    /// Bit `l` set when a cycle of length `l` exists.
    lengths: u64,
}

impl IncrementalSpectrum {
    /// The plain cycle `C_n`.
    pub fn new(n: usize) -> Result<Self, SearchError> {
        if !(3..=GRAPH6_MAX_VERTICES).contains(&n) {
            return Err(SearchError::InvalidOrder(n));
        }
        let mut adj = vec![0u64; n];
        for i in 0..n {
            let j = (i + 1) % n;
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(IncrementalSpectrum {
            n,
            adj,
            lengths: 1 << n,
        })
    }

    /// Adds chord `{u, v}` (1-indexed). Returns a repeated length, leaving
    /// `self` unchanged, if the new cycles collide with each other or with
    /// existing ones.
    pub fn add_chord(&mut self, u: usize, v: usize) -> Result<(), usize> {
        let (s, t) = (u - 1, v - 1);
        let mut fresh = 0u64;
        let mut repeat = None;
        self.paths(s, t, 1 << s, 1, &mut fresh, &mut repeat);
        if let Some(len) = repeat {
            return Err(len);
        }
        self.adj[s] |= 1 << t;
        self.adj[t] |= 1 << s;
        self.lengths |= fresh;
        Ok(())
    }

    /// Depth-first walk over simple paths from `at` to `target`; a path with
    /// `edges` edges closes a cycle of length `edges + 1` with the new chord.
    fn paths(
        &self,
        at: usize,
        target: usize,
        visited: u64,
        edges: usize,
        fresh: &mut u64,
        repeat: &mut Option<usize>,
    ) {
        let mut next = self.adj[at] & !visited;
        while next != 0 && repeat.is_none() {
            let y = next.trailing_zeros() as usize;
            next &= next - 1;
            if y == target {
                let bit = 1u64 << (edges + 1);
                if (self.lengths | *fresh) & bit != 0 {
                    *repeat = Some(edges + 1);
                    return;
                }
                *fresh |= bit;
            } else {
                self.paths(y, target, visited | (1 << y), edges + 1, fresh, repeat);
            }
        }
    }

    pub fn lengths(&self) -> Vec<usize> {
        (3..=self.n)
            .filter(|&l| self.lengths & (1 << l) != 0)
            .collect()
    }

    pub fn spectrum(&self) -> CycleSpectrum {
        CycleSpectrum::from_lengths(self.lengths())
    }
}

/// All chords of `C_n`, lexicographically.
fn all_chords(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| is_chord(n, u, v))
        .collect()
}

/// Dihedral images of vertex labels, one permutation per group element except the identity.
fn dihedral_maps(n: usize) -> Vec<Vec<usize>> {
    let mut maps = Vec::with_capacity(2 * n - 1);
    for shift in 0..n {
        for flip in [false, true] {
            if shift == 0 && !flip {
                continue;
            }
            let map = (0..=n)
                .map(|v| {
                    if v == 0 {
                        return 0;
                    }
                    let r = if flip { (n - (v - 1)) % n } else { v - 1 };
                    (r + shift) % n + 1
                })
                .collect();
            maps.push(map);
        }
    }
    maps
}

struct Walker<'a> {
    chords: &'a [(usize, usize)],
    maps: Option<&'a [Vec<usize>]>,
    cap: usize,
    budget: u64,
    nodes: &'a AtomicU64,
    truncated: &'a AtomicBool,
}

impl Walker<'_> {
    fn is_canonical(&self, chosen: &[usize]) -> bool {
        let Some(maps) = self.maps else { return true };
        let current: Vec<(usize, usize)> = chosen.iter().map(|&i| self.chords[i]).collect();
        let mut image = Vec::with_capacity(current.len());
        maps.iter().all(|map| {
            image.clear();
            image.extend(current.iter().map(|&(u, v)| {
                let (a, b) = (map[u], map[v]);
                (a.min(b), a.max(b))
            }));
            image.sort_unstable();
            image >= current
        })
    }

    /// Counts one node; false once the budget is spent.
    fn visit(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.truncated.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Extends `chosen` (a repeat-free, canonical set whose state is `state`)
    /// with chords of index `>= from`, recording strictly larger sets in `best`.
    fn maximize(
        &self,
        state: &IncrementalSpectrum,
        chosen: &mut Vec<usize>,
        from: usize,
        best: &mut Vec<usize>,
    ) {
        if !self.visit() {
            return;
        }
        if chosen.len() > best.len() {
            best.clone_from(chosen);
        }
        if chosen.len() >= self.cap {
            return;
        }
        for idx in from..self.chords.len() {
            let reachable = self.cap.min(chosen.len() + self.chords.len() - idx);
            if reachable <= best.len() || self.truncated.load(Ordering::Relaxed) {
                break;
            }
            if let Some(next) = self.child(state, chosen, idx) {
                self.maximize(&next, chosen, idx + 1, best);
                chosen.pop();
            }
        }
    }

    /// Visits every repeat-free canonical extension of `chosen`, without bounds.
    fn enumerate(
        &self,
        state: &IncrementalSpectrum,
        chosen: &mut Vec<usize>,
        from: usize,
        out: &mut dyn FnMut(&[usize]),
    ) {
        if !self.visit() {
            return;
        }
        out(chosen);
        for idx in from..self.chords.len() {
            if let Some(next) = self.child(state, chosen, idx) {
                self.enumerate(&next, chosen, idx + 1, out);
                chosen.pop();
            }
        }
    }

    /// Pushes chord `idx` onto `chosen` when the result is repeat-free and canonical.
    fn child(
        &self,
        state: &IncrementalSpectrum,
        chosen: &mut Vec<usize>,
        idx: usize,
    ) -> Option<IncrementalSpectrum> {
        let (u, v) = self.chords[idx];
        let mut next = state.clone();
        next.add_chord(u, v).ok()?;
        chosen.push(idx);
        if self.is_canonical(chosen) {
            Some(next)
        } else {
            chosen.pop();
            None
        }
    }
}

/// [`exact_g_with`] using default options and the given node budget.
pub fn exact_g(n: usize, budget: u64) -> Result<ExactResult, SearchError> {
    exact_g_with(
        n,
        &SearchOptions {
            budget,
            ..SearchOptions::default()
        },
    )
}

/// Exhaustive search for the largest repeat-free chord set of `C_n`.
///
/// The chord sets starting with each first chord are searched independently
/// (in parallel when enabled) and combined by size, then by lexicographic
/// order, so the result does not depend on scheduling.
pub fn exact_g_with(n: usize, options: &SearchOptions) -> Result<ExactResult, SearchError> {
    if options.budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    let root = IncrementalSpectrum::new(n)?;
    let chords = all_chords(n);
    let maps = dihedral_maps(n);
    let nodes = AtomicU64::new(0);
    let truncated = AtomicBool::new(false);
    let walker = Walker {
        chords: &chords,
        maps: options.symmetry.then_some(maps.as_slice()),
        cap: chord_cap(n),
        budget: options.budget,
        nodes: &nodes,
        truncated: &truncated,
    };

    let mut best: Vec<usize> = Vec::new();
    if walker.visit() && walker.cap > 0 {
        let branch = |idx: usize| -> Vec<usize> {
            let mut chosen = Vec::new();
            let mut local = Vec::new();
            if let Some(state) = walker.child(&root, &mut chosen, idx) {
                walker.maximize(&state, &mut chosen, idx + 1, &mut local);
            }
            local
        };
        let results: Vec<Vec<usize>> = if options.parallel {
            (0..chords.len()).into_par_iter().map(branch).collect()
        } else {
            (0..chords.len()).map(branch).collect()
        };
        for r in results {
            if r.len() > best.len() {
                best = r;
            }
        }
    }

    let witness = ChordedCycleGraph::new(n, best.iter().map(|&i| chords[i]))
        .expect("search only uses chords of C_n");
    let exhaustive = !truncated.load(Ordering::Relaxed);
    Ok(ExactResult {
        n,
        g_value: witness.edge_count(),
        witness,
        nodes_explored: nodes.load(Ordering::Relaxed).min(options.budget),
        exhaustive,
    })
}

/// Every repeat-free chord set of `C_n` (only dihedrally canonical ones when
/// `symmetry` is set), in lexicographic order, up to `budget` sets.
pub fn repeat_free_chord_sets(
    n: usize,
    symmetry: bool,
    budget: u64,
) -> Result<(Vec<ChordedCycleGraph>, bool), SearchError> {
    let root = IncrementalSpectrum::new(n)?;
    let chords = all_chords(n);
    let maps = dihedral_maps(n);
    let nodes = AtomicU64::new(0);
    let truncated = AtomicBool::new(false);
    let walker = Walker {
        chords: &chords,
        maps: symmetry.then_some(maps.as_slice()),
        cap: usize::MAX,
        budget,
        nodes: &nodes,
        truncated: &truncated,
    };
    let mut out = Vec::new();
    let mut collect = |set: &[usize]| {
        out.push(ChordedCycleGraph::new(n, set.iter().map(|&i| chords[i])).expect("valid chords"));
    };
    walker.enumerate(&root, &mut Vec::new(), 0, &mut collect);
    Ok((out, !truncated.load(Ordering::Relaxed)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingleVertexResult {
    pub n: usize,
    pub size: usize,
    /// Lexicographically least `S` of maximum size.
    pub witness: Vec<usize>,
}

/// Largest `S ⊆ {3..n-1}` for which `G_n(S)` has no repeated cycle length.
///
/// Uses the closed-form spectrum: adding `a` above every element of `S`
/// contributes lengths `a`, `n + 2 - a` and `a - b + 2` for `b ∈ S`.
pub fn max_single_vertex_chords(n: usize) -> Result<SingleVertexResult, SearchError> {
    if n < 4 {
        return Err(SearchError::InvalidOrder(n));
    }
    // 1 + 2k + C(k,2) distinct lengths must fit in {3..n}
    let mut cap = 0;
    while 1 + 2 * (cap + 1) + (cap + 1) * cap / 2 <= n - 2 {
        cap += 1;
    }
    let mut used = vec![false; n + 1];
    used[n] = true;
    let mut chosen = Vec::new();
    let mut best = Vec::new();
    single_vertex_dfs(n, 3, cap, &mut used, &mut chosen, &mut best);
    Ok(SingleVertexResult {
        n,
        size: best.len(),
        witness: best,
    })
}

fn single_vertex_dfs(
    n: usize,
    from: usize,
    cap: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if chosen.len() > best.len() {
        best.clone_from(chosen);
    }
    if chosen.len() >= cap {
        return;
    }
    for a in from..n {
        if cap.min(chosen.len() + n - a) <= best.len() {
            break;
        }
        let mut new: Vec<usize> = vec![a, n + 2 - a];
        new.extend(chosen.iter().map(|&b| a - b + 2));
        let mut sorted = new.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != new.len() || new.iter().any(|&l| used[l]) {
            continue;
        }
        for &l in &new {
            used[l] = true;
        }
        chosen.push(a);
        single_vertex_dfs(n, a + 1, cap, used, chosen, best);
        chosen.pop();
        for &l in &new {
            used[l] = false;
        }
    }
}

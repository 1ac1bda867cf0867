//! Distinct cycle sets: chord endpoints `S ⊆ {3..n-1}` for which the graph
//! `G_n(S)` has no repeated cycle length, and their derivation from a perfect
//! difference set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::singer::PerfectDifferenceSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationKind {
    RangeError,
    RepeatedDifference,
    OverlapSSStar,
    OverlapSSMinus,
    OverlapSStarSMinus,
}

/// The first failed condition, with elements of `S` that realize it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleSetViolation {
    /// Fewer than 4 vertices.
    TooFewVertices {
        n: u64,
    },
    /// `value ∉ {3..n-1}`.
    OutOfRange {
        value: u64,
    },
    Duplicate {
        value: u64,
    },
    /// `b - a = d - c` with `(a, b) ≠ (c, d)`.
    RepeatedDifference {
        a: u64,
        b: u64,
        c: u64,
        d: u64,
    },
    /// `b = n + 2 - a`.
    OverlapSSStar {
        a: u64,
        b: u64,
    },
    /// `c = b - a + 2`.
    OverlapSSMinus {
        a: u64,
        b: u64,
        c: u64,
    },
    /// `b - a + 2 = n + 2 - c`.
    OverlapSStarSMinus {
        a: u64,
        b: u64,
        c: u64,
    },
}

impl CycleSetViolation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            CycleSetViolation::TooFewVertices { .. }
            | CycleSetViolation::OutOfRange { .. }
            | CycleSetViolation::Duplicate { .. } => ViolationKind::RangeError,
            CycleSetViolation::RepeatedDifference { .. } => ViolationKind::RepeatedDifference,
            CycleSetViolation::OverlapSSStar { .. } => ViolationKind::OverlapSSStar,
            CycleSetViolation::OverlapSSMinus { .. } => ViolationKind::OverlapSSMinus,
            CycleSetViolation::OverlapSStarSMinus { .. } => ViolationKind::OverlapSStarSMinus,
        }
    }
}

impl fmt::Display for CycleSetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CycleSetViolation::TooFewVertices { n } => write!(f, "n = {n} is below 4"),
            CycleSetViolation::OutOfRange { value } => write!(f, "{value} lies outside 3..n-1"),
            CycleSetViolation::Duplicate { value } => write!(f, "{value} listed twice"),
            CycleSetViolation::RepeatedDifference { a, b, c, d } => {
                write!(f, "repeated difference {b}-{a} = {d}-{c}")
            }
            CycleSetViolation::OverlapSSStar { a, b } => {
                write!(f, "{b} = n + 2 - {a} lies in S and S*")
            }
            CycleSetViolation::OverlapSSMinus { a, b, c } => {
                write!(f, "{c} = {b} - {a} + 2 lies in S and S-")
            }
            CycleSetViolation::OverlapSStarSMinus { a, b, c } => {
                write!(f, "{b} - {a} + 2 = n + 2 - {c} lies in S* and S-")
            }
        }
    }
}

impl std::error::Error for CycleSetViolation {}

/// `S* = { n + 2 - a }` and `S⁻ = { b - a + 2 : a < b }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedSets {
    pub s_star: BTreeSet<u64>,
    pub s_minus: BTreeSet<u64>,
}

impl DerivedSets {
    pub fn new(n: u64, s: &[u64]) -> Self {
        let s_star = s.iter().map(|&a| n + 2 - a).collect();
        let mut s_minus = BTreeSet::new();
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                s_minus.insert(a.abs_diff(b) + 2);
            }
        }
        DerivedSets { s_star, s_minus }
    }
}

/// A verified distinct cycle set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctCycleSet {
    n: u64,
    elements: Vec<u64>,
}

impl DistinctCycleSet {
    pub fn new(n: u64, mut elements: Vec<u64>) -> Result<Self, CycleSetViolation> {
        elements.sort_unstable();
        verify_distinct_cycle_set(&elements, n)?;
        Ok(DistinctCycleSet { n, elements })
    }

    pub fn vertices(&self) -> u64 {
        self.n
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn derived(&self) -> DerivedSets {
        DerivedSets::new(self.n, &self.elements)
    }
}

/// Checks both conditions of a distinct cycle set.
///
/// Checks run in a fixed order (range, repeated difference, `S ∩ S*`,
/// `S ∩ S⁻`, `S* ∩ S⁻`) and the first failure is returned. Input order does
/// not matter.
pub fn verify_distinct_cycle_set(s: &[u64], n: u64) -> Result<DerivedSets, CycleSetViolation> {
    if n < 4 {
        return Err(CycleSetViolation::TooFewVertices { n });
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if let Some(&value) = sorted.iter().find(|&&a| a < 3 || a >= n) {
        return Err(CycleSetViolation::OutOfRange { value });
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(CycleSetViolation::Duplicate { value: w[0] });
    }
    let s = &sorted;
    let members: BTreeSet<u64> = s.iter().copied().collect();

    let mut differences: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i + 1..] {
            if let Some(&(c, d)) = differences.get(&(b - a)) {
                return Err(CycleSetViolation::RepeatedDifference {
                    a: c,
                    b: d,
                    c: a,
                    d: b,
                });
            }
            differences.insert(b - a, (a, b));
        }
    }

    for &a in s {
        let b = n + 2 - a;
        if members.contains(&b) {
            return Err(CycleSetViolation::OverlapSSStar { a, b });
        }
    }
    for (&diff, &(a, b)) in &differences {
        if members.contains(&(diff + 2)) {
            return Err(CycleSetViolation::OverlapSSMinus { a, b, c: diff + 2 });
        }
    }
    for (&diff, &(a, b)) in &differences {
        // b - a + 2 = n + 2 - c  <=>  c = n - (b - a)
        let c = n - diff;
        if members.contains(&c) {
            return Err(CycleSetViolation::OverlapSStarSMinus { a, b, c });
        }
    }
    Ok(DerivedSets::new(n, s))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("derivation needs n >= 7 and at least 3 residues (got n = {n}, |A| = {size})")]
    TooSmall { n: u64, size: usize },
    #[error("no ordered pair of residues differs by 2")]
    NoPairDifferenceTwo,
    #[error("derivation postcondition failed: {0}")]
    Postcondition(String),
}

/// The intermediate values of the derivation, kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    /// The unique `(a0, b0)` with `a0 - b0 ≡ 2 (mod n)`.
    pub a0: u64,
    pub b0: u64,
    /// The translate `A - b0`, as labels in `1..=n` (residue 0 becomes `n`), sorted.
    pub shifted: Vec<u64>,
    pub cycle_set: DistinctCycleSet,
}

/// Residue in `0..n` to a vertex label in `1..=n`.
pub fn residue_to_label(r: u64, n: u64) -> u64 {
    if r.is_multiple_of(n) {
        n
    } else {
        r % n
    }
}

/// Turns a perfect difference set into a distinct cycle set of size `|A| - 2`.
///
/// Translates `A` so that it contains both 2 and 0 (the latter read as the
/// vertex `n`), then drops those two.
pub fn derive_cycle_set(a: &PerfectDifferenceSet) -> Result<Derivation, DerivationError> {
    let n = a.modulus();
    let elems = a.elements();
    if n < 7 || elems.len() < 3 {
        return Err(DerivationError::TooSmall {
            n,
            size: elems.len(),
        });
    }
    let (a0, b0) = elems
        .iter()
        .flat_map(|&x| elems.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| x != y && (x + n - y) % n == 2 % n)
        .ok_or(DerivationError::NoPairDifferenceTwo)?;

    let mut shifted: Vec<u64> = a
        .translate(b0)
        .elements()
        .iter()
        .map(|&r| residue_to_label(r, n))
        .collect();
    shifted.sort_unstable();

    let fail = |msg: &str| Err(DerivationError::Postcondition(msg.to_string()));
    if !shifted.contains(&2) {
        return fail("2 is not in the translate");
    }
    if !shifted.contains(&n) {
        return fail("n is not in the translate");
    }
    if shifted.contains(&1) {
        return fail("1 is in the translate");
    }
    let s: Vec<u64> = shifted
        .iter()
        .copied()
        .filter(|&x| x != 2 && x != n)
        .collect();
    if s.len() != elems.len() - 2 {
        return fail("|S| differs from |A| - 2");
    }
    let cycle_set =
        DistinctCycleSet::new(n, s).map_err(|v| DerivationError::Postcondition(v.to_string()))?;
    Ok(Derivation {
        a0,
        b0,
        shifted,
        cycle_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singer::singer_difference_set;
    use proptest::prelude::*;

    #[test]
    fn derivation_examples() {
        let a = PerfectDifferenceSet::new(7, vec![1, 2, 4]).unwrap();
        let d = derive_cycle_set(&a).unwrap();
        assert_eq!((d.a0, d.b0), (4, 2));
        assert_eq!(d.shifted, vec![2, 6, 7]);
        assert_eq!(d.cycle_set.elements(), &[6]);

        let a = PerfectDifferenceSet::new(13, vec![0, 1, 3, 9]).unwrap();
        let d = derive_cycle_set(&a).unwrap();
        assert_eq!((d.a0, d.b0), (3, 1));
        assert_eq!(d.shifted, vec![2, 8, 12, 13]);
        assert_eq!(d.cycle_set.elements(), &[8, 12]);

        let tiny = PerfectDifferenceSet::new(3, vec![0, 2]).unwrap();
        assert_eq!(
            derive_cycle_set(&tiny),
            Err(DerivationError::TooSmall { n: 3, size: 2 })
        );
    }

    #[test]
    fn verifier_examples() {
        let d = verify_distinct_cycle_set(&[8, 12], 13).unwrap();
        assert_eq!(d.s_star, BTreeSet::from([3, 7]));
        assert_eq!(d.s_minus, BTreeSet::from([6]));
        let d = verify_distinct_cycle_set(&[6], 7).unwrap();
        assert_eq!(d.s_star, BTreeSet::from([3]));
        assert!(d.s_minus.is_empty());
        assert_eq!(
            verify_distinct_cycle_set(&[3, 4, 5], 20),
            Err(CycleSetViolation::RepeatedDifference {
                a: 3,
                b: 4,
                c: 4,
                d: 5
            })
        );
    }

    #[test]
    fn each_violation_kind() {
        assert_eq!(
            verify_distinct_cycle_set(&[], 3),
            Err(CycleSetViolation::TooFewVertices { n: 3 })
        );
        assert_eq!(
            verify_distinct_cycle_set(&[2], 9),
            Err(CycleSetViolation::OutOfRange { value: 2 })
        );
        assert_eq!(
            verify_distinct_cycle_set(&[9], 9),
            Err(CycleSetViolation::OutOfRange { value: 9 })
        );
        assert_eq!(
            verify_distinct_cycle_set(&[5, 5], 9),
            Err(CycleSetViolation::Duplicate { value: 5 })
        );
        // 2a = n + 2: Type 1 and Type 2 cycles of one chord coincide
        assert_eq!(
            verify_distinct_cycle_set(&[5], 8),
            Err(CycleSetViolation::OverlapSSStar { a: 5, b: 5 })
        );
        // 6 - 4 + 2 = 4
        assert_eq!(
            verify_distinct_cycle_set(&[4, 6, 20], 30),
            Err(CycleSetViolation::OverlapSSMinus { a: 4, b: 6, c: 4 })
        );
        // 10 - 3 + 2 = 9 = 23 + 2 - 16
        assert_eq!(
            verify_distinct_cycle_set(&[3, 10, 16], 23),
            Err(CycleSetViolation::OverlapSStarSMinus { a: 3, b: 10, c: 16 })
        );
        assert!(verify_distinct_cycle_set(&[4, 8], 20).is_ok());
    }

    #[test]
    fn singer_derivations() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            let a = singer_difference_set(q).unwrap();
            let d = derive_cycle_set(&a).unwrap();
            assert_eq!(d.cycle_set.len() as u64, q - 1);
        }
    }

    proptest! {
        #[test]
        fn derivation_is_translation_invariant(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8]), t in any::<u64>()) {
            let a = singer_difference_set(q).unwrap();
            let d = derive_cycle_set(&a.translate(t)).unwrap();
            prop_assert_eq!(d.cycle_set.len(), a.len() - 2);
            // the distinguished pair moves with the translation
            let n = a.modulus();
            prop_assert_eq!(d.b0, (derive_cycle_set(&a).unwrap().b0 + n - t % n) % n);
        }

        #[test]
        fn witnesses_recheck(n in 4u64..40, raw in prop::collection::vec(0u64..45, 0..6)) {
            match verify_distinct_cycle_set(&raw, n) {
                Ok(derived) => {
                    prop_assert!(derived.s_star.is_disjoint(&derived.s_minus));
                }
                Err(v) => {
                    let has = |x: u64| raw.contains(&x);
                    match v {
                        CycleSetViolation::TooFewVertices { n: m } => prop_assert!(m < 4),
                        CycleSetViolation::OutOfRange { value } => prop_assert!(has(value) && (value < 3 || value >= n)),
                        CycleSetViolation::Duplicate { value } => prop_assert!(raw.iter().filter(|&&x| x == value).count() > 1),
                        CycleSetViolation::RepeatedDifference { a, b, c, d } => {
                            prop_assert!(has(a) && has(b) && has(c) && has(d));
                            prop_assert!(a < b && c < d && (a, b) != (c, d) && b - a == d - c);
                        }
                        CycleSetViolation::OverlapSSStar { a, b } => prop_assert!(has(a) && has(b) && a + b == n + 2),
                        CycleSetViolation::OverlapSSMinus { a, b, c } => {
                            prop_assert!(has(a) && has(b) && has(c) && a < b && c == b - a + 2);
                        }
                        CycleSetViolation::OverlapSStarSMinus { a, b, c } => {
                            prop_assert!(has(a) && has(b) && has(c) && a < b && b - a + 2 == n + 2 - c);
                        }
                    }
                }
            }
        }
    }
}

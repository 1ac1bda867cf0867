//! Perfect difference sets in `Z_n`: the Singer construction for `n = q^2 + q + 1`,
//! a difference-table verifier, translation, and a backtracking oracle.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::finite_field::{FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingerError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("not a perfect difference set: {0}")]
    NotPerfect(DifferenceViolation),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A set `A ⊂ Z_n` in which every nonzero residue is exactly one difference `a - b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PerfectDifferenceSet {
    n: u64,
    elements: Vec<u64>,
}

impl PerfectDifferenceSet {
    /// Validates the residues (any order) and sorts them.
    pub fn new(n: u64, mut elements: Vec<u64>) -> Result<Self, SingerError> {
        elements.sort_unstable();
        match verify_perfect_difference_set(n, &elements) {
            DifferenceReport::Ok => Ok(PerfectDifferenceSet { n, elements }),
            DifferenceReport::Violation(v) => Err(SingerError::NotPerfect(v)),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Residues in `0..n`, strictly increasing.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn verify(&self) -> DifferenceReport {
        verify_perfect_difference_set(self.n, &self.elements)
    }

    /// `{ a - t mod n : a ∈ A }`, sorted.
    pub fn translate(&self, t: u64) -> PerfectDifferenceSet {
        let t = t % self.n;
        let mut elements: Vec<u64> = self
            .elements
            .iter()
            .map(|&a| (a + self.n - t) % self.n)
            .collect();
        elements.sort_unstable();
        PerfectDifferenceSet {
            n: self.n,
            elements,
        }
    }
}

impl fmt::Display for PerfectDifferenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(u64::to_string).collect();
        write!(f, "{{{}}} mod {}", items.join(", "), self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DifferenceViolation {
    ZeroModulus,
    OutOfRange {
        element: u64,
    },
    Duplicate {
        element: u64,
    },
    /// `residue` arises `pairs.len()` times (0 or at least 2); `pairs` are `(a, b)` with `a - b ≡ residue`.
    Coverage {
        residue: u64,
        pairs: Vec<(u64, u64)>,
    },
}

impl fmt::Display for DifferenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DifferenceViolation::ZeroModulus => write!(f, "modulus must be positive"),
            DifferenceViolation::OutOfRange { element } => {
                write!(f, "element {element} is not a residue")
            }
            DifferenceViolation::Duplicate { element } => write!(f, "element {element} repeated"),
            DifferenceViolation::Coverage { residue, pairs } if pairs.is_empty() => {
                write!(f, "residue {residue} is not a difference")
            }
            DifferenceViolation::Coverage { residue, pairs } => {
                write!(f, "residue {residue} =")?;
                for (i, (a, b)) in pairs.iter().enumerate() {
                    write!(f, "{} {a}-{b}", if i == 0 { "" } else { " =" })?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferenceReport {
    Ok,
    Violation(DifferenceViolation),
}

impl DifferenceReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, DifferenceReport::Ok)
    }
}

/// Checks the λ = 1 property by building the full difference table.
///
/// Reports the first problem found: a bad element, or the smallest nonzero
/// residue covered zero or several times, with every witnessing pair.
pub fn verify_perfect_difference_set(n: u64, elements: &[u64]) -> DifferenceReport {
    use DifferenceReport::Violation;
    if n == 0 {
        return Violation(DifferenceViolation::ZeroModulus);
    }
    let mut seen = BTreeSet::new();
    for &a in elements {
        if a >= n {
            return Violation(DifferenceViolation::OutOfRange { element: a });
        }
        if !seen.insert(a) {
            return Violation(DifferenceViolation::Duplicate { element: a });
        }
    }
    let mut table: Vec<Vec<(u64, u64)>> = vec![Vec::new(); n as usize];
    for &a in &seen {
        for &b in &seen {
            if a != b {
                table[((a + n - b) % n) as usize].push((a, b));
            }
        }
    }
    match (1..n).find(|&r| table[r as usize].len() != 1) {
        Some(residue) => Violation(DifferenceViolation::Coverage {
            residue,
            pairs: std::mem::take(&mut table[residue as usize]),
        }),
        None => DifferenceReport::Ok,
    }
}

/// Singer's perfect difference set of size `q + 1` in `Z_{q^2+q+1}`.
///
/// With `γ` primitive in `GF(q^3)` viewed as a cubic extension of `GF(q)` by
/// `y`, collects the exponents `i mod n` for which `γ^i` lies in the plane
/// spanned by `1` and `y`, i.e. has zero `y^2` coordinate.
pub fn singer_difference_set(q: u64) -> Result<PerfectDifferenceSet, SingerError> {
    if !arith::is_prime_power(q) {
        return Err(SingerError::NotPrimePower(q));
    }
    let small = FieldSpec::galois(q)?;
    let cubic = small.find_irreducible(3)?;
    let big = small.extend(cubic)?;
    let n = q * q + q + 1;
    let gamma = big.find_primitive();

    let mut residues = BTreeSet::new();
    let mut power = big.one();
    for i in 0..big.order() - 1 {
        if power.coords()[2] == 0 {
            residues.insert(i % n);
        }
        power = power.mul(&gamma)?;
    }
    let set = PerfectDifferenceSet::new(n, residues.into_iter().collect())?;
    debug_assert_eq!(set.len() as u64, q + 1);
    Ok(set)
}

/// Lexicographically first perfect difference set of size `k` in `Z_n` containing 0,
/// found by backtracking over increasing residue lists.
pub fn brute_force_difference_set(n: u64, k: usize) -> Option<PerfectDifferenceSet> {
    if n == 0 || k == 0 || (k as u64) * (k as u64 - 1) > n - 1 {
        return None;
    }
    let mut used = vec![false; n as usize];
    let mut chosen = vec![0u64];
    if extend_search(n, k, &mut chosen, &mut used) {
        Some(PerfectDifferenceSet {
            n,
            elements: chosen,
        })
    } else {
        None
    }
}

fn extend_search(n: u64, k: usize, chosen: &mut Vec<u64>, used: &mut [bool]) -> bool {
    if chosen.len() == k {
        return used[1..].iter().all(|&u| u);
    }
    let start = chosen.last().map_or(0, |&x| x + 1);
    for x in start..n {
        let diffs: Vec<usize> = chosen
            .iter()
            .flat_map(|&a| [((x + n - a) % n) as usize, ((a + n - x) % n) as usize])
            .collect();
        let mut fresh = diffs.iter().all(|&d| !used[d]);
        // x - a and a - x coincide when 2x ≡ 2a
        let mut sorted = diffs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        fresh &= sorted.len() == diffs.len();
        if !fresh {
            continue;
        }
        for &d in &diffs {
            used[d] = true;
        }
        chosen.push(x);
        if extend_search(n, k, chosen, used) {
            return true;
        }
        chosen.pop();
        for &d in &diffs {
            used[d] = false;
        }
    }
    false
}

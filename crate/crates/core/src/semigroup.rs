//! Numerical semigroup primitives: membership, Apéry sets, Frobenius and
//! pseudo-Frobenius numbers, and exhaustive factorization of elements.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest smallest-generator accepted; Apéry sets are materialized with one
/// slot per residue class.
pub const MAX_MODULUS: i64 = 10_000_000;

/// Largest conductor accepted; the membership table has one entry per integer
/// below it.
pub const MAX_CONDUCTOR: i64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("no generators given")]
    Empty,
    #[error("generator {0} is not a positive integer")]
    NonPositive(i64),
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(i64),
    #[error("generator {0} is a combination of the other generators")]
    NotMinimal(i64),
    #[error("{0} is not a nonzero element of the semigroup")]
    NotAMember(i64),
    #[error("the semigroup has no gaps")]
    NoGaps,
    #[error("semigroup too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = SemigroupError> = std::result::Result<T, E>;

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Smallest element of `⟨gens⟩` in every residue class modulo `modulus`
/// (`None` when the class is unreachable). Dijkstra over the residue graph.
fn residue_minima(gens: &[i64], modulus: i64) -> Result<Vec<Option<i64>>> {
    if modulus > MAX_MODULUS {
        return Err(SemigroupError::TooLarge(format!(
            "modulus {modulus} exceeds {MAX_MODULUS}"
        )));
    }
    let m = modulus as usize;
    let mut dist: Vec<Option<i64>> = vec![None; m];
    let mut heap = BinaryHeap::new();
    dist[0] = Some(0);
    heap.push(Reverse((0i64, 0usize)));
    while let Some(Reverse((d, res))) = heap.pop() {
        if dist[res] != Some(d) {
            continue;
        }
        for &g in gens {
            let nd = d
                .checked_add(g)
                .ok_or_else(|| SemigroupError::TooLarge("element overflow".into()))?;
            let nr = ((res as i64 + g) % modulus) as usize;
            if dist[nr].map_or(true, |old| nd < old) {
                dist[nr] = Some(nd);
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    Ok(dist)
}

fn representable_by(others: &[i64], x: i64) -> Result<bool> {
    let Some(&m) = others.iter().min() else {
        return Ok(x == 0);
    };
    let minima = residue_minima(others, m)?;
    Ok(minima[(x % m) as usize].is_some_and(|w| w <= x))
}

fn validate_raw(raw: &[i64]) -> Result<()> {
    if raw.is_empty() {
        return Err(SemigroupError::Empty);
    }
    if let Some(&bad) = raw.iter().find(|&&g| g <= 0) {
        return Err(SemigroupError::NonPositive(bad));
    }
    let g = raw.iter().fold(0, |acc, &x| gcd(acc, x));
    if g != 1 {
        return Err(SemigroupError::GcdNotOne(g));
    }
    Ok(())
}

/// A numerical semigroup together with a membership table up to its conductor.
///
/// The generators are stored in *column order*: every factorization and
/// exponent vector produced from this value is indexed in that order.
/// [`NumericalSemigroup::new`] uses ascending order;
/// [`NumericalSemigroup::from_minimal_generators`] keeps the caller's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    smallest: i64,
    conductor: i64,
    membership: Vec<bool>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `raw`, reducing the input to its
    /// minimal generating set in ascending order.
    pub fn new(raw: &[i64]) -> Result<Self> {
        validate_raw(raw)?;
        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut minimal: Vec<i64> = Vec::with_capacity(sorted.len());
        for g in sorted {
            // a generator can only be a combination of smaller ones
            if !representable_by(&minimal, g)? {
                minimal.push(g);
            }
        }
        Self::build(minimal)
    }

    /// Builds the semigroup from a generating set that must already be
    /// minimal. Column order is preserved.
    pub fn from_minimal_generators(columns: &[i64]) -> Result<Self> {
        validate_raw(columns)?;
        for (i, &g) in columns.iter().enumerate() {
            let others: Vec<i64> = columns
                .iter()
                .enumerate()
                .filter_map(|(j, &h)| (j != i).then_some(h))
                .collect();
            if representable_by(&others, g)? {
                return Err(SemigroupError::NotMinimal(g));
            }
        }
        Self::build(columns.to_vec())
    }

    fn build(generators: Vec<i64>) -> Result<Self> {
        let smallest = *generators.iter().min().expect("validated nonempty");
        let minima = residue_minima(&generators, smallest)?;
        let minima: Vec<i64> = minima
            .into_iter()
            .map(|w| w.expect("gcd 1 reaches every residue"))
            .collect();
        let max_ap = *minima.iter().max().expect("modulus >= 1");
        let conductor = max_ap - smallest + 1;
        if conductor > MAX_CONDUCTOR {
            return Err(SemigroupError::TooLarge(format!(
                "conductor {conductor} exceeds {MAX_CONDUCTOR}"
            )));
        }
        let membership = (0..=conductor)
            .map(|x| x >= minima[(x % smallest) as usize])
            .collect();
        Ok(Self {
            generators,
            smallest,
            conductor,
            membership,
        })
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn multiplicity(&self) -> i64 {
        self.smallest
    }

    /// Smallest `c` with `[c, ∞) ⊆ H`.
    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            false
        } else if x >= self.conductor {
            true
        } else {
            self.membership[x as usize]
        }
    }

    pub fn frobenius_number(&self) -> Result<i64> {
        if self.conductor == 0 {
            Err(SemigroupError::NoGaps)
        } else {
            Ok(self.conductor - 1)
        }
    }

    /// `Ap(H, m) = {h ∈ H : h − m ∉ H}`, sorted ascending.
    pub fn apery_set(&self, m: i64) -> Result<AperySet> {
        if m <= 0 || !self.contains(m) {
            return Err(SemigroupError::NotAMember(m));
        }
        if m > MAX_MODULUS {
            return Err(SemigroupError::TooLarge(format!(
                "modulus {m} exceeds {MAX_MODULUS}"
            )));
        }
        let mut elements: Vec<i64> = Vec::with_capacity(m as usize);
        // Every class has its least element below conductor + m.
        for x in 0..self.conductor + m {
            if self.contains(x) && !self.contains(x - m) {
                elements.push(x);
            }
        }
        debug_assert_eq!(elements.len(), m as usize);
        Ok(AperySet {
            modulus: m,
            elements,
        })
    }

    /// Pseudo-Frobenius numbers, ascending, read off the maximal elements of
    /// the Apéry set of the multiplicity under `x ≤_H y ⇔ y − x ∈ H`.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        let m = self.smallest;
        let ap = self
            .apery_set(m)
            .expect("the multiplicity is a small nonzero element");
        let by_residue = ap.by_residue();
        let in_ap = |x: i64| by_residue[(x % m) as usize] == x;
        ap.elements
            .iter()
            .filter(|&&w| self.generators.iter().all(|&g| !in_ap(w + g)))
            .map(|&w| w - m)
            .collect()
    }

    pub fn type_of(&self) -> usize {
        self.pseudo_frobenius().len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.type_of() == 1
    }

    pub fn is_pseudo_frobenius(&self, f: i64) -> bool {
        !self.contains(f) && self.generators.iter().all(|&g| self.contains(f + g))
    }

    /// Every factorization of `x`, in ascending lexicographic order of the
    /// coefficient vectors.
    pub fn factorizations(&self, x: i64) -> Vec<Factorization> {
        self.factorization_vectors(x, None)
            .into_iter()
            .map(|coefficients| Factorization {
                coefficients,
                degree: x,
            })
            .collect()
    }

    /// Factorizations of `x` as raw coefficient vectors. When `skip` is set the
    /// coefficient of that column is forced to zero.
    pub(crate) fn factorization_vectors(&self, x: i64, skip: Option<usize>) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        if x < 0 {
            return out;
        }
        let k = self.generators.len();
        let width = x as usize + 1;
        // reach[i][y]: y is a combination of the columns i.. (minus `skip`).
        let mut reach = vec![vec![false; width]; k + 1];
        reach[k][0] = true;
        for i in (0..k).rev() {
            let (head, tail) = reach.split_at_mut(i + 1);
            let (row, next) = (&mut head[i], &tail[0]);
            row.copy_from_slice(next);
            if skip == Some(i) {
                continue;
            }
            let g = self.generators[i] as usize;
            for y in g..width {
                if row[y - g] {
                    row[y] = true;
                }
            }
        }
        if !reach[0][x as usize] {
            return out;
        }
        let mut current = vec![0u64; k];
        self.descend(0, x, skip, &reach, &mut current, &mut out);
        out
    }

    fn descend(
        &self,
        i: usize,
        rem: i64,
        skip: Option<usize>,
        reach: &[Vec<bool>],
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if i == self.generators.len() {
            if rem == 0 {
                out.push(current.clone());
            }
            return;
        }
        let g = self.generators[i];
        let max_c = if skip == Some(i) { 0 } else { rem / g };
        for c in 0..=max_c {
            let next = rem - c * g;
            if reach[i + 1][next as usize] {
                current[i] = c as u64;
                self.descend(i + 1, next, skip, reach, current, out);
            }
        }
        current[i] = 0;
    }
}

/// A nonnegative coefficient vector over the generators (column order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub coefficients: Vec<u64>,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperySet {
    pub modulus: i64,
    /// Ascending; exactly one element per residue class.
    pub elements: Vec<i64>,
}

impl AperySet {
    /// Elements indexed by residue modulo the modulus.
    pub fn by_residue(&self) -> Vec<i64> {
        let mut slots = vec![0; self.modulus as usize];
        for &w in &self.elements {
            slots[(w % self.modulus) as usize] = w;
        }
        slots
    }
}

/// `a · gens` for a coefficient vector of matching length.
pub fn dot(coefficients: &[u64], generators: &[i64]) -> i64 {
    coefficients
        .iter()
        .zip(generators)
        .map(|(&a, &g)| a as i64 * g)
        .sum()
}

//! Batch verification over boxes of almost arithmetic parameters.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::almost_arithmetic::{AaPresentation, SymmetricCase};
use crate::rf::Binomial;
use crate::toric::{is_minimally_generated_by_rf_relations, minimal_generating_set};

/// Range of the extra generator `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NRange {
    /// `[m₀ + 1, 3m₀]` for each `m₀`.
    Auto,
    Fixed(RangeInclusive<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamBox {
    pub m0: RangeInclusive<i64>,
    pub d: RangeInclusive<i64>,
    pub p: RangeInclusive<usize>,
    pub n: NRange,
}

impl ParamBox {
    pub fn new(m0: RangeInclusive<i64>, d: RangeInclusive<i64>, p: RangeInclusive<usize>) -> Self {
        Self {
            m0,
            d,
            p,
            n: NRange::Auto,
        }
    }

    /// Every parameter tuple in the box, in `(m₀, d, p, n)` order. Tuples need
    /// not form valid presentations.
    pub fn tuples(&self) -> Vec<(i64, i64, usize, i64)> {
        let mut out = Vec::new();
        for m0 in self.m0.clone() {
            let ns = match &self.n {
                NRange::Auto => m0 + 1..=3 * m0,
                NRange::Fixed(r) => r.clone(),
            };
            for d in self.d.clone() {
                for p in self.p.clone() {
                    for n in ns.clone() {
                        out.push((m0, d, p, n));
                    }
                }
            }
        }
        out
    }

    /// The valid presentations of the box, in tuple order.
    pub fn presentations(&self) -> Vec<AaPresentation> {
        self.tuples()
            .into_iter()
            .filter_map(|(m0, d, p, n)| AaPresentation::new(m0, d, p, n).ok())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub m0: i64,
    pub d: i64,
    pub p: usize,
    pub n: i64,
    pub generators: Vec<i64>,
    pub case: Option<SymmetricCase>,
    pub holds: bool,
    /// Minimal number of generators of the defining ideal.
    pub ideal_generators: usize,
    pub deficiency: Vec<i64>,
    pub witness: Vec<Binomial>,
    pub counterexample: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    /// Parameter tuples in the box.
    pub examined: usize,
    /// Tuples that form valid presentations.
    pub valid: usize,
    /// One record per symmetric presentation, in tuple order.
    pub records: Vec<SweepRecord>,
}

impl SweepReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(|r| r.counterexample)
    }
}

/// Runs classification and the RF-relation verifier on one presentation.
///
/// A record is a counterexample when `p ∈ {2, 3}` and the verifier fails, the
/// classification disagrees with the type, or (for `p = 2`) the ideal needs a
/// number of generators other than 3 or 5. Other `p` are exploratory.
pub fn verify_presentation(pres: &AaPresentation) -> SweepRecord {
    let h = pres.semigroup();
    let case = pres
        .structure_constants()
        .map_err(|e| e.to_string())
        .and_then(|sc| pres.classify_symmetric(&sc).map_err(|e| e.to_string()));
    let verdict = is_minimally_generated_by_rf_relations(h);
    let ideal_generators = minimal_generating_set(h).count;
    let asserted = matches!(pres.p(), 2 | 3);
    let counterexample = asserted
        && (!verdict.holds
            || case.is_err()
            || (pres.p() == 2 && h.is_symmetric() && !matches!(ideal_generators, 3 | 5)));
    let (case, error) = match case {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e)),
    };
    SweepRecord {
        m0: pres.m0(),
        d: pres.d(),
        p: pres.p(),
        n: pres.n(),
        generators: pres.generators().to_vec(),
        case,
        holds: verdict.holds,
        ideal_generators,
        deficiency: verdict.deficiency,
        witness: verdict.witness.into_values().flatten().collect(),
        counterexample,
        error,
    }
}

pub fn verify_symmetric_sweep(param_box: &ParamBox, jobs: usize) -> SweepReport {
    verify_symmetric_sweep_with(param_box, jobs, |_| {})
}

/// Verifies every symmetric presentation of the box on a pool of `jobs`
/// threads. `sink` sees each record in tuple order as soon as its batch ends.
pub fn verify_symmetric_sweep_with(
    param_box: &ParamBox,
    jobs: usize,
    mut sink: impl FnMut(&SweepRecord),
) -> SweepReport {
    const BATCH: usize = 256;
    let tuples = param_box.tuples();
    let presentations = param_box.presentations();
    let mut report = SweepReport {
        examined: tuples.len(),
        valid: presentations.len(),
        records: Vec::new(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let symmetric: Vec<&AaPresentation> = presentations
        .iter()
        .filter(|p| p.semigroup().is_symmetric())
        .collect();
    for batch in symmetric.chunks(BATCH) {
        let records: Vec<SweepRecord> =
            pool.install(|| batch.par_iter().map(|p| verify_presentation(p)).collect());
        for r in &records {
            sink(r);
        }
        report.records.extend(records);
    }
    report
}

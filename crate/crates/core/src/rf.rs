//! Row-factorization matrices and the binomials (RF-relations) their rows
//! produce.
//!
//! Column order is the column order of the semigroup; for almost arithmetic
//! presentations that is `m₀, …, m_p, n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::almost_arithmetic::{
    symmetric_case_predicate, AaError, AaPresentation, CandidateKind, StructureConstants,
    SymmetricCase,
};
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RfError {
    #[error(transparent)]
    Presentation(#[from] AaError),
    #[error("{0} is not a pseudo-Frobenius number")]
    NotPseudoFrobenius(i64),
    #[error("no closed-form construction applies to f = {0}")]
    NoApplicableCase(i64),
    #[error("{construction} produced an invalid row {row} for f = {f}: {entries:?}")]
    ConstructionInvalid {
        construction: Construction,
        f: i64,
        row: usize,
        entries: Vec<i64>,
    },
    #[error("matrix count overflows")]
    CountOverflow,
}

pub type Result<T, E = RfError> = std::result::Result<T, E>;

/// Closed-form recipes, named by the pseudo-Frobenius family they handle and
/// the regime of structure constants they assume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// `γ_k`, `W = ∅`, `r = 1`, `λ > 1`.
    GammaR1LambdaAbove1,
    /// `γ_k`, `W = ∅`, `r = 1`, `λ = 1`.
    GammaR1LambdaOne,
    /// `γ₁`, `W = ∅`, `p = 1`; explicit 3×3 forms.
    GammaP1,
    /// `γ_k`, `W = ∅`, `r ≥ 2`.
    GammaRAtLeast2,
    /// `γ_p`, `W = ∅`, `r = 2` (the symmetric case).
    GammaR2,
    /// `γ₃` for `p = 3`, `r = 2`: first row rewritten through
    /// `m₁ + q·m₃ = 2m₂ + (q−1)m₃`.
    GammaP3Alternate,
    /// `α_p`, `r′ = 1`, `μ > 0`, `q′ = 0`.
    AlphaRp1Q0,
    /// `α_i`, `r′ = 1`, `μ > 0`, `q′ > 0`.
    AlphaRp1MuPositive,
    /// `α₁`, `p = 1`, `μ > 0`; explicit 3×3 forms.
    AlphaP1,
    /// `α_i`, `r′ = 1`, `μ = 0`, `q′ > 0`, `r ≥ 2`.
    AlphaRp1MuZero,
    /// `α_i`, `r′ ≥ 2`.
    AlphaRpAtLeast2,
    /// `α₃` for `p = 2` in the symmetric case `r = 1, r′ = 2, λ = 1`: last row
    /// rewritten to `(ν−1, 0, q, −1)`.
    AlphaP2Alternate,
    /// `α₄` for `p = 3`, same case: row 3 rewritten through `m₀ + m₂ = 2m₁`.
    AlphaP3Alternate,
    /// `α₄` for `p = 3`, same case: first and last rows rewritten.
    AlphaP3SecondAlternate,
    /// `β_j`, `r = 1`, `λ > 1`.
    BetaR1LambdaAbove1,
    /// `β_j`, `r = 1`, `λ = 1`.
    BetaR1LambdaOne,
    /// `β₁`, `p = 1`.
    BetaP1,
    /// `β_j`, `r ≥ 2`.
    BetaRAtLeast2,
    /// `β₂` for `p = 2` in the case `r = 2, r′ = 1, μ = 0, q′ = 0`: row 1
    /// rewritten to `(λ, −1, 0, v−1)`.
    BetaP2Alternate,
    /// `β₃` for `p = 3`, `r = 2`, `μ = 0`: first row (and, when `r′ = 1`, last
    /// row) rewritten.
    BetaP3Alternate,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "construction", rename_all = "snake_case")]
pub enum RfSource {
    ClosedForm(Construction),
    Enumerated,
    External,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RfMatrix {
    pub f: i64,
    pub rows: Vec<Vec<i64>>,
    pub source: RfSource,
}

/// Diagonal −1, nonnegative elsewhere, and every row evaluates to `f`.
pub fn validate_rf(h: &NumericalSemigroup, f: i64, m: &RfMatrix) -> bool {
    let gens = h.generators();
    m.f == f
        && m.rows.len() == gens.len()
        && m.rows
            .iter()
            .enumerate()
            .all(|(i, row)| valid_row(gens, f, i, row))
}

fn valid_row(gens: &[i64], f: i64, i: usize, row: &[i64]) -> bool {
    row.len() == gens.len()
        && row
            .iter()
            .enumerate()
            .all(|(j, &a)| if j == i { a == -1 } else { a >= 0 })
        && row.iter().zip(gens).map(|(&a, &g)| a * g).sum::<i64>() == f
}

/// Row accumulator: diagonal preset to −1, entries added term by term.
struct Rows {
    rows: Vec<Vec<i64>>,
}

impl Rows {
    fn new(size: usize) -> Self {
        let rows = (0..size)
            .map(|i| {
                let mut row = vec![0; size];
                row[i] = -1;
                row
            })
            .collect();
        Self { rows }
    }

    fn add(&mut self, row: usize, col: usize, value: i64) {
        self.rows[row][col] += value;
    }

    fn unit(&mut self, row: usize, col: usize) {
        self.add(row, col, 1);
    }

    fn replace(&mut self, row: usize, entries: &[i64]) {
        self.rows[row] = entries.to_vec();
    }
}

/// Parameters shared by every closed-form recipe.
struct Recipe<'a> {
    pres: &'a AaPresentation,
    sc: &'a StructureConstants,
    p: usize,
    col_n: usize,
}

impl<'a> Recipe<'a> {
    fn q_of(&self, t: usize) -> Result<i64> {
        Ok(self.pres.g(t)?.q)
    }

    fn r_of(&self, t: usize) -> Result<usize> {
        Ok(self.pres.g(t)?.r)
    }

    fn q_z(&self) -> Result<i64> {
        self.q_of(self.sc.z)
    }

    fn r_z(&self) -> Result<usize> {
        self.r_of(self.sc.z)
    }

    fn rows(&self) -> Rows {
        Rows::new(self.p + 2)
    }

    /// Upper block of rows `0..=split` receives `(col_p, col_n)`; the rest
    /// receives `(col_0, col_n)`.
    fn blocks(&self, m: &mut Rows, split: usize, upper: (i64, i64), lower: (i64, i64)) {
        for i in 0..=self.p {
            if i <= split {
                m.add(i, self.p, upper.0);
                m.add(i, self.col_n, upper.1);
            } else {
                m.add(i, 0, lower.0);
                m.add(i, self.col_n, lower.1);
            }
        }
    }

    /// The shifted unit pattern used by the `r = 1` recipes: `+1` at `k` in
    /// row 0, at `k+j` in rows `j ≤ p−k` and at `k+j−p−1` below.
    fn cyclic_units(&self, m: &mut Rows, k: usize) {
        let p = self.p;
        m.unit(0, k);
        for j in 1..=p {
            if j <= p - k {
                m.unit(j, k + j);
            } else {
                m.unit(j, k + j - p - 1);
            }
        }
    }

    /// The unit pattern of the `r ≥ 2` recipes with pivot `e`.
    fn pivot_units(&self, m: &mut Rows, e: usize, k: usize) {
        let p = self.p;
        m.unit(0, p - e);
        for j in 1..=p {
            if j <= e {
                m.unit(j, p - e + j);
            } else {
                m.unit(j, k + j - p - 1);
            }
        }
    }

    fn gamma_r1_lambda_above1(&self, k: usize) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let mut m = self.rows();
        self.blocks(&mut m, p - k, (sc.q - 1, sc.v - 1), (sc.lambda - 2, sc.w + sc.v - 1));
        self.cyclic_units(&mut m, k);
        if sc.mu >= 1 {
            m.add(n, 0, sc.mu - 1);
            m.add(n, p, sc.q + self.q_z()? - 1);
            m.unit(n, k);
        } else {
            m.add(n, 0, sc.lambda - 2);
            m.add(n, p, self.q_z()? - 1);
            m.unit(n, k - 1);
        }
        m.unit(n, self.r_z()?);
        Ok(m)
    }

    fn gamma_r1_lambda_one(&self, k: usize) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let mut m = self.rows();
        self.blocks(&mut m, p - k, (sc.q - 1, sc.v - 1), (sc.mu - 1, sc.w - 1));
        self.cyclic_units(&mut m, k);
        m.add(n, 0, sc.mu - 1);
        m.add(n, p, sc.q - 1);
        m.unit(n, k);
        Ok(m)
    }

    fn gamma_p1(&self) -> Rows {
        let sc = self.sc;
        let u = sc.u as i64;
        let z = sc.z as i64;
        let mut m = self.rows();
        m.replace(0, &[-1, u - 1, sc.v - 1]);
        if sc.lambda > 1 {
            m.replace(1, &[sc.lambda - 1, -1, sc.w + sc.v - 1]);
            if sc.mu > 0 {
                m.replace(2, &[sc.mu - 1, u + z - 1, -1]);
            } else {
                m.replace(2, &[sc.lambda - 1, z - 1, -1]);
            }
        } else {
            m.replace(1, &[sc.mu, -1, sc.w - 1]);
            m.replace(2, &[sc.mu - 1, u - 1, -1]);
        }
        m
    }

    fn gamma_r_at_least2(&self, k: usize) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let e = 2 * p + 1 - sc.r - k;
        let mut m = self.rows();
        self.blocks(&mut m, e, (sc.q, sc.v - 1), (sc.lambda - 1, sc.w + sc.v - 1));
        self.pivot_units(&mut m, e, k);
        if sc.mu >= 1 {
            m.add(n, 0, sc.mu - 1);
            m.add(n, p, sc.q + self.q_z()?);
            m.unit(n, p - e);
        } else {
            m.add(n, 0, sc.lambda - 1);
            m.add(n, p, self.q_z()? - 1);
            m.unit(n, k - 1);
        }
        m.unit(n, self.r_z()?);
        Ok(m)
    }

    fn gamma_r2(&self) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let mut m = self.rows();
        for i in 0..p - 1 {
            m.unit(i, i + 1);
            m.add(i, p, sc.q);
            m.add(i, n, sc.v - 1);
        }
        m.add(p - 1, p, sc.q + 1);
        m.add(p - 1, n, sc.v - 1);
        m.add(p, 0, sc.lambda - 1);
        m.unit(p, p - 1);
        m.add(p, n, sc.w + sc.v - 1);
        if sc.mu > 0 {
            m.add(n, 0, sc.mu - 1);
            m.unit(n, 1);
            m.add(n, p, sc.q + self.q_z()?);
        } else {
            m.add(n, 0, sc.lambda - 1);
            m.unit(n, p - 1);
            m.add(n, p, self.q_z()? - 1);
        }
        m.unit(n, self.r_z()?);
        Ok(m)
    }

    fn alpha_rp1_q0(&self) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let mut m = self.rows();
        m.add(0, n, sc.v - 1);
        for j in 1..=p {
            m.add(j, 0, sc.nu - 2);
            m.unit(j, j - 1);
            m.add(j, n, sc.w - 1);
        }
        m.add(n, 0, sc.mu - 1);
        m.add(n, p, self.q_z()?);
        m.unit(n, self.r_z()?);
        Ok(m)
    }

    fn alpha_rp1_mu_positive(&self, i: usize) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let mut m = self.rows();
        self.blocks(&mut m, p - i, (sc.q_prime - 1, sc.v - 1), (sc.nu - 2, sc.w - 1));
        self.cyclic_units(&mut m, i);
        m.add(n, 0, sc.mu - 1);
        m.add(n, p, sc.q_prime + self.q_z()? - 1);
        m.unit(n, i);
        m.unit(n, self.r_z()?);
        Ok(m)
    }

    fn alpha_p1(&self) -> Rows {
        let sc = self.sc;
        let u = sc.u as i64;
        let z = sc.z as i64;
        let mut m = self.rows();
        if sc.q_prime > 0 {
            m.replace(0, &[-1, u - z - 1, sc.v - 1]);
            m.replace(2, &[sc.mu - 1, u - 1, -1]);
        } else {
            m.replace(0, &[-1, 0, sc.v - 1]);
            m.replace(2, &[sc.mu - 1, z, -1]);
        }
        m.replace(1, &[sc.nu - 1, -1, sc.w - 1]);
        m
    }

    fn alpha_rp1_mu_zero(&self, i: usize) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let mut m = self.rows();
        self.blocks(&mut m, p - i, (sc.q_prime - 1, sc.v - 1), (sc.nu - 2, sc.w - 1));
        self.cyclic_units(&mut m, i);
        m.add(n, p, sc.q - 1);
        m.unit(n, sc.r + i - 1);
        Ok(m)
    }

    fn alpha_rp_at_least2(&self, i: usize) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let theta = i - p;
        let mut m = self.rows();
        self.blocks(&mut m, p - theta, (sc.q_prime, sc.v - 1), (sc.nu - 1, sc.w - 1));
        m.unit(0, theta);
        for j in 1..=p {
            if j <= p - theta {
                m.unit(j, theta + j);
            } else {
                m.unit(j, theta + j - sc.r_prime);
            }
        }
        let (q_z, r_z) = (self.q_z()?, self.r_z()?);
        m.add(n, p, sc.q_prime + q_z);
        if sc.mu > 0 {
            m.add(n, 0, sc.mu - 1);
            m.unit(n, theta);
            m.unit(n, r_z);
        } else if theta + r_z <= p {
            m.unit(n, theta + r_z);
        } else {
            // outside the recipe's hypothesis; leave an invalid marker row
            m.add(n, 0, -1);
        }
        Ok(m)
    }

    /// `ε ∈ {1, 2}` of the `β` recipes and the index `z + j − p − 1`.
    fn beta_tail(&self, j: usize) -> Option<(usize, i64)> {
        let t = (self.sc.z + j).checked_sub(self.p + 1)?;
        let r_t = self.r_of(t).ok()?;
        let eps = if self.sc.r_prime + r_t <= self.p { 2 } else { 1 };
        Some((t, eps))
    }

    fn beta_last_row(&self, m: &mut Rows, j: usize) -> Result<()> {
        let n = self.col_n;
        match self.beta_tail(j) {
            Some((t, eps)) => {
                m.add(n, 0, self.sc.nu - eps);
                m.add(n, self.p, self.q_of(t)?);
                m.unit(n, self.r_of(t)?);
            }
            None => m.add(n, 0, -1),
        }
        Ok(())
    }

    fn beta_r1_lambda_above1(&self, j: usize) -> Result<Rows> {
        let sc = self.sc;
        let p = self.p;
        let mut m = self.rows();
        self.blocks(&mut m, p - j, (sc.q - 1, sc.v - sc.w - 1), (sc.lambda - 2, sc.v - 1));
        self.cyclic_units(&mut m, j);
        self.beta_last_row(&mut m, j)?;
        Ok(m)
    }

    fn beta_r1_lambda_one(&self, j: usize) -> Result<Rows> {
        let sc = self.sc;
        let (p, n) = (self.p, self.col_n);
        let mut m = self.rows();
        m.unit(0, j);
        for k in 0..=p {
            if k <= p - j {
                m.add(k, p, sc.q - 1);
                m.add(k, n, sc.v - sc.w - 1);
                if k >= 1 {
                    m.unit(k, j + k);
                }
            } else if k == p - j + 1 {
                m.add(k, 0, sc.lambda - 1);
                m.add(k, n, sc.v - 1);
            } else {
                m.add(k, 0, sc.nu - 2);
                m.unit(k, j + k - p - 2);
                m.add(k, n, sc.w - 1);
            }
        }
        self.beta_last_row(&mut m, j)?;
        Ok(m)
    }

    fn beta_p1(&self) -> Rows {
        let sc = self.sc;
        let mut m = self.rows();
        m.replace(0, &[-1, sc.u as i64 - 1, sc.v - sc.w - 1]);
        m.replace(1, &[sc.lambda - 1, -1, sc.v - 1]);
        m.replace(2, &[sc.nu - 1, sc.z as i64 - 1, -1]);
        m
    }

    fn beta_r_at_least2(&self, j: usize) -> Result<Rows> {
        let sc = self.sc;
        let p = self.p;
        let e = 2 * p + 1 - sc.r - j;
        let mut m = self.rows();
        self.blocks(&mut m, e, (sc.q, sc.v - sc.w - 1), (sc.lambda - 1, sc.v - 1));
        self.pivot_units(&mut m, e, j);
        self.beta_last_row(&mut m, j)?;
        Ok(m)
    }
}

/// Closed-form RF-matrices for `f`, one per recipe whose hypotheses hold.
///
/// `f` must be pseudo-Frobenius and equal to one of the `γ`, `α` or `β`
/// candidates of the presentation's regime. Every returned matrix has passed
/// [`validate_rf`].
pub fn rf_closed_form(pres: &AaPresentation, sc: &StructureConstants, f: i64) -> Result<Vec<RfMatrix>> {
    use Construction::*;
    let h = pres.semigroup();
    if !h.is_pseudo_frobenius(f) {
        return Err(RfError::NotPseudoFrobenius(f));
    }
    let p = pres.p();
    let recipe = Recipe {
        pres,
        sc,
        p,
        col_n: p + 1,
    };
    let case = symmetric_case_predicate(p, sc);
    let mut built: Vec<(Construction, Rows)> = Vec::new();

    for candidate in pres.pf_candidates(sc)?.into_iter().filter(|c| c.value == f) {
        match candidate.kind {
            CandidateKind::Gamma(k) => {
                if sc.r == 1 {
                    if sc.lambda > 1 {
                        built.push((GammaR1LambdaAbove1, recipe.gamma_r1_lambda_above1(k)?));
                    } else {
                        built.push((GammaR1LambdaOne, recipe.gamma_r1_lambda_one(k)?));
                    }
                    if p == 1 {
                        built.push((GammaP1, recipe.gamma_p1()));
                    }
                } else {
                    built.push((GammaRAtLeast2, recipe.gamma_r_at_least2(k)?));
                    if sc.r == 2 && k == p {
                        built.push((GammaR2, recipe.gamma_r2()?));
                        if p == 3 {
                            let mut m = recipe.gamma_r2()?;
                            m.replace(0, &[-1, 0, 2, sc.q - 1, sc.v - 1]);
                            built.push((GammaP3Alternate, m));
                        }
                    }
                }
            }
            CandidateKind::Alpha(i) => match sc.r_prime {
                1 if sc.mu > 0 => {
                    if sc.q_prime == 0 {
                        built.push((AlphaRp1Q0, recipe.alpha_rp1_q0()?));
                    } else {
                        built.push((AlphaRp1MuPositive, recipe.alpha_rp1_mu_positive(i)?));
                    }
                    if p == 1 {
                        built.push((AlphaP1, recipe.alpha_p1()));
                    }
                }
                1 => {
                    if sc.q_prime > 0 && sc.r >= 2 && i <= p + 1 - sc.r {
                        built.push((AlphaRp1MuZero, recipe.alpha_rp1_mu_zero(i)?));
                    }
                }
                _ => {
                    built.push((AlphaRpAtLeast2, recipe.alpha_rp_at_least2(i)?));
                    if case == SymmetricCase::NonEmptyR1Rp2 && i == p + 1 {
                        if p == 2 {
                            let mut m = recipe.alpha_rp_at_least2(i)?;
                            m.replace(3, &[sc.nu - 1, 0, sc.q, -1]);
                            built.push((AlphaP2Alternate, m));
                        }
                        if p == 3 {
                            let mut m = recipe.alpha_rp_at_least2(i)?;
                            m.replace(3, &[sc.mu - 1, 2, 0, -1, sc.w - 1]);
                            built.push((AlphaP3Alternate, m));
                            if sc.q_prime >= 1 {
                                let mut m = recipe.alpha_rp_at_least2(i)?;
                                m.replace(0, &[-1, 0, 2, sc.q_prime - 1, sc.v - 1]);
                                m.replace(4, &[sc.mu, 0, 0, sc.q_prime + 1, -1]);
                                built.push((AlphaP3SecondAlternate, m));
                            }
                        }
                    }
                }
            },
            CandidateKind::Beta(j) => {
                if sc.r == 1 {
                    if sc.lambda > 1 {
                        built.push((BetaR1LambdaAbove1, recipe.beta_r1_lambda_above1(j)?));
                    } else {
                        built.push((BetaR1LambdaOne, recipe.beta_r1_lambda_one(j)?));
                    }
                    if p == 1 {
                        built.push((BetaP1, recipe.beta_p1()));
                    }
                } else {
                    built.push((BetaRAtLeast2, recipe.beta_r_at_least2(j)?));
                    if j == p && p == 2 && case == SymmetricCase::NonEmptyR2Rp1 {
                        let mut m = recipe.beta_r_at_least2(j)?;
                        m.replace(1, &[sc.lambda, -1, 0, sc.v - 1]);
                        built.push((BetaP2Alternate, m));
                    }
                    if j == p
                        && p == 3
                        && matches!(case, SymmetricCase::NonEmptyR2Rp1 | SymmetricCase::NonEmptyR2Rp2)
                    {
                        let mut m = recipe.beta_r_at_least2(j)?;
                        m.replace(0, &[-1, 0, 2, sc.q - 1, sc.v - sc.w - 1]);
                        if case == SymmetricCase::NonEmptyR2Rp1 {
                            m.replace(4, &[sc.lambda - 1, 1, 1, sc.q - 1, -1]);
                        }
                        built.push((BetaP3Alternate, m));
                    }
                }
            }
        }
    }

    if built.is_empty() {
        return Err(RfError::NoApplicableCase(f));
    }
    let gens = h.generators();
    built
        .into_iter()
        .map(|(construction, rows)| {
            if let Some((row, entries)) = rows
                .rows
                .iter()
                .enumerate()
                .find(|(i, r)| !valid_row(gens, f, *i, r))
            {
                return Err(RfError::ConstructionInvalid {
                    construction,
                    f,
                    row,
                    entries: entries.clone(),
                });
            }
            Ok(RfMatrix {
                f,
                rows: rows.rows,
                source: RfSource::ClosedForm(construction),
            })
        })
        .collect()
}

/// For each row index `i`, every admissible `i`-th row: factorizations of
/// `f + gᵢ` with coordinate `i` zero, installed with `−1` on the diagonal.
pub fn row_sets(h: &NumericalSemigroup, f: i64) -> Result<Vec<Vec<Vec<i64>>>> {
    if !h.is_pseudo_frobenius(f) {
        return Err(RfError::NotPseudoFrobenius(f));
    }
    Ok(h.generators()
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            h.factorization_vectors(f + g, Some(i))
                .into_iter()
                .map(|fac| {
                    let mut row: Vec<i64> = fac.into_iter().map(|a| a as i64).collect();
                    row[i] = -1;
                    row
                })
                .collect()
        })
        .collect())
}

/// Lazy Cartesian product over the row sets, last row varying fastest.
pub struct RfEnumeration {
    f: i64,
    rows: Vec<Vec<Vec<i64>>>,
    cursor: Option<Vec<usize>>,
    remaining: Option<usize>,
}

impl Iterator for RfEnumeration {
    type Item = RfMatrix;

    fn next(&mut self) -> Option<RfMatrix> {
        if self.remaining == Some(0) {
            return None;
        }
        let cursor = self.cursor.as_mut()?;
        let matrix = RfMatrix {
            f: self.f,
            rows: cursor
                .iter()
                .zip(&self.rows)
                .map(|(&c, set)| set[c].clone())
                .collect(),
            source: RfSource::Enumerated,
        };
        // advance the odometer
        let mut i = cursor.len();
        loop {
            if i == 0 {
                self.cursor = None;
                break;
            }
            i -= 1;
            cursor[i] += 1;
            if cursor[i] < self.rows[i].len() {
                break;
            }
            cursor[i] = 0;
        }
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        Some(matrix)
    }
}

/// Every RF-matrix of `f`, each exactly once, stopping after `limit` if given.
pub fn rf_enumerate(h: &NumericalSemigroup, f: i64, limit: Option<usize>) -> Result<RfEnumeration> {
    let rows = row_sets(h, f)?;
    // a pseudo-Frobenius number has at least one choice per row
    let cursor = rows.iter().all(|s| !s.is_empty()).then(|| vec![0; rows.len()]);
    Ok(RfEnumeration {
        f,
        rows,
        cursor,
        remaining: limit,
    })
}

/// Number of RF-matrices of `f`: the product of the row-set sizes.
pub fn rf_count(h: &NumericalSemigroup, f: i64) -> Result<u128> {
    row_sets(h, f)?
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
        .ok_or(RfError::CountOverflow)
}

/// A pure binomial `x^plus − x^minus` of the defining ideal.
///
/// Normalized so that `plus` is the lexicographically larger exponent vector;
/// `plus` and `minus` have disjoint supports and the same degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Binomial {
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
    pub degree: i64,
}

impl Binomial {
    /// The binomial of an exponent difference `δ = δ⁺ − δ⁻`; `None` for `δ = 0`.
    pub fn from_difference(delta: &[i64], gens: &[i64]) -> Option<Self> {
        if delta.iter().all(|&x| x == 0) {
            return None;
        }
        let pos: Vec<u64> = delta.iter().map(|&x| x.max(0) as u64).collect();
        let neg: Vec<u64> = delta.iter().map(|&x| (-x).max(0) as u64).collect();
        let (plus, minus) = if pos >= neg { (pos, neg) } else { (neg, pos) };
        let degree = crate::semigroup::dot(&plus, gens);
        Some(Self {
            plus,
            minus,
            degree,
        })
    }

    /// `x^a − x^b` for two factorizations of the same element.
    pub fn from_pair(a: &[u64], b: &[u64], gens: &[i64]) -> Option<Self> {
        let delta: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect();
        Self::from_difference(&delta, gens)
    }

    pub fn is_in_ideal(&self, gens: &[i64]) -> bool {
        let disjoint = self
            .plus
            .iter()
            .zip(&self.minus)
            .all(|(&a, &b)| a == 0 || b == 0);
        disjoint
            && self.plus != self.minus
            && crate::semigroup::dot(&self.plus, gens) == self.degree
            && crate::semigroup::dot(&self.minus, gens) == self.degree
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn monomial(f: &mut fmt::Formatter<'_>, e: &[u64]) -> fmt::Result {
            let mut first = true;
            for (i, &a) in e.iter().enumerate().filter(|(_, &a)| a > 0) {
                if !first {
                    f.write_str("·")?;
                }
                first = false;
                if a == 1 {
                    write!(f, "x{i}")?;
                } else {
                    write!(f, "x{i}^{a}")?;
                }
            }
            if first {
                f.write_str("1")?;
            }
            Ok(())
        }
        monomial(f, &self.plus)?;
        f.write_str(" - ")?;
        monomial(f, &self.minus)
    }
}

/// The binomials `x^{δ⁺} − x^{δ⁻}` of `δ = δⱼ − δᵢ` over all row pairs `i < j`.
pub fn rf_relations(h: &NumericalSemigroup, m: &RfMatrix) -> BTreeSet<Binomial> {
    let gens = h.generators();
    let mut out = BTreeSet::new();
    for i in 0..m.rows.len() {
        for j in i + 1..m.rows.len() {
            let delta: Vec<i64> = m.rows[j].iter().zip(&m.rows[i]).map(|(b, a)| b - a).collect();
            if let Some(b) = Binomial::from_difference(&delta, gens) {
                out.insert(b);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub rows: (usize, usize),
    pub source: RfSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RfRelationSet {
    pub f: i64,
    pub relations: BTreeMap<Binomial, Provenance>,
}

impl RfRelationSet {
    pub fn binomials(&self) -> impl Iterator<Item = &Binomial> {
        self.relations.keys()
    }

    pub fn contains(&self, b: &Binomial) -> bool {
        self.relations.contains_key(b)
    }
}

/// All RF(f)-relations over every RF-matrix of `f`.
///
/// Rows are chosen independently per index, so this pairs the row sets
/// directly instead of walking the matrices.
pub fn all_rf_relations(h: &NumericalSemigroup, f: i64) -> Result<RfRelationSet> {
    let sets = row_sets(h, f)?;
    let gens = h.generators();
    let mut relations = BTreeMap::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            for a in &sets[i] {
                for b in &sets[j] {
                    let delta: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                    if let Some(bin) = Binomial::from_difference(&delta, gens) {
                        relations.entry(bin).or_insert(Provenance {
                            rows: (i, j),
                            source: RfSource::Enumerated,
                        });
                    }
                }
            }
        }
    }
    Ok(RfRelationSet { f, relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(m0: i64, d: i64, p: usize, n: i64) -> (AaPresentation, StructureConstants) {
        let pres = AaPresentation::new(m0, d, p, n).unwrap();
        let sc = pres.structure_constants().unwrap();
        (pres, sc)
    }

    fn closed_rows(pres: &AaPresentation, sc: &StructureConstants, f: i64, c: Construction) -> Vec<Vec<i64>> {
        rf_closed_form(pres, sc, f)
            .unwrap()
            .into_iter()
            .find(|m| m.source == RfSource::ClosedForm(c))
            .unwrap_or_else(|| panic!("{c} not produced"))
            .rows
    }

    #[test]
    fn worked_example_gamma_matrices() {
        let (pres, sc) = setup(14, 3, 4, 21);
        assert_eq!(
            closed_rows(&pres, &sc, 50, Construction::GammaRAtLeast2),
            vec![
                vec![-1, 1, 0, 0, 1, 1],
                vec![0, -1, 1, 0, 1, 1],
                vec![0, 0, -1, 1, 1, 1],
                vec![0, 0, 0, -1, 2, 1],
                vec![1, 0, 1, 0, -1, 2],
                vec![2, 1, 0, 0, 1, -1],
            ]
        );
        assert_eq!(
            closed_rows(&pres, &sc, 53, Construction::GammaRAtLeast2),
            vec![
                vec![-1, 0, 1, 0, 1, 1],
                vec![0, -1, 0, 1, 1, 1],
                vec![0, 0, -1, 0, 2, 1],
                vec![1, 0, 1, -1, 0, 2],
                vec![1, 0, 0, 1, -1, 2],
                vec![2, 0, 1, 0, 1, -1],
            ]
        );
    }

    #[test]
    fn worked_example_symmetric_matrix() {
        let (pres, sc) = setup(10, 9, 3, 35);
        let expected = vec![
            vec![-1, 1, 0, 1, 1],
            vec![0, -1, 1, 1, 1],
            vec![0, 0, -1, 2, 1],
            vec![2, 0, 1, -1, 2],
            vec![6, 1, 0, 1, -1],
        ];
        assert_eq!(closed_rows(&pres, &sc, 81, Construction::GammaRAtLeast2), expected);
        assert_eq!(closed_rows(&pres, &sc, 81, Construction::GammaR2), expected);
        let alt = closed_rows(&pres, &sc, 81, Construction::GammaP3Alternate);
        assert_eq!(alt[0], vec![-1, 0, 2, 0, 1]);
    }

    #[test]
    fn worked_example_alpha_matrix() {
        let (pres, sc) = setup(11, 2, 4, 21);
        assert_eq!(
            closed_rows(&pres, &sc, 31, Construction::AlphaRp1Q0),
            vec![
                vec![-1, 0, 0, 0, 0, 2],
                vec![4, -1, 0, 0, 0, 0],
                vec![3, 1, -1, 0, 0, 0],
                vec![3, 0, 1, -1, 0, 0],
                vec![3, 0, 0, 1, -1, 0],
                vec![3, 0, 0, 0, 1, -1],
            ]
        );
    }

    #[test]
    fn closed_form_rejects_non_pf() {
        let (pres, sc) = setup(14, 3, 4, 21);
        assert_eq!(rf_closed_form(&pres, &sc, 49), Err(RfError::NotPseudoFrobenius(49)));
        assert_eq!(rf_closed_form(&pres, &sc, 52), Err(RfError::NotPseudoFrobenius(52)));
    }

    #[test]
    fn validation() {
        let (pres, sc) = setup(14, 3, 4, 21);
        let h = pres.semigroup();
        let m = rf_closed_form(&pres, &sc, 50).unwrap().remove(0);
        assert!(validate_rf(h, 50, &m));
        assert!(!validate_rf(h, 53, &m));
        let zero = RfMatrix {
            f: 50,
            rows: vec![vec![0; 6]; 6],
            source: RfSource::External,
        };
        assert!(!validate_rf(h, 50, &zero));

        let (pres, sc) = setup(10, 9, 3, 35);
        let mut m = rf_closed_form(&pres, &sc, 81).unwrap().remove(0);
        m.rows[4][1] += 1;
        assert!(!validate_rf(pres.semigroup(), 81, &m));
    }

    #[test]
    fn enumeration_counts() {
        let (pres, _) = setup(14, 3, 4, 21);
        let h = pres.semigroup();
        assert_eq!(rf_count(h, 50), Ok(720));
        assert_eq!(rf_count(h, 53), Ok(2520));
        assert_eq!(rf_enumerate(h, 50, None).unwrap().count(), 720);
        assert_eq!(rf_enumerate(h, 53, Some(10)).unwrap().count(), 10);
        assert!(matches!(rf_count(h, 49), Err(RfError::NotPseudoFrobenius(49))));

        let h = NumericalSemigroup::new(&[2, 3]).unwrap();
        let all: Vec<_> = rf_enumerate(&h, 1, None).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].rows, vec![vec![-1, 1], vec![2, -1]]);
        assert_eq!(rf_count(&h, 1), Ok(1));
    }

    #[test]
    fn enumeration_matches_full_product_oracle() {
        // brute force: every integer matrix with diagonal −1 and off-diagonal
        // entries bounded by f + max generator, filtered by validity
        let h = NumericalSemigroup::new(&[3, 4, 5]).unwrap();
        for f in h.pseudo_frobenius() {
            let gens = h.generators();
            let bound = (f + gens[2]) / gens[0];
            let mut rows_oracle: Vec<Vec<Vec<i64>>> = vec![Vec::new(); 3];
            for (i, set) in rows_oracle.iter_mut().enumerate() {
                for a in 0..=bound {
                    for b in 0..=bound {
                        let mut row = vec![0; 3];
                        let others: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                        row[i] = -1;
                        row[others[0]] = a;
                        row[others[1]] = b;
                        if row.iter().zip(gens).map(|(x, g)| x * g).sum::<i64>() == f {
                            set.push(row);
                        }
                    }
                }
            }
            let mut oracle = Vec::new();
            for r0 in &rows_oracle[0] {
                for r1 in &rows_oracle[1] {
                    for r2 in &rows_oracle[2] {
                        oracle.push(vec![r0.clone(), r1.clone(), r2.clone()]);
                    }
                }
            }
            let mut got: Vec<_> = rf_enumerate(&h, f, None).unwrap().map(|m| m.rows).collect();
            got.sort();
            oracle.sort();
            assert_eq!(got, oracle, "f = {f}");
        }
    }

    #[test]
    fn relations_of_a_matrix() {
        let h = NumericalSemigroup::new(&[2, 3]).unwrap();
        let m = rf_enumerate(&h, 1, None).unwrap().next().unwrap();
        let rel: Vec<_> = rf_relations(&h, &m).into_iter().collect();
        assert_eq!(
            rel,
            vec![Binomial {
                plus: vec![3, 0],
                minus: vec![0, 2],
                degree: 6
            }]
        );
        let all = all_rf_relations(&h, 1).unwrap();
        assert_eq!(all.binomials().cloned().collect::<Vec<_>>(), rel);

        let dup = RfMatrix {
            f: 1,
            rows: vec![vec![-1, 1], vec![-1, 1]],
            source: RfSource::External,
        };
        assert!(rf_relations(&h, &dup).is_empty());
    }

    #[test]
    fn symmetric_example_relations_contain_quadrics() {
        let (pres, _) = setup(10, 9, 3, 35);
        let h = pres.semigroup();
        let all = all_rf_relations(h, 81).unwrap();
        let gens = h.generators();
        for (a, b) in [
            (vec![1, 0, 1, 0, 0], vec![0, 2, 0, 0, 0]),
            (vec![1, 0, 0, 1, 0], vec![0, 1, 1, 0, 0]),
            (vec![0, 1, 0, 1, 0], vec![0, 0, 2, 0, 0]),
        ] {
            let bin = Binomial::from_pair(&a, &b, gens).unwrap();
            assert!(all.contains(&bin), "{bin}");
        }
    }

    #[test]
    fn binomial_normalization() {
        let gens = [2, 3];
        let a = Binomial::from_difference(&[3, -2], &gens).unwrap();
        let b = Binomial::from_difference(&[-3, 2], &gens).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.plus, vec![3, 0]);
        assert!(a.is_in_ideal(&gens));
        assert_eq!(Binomial::from_difference(&[0, 0], &gens), None);
        assert_eq!(a.to_string(), "x0^3 - x1^2");
    }
}

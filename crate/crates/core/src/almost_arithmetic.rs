//! Semigroups `H = ⟨m₀, m₀+d, …, m₀+pd, n⟩` generated by an almost arithmetic
//! sequence.
//!
//! Everything here is phrased through the sequence `g_t = q_t·m_p + m_{r_t}`
//! with `t = q_t·p + r_t`, `r_t ∈ [1, p]`. For `t = 0` the same decomposition
//! gives `q₀ = −1, r₀ = p` and hence `g₀ = 0`, which is the value every
//! closed-form construction expects.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{gcd, NumericalSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AaError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("gcd(m0, d, n) = {0}, expected 1")]
    GcdNotOne(i64),
    #[error("{{m0, …, mp, n}} is not a minimal generating set: {0} is redundant")]
    NotMinimal(i64),
    #[error("arithmetic overflow while evaluating g_{0}")]
    Overflow(usize),
    #[error("structure constants violate their defining identities: {0}")]
    InvariantViolation(String),
    #[error("operation requires W {expected}, but W is {actual}")]
    WrongRegime {
        expected: &'static str,
        actual: &'static str,
    },
    #[error("index {index} is outside the admissible set {admissible}")]
    IndexOutOfRange { index: usize, admissible: String },
    #[error("symmetric-case predicate {predicate} disagrees with brute-force type {type_of}")]
    ClassificationMismatch {
        predicate: SymmetricCase,
        type_of: usize,
    },
}

pub type Result<T, E = AaError> = std::result::Result<T, E>;

/// `g_t` together with its decomposition `t = q·p + r`, `r ∈ [1, p]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GTerm {
    pub value: i64,
    pub q: i64,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AaPresentation {
    m0: i64,
    d: i64,
    p: usize,
    n: i64,
    semigroup: NumericalSemigroup,
}

impl AaPresentation {
    pub fn new(m0: i64, d: i64, p: usize, n: i64) -> Result<Self> {
        if m0 < 2 {
            return Err(AaError::InvalidParameter(format!("m0 = {m0}, need m0 >= 2")));
        }
        if d < 1 {
            return Err(AaError::InvalidParameter(format!("d = {d}, need d >= 1")));
        }
        if p < 1 {
            return Err(AaError::InvalidParameter("p = 0, need p >= 1".into()));
        }
        if n < 1 {
            return Err(AaError::InvalidParameter(format!("n = {n}, need n >= 1")));
        }
        let g = gcd(gcd(m0, d), n);
        if g != 1 {
            return Err(AaError::GcdNotOne(g));
        }
        let mut columns = Vec::with_capacity(p + 2);
        for i in 0..=p as i64 {
            let m = d
                .checked_mul(i)
                .and_then(|x| x.checked_add(m0))
                .ok_or(AaError::Overflow(i as usize))?;
            columns.push(m);
        }
        columns.push(n);
        let semigroup = NumericalSemigroup::from_minimal_generators(&columns).map_err(|e| match e {
            SemigroupError::NotMinimal(g) => AaError::NotMinimal(g),
            other => AaError::Semigroup(other),
        })?;
        Ok(Self {
            m0,
            d,
            p,
            n,
            semigroup,
        })
    }

    pub fn m0(&self) -> i64 {
        self.m0
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// `m_i = m₀ + i·d`.
    pub fn m(&self, i: usize) -> i64 {
        self.m0 + i as i64 * self.d
    }

    /// The semigroup with columns `m₀, …, m_p, n`.
    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn generators(&self) -> &[i64] {
        self.semigroup.generators()
    }

    pub fn g(&self, t: usize) -> Result<GTerm> {
        let p = self.p;
        if t == 0 {
            return Ok(GTerm {
                value: 0,
                q: -1,
                r: p,
            });
        }
        let q = (t - 1) / p;
        let r = t - q * p;
        let value = (q as i64)
            .checked_mul(self.m(p))
            .and_then(|x| x.checked_add(self.m(r)))
            .ok_or(AaError::Overflow(t))?;
        Ok(GTerm {
            value,
            q: q as i64,
            r,
        })
    }

    fn gv(&self, t: usize) -> Result<i64> {
        Ok(self.g(t)?.value)
    }

    /// Membership in `H' = ⟨m₀, …, m_p⟩`: `x = k·m₀ + j·d` with `0 ≤ j ≤ k·p`.
    pub fn in_arithmetic_part(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        (0..=x / self.m0).any(|k| {
            let rest = x - k * self.m0;
            rest % self.d == 0 && rest / self.d <= k * self.p as i64
        })
    }

    pub fn structure_constants(&self) -> Result<StructureConstants> {
        let h = &self.semigroup;
        let m0 = self.m0;
        let n = self.n;

        let mut u = 1;
        while !h.contains(self.gv(u)? - m0) {
            u += 1;
        }
        let mut v: i64 = 1;
        while !self.in_arithmetic_part(v * n) {
            v += 1;
        }
        let g_u = self.g(u)?;

        let lw: Vec<(i64, i64)> = (0..v)
            .filter_map(|w| {
                let rest = g_u.value - w * n;
                (rest >= m0 && rest % m0 == 0).then_some((w, rest / m0))
            })
            .collect();
        let &[(w, lambda)] = lw.as_slice() else {
            return Err(AaError::InvariantViolation(format!(
                "expected a unique (w, λ) with g_u = λm₀ + wn, found {lw:?}"
            )));
        };

        let mut zm = Vec::new();
        for z in 0..u {
            let rest = v * n - self.gv(z)?;
            if rest >= 0 && rest % m0 == 0 {
                zm.push((z, rest / m0));
            }
        }
        let &[(z, mu)] = zm.as_slice() else {
            return Err(AaError::InvariantViolation(format!(
                "expected a unique (z, μ) with vn = μm₀ + g_z, found {zm:?}"
            )));
        };

        let g_uz = self.g(u - z)?;
        let lhs = g_uz.value + (v - w) * n;
        if lhs % m0 != 0 {
            return Err(AaError::InvariantViolation(format!(
                "g_(u-z) + (v-w)n = {lhs} is not a multiple of m0"
            )));
        }
        let nu = lhs / m0;
        let epsilon = i64::from(g_uz.r < g_u.r);
        if nu != lambda + mu + epsilon {
            return Err(AaError::InvariantViolation(format!(
                "ν = {nu} but λ + μ + ε = {}",
                lambda + mu + epsilon
            )));
        }

        let rectangle = (w != 0 && z != 0).then(|| Rectangle {
            t: (u - z, u - 1),
            b: (v - w, v - 1),
        });

        Ok(StructureConstants {
            u,
            v,
            z,
            w,
            lambda,
            mu,
            nu,
            q: g_u.q,
            r: g_u.r,
            q_prime: g_uz.q,
            r_prime: g_uz.r,
            epsilon,
            rectangle,
        })
    }

    /// `γ_k = g_{(q−1)p+r+k−1} + (v−1)n − m₀`.
    pub fn gamma(&self, sc: &StructureConstants, k: usize) -> Result<i64> {
        sc.require_empty()?;
        check_index(k, &(1..=self.p))?;
        let t = sc.u - self.p + k - 1;
        Ok(self.gv(t)? + (sc.v - 1) * self.n - self.m0)
    }

    /// `α_i = g_{(q′−1)p+i} + (v−1)n − m₀`.
    pub fn alpha(&self, sc: &StructureConstants, i: usize) -> Result<i64> {
        sc.require_nonempty()?;
        check_index(i, &self.alpha_indices(sc))?;
        // (q′−1)p + i ≥ 0 on the admissible set
        let t = (sc.q_prime - 1) * self.p as i64 + i as i64;
        Ok(self.gv(t as usize)? + (sc.v - 1) * self.n - self.m0)
    }

    /// `β_j = g_{(q−1)p+r+j−1} + (v−w−1)n − m₀`.
    pub fn beta(&self, sc: &StructureConstants, j: usize) -> Result<i64> {
        sc.require_nonempty()?;
        check_index(j, &(1..=self.p))?;
        let t = sc.u - self.p + j - 1;
        Ok(self.gv(t)? + (sc.v - sc.w - 1) * self.n - self.m0)
    }

    /// Indices `k` whose `γ_k` are the pseudo-Frobenius numbers when `W = ∅`.
    pub fn gamma_indices(&self, sc: &StructureConstants) -> RangeInclusive<usize> {
        self.top_indices(sc)
    }

    /// Indices `j` whose `β_j` may be pseudo-Frobenius when `W ≠ ∅`.
    pub fn beta_indices(&self, sc: &StructureConstants) -> RangeInclusive<usize> {
        self.top_indices(sc)
    }

    fn top_indices(&self, sc: &StructureConstants) -> RangeInclusive<usize> {
        if sc.r == 1 {
            1..=self.p
        } else {
            self.p - sc.r + 2..=self.p
        }
    }

    /// The index set `I` of the `α_i` candidates.
    pub fn alpha_indices(&self, sc: &StructureConstants) -> RangeInclusive<usize> {
        let p = self.p;
        match (sc.r_prime, sc.q_prime) {
            (1, 0) => p..=p,
            (1, _) => 1..=p,
            (rp, _) => p + 1..=p + rp - 1,
        }
    }

    /// Every candidate pseudo-Frobenius value for the regime of `sc`, each
    /// flagged by whether brute force confirms it.
    pub fn pf_candidates(&self, sc: &StructureConstants) -> Result<Vec<PfCandidate>> {
        let h = &self.semigroup;
        let mut out = Vec::new();
        if sc.rectangle.is_none() {
            for k in self.gamma_indices(sc) {
                let value = self.gamma(sc, k)?;
                out.push(PfCandidate {
                    kind: CandidateKind::Gamma(k),
                    value,
                    confirmed: h.is_pseudo_frobenius(value),
                });
            }
        } else {
            for i in self.alpha_indices(sc) {
                let value = self.alpha(sc, i)?;
                out.push(PfCandidate {
                    kind: CandidateKind::Alpha(i),
                    value,
                    confirmed: h.is_pseudo_frobenius(value),
                });
            }
            for j in self.beta_indices(sc) {
                let value = self.beta(sc, j)?;
                out.push(PfCandidate {
                    kind: CandidateKind::Beta(j),
                    value,
                    confirmed: h.is_pseudo_frobenius(value),
                });
            }
        }
        Ok(out)
    }

    /// The symmetric case the structure constants fall into, cross-checked
    /// against the brute-force type.
    pub fn classify_symmetric(&self, sc: &StructureConstants) -> Result<SymmetricCase> {
        let predicate = symmetric_case_predicate(self.p, sc);
        let type_of = self.semigroup.type_of();
        match (predicate, type_of) {
            (SymmetricCase::NotSymmetric, t) if t != 1 => Ok(SymmetricCase::NotSymmetric),
            (case, 1) if case != SymmetricCase::NotSymmetric => Ok(case),
            (predicate, type_of) => Err(AaError::ClassificationMismatch { predicate, type_of }),
        }
    }
}

impl fmt::Display for AaPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

fn check_index(index: usize, admissible: &RangeInclusive<usize>) -> Result<()> {
    if admissible.contains(&index) {
        Ok(())
    } else {
        Err(AaError::IndexOutOfRange {
            index,
            admissible: format!("[{}, {}]", admissible.start(), admissible.end()),
        })
    }
}

/// `W = [t.0, t.1] × [b.0, b.1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    pub t: (usize, usize),
    pub b: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstants {
    pub u: usize,
    pub v: i64,
    pub z: usize,
    pub w: i64,
    pub lambda: i64,
    pub mu: i64,
    pub nu: i64,
    /// `q_u`
    pub q: i64,
    /// `r_u`
    pub r: usize,
    /// `q_{u−z}`
    pub q_prime: i64,
    /// `r_{u−z}`
    pub r_prime: usize,
    /// 1 iff `r_{u−z} < r_u`.
    pub epsilon: i64,
    /// `W`; `None` when empty.
    pub rectangle: Option<Rectangle>,
}

impl StructureConstants {
    pub fn w_is_empty(&self) -> bool {
        self.rectangle.is_none()
    }

    fn regime(&self) -> &'static str {
        if self.w_is_empty() {
            "empty"
        } else {
            "nonempty"
        }
    }

    fn require_empty(&self) -> Result<()> {
        if self.w_is_empty() {
            Ok(())
        } else {
            Err(AaError::WrongRegime {
                expected: "empty",
                actual: self.regime(),
            })
        }
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.w_is_empty() {
            Err(AaError::WrongRegime {
                expected: "nonempty",
                actual: self.regime(),
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum CandidateKind {
    Gamma(usize),
    Alpha(usize),
    Beta(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfCandidate {
    pub kind: CandidateKind,
    pub value: i64,
    pub confirmed: bool,
}

/// Parameter regimes in which the semigroup has type 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SymmetricCase {
    #[serde(rename = "NotSymmetric")]
    NotSymmetric,
    /// `W = ∅, p = 1, r = 1`
    #[serde(rename = "C1_P1R1")]
    EmptyP1R1,
    /// `W = ∅, r = 2`
    #[serde(rename = "C1_R2")]
    EmptyR2,
    /// `W ≠ ∅, p = 1, μ = 0`
    #[serde(rename = "C2_P1MU0")]
    NonEmptyP1Mu0,
    /// `r = 1, r′ = 2, λ = 1, z < p`
    #[serde(rename = "C2_SUB_I")]
    NonEmptyR1Rp2,
    /// `r = 2, r′ = 1, μ = 0, q′ = 0`
    #[serde(rename = "C2_SUB_II")]
    NonEmptyR2Rp1,
    /// `r = 2, r′ = 2, μ = 0`
    #[serde(rename = "C2_SUB_III")]
    NonEmptyR2Rp2,
}

impl fmt::Display for SymmetricCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Self::NotSymmetric => "NotSymmetric",
            Self::EmptyP1R1 => "C1_P1R1",
            Self::EmptyR2 => "C1_R2",
            Self::NonEmptyP1Mu0 => "C2_P1MU0",
            Self::NonEmptyR1Rp2 => "C2_SUB_I",
            Self::NonEmptyR2Rp1 => "C2_SUB_II",
            Self::NonEmptyR2Rp2 => "C2_SUB_III",
        };
        f.write_str(tag)
    }
}

/// The symmetric case read from the structure constants alone, without any
/// brute-force confirmation.
pub fn symmetric_case_predicate(p: usize, sc: &StructureConstants) -> SymmetricCase {
    use SymmetricCase::*;
    if sc.w_is_empty() {
        return match (p, sc.r) {
            (1, 1) => EmptyP1R1,
            (_, 2) => EmptyR2,
            _ => NotSymmetric,
        };
    }
    if p == 1 {
        return if sc.mu == 0 { NonEmptyP1Mu0 } else { NotSymmetric };
    }
    match (sc.r, sc.r_prime) {
        (1, 2) if sc.lambda == 1 && sc.z < p => NonEmptyR1Rp2,
        (2, 1) if sc.mu == 0 && sc.q_prime == 0 => NonEmptyR2Rp1,
        (2, 2) if sc.mu == 0 => NonEmptyR2Rp2,
        _ => NotSymmetric,
    }
}

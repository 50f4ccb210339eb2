//! Pairwise error probabilities and the union bound on the average bit
//! error rate (ABER).
//!
//! Conditioned on a channel draw, transmitted `(c*, s*)` is confused with
//! `(ĉ, ŝ)` when the per-branch ML metric of the wrong hypothesis is
//! smaller. Two closed forms cover all pairs:
//!
//! - same branch (`ĉ = c*`): with `d = √P·S[c*,c*]·(s* − ŝ)` and branch
//!   noise `CN(0, σ_b²)`, the metric difference `ζ = 2Re{nᴴ·d} + |d|²` is
//!   Gaussian with mean `|d|²` and variance `2σ_b²|d|²`, so the error
//!   probability is `Q(|d|² / (√2·σ_b·|d|))`.
//! - different branch (`ĉ ≠ c*`): the whitened branch noises are
//!   independent, so the event compares a central and a non-central
//!   chi-squared variable with two degrees of freedom. With
//!   `Λ = 2|Δ|²/σ_b²`, `Δ = √P·(S[ĉ,c*]·s* − S[ĉ,ĉ]·ŝ)`, the probability is
//!   `exp(−Λ/4)/2`.
//!
//! The ABER bound weights every pair by its Hamming distance and averages
//! over channel draws:
//!
//! ```text
//! ABER ≤ 1/(η·M·B) · Σ_{c*,s*} Σ_{(ĉ,ŝ)≠(c*,s*)} E_b · P(pair)
//! ```

use std::f64::consts::SQRT_2;

use crate::harness::Scenario;
use crate::signal_chain::Link;
use crate::units::dbm_to_watts;
use crate::{Error, Result};

/// Gaussian tail probability `Q(x) = P(N(0,1) > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(x / SQRT_2)
}

/// Which closed form a pairwise term uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PepKind {
    CorrectIndex,
    ErroneousIndex,
}

/// One conditional pairwise error probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PepTerm {
    pub kind: PepKind,
    pub value: f64,
    /// `((c*, s*), (ĉ, ŝ))`.
    pub hypothesis: ((usize, usize), (usize, usize)),
}

fn check_index(link: &Link, c: usize, s: usize) -> Result<()> {
    let m = link.mapper();
    if c >= m.codebook_order() || s >= m.psk_order() {
        return Err(Error::IndexOutOfRange(format!(
            "hypothesis ({c}, {s}) with B={}, M={}",
            m.codebook_order(),
            m.psk_order()
        )));
    }
    Ok(())
}

/// `P({c*, s*} → {c*, ŝ})` for a fixed channel.
pub fn cpep_correct(
    link: &Link,
    c_true: usize,
    s_true: usize,
    s_hat: usize,
    power_w: f64,
) -> Result<f64> {
    check_index(link, c_true, s_true)?;
    check_index(link, c_true, s_hat)?;
    if s_true == s_hat {
        return Err(Error::InvalidParameter(
            "correct-index pairwise error needs s* != ŝ".into(),
        ));
    }
    let m = link.mapper();
    let d =
        link.responses()[(c_true, c_true)] * (m.point(s_true) - m.point(s_hat)) * power_w.sqrt();
    let sigma_b = link.branch_noise_variance(c_true).sqrt();
    // ‖f f^H h‖ = ‖f‖·|f^H h|, folded into sigma_b.
    let mean = d.norm_sqr();
    let spread = SQRT_2 * sigma_b * d.norm();
    let arg = if spread > 0.0 { mean / spread } else { 0.0 };
    Ok(q_function(arg))
}

/// `exp(−Λ/4)/2`.
pub fn chi_squared_pep(noncentrality: f64) -> f64 {
    0.5 * (-noncentrality / 4.0).exp()
}

/// Non-centrality `Λ` of the wrong branch for `{c*, s*} → {ĉ, ŝ}`.
pub fn noncentrality(
    link: &Link,
    c_true: usize,
    s_true: usize,
    c_hat: usize,
    s_hat: usize,
    power_w: f64,
) -> f64 {
    let m = link.mapper();
    let s = link.responses();
    let delta = (s[(c_hat, c_true)] * m.point(s_true) - s[(c_hat, c_hat)] * m.point(s_hat))
        * power_w.sqrt();
    2.0 * delta.norm_sqr() / link.branch_noise_variance(c_hat)
}

/// `P({c*, s*} → {ĉ, ŝ})` with `ĉ ≠ c*` for a fixed channel.
pub fn cpep_erroneous(
    link: &Link,
    c_true: usize,
    s_true: usize,
    c_hat: usize,
    s_hat: usize,
    power_w: f64,
) -> Result<f64> {
    check_index(link, c_true, s_true)?;
    check_index(link, c_hat, s_hat)?;
    if c_true == c_hat {
        return Err(Error::InvalidParameter(
            "erroneous-index pairwise error needs ĉ != c*".into(),
        ));
    }
    Ok(chi_squared_pep(noncentrality(
        link, c_true, s_true, c_hat, s_hat, power_w,
    )))
}

/// Every pairwise term for one channel draw at `power_w`.
pub fn pairwise_terms(link: &Link, power_w: f64) -> Vec<PepTerm> {
    let m = link.mapper();
    let (b, mm) = (m.codebook_order(), m.psk_order());
    let mut out = Vec::with_capacity(b * mm * (b * mm - 1));
    for ct in 0..b {
        for st in 0..mm {
            for ch in 0..b {
                for sh in 0..mm {
                    if (ct, st) == (ch, sh) {
                        continue;
                    }
                    let (kind, value) = if ct == ch {
                        (
                            PepKind::CorrectIndex,
                            cpep_correct(link, ct, st, sh, power_w).expect("valid pair"),
                        )
                    } else {
                        (
                            PepKind::ErroneousIndex,
                            cpep_erroneous(link, ct, st, ch, sh, power_w).expect("valid pair"),
                        )
                    };
                    out.push(PepTerm {
                        kind,
                        value,
                        hypothesis: ((ct, st), (ch, sh)),
                    });
                }
            }
        }
    }
    out
}

/// Union bound on the bit error rate for one channel draw.
pub fn union_bound(link: &Link, power_w: f64) -> f64 {
    let m = link.mapper();
    let norm = (m.bits_per_symbol() * m.hypotheses()) as f64;
    pairwise_terms(link, power_w)
        .iter()
        .map(|t| m.bit_errors(t.hypothesis.0, t.hypothesis.1) as f64 * t.value)
        .sum::<f64>()
        / norm
}

/// Union bound averaged over `n_realizations` channel draws, one value per
/// power in `powers_dbm`.
///
/// Draw `i` uses the same random stream as Monte Carlo trial `i` of the
/// scenario, so the bound and a simulation with the same seed share
/// realizations.
pub fn aber_upper_bound(
    scenario: &Scenario,
    powers_dbm: &[f64],
    n_realizations: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if n_realizations == 0 {
        return Err(Error::InvalidParameter(
            "bound needs at least one realization".into(),
        ));
    }
    let powers: Vec<f64> = powers_dbm.iter().map(|&p| dbm_to_watts(p)).collect();
    let mut sums = vec![0.0; powers.len()];
    for i in 0..n_realizations {
        let trial = scenario.prepare_trial(seed, i as u64)?;
        for (acc, &p) in sums.iter_mut().zip(&powers) {
            *acc += union_bound(&trial.link, p);
        }
    }
    Ok(sums
        .into_iter()
        .map(|s| s / n_realizations as f64)
        .collect())
}

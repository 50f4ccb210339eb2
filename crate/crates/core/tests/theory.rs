mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ris_cim::harness::Scenario;
use ris_cim::signal_chain::Link;
use ris_cim::theory::{
    chi_squared_pep, cpep_correct, cpep_erroneous, noncentrality, pairwise_terms, q_function,
    union_bound, PepKind,
};
use ris_cim::{SimConfig, Strategy};

fn scenario(m: usize, b: usize, strategy: Strategy) -> Scenario {
    let cfg = SimConfig {
        m,
        b,
        strategy,
        nt: [2, 2],
        nr: [3, 3],
        n_ris: [4, 4],
        ..SimConfig::default()
    };
    Scenario::from_config(&cfg).unwrap()
}

fn link(m: usize, b: usize, strategy: Strategy, index: u64) -> Link {
    scenario(m, b, strategy)
        .prepare_trial(9, index)
        .unwrap()
        .link
}

fn std_normal_pdf(t: f64) -> f64 {
    (-t * t / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

#[test]
fn q_matches_numerical_integral() {
    for x in [0.0, 0.3, 1.0, 2.5, 4.0, 6.0] {
        let want = common::simpson(std_normal_pdf, x, x + 14.0, 20_000);
        let got = q_function(x);
        assert!((got - want).abs() <= 1e-9 * want, "x={x}: {got} vs {want}");
    }
}

/// Modified Bessel function `I₀` by its power series.
fn bessel_i0(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..400 {
        term *= (x / 2.0) * (x / 2.0) / (k * k) as f64;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// `P(|n₁|² > |Δ + n₂|²)` with `n₁, n₂ ~ CN(0, σ²)` independent: integrate
/// the Rician density of `r = |Δ + n₂|` against `P(|n₁|² > r²) = e^{−r²/σ²}`.
fn rician_oracle(delta: f64, sigma2: f64) -> f64 {
    let pdf = |r: f64| {
        2.0 * r / sigma2
            * (-(r * r + delta * delta) / sigma2).exp()
            * bessel_i0(2.0 * r * delta / sigma2)
    };
    let upper = delta + 12.0 * sigma2.sqrt();
    common::simpson(|r| pdf(r) * (-r * r / sigma2).exp(), 0.0, upper, 20_000)
}

#[test]
fn chi_squared_pep_matches_rician_integral() {
    for (delta, sigma2) in [(0.0, 1.0), (0.5, 1.0), (1.0, 0.5), (2.0, 1.5), (3.0, 1.0)] {
        let lambda = 2.0 * delta * delta / sigma2;
        let want = rician_oracle(delta, sigma2);
        let got = chi_squared_pep(lambda);
        assert!(
            (got - want).abs() <= 1e-8 * want.max(1e-12),
            "Δ={delta}: {got} vs {want}"
        );
    }
}

/// Power at which the correct-index pair `(c, 0) → (c, 1)` has argument `arg`.
fn power_for_q_argument(link: &Link, c: usize, arg: f64) -> f64 {
    let m = link.mapper();
    let d = link.responses()[(c, c)].norm() * (m.point(0) - m.point(1)).norm();
    let sb = link.branch_noise_variance(c).sqrt();
    (arg * std::f64::consts::SQRT_2 * sb / d).powi(2)
}

#[test]
fn correct_index_pep_matches_monte_carlo() {
    let l = link(4, 2, Strategy::Bgcs, 0);
    let p = power_for_q_argument(&l, 1, 1.2);
    let want = cpep_correct(&l, 1, 0, 1, p).unwrap();
    assert!((want - q_function(1.2)).abs() < 1e-12);
    let m = l.mapper();
    let n = 200_000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hits = 0;
    for _ in 0..n {
        let z = l.signal(1, m.point(0), p) + l.filtered_noise(&mut rng);
        let metrics = l.metrics(&z, p);
        if metrics[(1, 1)] < metrics[(1, 0)] {
            hits += 1;
        }
    }
    let got = hits as f64 / n as f64;
    let se = (want * (1.0 - want) / n as f64).sqrt();
    assert!((got - want).abs() < 4.0 * se, "{got} vs {want}");
}

#[test]
fn erroneous_index_pep_matches_monte_carlo() {
    let l = link(4, 2, Strategy::Bgcs, 1);
    // Choose P so that Λ gives a pairwise probability near 0.1.
    let target_lambda = 4.0 * 5f64.ln();
    let p = target_lambda / noncentrality(&l, 0, 2, 1, 3, 1.0);
    let want = cpep_erroneous(&l, 0, 2, 1, 3, p).unwrap();
    assert!((want - 0.1).abs() < 1e-9);
    let m = l.mapper();
    let n = 200_000;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut hits = 0;
    for _ in 0..n {
        let z = l.signal(0, m.point(2), p) + l.filtered_noise(&mut rng);
        let metrics = l.metrics(&z, p);
        if metrics[(1, 3)] < metrics[(0, 2)] {
            hits += 1;
        }
    }
    let got = hits as f64 / n as f64;
    let se = (want * (1.0 - want) / n as f64).sqrt();
    assert!((got - want).abs() < 4.0 * se, "{got} vs {want}");
}

#[test]
fn pep_argument_checks() {
    let l = link(2, 2, Strategy::Bgcs, 0);
    assert!(cpep_correct(&l, 0, 1, 1, 1.0).is_err());
    assert!(cpep_correct(&l, 2, 0, 1, 1.0).is_err());
    assert!(cpep_erroneous(&l, 1, 0, 1, 1, 1.0).is_err());
    assert!(cpep_erroneous(&l, 0, 0, 1, 2, 1.0).is_err());
}

#[test]
fn union_bound_by_hand_for_two_by_two() {
    let l = link(2, 2, Strategy::Bgcs, 2);
    let p: f64 = 1e-3;
    let s = l.responses();
    let sb = |c: usize| l.branch_noise_variance(c);
    let x = [1.0, -1.0];
    // Labels: (c, s) -> bits c, s (Gray of 0/1 is the identity).
    let mut total = 0.0;
    for ct in 0..2 {
        for st in 0..2 {
            for ch in 0..2 {
                for sh in 0..2 {
                    if (ct, st) == (ch, sh) {
                        continue;
                    }
                    let hamming = ((ct != ch) as u32 + (st != sh) as u32) as f64;
                    let pep = if ct == ch {
                        // |d| = 2√P|S|, argument |d|/(√2·σ_b).
                        let d = 2.0 * p.sqrt() * s[(ct, ct)].norm();
                        q_function(d / (std::f64::consts::SQRT_2 * sb(ct).sqrt()))
                    } else {
                        let delta = (s[(ch, ct)] * x[st] - s[(ch, ch)] * x[sh]) * p.sqrt();
                        0.5 * (-(delta.norm_sqr()) / (2.0 * sb(ch))).exp()
                    };
                    total += hamming * pep;
                }
            }
        }
    }
    // η = 2 bits per symbol, B·M = 4 hypotheses.
    let want = total / 8.0;
    let got = union_bound(&l, p);
    assert!((got - want).abs() <= 1e-12 * want, "{got} vs {want}");

    let terms = pairwise_terms(&l, p);
    assert_eq!(terms.len(), 12);
    assert_eq!(
        terms
            .iter()
            .filter(|t| t.kind == PepKind::CorrectIndex)
            .count(),
        4
    );
}

#[test]
fn single_codeword_reduces_to_bpsk() {
    let l = link(2, 1, Strategy::Rcs, 3);
    for p in [1e-6, 1e-4, 1e-2] {
        let gamma = p * l.responses()[(0, 0)].norm_sqr() / l.branch_noise_variance(0);
        let want = q_function((2.0 * gamma).sqrt());
        let got = union_bound(&l, p);
        assert!(
            (got - want).abs() <= 1e-12 * want.max(1e-300),
            "{got} vs {want}"
        );
    }
}

#[test]
fn bound_decreases_with_power() {
    let l = link(4, 2, Strategy::Bgcs, 4);
    let powers = [1e-6, 1e-4, 1e-2, 1.0];
    let values: Vec<f64> = powers.iter().map(|&p| union_bound(&l, p)).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
}

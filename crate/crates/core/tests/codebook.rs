mod common;

use common::link_arrays;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ris_cim::arrays::Angle2D;
use ris_cim::channel::{
    ChannelRealization, Cluster, ClusterGeometry, LinkArrays, LosAngles, PathAngles,
};
use ris_cim::codebook::{
    best_path_per_cluster, build_bgcs_codebook, build_codebook, effective_path_gain, BeamTarget,
    PathGainEvaluator,
};
use ris_cim::Strategy;

const GAIN: f64 = 3.0;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `√P·g/√N · Σ_i Σ_n Σ_t conj(a_rx[i])·R[i,n]·a_ris[n]·G[n,t]·f[t]`.
#[allow(clippy::needless_range_loop)]
fn gain_oracle(
    h: &ChannelRealization,
    f: &DVector<Complex64>,
    u: usize,
    v: usize,
    p: f64,
) -> Complex64 {
    let path = h.clusters.path(u, v).unwrap();
    let a_ris = common::steering_oracle(
        &h.arrays.ris,
        path.departure.azimuth(),
        path.departure.elevation(),
    );
    let a_rx = common::steering_oracle(
        &h.arrays.rx,
        path.arrival.azimuth(),
        path.arrival.elevation(),
    );
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..h.r.nrows() {
        for n in 0..h.r.ncols() {
            for t in 0..h.g.ncols() {
                acc += a_rx[i].conj() * h.r[(i, n)] * a_ris[n] * h.g[(n, t)] * f[t];
            }
        }
    }
    acc * p.sqrt() * GAIN / (h.arrays.ris.len() as f64).sqrt()
}

fn broadside_los() -> LosAngles {
    LosAngles {
        departure: Angle2D::new(0.0, 0.0),
        arrival: Angle2D::new(0.0, 0.0),
    }
}

fn cluster(mean: (f64, f64), paths: &[(f64, f64)]) -> Cluster {
    let a = |(az, el): (f64, f64)| Angle2D::from_degrees(az, el);
    Cluster {
        departure_mean: a(mean),
        arrival_mean: a(mean),
        paths: paths
            .iter()
            .map(|&p| PathAngles {
                departure: a(p),
                arrival: a(p),
            })
            .collect(),
    }
}

fn realization(arrays: LinkArrays, clusters: Vec<Cluster>, beta: &[f64]) -> ChannelRealization {
    let geom = ClusterGeometry::new(clusters).unwrap();
    let (cn, ln) = (geom.num_clusters(), geom.paths_per_cluster());
    let beta = DMatrix::from_row_slice(cn, ln, &beta.iter().map(|&b| c(b)).collect::<Vec<_>>());
    ChannelRealization::from_parts(arrays, broadside_los(), c(1.0), geom, beta).unwrap()
}

fn random_realization(seed: u64, clusters: usize, paths: usize) -> ChannelRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let geom = ris_cim::channel::sample_cluster_geometry(&mut rng, clusters, paths, 7.5).unwrap();
    let beta = DMatrix::from_fn(clusters, paths, |_, _| common::cn(&mut rng, 1.0));
    let los = LosAngles {
        departure: common::random_angle(&mut rng),
        arrival: common::random_angle(&mut rng),
    };
    ChannelRealization::from_parts(
        link_arrays(2, 4, 3),
        los,
        common::cn(&mut rng, 1.0),
        geom,
        beta,
    )
    .unwrap()
}

#[test]
fn path_gain_matches_triple_loop() {
    for seed in 0..5 {
        let h = random_realization(seed, 3, 4);
        let f = h.tx_beamformer();
        let eval = PathGainEvaluator::new(&h, &f, 0.7, GAIN).unwrap();
        for u in 0..3 {
            for v in 0..4 {
                let want = gain_oracle(&h, &f, u, v, 0.7);
                let got = eval.gain(u, v).unwrap();
                assert!(
                    (got - want).norm() <= 1e-12 * want.norm().max(1e-300),
                    "({u},{v})"
                );
            }
        }
    }
}

#[test]
fn single_path_gain_closed_form() {
    let arrays = link_arrays(2, 4, 3);
    let h = realization(arrays, vec![cluster((20.0, 30.0), &[(20.0, 30.0)])], &[0.8]);
    let f = h.tx_beamformer();
    let g = effective_path_gain(&h, &f, 0, 0, 2.0, GAIN).unwrap();
    let n = arrays.ris.len() as f64;
    let want = 2f64.sqrt() * GAIN * h.scale_r * 0.8 / n;
    assert!((g.norm() - want).abs() < 1e-12 * want);
    assert!((g - gain_oracle(&h, &f, 0, 0, 2.0)).norm() < 1e-12 * want);
}

#[test]
fn zero_channel_has_zero_gain() {
    let arrays = link_arrays(2, 3, 2);
    let h = realization(
        arrays,
        vec![cluster((0.0, 20.0), &[(0.0, 20.0), (90.0, 40.0)])],
        &[0.0, 0.0],
    );
    let f = h.tx_beamformer();
    for v in 0..2 {
        assert_eq!(
            effective_path_gain(&h, &f, 0, v, 1.0, GAIN).unwrap().norm(),
            0.0
        );
    }
    assert!(effective_path_gain(&h, &f, 0, 2, 1.0, GAIN).is_err());
    assert!(effective_path_gain(&h, &f, 1, 0, 1.0, GAIN).is_err());
}

/// Four paths per cluster on a well-separated grid; path 3 of cluster 2 is
/// ten times stronger than its siblings.
fn strong_path_fixture() -> ChannelRealization {
    let mut clusters = Vec::new();
    let mut beta = Vec::new();
    for k in 0..3 {
        let az = 120.0 * k as f64;
        let paths: Vec<(f64, f64)> = (0..4)
            .map(|l| (az + 25.0 * l as f64, 15.0 + 12.0 * l as f64))
            .collect();
        clusters.push(cluster(paths[0], &paths));
        for l in 0..4 {
            beta.push(if (k, l) == (2, 3) { 10.0 } else { 1.0 });
        }
    }
    realization(link_arrays(2, 8, 4), clusters, &beta)
}

#[test]
fn best_path_finds_the_strong_path() {
    let h = strong_path_fixture();
    let f = h.tx_beamformer();
    let best = best_path_per_cluster(&h, &f, 1.0, GAIN).unwrap();
    assert_eq!(best[2], 3);
    for (u, &p) in best.iter().enumerate() {
        let gains: Vec<f64> = (0..4)
            .map(|v| gain_oracle(&h, &f, u, v, 1.0).norm_sqr())
            .collect();
        let max = gains.iter().cloned().fold(f64::MIN, f64::max);
        assert!(gains[p] >= max * (1.0 - 1e-12));
    }
    let cb = build_bgcs_codebook(&h, &f, 1, 1.0, GAIN).unwrap();
    assert_eq!(cb.selected, vec![BeamTarget::Path(2, 3)]);
}

#[test]
fn greedy_first_pick_is_exhaustive_optimum() {
    for seed in 10..30 {
        let h = random_realization(seed, 6, 5);
        let f = h.tx_beamformer();
        let cb = build_bgcs_codebook(&h, &f, 4, 1.0, GAIN).unwrap();
        let mut best = ((0, 0), f64::MIN);
        for u in 0..6 {
            for v in 0..5 {
                let g = gain_oracle(&h, &f, u, v, 1.0).norm_sqr();
                if g > best.1 {
                    best = ((u, v), g);
                }
            }
        }
        assert_eq!(
            cb.selected[0],
            BeamTarget::Path(best.0 .0, best.0 .1),
            "seed {seed}"
        );
        let mut clusters: Vec<usize> = cb.selected.iter().map(|t| t.cluster()).collect();
        clusters.sort();
        clusters.dedup();
        assert_eq!(clusters.len(), 4);
    }
}

#[test]
fn full_order_selects_every_cluster_by_descending_gain() {
    let h = random_realization(3, 4, 3);
    let f = h.tx_beamformer();
    let cb = build_bgcs_codebook(&h, &f, 4, 1.0, GAIN).unwrap();
    let gains: Vec<f64> = cb
        .selected
        .iter()
        .map(|t| gain_oracle(&h, &f, t.cluster(), t.path().unwrap(), 1.0).norm_sqr())
        .collect();
    assert!(gains.windows(2).all(|w| w[0] >= w[1]));
    let mut cl: Vec<usize> = cb.selected.iter().map(|t| t.cluster()).collect();
    cl.sort();
    assert_eq!(cl, vec![0, 1, 2, 3]);
}

#[test]
fn codewords_are_unit_modulus_and_combiner_matches() {
    let h = random_realization(4, 4, 3);
    let f = h.tx_beamformer();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for s in [
        Strategy::Bgcs,
        Strategy::SimpleCim,
        Strategy::Ssm,
        Strategy::Rcs,
    ] {
        let cb = build_codebook(s, &h, &f, 2, 1.0, GAIN, &mut rng).unwrap();
        for (k, (w, t)) in cb.codewords.iter().zip(&cb.selected).enumerate() {
            assert!(w.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
            let dep = match t.path() {
                Some(l) => h.clusters.path(t.cluster(), l).unwrap().departure,
                None => h.clusters.clusters()[t.cluster()].departure_mean,
            };
            let a = h.arrays.ris.steering_vector(dep);
            let n = (h.arrays.ris.len() as f64).sqrt();
            assert!((w - a * c(n)).iter().all(|z| z.norm() < 1e-12));
            assert!((cb.combiner.column(k).norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn bad_orders_are_rejected() {
    let h = random_realization(5, 4, 3);
    let f = h.tx_beamformer();
    assert!(build_bgcs_codebook(&h, &f, 3, 1.0, GAIN).is_err());
    assert!(build_bgcs_codebook(&h, &f, 8, 1.0, GAIN).is_err());
    assert!(build_bgcs_codebook(&h, &f, 0, 1.0, GAIN).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    // SSM may take up to C·L paths.
    assert!(build_codebook(Strategy::Ssm, &h, &f, 8, 1.0, GAIN, &mut rng).is_ok());
}

#[test]
fn simple_cim_ranks_by_cluster_means() {
    // Cluster 0 has a strong path far from its mean; cluster 1 is weaker
    // but concentrated at its mean.
    let clusters = vec![
        cluster((0.0, 10.0), &[(180.0, 50.0), (90.0, 40.0)]),
        cluster((250.0, 30.0), &[(250.0, 30.0), (250.0, 30.0)]),
    ];
    let h = realization(link_arrays(2, 8, 4), clusters, &[10.0, 0.1, 1.5, 1.5]);
    let f = h.tx_beamformer();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let bgcs = build_codebook(Strategy::Bgcs, &h, &f, 1, 1.0, GAIN, &mut rng).unwrap();
    let simple = build_codebook(Strategy::SimpleCim, &h, &f, 1, 1.0, GAIN, &mut rng).unwrap();
    assert_eq!(bgcs.selected, vec![BeamTarget::Path(0, 0)]);
    assert_eq!(simple.selected, vec![BeamTarget::ClusterMean(1)]);
}

#[test]
fn ssm_may_take_two_paths_of_one_cluster() {
    let clusters = vec![
        cluster((0.0, 20.0), &[(0.0, 20.0), (60.0, 45.0)]),
        cluster((200.0, 30.0), &[(200.0, 30.0), (260.0, 50.0)]),
    ];
    let h2 = realization(link_arrays(2, 8, 4), clusters, &[5.0, 4.0, 1.0, 0.5]);
    let f = h2.tx_beamformer();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let ssm = build_codebook(Strategy::Ssm, &h2, &f, 2, 1.0, GAIN, &mut rng).unwrap();
    assert_eq!(
        ssm.selected,
        vec![BeamTarget::Path(0, 0), BeamTarget::Path(0, 1)]
    );
    let bgcs = build_codebook(Strategy::Bgcs, &h2, &f, 2, 1.0, GAIN, &mut rng).unwrap();
    assert_eq!(
        bgcs.selected,
        vec![BeamTarget::Path(0, 0), BeamTarget::Path(1, 0)]
    );
}

#[test]
fn rcs_uses_one_codeword_and_varies_the_cluster() {
    let h = random_realization(6, 8, 3);
    let f = h.tx_beamformer();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..200 {
        let cb = build_codebook(Strategy::Rcs, &h, &f, 4, 1.0, GAIN, &mut rng).unwrap();
        assert_eq!(cb.order(), 1);
        assert_eq!(cb.index_bits(), 0);
        seen.insert(cb.selected[0].cluster());
    }
    assert_eq!(seen.len(), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gain_scales_with_sqrt_power(seed in 0u64..1000, k in 0.01f64..100.0) {
        let h = random_realization(seed, 2, 3);
        let f = h.tx_beamformer();
        let a = effective_path_gain(&h, &f, 1, 2, 1.0, GAIN).unwrap();
        let b = effective_path_gain(&h, &f, 1, 2, k, GAIN).unwrap();
        prop_assert!((b.norm_sqr() - k * a.norm_sqr()).abs() <= 1e-10 * k * a.norm_sqr());
    }

    #[test]
    fn selection_is_power_invariant(seed in 0u64..1000, p in 1e-6f64..1e3) {
        let h = random_realization(seed, 4, 3);
        let f = h.tx_beamformer();
        let mut r1 = ChaCha8Rng::seed_from_u64(seed);
        let mut r2 = ChaCha8Rng::seed_from_u64(seed);
        for s in [Strategy::Bgcs, Strategy::SimpleCim, Strategy::Ssm, Strategy::Rcs] {
            let a = build_codebook(s, &h, &f, 2, 1.0, GAIN, &mut r1).unwrap();
            let b = build_codebook(s, &h, &f, 2, p, GAIN, &mut r2).unwrap();
            prop_assert_eq!(a.selected, b.selected);
        }
    }
}

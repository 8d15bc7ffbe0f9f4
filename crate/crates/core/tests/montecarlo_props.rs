//! Statistical and structural properties of the randomized integrators.

mod common;

use rand::Rng;

use randcube_core::functions::registry_problem;
use randcube_core::montecarlo::{
    as_quadrature, error_trials, sep_mc, standard_mc, Algorithm, MCConfig,
};
use randcube_core::seeding::{self, DOMAIN_TRIAL};
use randcube_core::spaces::{Exponent, SpaceDescriptor};

use common::max_coord_diff;

#[test]
fn standard_mc_is_unbiased() {
    // coordinatewise mean over 10^4 independent runs stays within 4
    // bootstrap standard errors of the exact integral
    let space = SpaceDescriptor::lq(Exponent::Finite(2.0), 2).unwrap();
    let f = registry_problem("expsum:seed=12", 1, space).unwrap();
    let trials = 10_000;
    let n = 16;
    let mut sums: Vec<Vec<f64>> = (0..2).map(|_| Vec::with_capacity(trials)).collect();
    for t in 0..trials {
        let seed = seeding::derive_seed(404, DOMAIN_TRIAL, t as u64);
        let est = standard_mc(&f, n, seed).unwrap();
        for (c, v) in sums.iter_mut().zip(est.coords()) {
            c.push(*v);
        }
    }
    let exact = f.exact_integral().unwrap();
    for (c, want) in sums.iter().zip(exact.coords()) {
        let m = c.iter().sum::<f64>() / trials as f64;
        let sd = (c.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (trials as f64 - 1.0)).sqrt();
        let stderr = sd / (trials as f64).sqrt();
        assert!(
            (m - want).abs() <= 4.0 * stderr,
            "mean {m} vs exact {want} (stderr {stderr})"
        );
    }
}

#[test]
fn mean_of_standard_mc_exp_hits_the_clt_band() {
    let f = registry_problem("expsum", 1, SpaceDescriptor::scalar()).unwrap();
    let trials = 10_000;
    let mut values = Vec::with_capacity(trials);
    for t in 0..trials {
        let seed = seeding::derive_seed(2025, DOMAIN_TRIAL, t as u64);
        values.push(standard_mc(&f, 16, seed).unwrap().as_scalar());
    }
    let mean = values.iter().sum::<f64>() / trials as f64;
    let sd = (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (trials as f64 - 1.0))
        .sqrt();
    let stderr = sd / (trials as f64).sqrt();
    let exact = std::f64::consts::E - 1.0;
    assert!(
        (mean - exact).abs() <= 3.0 * stderr,
        "mean {mean} vs {exact} (stderr {stderr})"
    );
}

#[test]
fn trials_are_identical_across_thread_layouts() {
    let f = registry_problem("expsum:seed=2", 2, SpaceDescriptor::scalar()).unwrap();
    let cfg = MCConfig::new(32, 1, 9, 64, 2.0).unwrap();
    let run_in_pool = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| error_trials(Algorithm::Separation, &f, &cfg, None).unwrap())
    };
    let single = run_in_pool(1);
    let multi = run_in_pool(4);
    assert_eq!(single, multi);
    let repeat = run_in_pool(4);
    assert_eq!(multi, repeat);
}

#[test]
fn quadrature_equivalence_on_random_configurations() {
    let mut rng = seeding::point_rng(321);
    let specs = ["expsum:seed=1", "poly:deg=2", "coordinate-mix", "trig"];
    for _ in 0..12 {
        let d = rng.gen_range(1..=2);
        let n = rng.gen_range(4..=128);
        let r = rng.gen_range(1..=2);
        let seed = rng.gen::<u64>();
        let spec = specs[rng.gen_range(0..specs.len())];
        let space = if rng.gen::<bool>() {
            SpaceDescriptor::scalar()
        } else {
            SpaceDescriptor::lq(Exponent::Finite(2.0), 3).unwrap()
        };
        let f = registry_problem(spec, d, space).unwrap();
        let direct = sep_mc(&f, n, r, seed).unwrap();
        let q = as_quadrature(&f, n, r, seed).unwrap();
        let applied = q.apply(&f).unwrap();
        let diff = max_coord_diff(&direct, &applied);
        assert!(diff < 1e-10, "{spec} d={d} n={n} r={r}: diff {diff}");
        assert!((q.weight_sum() - 1.0).abs() < 1e-12);
    }
}

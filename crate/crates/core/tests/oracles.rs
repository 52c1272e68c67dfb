use kbessel::kgamma::{
    digamma_k, digamma_k_series, gamma_k, gamma_k_integral_oracle, gamma_k_limit_oracle, log_gamma_k, trigamma_k,
    trigamma_k_series, KGammaArg,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arg(x: f64, k: f64) -> KGammaArg {
    KGammaArg::new(x, k).unwrap()
}

#[test]
fn integral_oracle_agrees_on_random_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let (x, k) = (rng.gen_range(0.1..30.0), rng.gen_range(0.2..8.0));
        let fast = gamma_k(arg(x, k)).unwrap();
        let slow = gamma_k_integral_oracle(arg(x, k), 1e-10).unwrap();
        assert!((slow / fast - 1.0).abs() <= 1e-8, "x={x} k={k}: {fast} vs {slow}");
    }
}

#[test]
fn integral_oracle_classical_points() {
    assert!((gamma_k_integral_oracle(arg(5.0, 1.0), 1e-10).unwrap() / 24.0 - 1.0).abs() < 1e-9);
    // Γ_2(1) = 2^{-1/2} Γ(1/2) = √(π/2)
    let v = gamma_k_integral_oracle(arg(1.0, 2.0), 1e-10).unwrap();
    assert!((v - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-9);
}

#[test]
fn integral_oracle_rejects_tolerance_outside_range() {
    assert!(gamma_k_integral_oracle(arg(2.0, 1.0), 1e-13).is_err());
    assert!(gamma_k_integral_oracle(arg(2.0, 1.0), 0.1).is_err());
}

#[test]
fn limit_oracle_converges_monotonically() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let (x, k) = (rng.gen_range(0.1..5.0), rng.gen_range(0.5..4.0));
        let exact = gamma_k(arg(x, k)).unwrap();
        let devs: Vec<f64> = [1_000u64, 10_000, 100_000]
            .iter()
            .map(|&n| (gamma_k_limit_oracle(arg(x, k), n).unwrap() / exact - 1.0).abs())
            .collect();
        assert!(devs.windows(2).all(|w| w[1] < w[0]), "x={x} k={k}: {devs:?}");
        assert!(devs[2] < 1e-3);
    }
}

#[test]
fn limit_oracle_at_three() {
    let dev = gamma_k_limit_oracle(arg(3.0, 1.0), 1_000_000).unwrap() / 2.0 - 1.0;
    assert!(dev.abs() <= 1e-4);
    assert!(gamma_k_limit_oracle(arg(3.0, 1.0), 0).is_err());
}

#[test]
fn digamma_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let (t, k) = (rng.gen_range(0.1..30.0), rng.gen_range(0.2..8.0));
        let fast = digamma_k(t, k).unwrap();
        let series = digamma_k_series(t, k).unwrap();
        assert!((fast - series).abs() <= 1e-10, "t={t} k={k}: {fast} vs {series}");
        let h = 1e-5;
        let fd = (log_gamma_k(arg(t + h, k)) - log_gamma_k(arg(t - h, k))) / (2.0 * h);
        assert!((fast - fd).abs() <= 1e-6);
        let tri = trigamma_k(t, k).unwrap();
        assert!(tri > 0.0);
        assert!((tri - trigamma_k_series(t, k).unwrap()).abs() <= 1e-10 * tri.max(1.0));
    }
}

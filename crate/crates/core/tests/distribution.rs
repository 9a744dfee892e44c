use power_lindley::numerics::{integrate_semi_infinite, QuadratureSpec};
use power_lindley::{PowerLindley, RandomSource, Weibull};
use proptest::prelude::*;

fn pl(a: f64, b: f64) -> PowerLindley<f64> {
    PowerLindley::new(a, b).unwrap()
}

const GRID: [(f64, f64); 9] = [
    (0.3, 0.5),
    (0.3, 1.0),
    (0.3, 3.0),
    (1.0, 0.5),
    (1.0, 1.0),
    (1.0, 3.0),
    (2.5, 0.5),
    (2.5, 1.0),
    (2.5, 3.0),
];

#[test]
fn density_integrates_to_one() {
    let quad = QuadratureSpec::default().with_rel_tol(1e-12);
    for &(a, b) in &GRID {
        let p = pl(a, b);
        let mass = integrate_semi_infinite(|x| p.pdf(x), &quad, None).unwrap().value;
        assert!((mass - 1.0).abs() <= 1e-9, "({a},{b}) mass {mass}");
    }
}

#[test]
fn density_is_minus_survival_derivative() {
    for &(a, b) in &GRID {
        let p = pl(a, b);
        for &x in &[0.05_f64, 0.5, 1.0, 2.0, 4.0] {
            let h = 1e-5 * x;
            let d = -(p.survival(x + h) - p.survival(x - h)) / (2.0 * h);
            let f = p.pdf(x);
            assert!((d - f).abs() <= 1e-6 * f.max(1e-12), "({a},{b}) x={x}: {d} vs {f}");
        }
    }
}

#[test]
fn closed_form_moments_match_quadrature() {
    let quad = QuadratureSpec::default().with_rel_tol(1e-12);
    for &(a, b) in &GRID {
        let p = pl(a, b);
        for k in 1..=6 {
            // In u = x^α the moment integrand is smooth at the origin.
            let r = k as f64 / a;
            let c = b * b / (b + 1.0);
            let m = integrate_semi_infinite(|u: f64| c * u.powf(r) * (1.0 + u) * (-b * u).exp(), &quad, None)
                .unwrap()
                .value;
            let closed = p.moment(k).unwrap();
            assert!((m / closed - 1.0).abs() <= 1e-9, "({a},{b}) k={k}: {m} vs {closed}");
        }
    }
}

#[test]
fn reported_summary_statistics() {
    let dit = pl(1.1913, 1.6979);
    assert!((dit.mean() - 0.7923).abs() <= 1e-3);
    assert!((dit.median() - 0.6475).abs() <= 5e-4);
    let noc = pl(0.2750, 3.6502);
    assert!((noc.mean() - 0.2265).abs() <= 1e-3);
    assert!((noc.median() - 0.0053).abs() <= 2e-4);
    // Frozen from an independent scipy evaluation.
    assert!((dit.mean() - 0.792_34).abs() <= 1e-5);
    assert!((dit.median() - 0.647_44).abs() <= 1e-5);
    assert!((noc.mean() - 0.226_467).abs() <= 1e-6);
    assert!((noc.median() - 0.005_289_1).abs() <= 1e-7);
}

#[test]
fn weibull_baseline_statistics() {
    let w: Weibull<f64> = Weibull::new(1.3969, 1.0044).unwrap();
    assert!((w.mean() / 0.9158 - 1.0).abs() <= 0.01);
    assert!((w.median() - 0.7726).abs() <= 1e-4);
    let w: Weibull<f64> = Weibull::new(0.9499, 1.0104).unwrap();
    assert!((w.mean() / 1.0341 - 1.0).abs() <= 0.01);
    assert!((w.median() - 0.6869).abs() <= 1e-4);
}

fn ks_two_sample(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

#[test]
fn mixture_sampler_matches_quantile_inversion() {
    let p = pl(1.1913, 1.6979);
    let n = 100_000;
    let mixture = p.sample(n, &mut RandomSource::new(7)).unwrap();
    let mut rng = RandomSource::new(8);
    let inversion: Vec<f64> = (0..n).map(|_| p.quantile(rng.uniform()).unwrap()).collect();
    let d = ks_two_sample(mixture, inversion);
    let critical = 1.628 * (2.0 / n as f64).sqrt();
    assert!(d < critical, "D = {d}, critical {critical}");
}

#[test]
fn sample_mean_concentrates() {
    let xs = pl(1.0, 1.0).sample(100_000, &mut RandomSource::new(2024)).unwrap();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    assert!((mean - 1.5).abs() < 0.02, "{mean}");
    assert!(xs.iter().all(|&x| x > 0.0));
}

#[test]
fn large_sample_mean_within_clt_band() {
    let p = pl(1.1913, 1.6979);
    let n = 1_000_000;
    let xs = p.sample(n, &mut RandomSource::new(99)).unwrap();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let band = 3.0 * (p.variance().unwrap() / n as f64).sqrt();
    assert!((mean - p.mean()).abs() <= band, "{mean} vs {} ± {band}", p.mean());
    assert!((p.mean() - 0.7923).abs() <= 1e-3);
}

#[test]
fn sample_size_must_be_positive() {
    let p = pl(1.0, 1.0);
    assert!(p.sample(0, &mut RandomSource::new(1)).is_err());
    let one = p.sample(1, &mut RandomSource::new(1)).unwrap();
    assert_eq!(one.len(), 1);
    assert!(one[0] > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quantile_inverts_cdf(a in 0.2f64..3.0, b in 0.2f64..5.0, u in 1e-6f64..0.999_999) {
        let p = pl(a, b);
        let x = p.quantile(u).unwrap();
        prop_assert!((p.cdf(x) - u).abs() <= 1e-9);
    }

    #[test]
    fn cdf_and_survival_are_complementary(a in 0.2f64..3.0, b in 0.2f64..5.0, x in 1e-3f64..50.0) {
        let p = pl(a, b);
        prop_assert!((p.cdf(x) + p.survival(x) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn cdf_is_monotone(a in 0.2f64..3.0, b in 0.2f64..5.0, x in 1e-3f64..20.0, dx in 1e-3f64..5.0) {
        let p = pl(a, b);
        prop_assert!(p.cdf(x + dx) >= p.cdf(x));
    }

    #[test]
    fn hazard_is_density_over_survival(a in 0.2f64..3.0, b in 0.2f64..5.0, x in 1e-2f64..5.0) {
        let p = pl(a, b);
        let h = p.hazard(x).unwrap();
        let want = p.pdf(x) / p.survival(x);
        prop_assert!((h / want - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn log_moments_are_log_convex(a in 0.2f64..3.0, b in 0.2f64..5.0, k in 1u32..30) {
        // Lyapunov's inequality: m_k^2 <= m_{k-1} m_{k+1}.
        let p = pl(a, b);
        let lhs = 2.0 * p.log_moment(k);
        let rhs = p.log_moment(k - 1) + p.log_moment(k + 1);
        prop_assert!(lhs <= rhs + 1e-9 * rhs.abs().max(1.0));
    }
}

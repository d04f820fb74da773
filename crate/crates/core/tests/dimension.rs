use treefrac::dimension::{
    certify_lower, certify_upper, grid_extrema, pressure_estimate, Alphabet, CertifyOptions, DimensionError, Method,
    TransferConfig,
};

const V_110: [f64; 5] = [0.3798483, 0.3992862, 0.4366593, 0.4841648, 0.5207676];
const F_110: [f64; 5] = [0.526229, -0.225988, 0.116313, -0.0513245, 0.0121844];
const V_INF: [f64; 5] = [0.3820795, 0.4007878, 0.4369026, 0.4830608, 0.5187994];
const F_INF: [f64; 5] = [0.524143, -0.221186, 0.116202, -0.0517567, 0.0123381];

fn fit_scale(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).map(|(a, b)| a * b).sum::<f64>() / got.iter().map(|a| a * a).sum::<f64>()
}

fn opts(cells: usize) -> CertifyOptions {
    CertifyOptions { cells, method: Method::GridLipschitz }
}

#[test]
fn bounded_digits_certificate() {
    let c = certify_lower(110, 0.775, 5, CertifyOptions::default()).unwrap();
    let k = fit_scale(&c.poly.eigenvector, &V_110);
    for (a, b) in c.poly.eigenvector.iter().zip(&V_110) {
        assert!((k * a - b).abs() < 1e-4, "{a} vs {b}");
    }
    for (a, b) in c.poly.coeffs.iter().zip(&F_110) {
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
    }
    assert!(c.f_min > 0.3);
    assert!(c.margin > 7e-5, "{}", c.margin);
}

#[test]
fn unbounded_digits_certificate() {
    let c = certify_upper(0.799, 5, CertifyOptions::default()).unwrap();
    let k = fit_scale(&c.poly.eigenvector, &V_INF);
    for (a, b) in c.poly.eigenvector.iter().zip(&V_INF) {
        assert!((k * a - b).abs() < 1e-4, "{a} vs {b}");
    }
    for (a, b) in c.poly.coeffs.iter().zip(&F_INF) {
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
    }
    assert!(c.f_min > 0.3);
    assert!(c.margin < -2e-4, "{}", c.margin);
}

#[test]
fn hundred_digits_are_not_enough() {
    for order in [5, 10, 20] {
        let r = certify_lower(100, 0.775, order, opts(10_000));
        assert!(matches!(r, Err(DimensionError::CertificationFailed { .. })), "order {order}");
    }
}

#[test]
fn coarse_certificate_holds_on_finer_grid() {
    // a bound certified with 10^4 cells must not be contradicted by 10^6 samples
    let c = certify_lower(110, 0.775, 5, opts(10_000)).unwrap();
    let cfg = TransferConfig::new(Alphabet::Finite(110), 0.775, 5).unwrap();
    let fine = grid_extrema(&cfg, &c.poly.poly(), 1_000_000).unwrap();
    assert!(fine.sampled_d_min >= c.margin);
    assert!(fine.sampled_f_min >= c.f_min);

    let u = certify_upper(0.799, 5, opts(10_000)).unwrap();
    let cfg = TransferConfig::new(Alphabet::Infinite, 0.799, 5).unwrap();
    let fine = grid_extrema(&cfg, &u.poly.poly(), 1_000_000).unwrap();
    assert!(fine.sampled_d_max <= u.margin);
}

#[test]
fn interval_method_reproduces_certificate() {
    let io = CertifyOptions { cells: 100_000, method: Method::Interval };
    let c = certify_lower(110, 0.775, 5, io).unwrap();
    assert!(c.margin > 7e-5);
    assert!(c.verification.interval_width_max.unwrap() < 1e-5);
    let u = certify_upper(0.799, 5, CertifyOptions { cells: 10_000, method: Method::Interval }).unwrap();
    assert!(u.margin < -2e-4);
}

#[test]
fn pressure_sign_matches_certificates() {
    // A = 4 beats 1/2, A = 3 does not
    assert!(pressure_estimate(4, 0.5, 10).unwrap().value() > 0.0);
    assert!(pressure_estimate(3, 0.5, 12).unwrap().value() < 0.0);
}

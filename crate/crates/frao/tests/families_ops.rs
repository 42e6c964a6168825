//! Family operations against their stated examples and invariants:
//! densities, seeded samplers, Fisher information (closed form vs the
//! Monte-Carlo oracle), closed distances/spheres, location-scale constants
//! and the exp-pushforward delegation.

use approx::{assert_abs_diff_eq, assert_relative_eq};
use frao::error::Error;
use frao::families::{
    loc_scale_constants, pushforward_spec, truncated_moments, FamilySpec, LocScaleBase, ParamPoint,
    PushforwardMap, QuadConfig,
};
use proptest::prelude::*;

fn all_two_param_points(spec: &FamilySpec) -> Vec<ParamPoint> {
    use frao::families::FamilyKind as K;
    match spec.kind() {
        K::Normal | K::LogNormal => {
            vec![
                ParamPoint::two(0.0, 1.0),
                ParamPoint::two(1.5, 0.6),
                ParamPoint::two(-2.0, 2.5),
            ]
        }
        K::TruncatedNormal => {
            vec![
                ParamPoint::two(0.0, 1.0),
                ParamPoint::two(0.7, 0.8),
                ParamPoint::two(-0.5, 1.6),
            ]
        }
        K::TruncatedLogNormal => {
            vec![
                ParamPoint::two(0.0, 1.0),
                ParamPoint::two(0.4, 0.7),
                ParamPoint::two(-0.3, 1.2),
            ]
        }
        K::Gumbel | K::LocationScale(_) => {
            vec![
                ParamPoint::two(0.0, 1.0),
                ParamPoint::two(2.0, 0.7),
                ParamPoint::two(-1.0, 1.8),
            ]
        }
        K::TruncatedGumbel => {
            vec![
                ParamPoint::two(0.0, 1.0),
                ParamPoint::two(0.5, 0.8),
                ParamPoint::two(-0.5, 1.4),
            ]
        }
        K::Gamma => {
            vec![
                ParamPoint::two(2.0, 1.0),
                ParamPoint::two(1.3, 0.5),
                ParamPoint::two(4.0, 2.0),
            ]
        }
        K::Exponential => {
            vec![
                ParamPoint::one(1.0),
                ParamPoint::one(0.4),
                ParamPoint::one(3.0),
            ]
        }
        K::Triangular => {
            vec![
                ParamPoint::one(0.0),
                ParamPoint::one(0.5),
                ParamPoint::one(-0.6),
            ]
        }
    }
}

fn every_family() -> Vec<FamilySpec> {
    vec![
        FamilySpec::normal(),
        FamilySpec::truncated_normal(-2.0, 2.0).unwrap(),
        FamilySpec::gumbel(),
        FamilySpec::truncated_gumbel(-2.0, 2.0).unwrap(),
        FamilySpec::log_normal(),
        FamilySpec::truncated_log_normal(0.2, 5.0).unwrap(),
        FamilySpec::gamma(),
        FamilySpec::exponential(),
        FamilySpec::triangular(-1.0, 1.0).unwrap(),
        FamilySpec::location_scale(LocScaleBase::StdGumbel),
    ]
}

#[test]
fn pdf_examples() {
    let normal = FamilySpec::normal();
    let theta = ParamPoint::two(0.0, 1.0);
    assert_relative_eq!(
        normal.pdf(&theta, 0.0).unwrap(),
        0.3989422804014327,
        max_relative = 1e-14
    );

    let tn = FamilySpec::truncated_normal(-2.0, 2.0).unwrap();
    assert_eq!(tn.pdf(&theta, 3.0).unwrap(), 0.0);

    let tri = FamilySpec::triangular(-1.0, 1.0).unwrap();
    let mode = ParamPoint::one(0.5);
    assert_eq!(tri.pdf(&mode, -1.0).unwrap(), 0.0);
    assert_relative_eq!(tri.pdf(&mode, 0.5).unwrap(), 1.0, max_relative = 1e-14);
}

#[test]
fn pdf_normalizes_for_every_kind() {
    // Wide quadrature windows per family support.
    let cases: Vec<(FamilySpec, ParamPoint, f64, f64)> = vec![
        (FamilySpec::normal(), ParamPoint::two(0.3, 1.2), -15.0, 15.0),
        (
            FamilySpec::truncated_normal(-2.0, 2.0).unwrap(),
            ParamPoint::two(0.3, 1.2),
            -2.0,
            2.0,
        ),
        (FamilySpec::gumbel(), ParamPoint::two(0.0, 1.0), -10.0, 60.0),
        (
            FamilySpec::truncated_gumbel(-2.0, 2.0).unwrap(),
            ParamPoint::two(0.0, 1.0),
            -2.0,
            2.0,
        ),
        (
            FamilySpec::log_normal(),
            ParamPoint::two(0.0, 0.5),
            1e-9,
            60.0,
        ),
        (
            FamilySpec::truncated_log_normal(0.2, 5.0).unwrap(),
            ParamPoint::two(0.0, 1.0),
            0.2,
            5.0,
        ),
        (FamilySpec::gamma(), ParamPoint::two(2.0, 1.0), 0.0, 80.0),
        (FamilySpec::exponential(), ParamPoint::one(1.0), 0.0, 80.0),
        (
            FamilySpec::triangular(-1.0, 1.0).unwrap(),
            ParamPoint::one(0.3),
            -1.0,
            1.0,
        ),
        (
            FamilySpec::location_scale(LocScaleBase::StdGumbel),
            ParamPoint::two(0.0, 1.0),
            -10.0,
            60.0,
        ),
    ];
    for (spec, theta, lo, hi) in cases {
        let total = frao::quad::integrate_panels(60, lo, hi, 32, |x| spec.pdf(&theta, x).unwrap());
        assert_relative_eq!(total, 1.0, max_relative = 1e-6);
    }
}

#[test]
fn sampler_examples() {
    let exp = FamilySpec::exponential();
    let lambda = ParamPoint::one(1.0);
    let n = 100_000;
    let draws = exp.sample(&lambda, n, 12345).unwrap();
    let mean = draws.iter().sum::<f64>() / n as f64;
    assert!((mean - 1.0).abs() < 3.0 / (n as f64).sqrt());

    let tg = FamilySpec::truncated_gumbel(0.0, 3000.0).unwrap();
    let q = ParamPoint::two(1013.0, 558.0);
    let draws = tg.sample(&q, 10_000, 7).unwrap();
    assert!(draws.iter().all(|x| (0.0..=3000.0).contains(x)));

    assert!(matches!(
        exp.sample(&lambda, 0, 1),
        Err(Error::Validation(_))
    ));
    // Determinism under a fixed seed.
    assert_eq!(
        exp.sample(&lambda, 100, 9).unwrap(),
        exp.sample(&lambda, 100, 9).unwrap()
    );
}

#[test]
fn draws_stay_inside_truncation_for_all_truncated_kinds() {
    let cases = vec![
        (
            FamilySpec::truncated_normal(-2.0, 2.0).unwrap(),
            ParamPoint::two(0.0, 1.0),
            -2.0,
            2.0,
        ),
        (
            FamilySpec::truncated_gumbel(-2.0, 2.0).unwrap(),
            ParamPoint::two(0.0, 1.0),
            -2.0,
            2.0,
        ),
        (
            FamilySpec::truncated_log_normal(0.2, 5.0).unwrap(),
            ParamPoint::two(0.0, 1.0),
            0.2,
            5.0,
        ),
        (
            FamilySpec::triangular(-1.0, 1.0).unwrap(),
            ParamPoint::one(0.5),
            -1.0,
            1.0,
        ),
    ];
    for (spec, theta, lo, hi) in cases {
        let draws = spec.sample(&theta, 20_000, 99).unwrap();
        assert!(draws.iter().all(|x| *x >= lo && *x <= hi));
    }
}

#[test]
fn fim_examples() {
    let normal = FamilySpec::normal();
    let m = normal.fim(&ParamPoint::two(0.0, 1.0)).unwrap().entries;
    assert_eq!(m.get(0, 0), 1.0);
    assert_eq!(m.get(0, 1), 0.0);
    assert_eq!(m.get(1, 1), 2.0);

    let exp = FamilySpec::exponential();
    assert_relative_eq!(
        exp.fim(&ParamPoint::one(2.0)).unwrap().entries.get(0, 0),
        0.25,
        max_relative = 1e-15
    );

    let tri = FamilySpec::triangular(-1.0, 1.0).unwrap();
    assert_relative_eq!(
        tri.fim(&ParamPoint::one(0.0)).unwrap().entries.get(0, 0),
        1.0,
        max_relative = 1e-15
    );

    let gamma = FamilySpec::gamma();
    let g = gamma.fim(&ParamPoint::two(2.0, 1.0)).unwrap().entries;
    assert_relative_eq!(g.get(0, 0), 0.6449340668482264, max_relative = 1e-12);
    assert_eq!(g.get(0, 1), -1.0);
    assert_eq!(g.get(1, 1), 2.0);

    // Wide-interval limit of the truncated normal.
    let tn = FamilySpec::truncated_normal(-20.0, 20.0).unwrap();
    let t = tn.fim(&ParamPoint::two(0.0, 1.0)).unwrap().entries;
    assert!(
        t.sub(&m)
            .max_abs_diff(&frao::mat::SymMat::dim2(0.0, 0.0, 0.0))
            < 1e-8
    );
}

#[test]
fn fim_monte_carlo_agrees_with_closed_forms() {
    // Fixed seeds; three parameter points per family kind.
    let n = 200_000;
    for (fi, spec) in every_family().into_iter().enumerate() {
        for (pi, theta) in all_two_param_points(&spec).into_iter().enumerate() {
            let exact = spec.fim(&theta).unwrap().entries;
            let (mc, se) = spec
                .fim_monte_carlo_with_stderr(&theta, n, 1000 + (fi * 10 + pi) as u64)
                .unwrap();
            let d = spec.param_dim();
            for i in 0..d {
                for j in 0..d {
                    let gap = (mc.entries.get(i, j) - exact.get(i, j)).abs();
                    let band = 3.0 * se.get(i, j) + 1e-9;
                    assert!(
                        gap <= band,
                        "{} at {:?} entry ({i},{j}): gap {gap} > 3 se {band}",
                        spec.kind().name(),
                        theta.coords()
                    );
                }
            }
        }
    }
}

#[test]
fn fim_monte_carlo_rejects_small_samples() {
    let spec = FamilySpec::normal();
    let err = spec
        .fim_monte_carlo(&ParamPoint::two(0.0, 1.0), 999, 1)
        .unwrap_err();
    assert!(matches!(err, Error::Validation(_)));
}

#[test]
fn fim_is_spd_across_random_domain_sweeps() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(2024);
    for spec in every_family() {
        for _ in 0..1000 {
            let theta = match spec.kind() {
                frao::families::FamilyKind::Gamma => ParamPoint::two(
                    0.2 + rng.random::<f64>() * 6.0,
                    0.2 + rng.random::<f64>() * 6.0,
                ),
                frao::families::FamilyKind::Exponential => {
                    ParamPoint::one(0.05 + rng.random::<f64>() * 10.0)
                }
                frao::families::FamilyKind::Triangular => {
                    ParamPoint::one(-0.99 + rng.random::<f64>() * 1.98)
                }
                frao::families::FamilyKind::TruncatedLogNormal => ParamPoint::two(
                    -1.5 + rng.random::<f64>() * 3.0,
                    0.2 + rng.random::<f64>() * 2.0,
                ),
                _ => ParamPoint::two(
                    -3.0 + rng.random::<f64>() * 6.0,
                    0.15 + rng.random::<f64>() * 3.0,
                ),
            };
            let fim = spec.fim(&theta).unwrap();
            assert!(
                fim.entries.is_positive_definite(),
                "{} at {:?}: {:?}",
                spec.kind().name(),
                theta.coords(),
                fim.entries
            );
        }
    }
}

#[test]
fn location_scale_metric_factorizes() {
    // s^2 * FIM must not depend on (m, s).
    for spec in [FamilySpec::normal(), FamilySpec::gumbel()] {
        let reference = spec.fim(&ParamPoint::two(0.0, 1.0)).unwrap().entries;
        for m in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            for s in [0.5, 1.0, 2.0, 4.0, 8.0] {
                let fim = spec.fim(&ParamPoint::two(m, s)).unwrap().entries;
                let dev = fim.scale(s * s).max_abs_diff(&reference);
                assert!(
                    dev < 1e-8,
                    "{} at ({m}, {s}): deviation {dev}",
                    spec.kind().name()
                );
            }
        }
    }
}

#[test]
fn loc_scale_constants_examples() {
    let cfg = QuadConfig::default();
    let c = loc_scale_constants(&LocScaleBase::StdNormal, &cfg).unwrap();
    assert_relative_eq!(c.alpha, 1.0, max_relative = 1e-11);
    assert_abs_diff_eq!(c.gamma, 0.0, epsilon = 1e-11);
    assert_relative_eq!(c.beta, 2.0, max_relative = 1e-11);

    let c = loc_scale_constants(&LocScaleBase::StdGumbel, &cfg).unwrap();
    assert_relative_eq!(c.alpha, 1.0, max_relative = 1e-10);
    assert_relative_eq!(c.gamma, -0.4227843350984671, max_relative = 1e-10);
    assert_relative_eq!(c.beta, 1.8236806608528794, max_relative = 1e-10);
}

#[test]
fn truncated_moments_examples() {
    // Symmetric interval: odd quantities vanish.
    let m = truncated_moments(&ParamPoint::two(0.0, 1.0), -2.0, 2.0).unwrap();
    assert_abs_diff_eq!(m.mu_b, 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!(m.dsig_mu_b, 0.0, epsilon = 1e-15);

    // Wide interval limit.
    let m = truncated_moments(&ParamPoint::two(0.0, 1.0), -20.0, 20.0).unwrap();
    assert_abs_diff_eq!(m.mu_b, 0.0, epsilon = 1e-8);
    assert_abs_diff_eq!(m.sigma2_b, 1.0, epsilon = 1e-8);
}

#[test]
fn christoffel_closed_examples() {
    let normal = FamilySpec::normal();
    let sym = normal
        .christoffel_closed(&ParamPoint::two(0.0, 1.0))
        .unwrap();
    assert_eq!(sym.get(1, 0, 0), 0.5);
    assert_eq!(sym.get(0, 0, 1), -1.0);

    // Symbols depend only on sigma.
    let sym = normal
        .christoffel_closed(&ParamPoint::two(3.0, 2.0))
        .unwrap();
    assert_eq!(sym.get(1, 1, 1), -0.5);

    // Wide truncation recovers the plain symbols.
    let tn = FamilySpec::truncated_normal(-20.0, 20.0).unwrap();
    let trunc = tn.christoffel_closed(&ParamPoint::two(0.0, 1.0)).unwrap();
    let plain = normal
        .christoffel_closed(&ParamPoint::two(0.0, 1.0))
        .unwrap();
    assert!(trunc.max_abs_diff(&plain) < 1e-6);

    // No closed form for the Gumbel kinds.
    assert!(matches!(
        FamilySpec::gumbel().christoffel_closed(&ParamPoint::two(0.0, 1.0)),
        Err(Error::NotAvailable(_))
    ));
}

#[test]
fn fr_distance_closed_examples() {
    let exp = FamilySpec::exponential();
    let d = exp.fr_distance_closed(&ParamPoint::one(1.0), &ParamPoint::one(std::f64::consts::E));
    assert_relative_eq!(d.unwrap(), 1.0, max_relative = 1e-15);

    let tri = FamilySpec::triangular(-1.0, 1.0).unwrap();
    assert_eq!(
        tri.fr_distance_closed(&ParamPoint::one(0.3), &ParamPoint::one(0.3))
            .unwrap(),
        0.0
    );

    // Distance between near-boundary modes approaches the diameter pi.
    let eps = 1e-9;
    let d = tri
        .fr_distance_closed(&ParamPoint::one(-1.0 + eps), &ParamPoint::one(1.0 - eps))
        .unwrap();
    assert!(d < std::f64::consts::PI && std::f64::consts::PI - d < 1e-3);

    assert!(matches!(
        FamilySpec::normal()
            .fr_distance_closed(&ParamPoint::two(0.0, 1.0), &ParamPoint::two(1.0, 1.0)),
        Err(Error::NotAvailable(_))
    ));
}

#[test]
fn closed_sphere_examples() {
    let exp = FamilySpec::exponential();
    let [lo, hi] = exp.closed_sphere_1d(&ParamPoint::one(1.0), 0.5).unwrap();
    assert_relative_eq!(lo.coord(0), 0.6065306597126334, max_relative = 1e-14);
    assert_relative_eq!(hi.coord(0), 1.6487212707001282, max_relative = 1e-14);
    for p in [lo, hi] {
        let d = exp.fr_distance_closed(&ParamPoint::one(1.0), &p).unwrap();
        assert_abs_diff_eq!(d, 0.5, epsilon = 1e-12);
    }

    let tri = FamilySpec::triangular(-1.0, 1.0).unwrap();
    let [lo, hi] = tri.closed_sphere_1d(&ParamPoint::one(0.0), 0.5).unwrap();
    assert_relative_eq!(lo.coord(0), -0.479425538604203, max_relative = 1e-13);
    assert_relative_eq!(hi.coord(0), 0.479425538604203, max_relative = 1e-13);

    assert!(matches!(
        exp.closed_sphere_1d(&ParamPoint::one(1.0), 0.0),
        Err(Error::Validation(_))
    ));
    assert!(matches!(
        tri.closed_sphere_1d(&ParamPoint::one(0.9), 1.0),
        Err(Error::RadiusTooLarge { .. })
    ));
}

#[test]
fn pushforward_examples() {
    let log_normal = pushforward_spec(&FamilySpec::normal(), PushforwardMap::Exp).unwrap();
    assert_eq!(log_normal, FamilySpec::log_normal());
    let theta = ParamPoint::two(0.3, 1.1);
    let a = FamilySpec::normal().fim(&theta).unwrap().entries;
    let b = log_normal.fim(&theta).unwrap().entries;
    assert_eq!(a, b);

    // Truncated log-normal on [0.2, 5] delegates to [ln 0.2, ln 5].
    let tln = FamilySpec::truncated_log_normal(0.2, 5.0).unwrap();
    let tn = FamilySpec::truncated_normal(0.2f64.ln(), 5.0f64.ln()).unwrap();
    let a = tln.fim(&theta).unwrap().entries;
    let b = tn.fim(&theta).unwrap().entries;
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(a.get(i, j).to_bits(), b.get(i, j).to_bits());
        }
    }

    // The exp image cannot be truncated at a negative bound.
    assert!(FamilySpec::truncated_log_normal(-1.0, 5.0).is_err());
}

#[test]
fn truncated_log_normal_fim_matches_its_own_monte_carlo() {
    let tln = FamilySpec::truncated_log_normal(0.2, 5.0).unwrap();
    let theta = ParamPoint::two(0.0, 1.0);
    let exact = tln.fim(&theta).unwrap().entries;
    let (mc, se) = tln
        .fim_monte_carlo_with_stderr(&theta, 1_000_000, 314)
        .unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let gap = (mc.entries.get(i, j) - exact.get(i, j)).abs();
            assert!(
                gap <= 3.0 * se.get(i, j) + 1e-9,
                "entry ({i},{j}) gap {gap}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exponential_distance_is_a_scale_invariant_metric(
        l0 in 0.01f64..50.0,
        l1 in 0.01f64..50.0,
        l2 in 0.01f64..50.0,
        c in 0.01f64..100.0,
    ) {
        let exp = FamilySpec::exponential();
        let d = |a: f64, b: f64| {
            exp.fr_distance_closed(&ParamPoint::one(a), &ParamPoint::one(b)).unwrap()
        };
        prop_assert_eq!(d(l0, l1).to_bits(), d(l1, l0).to_bits());
        prop_assert!(d(l0, l2) <= d(l0, l1) + d(l1, l2) + 1e-12);
        prop_assert!((d(l0, l1) - d(c * l0, c * l1)).abs() < 1e-12);
    }

    #[test]
    fn triangular_distance_is_a_metric(
        m0 in -0.95f64..0.95,
        m1 in -0.95f64..0.95,
        m2 in -0.95f64..0.95,
    ) {
        let tri = FamilySpec::triangular(-1.0, 1.0).unwrap();
        let d = |a: f64, b: f64| {
            tri.fr_distance_closed(&ParamPoint::one(a), &ParamPoint::one(b)).unwrap()
        };
        prop_assert_eq!(d(m0, m1).to_bits(), d(m1, m0).to_bits());
        prop_assert!(d(m0, m2) <= d(m0, m1) + d(m1, m2) + 1e-12);
        prop_assert!(d(m0, m1) <= std::f64::consts::PI);
    }

    #[test]
    fn truncated_normal_cdf_quantile_consistency(
        mu in -1.0f64..1.0,
        sigma in 0.3f64..2.0,
        u in 0.01f64..0.99,
    ) {
        let tn = FamilySpec::truncated_normal(-2.0, 2.0).unwrap();
        let theta = ParamPoint::two(mu, sigma);
        let x = tn.quantile(&theta, u).unwrap();
        prop_assert!((-2.0..=2.0).contains(&x));
        let back = tn.cdf(&theta, x).unwrap();
        prop_assert!((back - u).abs() < 1e-9);
    }
}

use gem_core::presets::{registry_document, parse_registry_document, DistanceTarget, Moves, ParamBundle, ResolveContext};
use gem_core::{
    find_preset, list_presets, registry, resolve_params, HMode, LevySampler, ParamValue,
    PresetSpec, RngStream, ZetaLaw,
};
use proptest::prelude::*;

const NAMES: [&str; 22] = [
    "DE", "PSO", "FA", "SA", "ABC", "ACS", "CSS", "CS", "GSA", "GEA", "HHO", "HGSO", "HS", "ALO",
    "WOA", "LOA", "MOA", "BBBC", "SSA", "MSA", "MVO", "WCA",
];

fn k(v: f64) -> ParamValue {
    ParamValue::Constant { value: v }
}

fn uniform(lo: f64, hi: f64) -> ParamValue {
    ParamValue::UniformDraw { lo, hi }
}

/// `[a, b, c, theta, p, q, r]` with the h and zeta laws.
struct Mapping {
    coeffs: [ParamValue; 7],
    h: HMode,
    zeta: ZetaLaw,
}

fn m(coeffs: [ParamValue; 7]) -> Mapping {
    Mapping { coeffs, h: HMode::ConstantOne, zeta: ZetaLaw::StandardNormal }
}

fn expected() -> Vec<(&'static str, Option<f64>, Vec<Mapping>)> {
    use DistanceTarget::*;
    let z = || k(0.0);
    let one = || k(1.0);
    vec![
        ("DE", None, vec![m([one(), k(0.7), z(), z(), z(), z(), z()])]),
        ("PSO", None, vec![m([one(), z(), one(), z(), one(), k(2.0), k(2.0)])]),
        (
            "FA",
            None,
            vec![m([
                one(),
                ParamValue::DistanceKernel { scale: 1.0, gamma: 1.0, to: Partner },
                z(),
                ParamValue::GeometricDecay { base: 0.97 },
                z(), z(), z(),
            ])],
        ),
        ("SA", None, vec![m([one(), z(), z(), one(), z(), z(), z()])]),
        ("ABC", None, vec![m([one(), uniform(-1.0, 1.0), z(), z(), z(), z(), z()])]),
        ("ACS", None, vec![m([one(), ParamValue::ScaledDifferenceDraw { scale: 4.0 }, z(), z(), z(), z(), z()])]),
        ("CSS", None, vec![m([one(), ParamValue::NormalizedDistance { to: Partner }, z(), z(), z(), z(), z()])]),
        (
            "CS",
            Some(0.25),
            vec![
                m([one(), ParamValue::LevyDraw { beta: 1.5, scale: 1.0 }, z(), z(), z(), z(), z()]),
                Mapping {
                    zeta: ZetaLaw::Levy { beta: 1.5 },
                    ..m([one(), z(), z(), one(), z(), z(), z()])
                },
            ],
        ),
        (
            "GSA",
            None,
            vec![m([
                one(),
                ParamValue::Product {
                    factors: vec![uniform(0.0, 1.0), ParamValue::ExponentialDecay { g0: 100.0, alpha: 20.0 }],
                },
                one(),
                z(),
                uniform(0.0, 1.0),
                z(),
                z(),
            ])],
        ),
        ("GEA", None, vec![m([one(), k(0.5), z(), z(), z(), z(), z()])]),
        ("HHO", None, vec![m([one(), z(), one(), z(), z(), ParamValue::LinearDecay { from: -1.0, to: 0.0 }, z()])]),
        (
            "HGSO",
            None,
            vec![m([
                one(),
                uniform(0.0, 1.0),
                one(),
                z(),
                one(),
                ParamValue::HenrySolubility { h0: 1.0, c: 1.0, t0: 298.15 },
                z(),
            ])],
        ),
        (
            "HS",
            Some(0.3),
            vec![
                Mapping { h: HMode::IdentityOfPosition, ..m([z(), z(), z(), one(), z(), z(), z()]) },
                m([one(), one(), z(), z(), z(), z(), z()]),
            ],
        ),
        ("ALO", None, vec![m([one(), z(), one(), ParamValue::LinearDecay { from: 1.0, to: 0.0 }, z(), z(), one()])]),
        (
            "WOA",
            Some(0.5),
            vec![
                m([
                    one(),
                    ParamValue::Product {
                        factors: vec![ParamValue::LinearDecay { from: 2.0, to: 0.0 }, uniform(-1.0, 1.0)],
                    },
                    z(), z(), z(), z(), z(),
                ]),
                m([one(), ParamValue::SpiralDraw { lo: -1.0, hi: 1.0 }, z(), one(), z(), z(), z()]),
            ],
        ),
        (
            "LOA",
            Some(0.5),
            vec![
                m([one(), z(), one(), z(), z(), uniform(-1.0, 0.0), z()]),
                m([
                    one(),
                    z(),
                    z(),
                    ParamValue::Product {
                        factors: vec![ParamValue::NormalizedDistance { to: GlobalBest }, uniform(0.0, 1.0)],
                    },
                    z(), z(), z(),
                ]),
            ],
        ),
        (
            "MOA",
            None,
            vec![m([
                one(),
                z(),
                one(),
                z(),
                k(0.8),
                ParamValue::DistanceKernel { scale: 1.0, gamma: 2.0, to: PersonalBest },
                ParamValue::DistanceKernel { scale: 1.5, gamma: 2.0, to: GlobalBest },
            ])],
        ),
        (
            "BBBC",
            None,
            vec![Mapping {
                h: HMode::UpperBound,
                ..m([z(), z(), z(), ParamValue::InverseHorizon { scale: 1.0 }, z(), z(), z()])
            }],
        ),
        (
            "SSA",
            None,
            vec![Mapping {
                zeta: ZetaLaw::CenteredUniform,
                ..m([
                    one(),
                    ParamValue::DistanceKernel { scale: 1.0, gamma: 1.0, to: Partner },
                    z(), one(), z(), z(), z(),
                ])
            }],
        ),
        (
            "MSA",
            Some(0.5),
            vec![
                m([uniform(0.0, 1.0), z(), one(), z(), z(), k(0.618), z()]),
                Mapping {
                    zeta: ZetaLaw::Levy { beta: 1.5 },
                    ..m([one(), z(), z(), ParamValue::InverseSquare { scale: 1.0 }, z(), z(), z()])
                },
            ],
        ),
        (
            "MVO",
            None,
            vec![Mapping {
                zeta: ZetaLaw::SignedBoxSample,
                ..m([one(), z(), z(), ParamValue::PowerDecay { p: 6.0 }, z(), z(), z()])
            }],
        ),
        (
            "WCA",
            Some(0.9),
            vec![
                m([one(), uniform(0.0, 2.0), z(), z(), z(), z(), z()]),
                Mapping {
                    zeta: ZetaLaw::Normal { mean: 1.0 },
                    ..m([one(), z(), z(), k(0.1f64.sqrt()), z(), z(), z()])
                },
            ],
        ),
    ]
}

fn assert_bundle(name: &str, got: &ParamBundle, want: &Mapping) {
    for ((field, value), w) in got.fields().iter().zip(&want.coeffs) {
        assert_eq!(*value, w, "{name}.{field}");
    }
    assert_eq!(got.h_mode, want.h, "{name}.h");
    assert_eq!(got.zeta, want.zeta, "{name}.zeta");
}

#[test]
fn registry_matches_item_mappings() {
    assert_eq!(list_presets(), NAMES.to_vec());
    let want = expected();
    assert_eq!(want.len(), 22);
    for (spec, (name, switch, bundles)) in registry().iter().zip(&want) {
        assert_eq!(spec.name, *name);
        match (&spec.moves, switch) {
            (Moves::Single(b), None) => assert_bundle(name, b, &bundles[0]),
            (Moves::Branch(rule), Some(p)) => {
                assert_eq!(rule.switch_probability, *p, "{name}");
                assert_bundle(name, &rule.branch_a, &bundles[0]);
                assert_bundle(name, &rule.branch_b, &bundles[1]);
            }
            _ => panic!("{name}: branching structure differs"),
        }
        assert!(!spec.notes.is_empty(), "{name} has no notes");
        spec.validate().unwrap();
    }
}

#[test]
fn every_preset_resolves_at_both_ends() {
    for t_max in [10, 1000] {
        let mut rng = RngStream::new(t_max as u64);
        for spec in registry() {
            for t in [1, t_max] {
                for agent in 0..20 {
                    let p = resolve_params(spec, t, t_max, &mut rng, agent)
                        .unwrap_or_else(|e| panic!("{} at t={t}: {e}", spec.name));
                    for v in [p.a, p.b, p.c, p.theta, p.p, p.q, p.r] {
                        assert!(v.is_finite() || spec.name == "CS", "{} at t={t}: {p:?}", spec.name);
                    }
                    assert!(p.theta >= 0.0);
                }
            }
        }
    }
}

#[test]
fn printed_resolution_examples() {
    let mut rng = RngStream::new(5);
    let de = resolve_params(&find_preset("DE").unwrap(), 7, 10, &mut rng, 0).unwrap();
    assert_eq!((de.a, de.b, de.c, de.theta), (1.0, 0.7, 0.0, 0.0));
    let fa = find_preset("FA").unwrap();
    assert!((resolve_params(&fa, 1, 10, &mut rng, 0).unwrap().theta - 0.97).abs() < 1e-15);
    assert!((resolve_params(&fa, 2, 10, &mut rng, 0).unwrap().theta - 0.9409).abs() < 1e-15);
    let sa = resolve_params(&find_preset("sa").unwrap(), 1, 10, &mut rng, 0).unwrap();
    assert_eq!((sa.a, sa.b, sa.c, sa.theta), (1.0, 0.0, 0.0, 1.0));
    let bbbc = resolve_params(&find_preset("BBBC").unwrap(), 3, 40, &mut rng, 0).unwrap();
    assert_eq!((bbbc.a, bbbc.theta, bbbc.h_mode), (0.0, 1.0 / 40.0, HMode::UpperBound));
    assert!(find_preset("nope").unwrap_err().is_config());
    assert_eq!(find_preset("GEM").unwrap(), PresetSpec::standard());
}

#[test]
fn standard_setting() {
    let s = PresetSpec::standard();
    let Moves::Single(b) = &s.moves else { panic!() };
    let want = m([k(1.0), k(0.7), k(1.0), ParamValue::GeometricDecay { base: 0.97 }, k(0.7), k(1.0), k(1.0)]);
    assert_bundle("GEM", b, &want);
}

#[test]
fn static_presets_do_not_depend_on_t() {
    for name in ["DE", "SA", "PSO", "ABC"] {
        let spec = find_preset(name).unwrap();
        let first = resolve_params(&spec, 1, 500, &mut RngStream::new(3), 0).unwrap();
        for t in [2, 77, 500] {
            assert_eq!(resolve_params(&spec, t, 500, &mut RngStream::new(3), 0).unwrap(), first, "{name}");
        }
    }
}

fn with_switch(name: &str, p: f64) -> PresetSpec {
    let mut spec = find_preset(name).unwrap();
    if let Moves::Branch(rule) = &mut spec.moves {
        rule.switch_probability = p;
    }
    spec
}

#[test]
fn branching_consumes_one_draw_and_degenerates() {
    for name in ["CS", "WOA", "HS", "MSA", "WCA", "LOA"] {
        let spec = find_preset(name).unwrap();
        let Moves::Branch(rule) = &spec.moves else { panic!("{name}") };
        let ctx = ResolveContext::at(3, 10);
        for seed in 0..50u64 {
            // reference: one uniform draw picks the branch, the branch then resolves
            let mut reference = RngStream::new(seed);
            let take_a = reference.uniform() < rule.switch_probability;
            let branch = if take_a { &rule.branch_a } else { &rule.branch_b };
            let want = branch.resolve(&ctx, &mut reference).unwrap();
            let mut rng = RngStream::new(seed);
            let got = spec.resolve(&ctx, &mut rng).unwrap();
            assert_eq!(format!("{got:?}"), format!("{want:?}"), "{name} seed {seed}");
            assert_eq!(rng.uniform(), reference.uniform());
        }
        for (p, branch) in [(1.0, &rule.branch_a), (0.0, &rule.branch_b)] {
            let fixed = with_switch(name, p);
            for seed in 0..20u64 {
                let mut rng = RngStream::new(seed);
                let mut twin = RngStream::new(seed);
                twin.uniform();
                let got = fixed.resolve(&ctx, &mut rng).unwrap();
                let want = branch.resolve(&ctx, &mut twin).unwrap();
                assert_eq!(format!("{got:?}"), format!("{want:?}"), "{name} p={p}");
            }
        }
    }
}

#[test]
fn registry_document_is_the_source_of_truth() {
    let doc = registry_document().unwrap();
    let parsed = parse_registry_document(&doc).unwrap();
    assert_eq!(parsed, registry());
    assert!(doc.contains("\"HS\"") && doc.contains("identity_of_position"));
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    sorted[((sorted.len() - 1) as f64 * q) as usize]
}

/// Median, over disjoint blocks of `size` draws, of the block sample variance.
fn typical_variance(draws: &[f64], size: usize) -> f64 {
    let mut v: Vec<f64> = draws
        .chunks_exact(size)
        .map(|b| {
            let mean = b.iter().sum::<f64>() / size as f64;
            b.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (size - 1) as f64
        })
        .collect();
    v.sort_by(f64::total_cmp);
    quantile(&v, 0.5)
}

#[test]
fn levy_steps_are_heavy_tailed() {
    let sampler = LevySampler::new(1.5).unwrap();
    let mut rng = RngStream::new(2024);
    let draws: Vec<f64> = (0..1_000_000).map(|_| sampler.sample(&mut rng)).collect();
    let gauss: Vec<f64> = (0..1_000_000).map(|_| rng.normal()).collect();

    let mut medians = Vec::new();
    for size in [10_000usize, 100_000, 1_000_000] {
        let mut abs: Vec<f64> = draws[..size].iter().map(|v| v.abs()).collect();
        abs.sort_by(f64::total_cmp);
        medians.push(quantile(&abs, 0.5));
    }
    assert!(medians.iter().all(|m| *m > 0.0 && m.is_finite()));
    for w in medians.windows(2) {
        assert!((w[1] / w[0] - 1.0).abs() < 0.03, "median drifts: {medians:?}");
    }

    // typical variance keeps growing with sample size (about 10^(1/3) per decade)
    let sizes = [100usize, 1_000, 10_000, 100_000];
    let levy: Vec<f64> = sizes.iter().map(|s| typical_variance(&draws, *s)).collect();
    let normal: Vec<f64> = sizes.iter().map(|s| typical_variance(&gauss, *s)).collect();
    for w in levy.windows(2) {
        assert!(w[1] / w[0] > 1.5, "variance stabilized: {levy:?}");
    }
    for w in normal.windows(2) {
        assert!((w[1] / w[0] - 1.0).abs() < 0.1, "gaussian control drifted: {normal:?}");
    }

    // tail index: P(|s| > x) ~ x^-1.5, so a tenfold larger threshold keeps ~1/31.6 of the mass
    let mut abs: Vec<f64> = draws.iter().map(|v| v.abs()).collect();
    abs.sort_by(f64::total_cmp);
    let x = quantile(&abs, 0.99);
    let beyond = abs.iter().filter(|v| **v > 10.0 * x).count() as f64 / abs.len() as f64;
    let ratio = 0.01 / beyond;
    assert!((20.0..50.0).contains(&ratio), "tail ratio {ratio}");

    for beta in [0.0, 2.0, -1.0, 2.5] {
        assert!(LevySampler::new(beta).unwrap_err().is_config());
    }
    let a: Vec<f64> = (0..10).map(|_| sampler.sample(&mut RngStream::new(4))).collect();
    assert!(a.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn near_gaussian_limit_has_light_tails() {
    let kurtosis = |beta: f64| {
        let sampler = LevySampler::new(beta).unwrap();
        let mut rng = RngStream::new(8);
        let s: Vec<f64> = (0..200_000).map(|_| sampler.sample(&mut rng)).collect();
        let n = s.len() as f64;
        let mean = s.iter().sum::<f64>() / n;
        let m2 = s.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let m4 = s.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
        m4 / (m2 * m2)
    };
    let heavy = kurtosis(1.5);
    let light = kurtosis(1.99);
    assert!(light < heavy, "{light} vs {heavy}");
}

proptest! {
    #[test]
    fn decays_are_monotone(base in 0.01..0.999f64, g0 in 0.1..200.0f64, alpha in 0.1..40.0f64, p in 0.5..10.0f64) {
        let t_max = 60;
        let mut rng = RngStream::new(0);
        let laws = [
            ParamValue::GeometricDecay { base },
            ParamValue::ExponentialDecay { g0, alpha },
            ParamValue::PowerDecay { p },
        ];
        for law in &laws {
            let mut prev = f64::INFINITY;
            for t in 1..=t_max {
                let v = law.resolve(&ResolveContext::at(t, t_max), &mut rng).unwrap();
                prop_assert!(v < prev || v == 0.0, "{law:?} at t={t}");
                prev = v;
            }
        }
        let first = laws[2].resolve(&ResolveContext::at(1, t_max), &mut rng).unwrap();
        prop_assert!(first <= 1.0 && first > 0.0);
        prop_assert_eq!(laws[2].resolve(&ResolveContext::at(t_max, t_max), &mut rng).unwrap(), 0.0);
    }

    #[test]
    fn bad_parameters_are_rejected(base in 1.0001..5.0f64) {
        let spec = format!("theta={base}^t");
        prop_assert!(PresetSpec::from_assignments(&spec).unwrap_err().is_config());
    }
}

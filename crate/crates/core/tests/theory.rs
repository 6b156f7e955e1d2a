use efn_lab::alignment::{correlation_sequence, estimate_shift};
use efn_lab::rng::stream_rng;
use efn_lab::signal::{dft, SpectralRepr};
use efn_lab::stats::{MeanEstimate, Z_99_ONE_SIDED};
use efn_lab::theory::*;
use efn_lab::{generate_template, SignalFamilySpec, TemplateSignal};

// Reference values below were computed independently with numpy and mpmath.
const X8: [f64; 8] = [0.3, -1.2, 0.7, 2.0, -0.4, 0.1, 0.9, -0.6];
const N8: [f64; 8] = [1.1, 0.2, -0.8, 0.5, 1.7, -1.3, 0.05, 0.6];

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}

fn x8() -> TemplateSignal {
    TemplateSignal::from_samples(X8.to_vec()).unwrap()
}

#[test]
fn reference_correlation_and_spectrum() {
    let want = [
        -0.2193199097804095,
        1.9075303077539816,
        -0.49393055311890527,
        -0.7998726121403169,
        0.6874481205722078,
        0.5307910421576296,
        1.159262380267879,
        -1.4117567301831404,
    ];
    let t = x8();
    let c = correlation_sequence(&N8, &t).unwrap();
    for (a, b) in c.iter().zip(want) {
        close(*a, b, 1e-12);
    }
    assert_eq!(estimate_shift(&N8, &t).unwrap().shift, 1);
    let spec: SpectralRepr = dft(t.samples()).unwrap();
    let mags = [0.2345787158142091, 0.284074029950404, 0.3939936271830669, 0.4736339508742805, 0.15638581054280606];
    let phases = [0.0, -2.805334357924359, 2.1679729848875744, -0.31304936236036135, 0.0];
    for k in 0..5 {
        close(spec.magnitude(k), mags[k], 1e-12);
        close(spec.phase(k), phases[k], 1e-12);
    }
}

#[test]
fn reference_conditional_gaussian() {
    let cg = build_conditional_gaussian(&x8(), 2, 0.9, 0.4).unwrap();
    close(cg.sigma2(), 0.7694720334553061, 1e-12);
    let mean = [-0.13893108213843164, 0.6954469958099334, 0.13893108213843172, -0.6954469958099335];
    for (a, b) in cg.mean().iter().zip(mean) {
        close(*a, b, 1e-12);
    }
    let row = [1.0, -0.2890747516989022, 0.061160480920020924, 0.3361212754835334, -0.8776790381599583];
    for (a, b) in cg.covariance_row().iter().zip(row) {
        close(*a, b, 1e-12);
    }
    close(cg.sigma2() * tilde_power(&x8(), 2).iter().sum::<f64>(), 1.0, 1e-12);
}

#[test]
fn delta_conditional_mean_amplitude() {
    let d = 64;
    let t = generate_template(&SignalFamilySpec::delta(d)).unwrap();
    let cg = build_conditional_gaussian(&t, 5, 1.3, 0.0).unwrap();
    close(cg.mean()[0], 2.0 / (d as f64).sqrt() * 1.3, 1e-12);
}

#[test]
fn flat_zero_dc_normalization_approaches_half() {
    for d in [16usize, 64, 256, 1024] {
        let t = generate_template(&SignalFamilySpec::flat_zero_dc(d, 3)).unwrap();
        for k in [1, d / 4, d / 2 - 1] {
            let s2 = build_conditional_gaussian(&t, k, 1.0, 0.0).unwrap().sigma2();
            assert!((s2 - 0.5).abs() <= 2.0 / d as f64, "d={d} k={k} sigma2={s2}");
        }
    }
}

#[test]
fn gumbel_constants_reference() {
    let refs = [
        (256, 3.33021844463079, 2.69303008317212),
        (1024, 3.72329741105903, 3.12341296372569),
        (2048, 3.90502726908773, 3.32085636773423),
        (4096, 4.07866796067524, 3.50870026276463),
    ];
    for (d, a, b) in refs {
        let c = GumbelConstants::new(d).unwrap();
        close(c.a, a, 1e-12);
        close(c.b, b, 1e-12);
    }
    // Five-decimal values as commonly quoted; b_d agrees only to about 1e-5.
    let c = GumbelConstants::new(1024).unwrap();
    close(c.a, 3.72330, 1e-5);
    close(c.b, 3.12340, 2e-5);
    let c = GumbelConstants::new(256).unwrap();
    close(c.a, 3.33022, 1e-5);
    close(c.b, 2.69304, 2e-5);
    let mut prev = 0.0;
    for d in 3..2000 {
        let c = GumbelConstants::new(d).unwrap();
        assert!(c.a > prev && c.b < c.a);
        prev = c.a;
    }
}

#[test]
fn softmax_reference_values() {
    let f = [0.5, -0.25, 1.0, 0.0, 2.0, -1.5];
    let mu = [0.1, 0.9, -0.3, 0.4, 0.2, 0.0];
    close(softmax_expectation(&f, &mu).unwrap(), 0.102665615494664, 1e-13);
    close(m_star(&mu, &f, 0.3).unwrap(), 0.465326551256383, 1e-13);
    close(softmax_expectation(&[0.0, 1.0, 2.0, 3.0], &[0.0; 4]).unwrap(), 1.5, 1e-15);
    close(softmax_expectation(&[0.0, 0.0, 1.0, 0.0, 0.0], &[0.0; 5]).unwrap(), 0.2, 1e-15);
    close(m_star(&[0.0; 7], &[1.0; 7], 0.0).unwrap(), 0.0, 1e-15);
    close(m_star(&mu, &[2.5; 6], 0.4).unwrap() - m_star(&mu, &[2.5; 6], 0.0).unwrap(), 1.0, 1e-12);
}

#[test]
fn potential_derivative_matches_softmax_at_256() {
    use rand::Rng;
    let mut rng = stream_rng(3, 0, 0, 99);
    let mean: Vec<f64> = (0..256).map(|_| rng.random_range(-2.0..2.0)).collect();
    let f: Vec<f64> = (0..256).map(|_| rng.random_range(-1.0..1.0)).collect();
    let h = 1e-5;
    let deriv = (m_star(&mean, &f, h).unwrap() - m_star(&mean, &f, -h).unwrap()) / (2.0 * h);
    close(deriv, softmax_expectation(&f, &mean).unwrap(), 1e-6);
    let bound = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    assert!(softmax_expectation(&f, &mean).unwrap().abs() <= bound);
}

#[test]
fn high_d_prediction_values() {
    let t = generate_template(&SignalFamilySpec::delta(1024)).unwrap();
    close(high_d_phase_mse(&t, 7, 1000).unwrap(), 0.0369329930467575, 1e-12);
    close(high_d_magnitude(&t, 7).unwrap(), 0.116353044095595, 1e-12);
    let half = predict_phase_mse(&t, 7, 2000, Regime::HighD).unwrap();
    assert_eq!(half * 2.0, predict_phase_mse(&t, 7, 1000, Regime::HighD).unwrap());
    let fixed = Regime::FixedD { trials: 2000, seed: 5 };
    let a = predict_phase_mse(&t, 7, 1000, fixed).unwrap();
    let b = predict_phase_mse(&t, 7, 2000, fixed).unwrap();
    assert_eq!(a, 2.0 * b);
}

#[test]
fn fixed_d_magnitude_is_mu_b() {
    let t = generate_template(&SignalFamilySpec::power_law(64, 1.0, 2)).unwrap();
    let r = Regime::FixedD { trials: 4000, seed: 8 };
    let pm = estimate_ck(&t, 3, 4000, 8).unwrap();
    assert_eq!(predict_magnitude(&t, 3, r).unwrap(), pm.mu_b.mean);
    assert!(pm.mu_b.mean > 0.0);
}

#[test]
fn ck_split_sample_agreement_delta8() {
    let t = generate_template(&SignalFamilySpec::delta(8)).unwrap();
    let a = estimate_ck(&t, 1, 50_000, 1).unwrap();
    let b = estimate_ck(&t, 1, 50_000, 2).unwrap();
    let z = (a.ck - b.ck).abs() / a.ck_stderr.hypot(b.ck_stderr);
    assert!(z <= 3.0, "z = {z}");
}

#[test]
fn sampler_moments_match_targets() {
    let d = 16;
    let t = generate_template(&SignalFamilySpec::power_law(d, 1.0, 6)).unwrap();
    let cg = build_conditional_gaussian(&t, 2, 1.2, 0.3).unwrap();
    let sampler = CyclostationarySampler::new(&cg).unwrap();
    let row = cg.covariance_row();
    let mut rng = stream_rng(77, 0, 0, 0);
    let n = 100_000;
    let mut draws = Vec::with_capacity(n);
    let mut s = Vec::new();
    for _ in 0..n {
        sampler.sample(&mut rng, &mut s);
        draws.push(s.clone());
    }
    for r in 0..d {
        let col: Vec<f64> = draws.iter().map(|v| v[r]).collect();
        let e = MeanEstimate::from_samples(&col);
        assert!((e.mean - cg.mean()[r]).abs() <= 3.0 * e.stderr, "r={r}");
    }
    for lag in [1, 3, 8] {
        let prod: Vec<f64> = draws.iter().map(|v| (v[0] - cg.mean()[0]) * (v[lag] - cg.mean()[lag])).collect();
        let e = MeanEstimate::from_samples(&prod);
        assert!((e.mean - row[lag]).abs() <= 3.0 * e.stderr, "lag={lag} {} vs {}", e.mean, row[lag]);
    }
}

#[test]
fn flat_weights_have_no_lag_one_covariance() {
    let d = 32;
    let c = Conditioning { k: 0, noise_magnitude: 0.0, noise_phase: 0.0 };
    let cg = ConditionalGaussian::from_parts(vec![0.0; d], vec![1.0 / d as f64; d], c).unwrap();
    let sampler = CyclostationarySampler::new(&cg).unwrap();
    let mut rng = stream_rng(5, 0, 0, 0);
    let mut s = Vec::new();
    let prod: Vec<f64> = (0..100_000)
        .map(|_| {
            sampler.sample(&mut rng, &mut s);
            s[0] * s[1]
        })
        .collect();
    let e = MeanEstimate::from_samples(&prod);
    assert!(e.mean.abs() <= 3.0 * e.stderr);
}

#[test]
fn sign_pattern_zero_phase_lag_zero() {
    let t = generate_template(&SignalFamilySpec::delta(8)).unwrap();
    let rep = lemma1_check(&t, 1, 0.0, 100_000, 12).unwrap();
    let d0 = rep.difference[0];
    assert!(d0.mean / d0.stderr > Z_99_ONE_SIDED);
    for (i, phi) in [0.4, 1.9, -2.2].into_iter().enumerate() {
        let rep = lemma1_check(&t, 1, phi, 100_000, 40 + i as u64).unwrap();
        assert!(rep.concentration.mean / rep.concentration.stderr > Z_99_ONE_SIDED);
    }
    assert!(matches!(lemma1_check(&t, 1, 0.0, 99_999, 0), Err(efn_lab::EfnError::InsufficientData(_))));
}

#[test]
fn prediction_table_csv_columns() {
    let t = generate_template(&SignalFamilySpec::power_law(32, 1.0, 1)).unwrap();
    let p = analytic_prediction(&t, &[1, 2], 10, Regime::FixedD { trials: 1000, seed: 1 }).unwrap();
    let mut out = Vec::new();
    p.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "k,template-magnitude,predicted-mse,predicted-magnitude,regime");
    assert!(text.lines().nth(1).unwrap().ends_with(",thm1-fixed-d"));
}

//! End-to-end acceptance checks at desk scale. Each test prints one
//! `AC<n> PASS|FAIL` line with the measured value and its threshold.

use efn_lab::experiment::{self as verify, fit_loglog_slope, run_experiment, sweep_axis, ExperimentConfig, SweepAxis, VerifyReport};
use efn_lab::stats::MeanEstimate;
use efn_lab::SignalFamilySpec;

const SEED: u64 = 20_240_601;

fn report(id: &str, pass: bool, detail: String) -> bool {
    println!("{id} {}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn report_suite(id: &str, r: &VerifyReport) -> bool {
    for line in &r.lines {
        println!("    {} {:.6} vs {} [{}]", line.check, line.measured, line.threshold, if line.pass { "ok" } else { "x" });
    }
    let failed = r.lines.iter().filter(|l| !l.pass).count();
    report(id, r.all_pass(), format!("{} of {} checks pass", r.lines.len() - failed, r.lines.len()))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) }
}

fn strictly_increasing(points: &[MeanEstimate]) -> (bool, Vec<f64>) {
    let z: Vec<f64> = points.windows(2).map(|w| w[1].z_against(&w[0])).collect();
    (z.iter().all(|&z| z > 3.0), z)
}

fn ac1_phase_mse_scales_inversely_with_m() -> bool {
    let d = 1024;
    let ks: Vec<usize> = (1..=64).collect();
    let base = ExperimentConfig::new(SignalFamilySpec::power_law(d, 1.0, 7), 200, 200, SEED)
        .with_frequencies(ks.clone())
        .with_prediction_trials(0);
    let sweep = sweep_axis(&base, SweepAxis::M, &[200.0, 500.0, 1500.0, 5000.0]).unwrap();
    let slopes: Vec<f64> = ks
        .iter()
        .map(|&k| {
            let pts: Vec<(f64, f64)> =
                sweep.iter().map(|p| (p.value, p.stats.frequency(k).unwrap().phase_mse.unwrap().mean)).collect();
            fit_loglog_slope(&pts).unwrap().slope
        })
        .collect();
    let inside = slopes.iter().filter(|s| (-1.15..=-0.85).contains(*s)).count();
    let frac = inside as f64 / slopes.len() as f64;
    report(
        "AC1",
        frac >= 0.9,
        format!("{inside}/{} slopes in [-1.15, -0.85] ({frac:.3} vs >= 0.9), median slope {:.4}", slopes.len(), median(slopes.clone())),
    )
}

fn ac2_ac3_high_dimension_rates() -> bool {
    let d = 2048;
    let ks: Vec<usize> = (d / 8..=3 * d / 8).collect();
    let cfg = ExperimentConfig::new(SignalFamilySpec::flat_zero_dc(d, 11), 2000, 500, SEED)
        .with_frequencies(ks)
        .with_prediction_trials(0);
    let stats = run_experiment(&cfg).unwrap();
    let ratios: Vec<f64> = stats.frequencies.iter().filter_map(|f| f.thm2_mse_ratio).collect();
    let inside = ratios.iter().filter(|r| (0.6..=1.4).contains(*r)).count();
    let frac = inside as f64 / ratios.len() as f64;
    let med = median(ratios.clone());
    let ac2 = report(
        "AC2",
        frac >= 0.8 && (0.75..=1.25).contains(&med),
        format!("{inside}/{} ratios in [0.6, 1.4] ({frac:.3} vs >= 0.8), median {med:.4} vs [0.75, 1.25]", ratios.len()),
    );
    let mag = median(stats.frequencies.iter().map(|f| f.thm2_magnitude_ratio).collect());
    let ac3 = report("AC3", (0.8..=1.2).contains(&mag), format!("median magnitude ratio {mag:.4} vs [0.8, 1.2]"));
    ac2 && ac3
}

fn ac4_fixed_dimension_magnitude_limit() -> bool {
    let ks = vec![1, 8, 32, 64, 100];
    let cfg = ExperimentConfig::new(SignalFamilySpec::power_law(256, 1.0, 3), 5000, 200, SEED)
        .with_frequencies(ks)
        .with_prediction_trials(100_000);
    let stats = run_experiment(&cfg).unwrap();
    let mut worst = 0.0f64;
    for f in &stats.frequencies {
        let limit = f.thm1_magnitude.unwrap();
        let z = f.magnitude.z_against(&limit);
        println!("    k={} mean |X^|={:.6} limit={:.6} z={z:.3}", f.k, f.magnitude.mean, limit.mean);
        worst = worst.max(z.abs());
    }
    report("AC4", worst <= 3.0, format!("max |z| {worst:.3} vs <= 3 over 5 bins"))
}

fn ac5_symmetry_identities() -> bool {
    report_suite("AC5", &verify::verify_symmetry(SEED, 100_000).unwrap())
}

fn ac6_sign_pattern() -> bool {
    report_suite("AC6", &verify::verify_lemma1(SEED, 200_000).unwrap())
}

fn ac7_softmax_approximation() -> bool {
    report_suite("AC7", &verify::verify_prop3(SEED, 100_000).unwrap())
}

fn ac8_gumbel_convergence() -> bool {
    report_suite("AC8", &verify::verify_gumbel(SEED).unwrap())
}

fn ac9_exactness() -> bool {
    report_suite("AC9", &verify::verify_alignment(SEED, 1000).unwrap())
}

fn ac10_qualitative_orderings() -> bool {
    let psd: Vec<MeanEstimate> = [2.0, 1.0, 0.0]
        .iter()
        .map(|&beta| {
            let cfg = ExperimentConfig::new(SignalFamilySpec::power_law(1024, beta, 5), 1000, 200, SEED).with_prediction_trials(0);
            run_experiment(&cfg).unwrap().pearson
        })
        .collect();
    let (psd_ok, psd_z) = strictly_increasing(&psd);
    let dim: Vec<MeanEstimate> = [512, 2048, 8192]
        .iter()
        .map(|&d| {
            let cfg = ExperimentConfig::new(SignalFamilySpec::power_law(d, 0.0, 5), 2000, 100, SEED).with_prediction_trials(0);
            run_experiment(&cfg).unwrap().pearson
        })
        .collect();
    let (dim_ok, dim_z) = strictly_increasing(&dim);
    let fmt = |v: &[MeanEstimate]| v.iter().map(|p| format!("{:.4}", p.mean)).collect::<Vec<_>>().join(" < ");
    println!("    beta 2,1,0 at d=1024 M=1000: {} (step z {psd_z:.2?})", fmt(&psd));
    println!("    d 512,2048,8192 at beta=0 M=2000: {} (step z {dim_z:.2?})", fmt(&dim));
    report(
        "AC10",
        psd_ok && dim_ok,
        format!("psd ordering {} dimension ordering {} (every step z > 3)", if psd_ok { "holds" } else { "broken" }, if dim_ok { "holds" } else { "broken" }),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> bool); 9] = [
        ("AC1", ac1_phase_mse_scales_inversely_with_m),
        ("AC2/AC3", ac2_ac3_high_dimension_rates),
        ("AC4", ac4_fixed_dimension_magnitude_limit),
        ("AC5", ac5_symmetry_identities),
        ("AC6", ac6_sign_pattern),
        ("AC7", ac7_softmax_approximation),
        ("AC8", ac8_gumbel_convergence),
        ("AC9", ac9_exactness),
        ("AC10", ac10_qualitative_orderings),
    ];
    let failed: Vec<&str> = criteria.iter().filter(|(_, run)| !run()).map(|(id, _)| *id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

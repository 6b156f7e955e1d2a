//! Invariant suites with measured statistics against fixed thresholds.

use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::fit::{ks_statistic, ReferenceCdf};
use crate::alignment::{argmax_first, correlation_oracle, correlation_sequence, fourier_correlation_sequence};
use crate::error::{invalid, Result};
use crate::rng::{stream_rng, DOMAIN_VERIFY};
use crate::signal::{circular_shift, dft, dft_complex, generate_template, idft, SignalFamilySpec, TemplateSignal};
use crate::stats::Z_99_ONE_SIDED;
use crate::theory::{compare_softmax, lemma1_check, normalized_gaussian_maxima, phase_moments, sign_pattern_with_mean};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifySuite {
    Alignment,
    Symmetry,
    Gumbel,
    Prop3,
    Lemma1,
    All,
}

impl VerifySuite {
    pub const EACH: [VerifySuite; 5] =
        [VerifySuite::Alignment, VerifySuite::Symmetry, VerifySuite::Gumbel, VerifySuite::Prop3, VerifySuite::Lemma1];

    pub fn as_str(&self) -> &'static str {
        match self {
            VerifySuite::Alignment => "alignment",
            VerifySuite::Symmetry => "symmetry",
            VerifySuite::Gumbel => "gumbel",
            VerifySuite::Prop3 => "prop3",
            VerifySuite::Lemma1 => "lemma1",
            VerifySuite::All => "all",
        }
    }
}

impl FromStr for VerifySuite {
    type Err = crate::error::EfnError;

    fn from_str(s: &str) -> Result<Self> {
        VerifySuite::EACH
            .into_iter()
            .chain([VerifySuite::All])
            .find(|v| v.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown suite `{s}`; expected alignment, symmetry, gumbel, prop3, lemma1 or all")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub suite: &'static str,
    pub check: String,
    pub measured: f64,
    pub threshold: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    fn push(&mut self, suite: &'static str, check: impl Into<String>, measured: f64, threshold: impl Into<String>, pass: bool) {
        self.lines.push(CheckLine { suite, check: check.into(), measured, threshold: threshold.into(), pass });
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{:<10} {:<44} {:>14} {:>16}  result\n", "suite", "check", "measured", "threshold");
        for l in &self.lines {
            out.push_str(&format!(
                "{:<10} {:<44} {:>14.6e} {:>16}  {}\n",
                l.suite,
                l.check,
                l.measured,
                l.threshold,
                if l.pass { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}

pub const DEFAULT_VERIFY_SEED: u64 = 20_240_601;

pub fn run_suite(suite: VerifySuite, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let suites: Vec<VerifySuite> = if suite == VerifySuite::All { VerifySuite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        let part = match s {
            VerifySuite::Alignment => verify_alignment(seed, 1000)?,
            VerifySuite::Symmetry => verify_symmetry(seed, 100_000)?,
            VerifySuite::Gumbel => verify_gumbel(seed)?,
            VerifySuite::Prop3 => verify_prop3(seed, 100_000)?,
            VerifySuite::Lemma1 => verify_lemma1(seed, 200_000)?,
            VerifySuite::All => unreachable!(),
        };
        report.lines.extend(part.lines);
    }
    Ok(report)
}

fn random_case(seed: u64, case: u64, d: usize) -> Result<(TemplateSignal, Vec<f64>)> {
    let mut rng = stream_rng(seed, case, 0, DOMAIN_VERIFY);
    let beta = rng.random_range(0.0..2.0);
    let template = generate_template(&SignalFamilySpec::power_law(d, beta, rng.random()))?;
    let noise = (0..d).map(|_| rng.sample(StandardNormal)).collect();
    Ok((template, noise))
}

/// Transform exactness, argmax agreement, round trips and shift identities.
pub fn verify_alignment(seed: u64, cases: usize) -> Result<VerifyReport> {
    let d = 128;
    let (mut corr_err, mut round_err, mut duality_err) = (0.0f64, 0.0f64, 0.0f64);
    let (mut agree, mut group_ok) = (0usize, 0usize);
    for case in 0..cases as u64 {
        let (template, noise) = random_case(seed, case, d)?;
        let fast = correlation_sequence(&noise, &template)?;
        let direct = correlation_oracle(&noise, &template)?;
        let scale = direct.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
        corr_err = fast.iter().zip(&direct).fold(corr_err, |a, (x, y)| a.max((x - y).abs() / scale));
        let fourier = fourier_correlation_sequence(&noise, &template)?;
        if argmax_first(&fast).0 == argmax_first(&fourier).0 {
            agree += 1;
        }
        let back = idft(&dft(&noise)?)?;
        round_err = noise.iter().zip(&back).fold(round_err, |a, (x, y)| a.max((x - y).abs()));

        let mut rng = stream_rng(seed, case, 1, DOMAIN_VERIFY);
        let a: i64 = rng.random_range(-300..300);
        let b: i64 = rng.random_range(-300..300);
        if circular_shift(&circular_shift(&noise, a), b) == circular_shift(&noise, a + b) {
            group_ok += 1;
        }
        let shifted = dft_complex(&circular_shift(&noise, a))?;
        let base = dft_complex(&noise)?;
        for (k, (s, x)) in shifted.iter().zip(&base).enumerate() {
            let turn = -2.0 * std::f64::consts::PI * (k as i64 * a).rem_euclid(d as i64) as f64 / d as f64;
            let expected = x * rustfft::num_complex::Complex64::from_polar(1.0, turn);
            duality_err = duality_err.max((s - expected).norm());
        }
    }
    let n = cases as f64;
    let mut r = VerifyReport::default();
    r.push("alignment", "fft vs direct correlation (max rel err)", corr_err, "<= 1e-9", corr_err <= 1e-9);
    r.push("alignment", "real vs fourier argmax agreement", agree as f64 / n, "== 1", agree == cases);
    r.push("alignment", "dft/idft round trip (max abs err)", round_err, "<= 1e-10", round_err <= 1e-10);
    r.push("alignment", "shift group law (fraction exact)", group_ok as f64 / n, "== 1", group_ok == cases);
    r.push("alignment", "shift-phase duality (max abs err)", duality_err, "<= 1e-9", duality_err <= 1e-9);
    Ok(r)
}

/// Template families used by the symmetry suite.
pub fn symmetry_families(d: usize) -> Vec<(&'static str, SignalFamilySpec)> {
    vec![
        ("delta", SignalFamilySpec::delta(d)),
        ("power-law", SignalFamilySpec::power_law(d, 1.0, 31)),
        ("padded-pulse", SignalFamilySpec::zero_padded_pulse(d, 1.0, 1.0, 32)),
    ]
}

/// `μ_A` centered at zero and `μ_B` positive for three families and three bins.
pub fn verify_symmetry(seed: u64, draws: usize) -> Result<VerifyReport> {
    let d = 64;
    let ks = [1, d / 8, 3 * d / 8];
    let mut r = VerifyReport::default();
    for (name, spec) in symmetry_families(d) {
        let template = generate_template(&spec)?;
        for pm in phase_moments(&template, &ks, draws, seed)? {
            let za = pm.mu_a.mean / pm.mu_a.stderr;
            let zb = pm.mu_b.mean / pm.mu_b.stderr;
            r.push("symmetry", format!("{name} k={} |mu_A|/se", pm.k), za.abs(), "<= 3", za.abs() <= 3.0);
            r.push("symmetry", format!("{name} k={} mu_B/se", pm.k), zb, format!("> {Z_99_ONE_SIDED:.3}"), zb > Z_99_ONE_SIDED);
        }
    }
    Ok(r)
}

/// Standard Gumbel draws by inversion.
pub fn gumbel_inverse_cdf_samples(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, 0, 1, crate::rng::DOMAIN_GUMBEL);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
            -(-u.ln()).ln()
        })
        .collect()
}

pub fn verify_gumbel(seed: u64) -> Result<VerifyReport> {
    let mut r = VerifyReport::default();
    let ks_self = ks_statistic(&gumbel_inverse_cdf_samples(10_000, seed), ReferenceCdf::GumbelStandard)?;
    r.push("gumbel", "inverse-cdf self test KS, n=1e4", ks_self, "<= 0.02", ks_self <= 0.02);
    let maxima = normalized_gaussian_maxima(4096, 10_000, seed)?;
    let ks = ks_statistic(&maxima, ReferenceCdf::GumbelStandard)?;
    r.push("gumbel", "normalized maxima d=4096 KS, n=1e4", ks, "<= 0.05", ks <= 0.05);
    Ok(r)
}

/// Conditioning used for the softmax comparison: delta template, `k = d/8`.
pub fn softmax_setting(d: usize) -> Result<(TemplateSignal, usize, f64, f64)> {
    Ok((generate_template(&SignalFamilySpec::delta(d))?, d / 8, 1.0, 0.5))
}

pub fn verify_prop3(seed: u64, draws: usize) -> Result<VerifyReport> {
    let mut r = VerifyReport::default();
    let mut gaps = Vec::new();
    for d in [256, 1024, 4096] {
        let (t, k, mag, phase) = softmax_setting(d)?;
        let cmp = compare_softmax(&t, k, mag, phase, draws, seed)?;
        gaps.push(cmp.relative_gap);
        let limit = match d {
            1024 => Some(0.1),
            4096 => Some(0.05),
            _ => None,
        };
        if let Some(limit) = limit {
            r.push("prop3", format!("relative gap d={d}"), cmp.relative_gap, format!("<= {limit}"), cmp.relative_gap <= limit);
        }
    }
    let worst = gaps.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    r.push("prop3", "gap increase over d=256,1024,4096", worst, "<= 0", worst <= 0.0);
    Ok(r)
}

pub const LEMMA1_PHASES: [f64; 3] = [0.0, std::f64::consts::FRAC_PI_3, 2.0 * std::f64::consts::FRAC_PI_3];

pub fn verify_lemma1(seed: u64, draws: usize) -> Result<VerifyReport> {
    let d = 8;
    let template = generate_template(&SignalFamilySpec::delta(d))?;
    let mut r = VerifyReport::default();
    for (i, &phi) in LEMMA1_PHASES.iter().enumerate() {
        let rep = lemma1_check(&template, 1, phi, draws, seed.wrapping_add(i as u64))?;
        let frac = rep.fraction_confirmed(0.3);
        r.push("lemma1", format!("phi={phi:.4} sign pattern |mu|>0.3"), frac, "== 1", frac == 1.0);
        let z = rep.concentration.mean / rep.concentration.stderr;
        r.push("lemma1", format!("phi={phi:.4} concentration sum z"), z, format!("> {Z_99_ONE_SIDED:.3}"), z > Z_99_ONE_SIDED);
    }
    let control = sign_pattern_with_mean(&template, 1, vec![0.0; d], draws, seed)?;
    let worst = control
        .difference
        .iter()
        .map(|e| if e.stderr > 0.0 { (e.mean / e.stderr).abs() } else { e.mean.abs() })
        .fold(0.0, f64::max);
    r.push("lemma1", "zero-mean control max |diff|/se", worst, "<= 3", worst <= 3.0);
    Ok(r)
}

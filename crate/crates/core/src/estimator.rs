//! The align-and-average estimator and the error metrics it is judged by.

use rustfft::num_complex::Complex64;

use crate::alignment::{AlignmentResult, Aligner};
use crate::error::{invalid, EfnError, Result};
use crate::signal::{dft, wrap_phase, SpectralRepr, TemplateSignal};
use crate::stats::{MeanEstimate, Moments};

/// Streaming sum of aligned observations.
///
/// Sums are kept in fixed point (`i128` multiples of a power of two chosen
/// from the noise scale, truncated below `2^-64 σ`), so merging accumulators
/// gives bit-identical results in any grouping or order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfnAccumulator {
    sums: Vec<i128>,
    count: u64,
    template_id: u64,
    scale_exponent: i32,
}

impl EfnAccumulator {
    /// `sigma` sets the fixed-point resolution (`2^-64` of the noise scale).
    pub fn new(template: &TemplateSignal, sigma: f64) -> Result<Self> {
        Self::with_id(template.d(), template.fingerprint(), sigma)
    }

    pub(crate) fn with_id(d: usize, template_id: u64, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(invalid(format!("sigma must be positive, got {sigma}")));
        }
        let exponent = sigma.log2().ceil() as i32;
        Ok(Self { sums: vec![0; d], count: 0, template_id, scale_exponent: 64 - exponent })
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn d(&self) -> usize {
        self.sums.len()
    }

    /// Align `noise` against the template and add `T_{-R̂} n`.
    pub fn accumulate(&mut self, aligner: &Aligner, noise: &[f64]) -> Result<AlignmentResult> {
        if aligner.template_id() != self.template_id {
            return Err(invalid("aligner template differs from the accumulator template"));
        }
        let result = aligner.align(noise)?;
        self.add_aligned(noise, result.shift)?;
        Ok(result)
    }

    /// Add `T_{-shift} noise`, i.e. entry `i` receives `noise[(i + shift) mod d]`.
    pub fn add_aligned(&mut self, noise: &[f64], shift: usize) -> Result<()> {
        let d = self.sums.len();
        if noise.len() != d {
            return Err(invalid(format!("noise length {} does not match accumulator length {d}", noise.len())));
        }
        let scale = 2f64.powi(self.scale_exponent);
        let (tail, head) = noise.split_at(shift % d);
        for (s, &v) in self.sums.iter_mut().zip(head.iter().chain(tail)) {
            *s += to_fixed(v * scale);
        }
        self.count += 1;
        Ok(())
    }

    /// Fold another accumulator (same template, same noise scale) into this one.
    pub fn merge(&mut self, other: &EfnAccumulator) -> Result<()> {
        if other.template_id != self.template_id || other.sums.len() != self.sums.len() {
            return Err(invalid("cannot merge accumulators built for different templates"));
        }
        if other.scale_exponent != self.scale_exponent {
            return Err(invalid("cannot merge accumulators with different noise scales"));
        }
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            *a += *b;
        }
        self.count += other.count;
        Ok(())
    }

    /// `x̂ = (1/M) Σ T_{-R̂ᵢ} nᵢ`.
    pub fn finalize(&self) -> Result<EfnEstimate> {
        if self.count == 0 {
            return Err(EfnError::InsufficientData("no observations accumulated".into()));
        }
        let inv_scale = 2f64.powi(-self.scale_exponent);
        let m = self.count as f64;
        let samples: Vec<f64> = self.sums.iter().map(|&s| (s as f64) * inv_scale / m).collect();
        EfnEstimate::from_samples(samples, self.count)
    }
}

/// `trunc(x)` as `i128`, through two hardware `i64` conversions.
#[inline]
fn to_fixed(x: f64) -> i128 {
    const TWO_32: f64 = 4_294_967_296.0;
    let hi = (x * (1.0 / TWO_32)) as i64;
    let lo = (x - hi as f64 * TWO_32) as i64;
    ((hi as i128) << 32) + lo as i128
}

/// The estimator output and its spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct EfnEstimate {
    samples: Vec<f64>,
    spectrum: SpectralRepr,
    m: u64,
}

impl EfnEstimate {
    pub fn from_samples(samples: Vec<f64>, m: u64) -> Result<Self> {
        let spectrum = dft(&samples)?;
        Ok(Self { samples, spectrum, m })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn spectrum(&self) -> &SpectralRepr {
        &self.spectrum
    }

    pub fn m(&self) -> u64 {
        self.m
    }
}

/// Convenience: align and average a batch of observations.
pub fn efn_estimate<'a, I>(template: &TemplateSignal, sigma: f64, observations: I) -> Result<EfnEstimate>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let aligner = Aligner::new(template)?;
    let mut acc = EfnAccumulator::new(template, sigma)?;
    for n in observations {
        acc.accumulate(&aligner, n)?;
    }
    acc.finalize()
}

/// Average of per-observation phasors `|Nᵢ[k]| e^{j(φ_Nᵢ[k] + 2πk R̂ᵢ/d)}`.
///
/// This is the Fourier-domain form of the estimator and is used to cross-check
/// the real-domain accumulation.
pub fn fourier_domain_estimate<'a, I>(template: &TemplateSignal, observations: I) -> Result<Vec<Complex64>>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let aligner = Aligner::new(template)?;
    let d = template.d();
    let mut sum = vec![Complex64::new(0.0, 0.0); d];
    let mut spec = Vec::with_capacity(d);
    let mut m = 0usize;
    for n in observations {
        let shift = aligner.align_with_spectrum(n, &mut spec)?;
        for (k, s) in sum.iter_mut().enumerate() {
            let turn = 2.0 * std::f64::consts::PI * ((k * shift) % d) as f64 / d as f64;
            *s += spec[k] * Complex64::from_polar(1.0, turn);
        }
        m += 1;
    }
    if m == 0 {
        return Err(EfnError::InsufficientData("no observations".into()));
    }
    Ok(sum.into_iter().map(|s| s / m as f64).collect())
}

/// Wrapped phase difference `φ_X̂[k] - φ_X[k]` in `(-π, π]`.
pub fn phase_error(estimate: &EfnEstimate, template: &TemplateSignal, k: usize) -> Result<f64> {
    if k >= template.d() || estimate.samples.len() != template.d() {
        return Err(invalid(format!("frequency {k} out of range for d = {}", template.d())));
    }
    if !template.has_phase(k) {
        return Err(EfnError::ExcludedBin { k });
    }
    Ok(wrap_phase(estimate.spectrum.phase(k) - template.phase(k)))
}

/// Mean squared wrapped phase error at bin `k` across independent trials.
pub fn phase_mse(trials: &[EfnEstimate], template: &TemplateSignal, k: usize) -> Result<MeanEstimate> {
    if trials.len() < 2 {
        return Err(EfnError::InsufficientData(format!("phase MSE needs >= 2 trials, got {}", trials.len())));
    }
    let mut m = Moments::default();
    for t in trials {
        let e = phase_error(t, template, k)?;
        m.push(e * e);
    }
    Ok(m.estimate())
}

/// Centered, normalized inner product.
pub fn pearson_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(invalid(format!("length mismatch: {} vs {}", a.len(), b.len())));
    }
    if a.is_empty() {
        return Err(EfnError::UndefinedCorrelation);
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (u, v) = (x - ma, y - mb);
        sab += u * v;
        saa += u * u;
        sbb += v * v;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(EfnError::UndefinedCorrelation);
    }
    Ok((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

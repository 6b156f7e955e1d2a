//! Maximal-correlation shift estimation.
//!
//! Three routes to the correlation sequence `c[ℓ] = ⟨n, T_ℓ x⟩` are provided:
//! the transform-based path used everywhere in the pipeline, a direct
//! `O(d²)` sum, and the magnitude/phase cosine form. All three share the same
//! argmax.

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::Fft;

use crate::error::{invalid, Result};
use crate::signal::{forward_plan, inverse_plan, TemplateSignal};

/// A correlation sequence is treated as flat when its range is below this
/// fraction of the Cauchy-Schwarz bound `‖n‖‖x‖`.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentResult {
    /// Estimated shift in `[0, d)`.
    pub shift: usize,
    pub peak: f64,
    /// The sequence was flat; `shift` is 0 by convention.
    pub degenerate: bool,
    pub correlation: Option<Vec<f64>>,
}

/// First index of the maximum, and the maximum itself.
pub fn argmax_first(seq: &[f64]) -> (usize, f64) {
    let mut best = 0;
    let mut peak = f64::NEG_INFINITY;
    for (i, &v) in seq.iter().enumerate() {
        if v > peak {
            peak = v;
            best = i;
        }
    }
    (best, peak)
}

fn select_shift(seq: &[f64], bound: f64) -> (usize, f64, bool) {
    let (idx, peak) = argmax_first(seq);
    let low = seq.iter().cloned().fold(f64::INFINITY, f64::min);
    if peak - low <= DEGENERACY_TOLERANCE * bound {
        (0, seq.first().copied().unwrap_or(0.0), true)
    } else {
        (idx, peak, false)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Transform-based correlator bound to one template. Immutable and `Sync`.
pub struct Aligner {
    d: usize,
    template_id: u64,
    /// Conjugated, unnormalized template DFT.
    conj_template: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Aligner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Aligner").field("d", &self.d).field("template_id", &self.template_id).finish()
    }
}

impl Aligner {
    /// Rejects templates whose spectrum falls below the non-vanishing floor.
    pub fn new(template: &TemplateSignal) -> Result<Self> {
        template.ensure_alignable()?;
        Ok(Self::unchecked(template))
    }

    pub(crate) fn unchecked(template: &TemplateSignal) -> Self {
        let d = template.d();
        let scale = (d as f64).sqrt();
        Self {
            d,
            template_id: template.fingerprint(),
            conj_template: template.coefficients().iter().map(|c| c.conj() * scale).collect(),
            forward: forward_plan(d),
            inverse: inverse_plan(d),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn template_id(&self) -> u64 {
        self.template_id
    }

    fn check_len(&self, noise: &[f64]) -> Result<()> {
        if noise.len() != self.d {
            return Err(invalid(format!("noise length {} does not match template length {}", noise.len(), self.d)));
        }
        Ok(())
    }

    /// Correlation sequence; if `spectrum` is given it receives the unitary DFT of the noise.
    fn correlate_into(&self, noise: &[f64], spectrum: Option<&mut Vec<Complex64>>, out: &mut Vec<f64>) {
        let mut buf: Vec<Complex64> = noise.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        if let Some(spec) = spectrum {
            let s = 1.0 / (self.d as f64).sqrt();
            spec.clear();
            spec.extend(buf.iter().map(|c| c * s));
        }
        for (b, t) in buf.iter_mut().zip(&self.conj_template) {
            *b *= t;
        }
        self.inverse.process(&mut buf);
        let s = 1.0 / self.d as f64;
        out.clear();
        out.extend(buf.iter().map(|c| c.re * s));
    }

    /// `c[ℓ] = Σ_i n_i x_{(i-ℓ) mod d}` in `O(d log d)`.
    pub fn correlate(&self, noise: &[f64]) -> Result<Vec<f64>> {
        self.check_len(noise)?;
        let mut out = Vec::with_capacity(self.d);
        self.correlate_into(noise, None, &mut out);
        Ok(out)
    }

    /// Maximal-correlation shift without retaining the sequence.
    pub fn align(&self, noise: &[f64]) -> Result<AlignmentResult> {
        self.check_len(noise)?;
        let mut corr = Vec::with_capacity(self.d);
        self.correlate_into(noise, None, &mut corr);
        let (shift, peak, degenerate) = select_shift(&corr, norm(noise));
        Ok(AlignmentResult { shift, peak, degenerate, correlation: None })
    }

    /// Shift plus the unitary noise spectrum, written to `spectrum`.
    pub fn align_with_spectrum(&self, noise: &[f64], spectrum: &mut Vec<Complex64>) -> Result<usize> {
        self.check_len(noise)?;
        let mut corr = Vec::with_capacity(self.d);
        self.correlate_into(noise, Some(spectrum), &mut corr);
        Ok(select_shift(&corr, norm(noise)).0)
    }
}

fn check_lengths(noise: &[f64], template: &TemplateSignal) -> Result<()> {
    if noise.len() != template.d() {
        return Err(invalid(format!(
            "noise length {} does not match template length {}",
            noise.len(),
            template.d()
        )));
    }
    Ok(())
}

/// `⟨n, T_ℓ x⟩` for every `ℓ`, via fast transforms.
pub fn correlation_sequence(noise: &[f64], template: &TemplateSignal) -> Result<Vec<f64>> {
    check_lengths(noise, template)?;
    Aligner::unchecked(template).correlate(noise)
}

/// Direct `O(d²)` evaluation of the correlation sequence.
pub fn correlation_oracle(noise: &[f64], template: &TemplateSignal) -> Result<Vec<f64>> {
    check_lengths(noise, template)?;
    let d = noise.len();
    let x = template.samples();
    Ok((0..d)
        .map(|l| (0..d).map(|i| noise[i] * x[(i + d - l) % d]).sum())
        .collect())
}

/// Maximal-correlation shift; smallest index on exact ties.
pub fn estimate_shift(noise: &[f64], template: &TemplateSignal) -> Result<AlignmentResult> {
    check_lengths(noise, template)?;
    let aligner = Aligner::new(template)?;
    let corr = aligner.correlate(noise)?;
    let (shift, peak, degenerate) = select_shift(&corr, norm(noise));
    Ok(AlignmentResult { shift, peak, degenerate, correlation: Some(corr) })
}

/// `S[r] = Σ_k a_k cos(2πkr/d + θ_k)` with `a_k = |X[k]||N[k]|` and
/// `θ_k = φ_N[k] - φ_X[k]`.
pub fn fourier_correlation_from_parts(
    template_magnitudes: &[f64],
    noise_magnitudes: &[f64],
    phase_differences: &[f64],
) -> Result<Vec<f64>> {
    let d = template_magnitudes.len();
    if noise_magnitudes.len() != d || phase_differences.len() != d {
        return Err(invalid("magnitude and phase sequences must share one length"));
    }
    let step = 2.0 * std::f64::consts::PI / d as f64;
    let (cos_t, sin_t): (Vec<f64>, Vec<f64>) = (0..d).map(|m| ((m as f64 * step).cos(), (m as f64 * step).sin())).unzip();
    let (ac, as_): (Vec<f64>, Vec<f64>) = (0..d)
        .map(|k| {
            let a = template_magnitudes[k] * noise_magnitudes[k];
            (a * phase_differences[k].cos(), a * phase_differences[k].sin())
        })
        .unzip();
    Ok((0..d)
        .map(|r| {
            (0..d)
                .map(|k| {
                    let m = (k * r) % d;
                    ac[k] * cos_t[m] - as_[k] * sin_t[m]
                })
                .sum()
        })
        .collect())
}

/// The correlation sequence in magnitude/phase form.
pub fn fourier_correlation_sequence(noise: &[f64], template: &TemplateSignal) -> Result<Vec<f64>> {
    check_lengths(noise, template)?;
    let n = crate::signal::dft(noise)?;
    let x = template.spectrum();
    let diffs: Vec<f64> = (0..noise.len()).map(|k| n.phase(k) - x.phase(k)).collect();
    fourier_correlation_from_parts(x.magnitudes(), n.magnitudes(), &diffs)
}

/// Argmax of a sequence with the library's tie and degeneracy conventions.
/// `bound` is the scale used for the flatness test (e.g. `‖n‖‖x‖`).
pub fn shift_of_sequence(seq: &[f64], bound: f64) -> AlignmentResult {
    let (shift, peak, degenerate) = select_shift(seq, bound);
    AlignmentResult { shift, peak, degenerate, correlation: None }
}

//! Analytic predictions and the conditional-process machinery behind them.

mod conditional;
mod gumbel;
mod lemma1;
mod moments;
mod predict;
mod softmax;

pub use conditional::{
    build_conditional_gaussian, sample_cyclostationary, tilde_power, ConditionalGaussian, Conditioning,
    CyclostationarySampler,
};
pub use gumbel::{gumbel_cdf, normalized_gaussian_maxima, GumbelConstants};
pub use lemma1::{lemma1_check, sign_pattern_with_mean, SignPatternReport, MIN_SIGN_TRIALS};
pub use moments::{estimate_ck, phase_moments, PhaseMoments, MIN_MOMENT_TRIALS};
pub use predict::{
    analytic_prediction, high_d_magnitude, high_d_phase_mse, predict_magnitude, predict_phase_mse,
    AnalyticPrediction, PredictionRow, Regime, RegimeKind,
};
pub use softmax::{compare_softmax, m_star, softmax_expectation, SoftmaxComparison};

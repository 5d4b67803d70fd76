//! The two-sided Chernoff bound for sums of independent indicators.

/// `2·exp(−min(δ²/4, δ/2)·μ)`, uncapped.
///
/// Bounds `P(|X − μ| ≥ δμ)` for `X` a sum of independent `{0,1}` variables
/// with mean `μ`.
pub fn chernoff_bound_raw(delta: f64, mu: f64) -> f64 {
    assert!(
        delta > 0.0 && mu > 0.0,
        "chernoff bound needs δ > 0 and μ > 0"
    );
    2.0 * (-(delta * delta / 4.0).min(delta / 2.0) * mu).exp()
}

/// [`chernoff_bound_raw`] capped at 1, for use as a probability.
pub fn chernoff_bound(delta: f64, mu: f64) -> f64 {
    chernoff_bound_raw(delta, mu).min(1.0)
}

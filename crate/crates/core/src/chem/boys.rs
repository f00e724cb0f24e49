use crate::error::{Error, Result};

/// Zeroth-order Boys function `F₀(t) = ∫₀¹ exp(−t u²) du`.
pub fn boys_f0(t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("Boys argument must be finite and >= 0, got {t}")));
    }
    if t < SERIES_CUTOFF {
        Ok(series(t))
    } else {
        Ok(closed_form(t))
    }
}

const SERIES_CUTOFF: f64 = 1e-2;

// Σ (−t)^k / (k! (2k+1)); nine terms reach 1e-19 at the cutoff
fn series(t: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..10 {
        term *= -t / k as f64;
        sum += term / (2 * k + 1) as f64;
    }
    sum
}

fn closed_form(t: f64) -> f64 {
    0.5 * (std::f64::consts::PI / t).sqrt() * libm::erf(t.sqrt())
}

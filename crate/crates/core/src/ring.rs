//! Closed-form theory of the 1D ring.
//!
//! Chemical potentials here exclude [`RingParams::mu_offset`]; use
//! [`with_offset`] to add it back for reporting.

use crate::{Error, RingParams, Result};
use std::f64::consts::TAU;

/// Uniform circulating state `e^{imφ}/√2π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneWaveState {
    pub winding: i64,
}

/// Two-mode superposition
/// `[√(1-x) e^{imφ} + √x e^{iθ} e^{i(m+1)φ}] / √2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedState {
    pub winding: i64,
    /// Weight x of the `m+1` component, in `[0, 1]`.
    pub mixing: f64,
    /// Relative phase θ in `[0, 2π)`.
    pub phase: f64,
}

impl MixedState {
    pub fn new(winding: i64, mixing: f64, phase: f64) -> Result<Self> {
        let s = MixedState { winding, mixing, phase };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.mixing) {
            return Err(Error::invalid(format!("mixing must lie in [0, 1], got {}", self.mixing)));
        }
        if !(0.0..TAU).contains(&self.phase) {
            return Err(Error::invalid(format!("phase must lie in [0, 2pi), got {}", self.phase)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GroundWindingResult {
    pub winding: i64,
    /// Set when eta is a half-integer and windings `m`, `m+1` tie.
    pub degenerate: bool,
    pub mu_eff: f64,
}

/// Two-mode barrier between windings `m` and `m+1`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Barrier {
    pub x_peak: f64,
    pub mu_peak: f64,
    pub height_from_m: f64,
    pub height_from_m_plus_1: f64,
}

/// `(m-η)² + ũ₀/2π`.
pub fn mu_uniform(m: i64, params: &RingParams) -> f64 {
    let d = m as f64 - params.eta;
    d * d + params.u_over_2pi()
}

pub fn with_offset(mu: f64, params: &RingParams) -> f64 {
    mu + params.mu_offset
}

/// Nearest integer to η; exact half-integers resolve to the lower integer
/// and are flagged degenerate.
pub fn ground_winding(params: &RingParams) -> GroundWindingResult {
    let eta = params.eta;
    let lower = eta.floor();
    let frac = eta - lower;
    let (winding, degenerate) = if frac == 0.5 {
        (lower as i64, true)
    } else if frac < 0.5 {
        (lower as i64, false)
    } else {
        (lower as i64 + 1, false)
    };
    GroundWindingResult { winding, degenerate, mu_eff: mu_uniform(winding, params) }
}

/// Two-mode chemical potential,
/// `(1-x)(m-η)² + x(m+1-η)² + (ũ₀/2π)[1 + 2x(1-x)]`. Independent of θ.
pub fn mu_mixed(state: &MixedState, params: &RingParams) -> f64 {
    mixed_at(state.winding, state.mixing, params)
}

fn mixed_at(m: i64, x: f64, params: &RingParams) -> f64 {
    let a = m as f64 - params.eta;
    let b = a + 1.0;
    (1.0 - x) * a * a + x * b * b + params.u_over_2pi() * (1.0 + 2.0 * x * (1.0 - x))
}

/// Location of the stationary point of [`mu_mixed`] in x,
/// `1/2 + (m + 1/2 - η) π/ũ₀`. Not restricted to `[0, 1]`.
pub fn peak_location(m: i64, params: &RingParams) -> f64 {
    let delta = m as f64 + 0.5 - params.eta;
    0.5 + delta * std::f64::consts::PI / params.u_tilde
}

/// `(1 + π/ũ₀)(m-η)(m+1-η) + ½(1 + π/2ũ₀ + 3ũ₀/2π)`, the stationary value.
pub fn peak_value(m: i64, params: &RingParams) -> f64 {
    use std::f64::consts::PI;
    let u = params.u_tilde;
    let a = m as f64 - params.eta;
    (1.0 + PI / u) * a * (a + 1.0) + 0.5 * (1.0 + PI / (2.0 * u) + 3.0 * u / (2.0 * PI))
}

/// Interior barrier on the two-mode path `m → m+1`.
///
/// `Ok(None)` when the peak falls outside the open interval `(0, 1)`: then
/// `mu_mixed` is monotone in x and the higher state slides down without
/// climbing. This happens exactly when `|m + 1/2 - η| ≥ ũ₀/2π`.
pub fn barrier(m: i64, params: &RingParams) -> Result<Option<Barrier>> {
    if !(params.u_tilde > 0.0) || !params.u_tilde.is_finite() {
        return Err(Error::invalid(format!(
            "barrier analysis needs u_tilde > 0, got {}",
            params.u_tilde
        )));
    }
    let x_peak = peak_location(m, params);
    if !(x_peak > 0.0 && x_peak < 1.0) {
        return Ok(None);
    }
    let mu_peak = mixed_at(m, x_peak, params);
    Ok(Some(Barrier {
        x_peak,
        mu_peak,
        height_from_m: mu_peak - mu_uniform(m, params),
        height_from_m_plus_1: mu_peak - mu_uniform(m + 1, params),
    }))
}

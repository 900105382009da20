//! Sweeps over the phase η: the winding staircase, the two-mode landscape,
//! and the metastable hysteresis loop.

use crate::ring::{barrier, ground_winding, mu_mixed, mu_uniform, MixedState};
use crate::solver::{global_search, SolverSettings};
use crate::{Error, Result, RingParams};
use serde::Serialize;

/// Inclusive grid from `start` towards `stop` in steps of `step`.
///
/// The endpoint is included when it lies within half a step of the last
/// point. Values are snapped to a 1e-12 lattice so that decimal inputs such
/// as `1.5` come out exact. `stop < start` yields a descending grid.
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !start.is_finite() || !stop.is_finite() || !step.is_finite() {
        return Err(Error::invalid("range bounds must be finite"));
    }
    if !(step > 0.0) {
        return Err(Error::invalid(format!("range step must be > 0, got {step}")));
    }
    let span = (stop - start).abs();
    let n = (span / step + 0.5).floor();
    if n > 1e7 {
        return Err(Error::invalid("range has more than 1e7 points"));
    }
    let sign = if stop < start { -1.0 } else { 1.0 };
    Ok((0..=n as usize)
        .map(|i| snap(start + sign * i as f64 * step))
        .collect())
}

fn snap(x: f64) -> f64 {
    let scaled = x * 1e12;
    if scaled.abs() < 9e15 {
        scaled.round() / 1e12
    } else {
        x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StaircaseMode {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaircaseSpec {
    pub eta_start: f64,
    pub eta_stop: f64,
    pub eta_step: f64,
    pub u_tilde: f64,
    pub mode: StaircaseMode,
    /// Condensate weight w in `[0, 1]`.
    pub condensate_weight: f64,
    /// Used in numeric mode only.
    pub solver: SolverSettings,
}

impl StaircaseSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.condensate_weight) {
            return Err(Error::invalid(format!(
                "condensate_weight must lie in [0, 1], got {}",
                self.condensate_weight
            )));
        }
        if self.eta_stop < self.eta_start {
            return Err(Error::invalid("eta_stop must be >= eta_start"));
        }
        if !self.u_tilde.is_finite() {
            return Err(Error::invalid("u_tilde must be finite"));
        }
        if self.mode == StaircaseMode::Numeric {
            self.solver.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub eta: f64,
    #[serde(rename = "winding_T0")]
    pub winding_t0: i64,
    /// Mean angular momentum of a classical gas, equal to η.
    pub classical_mean: f64,
    /// `w winding_T0 + (1-w) classical_mean`.
    pub thermal_mean: f64,
    pub mu_eff: f64,
    pub degenerate: bool,
    /// Always true in analytic mode.
    pub converged: bool,
}

pub fn thermal_mean(weight: f64, winding: i64, classical: f64) -> f64 {
    weight * winding as f64 + (1.0 - weight) * classical
}

/// Ground winding versus η at `T = 0`, with the classical line and the
/// finite-temperature weighted average.
pub fn staircase(spec: &StaircaseSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let etas = grid(spec.eta_start, spec.eta_stop, spec.eta_step)?;
    let base = RingParams::new(0.0, spec.u_tilde);
    etas.into_iter()
        .map(|eta| {
            let params = base.with_eta(eta);
            let analytic = ground_winding(&params);
            let (winding, mu_eff, converged) = match spec.mode {
                StaircaseMode::Analytic => (analytic.winding, analytic.mu_eff, true),
                StaircaseMode::Numeric => {
                    let r = global_search(&params, &spec.solver)?;
                    (r.winding, r.mu, r.converged)
                }
            };
            Ok(SweepRecord {
                eta,
                winding_t0: winding,
                classical_mean: eta,
                thermal_mean: thermal_mean(spec.condensate_weight, winding, eta),
                mu_eff,
                degenerate: analytic.degenerate,
                converged,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandscapeRow {
    pub eta: f64,
    pub x: f64,
    pub mu_eff: f64,
    pub x_peak: Option<f64>,
    pub mu_peak: Option<f64>,
}

/// Two-mode chemical potential over `x ∈ [0, 1]` for each η, with the
/// barrier peak attached to every row of that η.
pub fn landscape(m: i64, eta_values: &[f64], u_tilde: f64, x_step: f64) -> Result<Vec<LandscapeRow>> {
    if !(x_step > 0.0) || x_step > 1.0 {
        return Err(Error::invalid(format!("x_step must lie in (0, 1], got {x_step}")));
    }
    let xs = grid(0.0, 1.0, x_step)?;
    let mut rows = Vec::with_capacity(xs.len() * eta_values.len());
    for &eta in eta_values {
        let params = RingParams::new(eta, u_tilde);
        params.validate()?;
        let peak = barrier(m, &params)?;
        for &x in &xs {
            let x = x.min(1.0);
            let state = MixedState { winding: m, mixing: x, phase: 0.0 };
            rows.push(LandscapeRow {
                eta,
                x,
                mu_eff: mu_mixed(&state, &params),
                x_peak: peak.map(|b| b.x_peak),
                mu_peak: peak.map(|b| b.mu_peak),
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HysteresisRecord {
    pub eta: f64,
    pub direction: Direction,
    pub winding: i64,
    /// Barrier against the neighbor the state would slide to; absent when
    /// there is no interior barrier on that side.
    pub barrier_height: Option<f64>,
}

/// Follow a winding adiabatically along `eta_path`.
///
/// The state keeps its winding while a neighbor with lower `mu_uniform` is
/// still separated by an interior two-mode barrier, and slides to that
/// neighbor once the barrier peak leaves `(0, 1)`, i.e. once
/// `|m + 1/2 - η| ≥ ũ₀/2π` on that side. No thermal activation.
pub fn hysteresis(eta_path: &[f64], u_tilde: f64, start_winding: i64) -> Result<Vec<HysteresisRecord>> {
    if !(u_tilde > 0.0) || !u_tilde.is_finite() {
        return Err(Error::invalid(format!("hysteresis needs u_tilde > 0, got {u_tilde}")));
    }
    if eta_path.iter().any(|e| !e.is_finite()) {
        return Err(Error::invalid("eta path must be finite"));
    }
    if let Some(w) = eta_path.windows(2).find(|w| (w[1] - w[0]).abs() > 1.0) {
        return Err(Error::invalid(format!(
            "eta path step from {} to {} exceeds 1",
            w[0], w[1]
        )));
    }

    let mut m = start_winding;
    let mut out = Vec::with_capacity(eta_path.len());
    for (i, &eta) in eta_path.iter().enumerate() {
        let direction = step_direction(eta_path, i);
        let params = RingParams::new(eta, u_tilde);
        let mut slid = false;
        loop {
            let here = mu_uniform(m, &params);
            let target = if mu_uniform(m + 1, &params) < here {
                Some((m, m + 1))
            } else if mu_uniform(m - 1, &params) < here {
                Some((m - 1, m - 1))
            } else {
                None
            };
            match target {
                Some((lower, next)) if barrier(lower, &params)?.is_none() => {
                    m = next;
                    slid = true;
                }
                _ => break,
            }
        }
        let barrier_height = if slid {
            None
        } else {
            barrier_towards(m, &params, direction)?
        };
        out.push(HysteresisRecord { eta, direction, winding: m, barrier_height });
    }
    Ok(out)
}

fn step_direction(path: &[f64], i: usize) -> Direction {
    let delta = if i > 0 {
        path[i] - path[i - 1]
    } else if path.len() > 1 {
        path[1] - path[0]
    } else {
        0.0
    };
    if delta < 0.0 { Direction::Down } else { Direction::Up }
}

/// Height seen from winding `m` on the side of its lower-lying neighbor, or
/// on the side the sweep is heading when `m` is the ground state.
fn barrier_towards(m: i64, params: &RingParams, direction: Direction) -> Result<Option<f64>> {
    let here = mu_uniform(m, params);
    let up = if mu_uniform(m + 1, params) < here {
        true
    } else if mu_uniform(m - 1, params) < here {
        false
    } else {
        direction == Direction::Up
    };
    Ok(if up {
        barrier(m, params)?.map(|b| b.height_from_m)
    } else {
        barrier(m - 1, params)?.map(|b| b.height_from_m_plus_1)
    })
}

/// `∫ |m_up(η) - m_down(η)| dη` by the trapezoid rule, pairing records by η.
///
/// Both sweeps must cover the same η values.
pub fn loop_area(up: &[HysteresisRecord], down: &[HysteresisRecord]) -> Result<f64> {
    let sorted = |r: &[HysteresisRecord]| {
        let mut v: Vec<(f64, i64)> = r.iter().map(|x| (x.eta, x.winding)).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    };
    let (a, b) = (sorted(up), sorted(down));
    if a.len() != b.len() || a.iter().zip(&b).any(|(p, q)| p.0 != q.0) {
        return Err(Error::invalid("up and down sweeps must share the same eta values"));
    }
    let gap: Vec<(f64, f64)> = a.iter().zip(&b).map(|(p, q)| (p.0, (p.1 - q.1).abs() as f64)).collect();
    Ok(gap.windows(2).map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0)).sum())
}

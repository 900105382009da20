//! Reduction of a thin toroidal condensate to the 1D ring model.
//!
//! The transverse profile is the Gaussian
//!
//! ```text
//! Φ(ρ, z) = 𝒩^{-1/2} exp[-(ρ-ρ₀)²/4σ_ρ² - z²/4σ_z²],   𝒩 = 2π σ_ρ σ_z
//! ```
//!
//! so `σ_ρ`, `σ_z` are the standard deviations of `|Φ|²`. Energies of the ring
//! model are measured in `ħ²/2Mρ₀²`.

use crate::{Error, Result};

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapSetup {
    /// Number of condensed atoms N.
    pub atom_count: f64,
    /// s-wave scattering length in meters. May be negative.
    pub scattering_length: f64,
    /// Atomic mass in kilograms.
    pub atom_mass: f64,
    /// Torus radius ρ₀ in meters.
    pub torus_radius: f64,
    /// Radial width σ_ρ in meters.
    pub width_rho: f64,
    /// Axial width σ_z in meters.
    pub width_z: f64,
    /// Transverse average of the trap potential, in joules.
    pub potential_mean: f64,
}

/// The dimensionless numbers that define the 1D ring problem.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RingParams {
    /// Aharonov-Casher phase per loop.
    pub eta: f64,
    /// Interaction strength ũ₀ in units of ħ²/2Mρ₀².
    pub u_tilde: f64,
    /// Winding-independent part of the chemical potential. Reporting only.
    pub mu_offset: f64,
}

impl RingParams {
    pub fn new(eta: f64, u_tilde: f64) -> Self {
        RingParams { eta, u_tilde, mu_offset: 0.0 }
    }

    /// Build from `ũ₀/2π`, the form used for plots.
    pub fn from_u_over_2pi(eta: f64, u_over_2pi: f64) -> Self {
        Self::new(eta, u_over_2pi * std::f64::consts::TAU)
    }

    /// `ũ₀/2π`, the interaction energy of a uniform ring.
    pub fn u_over_2pi(&self) -> f64 {
        self.u_tilde / std::f64::consts::TAU
    }

    pub fn with_eta(self, eta: f64) -> Self {
        RingParams { eta, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.eta.is_finite() || !self.u_tilde.is_finite() || !self.mu_offset.is_finite() {
            return Err(Error::invalid("ring parameters must be finite"));
        }
        Ok(())
    }
}

impl TrapSetup {
    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("torus_radius", self.torus_radius),
            ("width_rho", self.width_rho),
            ("width_z", self.width_z),
            ("atom_mass", self.atom_mass),
        ];
        for (name, v) in lengths {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::invalid(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        if !self.atom_count.is_finite() || self.atom_count < 1.0 {
            return Err(Error::invalid(format!("atom_count must be >= 1, got {}", self.atom_count)));
        }
        if !self.scattering_length.is_finite() || !self.potential_mean.is_finite() {
            return Err(Error::invalid("scattering_length and potential_mean must be finite"));
        }
        Ok(())
    }

    /// Contact coupling u₀ = 4πħ²a/M, in J m³.
    pub fn contact_coupling(&self) -> f64 {
        4.0 * std::f64::consts::PI * HBAR * HBAR * self.scattering_length / self.atom_mass
    }

    /// Ring energy unit ħ²/2Mρ₀², in joules.
    pub fn energy_unit(&self) -> f64 {
        HBAR * HBAR / (2.0 * self.atom_mass * self.torus_radius * self.torus_radius)
    }
}

/// ũ₀ = 2 N a / (σ_ρ σ_z).
///
/// The defining form `N u₀ / (4π ρ₀² σ_ρ σ_z) / (ħ²/2Mρ₀²)` loses M, ħ and
/// ρ₀ entirely; see [`effective_interaction_from_coupling`].
pub fn effective_interaction(trap: &TrapSetup) -> Result<f64> {
    trap.validate()?;
    Ok(2.0 * trap.atom_count * trap.scattering_length / (trap.width_rho * trap.width_z))
}

/// ũ₀ evaluated term by term from u₀ and the energy unit, without cancelling.
pub fn effective_interaction_from_coupling(trap: &TrapSetup) -> Result<f64> {
    trap.validate()?;
    let r0 = trap.torus_radius;
    let density_overlap =
        1.0 / (4.0 * std::f64::consts::PI * r0 * r0 * trap.width_rho * trap.width_z);
    Ok(trap.atom_count * trap.contact_coupling() * density_overlap / trap.energy_unit())
}

/// `-ρ₀² ⟨∂²_ρ + ∂²_z⟩` over the Gaussian profile: `ρ₀² (1/4σ_ρ² + 1/4σ_z²)`.
pub fn transverse_kinetic_offset(trap: &TrapSetup) -> Result<f64> {
    trap.validate()?;
    let r0 = trap.torus_radius;
    let (sr, sz) = (trap.width_rho, trap.width_z);
    Ok(r0 * r0 * (0.25 / (sr * sr) + 0.25 / (sz * sz)))
}

/// Size of the `(1/ρ)∂_ρ` term dropped from the radial Laplacian, in the
/// same units as [`transverse_kinetic_offset`]: `-ρ₀² ⟨(1/ρ)∂_ρ⟩`.
///
/// About `-1/2` for a thin torus, against an offset of order `ρ₀²/σ_ρ²`; the
/// ratio measures how well `σ_ρ ≪ ρ₀` holds. Integrated numerically over
/// `ρ₀ ± 12σ_ρ`, clipped at `10⁻³ ρ₀` when the profile reaches the axis.
pub fn dropped_radial_term(trap: &TrapSetup) -> Result<f64> {
    trap.validate()?;
    let r0 = trap.torus_radius;
    let s = trap.width_rho;
    let lo = (r0 - 12.0 * s).max(1e-3 * r0);
    let hi = r0 + 12.0 * s;
    const N: usize = 4000;
    let h = (hi - lo) / N as f64;
    let norm = 1.0 / ((std::f64::consts::TAU).sqrt() * s);
    // z factor integrates to one; Φ ∂_ρΦ = -(ρ-ρ₀)/(2σ²) |Φ|².
    let integrand = |rho: f64| {
        let d = rho - r0;
        let density = norm * (-d * d / (2.0 * s * s)).exp();
        d / (2.0 * s * s * rho) * density
    };
    let mut sum = 0.5 * (integrand(lo) + integrand(hi));
    for i in 1..N {
        sum += integrand(lo + i as f64 * h);
    }
    Ok(r0 * r0 * sum * h)
}

/// Assemble the ring parameters for a given phase `eta`.
///
/// `mu_offset = η²/2 + ⟨V⟩/(ħ²/2Mρ₀²) + transverse_kinetic_offset`. It does not
/// depend on the winding and never changes which winding is lowest.
pub fn build_ring_params(trap: &TrapSetup, eta: f64) -> Result<RingParams> {
    if !eta.is_finite() {
        return Err(Error::invalid("eta must be finite"));
    }
    let u_tilde = effective_interaction(trap)?;
    let mu_offset =
        0.5 * eta * eta + trap.potential_mean / trap.energy_unit() + transverse_kinetic_offset(trap)?;
    Ok(RingParams { eta, u_tilde, mu_offset })
}

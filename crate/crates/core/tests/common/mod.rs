//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use acring::TrapSetup;

/// The Gaussian transverse profile Φ(ρ, z), normalized so that
/// ∫∫ Φ² dρ dz = 1.
pub fn gaussian_profile(trap: &TrapSetup, rho: f64, z: f64) -> f64 {
    let (sr, sz) = (trap.width_rho, trap.width_z);
    let n = 2.0 * std::f64::consts::PI * sr * sz;
    let d = rho - trap.torus_radius;
    (-(d * d / (sr * sr) + z * z / (sz * sz)) / 4.0).exp() / n.sqrt()
}

/// `-ρ₀² ∫∫ Φ (∂²_ρ + ∂²_z) Φ dρ dz` by a 2D trapezoid rule over ±12σ with
/// central second differences of step 1e-3 σ.
pub fn kinetic_offset_by_quadrature(trap: &TrapSetup, points: usize) -> f64 {
    let (sr, sz) = (trap.width_rho, trap.width_z);
    let r0 = trap.torus_radius;
    let (hr, hz) = (1e-3 * sr, 1e-3 * sz);
    let (dr, dz) = (24.0 * sr / points as f64, 24.0 * sz / points as f64);
    let mut total = 0.0;
    for i in 0..=points {
        let rho = r0 - 12.0 * sr + i as f64 * dr;
        let wr = if i == 0 || i == points { 0.5 } else { 1.0 };
        for j in 0..=points {
            let z = -12.0 * sz + j as f64 * dz;
            let wz = if j == 0 || j == points { 0.5 } else { 1.0 };
            let f = gaussian_profile(trap, rho, z);
            let d2r = (gaussian_profile(trap, rho + hr, z) - 2.0 * f
                + gaussian_profile(trap, rho - hr, z))
                / (hr * hr);
            let d2z = (gaussian_profile(trap, rho, z + hz) - 2.0 * f
                + gaussian_profile(trap, rho, z - hz))
                / (hz * hz);
            total += wr * wz * f * (d2r + d2z);
        }
    }
    -r0 * r0 * total * dr * dz
}

/// Maximum of `f` on a uniform grid of `[0, 1]` with the given step:
/// returns `(argmax, max)`.
pub fn dense_argmax(f: impl Fn(f64) -> f64, step: f64) -> (f64, f64) {
    let n = (1.0 / step).round() as usize;
    (0..=n)
        .map(|i| {
            let x = i as f64 / n as f64;
            (x, f(x))
        })
        .fold((0.0, f64::MIN), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// Sodium-like trap used across tests.
pub fn sodium_trap(radius: f64, width_rho: f64, width_z: f64) -> TrapSetup {
    TrapSetup {
        atom_count: 1e6,
        scattering_length: 2.75e-9,
        atom_mass: 3.817_540_7e-26,
        torus_radius: radius,
        width_rho,
        width_z,
        potential_mean: 0.0,
    }
}

//! Laboratory parameters to the dimensionless Aharonov-Casher phase.
//!
//! Three charge geometries are supported, each with its own charge
//! normalization:
//!
//! | setup                | charge variable                         |
//! |----------------------|-----------------------------------------|
//! | [`LineChargeSetup`]  | charges per meter along an infinite wire |
//! | [`TorusChargeSetup`] | total charges on a sphere at the torus center |
//! | [`CrossedFieldSetup`]| charges per Bohr radius (polarizability phase) |
//!
//! Internally the line density is converted to charges per reduced Compton
//! length `ħ/m_e c`, which is the natural unit for the phase:
//! `eta = N_e g_F alpha` with `N_e` counted per Compton length.
//!
//! Field strengths are returned in atomic units of field, `e/a₀²`
//! (5.142e9 V/cm). Gaussian electrostatics is used throughout, so a line
//! charge produces `E = 2 n_e e / rho` and a point charge `E = N_e e / rho₀²`.

use crate::{Error, Result};

/// Fixed physical constants (CODATA 2018 digits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub fine_structure_alpha: f64,
    /// Reduced Compton wavelength of the electron, ħ/m_e c, in meters.
    pub compton_length: f64,
    /// Bohr radius in meters. Equal to `compton_length / fine_structure_alpha`.
    pub bohr_radius: f64,
    /// One atomic unit of electric field in V/cm.
    pub au_field_strength: f64,
    /// Bohr magneton energy in one gauss, divided by the Hartree energy.
    pub zeeman_ratio_per_gauss: f64,
}

const ALPHA: f64 = 7.297_352_569_3e-3;
const COMPTON_LENGTH: f64 = 3.861_592_679_6e-13;
const BOHR_MAGNETON_J_PER_T: f64 = 9.274_010_078_3e-24;
const HARTREE_J: f64 = 4.359_744_722_207_1e-18;
const TESLA_PER_GAUSS: f64 = 1e-4;

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    fine_structure_alpha: ALPHA,
    compton_length: COMPTON_LENGTH,
    bohr_radius: COMPTON_LENGTH / ALPHA,
    au_field_strength: 5.142_206_747_63e9,
    zeeman_ratio_per_gauss: BOHR_MAGNETON_J_PER_T * TESLA_PER_GAUSS / HARTREE_J,
};

/// Infinite charged wire along the symmetry axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineChargeSetup {
    /// Elementary charges per meter of wire.
    pub linear_charge_density: f64,
    /// Landé factor g_F. Any nonzero real.
    pub lande_g: f64,
    /// Distance from the wire in meters.
    pub probe_distance: f64,
}

/// Charged sphere at the center of a thin torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusChargeSetup {
    /// Total number of elementary charges on the sphere.
    pub sphere_charge_count: f64,
    /// Torus radius rho₀ in meters.
    pub torus_radius: f64,
    pub lande_g: f64,
}

/// Polarizable atom in crossed radial E and axial B fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossedFieldSetup {
    /// Static polarizability in units of a₀³.
    pub static_polarizability: f64,
    /// Elementary charges per Bohr radius of wire.
    pub charges_per_bohr: f64,
    /// Axial magnetic field in gauss.
    pub magnetic_field: f64,
}

fn check_lande(g: f64) -> Result<()> {
    if !g.is_finite() || g == 0.0 {
        return Err(Error::invalid(format!("lande_g must be finite and nonzero, got {g}")));
    }
    Ok(())
}

fn check_nonneg(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::invalid(format!("{name} must be finite and >= 0, got {v}")));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::invalid(format!("{name} must be finite and > 0, got {v}")));
    }
    Ok(())
}

impl LineChargeSetup {
    pub fn validate(&self) -> Result<()> {
        check_nonneg("linear_charge_density", self.linear_charge_density)?;
        check_lande(self.lande_g)?;
        check_positive("probe_distance", self.probe_distance)
    }

    /// Charges per reduced Compton length.
    pub fn charges_per_compton_length(&self) -> f64 {
        self.linear_charge_density * CONSTANTS.compton_length
    }
}

impl TorusChargeSetup {
    pub fn validate(&self) -> Result<()> {
        check_nonneg("sphere_charge_count", self.sphere_charge_count)?;
        check_lande(self.lande_g)?;
        check_positive("torus_radius", self.torus_radius)
    }

    /// Torus radius in Compton lengths.
    pub fn reduced_radius(&self) -> f64 {
        self.torus_radius / CONSTANTS.compton_length
    }
}

impl CrossedFieldSetup {
    pub fn validate(&self) -> Result<()> {
        check_nonneg("static_polarizability", self.static_polarizability)?;
        check_nonneg("charges_per_bohr", self.charges_per_bohr)?;
        check_nonneg("magnetic_field", self.magnetic_field)
    }
}

/// `eta = (n_e λ̄_c) g_F alpha` for a line charge.
///
/// The sign follows `g_F`; the probe distance does not enter.
pub fn eta_line_charge(setup: &LineChargeSetup) -> Result<f64> {
    setup.validate()?;
    Ok(setup.charges_per_compton_length() * setup.lande_g * CONSTANTS.fine_structure_alpha)
}

/// Line density (charges per meter) needed to reach `|eta_target|`.
pub fn required_line_density(eta_target: f64, lande_g: f64) -> Result<f64> {
    check_lande(lande_g)?;
    if !eta_target.is_finite() {
        return Err(Error::invalid("eta_target must be finite"));
    }
    Ok(eta_target.abs()
        / (lande_g.abs() * CONSTANTS.fine_structure_alpha * CONSTANTS.compton_length))
}

/// Radial field of the wire at `probe_distance`, in atomic units.
///
/// `E = 2 n_e e / rho`, which in atomic units is `2 n_e a₀² / rho`.
pub fn field_line_charge(setup: &LineChargeSetup) -> Result<f64> {
    setup.validate()?;
    let a0 = CONSTANTS.bohr_radius;
    Ok(2.0 * setup.linear_charge_density * a0 * a0 / setup.probe_distance)
}

/// Field at `distance` when the wire carries the density for `eta = 1`.
///
/// Evaluates `(2 / (alpha |g_F| rho̅)) (a₀/λ̄_c)²` with `rho̅ = rho/λ̄_c`.
pub fn threshold_field_line_charge(lande_g: f64, distance: f64) -> Result<f64> {
    check_lande(lande_g)?;
    check_positive("probe_distance", distance)?;
    let c = &CONSTANTS;
    let rho_bar = distance / c.compton_length;
    let ratio = c.bohr_radius / c.compton_length;
    Ok(2.0 / (c.fine_structure_alpha * lande_g.abs() * rho_bar) * ratio * ratio)
}

/// `eta = N_e g_F alpha / (2 rho̅₀)` for a charged sphere inside a thin torus.
pub fn eta_torus(setup: &TorusChargeSetup) -> Result<f64> {
    setup.validate()?;
    Ok(setup.sphere_charge_count * setup.lande_g * CONSTANTS.fine_structure_alpha
        / (2.0 * setup.reduced_radius()))
}

/// Sphere charge needed for `|eta_target|` at the given torus radius,
/// `N_e = 2 rho̅₀ |eta| / (|g_F| alpha)`.
pub fn required_sphere_charge(eta_target: f64, lande_g: f64, torus_radius: f64) -> Result<f64> {
    check_lande(lande_g)?;
    check_positive("torus_radius", torus_radius)?;
    if !eta_target.is_finite() {
        return Err(Error::invalid("eta_target must be finite"));
    }
    let rho_bar = torus_radius / CONSTANTS.compton_length;
    Ok(2.0 * rho_bar * eta_target.abs() / (lande_g.abs() * CONSTANTS.fine_structure_alpha))
}

/// Field of the sphere charge at the torus tube, `N_e e / rho₀²`, in atomic
/// units (`N_e a₀² / rho₀²`).
///
/// At the `eta = 1` threshold for a 1 mm torus this gives about 2e-3 a.u.
/// for g_F = 1. A smaller figure of 5e-4 a.u. is sometimes quoted for the
/// same setup; it does not follow from `N_e e / rho₀²` and is not reproduced.
pub fn field_torus(setup: &TorusChargeSetup) -> Result<f64> {
    setup.validate()?;
    let rho_bar = setup.reduced_radius();
    let ratio = CONSTANTS.bohr_radius / CONSTANTS.compton_length;
    Ok(setup.sphere_charge_count / (rho_bar * rho_bar) * ratio * ratio)
}

/// Polarizability phase `eta_ExB = alpha(0) N_e (mu_B B / (e²/a₀))`.
pub fn eta_cross_field(setup: &CrossedFieldSetup) -> Result<f64> {
    setup.validate()?;
    Ok(setup.static_polarizability
        * setup.charges_per_bohr
        * CONSTANTS.zeeman_ratio_per_gauss
        * setup.magnetic_field)
}

/// Convert a field in atomic units to V/cm.
pub fn au_field_to_volts_per_cm(field_au: f64) -> f64 {
    field_au * CONSTANTS.au_field_strength
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn line(n: f64, g: f64, rho: f64) -> LineChargeSetup {
        LineChargeSetup { linear_charge_density: n, lande_g: g, probe_distance: rho }
    }

    #[test]
    fn constants_in_range() {
        let c = CONSTANTS;
        assert!((c.fine_structure_alpha - 7.29735e-3).abs() < 1e-7);
        assert!((c.compton_length - 3.8616e-13).abs() < 1e-16);
        assert!((c.zeeman_ratio_per_gauss - 2.127e-10).abs() < 1e-12);
        assert!((c.au_field_strength - 5.142e9).abs() < 1e6);
        // a₀/λ̄_c = 1/alpha
        assert!(rel(c.bohr_radius / c.compton_length, 1.0 / c.fine_structure_alpha) < 1e-14);
        assert!(rel(c.bohr_radius, 5.29177210903e-11) < 1e-9);
    }

    #[test]
    fn eta_line_examples() {
        let eta = eta_line_charge(&line(3.55e14, 1.0, 1e-3)).unwrap();
        assert!(rel(eta, 1.0) < 5e-3, "{eta}");
        assert_eq!(eta_line_charge(&line(0.0, 1.0, 1e-3)).unwrap(), 0.0);
        let eta2 = eta_line_charge(&line(3.55e14, 2.0, 1e-3)).unwrap();
        assert!(rel(eta2, 2.0 * eta) < 1e-15);
        assert!(eta_line_charge(&line(1e14, 0.0, 1e-3)).is_err());
        assert!(eta_line_charge(&line(-1.0, 1.0, 1e-3)).is_err());
    }

    #[test]
    fn required_density_examples() {
        let n1 = required_line_density(1.0, 1.0).unwrap();
        assert!(rel(n1, 3.548e14) < 1e-2);
        assert_eq!(required_line_density(0.0, 1.0).unwrap(), 0.0);
        let half = required_line_density(0.5, 1.0).unwrap();
        assert!(rel(half, 1.774e14) < 1e-3);
        assert!(rel(half, n1 / 2.0) < 1e-15);
        assert!(required_line_density(1.0, 0.0).is_err());
    }

    #[test]
    fn line_field_examples() {
        let n1 = required_line_density(1.0, 1.0).unwrap();
        let e1 = field_line_charge(&line(n1, 1.0, 1e-3)).unwrap();
        assert!(rel(e1, 1.9e-3) < 0.1, "{e1}");
        let e_half = field_line_charge(&line(n1, 1.0, 0.5e-3)).unwrap();
        assert!(rel(e_half, 3.9e-3) < 0.05);
        assert!(rel(e_half, 2.0 * e1) < 1e-12);
        // Both routes agree.
        let e_thr = threshold_field_line_charge(1.0, 1e-3).unwrap();
        assert!(rel(e_thr, e1) < 1e-12);
        assert!(field_line_charge(&line(n1, 1.0, 0.0)).is_err());
        assert!(threshold_field_line_charge(1.0, -1.0).is_err());
    }

    #[test]
    fn torus_examples() {
        let radius = 1e-3;
        let n = required_sphere_charge(1.0, 1.0, radius).unwrap();
        let s = TorusChargeSetup { sphere_charge_count: n, torus_radius: radius, lande_g: 1.0 };
        assert!(rel(eta_torus(&s).unwrap(), 1.0) < 1e-14);
        let zero = TorusChargeSetup { sphere_charge_count: 0.0, ..s };
        assert_eq!(eta_torus(&zero).unwrap(), 0.0);
        assert_eq!(field_torus(&zero).unwrap(), 0.0);
        let wide = TorusChargeSetup { torus_radius: 2.0 * radius, ..s };
        assert!(rel(eta_torus(&wide).unwrap(), 0.5) < 1e-14);

        let e = field_torus(&s).unwrap();
        assert!(rel(e, 2.0e-3) < 0.05, "{e}");
        assert!(rel(field_torus(&wide).unwrap(), e / 4.0) < 1e-12);
        // Direct Gaussian-units evaluation: N_e e / rho₀² over e / a₀².
        let a0 = CONSTANTS.bohr_radius;
        assert!(rel(e, n * a0 * a0 / (radius * radius)) < 1e-12);
        let bad = TorusChargeSetup { torus_radius: 0.0, ..s };
        assert!(eta_torus(&bad).is_err());
        assert!(field_torus(&bad).is_err());
    }

    #[test]
    fn cross_field_examples() {
        let s = CrossedFieldSetup { static_polarizability: 1.0, charges_per_bohr: 1.0, magnetic_field: 1.0 };
        assert!(rel(eta_cross_field(&s).unwrap(), 2.127e-10) < 1e-2);
        let off = CrossedFieldSetup { magnetic_field: 0.0, ..s };
        assert_eq!(eta_cross_field(&off).unwrap(), 0.0);
        let typical = CrossedFieldSetup { static_polarizability: 300.0, magnetic_field: 10.0, ..s };
        let eta = eta_cross_field(&typical).unwrap();
        assert!(rel(eta, 6.38e-7) < 1e-3);
        assert!(eta < 1e-3);
    }

    #[test]
    fn round_trip_and_linearity() {
        for &eta in &[0.1, 1.0, 10.0] {
            for &g in &[0.5, 1.0, 2.0] {
                let n = required_line_density(eta, g).unwrap();
                let back = eta_line_charge(&line(n, g, 1e-3)).unwrap();
                assert!(rel(back, eta) < 1e-12);
                let doubled = eta_line_charge(&line(2.0 * n, g, 1e-3)).unwrap();
                assert!(rel(doubled, 2.0 * back) < 1e-15);
            }
        }
        let t = TorusChargeSetup { sphere_charge_count: 1e11, torus_radius: 1e-3, lande_g: 0.5 };
        let t2 = TorusChargeSetup { sphere_charge_count: 2e11, ..t };
        assert!(rel(eta_torus(&t2).unwrap(), 2.0 * eta_torus(&t).unwrap()) < 1e-15);
        let c = CrossedFieldSetup { static_polarizability: 250.0, charges_per_bohr: 3.0, magnetic_field: 5.0 };
        let c2 = CrossedFieldSetup { charges_per_bohr: 6.0, ..c };
        assert!(rel(eta_cross_field(&c2).unwrap(), 2.0 * eta_cross_field(&c).unwrap()) < 1e-15);
    }

    #[test]
    fn au_conversion() {
        assert!(rel(au_field_to_volts_per_cm(1e-3), 5.142e6) < 1e-3);
    }
}

//! Spectral imaginary-time solver for the ring equation
//!
//! ```text
//! [-(∂_φ - iη)² + ũ₀|ψ|² + V(φ)] ψ = μ ψ,   ψ(φ + 2π) = ψ(φ),   ∫|ψ|² dφ = 1
//! ```
//!
//! on a uniform grid `φ_j = 2πj/G`. The covariant kinetic operator is
//! diagonal in angular modes with eigenvalue `(k-η)²`, so it is applied
//! exactly by FFT.
//!
//! Mode ordering follows the FFT output: index `i < G/2` is mode `k = i`,
//! index `i ≥ G/2` is mode `k = i - G`. The represented modes are
//! `k ∈ {-G/2, …, G/2-1}`.

use crate::ring::ground_winding;
use crate::{Error, Result, RingParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::TAU;
use std::io::Write;
use std::sync::Arc;

/// Smallest accepted grid.
pub const MIN_GRID: usize = 64;

/// Complex amplitudes on the azimuthal grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RingWavefunction {
    amplitudes: Vec<Complex64>,
}

fn check_grid(g: usize) -> Result<()> {
    if g < MIN_GRID || !g.is_power_of_two() {
        return Err(Error::invalid(format!(
            "grid_size must be a power of two >= {MIN_GRID}, got {g}"
        )));
    }
    Ok(())
}

/// Signed angular mode stored at FFT index `i`.
pub fn mode_index(i: usize, grid_size: usize) -> i64 {
    if i < grid_size / 2 {
        i as i64
    } else {
        i as i64 - grid_size as i64
    }
}

impl RingWavefunction {
    /// Wrap raw amplitudes. The state is not normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_grid(amplitudes.len())?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("amplitudes must be finite"));
        }
        Ok(RingWavefunction { amplitudes })
    }

    /// `e^{imφ}/√2π`.
    pub fn plane_wave(winding: i64, grid_size: usize) -> Result<Self> {
        check_grid(grid_size)?;
        let amp = 1.0 / TAU.sqrt();
        let amplitudes = (0..grid_size)
            .map(|j| Complex64::from_polar(amp, winding as f64 * grid_angle(j, grid_size)))
            .collect();
        Ok(RingWavefunction { amplitudes })
    }

    pub fn grid_size(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn angle(&self, j: usize) -> f64 {
        grid_angle(j, self.grid_size())
    }

    fn cell(&self) -> f64 {
        TAU / self.grid_size() as f64
    }

    /// `Σ|ψ_j|² 2π/G`.
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.cell()
    }

    pub fn normalize(&mut self) {
        let s = 1.0 / self.norm_sq().sqrt();
        for z in &mut self.amplitudes {
            *z *= s;
        }
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `⟨ψ|φ⟩ = Σ conj(ψ_j) φ_j 2π/G`.
    pub fn inner(&self, other: &RingWavefunction) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.cell()
    }

    /// Write `phi re im` rows, one grid point per line.
    pub fn write_dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# phi re_psi im_psi")?;
        for (j, z) in self.amplitudes.iter().enumerate() {
            writeln!(
                out,
                "{} {} {}",
                crate::cli::format_float(self.angle(j)),
                crate::cli::format_float(z.re),
                crate::cli::format_float(z.im)
            )?;
        }
        Ok(())
    }
}

fn grid_angle(j: usize, g: usize) -> f64 {
    TAU * j as f64 / g as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSettings {
    pub grid_size: usize,
    pub tau_step: f64,
    /// Convergence threshold on `|Δμ| / max(|μ|, 1)` per step.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Winding m₀ of the initial state `e^{im₀φ}`.
    pub seed_winding: i64,
    /// Relative amplitude of the multiplicative noise on the seed.
    pub noise_amplitude: f64,
    pub rng_seed: u64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            grid_size: 256,
            tau_step: 1e-3,
            tolerance: 1e-10,
            max_iterations: 200_000,
            seed_winding: 0,
            noise_amplitude: 0.0,
            rng_seed: 0,
        }
    }
}

impl SolverSettings {
    /// Defaults for [`global_ground`]: small fixed-seed noise breaks sector
    /// trapping.
    pub fn global_search() -> Self {
        SolverSettings { noise_amplitude: 1e-3, rng_seed: 0x5eed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        check_grid(self.grid_size)?;
        if !(self.tau_step > 0.0) || !self.tau_step.is_finite() {
            return Err(Error::invalid(format!("tau_step must be > 0, got {}", self.tau_step)));
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::invalid(format!("tolerance must be > 0, got {}", self.tolerance)));
        }
        if self.max_iterations < 1 {
            return Err(Error::invalid("max_iterations must be >= 1"));
        }
        if !(self.noise_amplitude >= 0.0) || !self.noise_amplitude.is_finite() {
            return Err(Error::invalid("noise_amplitude must be finite and >= 0"));
        }
        Ok(())
    }

    /// Seed `e^{im₀φ}(1 + ε ξ_j)/√2π` with complex ξ_j uniform in the unit
    /// square, normalized.
    pub fn initial_state(&self) -> Result<RingWavefunction> {
        let mut psi = RingWavefunction::plane_wave(self.seed_winding, self.grid_size)?;
        if self.noise_amplitude > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
            for z in &mut psi.amplitudes {
                let xi = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                *z *= Complex64::new(1.0, 0.0) + self.noise_amplitude * xi;
            }
        }
        psi.normalize();
        Ok(psi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateReport {
    pub wavefunction: RingWavefunction,
    /// `∫[|(∂_φ-iη)ψ|² + ũ₀|ψ|⁴ + V|ψ|²] dφ`.
    pub mu: f64,
    /// `∫[|(∂_φ-iη)ψ|² + (ũ₀/2)|ψ|⁴ + V|ψ|²] dφ`.
    pub energy_per_particle: f64,
    /// Phase winding of the final state, or its dominant angular mode when
    /// the density has a node.
    pub winding: i64,
    pub iterations: usize,
    pub converged: bool,
}

/// Energy functional terms of a normalized state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    pub kinetic: f64,
    /// `∫|ψ|⁴ dφ`.
    pub quartic: f64,
    pub potential: f64,
    pub norm_sq: f64,
}

impl Observables {
    pub fn mu(&self, params: &RingParams) -> f64 {
        self.kinetic + params.u_tilde * self.quartic + self.potential
    }

    pub fn energy(&self, params: &RingParams) -> f64 {
        self.kinetic + 0.5 * params.u_tilde * self.quartic + self.potential
    }
}

struct Transforms {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl Transforms {
    fn new(g: usize) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(g);
        let inverse = planner.plan_fft_inverse(g);
        let len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        Transforms { forward, inverse, scratch: vec![Complex64::default(); len] }
    }

    /// Grid values to mode coefficients `c_k`, with `ψ_j = Σ_k c_k e^{ikφ_j}`.
    fn to_modes(&mut self, buf: &mut [Complex64]) {
        self.forward.process_with_scratch(buf, &mut self.scratch);
        let s = 1.0 / buf.len() as f64;
        buf.iter_mut().for_each(|z| *z *= s);
    }

    fn to_grid(&mut self, buf: &mut [Complex64]) {
        self.inverse.process_with_scratch(buf, &mut self.scratch);
    }
}

fn kinetic_eigenvalues(g: usize, eta: f64) -> Vec<f64> {
    (0..g)
        .map(|i| {
            let d = mode_index(i, g) as f64 - eta;
            d * d
        })
        .collect()
}

/// `2π Σ_k (k-η)² |c_k|²`.
fn kinetic_from_modes(modes: &[Complex64], eigen: &[f64]) -> f64 {
    TAU * modes.iter().zip(eigen).map(|(c, e)| e * c.norm_sqr()).sum::<f64>()
}

/// `Hψ` for `H = -(∂_φ - iη)² + ũ₀|ψ|²`. No normalization is applied.
pub fn apply_hamiltonian(psi: &RingWavefunction, params: &RingParams) -> RingWavefunction {
    let g = psi.grid_size();
    let mut transforms = Transforms::new(g);
    let eigen = kinetic_eigenvalues(g, params.eta);
    let mut buf = psi.amplitudes.clone();
    transforms.to_modes(&mut buf);
    buf.iter_mut().zip(&eigen).for_each(|(c, e)| *c *= e);
    transforms.to_grid(&mut buf);
    for (out, z) in buf.iter_mut().zip(&psi.amplitudes) {
        *out += params.u_tilde * z.norm_sqr() * z;
    }
    RingWavefunction { amplitudes: buf }
}

/// Evaluate the energy functional terms of `psi` (assumed normalized).
pub fn observables(psi: &RingWavefunction, params: &RingParams, potential: Option<&[f64]>) -> Observables {
    let g = psi.grid_size();
    let mut transforms = Transforms::new(g);
    let eigen = kinetic_eigenvalues(g, params.eta);
    let mut modes = psi.amplitudes.clone();
    transforms.to_modes(&mut modes);
    grid_observables(&psi.amplitudes, kinetic_from_modes(&modes, &eigen), potential)
}

fn grid_observables(grid: &[Complex64], kinetic: f64, potential: Option<&[f64]>) -> Observables {
    let cell = TAU / grid.len() as f64;
    let mut quartic = 0.0;
    let mut norm_sq = 0.0;
    let mut pot = 0.0;
    for (j, z) in grid.iter().enumerate() {
        let n = z.norm_sqr();
        norm_sq += n;
        quartic += n * n;
        if let Some(v) = potential {
            pot += v[j] * n;
        }
    }
    Observables { kinetic, quartic: quartic * cell, potential: pot * cell, norm_sq: norm_sq * cell }
}

/// Normalized imaginary-time flow with Strang splitting:
/// half kinetic step in mode space, full interaction step on the grid,
/// half kinetic step, renormalize.
pub struct ImaginaryTimeFlow {
    params: RingParams,
    tau_step: f64,
    potential: Option<Vec<f64>>,
    grid: Vec<Complex64>,
    half_kinetic: Vec<f64>,
    eigen: Vec<f64>,
    transforms: Transforms,
    last: Observables,
}

impl ImaginaryTimeFlow {
    pub fn new(
        initial: RingWavefunction,
        params: RingParams,
        tau_step: f64,
        potential: Option<Vec<f64>>,
    ) -> Result<Self> {
        params.validate()?;
        let g = initial.grid_size();
        if let Some(v) = &potential {
            if v.len() != g || v.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!(
                    "potential must have {g} finite samples, got {}",
                    v.len()
                )));
            }
        }
        if !(tau_step > 0.0) || !tau_step.is_finite() {
            return Err(Error::invalid("tau_step must be > 0"));
        }
        let eigen = kinetic_eigenvalues(g, params.eta);
        let half_kinetic = eigen.iter().map(|e| (-0.5 * tau_step * e).exp()).collect();
        let mut psi = initial;
        psi.normalize();
        let mut flow = ImaginaryTimeFlow {
            params,
            tau_step,
            potential,
            grid: psi.amplitudes,
            half_kinetic,
            eigen,
            transforms: Transforms::new(g),
            last: Observables { kinetic: 0.0, quartic: 0.0, potential: 0.0, norm_sq: 1.0 },
        };
        let mut modes = flow.grid.clone();
        flow.transforms.to_modes(&mut modes);
        let kinetic = kinetic_from_modes(&modes, &flow.eigen);
        flow.last = grid_observables(&flow.grid, kinetic, flow.potential.as_deref());
        Ok(flow)
    }

    /// Advance by one imaginary-time step and return the observables of the
    /// renormalized state.
    pub fn step(&mut self) -> Observables {
        let tau = self.tau_step;
        let u = self.params.u_tilde;
        let buf = &mut self.grid;

        self.transforms.to_modes(buf);
        buf.iter_mut().zip(&self.half_kinetic).for_each(|(c, f)| *c *= f);
        self.transforms.to_grid(buf);

        for (j, z) in buf.iter_mut().enumerate() {
            let v = self.potential.as_ref().map_or(0.0, |p| p[j]);
            *z *= (-tau * (u * z.norm_sqr() + v)).exp();
        }

        self.transforms.to_modes(buf);
        buf.iter_mut().zip(&self.half_kinetic).for_each(|(c, f)| *c *= f);
        // Parseval: ∫|ψ|² = 2π Σ|c_k|².
        let norm = (TAU * buf.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
        buf.iter_mut().for_each(|c| *c /= norm);
        let kinetic = kinetic_from_modes(buf, &self.eigen);
        self.transforms.to_grid(buf);

        self.last = grid_observables(buf, kinetic, self.potential.as_deref());
        self.last
    }

    pub fn observables(&self) -> Observables {
        self.last
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }

    pub fn wavefunction(&self) -> RingWavefunction {
        RingWavefunction { amplitudes: self.grid.clone() }
    }

    pub fn into_wavefunction(self) -> RingWavefunction {
        RingWavefunction { amplitudes: self.grid }
    }
}

/// Relax the seeded state of `settings` towards a stationary state.
pub fn relax(params: &RingParams, settings: &SolverSettings) -> Result<GroundStateReport> {
    relax_in_potential(params, settings, None)
}

/// [`relax`] with an additional sampled azimuthal potential `V(φ_j)`.
pub fn relax_in_potential(
    params: &RingParams,
    settings: &SolverSettings,
    potential: Option<&[f64]>,
) -> Result<GroundStateReport> {
    settings.validate()?;
    let initial = settings.initial_state()?;
    let mut flow =
        ImaginaryTimeFlow::new(initial, *params, settings.tau_step, potential.map(<[f64]>::to_vec))?;
    let mut mu = flow.observables().mu(params);
    let mut converged = false;
    let mut iterations = 0;
    while iterations < settings.max_iterations {
        let obs = flow.step();
        iterations += 1;
        let next = obs.mu(params);
        let change = (next - mu).abs() / next.abs().max(1.0);
        mu = next;
        if change < settings.tolerance {
            converged = true;
            break;
        }
    }
    let obs = flow.observables();
    let wavefunction = flow.into_wavefunction();
    let winding = measured_winding(&wavefunction);
    Ok(GroundStateReport {
        wavefunction,
        mu: obs.mu(params),
        energy_per_particle: obs.energy(params),
        winding,
        iterations,
        converged,
    })
}

/// Net phase winding `(1/2π) Σ_j arg(ψ_{j+1}/ψ_j)` around the ring, each
/// increment on the principal branch.
pub fn winding_number(psi: &RingWavefunction) -> Result<i64> {
    let amps = psi.amplitudes();
    let max = amps.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for (index, z) in amps.iter().enumerate() {
        let magnitude = z.norm();
        if !(magnitude >= 1e-10 * max) || max == 0.0 {
            return Err(Error::NodeDetected { index, magnitude });
        }
    }
    let g = amps.len();
    let total: f64 = (0..g).map(|j| (amps[(j + 1) % g] * amps[j].conj()).arg()).sum();
    Ok((total / TAU).round() as i64)
}

/// Angular mode with the largest weight. Ties go to the lower FFT index.
pub fn dominant_mode(psi: &RingWavefunction) -> i64 {
    let g = psi.grid_size();
    let mut modes = psi.amplitudes.clone();
    Transforms::new(g).to_modes(&mut modes);
    let (best, _) = modes
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |(bi, bw), (i, c)| {
            let w = c.norm_sqr();
            if w > bw { (i, w) } else { (bi, bw) }
        });
    mode_index(best, g)
}

fn measured_winding(psi: &RingWavefunction) -> i64 {
    winding_number(psi).unwrap_or_else(|_| dominant_mode(psi))
}

/// Search over seed windings `[η]-2 ..= [η]+2` and keep the lowest energy
/// among converged runs. Energies equal to within `1e-8` relative count as
/// tied and resolve toward the smaller `|winding|`, then the smaller winding.
pub fn global_ground(params: &RingParams, settings: &SolverSettings) -> Result<GroundStateReport> {
    let best = global_search(params, settings)?;
    if !best.converged {
        return Err(Error::NotConverged { max_iterations: settings.max_iterations });
    }
    Ok(best)
}

/// Like [`global_ground`], but when no seed converges the lowest-energy
/// unconverged report is returned with `converged = false` instead of an
/// error.
pub fn global_search(params: &RingParams, settings: &SolverSettings) -> Result<GroundStateReport> {
    settings.validate()?;
    params.validate()?;
    let center = ground_winding(params).winding;
    let mut best: Option<GroundStateReport> = None;
    for seed in (center - 2)..=(center + 2) {
        let run = SolverSettings { seed_winding: seed, ..settings.clone() };
        let report = relax(params, &run)?;
        best = Some(match best {
            Some(cur) if !prefer(&report, &cur) => cur,
            _ => report,
        });
    }
    Ok(best.expect("five seeds"))
}

/// Relative energy window treated as a tie; well above the residual left by
/// the default convergence tolerance.
const TIE_TOLERANCE: f64 = 1e-8;

fn prefer(candidate: &GroundStateReport, current: &GroundStateReport) -> bool {
    if candidate.converged != current.converged {
        return candidate.converged;
    }
    let (a, b) = (candidate.energy_per_particle, current.energy_per_particle);
    let scale = a.abs().max(b.abs()).max(1.0);
    if (a - b).abs() <= TIE_TOLERANCE * scale {
        let key = |r: &GroundStateReport| (r.winding.abs(), r.winding);
        key(candidate) < key(current)
    } else {
        a < b
    }
}

/// `∫|ψ|⁴ dφ` for a normalized state.
pub fn quartic_moment(psi: &RingWavefunction) -> f64 {
    psi.amplitudes.iter().map(|z| z.norm_sqr().powi(2)).sum::<f64>() * psi.cell()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::mu_uniform as plane_wave_mu;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn grid_validation() {
        assert!(RingWavefunction::plane_wave(0, 32).is_err());
        assert!(RingWavefunction::plane_wave(0, 100).is_err());
        assert!(RingWavefunction::plane_wave(0, 64).is_ok());
        let bad = SolverSettings { tau_step: 0.0, ..Default::default() };
        assert!(relax(&RingParams::new(0.0, 1.0), &bad).is_err());
        let bad = SolverSettings { max_iterations: 0, ..Default::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn mode_ordering() {
        assert_eq!(mode_index(0, 64), 0);
        assert_eq!(mode_index(31, 64), 31);
        assert_eq!(mode_index(32, 64), -32);
        assert_eq!(mode_index(63, 64), -1);
    }

    #[test]
    fn plane_wave_is_eigenstate() {
        for &g in &[64, 256, 1024] {
            for &(m, eta, u) in &[(0, 0.3, 4.0 * PI), (3, 0.0, 0.0), (-2, 1.7, 1.0)] {
                let params = RingParams::new(eta, u);
                let psi = RingWavefunction::plane_wave(m, g).unwrap();
                let h = apply_hamiltonian(&psi, &params);
                let expected = plane_wave_mu(m, &params);
                let worst = h
                    .amplitudes()
                    .iter()
                    .zip(psi.amplitudes())
                    .map(|(a, b)| (a - b * expected).norm() / b.norm())
                    .fold(0.0, f64::max);
                // Pointwise: roundoff in high modes is amplified by (k-η)² ~ G².
                assert!(worst <= 1e-9 * expected.max(1.0), "G={g} m={m}: {worst:e}");
                let rayleigh = psi.inner(&h);
                assert!(rel(rayleigh.re, expected) < 1e-12 && rayleigh.im.abs() < 1e-12);
            }
        }
        let free = apply_hamiltonian(
            &RingWavefunction::plane_wave(3, 64).unwrap(),
            &RingParams::new(0.0, 0.0),
        );
        let ev = free.amplitudes()[5] / RingWavefunction::plane_wave(3, 64).unwrap().amplitudes()[5];
        assert!((ev.re - 9.0).abs() < 1e-12 && ev.im.abs() < 1e-12);
    }

    #[test]
    fn expectation_is_real() {
        let settings = SolverSettings { noise_amplitude: 0.5, rng_seed: 9, seed_winding: 1, ..Default::default() };
        let psi = settings.initial_state().unwrap();
        let params = RingParams::new(0.37, 5.0);
        let e = psi.inner(&apply_hamiltonian(&psi, &params));
        assert!(e.im.abs() < 1e-12, "{e}");
        let obs = observables(&psi, &params, None);
        assert!(rel(e.re, obs.mu(&params)) < 1e-12);
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding_number(&RingWavefunction::plane_wave(5, 256).unwrap()).unwrap(), 5);
        assert_eq!(winding_number(&RingWavefunction::plane_wave(-3, 64).unwrap()).unwrap(), -3);
        let flat = RingWavefunction::from_amplitudes(vec![Complex64::new(0.4, 0.0); 64]).unwrap();
        assert_eq!(winding_number(&flat).unwrap(), 0);
        let mut node = flat.clone();
        node.amplitudes[10] = Complex64::new(0.0, 0.0);
        assert!(matches!(winding_number(&node), Err(Error::NodeDetected { index: 10, .. })));
        // Standing wave cos φ has nodes; fall back to the dominant mode.
        let standing = RingWavefunction::from_amplitudes(
            (0..64).map(|j| Complex64::new((TAU * j as f64 / 64.0).cos(), 0.0)).collect(),
        )
        .unwrap();
        assert!(winding_number(&standing).is_err());
        assert_eq!(dominant_mode(&standing).abs(), 1);
    }

    #[test]
    fn relax_plane_wave_seed() {
        let params = RingParams::from_u_over_2pi(0.3, 2.0);
        let r = relax(&params, &SolverSettings::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.winding, 0);
        assert!(rel(r.mu, 2.09) < 1e-8, "{}", r.mu);
        assert!(r.mu - r.energy_per_particle >= 0.0);
    }

    #[test]
    fn metastable_sectors_hold_without_noise() {
        let params = RingParams::from_u_over_2pi(0.7, 2.0);
        let r0 = relax(&params, &SolverSettings { seed_winding: 0, ..Default::default() }).unwrap();
        let r1 = relax(&params, &SolverSettings { seed_winding: 1, ..Default::default() }).unwrap();
        assert!(r0.converged && r1.converged);
        assert_eq!((r0.winding, r1.winding), (0, 1));
        assert!(r1.mu < r0.mu);
        assert!(rel(r0.mu, 2.49) < 1e-8);
    }

    #[test]
    fn free_gas_relaxes_to_uniform() {
        let params = RingParams::new(0.0, 0.0);
        let settings = SolverSettings {
            noise_amplitude: 0.05,
            rng_seed: 3,
            tolerance: 1e-16,
            ..Default::default()
        };
        let r = relax(&params, &settings).unwrap();
        assert!(r.converged);
        assert_eq!(r.winding, 0);
        assert!(r.mu.abs() < 1e-10);
        let mean = 1.0 / TAU;
        for d in r.wavefunction.density() {
            assert!((d - mean).abs() < 1e-6 * mean);
        }
    }

    #[test]
    fn global_ground_picks_lowest_sector() {
        let settings = SolverSettings::global_search();
        for &(eta, m) in &[(0.49, 0), (0.51, 1), (2.4, 2), (-1.2, -1)] {
            let r = global_ground(&RingParams::from_u_over_2pi(eta, 2.0), &settings).unwrap();
            assert_eq!(r.winding, m, "eta = {eta}");
        }
        let r = global_ground(&RingParams::from_u_over_2pi(2.0, 2.0), &settings).unwrap();
        assert_eq!(r.winding, 2);
        assert!(rel(r.mu, 2.0) < 1e-7);
    }

    #[test]
    fn potential_hook_defaults_to_free_ring() {
        let params = RingParams::from_u_over_2pi(0.2, 1.0);
        let zero = vec![0.0; 256];
        let settings = SolverSettings::default();
        let a = relax(&params, &settings).unwrap();
        let b = relax_in_potential(&params, &settings, Some(&zero)).unwrap();
        assert_eq!(a.mu, b.mu);
        assert!(relax_in_potential(&params, &settings, Some(&[0.0; 3])).is_err());

        // A weak cos φ potential lowers the energy below the uniform value.
        let v: Vec<f64> = (0..256).map(|j| 0.5 * (TAU * j as f64 / 256.0).cos()).collect();
        let noisy = SolverSettings { noise_amplitude: 1e-3, ..settings };
        let c = relax_in_potential(&params, &noisy, Some(&v)).unwrap();
        assert!(c.converged);
        assert!(c.energy_per_particle < a.energy_per_particle);
    }

    #[test]
    fn dump_format() {
        let psi = RingWavefunction::plane_wave(1, 64).unwrap();
        let mut out = Vec::new();
        psi.write_dump(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 65);
        assert_eq!(lines[0], "# phi re_psi im_psi");
        assert_eq!(lines[1].split(' ').count(), 3);
    }
}

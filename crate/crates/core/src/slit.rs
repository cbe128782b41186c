//! Double-slit densities on a one-dimensional screen.
//!
//! Each slit `j` at `a_j = ∓s/2` contributes a Gaussian-envelope amplitude with
//! a spherical phase
//!
//! ```text
//! psi_j(x) = N exp(-(x - a_j)^2 / (4 sigma^2)) exp(i k r_j(x)),
//! r_j(x)   = sqrt(L^2 + (x - a_j)^2),   k = 2 pi / wavelength,
//! ```
//!
//! with `N = (2 pi sigma^2)^(-1/4)` so that `∫|psi_j|^2 dx = 1`. With both
//! slits open the state is `(psi_A + psi_B) / sqrt(2)`, giving
//! `rho_quantum = rho_classical + Re(conj(psi_A) psi_B)`.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Envelope widths between the outer slit images and the default grid edges.
pub const DEFAULT_GRID_SIGMAS: f64 = 8.0;
pub const DEFAULT_POINTS: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlitConfig {
    /// Metres.
    pub wavelength: f64,
    pub separation: f64,
    pub distance: f64,
    /// Envelope width of each single-slit amplitude on the screen.
    pub sigma: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl SlitConfig {
    /// Default grid: `±(s/2 + 8 sigma)`, 2001 points.
    pub fn new(wavelength: f64, separation: f64, distance: f64, sigma: f64) -> Self {
        let half = 0.5 * separation + DEFAULT_GRID_SIGMAS * sigma;
        Self {
            wavelength,
            separation,
            distance,
            sigma,
            x_min: -half,
            x_max: half,
            points: DEFAULT_POINTS,
        }
    }

    pub fn with_grid(mut self, x_min: f64, x_max: f64, points: usize) -> Self {
        self.x_min = x_min;
        self.x_max = x_max;
        self.points = points;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wavelength", self.wavelength),
            ("separation", self.separation),
            ("distance", self.distance),
            ("sigma", self.sigma),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(Error::InvalidConfig(format!(
                "grid needs x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidConfig(format!(
                "grid needs at least 2 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Small-angle fringe period `wavelength L / s`.
    pub fn small_angle_fringe_spacing(&self) -> f64 {
        self.wavelength * self.distance / self.separation
    }

    /// Screen coordinates, mirror-symmetric bit for bit when `x_min = -x_max`.
    pub fn grid(&self) -> Vec<f64> {
        let mid = 0.5 * (self.x_min + self.x_max);
        let half = 0.5 * (self.x_max - self.x_min);
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| mid + half * ((2 * i) as f64 - last) / last)
            .collect()
    }

    fn position(&self, slit: Slit) -> f64 {
        match slit {
            Slit::A => -0.5 * self.separation,
            Slit::B => 0.5 * self.separation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slit {
    A,
    B,
}

/// Which slits are open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Apertures {
    #[default]
    Both,
    OnlyA,
    OnlyB,
}

fn amplitude(cfg: &SlitConfig, slit: Slit, x: f64) -> Complex64 {
    let d = x - cfg.position(slit);
    let norm = (2.0 * PI * cfg.sigma * cfg.sigma).powf(-0.25);
    let envelope = norm * (-d * d / (4.0 * cfg.sigma * cfg.sigma)).exp();
    // k r = k L + k (r - L); the second part is computed without cancellation
    // so relative phases keep full precision even when k L ~ 1e7.
    let r = cfg.distance.hypot(d);
    let excess = d * d / (r + cfg.distance);
    let k = cfg.wavenumber();
    let phase = (k * cfg.distance).rem_euclid(2.0 * PI) + k * excess;
    Complex64::from_polar(envelope, phase)
}

pub fn wave_amplitude(cfg: &SlitConfig, slit: Slit, x: f64) -> Result<Complex64> {
    cfg.validate()?;
    Ok(amplitude(cfg, slit, x))
}

/// All curves sampled on the configured grid, units 1/m.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreenProfile {
    pub x: Vec<f64>,
    pub rho_a: Vec<f64>,
    pub rho_b: Vec<f64>,
    pub rho_classical: Vec<f64>,
    pub rho_quantum: Vec<f64>,
    pub interference: Vec<f64>,
}

pub const CSV_HEADER: &str = "x,rho_a,rho_b,rho_classical,rho_quantum,interference";

impl ScreenProfile {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// One row per grid point, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for i in 0..self.len() {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                self.x[i],
                self.rho_a[i],
                self.rho_b[i],
                self.rho_classical[i],
                self.rho_quantum[i],
                self.interference[i]
            )?;
        }
        Ok(())
    }
}

pub fn screen_profile(cfg: &SlitConfig) -> Result<ScreenProfile> {
    screen_profile_with(cfg, Apertures::Both)
}

/// A closed slit contributes a zero amplitude.
pub fn screen_profile_with(cfg: &SlitConfig, open: Apertures) -> Result<ScreenProfile> {
    cfg.validate()?;
    let x = cfg.grid();
    let n = x.len();
    let mut p = ScreenProfile {
        x: Vec::with_capacity(n),
        rho_a: Vec::with_capacity(n),
        rho_b: Vec::with_capacity(n),
        rho_classical: Vec::with_capacity(n),
        rho_quantum: Vec::with_capacity(n),
        interference: Vec::with_capacity(n),
    };
    let zero = Complex64::new(0.0, 0.0);
    for xi in x {
        let psi_a = if open == Apertures::OnlyB {
            zero
        } else {
            amplitude(cfg, Slit::A, xi)
        };
        let psi_b = if open == Apertures::OnlyA {
            zero
        } else {
            amplitude(cfg, Slit::B, xi)
        };
        let rho_a = psi_a.norm_sqr();
        let rho_b = psi_b.norm_sqr();
        p.x.push(xi);
        p.rho_a.push(rho_a);
        p.rho_b.push(rho_b);
        p.rho_classical.push(0.5 * (rho_a + rho_b));
        p.rho_quantum.push(0.5 * (psi_a + psi_b).norm_sqr());
        p.interference.push((psi_a.conj() * psi_b).re);
    }
    Ok(p)
}

/// Trapezoid rule over a (possibly non-uniform) grid.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

/// Interior local maxima of `y`, refined by a parabola through the three
/// samples around each peak.
pub fn local_maxima(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut peaks = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        let (l, c, r) = (y[i - 1], y[i], y[i + 1]);
        if !(c > l && c >= r) {
            continue;
        }
        let curvature = l - 2.0 * c + r;
        let offset = if curvature != 0.0 {
            (0.5 * (l - r) / curvature).clamp(-0.5, 0.5)
        } else {
            0.0
        };
        let step = if offset >= 0.0 {
            x[i + 1] - x[i]
        } else {
            x[i] - x[i - 1]
        };
        peaks.push(x[i] + offset * step);
    }
    peaks
}

/// Distance between the fringe maximum closest to `x = 0` and its nearest
/// neighbouring maximum.
///
/// Fringes are located on `rho_quantum / rho_classical`, which divides out the
/// single-slit envelope; when the envelope is narrower than a fringe period the
/// raw `rho_quantum` shows no secondary maxima. Samples where the classical
/// density underflows are skipped.
pub fn fringe_spacing(profile: &ScreenProfile) -> Option<f64> {
    let (x, ratio): (Vec<f64>, Vec<f64>) = profile
        .x
        .iter()
        .zip(profile.rho_quantum.iter().zip(&profile.rho_classical))
        .filter(|(_, (_, &c))| c > f64::MIN_POSITIVE)
        .map(|(&x, (&q, &c))| (x, q / c))
        .unzip();
    nearest_peak_spacing(&local_maxima(&x, &ratio))
}

/// Same as [`fringe_spacing`] but on the raw `rho_quantum` curve.
pub fn density_peak_spacing(profile: &ScreenProfile) -> Option<f64> {
    nearest_peak_spacing(&local_maxima(&profile.x, &profile.rho_quantum))
}

fn nearest_peak_spacing(peaks: &[f64]) -> Option<f64> {
    let centre = peaks
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))?
        .0;
    let left = centre.checked_sub(1).map(|i| peaks[centre] - peaks[i]);
    let right = peaks.get(centre + 1).map(|p| p - peaks[centre]);
    match (left, right) {
        (Some(l), Some(r)) => Some(l.min(r)),
        (l, r) => l.or(r),
    }
}

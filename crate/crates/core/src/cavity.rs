//! Lowest resonant mode of the annular cavity with a node.
//!
//! The radial profile is a combination of the half-order Bessel functions,
//! `u(x) = A·J_{1/2}(x) + B·J_{-1/2}(x)` with `x = kρ`. Tangential electric
//! field vanishes on both cylindrical walls, which reduces to `u'(ρ₁) =
//! u'(ρ₂) = 0`. All solving happens in the dimensionless variable `kρ₁`, so
//! the solved `kρ₁`, `(A, B)` and `β` depend only on `ρ₂/ρ₁`.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::constants::{C, HBAR};
use crate::error::{Error, Result};
use crate::quadrature::{adaptive_simpson, DEFAULT_MAX_DEPTH, DEFAULT_REL_TOL};

/// Number of grid points in the determinant scan.
pub const SCAN_POINTS: usize = 10_000;
/// Lower edge of the scan, expressed as kρ₂.
pub const SCAN_MIN_K_RHO2: f64 = 0.01;
/// Upper edge of the scan, expressed as kρ₁.
pub const SCAN_MAX_K_RHO1: f64 = 3.0 * PI;
pub const BISECTION_REL_TOL: f64 = 1e-13;
pub const BISECTION_MAX_ITER: usize = 200;

/// Inner/outer radii and height of the annular cavity, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityGeometry {
    rho1: f64,
    rho2: f64,
    delta_z: f64,
}

impl CavityGeometry {
    pub fn new(rho1: f64, rho2: f64, delta_z: f64) -> Result<Self> {
        if !(rho1.is_finite() && rho2.is_finite() && delta_z.is_finite()) {
            return Err(Error::InvalidGeometry("dimensions must be finite".into()));
        }
        if rho1 <= 0.0 {
            return Err(Error::InvalidGeometry(format!("rho1 must be > 0 (got {rho1})")));
        }
        if rho2 <= rho1 {
            return Err(Error::InvalidGeometry(format!(
                "rho2 must exceed rho1 (rho1 = {rho1}, rho2 = {rho2})"
            )));
        }
        if delta_z <= 0.0 {
            return Err(Error::InvalidGeometry(format!("delta_z must be > 0 (got {delta_z})")));
        }
        Ok(Self { rho1, rho2, delta_z })
    }

    /// Builds the geometry from the inner radius and the ratios δρ/ρ₁, δz/ρ₁.
    pub fn from_ratios(rho1: f64, delta_rho_over_rho1: f64, delta_z_over_rho1: f64) -> Result<Self> {
        Self::new(
            rho1,
            rho1 * (1.0 + delta_rho_over_rho1),
            rho1 * delta_z_over_rho1,
        )
    }

    pub fn rho1(&self) -> f64 {
        self.rho1
    }

    pub fn rho2(&self) -> f64 {
        self.rho2
    }

    pub fn delta_z(&self) -> f64 {
        self.delta_z
    }

    /// Width δρ = ρ₂ − ρ₁.
    pub fn delta_rho(&self) -> f64 {
        self.rho2 - self.rho1
    }

    pub fn radius_ratio(&self) -> f64 {
        self.rho2 / self.rho1
    }

    /// Uniform rescaling of every length by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.rho1 * s, self.rho2 * s, self.delta_z * s)
    }
}

/// Solved lowest mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityMode {
    /// Wavenumber k, rad/m.
    pub k: f64,
    /// Coefficient A of J_{1/2}.
    pub coeff_a: f64,
    /// Coefficient B of J_{-1/2}.
    pub coeff_b: f64,
    /// Normalization β = k²∫ρ|u|²dρ.
    pub beta: f64,
    /// Angular frequency ω = ck, rad/s.
    pub omega: f64,
}

impl CavityMode {
    /// Cyclic frequency ω/2π in Hz.
    pub fn frequency_hz(&self) -> f64 {
        self.omega / (2.0 * PI)
    }

    /// u(ρ) for this mode.
    pub fn u(&self, rho: f64) -> Result<f64> {
        radial_u(self.k * rho, self.coeff_a, self.coeff_b)
    }

    /// du/dρ for this mode.
    pub fn du_drho(&self, rho: f64) -> Result<f64> {
        Ok(self.k * radial_u_prime(self.k * rho, self.coeff_a, self.coeff_b)?)
    }

    /// Wall derivatives |du/dρ| at ρ₁ and ρ₂, each divided by k·max|u| over
    /// the cavity cross-section.
    pub fn boundary_residuals(&self, geometry: &CavityGeometry) -> Result<(f64, f64)> {
        const SAMPLES: usize = 257;
        let (r1, r2) = (geometry.rho1(), geometry.rho2());
        let mut u_max = 0.0f64;
        for i in 0..SAMPLES {
            let rho = r1 + (r2 - r1) * i as f64 / (SAMPLES - 1) as f64;
            u_max = u_max.max(self.u(rho)?.abs());
        }
        let scale = self.k * u_max;
        Ok((
            self.du_drho(r1)?.abs() / scale,
            self.du_drho(r2)?.abs() / scale,
        ))
    }
}

/// `A·J_{1/2}(x) + B·J_{-1/2}(x)` using the closed forms
/// `J_{±1/2}(x) = √(2/(πx))·{sin x, cos x}`.
pub fn radial_u(x: f64, coeff_a: f64, coeff_b: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("radial function needs x > 0 (got {x})")));
    }
    let (s, c) = x.sin_cos();
    Ok((FRAC_2_PI / x).sqrt() * (coeff_a * s + coeff_b * c))
}

/// du/dx of [`radial_u`], equal to `√(2/(πx))·(A·c₁(x) − B·c₂(x))`.
pub fn radial_u_prime(x: f64, coeff_a: f64, coeff_b: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("radial function needs x > 0 (got {x})")));
    }
    Ok((FRAC_2_PI / x).sqrt() * (coeff_a * wall_c1(x) - coeff_b * wall_c2(x)))
}

fn wall_c1(x: f64) -> f64 {
    x.cos() - x.sin() / (2.0 * x)
}

fn wall_c2(x: f64) -> f64 {
    x.sin() + x.cos() / (2.0 * x)
}

/// Boundary determinant at `x₁ = kρ₁` for radius ratio `ρ₂/ρ₁`. Its zeros
/// are the wavenumbers for which `u'` vanishes on both walls.
pub fn boundary_determinant(x1: f64, radius_ratio: f64) -> f64 {
    let x2 = x1 * radius_ratio;
    wall_c1(x1) * wall_c2(x2) - wall_c1(x2) * wall_c2(x1)
}

/// Lowest kρ₁ solving the boundary determinant for the given radius ratio.
fn lowest_root(radius_ratio: f64) -> Result<f64> {
    let lo = SCAN_MIN_K_RHO2 / radius_ratio;
    let hi = SCAN_MAX_K_RHO1;
    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let det = |x: f64| boundary_determinant(x, radius_ratio);

    let mut prev_x = lo;
    let mut prev_d = det(lo);
    let mut bracket = None;
    for i in 1..SCAN_POINTS {
        let x = lo + step * i as f64;
        let d = det(x);
        if prev_d == 0.0 {
            return Ok(prev_x);
        }
        if prev_d.signum() != d.signum() {
            bracket = Some((prev_x, x, prev_d));
            break;
        }
        prev_x = x;
        prev_d = d;
    }
    let (mut a, mut b, mut da) = bracket.ok_or(Error::NoRoot { lo, hi })?;

    for _ in 0..BISECTION_MAX_ITER {
        let m = 0.5 * (a + b);
        if b - a <= BISECTION_REL_TOL * m {
            return Ok(m);
        }
        let dm = det(m);
        if dm == 0.0 {
            return Ok(m);
        }
        if dm.signum() == da.signum() {
            a = m;
            da = dm;
        } else {
            b = m;
        }
    }
    Err(Error::NonConvergence(BISECTION_MAX_ITER))
}

/// Solves the lowest mode under the wall condition `u'(ρ₁) = u'(ρ₂) = 0`.
///
/// `(A, B)` are normalized to `A² + B² = 1` with `A ≥ 0`, and `β` is filled
/// in by [`beta_factor`].
pub fn solve_lowest_mode(geometry: &CavityGeometry) -> Result<CavityMode> {
    let x1 = lowest_root(geometry.radius_ratio())?;
    let k = x1 / geometry.rho1();

    let (mut a, mut b) = (wall_c2(x1), wall_c1(x1));
    let norm = a.hypot(b);
    a /= norm;
    b /= norm;
    if a < 0.0 {
        a = -a;
        b = -b;
    }

    let mut mode = CavityMode {
        k,
        coeff_a: a,
        coeff_b: b,
        beta: f64::NAN,
        omega: C * k,
    };
    mode.beta = beta_factor(&mode, geometry)?;
    Ok(mode)
}

/// β = k²∫_{ρ₁}^{ρ₂} ρ|u(ρ)|² dρ, evaluated as ∫ x·u(x)² dx over
/// `x ∈ [kρ₁, kρ₂]` by adaptive Simpson quadrature.
pub fn beta_factor(mode: &CavityMode, geometry: &CavityGeometry) -> Result<f64> {
    let (a, b) = (mode.coeff_a, mode.coeff_b);
    let integrand = |x: f64| {
        let u = radial_u(x, a, b).unwrap_or(f64::NAN);
        x * u * u
    };
    adaptive_simpson(
        integrand,
        mode.k * geometry.rho1(),
        mode.k * geometry.rho2(),
        DEFAULT_REL_TOL,
        DEFAULT_MAX_DEPTH,
    )
}

/// Zero-point field profiles of a solved mode.
///
/// Field values are `√(energy/volume)`; only their ratios and shapes are
/// used downstream.
#[derive(Debug, Clone, Copy)]
pub struct FieldAmplitudes {
    mode: CavityMode,
    geometry: CavityGeometry,
}

pub fn field_amplitudes(mode: &CavityMode, geometry: &CavityGeometry) -> FieldAmplitudes {
    FieldAmplitudes {
        mode: *mode,
        geometry: *geometry,
    }
}

impl FieldAmplitudes {
    fn check(&self, rho: f64) -> Result<()> {
        let (r1, r2) = (self.geometry.rho1(), self.geometry.rho2());
        if rho < r1 || rho > r2 {
            return Err(Error::Domain(format!("rho = {rho} outside [{r1}, {r2}]")));
        }
        Ok(())
    }

    /// E₀(ρ) = √(ħω/(2βρ²δz)).
    pub fn e0(&self, rho: f64) -> Result<f64> {
        self.check(rho)?;
        let m = &self.mode;
        Ok((HBAR * m.omega / (2.0 * m.beta * rho * rho * self.geometry.delta_z())).sqrt())
    }

    /// B₀(ρ,φ) = 2E₀(ρ)·kρ·u(ρ)·cos(φ/2).
    pub fn b0(&self, rho: f64, phi: f64) -> Result<f64> {
        let e0 = self.e0(rho)?;
        let m = &self.mode;
        Ok(2.0 * e0 * m.k * rho * m.u(rho)? * (0.5 * phi).cos())
    }

    /// Polarization components `(ε_ρ, ε_φ) = (−u·sin(φ/2), −2ρ·u'·cos(φ/2))`.
    pub fn polarization(&self, rho: f64, phi: f64) -> Result<(f64, f64)> {
        self.check(rho)?;
        let m = &self.mode;
        let (s, c) = (0.5 * phi).sin_cos();
        Ok((-m.u(rho)? * s, -2.0 * rho * m.du_drho(rho)? * c))
    }
}

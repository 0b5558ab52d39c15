//! Einstein velocity addition on the open ball `‖v‖ < c` in three dimensions.
//!
//! ```text
//! u ⊕ v = 1/(1 + u·v/c²) · ( u + v/γ_u + (1/c²)·(γ_u/(1+γ_u))·(u·v)·u )
//! γ_u   = 1/√(1 − u·u/c²)
//! ```
//!
//! A second coefficient, `γ_u/(1+γ_v)`, is available as
//! [`AdditionVariant::GammaV`] so that it can be tested against the axioms.
//! It is not a gyrogroup operation and is never the default.

use std::f64::consts::TAU;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Gyrogroup;

pub const DEFAULT_SEED: u64 = 0x6779_726f;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EinsteinError {
    #[error("velocity with speed {speed} is not inside the ball of radius {c}")]
    OutsideBall { speed: f64, c: f64 },
    #[error("velocities live in balls of different radius ({left} vs {right})")]
    MismatchedC { left: f64, right: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// A velocity strictly inside the ball of radius `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Velocity {
    pub vx: f64,
    pub vy: f64,
    pub vz: f64,
    pub c: f64,
}

impl Velocity {
    pub fn new(vx: f64, vy: f64, vz: f64, c: f64) -> Result<Self, EinsteinError> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(EinsteinError::InvalidConfig(format!("c must be positive and finite, got {c}")));
        }
        let v = Self { vx, vy, vz, c };
        let speed = v.speed();
        if !(speed < c) {
            return Err(EinsteinError::OutsideBall { speed, c });
        }
        Ok(v)
    }

    /// Builds a velocity from components given as fractions of `c`.
    pub fn from_beta(bx: f64, by: f64, bz: f64, c: f64) -> Result<Self, EinsteinError> {
        Self::new(bx * c, by * c, bz * c, c)
    }

    pub fn zero(c: f64) -> Self {
        Self { vx: 0.0, vy: 0.0, vz: 0.0, c }
    }

    pub fn vector(&self) -> Vector3<f64> {
        Vector3::new(self.vx, self.vy, self.vz)
    }

    pub fn speed(&self) -> f64 {
        self.vector().norm()
    }

    /// `‖v‖ / c`.
    pub fn beta(&self) -> f64 {
        self.speed() / self.c
    }

    pub fn dot(&self, other: &Velocity) -> f64 {
        self.vector().dot(&other.vector())
    }

    fn from_vector(v: Vector3<f64>, c: f64) -> Self {
        Self { vx: v.x, vy: v.y, vz: v.z, c }
    }

    fn check(&self) -> Result<(), EinsteinError> {
        let speed = self.speed();
        if speed < self.c {
            Ok(())
        } else {
            Err(EinsteinError::OutsideBall { speed, c: self.c })
        }
    }
}

/// Which gamma appears in the denominator of the last term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdditionVariant {
    /// `γ_u/(1+γ_u)`: Einstein addition.
    #[default]
    GammaU,
    /// `γ_u/(1+γ_v)`: fails the gyrogroup axioms.
    GammaV,
}

impl AdditionVariant {
    pub fn label(self) -> &'static str {
        match self {
            AdditionVariant::GammaU => "gamma-u",
            AdditionVariant::GammaV => "gamma-v",
        }
    }
}

/// Gamma factor of a velocity vector, evaluated as `1/√((1−β)(1+β))`.
fn gamma_of(v: &Vector3<f64>, c: f64) -> f64 {
    let beta = v.norm() / c;
    1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt()
}

pub fn gamma(u: &Velocity) -> Result<f64, EinsteinError> {
    u.check()?;
    Ok(gamma_of(&u.vector(), u.c))
}

fn add_vectors(u: &Vector3<f64>, v: &Vector3<f64>, c: f64, variant: AdditionVariant) -> Vector3<f64> {
    let c2 = c * c;
    let uv = u.dot(v);
    let gu = gamma_of(u, c);
    let ratio = match variant {
        AdditionVariant::GammaU => gu / (1.0 + gu),
        AdditionVariant::GammaV => gu / (1.0 + gamma_of(v, c)),
    };
    (u + v / gu + u * (ratio * uv / c2)) / (1.0 + uv / c2)
}

/// Einstein addition `u ⊕ v`.
pub fn einstein_add(u: &Velocity, v: &Velocity) -> Result<Velocity, EinsteinError> {
    einstein_add_variant(u, v, AdditionVariant::GammaU)
}

pub fn einstein_add_variant(
    u: &Velocity,
    v: &Velocity,
    variant: AdditionVariant,
) -> Result<Velocity, EinsteinError> {
    if u.c != v.c {
        return Err(EinsteinError::MismatchedC { left: u.c, right: v.c });
    }
    u.check()?;
    v.check()?;
    Ok(Velocity::from_vector(
        add_vectors(&u.vector(), &v.vector(), u.c, variant),
        u.c,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EinsteinConfig {
    pub c: f64,
    pub tol: f64,
    /// Sampling cap on speed, as a fraction of `c`.
    pub max_beta: f64,
    pub seed: u64,
}

impl Default for EinsteinConfig {
    fn default() -> Self {
        Self {
            c: 1.0,
            tol: 1e-9,
            max_beta: 0.99,
            seed: DEFAULT_SEED,
        }
    }
}

impl EinsteinConfig {
    pub fn validate(&self) -> Result<(), EinsteinError> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(EinsteinError::InvalidConfig(format!("c must be positive, got {}", self.c)));
        }
        if !(self.tol > 0.0) {
            return Err(EinsteinError::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.max_beta > 0.0 && self.max_beta < 1.0) {
            return Err(EinsteinError::InvalidConfig(format!(
                "max_beta must lie in (0, 1), got {}",
                self.max_beta
            )));
        }
        Ok(())
    }
}

/// The Einstein gyrogroup on the ball of radius `c`.
///
/// Elements handed to it are assumed to lie in the ball and share its `c`;
/// use [`einstein_add`] for checked arithmetic on untrusted values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EinsteinGyrogroup {
    c: f64,
    tol: f64,
    variant: AdditionVariant,
}

impl EinsteinGyrogroup {
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Tolerance from the configuration this gyrogroup was built with.
    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn variant(&self) -> AdditionVariant {
        self.variant
    }

    pub fn with_variant(self, variant: AdditionVariant) -> Self {
        Self { variant, ..self }
    }
}

pub fn einstein_interface(cfg: &EinsteinConfig) -> Result<EinsteinGyrogroup, EinsteinError> {
    cfg.validate()?;
    Ok(EinsteinGyrogroup {
        c: cfg.c,
        tol: cfg.tol,
        variant: AdditionVariant::GammaU,
    })
}

impl Gyrogroup for EinsteinGyrogroup {
    type Element = Velocity;

    fn add(&self, a: &Velocity, b: &Velocity) -> Velocity {
        debug_assert_eq!(a.c, self.c);
        debug_assert_eq!(b.c, self.c);
        Velocity::from_vector(add_vectors(&a.vector(), &b.vector(), self.c, self.variant), self.c)
    }

    fn identity(&self) -> Velocity {
        Velocity::zero(self.c)
    }

    fn neg(&self, a: &Velocity) -> Velocity {
        Velocity::from_vector(-a.vector(), a.c)
    }

    /// Largest componentwise difference, in units of `c`, divided by
    /// `1 + ‖rhs‖/c`.
    fn residual(&self, lhs: &Velocity, rhs: &Velocity) -> f64 {
        let diff = (lhs.vector() - rhs.vector()) / self.c;
        let scale = 1.0 + rhs.speed() / self.c;
        diff.amax() / scale
    }

    fn is_exact(&self) -> bool {
        false
    }
}

/// Seeded stream of velocities: isotropic direction, speed uniform in
/// `[0, max_beta·c)`.
///
/// Each sampler owns its state, so independent samplers never interfere.
#[derive(Debug, Clone)]
pub struct VelocitySampler {
    rng: ChaCha8Rng,
    c: f64,
    max_beta: f64,
}

impl VelocitySampler {
    pub fn new(cfg: &EinsteinConfig) -> Result<Self, EinsteinError> {
        cfg.validate()?;
        Ok(Self {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            c: cfg.c,
            max_beta: cfg.max_beta,
        })
    }

    /// A uniformly distributed unit vector.
    pub fn sample_direction(&mut self) -> Vector3<f64> {
        let z: f64 = self.rng.random_range(-1.0..=1.0);
        let phi: f64 = self.rng.random_range(0.0..TAU);
        let r = (1.0 - z * z).max(0.0).sqrt();
        Vector3::new(r * phi.cos(), r * phi.sin(), z)
    }

    pub fn sample_velocity(&mut self) -> Velocity {
        let dir = self.sample_direction();
        let beta: f64 = self.rng.random_range(0.0..self.max_beta);
        Velocity::from_vector(dir * (beta * self.c), self.c)
    }

    /// Endless stream of `(a, b, c)` triples for the identity suite.
    pub fn triples(&mut self) -> impl Iterator<Item = (Velocity, Velocity, Velocity)> + '_ {
        std::iter::repeat_with(move || {
            (self.sample_velocity(), self.sample_velocity(), self.sample_velocity())
        })
    }
}

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Continues a square root along a sequence of nearby points.
///
/// Each call picks the root closest to the previous value and refuses steps
/// where the two candidates are ambiguous (argument change of `π/2` or more).
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTracker {
    seed_point: Complex64,
    seed_value: Complex64,
    point: Complex64,
    value: Complex64,
    max_step: f64,
}

impl BranchTracker {
    pub fn new(seed_point: Complex64, seed_value: Complex64) -> Self {
        Self {
            seed_point,
            seed_value,
            point: seed_point,
            value: seed_value,
            max_step: f64::INFINITY,
        }
    }

    /// Caps the distance between consecutive points.
    pub fn with_max_step(mut self, max_step: f64) -> Self {
        self.max_step = max_step;
        self
    }

    pub fn seed_point(&self) -> Complex64 {
        self.seed_point
    }

    pub fn seed_value(&self) -> Complex64 {
        self.seed_value
    }

    pub fn current_point(&self) -> Complex64 {
        self.point
    }

    pub fn current_value(&self) -> Complex64 {
        self.value
    }

    /// The same tracker with the opposite branch.
    pub fn flipped(&self) -> Self {
        Self::new(self.seed_point, -self.seed_value).with_max_step(self.max_step)
    }

    /// Back to the seed.
    pub fn reset(&mut self) {
        self.point = self.seed_point;
        self.value = self.seed_value;
    }

    /// `√value` at `at`, continuous with the previous evaluation.
    pub fn sqrt_branch(&mut self, at: Complex64, value: Complex64) -> Result<Complex64> {
        if value.norm() == 0.0 || (at - self.point).norm() > self.max_step {
            return Err(Error::BranchJump { at });
        }
        let root = value.sqrt();
        let chosen = if (root * self.value.conj()).re >= 0.0 { root } else { -root };
        let turn = (chosen / self.value).arg().abs();
        if turn >= FRAC_PI_2 {
            return Err(Error::BranchJump { at });
        }
        self.point = at;
        self.value = chosen;
        Ok(chosen)
    }
}

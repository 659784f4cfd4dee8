//! Numerical construction of acute realizations of `X543`: on the regular
//! tetrahedron by projecting the 600-cell, on the standard tetrahedron by
//! a homotopy that flattens one corner while repairing angles, and the
//! final adjustment of the regular one to match it on the shared faces.
//!
//! All coordinates live in the unit cube: `T0` has the corners of the
//! published table divided by the cube side, and the standard tetrahedron
//! is produced with its right angle at the origin.

mod homotopy;
mod roles;
mod step1;
mod step3;

pub use homotopy::{
    constraint_violation, correct_angles, prescribe_positions, run_flatten, Flattener,
    FlattenOutcome, FlattenRun, TraceRow,
};
pub use roles::{boundary_template_roles, classify_roles, VertexRole};
pub use step1::{
    acute_scale_interval, projected_template, step1_realization, step1_worst_cosine, ScaleInterval,
};
pub use step3::{step3_adjust, FaceWeights, Step3Result};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::ComplexError;
use crate::geometry::{Embedding, GeometryError};

/// Corners of `T0` in the unit cube, in template corner order.
pub const FRAME_T0: [[f64; 3]; 4] = [
    [1.0, 0.0, 0.0],
    [1.0, 1.0, 1.0],
    [0.0, 0.0, 1.0],
    [0.0, 1.0, 0.0],
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlattenError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("not a copy of X543: {0}")]
    NotX543(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("angle correction stalled at t = {t} with worst cosine {worst_cosine}")]
    Stalled { t: f64, worst_cosine: f64 },
    #[error("no acute configuration for scales in [{lo}, {hi}]")]
    NoAcuteScale { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlattenConfig {
    /// Number of homotopy substeps from `t = 0` to `t = 1`.
    pub n_steps: usize,
    /// Correction iterations allowed per substep.
    pub correction_max_iters: usize,
    /// Initial move length as a fraction of the shortest edge of the
    /// offending tetrahedra.
    pub correction_step: f64,
    /// Corrections run while some angle is at least `90 − margin` degrees.
    pub acute_margin_deg: f64,
    pub seed: u64,
    /// Circumradius for Step 1; `None` picks the best sampled value.
    pub step1_scale: Option<f64>,
    /// Which template corner plays `A`.
    pub apex: u8,
}

impl Default for FlattenConfig {
    fn default() -> Self {
        Self {
            n_steps: 100,
            correction_max_iters: 500,
            correction_step: 0.1,
            acute_margin_deg: 0.5,
            seed: 0,
            step1_scale: None,
            apex: 1,
        }
    }
}

impl FlattenConfig {
    pub fn validate(&self) -> Result<(), FlattenError> {
        if self.n_steps == 0 {
            return Err(FlattenError::InvalidConfig("n_steps must be at least 1".into()));
        }
        if !(self.correction_step > 0.0 && self.correction_step < 0.5) {
            return Err(FlattenError::InvalidConfig("correction_step must lie in (0, 0.5)".into()));
        }
        if !(0.0..90.0).contains(&self.acute_margin_deg) {
            return Err(FlattenError::InvalidConfig("acute_margin_deg must lie in [0, 90)".into()));
        }
        if self.apex > 3 {
            return Err(FlattenError::InvalidConfig("apex must be a corner index 0..4".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlattenState {
    /// 0 is the regular tetrahedron, 1 the standard one.
    pub t: f64,
    pub embedding: Embedding<f64, 3>,
    pub roles: Vec<VertexRole>,
    /// Smallest dihedral cosine.
    pub worst_cosine: f64,
}

//! Validated description of a path space together with its weights.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::path::PathSpace;
use crate::tableau::RectShape;
use crate::weight::LevelWeight;

/// Rank, factor shapes (leftmost factor first) and optional level data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalSpec {
    pub rank: usize,
    pub shapes: Vec<RectShape>,
    pub level: Option<i64>,
    pub lambda: Option<LevelWeight>,
    pub lambda_prime: Option<LevelWeight>,
    pub b0: Option<RectShape>,
}

impl CrystalSpec {
    pub fn new(rank: usize, shapes: Vec<RectShape>) -> Self {
        CrystalSpec {
            rank,
            shapes,
            level: None,
            lambda: None,
            lambda_prime: None,
            b0: None,
        }
    }

    pub fn with_level(mut self, level: i64) -> Self {
        self.level = Some(level);
        self
    }

    pub fn with_weights(mut self, lambda: LevelWeight, lambda_prime: LevelWeight) -> Self {
        self.level.get_or_insert(lambda.level());
        self.lambda = Some(lambda);
        self.lambda_prime = Some(lambda_prime);
        self
    }

    pub fn with_b0(mut self, shape: RectShape) -> Self {
        self.b0 = Some(shape);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank < 2 {
            return Err(Error::InvalidRank(self.rank));
        }
        for s in &self.shapes {
            s.validate(self.rank)?;
        }
        let level = self.resolved_level();
        if level < 0 {
            return Err(Error::NotDominant(alloc::format!("negative level {level}")));
        }
        if self.level.is_some() || self.lambda.is_some() {
            if let Some(s) = self.shapes.iter().find(|s| s.cols as i64 > level) {
                return Err(Error::LevelViolation {
                    cols: s.cols,
                    level,
                });
            }
        }
        for w in [&self.lambda, &self.lambda_prime].into_iter().flatten() {
            if w.rank() != self.rank {
                return Err(Error::LengthMismatch {
                    left: self.rank,
                    right: w.rank(),
                });
            }
            w.ensure_dominant()?;
            if w.level() != level {
                return Err(Error::NotDominant(alloc::format!(
                    "{w} is not of level {level}"
                )));
            }
        }
        if let Some(b0) = self.b0 {
            b0.validate(self.rank)?;
            if b0.cols as i64 != level {
                return Err(Error::GroundState(alloc::format!(
                    "B_0 = B^{b0} is not of level {level}"
                )));
            }
        }
        Ok(())
    }

    /// Explicit level, else the level of `Lambda`, else the widest factor.
    pub fn resolved_level(&self) -> i64 {
        self.level
            .or_else(|| self.lambda.as_ref().map(LevelWeight::level))
            .unwrap_or_else(|| self.shapes.iter().map(|s| s.cols as i64).max().unwrap_or(0))
    }

    /// `Lambda`, defaulting to `level * Lambda_0`.
    pub fn resolved_lambda(&self) -> LevelWeight {
        self.lambda
            .clone()
            .unwrap_or_else(|| LevelWeight::multiple_of_lambda0(self.rank, self.resolved_level()))
    }

    /// `Lambda'`, defaulting to `Lambda`.
    pub fn resolved_lambda_prime(&self) -> LevelWeight {
        self.lambda_prime
            .clone()
            .unwrap_or_else(|| self.resolved_lambda())
    }

    /// Whether the plain path energy grades the level-restricted paths,
    /// i.e. `Lambda = level * Lambda_0` and no ground-state crystal is forced.
    pub fn uses_plain_energy(&self) -> bool {
        self.b0.is_none()
            && self.resolved_lambda().fundamental_coeffs()[1..]
                .iter()
                .all(|&c| c == 0)
    }

    /// Ground-state crystal, defaulting to the single row `B^{1,level}`.
    pub fn resolved_b0(&self) -> RectShape {
        self.b0
            .unwrap_or_else(|| RectShape::new(1, self.resolved_level() as usize))
    }

    pub fn space(&self) -> Result<PathSpace> {
        PathSpace::new(self.rank, &self.shapes)
    }

    /// Total number of boxes.
    pub fn boxes(&self) -> usize {
        self.shapes.iter().map(RectShape::size).sum()
    }
}

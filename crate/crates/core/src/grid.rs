//! Uniform one-dimensional grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::ModelKind;

/// Uniformly spaced grid on `[xmin, xmax]` with `points >= 3` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub xmin: f64,
    pub xmax: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(xmin: f64, xmax: f64, points: usize) -> Result<Self> {
        if !xmin.is_finite() || !xmax.is_finite() {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if xmax <= xmin {
            return Err(Error::InvalidGrid(format!(
                "xmax = {xmax} must exceed xmin = {xmin}"
            )));
        }
        if points < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 points, got {points}"
            )));
        }
        Ok(Grid { xmin, xmax, points })
    }

    pub fn spacing(&self) -> f64 {
        (self.xmax - self.xmin) / (self.points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.xmin + i as f64 * self.spacing()
    }

    pub fn iter_x(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.x(i))
    }

    /// Same interval with the spacing halved.
    pub fn refined(&self) -> Grid {
        Grid {
            xmin: self.xmin,
            xmax: self.xmax,
            points: 2 * (self.points - 1) + 1,
        }
    }

    /// Both ends must lie strictly inside the model's open domain.
    pub fn validate_for(&self, kind: ModelKind) -> Result<()> {
        for x in [self.xmin, self.xmax] {
            if !kind.contains(x) {
                return Err(Error::DomainViolation {
                    model: kind.name(),
                    x,
                    domain: kind.domain_description(),
                });
            }
        }
        Ok(())
    }
}

use crate::error::{Error, Result};

/// Smallest grid accepted anywhere in the crate.
pub const MIN_GRID_POINTS: usize = 16;

/// Uniform 1-D grid of transverse positions, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if x_min >= x_max {
            return Err(Error::InvalidGrid(format!(
                "x_min ({x_min:e}) must be below x_max ({x_max:e})"
            )));
        }
        if n_points < MIN_GRID_POINTS {
            return Err(Error::InvalidGrid(format!(
                "{n_points} points, need at least {MIN_GRID_POINTS}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// Grid spanning `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, n_points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n_points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        // Pin the last node so the upper bound is reproduced exactly.
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Largest |x| on the grid.
    pub fn extent(&self) -> f64 {
        self.x_min.abs().max(self.x_max.abs())
    }

    /// Same span with the panel count doubled; existing nodes are kept.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }

    /// Checks that the spacing samples the chirp `exp(iπ x²/λ dz)` above the
    /// Nyquist rate out to `reach`: Δx < λ·dz / (2·reach).
    pub fn check_chirp_nyquist(&self, lambda: f64, dz: f64, reach: f64) -> Result<()> {
        let limit = lambda * dz / (2.0 * reach);
        if self.spacing() < limit {
            Ok(())
        } else {
            let span = self.x_max - self.x_min;
            Err(Error::Nyquist {
                panels: self.n_points - 1,
                required: (span / limit).ceil() as usize,
            })
        }
    }
}

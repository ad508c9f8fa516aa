use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Amplitude,
    Intensity,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileValues {
    Amplitude(Vec<Complex64>),
    Intensity(Vec<f64>),
}

/// Values sampled on a uniform grid: complex mode amplitudes or
/// nonnegative intensities.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    grid: GridSpec,
    values: ProfileValues,
}

impl SampledProfile {
    pub fn amplitude(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        check_len(&grid, values.len())?;
        if values
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::InvalidArgument("amplitude is not finite".into()));
        }
        Ok(Self {
            grid,
            values: ProfileValues::Amplitude(values),
        })
    }

    pub fn intensity(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        check_len(&grid, values.len())?;
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "intensity must be finite and >= 0, got {v:e}"
            )));
        }
        Ok(Self {
            grid,
            values: ProfileValues::Intensity(values),
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &ProfileValues {
        &self.values
    }

    pub fn kind(&self) -> ProfileKind {
        match self.values {
            ProfileValues::Amplitude(_) => ProfileKind::Amplitude,
            ProfileValues::Intensity(_) => ProfileKind::Intensity,
        }
    }

    pub fn len(&self) -> usize {
        self.grid.n_points()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_intensity(&self) -> Option<&[f64]> {
        match &self.values {
            ProfileValues::Intensity(v) => Some(v),
            ProfileValues::Amplitude(_) => None,
        }
    }

    pub fn as_amplitude(&self) -> Option<&[Complex64]> {
        match &self.values {
            ProfileValues::Amplitude(v) => Some(v),
            ProfileValues::Intensity(_) => None,
        }
    }

    /// |a|² for amplitudes, the values themselves for intensities.
    pub fn intensities(&self) -> Vec<f64> {
        match &self.values {
            ProfileValues::Intensity(v) => v.clone(),
            ProfileValues::Amplitude(v) => v.iter().map(|a| a.norm_sqr()).collect(),
        }
    }

    pub fn to_intensity(&self) -> SampledProfile {
        SampledProfile {
            grid: self.grid,
            values: ProfileValues::Intensity(self.intensities()),
        }
    }

    /// Largest |value|.
    pub fn peak(&self) -> f64 {
        match &self.values {
            ProfileValues::Intensity(v) => v.iter().copied().fold(0.0, f64::max),
            ProfileValues::Amplitude(v) => v.iter().map(|a| a.norm()).fold(0.0, f64::max),
        }
    }

    /// Largest |v(x) - v(-x)| / peak over mirrored sample pairs. Only
    /// meaningful on grids symmetric about zero.
    pub fn symmetry_error(&self) -> f64 {
        let v = self.intensities();
        let peak = v.iter().copied().fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let n = v.len();
        (0..n / 2)
            .map(|i| (v[i] - v[n - 1 - i]).abs())
            .fold(0.0, f64::max)
            / peak
    }
}

fn check_len(grid: &GridSpec, len: usize) -> Result<()> {
    if len != grid.n_points() {
        return Err(Error::InvalidArgument(format!(
            "{len} values for a {}-point grid",
            grid.n_points()
        )));
    }
    Ok(())
}

/// Scales an intensity profile to unit maximum, or an amplitude profile to
/// unit maximum modulus with phases untouched.
pub fn peak_normalize(p: &SampledProfile) -> Result<SampledProfile> {
    let peak = p.peak();
    if peak == 0.0 {
        return Err(Error::ZeroProfile);
    }
    let scale = 1.0 / peak;
    let values = match &p.values {
        ProfileValues::Intensity(v) => ProfileValues::Intensity(
            v.iter()
                .map(|x| if *x == peak { 1.0 } else { x * scale })
                .collect(),
        ),
        ProfileValues::Amplitude(v) => {
            ProfileValues::Amplitude(v.iter().map(|a| a * scale).collect())
        }
    };
    Ok(SampledProfile {
        grid: p.grid,
        values,
    })
}

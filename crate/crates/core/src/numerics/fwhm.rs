use super::profile::SampledProfile;
use crate::error::{Error, Result};

/// Full width at half maximum of a single-peaked intensity profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FwhmResult {
    pub peak_x: f64,
    pub peak_value: f64,
    /// Half-maximum crossing left of the peak, linearly interpolated.
    pub left_x: f64,
    pub right_x: f64,
    pub fwhm: f64,
}

/// Measures the FWHM using the half-maximum crossings nearest the peak, so
/// side lobes never widen the result.
///
/// A flat-topped maximum is treated as one peak centred on the plateau.
pub fn fwhm(p: &SampledProfile) -> Result<FwhmResult> {
    let v = p
        .as_intensity()
        .ok_or_else(|| Error::Fwhm("profile is an amplitude, not an intensity".into()))?;
    let g = p.grid();
    let n = v.len();
    let (imax, &peak) =
        v.iter().enumerate().fold(
            (0, &v[0]),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        );
    if peak <= 0.0 {
        return Err(Error::Fwhm("profile has no positive maximum".into()));
    }
    let mut lo = imax;
    while lo > 0 && v[lo - 1] == peak {
        lo -= 1;
    }
    let mut hi = imax;
    while hi + 1 < n && v[hi + 1] == peak {
        hi += 1;
    }
    if lo == 0 || hi == n - 1 {
        return Err(Error::Fwhm("peak lies on the grid boundary".into()));
    }
    let half = 0.5 * peak;

    let mut j = lo;
    while j > 0 && v[j] >= half {
        j -= 1;
    }
    if v[j] >= half {
        return Err(Error::Fwhm(
            "no half-maximum crossing left of the peak".into(),
        ));
    }
    let left_x = crossing(g.x(j), g.x(j + 1), v[j], v[j + 1], half);

    let mut k = hi;
    while k + 1 < n && v[k] >= half {
        k += 1;
    }
    if v[k] >= half {
        return Err(Error::Fwhm(
            "no half-maximum crossing right of the peak".into(),
        ));
    }
    let right_x = crossing(g.x(k - 1), g.x(k), v[k - 1], v[k], half);

    Ok(FwhmResult {
        peak_x: 0.5 * (g.x(lo) + g.x(hi)),
        peak_value: peak,
        left_x,
        right_x,
        fwhm: right_x - left_x,
    })
}

fn crossing(x0: f64, x1: f64, y0: f64, y1: f64, level: f64) -> f64 {
    x0 + (level - y0) / (y1 - y0) * (x1 - x0)
}

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Composite Simpson estimate of `∫_a^b f(x) dx` over `n` panels.
pub fn integrate_complex<F>(f: F, a: f64, b: f64, n: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let (nodes, weights) = simpson_rule(a, b, n)?;
    Ok(nodes
        .iter()
        .zip(&weights)
        .fold(Complex64::new(0.0, 0.0), |acc, (&x, &w)| acc + f(x) * w))
}

/// Nodes and weights of composite Simpson on `[a, b]` with `n` (even) panels.
pub fn simpson_rule(a: f64, b: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(a < b) {
        return Err(Error::Quadrature(format!("need a < b, got [{a:e}, {b:e}]")));
    }
    if n < 2 || n % 2 != 0 {
        return Err(Error::Quadrature(format!(
            "Simpson needs an even panel count >= 2, got {n}"
        )));
    }
    let h = (b - a) / n as f64;
    let nodes = (0..=n)
        .map(|i| if i == n { b } else { a + i as f64 * h })
        .collect();
    Ok((nodes, sampled_weights(n + 1, h)))
}

/// Quadrature weights for `n_points` equally spaced samples with spacing `h`.
///
/// Odd counts use composite Simpson; even counts close the last three
/// panels with the 3/8 rule. Fewer than four samples fall back to trapezoid.
pub fn sampled_weights(n_points: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n_points];
    if n_points < 2 {
        return w;
    }
    if n_points < 4 {
        if n_points == 3 {
            w.copy_from_slice(&[h / 3.0, 4.0 * h / 3.0, h / 3.0]);
        } else {
            w.copy_from_slice(&[h / 2.0, h / 2.0]);
        }
        return w;
    }
    let panels = n_points - 1;
    let simpson_panels = if panels % 2 == 0 { panels } else { panels - 3 };
    for i in 0..simpson_panels / 2 {
        let j = 2 * i;
        w[j] += h / 3.0;
        w[j + 1] += 4.0 * h / 3.0;
        w[j + 2] += h / 3.0;
    }
    if simpson_panels != panels {
        let j = simpson_panels;
        let c = 3.0 * h / 8.0;
        w[j] += c;
        w[j + 1] += 3.0 * c;
        w[j + 2] += 3.0 * c;
        w[j + 3] += c;
    }
    w
}

/// Minimum panel count on `[-x_max, x_max]` that samples the chirp
/// `exp(iπ x²/λ·Δz)` above the Nyquist rate, i.e. with less than π of phase
/// advance per panel at the edge: ⌈4·x_max²/(λ·Δz)⌉.
pub fn required_panels(lambda: f64, dz: f64, x_max: f64) -> usize {
    // Shave a few ulps so exact integers are not bumped by rounding.
    let v = 4.0 * x_max * x_max / (lambda * dz);
    (v * (1.0 - 4.0 * f64::EPSILON)).ceil() as usize
}

/// Panels needed on an interval of length `span` so that a kernel whose
/// phase slope is at most `2π·reach/(λ·dz)` advances by no more than
/// `phase_step` radians per panel. Always even and at least `floor`.
pub(crate) fn chirp_panels(
    span: f64,
    reach: f64,
    lambda: f64,
    dz: f64,
    phase_step: f64,
    floor: usize,
) -> usize {
    let slope = 2.0 * std::f64::consts::PI * reach / (lambda * dz);
    let n = ((span * slope / phase_step).ceil() as usize)
        .max(floor)
        .max(2);
    n + n % 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_is_exact() {
        let v = integrate_complex(|_| Complex64::new(1.0, 0.0), 0.0, 1.0, 2).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sine_over_half_period() {
        let v = integrate_complex(|x| Complex64::new(x.sin(), 0.0), 0.0, PI, 256).unwrap();
        assert!((v.re - 2.0).abs() < 1e-8);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn rejects_bad_requests() {
        let f = |_| Complex64::new(1.0, 0.0);
        assert!(integrate_complex(f, 1.0, 0.0, 2).is_err());
        assert!(integrate_complex(f, 0.0, 0.0, 2).is_err());
        assert!(integrate_complex(f, 0.0, 1.0, 3).is_err());
        assert!(integrate_complex(f, 0.0, 1.0, 0).is_err());
    }

    #[test]
    fn sampled_weights_integrate_cubics_exactly() {
        // Both Simpson and 3/8 are exact for cubics.
        for n in 4..40 {
            let h = 2.0 / (n - 1) as f64;
            let w = sampled_weights(n, h);
            let s: f64 = (0..n)
                .map(|i| {
                    let x = -1.0 + i as f64 * h;
                    w[i] * (x * x * x + 3.0 * x * x - x + 2.0)
                })
                .sum();
            assert!((s - 6.0).abs() < 1e-12, "n={n}: {s}");
        }
    }

    #[test]
    fn required_panels_matches_formula() {
        // 4 (80e-6)² / (702e-9 · 0.5) = 0.0729...
        assert_eq!(required_panels(702e-9, 0.5, 80e-6), 1);
        assert_eq!(required_panels(1e-6, 1.0, 1e-2), 400);
    }

    #[test]
    fn chirp_panels_is_even_and_floored() {
        assert_eq!(chirp_panels(1.0, 0.0, 1.0, 1.0, 0.1, 7), 8);
        let n = chirp_panels(2e-3, 1e-2, 702e-9, 0.5, PI / 8.0, 16);
        assert_eq!(n % 2, 0);
        let h = 2e-3 / n as f64;
        assert!(2.0 * PI * 1e-2 * h / (702e-9 * 0.5) <= PI / 8.0);
    }
}

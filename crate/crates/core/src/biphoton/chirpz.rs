use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::transport::cis;

/// `S_k = Σ_j c_j · exp(-i·κ·(X0 + kΔ)·(x0 + j·h))` for `n` inputs and `m`
/// outputs, evaluated as one circular convolution (Bluestein).
///
/// With β = κΔh, jk = (j² + k² − (k − j)²)/2 turns the sum into a
/// convolution of `c_j e^{-iκX0hj} e^{-iβj²/2}` with `e^{iβn²/2}`.
pub(crate) struct ChirpZ {
    n: usize,
    m: usize,
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
    kernel: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl ChirpZ {
    pub(crate) fn new(
        n: usize,
        x0: f64,
        h: f64,
        m: usize,
        out_x0: f64,
        dx: f64,
        kappa: f64,
    ) -> Self {
        let len = (n + m - 1).next_power_of_two();
        let beta = kappa * dx * h;
        let pre = (0..n)
            .map(|j| {
                let j = j as f64;
                cis(-kappa * out_x0 * h * j - 0.5 * beta * j * j)
            })
            .collect();
        let post = (0..m)
            .map(|k| {
                let k = k as f64;
                cis(-kappa * x0 * (out_x0 + k * dx) - 0.5 * beta * k * k)
            })
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        let mut kernel = vec![Complex64::new(0.0, 0.0); len];
        for (i, v) in kernel.iter_mut().enumerate().take(m) {
            let t = i as f64;
            *v = cis(0.5 * beta * t * t);
        }
        for i in 1..n {
            let t = i as f64;
            kernel[len - i] = cis(0.5 * beta * t * t);
        }
        forward.process(&mut kernel);
        let scale = 1.0 / len as f64;
        for v in &mut kernel {
            *v *= scale;
        }
        Self {
            n,
            m,
            pre,
            post,
            kernel,
            forward,
            inverse,
        }
    }

    pub(crate) fn apply(&self, c: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(c.len(), self.n);
        let mut buf = vec![Complex64::new(0.0, 0.0); self.kernel.len()];
        for ((b, c), p) in buf.iter_mut().zip(c).zip(&self.pre) {
            *b = c * p;
        }
        self.forward.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel) {
            *b *= k;
        }
        self.inverse.process(&mut buf);
        buf.truncate(self.m);
        for (b, p) in buf.iter_mut().zip(&self.post) {
            *b *= p;
        }
        buf
    }
}

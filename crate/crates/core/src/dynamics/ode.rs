//! Adaptive Dormand–Prince 5(4) integrator for the vectorized master equation.

use crate::error::{Error, Result};
use crate::linalg::Vec16;

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MAX_STEPS: usize = 5_000_000;

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rtol: 1e-10,
            atol: 1e-13,
        }
    }
}

/// Autonomous adaptive integrator; `h` carries the step size between calls so
/// consecutive segments of a trajectory do not restart from scratch.
pub struct DormandPrince<F> {
    rhs: F,
    tol: Tolerance,
    h: Option<f64>,
}

impl<F: Fn(&Vec16) -> Vec16> DormandPrince<F> {
    pub fn new(rhs: F, tol: Tolerance) -> Self {
        DormandPrince { rhs, tol, h: None }
    }

    pub fn integrate(&mut self, y0: &Vec16, t0: f64, t1: f64) -> Result<Vec16> {
        let span = t1 - t0;
        if span < 0.0 {
            return Err(Error::InvalidArgument(
                "integration must go forward in time".into(),
            ));
        }
        let mut y = *y0;
        if span == 0.0 {
            return Ok(y);
        }
        let mut t = t0;
        let mut h = self.h.unwrap_or_else(|| {
            let f0 = (self.rhs)(&y).camax();
            if f0 > 0.0 {
                (0.01 * y.camax().max(self.tol.atol) / f0).min(span)
            } else {
                span
            }
        });
        let mut k = [Vec16::zeros(); 7];
        for _ in 0..MAX_STEPS {
            if t >= t1 {
                return Ok(y);
            }
            let last = t + h >= t1;
            let step = if last { t1 - t } else { h };
            for s in 0..7 {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    if A[s][j] != 0.0 {
                        ys += kj.scale(A[s][j] * step);
                    }
                }
                k[s] = (self.rhs)(&ys);
            }
            let mut y5 = y;
            let mut err = Vec16::zeros();
            for s in 0..7 {
                y5 += k[s].scale(B5[s] * step);
                err += k[s].scale((B5[s] - B4[s]) * step);
            }
            let ratio = err
                .iter()
                .zip(y.iter().zip(y5.iter()))
                .map(|(e, (a, b))| {
                    e.norm() / (self.tol.atol + self.tol.rtol * a.norm().max(b.norm()))
                })
                .fold(0.0, f64::max);
            let factor = if ratio == 0.0 {
                5.0
            } else {
                (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
            };
            if ratio <= 1.0 {
                t = if last { t1 } else { t + step };
                y = y5;
                if !last {
                    h = step * factor;
                }
                self.h = Some(h);
            } else {
                h = step * factor;
            }
        }
        Err(Error::NumericalFailure(format!(
            "Runge–Kutta exceeded {MAX_STEPS} steps"
        )))
    }
}

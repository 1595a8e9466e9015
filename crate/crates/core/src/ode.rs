//! Explicit Runge-Kutta integrators for small fixed-size systems.
//!
//! [`integrate_adaptive`] is the Dormand-Prince 5(4) pair with FSAL and a
//! standard proportional step controller. [`integrate_fixed`] is the classical
//! fourth-order scheme on a uniform grid, for smooth problems where a dense
//! uniform trajectory is wanted and the step can be chosen up front.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const INITIAL_STEP: f64 = 1e-2;
const MAX_STEPS: usize = 50_000_000;

fn combine<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (coef, k) in terms {
            acc += coef * k[i];
        }
        *o += h * acc;
    }
    out
}

/// Integrates `y' = f(x, y)` from `x0` to `x1` (either direction).
///
/// `observe` sees every accepted step and may abort the integration by
/// returning an error. A failing right-hand side inside a trial step rejects
/// the step; the error is only surfaced if the step size underflows.
pub fn integrate_adaptive<const N: usize, F, O>(
    mut f: F,
    x0: f64,
    y0: [f64; N],
    x1: f64,
    tol: Tolerance,
    mut observe: O,
) -> Result<[f64; N]>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    O: FnMut(f64, &[f64; N]) -> Result<()>,
{
    if x1 == x0 {
        return Ok(y0);
    }
    let dir = (x1 - x0).signum();
    let mut x = x0;
    let mut y = y0;
    let mut h = dir * INITIAL_STEP.min((x1 - x0).abs());
    let mut k1 = f(x, &y)?;
    let mut last_failure: Option<Error> = None;

    for _ in 0..MAX_STEPS {
        let remaining = x1 - x;
        if remaining * dir <= 0.0 {
            return Ok(y);
        }
        let last = h.abs() >= remaining.abs();
        if last {
            h = remaining;
        }
        let min_step = 1e-14 * x.abs().max(1.0);
        if h.abs() < min_step && !last {
            return Err(last_failure.unwrap_or(Error::StepUnderflow { x, step: h }));
        }

        let trial = (|| -> Result<([f64; N], [f64; N], f64)> {
            let k2 = f(x + C2 * h, &combine(&y, h, &[(A21, &k1)]))?;
            let k3 = f(x + C3 * h, &combine(&y, h, &[(A31, &k1), (A32, &k2)]))?;
            let k4 = f(
                x + C4 * h,
                &combine(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
            )?;
            let k5 = f(
                x + C5 * h,
                &combine(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            )?;
            let k6 = f(
                x + h,
                &combine(
                    &y,
                    h,
                    &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                ),
            )?;
            let y_new = combine(
                &y,
                h,
                &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
            );
            let k7 = f(x + h, &y_new)?;
            let mut err = 0.0f64;
            for i in 0..N {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = tol.abs + tol.rel * y[i].abs().max(y_new[i].abs());
                err = err.max((e / scale).abs());
            }
            Ok((y_new, k7, err))
        })();

        match trial {
            Ok((y_new, k7, err)) if err <= 1.0 => {
                x = if last { x1 } else { x + h };
                y = y_new;
                k1 = k7;
                observe(x, &y)?;
                let factor = if err == 0.0 {
                    MAX_FACTOR
                } else {
                    (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
                };
                h *= factor;
                last_failure = None;
            }
            Ok((_, _, err)) => {
                h *= (SAFETY * err.powf(-0.2)).max(MIN_FACTOR);
            }
            Err(e) => {
                last_failure = Some(e);
                h *= 0.25;
            }
        }
        if h.abs() < min_step {
            return Err(last_failure.unwrap_or(Error::StepUnderflow { x, step: h }));
        }
    }
    Err(Error::StepUnderflow { x, step: h })
}

/// Classical RK4 on `steps` uniform steps; returns every grid node including
/// both end points.
pub fn integrate_fixed<const N: usize, F>(
    mut f: F,
    x0: f64,
    y0: [f64; N],
    x1: f64,
    steps: usize,
) -> Result<Vec<(f64, [f64; N])>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let steps = steps.max(1);
    let h = (x1 - x0) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push((x0, y));
    for i in 0..steps {
        let x = x0 + i as f64 * h;
        let k1 = f(x, &y)?;
        let k2 = f(x + 0.5 * h, &combine(&y, h, &[(0.5, &k1)]))?;
        let k3 = f(x + 0.5 * h, &combine(&y, h, &[(0.5, &k2)]))?;
        let k4 = f(x + h, &combine(&y, h, &[(1.0, &k3)]))?;
        y = combine(
            &y,
            h,
            &[
                (1.0 / 6.0, &k1),
                (1.0 / 3.0, &k2),
                (1.0 / 3.0, &k3),
                (1.0 / 6.0, &k4),
            ],
        );
        out.push((x0 + (i + 1) as f64 * h, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TIGHT: Tolerance = Tolerance {
        rel: 1e-11,
        abs: 1e-11,
    };

    #[test]
    fn exponential_growth() {
        let y =
            integrate_adaptive(|_, y| Ok([y[0]]), 0.0, [1.0], 2.0, TIGHT, |_, _| Ok(())).unwrap();
        assert!((y[0] - 2.0f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn harmonic_oscillator_backwards() {
        let y = integrate_adaptive(
            |_, y| Ok([y[1], -y[0]]),
            0.0,
            [0.0, 1.0],
            -3.0,
            TIGHT,
            |_, _| Ok(()),
        )
        .unwrap();
        assert!((y[0] - (-3.0f64).sin()).abs() < 1e-9);
        assert!((y[1] - (-3.0f64).cos()).abs() < 1e-9);
    }

    #[test]
    fn zero_length_is_identity() {
        let y = integrate_adaptive(
            |_, _| Ok([1.0, 2.0]),
            1.0,
            [3.0, 4.0],
            1.0,
            TIGHT,
            |_, _| Ok(()),
        )
        .unwrap();
        assert_eq!(y, [3.0, 4.0]);
    }

    #[test]
    fn lands_exactly_on_end() {
        let mut last_x = f64::NAN;
        integrate_adaptive(
            |_, y| Ok([-y[0]]),
            0.3,
            [1.0],
            7.1,
            TIGHT,
            |x, _| {
                last_x = x;
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(last_x, 7.1);
    }

    #[test]
    fn persistent_rhs_failure_surfaces() {
        let r = integrate_adaptive(
            |x, _| {
                if x > 0.5 {
                    Err(Error::AmplitudeCollapse { x, amplitude: 0.0 })
                } else {
                    Ok([1.0])
                }
            },
            0.0,
            [0.0],
            1.0,
            TIGHT,
            |_, _| Ok(()),
        );
        assert!(matches!(r, Err(Error::AmplitudeCollapse { .. })));
    }

    #[test]
    fn rk4_fourth_order() {
        let err = |n| {
            let traj = integrate_fixed(|_, y| Ok([y[1], -y[0]]), 0.0, [0.0, 1.0], 1.0, n).unwrap();
            (traj.last().unwrap().1[0] - 1.0f64.sin()).abs()
        };
        let ratio = err(20) / err(40);
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }
}

use super::SpecFunError;

const MAX_ITER: usize = 50;

/// Principal branch W₀(x) of the Lambert W function for x ≥ 0.
///
/// Halley iteration on `w e^w − x` starting from `ln(1 + x)`; the result
/// satisfies `|w e^w − x| ≤ 1e-14 (1 + x)`.
pub fn lambert_w0(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x < 0.0 {
        return Err(SpecFunError::domain("lambert_w0", x, "finite x >= 0"));
    }
    let tol = 1e-14 * (1.0 + x);
    let mut w = x.ln_1p();
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let residual = w * ew - x;
        if residual.abs() <= tol {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let step = residual / (ew * wp1 - (w + 2.0) * residual / (2.0 * wp1));
        w -= step;
    }
    Err(SpecFunError::NoConvergence {
        function: "lambert_w0",
        argument: x.to_string(),
        iterations: MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn omega_constant_matches_bisection() {
        // bisection on w e^w = 1
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid.exp() < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let w = lambert_w0(1.0).unwrap();
        assert!((w - lo).abs() < 1e-15);
        assert!((w - 0.567_143_290_409_784).abs() < 1e-15);
    }

    #[test]
    fn residual_on_log_grid() {
        let mut grid = vec![0.0];
        grid.extend((0..=240).map(|i| 10f64.powf(-12.0 + i as f64 * 0.075)));
        for x in grid {
            let w = lambert_w0(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-14 * (1.0 + x), "x={x}");
        }
    }

    #[test]
    fn negative_rejected() {
        assert!(lambert_w0(-0.1).is_err());
        assert!(lambert_w0(f64::INFINITY).is_err());
    }
}

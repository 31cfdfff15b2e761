use super::constants::{FRAC_2_SQRT_PI, SQRT_PI};
use super::{ComplexValue, SpecFunError};

/// Largest |z| accepted by the complex error functions.
pub const ERF_WINDOW: f64 = 6.0;

const TERM_TOL: f64 = 1e-18;
const MAX_TERMS: usize = 2_000;
/// Where the real functions hand over from the series to the continued fraction.
const ERFC_SPLIT: f64 = 3.0;

/// erf(z) for complex |z| ≤ 6.
///
/// Two power series are used, both summed until the term magnitude drops
/// below `1e-18 · (1 + |partial sum|)`:
///
/// * the Maclaurin series `Σ (-1)^k z^(2k+1) / (k! (2k+1))` when |Im z| ≥ |Re z|;
/// * the Kummer form `z e^(-z²) Σ (2z²)^k / (2k+1)!!` otherwise.
///
/// The rounding error of the Maclaurin series grows like `e^(x² + y²)` while
/// the Kummer form grows like `e^(2y²)`, so picking by the larger component
/// keeps the cancellation bounded by `e^(min(...))`. On the real and imaginary
/// axes the real series [`erf`] and [`erfi`] are used directly.
pub fn erf_complex(z: ComplexValue) -> Result<ComplexValue, SpecFunError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(SpecFunError::domain("erf", z, "finite argument"));
    }
    if z.norm() > ERF_WINDOW {
        return Err(SpecFunError::domain("erf", z, "|z| <= 6"));
    }
    // on the axes both series reduce to their real twins
    let value = if z.im == 0.0 {
        ComplexValue::new(erf(z.re), z.im)
    } else if z.re == 0.0 {
        ComplexValue::new(z.re, erfi(z.im))
    } else if z.im.abs() < z.re.abs() {
        kummer_complex(z)?
    } else {
        maclaurin_complex(z)?
    };
    Ok(value)
}

/// erfc(z) = 1 − erf(z) on the same window as [`erf_complex`].
pub fn erfc_complex(z: ComplexValue) -> Result<ComplexValue, SpecFunError> {
    Ok(ComplexValue::new(1.0, 0.0) - erf_complex(z)?)
}

/// erfi(z) = −i · erf(i z).
pub fn erfi_complex(z: ComplexValue) -> Result<ComplexValue, SpecFunError> {
    let iz = ComplexValue::new(-z.im, z.re);
    let w = erf_complex(iz)?;
    Ok(ComplexValue::new(w.im, -w.re))
}

fn maclaurin_complex(z: ComplexValue) -> Result<ComplexValue, SpecFunError> {
    let neg_z2 = -(z * z);
    let mut power = z;
    let mut sum = z;
    for k in 1..MAX_TERMS {
        power = power * neg_z2 / k as f64;
        let term = power / (2 * k + 1) as f64;
        sum += term;
        if term.norm() < TERM_TOL * (1.0 + sum.norm()) {
            return Ok(sum * FRAC_2_SQRT_PI);
        }
    }
    Err(no_convergence(z))
}

fn kummer_complex(z: ComplexValue) -> Result<ComplexValue, SpecFunError> {
    let two_z2 = z * z * 2.0;
    let mut term = ComplexValue::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..MAX_TERMS {
        term = term * two_z2 / (2 * k + 1) as f64;
        sum += term;
        if term.norm() < TERM_TOL * (1.0 + sum.norm()) {
            return Ok(z * (-(z * z)).exp() * sum * FRAC_2_SQRT_PI);
        }
    }
    Err(no_convergence(z))
}

fn no_convergence(z: ComplexValue) -> SpecFunError {
    SpecFunError::NoConvergence {
        function: "erf",
        argument: z.to_string(),
        iterations: MAX_TERMS,
    }
}

/// Real erf, defined on the whole line.
///
/// For |x| ≤ 3 this is the real-arithmetic twin of the Kummer series in
/// [`erf_complex`]; beyond, `1 − erfc` with the continued fraction.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    let magnitude = if ax == f64::INFINITY {
        1.0
    } else if ax <= ERFC_SPLIT {
        kummer_real(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    magnitude.copysign(x)
}

/// Real erfc. Uses `1 − erf` on [−3, 3] and the continued fraction beyond.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x.is_infinite() {
        return if x > 0.0 { 0.0 } else { 2.0 };
    }
    if x > ERFC_SPLIT {
        erfc_continued_fraction(x)
    } else if x < -ERFC_SPLIT {
        2.0 - erfc_continued_fraction(-x)
    } else {
        1.0 - erf(x)
    }
}

/// Real erfi. Overflows to ±∞ once e^(x²) leaves the f64 range.
pub fn erfi(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    if ax > 26.7 {
        return f64::INFINITY.copysign(x);
    }
    let x2 = ax * ax;
    let mut power = ax;
    let mut sum = ax;
    for k in 1..20_000 {
        power *= x2 / k as f64;
        let term = power / (2 * k + 1) as f64;
        sum += term;
        if term < TERM_TOL * sum {
            break;
        }
    }
    (sum * FRAC_2_SQRT_PI).copysign(x)
}

fn kummer_real(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        term *= two_x2 / (2 * k + 1) as f64;
        sum += term;
        if term < TERM_TOL * sum {
            break;
        }
    }
    FRAC_2_SQRT_PI * x * (-x * x).exp() * sum
}

/// erfc(x) for x ≳ 3 via the Laplace continued fraction, evaluated with
/// the modified Lentz algorithm.
fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for j in 1..1_000 {
        let a = 0.5 * j as f64;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (SQRT_PI * f)
}

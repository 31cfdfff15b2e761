use super::constants::{APERY_ZETA3, EULER_GAMMA, PI};
use super::SpecFunError;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real x > 0 (Lanczos, g = 7, nine coefficients).
///
/// Arguments below 1/2 are shifted up with Γ(x) = Γ(x + 1) / x, so the
/// rational part is only ever evaluated on [1/2, ∞).
pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecFunError::domain("gamma", x, "finite x > 0"));
    }
    let value = if x < 0.5 { lanczos(x + 1.0) / x } else { lanczos(x) };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SpecFunError::domain("gamma", x, "result overflows f64"))
    }
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * series
}

/// Truncated Laurent expansion of Γ about zero.
///
/// `order` counts the terms kept after the pole: 0 gives `1/z`, 1 adds `-γ`,
/// 2 adds the linear term and 3 the quadratic one.
pub fn gamma_laurent(z: f64, order: u32) -> Result<f64, SpecFunError> {
    if order > 3 {
        return Err(SpecFunError::domain("gamma_laurent", order, "order in 0..=3"));
    }
    if !z.is_finite() || z == 0.0 || z.abs() >= 1.0 {
        return Err(SpecFunError::domain("gamma_laurent", z, "0 < |z| < 1"));
    }
    let g = EULER_GAMMA;
    let coeffs = [
        -g,
        0.5 * (g * g + PI * PI / 6.0),
        -(g * g * g + g * PI * PI / 2.0 + 2.0 * APERY_ZETA3) / 6.0,
    ];
    let mut value = 1.0 / z;
    let mut power = 1.0;
    for c in coeffs.iter().take(order as usize) {
        value += c * power;
        power *= z;
    }
    Ok(value)
}

/// Leading behaviour Γ(1/n) ≈ n − γ for large n.
pub fn gamma_reciprocal_asymptotic(n: f64) -> Result<f64, SpecFunError> {
    if !n.is_finite() || n < 2.0 {
        return Err(SpecFunError::domain("gamma_reciprocal_asymptotic", n, "n >= 2"));
    }
    Ok(n - EULER_GAMMA)
}

/// ψ(1/2) = −γ − 2 ln 2.
pub fn digamma_half() -> f64 {
    -EULER_GAMMA - 2.0 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn small_integers_are_factorials() {
        let mut fact = 1.0;
        for n in 1..=15 {
            assert!(rel(gamma(n as f64).unwrap(), fact) < 1e-14, "n={n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn reference_values() {
        // 40-digit reference values
        let cases = [
            (0.5, 1.772_453_850_905_516),
            (0.25, 3.625_609_908_221_908),
            (0.2, 4.590_843_711_998_803),
            (1.0 / 3.0, 2.678_938_534_707_747_6),
            (0.1, 9.513_507_698_668_732),
            (0.05, 19.470_085_311_255_513),
            (0.01, 99.432_585_119_150_6),
            (7.5, 1_871.254_305_797_788_3),
            (50.0, 6.082_818_640_342_675e62),
        ];
        for (x, expected) in cases {
            let got = gamma(x).unwrap();
            assert!(rel(got, expected) < 1e-13, "gamma({x}) = {got}, want {expected}");
        }
    }

    #[test]
    fn rejects_nonpositive_and_nonfinite() {
        for x in [0.0, -1.0, -0.5, f64::NAN, f64::INFINITY] {
            assert!(gamma(x).is_err(), "{x}");
        }
        assert!(gamma(200.0).is_err());
    }

    #[test]
    fn laurent_low_orders() {
        let z = 0.3;
        assert_eq!(gamma_laurent(z, 0).unwrap(), 1.0 / z);
        assert!((gamma_laurent(z, 1).unwrap() - (1.0 / z - EULER_GAMMA)).abs() < 1e-15);
        assert!(gamma_laurent(0.0, 2).is_err());
        assert!(gamma_laurent(1.0, 2).is_err());
        assert!(gamma_laurent(0.5, 4).is_err());
    }

    #[test]
    fn laurent_remainder_shrinks_toward_zero() {
        let diff = |z: f64| (gamma_laurent(z, 3).unwrap() - gamma(z).unwrap()).abs();
        assert!(diff(0.1) < 2e-3);
        assert!(diff(0.5) > diff(0.1));
        assert!(diff(0.2) > diff(0.1) && diff(0.1) > diff(0.05));
        // reference remainder Γ_3(0.1) − Γ(0.1) = −8.9255479827630e-4
        assert!((gamma_laurent(0.1, 3).unwrap() - gamma(0.1).unwrap() + 8.925_547_982_763e-4).abs() < 1e-12);
    }

    #[test]
    fn reciprocal_asymptote() {
        let a4 = gamma_reciprocal_asymptotic(4.0).unwrap();
        assert!((a4 - 3.4228).abs() < 1e-4);
        assert!((a4 - 3.6256).abs() < 0.21);
        let a5 = gamma_reciprocal_asymptotic(5.0).unwrap();
        assert!((a5 - 4.4228).abs() < 1e-4);
        assert!((a5 - 4.5908).abs() < 0.17);
        let g = gamma(0.01).unwrap();
        assert!(rel(gamma_reciprocal_asymptotic(100.0).unwrap(), g) < 1e-3);
        assert!(gamma_reciprocal_asymptotic(1.5).is_err());
    }

    #[test]
    fn digamma_half_value_and_derivative() {
        let psi = digamma_half();
        assert!(psi < 0.0);
        assert!((psi + 1.963_510_026_021_423_5).abs() < 1e-15);
        // Γ'(1/2) by central difference, step 1e-6
        let h = 1e-6;
        let fd = (gamma(0.5 + h).unwrap() - gamma(0.5 - h).unwrap()) / (2.0 * h);
        assert!((gamma(0.5).unwrap() * psi - fd).abs() < 1e-4);
        assert!((gamma(0.5).unwrap() * psi + 3.480_230_906_913_262).abs() < 1e-13);
    }
}

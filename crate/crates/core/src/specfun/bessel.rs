use super::SpecFunError;

/// Modified Bessel function of the first kind, I_n(z), for integer n ≥ 0
/// and |z| ≤ 50, by its power series
/// `Σ_k (z/2)^(n+2k) / (k! (n+k)!)`.
///
/// All terms share one sign, so the sum has no cancellation.
pub fn bessel_i(n: i32, z: f64) -> Result<f64, SpecFunError> {
    if n < 0 {
        return Err(SpecFunError::domain("bessel_i", n, "order n >= 0"));
    }
    if !z.is_finite() || z.abs() > 50.0 {
        return Err(SpecFunError::domain("bessel_i", z, "|z| <= 50"));
    }
    let half = 0.5 * z;
    let mut term = 1.0;
    for j in 1..=n {
        term *= half / j as f64;
    }
    let q = half * half;
    let mut sum = term;
    let mut k = 0usize;
    while term.abs() >= 1e-18 * sum.abs() && term != 0.0 {
        k += 1;
        if k > 10_000 {
            return Err(SpecFunError::NoConvergence {
                function: "bessel_i",
                argument: z.to_string(),
                iterations: k,
            });
        }
        term *= q / (k as f64 * (n as f64 + k as f64));
        sum += term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn reference_values() {
        let cases = [
            (0, 0.5, 1.063_483_370_741_323_5),
            (1, 2.0, 1.590_636_854_637_329),
            (2, 0.25, 0.007_853_269_659_864_516),
            (3, -1.5, -0.080_774_113_016_092_3),
        ];
        for (n, z, want) in cases {
            let got = bessel_i(n, z).unwrap();
            assert!(((got - want) / want).abs() < 1e-14, "I_{n}({z}) = {got}");
        }
        let big = bessel_i(0, 50.0).unwrap();
        assert!(((big - 2.932_553_783_849_336e20) / 2.932_553_783_849_336e20).abs() < 1e-13);
    }

    #[test]
    fn domain() {
        assert!(bessel_i(-1, 1.0).is_err());
        assert!(bessel_i(0, 50.5).is_err());
        assert!(bessel_i(0, f64::NAN).is_err());
    }
}

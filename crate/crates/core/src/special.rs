//! Exponential and cosine integrals.

use num_complex::Complex64;

use crate::{Error, Result, EULER_GAMMA};

const SERIES_RADIUS: f64 = 4.0;
const CF_MAX_ITER: usize = 20_000;

/// `E_1(z) = int_z^{z + inf} e^{-w}/w dw` on the principal branch.
///
/// Power series for `|z| <= 4`, modified Lentz evaluation of the continued
/// fraction `e^{-z} / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...)))` beyond.
pub fn e1(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::AtZero);
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::BranchCut);
    }
    if z.norm() <= SERIES_RADIUS {
        Ok(e1_series(z))
    } else {
        e1_cf(z)
    }
}

fn e1_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 1..200 {
        term *= -z / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn e1_cf(z: Complex64) -> Result<Complex64> {
    let tiny = 1e-300;
    let fix = |x: Complex64| if x.norm() == 0.0 { Complex64::new(tiny, 0.0) } else { x };
    let mut f = fix(z + 1.0);
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for n in 1..CF_MAX_ITER {
        let a = -((n * n) as f64);
        let b = z + (2 * n + 1) as f64;
        d = fix(b + d * a).inv();
        c = fix(b + a / c);
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((-z).exp() / f);
        }
    }
    Err(Error::InvalidArgument(alloc::format!(
        "E1 continued fraction did not converge at {z}"
    )))
}

/// `Ci(x) = -int_x^inf cos t / t dt` for `x > 0`.
///
/// Series `gamma + log x + sum (-x^2)^n / (2n (2n)!)` up to 4, then `-Re E_1(ix)`.
pub fn ci(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::InvalidArgument(alloc::format!("Ci needs x > 0, got {x}")));
    }
    if x > SERIES_RADIUS {
        return Ok(-e1_cf(Complex64::new(0.0, x))?.re);
    }
    let x2 = x * x;
    let mut sum = 0.0;
    let mut term = 1.0;
    for n in 1..100 {
        let m = 2 * n;
        term *= -x2 / ((m - 1) * m) as f64;
        let add = term / m as f64;
        sum += add;
        if add.abs() <= 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    Ok(EULER_GAMMA + libm::log(x) + sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn known_values() {
        assert!((e1(c(1.0, 0.0)).unwrap().re - 0.219_383_934_395_520_3).abs() < 1e-14);
        assert!((e1(c(5.0, 0.0)).unwrap().re - 0.001_148_295_591_275_325_9).abs() < 1e-17);
        assert!((ci(1.0).unwrap() - 0.337_403_922_900_968_1).abs() < 1e-14);
        assert!((ci(10.0).unwrap() - (-0.045_456_433_004_455_37)).abs() < 1e-13);
    }

    #[test]
    fn series_and_fraction_agree_near_switch() {
        for &(re, im) in &[(3.9, 0.5), (0.0, 3.95), (-3.0, 2.5), (2.0, -3.4), (1.0, 3.8)] {
            let z = c(re, im);
            let a = e1_series(z);
            let b = e1_cf(z).unwrap();
            assert!((a - b).norm() <= 1e-11 * a.norm(), "{z}: {a} {b}");
        }
    }

    #[test]
    fn cosine_integral_is_real_part() {
        for y in [0.5, 1.0, 2.0] {
            let lhs = e1(c(0.0, y)).unwrap().re;
            assert!((lhs + ci(y).unwrap()).abs() < 1e-13);
        }
        // Im E1(iy) = Si(y) - pi/2
        let si1 = 0.946_083_070_367_183_0;
        assert!((e1(c(0.0, 1.0)).unwrap().im - (si1 - core::f64::consts::FRAC_PI_2)).abs() < 1e-13);
    }

    #[test]
    fn asymptotics_and_errors() {
        let z = c(50.0, 0.0);
        let r = (z * z.exp() * e1(z).unwrap()).re;
        assert!((r - 1.0).abs() < 0.02);
        assert_eq!(e1(c(0.0, 0.0)), Err(Error::AtZero));
        assert_eq!(e1(c(-1.0, 0.0)), Err(Error::BranchCut));
        // conjugate symmetry and the jump across the cut
        let above = e1(c(-2.0, 1e-12)).unwrap();
        let below = e1(c(-2.0, -1e-12)).unwrap();
        assert!((above.im + core::f64::consts::PI).abs() < 1e-9);
        assert!((above - below.conj()).norm() < 1e-12);
    }
}

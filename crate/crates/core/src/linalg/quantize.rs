//! Integer keys for complex numbers, used wherever floating-point data has
//! to be sorted or compared canonically.

use std::f64::consts::TAU;

use num_complex::Complex64;

/// Angle resolution for canonical keys.
pub const ANGLE_RESOLUTION: f64 = 1e-8;
/// Modulus resolution for canonical keys.
pub const MODULUS_RESOLUTION: f64 = 1e-8;

const ZERO_MODULUS: f64 = 1e-12;

/// Principal angle in `[0, 2π)`.
pub fn principal_angle(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Quantized principal angle; numbers within [`ANGLE_RESOLUTION`] of `2π`
/// wrap to zero, and numbers with vanishing modulus get key 0.
pub fn angle_key(z: Complex64) -> i64 {
    if z.norm() < ZERO_MODULUS {
        return 0;
    }
    let full = (TAU / ANGLE_RESOLUTION).round() as i64;
    ((principal_angle(z) / ANGLE_RESOLUTION).round() as i64).rem_euclid(full)
}

/// Quantized angle of a real angle difference, wrapped into `[0, 2π)`.
pub fn angle_diff_key(theta: f64) -> i64 {
    let full = (TAU / ANGLE_RESOLUTION).round() as i64;
    ((theta.rem_euclid(TAU) / ANGLE_RESOLUTION).round() as i64).rem_euclid(full)
}

pub fn modulus_key(z: Complex64) -> i64 {
    (z.norm() / MODULUS_RESOLUTION).round() as i64
}

/// `(angle, modulus)` key used to order eigenvalues.
pub fn eigenvalue_key(z: Complex64) -> (i64, i64) {
    (angle_key(z), modulus_key(z))
}

/// Lexicographic key of a vector by quantized real and imaginary parts.
pub fn vector_key(v: &[Complex64]) -> Vec<(i64, i64)> {
    v.iter()
        .map(|z| {
            (
                (z.re / MODULUS_RESOLUTION).round() as i64,
                (z.im / MODULUS_RESOLUTION).round() as i64,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_near_two_pi_wrap_to_zero() {
        let just_below = Complex64::from_polar(1.0, -1e-14);
        assert_eq!(angle_key(just_below), 0);
        assert_eq!(angle_key(Complex64::new(1.0, 0.0)), 0);
        assert_eq!(angle_key(Complex64::new(-1.0, 0.0)), (std::f64::consts::PI / 1e-8).round() as i64);
    }
}

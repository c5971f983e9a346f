//! Principal complex roots and small polynomial solvers.

use num_complex::Complex64;

/// Principal square root.
pub(crate) fn sqrt(z: Complex64) -> Complex64 {
    z.sqrt()
}

/// Principal cube root (`|z|^{1/3} e^{i arg z / 3}`).
pub(crate) fn cbrt(z: Complex64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return z;
    }
    Complex64::from_polar(z.norm().cbrt(), z.arg() / 3.0)
}

/// Principal fourth root.
pub(crate) fn root4(z: Complex64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return z;
    }
    Complex64::from_polar(z.norm().sqrt().sqrt(), z.arg() / 4.0)
}

/// `e^{2πik/3}`.
pub(crate) fn omega(k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0)
}

/// `i^k`.
pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The three roots of `x³ + p x + q = 0` (Cardano, then two Newton steps).
pub(crate) fn depressed_cubic_roots(p: Complex64, q: Complex64) -> [Complex64; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let disc = (q * 0.5).powi(2) + (p / 3.0).powi(3);
    let s = sqrt(disc);
    let (a, b) = (-q * 0.5 + s, -q * 0.5 - s);
    let w = if a.norm() >= b.norm() { a } else { b };
    let c = cbrt(w);
    let mut roots = [zero; 3];
    for (k, r) in roots.iter_mut().enumerate() {
        let ck = c * omega(k as u32);
        *r = if ck.norm() == 0.0 { zero } else { ck - p / (3.0 * ck) };
        for _ in 0..2 {
            let f = *r * *r * *r + p * *r + q;
            let df = 3.0 * *r * *r + p;
            if df.norm() > 1e-300 {
                let step = f / df;
                if step.is_finite() {
                    *r -= step;
                }
            }
        }
    }
    roots
}

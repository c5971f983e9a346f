#![no_main]

use libfuzzer_sys::fuzz_target;
use su2frames::recover::{norm_from_surface_branches, recover_groupset};
use su2frames::{Complex64, SurfacePoint};

fuzz_target!(|data: &[u8]| {
    if data.len() < 48 {
        return;
    }
    let x: Vec<f64> = data.chunks_exact(8).take(6).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    if x.iter().any(|v| !v.is_finite() || v.abs() > 1e12) {
        return;
    }
    let p = SurfacePoint::octa(Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3]), Complex64::new(x[4], x[5]));
    let _ = norm_from_surface_branches(&p);
    if let Ok(set) = recover_groupset(&p) {
        assert!(set.len() <= 96);
    }
});

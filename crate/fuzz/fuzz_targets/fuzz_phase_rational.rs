#![no_main]

use libfuzzer_sys::fuzz_target;
use num_complex::Complex64;
use qwalk_core::spectral::{fraction_to_rational, phase_to_rational};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fuzz_target!(|data: [u8; 16]| {
    let re = f64::from_le_bytes(data[..8].try_into().unwrap());
    let im = f64::from_le_bytes(data[8..].try_into().unwrap());
    let z = Complex64::new(re, im);
    match phase_to_rational(z, 4096, 1e-9) {
        Ok(Some(r)) => {
            assert!(r.n >= 1 && r.n <= 4096);
            assert!(r.m < r.n || (r.m, r.n) == (0, 1));
            assert_eq!(gcd(r.m, r.n), if r.m == 0 { r.n } else { 1 });
            assert!(r.residual < 1e-9);
        }
        Ok(None) => {}
        Err(_) => assert!(z.norm().is_nan() || (z.norm() - 1.0).abs() >= 1e-9),
    }
    if re.is_finite() {
        let x = re.rem_euclid(1.0);
        if let Some(r) = fraction_to_rational(x, 4096, 1e-9) {
            assert!(r.residual < 1e-9);
        }
    }
});

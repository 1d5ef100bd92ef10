#![no_main]

use libfuzzer_sys::fuzz_target;
use qwalk_core::parse::parse_coin_spec;
use qwalk_core::walk::build_coin;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    for any_angle in [false, true] {
        if let Ok(p) = parse_coin_spec(s, any_angle) {
            assert!((0.0..=1.0).contains(&p.rho()));
            assert!(p.alpha().is_finite() && p.beta().is_finite());
            assert!(build_coin(&p).unwrap().unitarity_deviation() < 1e-12);
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use qwalk_core::parse::parse_sequence_spec;
use qwalk_core::walk::evolve_sequence;
use qwalk_core::WalkerState;

fuzz_target!(|data: &[u8]| {
    let Some((&k, rest)) = data.split_first() else {
        return;
    };
    let k = 1 + (k % 8) as usize;
    let Ok(s) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(seq) = parse_sequence_spec(s, k, true) {
        assert!(!seq.is_empty());
        let traj = evolve_sequence(
            &WalkerState::initial(k).unwrap(),
            &seq,
            2 * seq.len().min(16),
        )
        .unwrap();
        for state in traj {
            assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }
});

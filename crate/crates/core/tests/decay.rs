use std::f64::consts::PI;

use proptest::prelude::*;
use qedab::{spontaneous_rate, DecayParams};

#[test]
fn hand_evaluated_rate() {
    // 16αℓ²ω³/(3c²) with ω = 2π·5 GHz, ℓ = 300 nm
    let w: f64 = 2.0 * PI * 5e9;
    let expected = 16.0 * 7.297_352_569_3e-3 * 9e-14 * w.powi(3) / (3.0 * 2.997_924_58e8f64.powi(2));
    let p = DecayParams::new(w, 300e-9, 1.0).unwrap();
    let gamma = spontaneous_rate(&p);
    assert!((gamma / expected - 1.0).abs() < 1e-14);
    assert!((gamma - 1.207).abs() < 0.01);
}

proptest! {
    #[test]
    fn scaling_laws(w in 1e9f64..1e11, l in 1e-8f64..1e-5, sg in 0.01f64..1.0) {
        let base = spontaneous_rate(&DecayParams::new(w, l, sg).unwrap());
        let w2 = spontaneous_rate(&DecayParams::new(2.0 * w, l, sg).unwrap());
        let l3 = spontaneous_rate(&DecayParams::new(w, 3.0 * l, sg).unwrap());
        let s_half = spontaneous_rate(&DecayParams::new(w, l, 0.5 * sg).unwrap());
        prop_assert!((w2 / base - 8.0).abs() < 1e-12 * 8.0);
        prop_assert!((l3 / base - 9.0).abs() < 1e-12 * 9.0);
        prop_assert!((s_half / base - 0.25).abs() < 1e-12);
    }
}

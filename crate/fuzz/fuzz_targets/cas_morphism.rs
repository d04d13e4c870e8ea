#![no_main]

use equivar::cas_cat::{compose, CasMorphism};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = CasMorphism::from_json(s) {
        if let Ok(j) = f.to_json() {
            assert_eq!(CasMorphism::from_json(&j).unwrap(), f);
        }
        let id = CasMorphism::identity(f.target(), f.s());
        if f.terms().count() < 64 {
            assert_eq!(compose(&id, &f).unwrap(), f);
        }
    }
});

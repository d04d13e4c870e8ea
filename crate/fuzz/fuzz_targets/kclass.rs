#![no_main]

use equivar::combinat::parse_symfunc;
use equivar::groth::{KClassRep, KGenClass, KModClass};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_symfunc(s);
    if let Ok(k) = KModClass::from_json(s) {
        let _ = k.to_json();
    }
    if let Ok(v) = serde_json::from_str::<KClassRep>(s) {
        let _ = v.character();
    }
    let _ = serde_json::from_str::<KGenClass>(s);
});

#![no_main]

use equivar::equivariant::{module_from_json, module_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = module_from_json(s) {
        let again = module_from_json(&module_to_json(&m).unwrap()).unwrap();
        assert_eq!(again.dim(), m.dim());
    }
});

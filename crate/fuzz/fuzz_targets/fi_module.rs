#![no_main]

use equivar::fi_layer::{FIModule, FIModuleData};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(d) = FIModuleData::from_json(s) {
        assert_eq!(FIModuleData::from_json(&d.to_json().unwrap()).unwrap(), d);
        if let Ok(m) = FIModule::new(d) {
            let _ = m.dim(2);
        }
    }
});

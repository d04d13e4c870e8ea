#![no_main]

use equivar::homcalc::HomSource;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(h) = HomSource::parse(s) {
        let kind = match h {
            HomSource::P { .. } => "P",
            HomSource::Q { .. } => "Q",
        };
        assert_eq!(HomSource::parse(&format!("{kind},{},{}", h.r(), h.n())).unwrap(), h);
    }
});

#![no_main]

use equivar::truncated_ring::{parse_monomial, RingConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let cfg = RingConfig::new((data[0] % 9) as usize, (data[1] % 5) as usize);
    let Ok(s) = std::str::from_utf8(&data[2..]) else {
        return;
    };
    if let Ok(m) = parse_monomial(s, &cfg) {
        assert_eq!(cfg.unrank(cfg.rank(&m)), m);
    }
});

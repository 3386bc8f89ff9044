#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = holoaut_cli::point::parse_point(s) {
            assert!(!p.is_empty());
            assert!(p.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        }
    }
});

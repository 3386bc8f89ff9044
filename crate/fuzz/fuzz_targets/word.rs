#![no_main]

use holoaut::json::{parse_word, word_to_value};
use holoaut::Complex64;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(w) = parse_word(s) else { return };

    // a decoded word re-encodes to something that decodes to the same word
    let text = word_to_value(&w).to_string();
    assert_eq!(parse_word(&text).ok().as_ref(), Some(&w));

    let z = vec![Complex64::new(0.75, -0.5); w.dim()];
    let _ = w.eval(&z);
    let _ = w.jacobian_det(&z);
    if let Ok(inv) = w.inverse() {
        let _ = inv.eval(&z);
    }
});

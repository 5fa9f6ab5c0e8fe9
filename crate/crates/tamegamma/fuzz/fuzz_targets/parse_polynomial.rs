//! The text parser must never panic, whatever the input: it either
//! produces a polynomial or a positioned error.

#![no_main]

use libfuzzer_sys::fuzz_target;
use tamegamma::parse::parse_polynomial;

fuzz_target!(|text: &str| {
    let _ = parse_polynomial(text, None);
    // Pinning the dimension exercises the bounds checks too.
    let _ = parse_polynomial(text, Some(3));
});

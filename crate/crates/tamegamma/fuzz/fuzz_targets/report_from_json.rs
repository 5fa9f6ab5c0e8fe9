//! The report decoder must never panic, and rendering must be a
//! fixpoint: one decode/encode pass normalizes a document (for example
//! out-of-range floats become null), after which the bytes are stable.

#![no_main]

use libfuzzer_sys::fuzz_target;
use tamegamma::report::Report;

fuzz_target!(|text: &str| {
    let Ok(report) = Report::from_json(text) else {
        return;
    };
    let rendered = report.to_json();
    if let Ok(again) = Report::from_json(&rendered) {
        assert_eq!(again.to_json(), rendered, "rendering is not a fixpoint");
    }
});

#![no_main]
use libfuzzer_sys::fuzz_target;
use semihom_core::exact_serde::{format_rational, parse_rational};

fuzz_target!(|data: &str| {
    if let Some(q) = parse_rational(data) {
        assert_eq!(parse_rational(&format_rational(&q)), Some(q));
    }
});

#![no_main]

use fracolloc_cli::config::{parse_n_list, MAX_LIST};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = parse_n_list(s) {
            assert!(!v.is_empty() && v.len() <= MAX_LIST);
        }
    }
});

#![no_main]

use fracolloc_cli::config::{parse_real_list, MAX_LIST};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = parse_real_list(s) {
            assert!(v.len() <= MAX_LIST);
            assert!(v.iter().all(|x| x.is_finite()));
        }
    }
});

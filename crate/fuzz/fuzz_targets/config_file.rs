#![no_main]

use fracolloc_cli::{parse_config_file, RunConfig};
use libfuzzer_sys::fuzz_target;

// parse and validate only; running a command is out of scope here
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(settings) = parse_config_file(s) {
            let _ = RunConfig::from_settings(&settings);
        }
    }
});

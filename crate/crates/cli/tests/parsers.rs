use std::fs;
use std::path::Path;

use fracolloc_cli::config::{parse_n_list, parse_real_list, MAX_LIST};
use fracolloc_cli::{parse_config_file, RunConfig};
use proptest::prelude::*;

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    fs::read_dir(dir)
        .unwrap()
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect()
}

#[test]
fn corpus_seeds_parse() {
    for s in seeds("param_list") {
        assert!(parse_n_list(&s).is_ok(), "{s:?}");
    }
    for s in seeds("real_list") {
        assert!(parse_real_list(&s).is_ok(), "{s:?}");
    }
    for s in seeds("config_file") {
        let settings = parse_config_file(&s).unwrap();
        assert!(RunConfig::from_settings(&settings).is_ok(), "{s:?}");
    }
}

proptest! {
    #[test]
    fn n_list_never_panics(s in "[0-9.,:= ]{0,24}") {
        if let Ok(v) = parse_n_list(&s) {
            prop_assert!(!v.is_empty() && v.len() <= MAX_LIST);
        }
    }

    #[test]
    fn real_list_never_panics(s in "[-+0-9.,:eEinfa ]{0,24}") {
        if let Ok(v) = parse_real_list(&s) {
            prop_assert!(v.len() <= MAX_LIST && v.iter().all(|x| x.is_finite()));
        }
    }

    #[test]
    fn config_never_panics(s in "(([a-zA-Z_-]{1,10}|N|K) ?= ?[-0-9a-zA-Z.,:]{0,12}\n|#[^\n]{0,8}\n){0,6}") {
        if let Ok(settings) = parse_config_file(&s) {
            let _ = RunConfig::from_settings(&settings);
        }
    }

    #[test]
    fn ranges_expand_inclusively(a in 0usize..200, len in 0usize..50) {
        let v = parse_n_list(&format!("{a}..{}", a + len)).unwrap();
        prop_assert_eq!(v.len(), len + 1);
        prop_assert_eq!(v[0], a);
    }
}

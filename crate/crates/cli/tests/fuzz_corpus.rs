//! Replays the checked-in fuzz seeds through the parsers on stable.

use std::path::PathBuf;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn config_seeds() {
    for (name, text) in seeds("parse_config") {
        let parsed = gaborlab::parse_config(&text);
        assert_eq!(parsed.is_err(), name == "short_window.json", "{name}: {parsed:?}");
    }
}

#[test]
fn group_list_seeds() {
    for (name, text) in seeds("parse_group_list") {
        let ok = gaborlab::parse_group_list(&text).is_ok();
        assert_eq!(ok, !matches!(name.as_str(), "zero" | "empty_part"), "{name}");
    }
}

#[test]
fn report_seeds() {
    for (name, text) in seeds("parse_report") {
        let doc = gaborlab::parse_report(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(doc.schema_version, gaborlab::SCHEMA_VERSION);
    }
}

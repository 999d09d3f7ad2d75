//! The shipped configs describe the same words and groups as the library presets.

use std::path::Path;
use std::process::Command;

fn word(config: &str, len: usize) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(config);
    let o = Command::new(env!("CARGO_BIN_EXE_grich"))
        .args(["word", "--config", path.to_str().unwrap(), "--length", &len.to_string()])
        .output()
        .unwrap();
    assert!(o.status.success());
    String::from_utf8(o.stdout).unwrap().trim_end().to_string()
}

#[test]
fn words_match_presets() {
    use grich::presets;
    let cases = [
        ("fibonacci.toml", presets::fibonacci()),
        ("thue_morse_dihedral.toml", presets::thue_morse()),
        ("t33_dihedral.toml", presets::t33()),
        ("eight_letter.toml", presets::ex8_word()),
        ("six_letter.toml", presets::ex6_word()),
    ];
    for (config, source) in cases {
        assert_eq!(word(config, 300), source.prefix(300).unwrap().to_string(), "{config}");
    }
}

use std::process::Command;

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sasaki-verify")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

#[test]
fn list_checks_prints_every_id_with_reference() {
    let (code, out, _) = cli(&["list-checks"]);
    assert_eq!(code, 0);
    for c in sasaki_core::verifier::registry() {
        assert!(out.contains(c.id), "{}", c.id);
        assert!(out.contains(c.paper_ref), "{}", c.id);
    }
}

#[test]
fn lemma_filter_json_has_four_passing_entries() {
    let (code, out, _) = cli(&["verify", "--filter", "lemma6.3.*", "--point", "1,1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["version"], 1);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries.iter().all(|e| e["status"] == "pass"));
    assert!(entries.iter().all(|e| e.get("wall_time").is_none()));
}

#[test]
fn zero_delta_reports_skips() {
    let (code, out, _) = cli(&["verify", "--filter", "thm4.1.*", "--alpha", "1", "--delta", "0", "--dims", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("SKIP") && out.contains("δ=0 excluded"), "{out}");
}

#[test]
fn square_root_gating() {
    let (code, out, _) = cli(&["verify", "--filter", "thm3.6.*", "--point", "2,3", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("αδ not a rational square"), "{out}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cli(&["verify", "--filter", "nonexistent.*", "--point", "1,1"]).0, 2);
    assert_eq!(cli(&["verify", "--alpha", "1/0"]).0, 2);
    assert_eq!(cli(&["verify", "--alpha", "x"]).0, 2);
    assert_eq!(cli(&["verify", "--point", "1"]).0, 2);
    assert_eq!(cli(&["verify", "--dims", "9", "--point", "1,1"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
}

#[test]
fn json_output_is_reproducible_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("sasaki-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for p in [&a, &b] {
        let args = ["verify", "--filter", "prop2.*", "--point", "1,4", "--point", "-1,-4", "--format", "json", "--out", p.to_str().unwrap()];
        assert_eq!(cli(&args).0, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

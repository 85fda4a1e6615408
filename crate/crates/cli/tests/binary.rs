use std::io::Write;
use std::process::{Command, Output};

fn skdv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skdv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn iterate_keeps_the_invariants() {
    let o = skdv(&["iterate", "--point", "0,0,2,0", "--h", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("I1 = -4  I2 = 8").count(), 3, "{s}");
}

#[test]
fn iterate_reports_the_pole() {
    let o = skdv(&["iterate", "--point", "0,0,1,0", "--h", "1", "--n", "3"]);
    assert!(stdout(&o).contains("orbit truncated: step 1"));
}

#[test]
fn zero_steps_is_the_input() {
    let o = skdv(&["iterate", "--point", "1/2,-3,0,7", "--h", "2/5", "--n", "0", "--csv"]);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 2, "{s}");
    assert!(s.lines().nth(1).unwrap().starts_with("0,1/2,-3,0,7,"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(skdv(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(skdv(&["iterate", "--h", "one"]).status.code(), Some(2));
    assert_eq!(skdv(&["track-singularity", "seq99"]).status.code(), Some(2));
    assert_eq!(skdv(&["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn verify_emits_json_with_metadata() {
    let o = skdv(&["verify", "invariants", "reversibility", "--json", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["seed"], 9);
    for r in v["reports"].as_array().unwrap() {
        assert!(r["claim"].as_str().is_some_and(|c| !c.is_empty()));
        assert!(r["elapsed_ms"].is_u64());
        assert!(r["version"].is_string());
    }
}

#[test]
fn degree_rows_as_csv() {
    let o = skdv(&["degrees", "--n", "4", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("n,d_a,d_b,predicted_a,predicted_b,match"));
    assert_eq!(s.lines().count(), 6);
    assert!(s.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn tracker_table_for_a_germ() {
    let o = skdv(&["track-singularity", "confined", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("classification: confined after 4 steps"));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = std::env::temp_dir().join(format!("skdv-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "seed = 4\nn_max = 3\ntrials = 3\nh = \"5/2\"").unwrap();
    let p = path.to_str().unwrap();
    let o = skdv(&["degrees", "--config", p, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 4);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 4);
    let o = skdv(&["degrees", "--config", p, "--n", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 3);
    std::fs::write(&path, "bogus_key = 1\n").unwrap();
    assert_eq!(skdv(&["degrees", "--config", p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

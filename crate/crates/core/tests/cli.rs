use std::process::{Command, Output};

fn sturmian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturmian"))
        .args(args)
        .env_remove("STURMIAN_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn word() {
    let o = sturmian(&["word", "fib", "--length", "21"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "abaababaabaababaababa");

    let o = sturmian(&["word", "fib", "--length", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "");

    assert_eq!(stdout(&sturmian(&["word", "2,(1)", "--length", "4"])).trim(), "aaba");
}

#[test]
fn repr_modes() {
    assert_eq!(
        stdout(&sturmian(&["repr", "fib", "14", "--mode", "ostrowski"])).trim(),
        "100001"
    );

    let o = sturmian(&["repr", "fib", "14", "--mode", "normalize", "1300", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 4);
    assert_eq!(v["end"]["digits_msf"], serde_json::json!([1, 0, 0, 0, 0, 1]));

    assert_eq!(
        stdout(&sturmian(&["repr", "fib", "0", "--mode", "enumerate"])).trim(),
        "0"
    );

    let o = sturmian(&["repr", "fib", "15", "--mode", "normalize", "1300"]);
    assert_eq!(o.status.code(), Some(2));
    let o = sturmian(&["repr", "fib", "14", "--mode", "normalize", "13x0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn pal() {
    let o = sturmian(&["pal", "fib", "12", "13", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pair"]["r1"]["digits_msf"], serde_json::json!([1, 2, 0, 1]));
    assert_eq!(v["pair"]["r2"]["digits_msf"], serde_json::json!([1, 2, 1, 0]));
    assert_eq!(v["pair"]["m"], 1);

    let o = sturmian(&["pal", "fib", "7", "9", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pair"]["r1"]["value"], 7);
    assert_eq!(v["pair"]["r2"]["value"], 9);

    let o = sturmian(&["pal", "fib", "0", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a palindrome"));
}

#[test]
fn witness() {
    let o = sturmian(&["witness", "8,8,(1)", "1", "--verify", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"]["N"], 40);
    assert!(v["report"]["pal_len"].as_u64().unwrap() >= 2);

    assert_eq!(sturmian(&["witness", "fib", "1"]).status.code(), Some(2));

    let o = sturmian(&["witness", "(14)", "2", "--verify", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["report"]["pal_len"].as_u64().unwrap() >= 3);
}

#[test]
fn experiment_csv() {
    let o = sturmian(&["experiment", "(20)", "--max-q", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("Q,N,positions,pal_len,runtime_ms"));
    for (q, line) in (1u64..).zip(lines) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0], q.to_string());
        assert!(cols[3].parse::<u64>().unwrap() > q);
    }
}

#[test]
fn audit_and_length() {
    let o = sturmian(&["length", "fib", "--length", "100", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["length"], 100);

    let o = sturmian(&["audit", "8,8,(1)", "40", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["free_changes_only"], true);

    assert_eq!(
        sturmian(&["audit", "fib", "5", "--cuts", "0,2,5"]).status.code(),
        Some(1)
    );
}

#[test]
fn selfcheck_is_seeded() {
    let a = sturmian(&["selfcheck", "--seed", "3", "--families", "2", "--max-n", "40"]);
    let b = sturmian(&["selfcheck", "--seed", "3", "--families", "2", "--max-n", "40"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(sturmian(&["word", "1,x", "--length", "3"]).status.code(), Some(1));
    assert_eq!(sturmian(&["word"]).status.code(), Some(1));
    assert_eq!(
        sturmian(&["word", "fib", "--length", "100", "--budget", "10"])
            .status
            .code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_sturmian"))
        .args(["word", "fib", "--length", "100"])
        .env("STURMIAN_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

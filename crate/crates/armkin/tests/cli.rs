use std::f64::consts::FRAC_PI_2;
use std::process::{Command, Output};

fn armkin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_armkin"))
        .args(args)
        .output()
        .expect("run armkin")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn reach_prints_interval() {
    let out = armkin(&["reach", "--lengths", "5,1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "lo=3 hi=7");
}

#[test]
fn classify_prints_topology() {
    let out = armkin(&["classify", "--lengths", "2,2,1", "--z", "0.5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "components=2 block=LT_BOT class=III");
}

#[test]
fn classify_outside_reach() {
    let out = armkin(&["classify", "--lengths", "5,1,1", "--z", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "components=0 block=UNREACHABLE class=I"
    );
}

#[test]
fn solve_json_two_configurations() {
    let out = armkin(&[
        "solve",
        "--lengths",
        "2,2",
        "--target",
        "2,2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["components"], 2);
    let cfgs: Vec<Vec<f64>> = serde_json::from_value(v["configurations"].clone()).unwrap();
    assert_eq!(cfgs.len(), 2);
    let expect = [[FRAC_PI_2, 0.0], [0.0, FRAC_PI_2]];
    for want in expect {
        assert!(
            cfgs.iter()
                .any(|c| c.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-10)),
            "{cfgs:?}"
        );
    }
}

#[test]
fn solve_csv_rows() {
    let out = armkin(&[
        "solve",
        "--lengths",
        "2,2,1",
        "--target",
        "0.5,0",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["component", "theta0", "theta1", "theta2"]);
    assert_eq!(rdr.records().count(), 2);
}

#[test]
fn solve_unreachable_reports_interval() {
    let out = armkin(&["solve", "--lengths", "5,1,1", "--target", "1,0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"], "unreachable");
    assert_eq!(v["reach"], serde_json::json!([3.0, 7.0]));

    let out = armkin(&[
        "solve",
        "--lengths",
        "5,1,1",
        "--target",
        "1,0",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&out), "status,lo,hi\nunreachable,3,7\n");
}

#[test]
fn sweep_csv_round_trip() {
    let dir = std::env::temp_dir().join(format!("armkin-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let out = armkin(&[
        "sweep",
        "--lengths",
        "2,2,1",
        "--from",
        "0.2",
        "--to",
        "3.2",
        "--steps",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rdr.headers().unwrap().len(), 3 + 2 * 3);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let z: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    let comps: Vec<&str> = rows.iter().map(|r| r.get(2).unwrap()).collect();
    assert_eq!(z, [0.2, 1.2, 2.2, 3.2]);
    assert_eq!(comps, ["2", "2", "2", "1"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_counts_components() {
    let out = armkin(&[
        "oracle",
        "--lengths",
        "2,2,1",
        "--z",
        "0.5",
        "--resolution",
        "64",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "components=2");
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["reach", "--lengths", "5,-1"][..],
        &["reach", "--lengths", "5"],
        &["classify", "--lengths", "2,2,1", "--z", "-1"],
        &["solve", "--lengths", "2,2", "--target", "0,0"],
        &["solve", "--lengths", "2,2", "--target", "1"],
        &[
            "sweep",
            "--lengths",
            "2,2",
            "--from",
            "1",
            "--to",
            "2",
            "--steps",
            "0",
        ],
        &["oracle", "--lengths", "1,1,1,1,1,1", "--z", "1"],
        &["bogus"],
    ] {
        let out = armkin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

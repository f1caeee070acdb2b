use std::process::{Command, Output};

use toader_core::analysis::SharpConstants;

fn toader(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toader"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_examples() {
    for (args, expected) in [
        (["eval", "centroidal", "2", "1"], "1.5555555555555556\n"),
        (["eval", "toader", "1", "1"], "1\n"),
        (["eval", "power:0", "4", "1"], "2\n"),
        (["eval", "contraharmonic", "3", "1"], "2.5\n"),
    ] {
        let o = toader(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o), expected, "{args:?}");
    }
}

#[test]
fn eval_errors_exit_two() {
    for args in [
        vec!["eval", "median", "1", "2"],
        vec!["eval", "toader", "0", "2"],
        vec!["eval", "j:0.3", "1", "2"],
        vec!["eval", "toader", "abc", "2"],
    ] {
        let o = toader(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_main_pair() {
    let o = toader(&[
        "verify",
        "--ids",
        "main_lower,main_upper",
        "--samples",
        "100000",
        "--seed",
        "42",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "id,samples,violations,inconclusive,min_margin,worst_a,worst_b"
    );
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[1], "100000");
        assert_eq!(fields[2], "0", "{line}");
    }
}

#[test]
fn verify_chu_lower() {
    let o = toader(&["verify", "--ids", "chu_lower"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "chu_lower");
    assert_eq!(row[2], "0");
}

#[test]
fn verify_unknown_id_is_usage_error() {
    let o = toader(&["verify", "--ids", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn verify_json_mirrors_csv_fields() {
    let o = toader(&[
        "verify",
        "--ids",
        "main_upper",
        "--samples",
        "500",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &doc.as_array().unwrap()[0];
    for key in [
        "id",
        "samples",
        "violations",
        "inconclusive",
        "min_margin",
        "worst_a",
        "worst_b",
    ] {
        assert!(row.get(key).is_some(), "{key}");
    }
    assert_eq!(row["id"], "main_upper");
    assert_eq!(row["samples"], 500);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--samples", "3000", "--seed", "9"];
    assert_eq!(toader(&args).stdout, toader(&args).stdout);
    let args = ["sharpness", "--grid-points", "17"];
    assert_eq!(toader(&args).stdout, toader(&args).stdout);
}

fn parse_sharpness(text: &str) -> (Vec<Vec<f64>>, Vec<f64>) {
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x_star,iterations,residual");
    let summary_header = lines
        .iter()
        .position(|l| *l == "min_x_star,max_x_star,lambda,mu,clamped")
        .unwrap();
    let parse = |l: &str| {
        l.split(',')
            .map(|f| f.parse::<f64>().unwrap())
            .collect::<Vec<_>>()
    };
    let rows = lines[1..summary_header].iter().map(|l| parse(l)).collect();
    assert_eq!(lines.len(), summary_header + 2);
    (rows, parse(lines[summary_header + 1]))
}

#[test]
fn sharpness_default_run() {
    let c = SharpConstants::get();
    let o = toader(&["sharpness"]);
    assert_eq!(o.status.code(), Some(0));
    let (rows, summary) = parse_sharpness(&stdout(&o));
    assert_eq!(rows.len(), 200);
    assert!((summary[1] - 0.952_691_568_7).abs() < 1e-4);
    assert!((summary[0] - 0.933_012_701_9).abs() < 5e-4);
    assert_eq!(summary[2], c.lambda);
    assert_eq!(summary[3], c.mu);
    assert_eq!(summary[4], 0.0);
}

#[test]
fn sharpness_two_points() {
    let o = toader(&["sharpness", "--grid-points", "2"]);
    let text = stdout(&o);
    let (rows, _) = parse_sharpness(&text);
    assert_eq!(rows.len(), 2);
    assert_eq!(text.lines().count(), 5);
}

fn plot_rows(p: &str, points: &str) -> Vec<(String, [f64; 4])> {
    let o = toader(&["plotdata", "--p", p, "--grid-points", points]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "kind,r,f,f1,f2");
    lines
        .map(|l| {
            let mut it = l.split(',');
            let kind = it.next().unwrap().to_string();
            let v: Vec<f64> = it.map(|f| f.parse().unwrap()).collect();
            (kind, [v[0], v[1], v[2], v[3]])
        })
        .collect()
}

#[test]
fn plotdata_at_mu() {
    let mu = SharpConstants::get().mu.to_string();
    let rows = plot_rows(&mu, "200");
    let grid: Vec<_> = rows.iter().filter(|(k, _)| k == "grid").collect();
    assert_eq!(grid.len(), 200);
    assert!(grid.iter().all(|(_, v)| v[1] <= 1e-13));
    let kinds: Vec<&str> = rows.iter().map(|(k, _)| k.as_str()).collect();
    assert!(kinds.contains(&"r0") && kinds.contains(&"r1"));
}

#[test]
fn plotdata_at_lambda() {
    let lambda = SharpConstants::get().lambda.to_string();
    let rows = plot_rows(&lambda, "200");
    assert!(rows.iter().all(|(k, _)| k == "grid"));
    assert!(rows.iter().all(|(_, v)| v[1] >= 0.0));
}

#[test]
fn plotdata_at_half() {
    for (_, v) in plot_rows("0.5", "50") {
        let k = toader_core::ellipk(toader_core::Modulus::new(v[0]).unwrap()).unwrap();
        assert_eq!(v[3], std::f64::consts::FRAC_2_PI * k);
    }
}

#[test]
fn plotdata_rejects_bad_weight() {
    let o = toader(&["plotdata", "--p", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sharp.json");
    let o = toader(&[
        "sharpness",
        "--grid-points",
        "4",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(doc["records"].as_array().unwrap().len(), 4);
    assert!(doc["summary"]["max_x_star"].as_f64().unwrap() > 0.95);
}

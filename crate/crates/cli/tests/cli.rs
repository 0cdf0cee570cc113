use std::process::{Command, Output};

use serde_json::Value;

use rootgeo::sequence::gen_w;
use rootgeo::{Poly, RecurrenceParams};

fn rootgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootgeo"))
        .args(args)
        .env_remove("ROOTGEO_MAX_N")
        .output()
        .expect("binary runs")
}

fn with_params<'a>(params: [&'a str; 4], rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![
        rest[0], "--a", params[0], "--b", params[1], "--c", params[2], "--d", params[3],
    ];
    v.extend_from_slice(&rest[1..]);
    v
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn gen_round_trips_through_json() {
    for params in [
        ["1", "2", "1", "1"],
        ["10", "1", "2", "239/1000"],
        ["3/2", "0.5", "7", "2"],
    ] {
        let out = rootgeo(&with_params(params, &["gen", "--n-max", "30"]));
        assert_eq!(out.status.code(), Some(0));
        let p = RecurrenceParams::parse(params[0], params[1], params[2], params[3]).unwrap();
        let doc = json_of(&out);
        let polys = doc["polys"].as_array().unwrap();
        assert_eq!(polys.len(), 31);
        for entry in polys {
            let n = entry["n"].as_u64().unwrap() as usize;
            let parsed: Poly = serde_json::from_value(entry["coefficients"].clone()).unwrap();
            assert_eq!(parsed, gen_w(&p, n).unwrap(), "{params:?} n={n}");
        }
    }
}

#[test]
fn gen_csv_matches_json() {
    let params = ["1", "2", "1", "1"];
    let json = json_of(&rootgeo(&with_params(params, &["gen", "--n-max", "12"])));
    let (header, rows) = csv_rows(&rootgeo(&with_params(
        params,
        &["gen", "--n-max", "12", "--format", "csv"],
    )));
    assert_eq!(header, ["n", "k", "coefficient"]);
    for row in rows {
        let n: usize = row[0].parse().unwrap();
        let k: usize = row[1].parse().unwrap();
        assert_eq!(
            json["polys"][n]["coefficients"][k].as_str().unwrap(),
            row[2]
        );
    }
}

#[test]
fn small_example() {
    let out = rootgeo(&with_params(["1", "2", "1", "1"], &["gen", "--n", "2"]));
    let doc = json_of(&out);
    assert_eq!(
        doc["polys"][0]["coefficients"],
        serde_json::json!(["1", "3", "1"])
    );
}

/// One fixture per family tag, with the expected exit code of each
/// subcommand.
#[test]
fn exit_code_contract() {
    let fixtures: [([&str; 4], &str, [i32; 4]); 4] = [
        // classify, verify, interlace, onset
        (["1", "2", "1", "1"], "RealRootedStrict", [0, 0, 0, 2]),
        (["1", "1", "1", "1"], "RealRootedEqual", [0, 0, 0, 2]),
        (
            ["10", "1", "2", "239/1000"],
            "NonRealGuaranteedRealZero",
            [0, 0, 2, 0],
        ),
        (["1", "1", "1", "2"], "NonRealNoGuarantee", [0, 0, 2, 0]),
    ];
    for (params, tag, codes) in fixtures {
        let classify = rootgeo(&with_params(params, &["classify"]));
        assert_eq!(json_of(&classify)["family"]["tag"], tag);
        let runs = [
            classify,
            rootgeo(&with_params(params, &["verify", "--n-max", "12"])),
            rootgeo(&with_params(params, &["interlace", "--n-max", "8"])),
            rootgeo(&with_params(params, &["onset", "--n-max", "12"])),
        ];
        for (out, want) in runs.iter().zip(codes) {
            assert_eq!(
                out.status.code(),
                Some(want),
                "{tag}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            if want == 2 {
                let msg = String::from_utf8_lossy(&out.stderr);
                assert!(msg.contains("interlace") || msg.contains("onset"), "{msg}");
            }
        }
    }
}

#[test]
fn onset_example() {
    let out = rootgeo(&with_params(
        ["10", "1", "2", "239/1000"],
        &["onset", "--n-max", "20"],
    ));
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["class"]["threshold_n"], 5);
    for row in doc["rows"].as_array().unwrap() {
        if row["n"].as_u64().unwrap() >= 5 {
            assert!(row["distinct_real"].as_u64().unwrap() >= 2);
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 5] = [
        &["gen", "--a", "1", "--b", "2", "--c", "1", "--n", "2"],
        &[
            "gen", "--a", "x", "--b", "2", "--c", "1", "--d", "1", "--n", "2",
        ],
        &[
            "gen", "--a", "-1", "--b", "2", "--c", "1", "--d", "1", "--n", "2",
        ],
        &["gen", "--a", "1", "--b", "2", "--c", "1", "--d", "1"],
        &[
            "verify", "--a", "1", "--b", "2", "--c", "1", "--d", "1", "--skip", "nonsense",
        ],
    ];
    for args in cases {
        assert_eq!(rootgeo(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn degree_cap_from_environment() {
    let args = with_params(["1", "2", "1", "1"], &["gen", "--n", "11"]);
    let capped = Command::new(env!("CARGO_BIN_EXE_rootgeo"))
        .args(&args)
        .env("ROOTGEO_MAX_N", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(rootgeo(&args).status.code(), Some(0));
}

fn number(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn root_cloud_csv_matches_json() {
    let params = ["1", "1", "1", "2"];
    let base = ["roots", "--n-min", "5", "--n-max", "9", "--digits", "12"];
    let json = json_of(&rootgeo(&with_params(params, &base)));
    let mut csv_args = base.to_vec();
    csv_args.extend(["--format", "csv"]);
    let (header, rows) = csv_rows(&rootgeo(&with_params(params, &csv_args)));
    assert_eq!(
        header,
        ["n", "re", "im", "radius", "is_real", "multiplicity"]
    );
    let jrows = json["rows"].as_array().unwrap();
    assert_eq!(jrows.len(), rows.len());
    assert_eq!(rows.len(), (5..=9).sum::<usize>());
    for (j, c) in jrows.iter().zip(&rows) {
        assert_eq!(j["n"].as_u64().unwrap(), c[0].parse::<u64>().unwrap());
        for (k, col) in ["re", "im", "radius"].iter().enumerate() {
            assert_eq!(j[col].as_f64().unwrap(), number(&c[k + 1]), "{col}");
        }
        assert_eq!(j["is_real"].as_bool().unwrap(), c[4] == "1");
        assert_eq!(
            j["multiplicity"].as_u64().unwrap(),
            c[5].parse::<u64>().unwrap()
        );
    }
}

fn leaves(prefix: String, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| {
            leaves(
                if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                },
                x,
                out,
            )
        }),
        Value::Array(a) if !a.is_empty() => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| leaves(format!("{prefix}.{i}"), x, out)),
        other => out.push((prefix, other.clone())),
    }
}

#[test]
fn flattened_csv_matches_json() {
    for sub in [
        &["limits", "--n", "12", "--samples", "4"][..],
        &["classify"],
        &["verify", "--n-max", "8"],
    ] {
        let params = ["3", "1", "4", "1"];
        let json = json_of(&rootgeo(&with_params(params, sub)));
        let mut args = sub.to_vec();
        args.extend(["--format", "csv"]);
        let (header, rows) = csv_rows(&rootgeo(&with_params(params, &args)));
        assert_eq!(header, ["path", "value"]);
        let mut expected = Vec::new();
        leaves(String::new(), &json, &mut expected);
        assert_eq!(expected.len(), rows.len(), "{sub:?}");
        for ((path, value), row) in expected.iter().zip(&rows) {
            assert_eq!(path, &row[0]);
            match value {
                Value::Number(n) => assert_eq!(n.as_f64().unwrap(), number(&row[1]), "{path}"),
                Value::String(s) => assert_eq!(s, &row[1]),
                Value::Bool(b) => assert_eq!(if *b { "1" } else { "0" }, row[1]),
                Value::Null => assert!(row[1].is_empty()),
                _ => assert!(row[1] == "[]" || row[1] == "{}", "{path}: {}", row[1]),
            }
        }
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roots.json");
    let params = ["1", "2", "1", "1"];
    let to_file = rootgeo(&with_params(
        params,
        &["roots", "--n", "6", "--output", path.to_str().unwrap()],
    ));
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    let to_stdout = rootgeo(&with_params(params, &["roots", "--n", "6"]));
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}

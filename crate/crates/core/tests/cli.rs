use std::fs;
use std::process::Command;

use serde_json::Value;
use tforge::matrix::GfMatrix;

fn tforge(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_tforge"))
        .args(args)
        .output()
        .expect("spawn tforge");
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (v, out.status.code().unwrap())
}

fn raw(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_tforge"))
        .args(args)
        .output()
        .expect("spawn tforge");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn fixture(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn scheme_valencies() {
    let (v, code) = tforge(&["scheme", "--group", "ea2:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["valencies"], serde_json::json!([1, 3, 3, 3, 6]));
    assert_eq!(v["result"]["closed_form_agrees"], true);
    let (v, _) = tforge(&["scheme", "--group", "ea2:3"]);
    assert_eq!(v["result"]["valencies"], serde_json::json!([1, 7, 7, 7, 42]));
}

#[test]
fn scheme_from_table() {
    let (v, code) = tforge(&["scheme", "--group", &format!("table:{}", fixture("z4.txt"))]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["elementary_abelian"], false);
    assert_eq!(v["result"]["n"], 4);
}

#[test]
fn bad_table_is_an_error() {
    let (v, code) = tforge(&["scheme", "--group", &format!("table:{}", fixture("not_a_group.txt"))]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].is_string());
    let (_, code) = tforge(&["scheme", "--group", "table:/nonexistent/table.txt"]);
    assert_eq!(code, 2);
}

#[test]
fn algebra_dimensions() {
    let (v, code) = tforge(&["algebra", "--p", "3", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim_T"], 51);
    assert_eq!(v["result"]["basis_ok"], true);
}

#[test]
fn dump_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let (_, code) = tforge(&["algebra", "--p", "5", "--n", "4", "--dump", path]);
    assert_eq!(code, 0);
    let a1 = GfMatrix::read_dump(fs::read(dir.path().join("A1.txt")).unwrap().as_slice()).unwrap();
    assert_eq!(a1.n_rows(), 16);
    assert_eq!(a1.transpose(), a1);
    let e0 = GfMatrix::read_dump(fs::read(dir.path().join("E0.txt")).unwrap().as_slice()).unwrap();
    assert_eq!(e0.mat_mul(&e0).unwrap(), e0);
    let count = fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with('T'))
        .count();
    assert_eq!(count, 51);
}

#[test]
fn dumped_basis_is_in_the_algebra() {
    // p = 2 exercises the bit-packed storage
    let dir = tempfile::tempdir().unwrap();
    let (_, code) = tforge(&["algebra", "--p", "2", "--n", "4", "--dump", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let read = |name: &str| GfMatrix::read_dump(fs::read(dir.path().join(name)).unwrap().as_slice()).unwrap();
    let e4 = read("E4.txt");
    let t0 = read("T00.txt");
    assert_eq!(t0.shape(), (16, 16));
    let ctx = tforge::TerwilligerContext::elementary_abelian(2, 4, 0).unwrap();
    let alg = tforge::closure_generate(&ctx).unwrap();
    assert!(alg.span().contains(&t0).unwrap());
    assert!(alg.span().contains(&e4.mat_mul(&t0).unwrap()).unwrap());
}

#[test]
fn verify_passes_at_p2_n8() {
    let (v, code) = tforge(&["verify", "--p", "2", "--n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["failed"], 0);
    let (v, code) = tforge(&["verify", "--p", "3", "--n", "4", "--filter", "L2.15", "--transposed"]);
    assert_eq!(code, 0);
    assert!(v["result"]["passed"].as_u64().unwrap() > 0);
}

#[test]
fn decompose_case_i() {
    let (v, code) = tforge(&["decompose", "--p", "5", "--n", "16"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["case"], "I");
    assert_eq!(v["result"]["blocks"], serde_json::json!([4, 1, 1]));
    let (v, _) = tforge(&["decompose", "--p", "3", "--n", "8", "--corner", "4"]);
    assert_eq!(v["result"]["blocks"], serde_json::json!([3, 1]));
}

#[test]
fn sweep_csv_rows() {
    let (text, code) = raw(&["--emit", "csv", "sweep", "--primes", "2,5,7", "--ns", "4,8,16"]);
    assert_eq!(code, 0);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<String>> = lines
        .map(|l| {
            // blocks is the only quoted field
            let mut cells = Vec::new();
            let mut rest = l;
            while !rest.is_empty() {
                let (cell, tail) = if let Some(r) = rest.strip_prefix('"') {
                    let end = r.find('"').unwrap();
                    (&r[..end], r[end + 1..].trim_start_matches(','))
                } else {
                    let end = rest.find(',').unwrap_or(rest.len());
                    (&rest[..end], rest[end..].trim_start_matches(','))
                };
                cells.push(cell.to_string());
                rest = tail;
            }
            cells
        })
        .collect();
    assert_eq!(rows.len(), 9);
    let find = |p: &str, n: &str| rows.iter().find(|r| r[col("p")] == p && r[col("n")] == n).unwrap();
    assert_eq!(find("5", "4")[col("semisimple")], "true");
    assert_eq!(find("2", "8")[col("blocks")], "[5,4,1]");
    assert_eq!(find("7", "16")[col("blocks")], "[6,4,1]");
    assert!(rows.iter().all(|r| r[col("certified")] == "true"));
}

#[test]
fn semisimple_table() {
    let (v, code) = tforge(&["semisimple", "--p", "5", "--nmax", "64", "--certify-up-to", "8"]);
    assert_eq!(code, 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["semisimple"], true);
    assert_eq!(rows[2]["semisimple"], false);
    assert_eq!(rows[1]["computed"], true);
}

#[test]
fn output_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("duration_ms");
        if let Some(r) = v["result"].as_object_mut() {
            r.remove("duration_ms");
        }
        v
    };
    let args = ["--seed", "17", "verify", "--p", "7", "--n", "8"];
    assert_eq!(strip(tforge(&args).0), strip(tforge(&args).0));
    let args = ["decompose", "--p", "2", "--n", "4"];
    assert_eq!(strip(tforge(&args).0), strip(tforge(&args).0));
}

#[test]
fn exit_codes() {
    assert_eq!(tforge(&["verify", "--p", "9", "--n", "4"]).1, 2);
    assert_eq!(tforge(&["algebra", "--p", "3", "--n", "6"]).1, 2);
    assert_eq!(tforge(&["decompose", "--p", "3", "--n", "64"]).1, 2);
    assert_eq!(tforge(&["decompose", "--p", "3", "--n", "12"]).1, 2);
    let out = Command::new(env!("CARGO_BIN_EXE_tforge"))
        .args(["bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn text_emitter() {
    let (text, code) = raw(&["--emit", "text", "scheme", "--group", "ea2:2"]);
    assert_eq!(code, 0);
    assert!(text.contains("valencies"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

use serde_json::Value;

fn trigsum(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("trigsum").chain(args.iter().copied());
    let code = trigsum::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = trigsum(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} / {err}"));
    (code, v)
}

#[test]
fn eval_prints_exact_values() {
    assert_eq!(
        trigsum(&["eval", "--family", "C", "--m", "2", "--n", "3"]),
        (0, "9/8\n".into(), String::new())
    );
    assert_eq!(
        trigsum(&["eval", "--family", "barbero", "--m", "12", "--n", "3"]).1,
        "3798310\n"
    );
    assert_eq!(
        trigsum(&["eval", "--family", "cot", "--n", "3", "--k", "4"]).1,
        "2\n"
    );
    assert_eq!(
        trigsum(&["eval", "--family", "merca-half", "--p", "3", "--n", "3"]).1,
        "1/64\n"
    );
    assert_eq!(
        trigsum(&["eval", "--family", "byrne-smith", "--n", "1", "--k", "2"]).1,
        "6\n"
    );
    assert_eq!(
        trigsum(&["eval", "--family", "path-walks", "--n", "5", "--m", "2"]).1,
        "14\n"
    );
    assert_eq!(
        trigsum(&["eval", "--family", "cycle-walks", "--n", "5", "--m", "2"]).1,
        "30\n"
    );
}

#[test]
fn eval_json_schema() {
    let (code, v) = json(&[
        "eval", "--family", "S", "--m", "1", "--n", "4", "--json", "--digits", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["family"], "SinPower");
    assert_eq!(v["params"]["m"], 1);
    assert_eq!(v["params"]["n"], 4);
    assert_eq!(v["value"]["num"], "2");
    assert_eq!(v["value"]["den"], "1");
    assert_eq!(v["decimal"], "2.000");
    let (_, v) = json(&["eval", "--family", "C", "--m", "2", "--n", "3", "--json"]);
    assert!(v.get("decimal").is_none());
}

#[test]
fn digits_round_half_to_even() {
    // S(3,4) = 5/4 and C(1,3) = 3/2
    assert_eq!(
        trigsum(&["eval", "--family", "S", "--m", "3", "--n", "4", "--digits", "1"]).1,
        "5/4\n1.2\n"
    );
    assert_eq!(
        trigsum(&["eval", "--family", "C", "--m", "1", "--n", "3", "--digits", "2"]).1,
        "3/2\n1.50\n"
    );
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        &[
            "eval",
            "--family",
            "ell5-alt-product",
            "--m",
            "2",
            "--n",
            "3",
        ][..],
        &["eval", "--family", "nope", "--m", "1", "--n", "1"],
        &["eval", "--family", "C", "--m", "1"],
        &["eval", "--family", "cot", "--n", "0", "--k", "3"],
        &["eval", "--family", "cycle-walks", "--n", "4", "--m", "1"],
        &["eval", "--family", "barbero-naive", "--m", "12", "--n", "3"],
        &["eval", "--family", "C", "--m", "x", "--n", "1"],
        &["table", "--kind", "bogus", "--n", "2"],
        &["verify", "--family", "barbero-naive"],
        &["frobnicate"],
    ] {
        let (code, out, err) = trigsum(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = trigsum(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
    let (code, out, _) = trigsum(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("trigsum "));
}

#[test]
fn verify_trivial_grid() {
    let (code, v) = json(&[
        "verify", "--family", "C", "--m-max", "0", "--n-max", "5", "--json",
    ]);
    assert_eq!(code, 0);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 5);
    assert_eq!(v["summary"]["total"], 5);
    assert_eq!(v["summary"]["mismatches"], 0);
    for (i, c) in cases.iter().enumerate() {
        assert_eq!(c["closed_form"], format!("{}/1", i + 1));
        assert_eq!(c["oracle"], c["closed_form"]);
        assert_eq!(c["match"], true);
        assert!(c["micros_closed"].is_u64());
    }
    assert!(v.get("errata").is_none());
}

#[test]
fn verify_order_is_deterministic() {
    let args = [
        "verify",
        "--family",
        "weight3-s,C,gcd-c",
        "--m-max",
        "3",
        "--n-max",
        "4",
        "--json",
    ];
    let (_, one) = json(&[&args[..], &["--jobs", "1"]].concat());
    let (_, four) = json(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(
        one["cases"].as_array().unwrap().len(),
        four["cases"].as_array().unwrap().len()
    );
    let specs = |v: &Value| {
        v["cases"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["spec"].clone())
            .collect::<Vec<_>>()
    };
    assert_eq!(specs(&one), specs(&four));
}

#[test]
fn verify_skips_inadmissible_parameters() {
    let (code, v) = json(&[
        "verify", "--family", "alt-c", "--m-max", "1", "--n-max", "5", "--json",
    ]);
    assert_eq!(code, 0);
    // only N = 2 and 4 are admissible
    assert_eq!(v["summary"]["total"], 4);
}

#[test]
fn barbero_erratum_is_reproduced() {
    let (code, v) = json(&[
        "verify",
        "--family",
        "barbero-naive",
        "--expect-known-errata",
        "--json",
    ]);
    assert_eq!(code, 0);
    let rec = &v["errata"]["records"][0];
    assert_eq!(rec["printed"], "3780094/1");
    assert_eq!(rec["truth"], "3798310/1");
    assert!(rec["relation"].as_str().unwrap().contains("18216"));
    assert_eq!(rec["reproduced"], true);
    assert_eq!(v["summary"]["total"], 0);
}

#[test]
fn all_errata_are_reproduced() {
    let (code, out, _) = trigsum(&["verify", "--family", "errata", "--expect-known-errata"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("NOT REPRODUCED"));
}

#[test]
fn verify_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("trigsum-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.to_str().unwrap();
    let (code, out, err) = trigsum(&[
        "verify", "--family", "S", "--m-max", "2", "--n-max", "2", "--json", "--out", p,
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(err.contains("mismatches 0"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["total"], 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sigma_table() {
    let (code, out, _) = trigsum(&["table", "--kind", "sigma", "--n", "3", "--k-max", "6"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "k,n,value");
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[4], "3,3,1/720");
}

#[test]
fn walk_tables() {
    let (_, out, _) = trigsum(&["table", "--kind", "walks-path", "--n", "4", "--m-max", "3"]);
    let counts: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(counts, ["4", "8", "16"]);
    let (_, out, _) = trigsum(&[
        "table",
        "--kind",
        "walks-cycle",
        "--n",
        "5",
        "--m-min",
        "0",
        "--m-max",
        "2",
        "--format",
        "bfile",
    ]);
    assert_eq!(out, "0 5\n1 10\n2 30\n");
    let (code, v) = json(&[
        "table",
        "--kind",
        "walks-path",
        "--n",
        "3",
        "--m-max",
        "2",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v[1]["count"], "2");
    assert_eq!(v[1]["m"], 2);
}

#[test]
fn cot_polynomial_table() {
    // (k-1)(k-2)(k^2+3k-13)/45 = (k^4 - 20k^2 + 45k - 26)/45
    let (_, out, _) = trigsum(&["table", "--kind", "cot-poly", "--n", "2"]);
    assert_eq!(
        out,
        "degree,coefficient\n0,-26/45\n1,1/1\n2,-4/9\n3,0/1\n4,1/45\n"
    );
}

#[test]
fn bench_reports_equality() {
    let (code, v) = json(&[
        "bench",
        "--family",
        "C",
        "--m",
        "40",
        "--n",
        "7",
        "--with-oracle",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
    assert!(v["micros_oracle"].is_u64());
    let (code, out, _) = trigsum(&["bench", "--family", "cot", "--n", "2", "--k", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("closed form"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_trigsum");
    let status = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(
        status(&["eval", "--family", "C", "--m", "1", "--n", "2"]),
        Some(0)
    );
    assert_eq!(
        status(&["eval", "--family", "alt-c", "--m", "1", "--n", "3"]),
        Some(2)
    );
    assert_eq!(status(&["--help"]), Some(0));
}

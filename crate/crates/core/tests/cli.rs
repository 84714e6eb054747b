use gammaint::cli::{parse_cases, run};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["gammaint".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn integrate_prints_canonical_text() {
    let (code, out, _) = call(&["integrate", "exp(x)/x"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "Ei(x) + C");
}

#[test]
fn structure_reports_witness() {
    let (code, out, _) = call(&["structure", "exp(2*x)", "--tower", "exp(x)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "dependent: θ^2");
    let (_, out, _) = call(&["structure", "exp(x^2)", "--tower", "exp(x)"]);
    assert_eq!(out.trim(), "transcendental");
}

#[test]
fn exit_codes_follow_status() {
    assert_eq!(call(&["integrate", "x*exp(x)"]).0, 0);
    assert_eq!(call(&["integrate", "exp(x)/(x^2+1)"]).0, 2);
    assert_eq!(call(&["integrate", "exp((1/2)*log(x))"]).0, 3);
    assert_eq!(call(&["integrate", "sin(x)"]).0, 1);
    assert_eq!(call(&["integrate"]).0, 1);
    assert_eq!(call(&["integrate", "x", "--const", "a=transcendental"]).0, 1);
}

#[test]
fn flags_do_not_change_exit_code() {
    for flags in [&[][..], &["--json"][..], &["--verify"][..], &["--json", "--verify"][..]] {
        let mut args = vec!["integrate", "exp(x)/(x^2+1)"];
        args.extend_from_slice(flags);
        assert_eq!(call(&args).0, 2, "{:?}", flags);
    }
}

#[test]
fn json_matches_schema() {
    let (_, out, _) = call(&["integrate", "exp((alpha-1)*log(x)-x)", "--const", "alpha=irrational", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "integrated");
    for key in ["elementary", "logs", "ei", "gamma_rational", "gamma_irrational", "diagnostics"] {
        assert!(v.get(key).is_some(), "missing {}", key);
    }
    assert_eq!(v["gamma_irrational"][0]["alpha"], "alpha");
    assert_eq!(v["gamma_irrational"][0]["arg"], "x");
    assert_eq!(v["gamma_irrational"][0]["c"], "-1");
}

#[test]
fn verify_appends_report() {
    let (code, out, _) = call(&["verify", "exp(-x^2)", "--seed", "3"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("-(1/2)*Gamma(1/2, x^2) + C"));
    let report = lines.next().unwrap();
    assert!(report.starts_with("verify: symbolic: ok; numeric: ok at 5 points"), "{}", report);
}

#[test]
fn other_variable_name() {
    let (code, out, _) = call(&["integrate", "exp(t)/t", "--var", "t"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "Ei(t) + C");
}

#[test]
fn case_file_format() {
    let text = "# comment\n\nexp(x)/x   # expect: integrated\n@const a=irrational\nexp(a*log(x)-x)\n";
    let cases = parse_cases(text).unwrap();
    assert_eq!(cases.len(), 2);
    assert_eq!(cases[0].line, 3);
    assert_eq!(cases[0].expect.as_deref(), Some("integrated"));
    assert!(cases[0].consts.is_empty());
    assert_eq!(cases[1].expect, None);
    assert_eq!(cases[1].consts, vec!["a".to_string()]);
    assert!(parse_cases("x # bogus").is_err());
}

#[test]
fn corpus_runs_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.cases"), "exp(x)/x # expect: integrated\nexp(x)/(x^2+1) # expect: no_gamma_form_found\n").unwrap();
    std::fs::write(dir.path().join("ignored.txt"), "not a case file").unwrap();
    let (code, out, _) = call(&["corpus", dir.path().to_str().unwrap(), "--timeout-ms", "5000"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("2 passed, 0 failed"));

    std::fs::write(dir.path().join("b.cases"), "x*exp(x) # expect: unsupported\n").unwrap();
    let (code, out, _) = call(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("2 passed, 1 failed"));
}

#[test]
fn shipped_corpus_passes() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let (code, out, _) = call(&["corpus", dir, "--timeout-ms", "10000"]);
    assert_eq!(code, 0, "{}", out);
}

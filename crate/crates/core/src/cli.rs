//! Command-line front end.
//!
//! Exit codes: 0 integrated, 2 no Ei/Γ form found, 3 unsupported, 1 usage
//! or parse error. Corpus runs exit 0 when every case passes and 1
//! otherwise.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use crate::api::{integrate_with_timeout, structure_query, ApiError, Outcome};
use crate::gamma::Status;

#[derive(Parser, Debug)]
#[command(name = "gammaint", version, about = "Integrate in closed form with Ei and incomplete Gamma")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Integration variable.
    #[arg(long, default_value = "x")]
    var: String,
    /// Declare a constant symbol, as NAME=irrational.
    #[arg(long = "const", value_name = "NAME=irrational")]
    consts: Vec<String>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Append the verification report.
    #[arg(long)]
    verify: bool,
    /// Seed for the numeric probe points.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Give up on a case after this many milliseconds.
    #[arg(long = "timeout-ms")]
    timeout_ms: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Integrate an expression in the variable.
    Integrate {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether exp(..) or log(..) is algebraic over a tower.
    Structure {
        expr: String,
        /// Generators of the tower, in order (exp(..) or log(..)).
        #[arg(long)]
        tower: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Integrate and certify the answer.
    Verify {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every .cases file in a directory (or a single file).
    Corpus {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Integrated => 0,
        Status::NoGammaFormFound => 2,
        Status::Unsupported => 3,
    }
}

fn parse_consts(raw: &[String]) -> Result<Vec<String>, String> {
    raw.iter()
        .map(|c| {
            let (name, kind) = c.split_once('=').unwrap_or((c.as_str(), "irrational"));
            if kind != "irrational" {
                return Err(format!("unknown constant kind '{}' (only 'irrational')", kind));
            }
            if name.is_empty() || !name.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                return Err(format!("bad constant name '{}'", name));
            }
            Ok(name.to_string())
        })
        .collect()
}

fn timeout(c: &Common) -> Option<Duration> {
    c.timeout_ms.map(Duration::from_millis)
}

/// Runs the command line `args` (including the program name).
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            if code == 0 {
                let _ = write!(out, "{}", e);
            } else {
                let _ = write!(err, "{}", e);
            }
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            1
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, ApiError> {
    match cmd {
        Cmd::Integrate { expr, common } => {
            let consts = parse_consts(&common.consts).map_err(ApiError::Usage)?;
            let o = integrate_with_timeout(&expr, &common.var, &consts, timeout(&common))?;
            print_outcome(&o, &common, common.verify, out, err);
            Ok(exit_code(o.status()))
        }
        Cmd::Verify { expr, common } => {
            let consts = parse_consts(&common.consts).map_err(ApiError::Usage)?;
            let o = integrate_with_timeout(&expr, &common.var, &consts, timeout(&common))?;
            print_outcome(&o, &common, true, out, err);
            Ok(exit_code(o.status()))
        }
        Cmd::Structure { expr, tower, common } => {
            let consts = parse_consts(&common.consts).map_err(ApiError::Usage)?;
            let s = structure_query(&expr, &tower, &common.var, &consts)?;
            if common.json {
                let _ = writeln!(out, "{}", serde_json::json!({ "result": s }));
            } else {
                let _ = writeln!(out, "{}", s);
            }
            Ok(0)
        }
        Cmd::Corpus { path, common } => Ok(run_corpus(&path, &common, out, err)),
    }
}

fn print_outcome(o: &Outcome, common: &Common, with_report: bool, out: &mut dyn Write, err: &mut dyn Write) {
    let report = if with_report { o.verify(common.seed) } else { None };
    if common.json {
        let mut j = o.json();
        if with_report {
            let line = match &report {
                Some(r) => format!("verify: {}", r.summary()),
                None => "verify: nothing to check".to_string(),
            };
            if let Some(d) = j["diagnostics"].as_array_mut() {
                d.push(line.into());
            }
        }
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&j).unwrap());
        return;
    }
    let _ = writeln!(out, "{}", o.text());
    if o.status() != Status::Integrated {
        for d in &o.answer.diagnostics {
            let _ = writeln!(err, "{}", d);
        }
    }
    if with_report {
        match report {
            Some(r) => {
                let _ = writeln!(out, "verify: {}", r.summary());
            }
            None => {
                let _ = writeln!(out, "verify: nothing to check");
            }
        }
    }
}

/// A line of a `.cases` file.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub line: usize,
    pub integrand: String,
    pub expect: Option<String>,
    pub consts: Vec<String>,
}

/// Parses a case file: one integrand per line with an optional
/// `# expect: <status>` trailer. Lines starting with `#` are comments;
/// `@const NAME=irrational` declares a constant for the following lines.
pub fn parse_cases(text: &str) -> Result<Vec<Case>, String> {
    let mut consts: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("@const") {
            consts.extend(parse_consts(&[rest.trim().to_string()])?);
            continue;
        }
        let (expr, expect) = match line.split_once('#') {
            Some((e, c)) => {
                let c = c.trim();
                let status = c
                    .strip_prefix("expect:")
                    .map(|s| s.trim().to_string())
                    .ok_or_else(|| format!("line {}: unknown trailer '{}'", i + 1, c))?;
                (e.trim(), Some(status))
            }
            None => (line, None),
        };
        out.push(Case {
            line: i + 1,
            integrand: expr.to_string(),
            expect,
            consts: consts.clone(),
        });
    }
    Ok(out)
}

fn case_files(path: &Path) -> Vec<PathBuf> {
    if path.is_file() {
        return vec![path.to_path_buf()];
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map(|rd| {
            rd.filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "cases"))
                .collect()
        })
        .unwrap_or_default();
    files.sort();
    files
}

/// Result of one corpus case.
#[derive(Debug, Clone)]
pub struct CaseResult {
    pub case: Case,
    pub status: String,
    pub verified: Option<bool>,
    pub elapsed: Duration,
    pub passed: bool,
    pub detail: String,
}

/// Runs one case: integrate, then verify whenever the answer is complete.
pub fn run_case(case: &Case, var: &str, extra_consts: &[String], seed: u64, limit: Option<Duration>) -> CaseResult {
    let mut consts = extra_consts.to_vec();
    consts.extend(case.consts.iter().cloned());
    let start = Instant::now();
    let res = integrate_with_timeout(&case.integrand, var, &consts, limit);
    let (status, verified, detail) = match res {
        Ok(o) => {
            let verified = if o.status() == Status::Integrated {
                o.verify(seed).map(|r| !r.numeric.failed() && r.symbolic == crate::verify::SymbolicCheck::Passed)
            } else {
                None
            };
            (o.status().as_str().to_string(), verified, o.text())
        }
        Err(e) => ("error".to_string(), None, e.to_string()),
    };
    let elapsed = start.elapsed();
    let expect_ok = case.expect.as_ref().is_none_or(|e| *e == status);
    let passed = expect_ok && verified != Some(false) && status != "error";
    CaseResult {
        case: case.clone(),
        status,
        verified,
        elapsed,
        passed,
        detail,
    }
}

fn run_corpus(path: &Path, common: &Common, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let consts = match parse_consts(&common.consts) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            return 1;
        }
    };
    let files = case_files(path);
    if files.is_empty() {
        let _ = writeln!(err, "error: no .cases files under {}", path.display());
        return 1;
    }
    let (mut pass, mut fail) = (0, 0);
    let _ = writeln!(out, "{:<6} {:<22} {:<22} {:<8} {:>8}  case", "result", "expected", "got", "verify", "ms");
    for f in files {
        let text = match std::fs::read_to_string(&f) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {}", f.display(), e);
                return 1;
            }
        };
        let cases = match parse_cases(&text) {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {}", f.display(), e);
                return 1;
            }
        };
        let name = f.file_name().unwrap().to_string_lossy().to_string();
        // cases are independent, so run them concurrently and report in order
        let results: Vec<CaseResult> = std::thread::scope(|sc| {
            let handles: Vec<_> = cases
                .iter()
                .map(|c| {
                    let consts = &consts;
                    sc.spawn(move || run_case(c, &common.var, consts, common.seed, timeout(common)))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("case panicked")).collect()
        });
        for (c, r) in cases.iter().zip(results) {
            if r.passed {
                pass += 1;
            } else {
                fail += 1;
            }
            let v = match r.verified {
                Some(true) => "ok",
                Some(false) => "FAILED",
                None => "-",
            };
            let _ = writeln!(
                out,
                "{:<6} {:<22} {:<22} {:<8} {:>8}  {}:{} {}",
                if r.passed { "pass" } else { "FAIL" },
                c.expect.as_deref().unwrap_or("-"),
                r.status,
                v,
                r.elapsed.as_millis(),
                name,
                c.line,
                c.integrand
            );
            if common.verify || !r.passed {
                let _ = writeln!(out, "       -> {}", r.detail);
            }
        }
    }
    let _ = writeln!(out, "{} passed, {} failed", pass, fail);
    if fail == 0 {
        0
    } else {
        1
    }
}

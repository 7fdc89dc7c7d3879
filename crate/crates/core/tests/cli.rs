use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use qcousin::cli::{parse_manifest, run_command, Command, Format};

fn manifests() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/manifests");
    let mut out: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    out.sort();
    out
}

fn golden(path: &Path) -> PathBuf {
    let name = path.file_stem().unwrap().to_str().unwrap();
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_qcousin"))
}

#[test]
fn battery_round_trips() {
    for p in manifests() {
        let m = parse_manifest(&fs::read_to_string(&p).unwrap()).unwrap();
        let text = m.serialize();
        let again = parse_manifest(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", p.display()));
        assert_eq!(m, again, "{}", p.display());
        assert_eq!(text, again.serialize());
    }
}

/// Set `QCOUSIN_BLESS=1` to rewrite the goldens.
#[test]
fn battery_matches_goldens() {
    let bless = std::env::var_os("QCOUSIN_BLESS").is_some();
    for p in manifests() {
        let m = parse_manifest(&fs::read_to_string(&p).unwrap()).unwrap();
        let first = run_command(&m).unwrap().to_json();
        let second = run_command(&m).unwrap().to_json();
        assert_eq!(first, second, "{} is not deterministic", p.display());
        let g = golden(&p);
        if bless {
            fs::create_dir_all(g.parent().unwrap()).unwrap();
            fs::write(&g, &first).unwrap();
        }
        let want = fs::read_to_string(&g).unwrap_or_else(|_| panic!("missing golden {}", g.display()));
        assert!(want == first, "{} differs from {}", p.display(), g.display());
    }
}

#[test]
fn binary_output_equals_golden() {
    for p in manifests() {
        let out = bin().arg("--manifest").arg(&p).output().unwrap();
        let want = fs::read_to_string(golden(&p)).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{}", p.display());
        let code: i32 = serde_json::from_str::<serde_json::Value>(&want).unwrap()["exit_code"].as_i64().unwrap() as i32;
        assert_eq!(out.status.code(), Some(code), "{}", p.display());
    }
}

fn write_temp(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn temp_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("qcousin-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn exit_code_matrix() {
    let d = temp_dir("matrix");
    let cases: &[(&str, &str, i32)] = &[
        ("ok.txt", "[problem]\nfield = generic_q\nn = 1\ncommand = hilbert\ndegrees = 0..3\n", 0),
        ("cousin.txt", "[problem]\nfield = generic_q\nn = 1\ncommand = cousin\nfiltration = 1, 0\n", 0),
        ("l13.txt", "[problem]\nfield = generic_q\nn = 1\ncommand = verify\nchecks = l1\n", 1),
        ("oracle.txt", "[problem]\nfield = generic_q\nn = 1\ncommand = oracle-compare\n", 2),
        ("syntax.txt", "[problem\nfield = generic_q\n", 2),
        ("degree.txt", "[problem]\nfield = q=1\nn = 1\ncommand = hilbert\n[module M]\nrelation = 2 | x1\n", 2),
        ("filtration.txt", "[problem]\nfield = q=1\nn = 2\ncommand = cousin\nfiltration = 0, 2\n", 2),
        ("unknown.txt", "[problem]\nfield = q=1\nn = 1\ncommand = hilbert\ncolour = red\n", 2),
    ];
    for (name, text, code) in cases {
        let p = write_temp(&d, name, text);
        let out = bin().arg("--manifest").arg(&p).output().unwrap();
        assert_eq!(out.status.code(), Some(*code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = bin().arg("--manifest").arg(d.join("oracle.txt")).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle supports q=1 only"));
    let out = bin().arg("--manifest").arg(d.join("missing.txt")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("--manifest").arg(d.join("ok.txt")).arg("--pole-max").arg("zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("--manifest").arg(d.join("ok.txt")).arg("--format").arg("xml").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn diagnostics_carry_positions() {
    let d = temp_dir("diag");
    let p = write_temp(&d, "deg.txt", "[problem]\nfield = q=1\nn = 1\ncommand = hilbert\n[module M]\ngenerators = 0, 0\nrelation = 1 | x1 ; x2^2\n");
    let out = bin().arg("--manifest").arg(&p).output().unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 7, column 21: module M.relation[1].entry[2]"), "{err}");
    assert!(err.contains("relation column 1"), "{err}");
}

#[test]
fn flags_and_environment_override_the_manifest() {
    let d = temp_dir("flags");
    let p = write_temp(&d, "c.txt", "[problem]\nfield = generic_q\nn = 1\ncommand = cousin\n[parameters]\npole_max = 4\n");
    let out = bin().arg("--manifest").arg(&p).arg("--format").arg("csv").arg("--pole-max").arg("2").output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "term,p=1,p=2\nglobal,1,1\nT0,2,3\nT1,1,2\n");
    let out = bin().arg("--manifest").arg(&p).env("QCOUSIN_FORMAT", "csv").env("QCOUSIN_POLE_MAX", "1").output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "term,p=1\nglobal,1\nT0,2\nT1,1\n");
    let out = bin().env("QCOUSIN_MANIFEST", &p).arg("--pole-max").arg("1").arg("--out").arg(d.join("r.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(v["parameters"]["pole_max"], 1);
    assert_eq!(v["parameters"]["window"], 2);
    assert_eq!(v["parameters"]["semantics"], "ideal");
    assert!(v.get("timing").is_none());
    let out = bin().arg("--manifest").arg(&p).arg("--timing").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn cohomology_csv_has_rows_i_and_columns_p() {
    let mut m = parse_manifest("[problem]\nfield = generic_q\nn = 1\ncommand = cohomology\nsupport = 0\n").unwrap();
    m.parameters.pole_max = 5;
    let r = run_command(&m).unwrap();
    assert_eq!(r.render(Format::Csv), "i,p=1,p=2,p=3,p=4,p=5\n0,0,0,0,0,0\n1,1,2,3,4,5\n");
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn command_override_reuses_manifest() {
    let mut m = parse_manifest("[problem]\nfield = rationals\nn = 1\ncommand = hilbert\n").unwrap();
    m.command = Command::OracleCompare;
    m.parameters.pole_max = 2;
    let r = run_command(&m).unwrap();
    assert_eq!(r.exit_code(), 0);
    assert!(r.findings.len() > 5);
}

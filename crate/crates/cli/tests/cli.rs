//! End-to-end runs of the `qparticle` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn qparticle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qparticle")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn integrals_then_fci_from_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("h2.fcidump");
    let (geom, basis) = (data("h2.geom"), data("sto-3g.basis"));
    let o = qparticle(&["integrals", "--geometry", path(&geom), "--basis", path(&basis), "--out", path(&dump)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("norb = 2"));

    let from_dump = qparticle(&["fci", "--fcidump", path(&dump)]);
    let from_geom = qparticle(&["fci", "--geometry", path(&geom), "--basis", path(&basis)]);
    assert!(from_dump.status.success() && from_geom.status.success());
    let parse = |o: &Output| -> f64 { stdout(o).trim().rsplit(' ').next().unwrap().parse().unwrap() };
    assert!((parse(&from_dump) - parse(&from_geom)).abs() < 1e-12);
    assert!((parse(&from_geom) + 1.137283834946726).abs() < 1e-8);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(
        &config,
        format!(
            "# H2 run\ngeometry = {}\nbasis = {}\nencoding = qubit\nmax_iters = 7\nout = {}\n",
            data("h2.geom").display(),
            data("sto-3g.basis").display(),
            dir.path().display()
        ),
    )
    .unwrap();
    let o = qparticle(&["acse", "--config", path(&config), "--max-iters", "1", "--format", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let trace = std::fs::read_to_string(dir.path().join("trace_qubit.csv")).unwrap();
    let mut lines = trace.lines();
    assert_eq!(
        lines.next().unwrap(),
        "iteration,energy_hartree,abs_error_vs_fci,log10_error,residual_norm,cumulative_cnots,epsilon"
    );
    assert_eq!(lines.count(), 1);
    assert!(!dir.path().join("trace_fermionic.csv").exists());
    assert!(!dir.path().join("summary.json").exists());
}

#[test]
fn summary_and_rdm_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = qparticle(&[
        "acse",
        "--geometry",
        path(&data("h2.geom")),
        "--basis",
        path(&data("sto-3g.basis")),
        "--out",
        path(dir.path()),
    ]);
    assert!(o.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["converged"], true);
    assert_eq!(summary["runs"].as_array().unwrap().len(), 2);
    for run in summary["runs"].as_array().unwrap() {
        assert!(run["abs_error"].as_f64().unwrap() < 1e-8);
        assert!(run["total_cnots"].as_u64().unwrap() > 0);
    }

    let check = qparticle(&["check-rdm", "--rdm", path(&dir.path().join("rdm_qubit.txt")), "--json"]);
    assert!(check.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&check)).unwrap();
    assert!(report["trace_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn non_convergence_still_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = qparticle(&[
        "acse",
        "--geometry",
        path(&data("h4_chain.geom")),
        "--basis",
        path(&data("sto-3g.basis")),
        "--encoding",
        "fermionic",
        "--max-iters",
        "1",
        "--format",
        "json",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["converged"], false);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.fcidump");
    assert_eq!(qparticle(&["fci", "--fcidump", path(&missing)]).status.code(), Some(2));
    assert_eq!(qparticle(&["acse", "--fcidump", path(&missing)]).status.code(), Some(2));
    assert_eq!(qparticle(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qparticle(&["acse"]).status.code(), Some(1));

    let geom = data("h2.geom");
    let basis = data("sto-3g.basis");
    for bad in [["--encoding", "bosonic"], ["--max-iters", "0"], ["--epsilon0", "abc"], ["--format", "xml"]] {
        let mut args = vec!["acse", "--geometry", path(&geom), "--basis", path(&basis), "--out", path(dir.path())];
        args.extend(bad);
        assert_eq!(qparticle(&args).status.code(), Some(1), "{bad:?}");
    }

    let config = dir.path().join("bad.conf");
    std::fs::write(&config, "temperature = 300\n").unwrap();
    assert_eq!(qparticle(&["acse", "--config", path(&config)]).status.code(), Some(1));
    assert_eq!(qparticle(&["acse", "--config", path(&dir.path().join("absent.conf"))]).status.code(), Some(2));

    let bad_geom = dir.path().join("bad.geom");
    std::fs::write(&bad_geom, "angstrom\nH 0 0\n").unwrap();
    assert_eq!(qparticle(&["fci", "--geometry", path(&bad_geom), "--basis", path(&basis)]).status.code(), Some(1));
}

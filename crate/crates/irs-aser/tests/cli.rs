//! End-to-end checks of the `irs-aser` binary: exit codes, CSV shape and
//! byte-stability of seeded reruns.

use std::path::Path;
use std::process::Command;

mod common;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_irs-aser"))
}

fn read(path: &Path) -> String {
    String::from_utf8(std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn curve_writes_manifest_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let status = bin()
        .args([
            "curve",
            "--scheme",
            "rqam:4x2:b=1",
            "-N",
            "16",
            "--snr",
            "-10:5:10",
            "--methods",
            "closed-form,quadrature",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let text = read(&out);
    let mut lines = text.lines();
    let manifest = lines.next().unwrap();
    assert!(manifest.starts_with("# manifest tool=irs-aser version="));
    assert!(manifest.contains("command="));
    let header = lines.next().unwrap();
    assert_eq!(header, "snr_db,closed-form,quadrature");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5); // -10, -5, 0, 5, 10
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 3);
        let cf: f64 = cols[1].parse().unwrap();
        let qd: f64 = cols[2].parse().unwrap();
        assert!((cf - qd).abs() <= 1e-6 * qd.max(1e-12));
    }
}

#[test]
fn curve_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &Path| {
        let mut c = bin();
        c.args([
            "curve",
            "--scheme",
            "xqam:32",
            "-N",
            "32",
            "--snr",
            "-20:2:0",
            "--methods",
            "closed-form,monte-carlo",
            "--symbols",
            "20000",
            "--seed",
            "7",
            "--out",
        ])
        .arg(out);
        c
    };
    let (o1, o2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert!(args(&o1).status().unwrap().success());
    assert!(args(&o2).status().unwrap().success());
    assert_eq!(std::fs::read(&o1).unwrap(), std::fs::read(&o2).unwrap());
}

#[test]
fn monte_carlo_ignores_thread_count() {
    // Substream chunking makes results a function of the seed alone.
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, out: &Path| {
        let mut c = bin();
        c.env("ASER_THREADS", threads)
            .args([
                "curve",
                "--scheme",
                "bpsk",
                "-N",
                "8",
                "--snr",
                "-10:5:0",
                "--methods",
                "monte-carlo",
                "--symbols",
                "50000",
                "--seed",
                "3",
                "--out",
            ])
            .arg(out);
        assert!(c.status().unwrap().success());
    };
    let (o1, o2) = (dir.path().join("t1.csv"), dir.path().join("t4.csv"));
    run("1", &o1);
    run("4", &o2);
    // Skip the manifest (records only tool/command, but keep the comparison
    // strictly on data rows anyway).
    let tail = |p: &Path| read(p).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(tail(&o1), tail(&o2));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    for (scheme, snr) in [
        ("rqam:3x2:b=1", "-10:5:10"), // not a power of two
        ("xqam:64", "-10:5:10"),      // unsupported cross order
        ("qam:16", "-10:5:10"),       // unknown family
        ("bpsk", "10:5:-10"),         // empty grid
        ("bpsk", "1:2"),              // malformed grid
    ] {
        let status = bin()
            .args(["curve", "--scheme", scheme, "--snr", snr, "--out"])
            .arg(&out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(2), "scheme={scheme} snr={snr}");
    }
}

#[test]
fn awgn_bound_rejects_cross_constellations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let status = bin()
        .args([
            "curve",
            "--scheme",
            "xqam:32",
            "--methods",
            "awgn-bound",
            "--snr",
            "-10:5:10",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn validate_fast_passes_and_is_stable() {
    let out1 = bin().args(["validate", "--seed", "5"]).output().unwrap();
    let out2 = bin().args(["validate", "--seed", "5"]).output().unwrap();
    assert!(out1.status.success());
    let text = String::from_utf8(out1.stdout.clone()).unwrap();
    assert!(text.contains("RESULT PASS"), "{text}");
    assert_eq!(out1.stdout, out2.stdout);
}

#[test]
fn figure_emits_csvs_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["figure", "fig5", "--out-dir"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(names.iter().any(|n| n == "plot.py"));
    assert!(names.iter().any(|n| n == "fig5.csv"));
    let header: String = read(&dir.path().join("fig5.csv")).lines().nth(1).unwrap().into();
    // One curve per beta.
    assert_eq!(header.split(',').count(), 5, "{header}");
}

//! Exit codes and output of the `polar-sim` binary.

use std::process::{Command, Output};

use polar_sim::csv::{read_csv, read_rows, HEADER};

fn polar_sim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polar-sim"))
        .args(args)
        .env_remove("POLAR_SIM_WORKERS")
        .output()
        .expect("binary runs")
}

#[test]
fn noiseless_sc_sweep_is_error_free() {
    let out = polar_sim(&["--N", "8", "--K", "4", "--decoder", "sc", "--noiseless", "--frames", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_rows(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        assert_eq!((r.frames, r.frame_errors, r.fer, r.ber), (10, 0, 0.0, 0.0));
        assert_eq!(r.avg_iterations, 8.0);
    }
}

#[test]
fn single_point_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = polar_sim(&[
        "--N", "128", "--K", "64", "--decoder", "fsscs-rm", "--list", "4", "--ebno", "2.0", "2.0", "0.5",
        "--frames", "300", "--workers", "2", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with(&HEADER.join(",")));
    let rows = read_csv(&path).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0].ebno_db, rows[0].frames), (2.0, 300));
    assert!(rows[0].throughput_info_bps_per_worker > 0.0);
}

#[test]
fn worker_count_does_not_change_the_counters() {
    let run = |workers: &str| {
        let out = polar_sim(&[
            "--N", "64", "--K", "32", "--decoder", "scs-rm", "--ebno", "1.0", "2.0", "1.0", "--frames", "400",
            "--min-frames", "50", "--min-errors", "20", "--seed", "9", "--workers", workers,
        ]);
        assert_eq!(out.status.code(), Some(0));
        read_rows(out.stdout.as_slice())
            .unwrap()
            .into_iter()
            .map(|r| (r.frames, r.frame_errors, r.bit_errors, r.avg_iterations.to_bits()))
            .collect::<Vec<_>>()
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn golden_mode_passes() {
    let out = polar_sim(&["--mode", "golden"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("32 vectors verified"));
}

#[test]
fn differential_mode_passes_on_a_small_corpus() {
    let out = polar_sim(&["--mode", "differential", "--frames", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 14);
}

#[test]
fn flag_errors_exit_with_2() {
    for args in [
        &["--decoder", "viterbi"][..],
        &["--bogus"],
        &["--N", "100", "--K", "50"],
        &["--N", "64", "--K", "65"],
        &["--N", "64", "--K", "0"],
        &["--N", "64", "--K", "20", "--crc", "crc24c"],
        &["--decoder", "scl", "--list", "0"],
        &["--decoder", "scs", "--stack", "0"],
        &["--frames", "0"],
        &["--ebno", "0", "1"],
        &["--ebno", "0", "1", "0"],
        &["--workers", "0"],
        &["--sequence", "/nonexistent/sequence.txt"],
    ] {
        let out = polar_sim(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn custom_sequence_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.txt");
    std::fs::write(&path, "0\n1\n2\n4\n3\n5\n6\n7\n").unwrap();
    let out = polar_sim(&[
        "--N", "8", "--K", "4", "--decoder", "scl", "--noiseless", "--frames", "5", "--sequence",
        path.to_str().unwrap(), "--ebno", "1", "1", "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_rows(out.stdout.as_slice()).unwrap();
    assert_eq!((rows.len(), rows[0].frame_errors), (1, 0));
}

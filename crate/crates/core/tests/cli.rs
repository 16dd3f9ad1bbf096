use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nhtrack::cli::{read_csv, CSV_HEADER};
use nhtrack::geom::{AdaptedState, FreeFlow};
use nhtrack::integrate::integrate;
use nhtrack::particle::particle_system;

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn config(&self, text: &str) -> PathBuf {
        let p = self.dir.path().join("run.cfg");
        fs::write(&p, text).unwrap();
        p
    }

    fn out(&self) -> PathBuf {
        self.dir.path().join("out")
    }

    fn run(&self, args: &[&str], config: &Path) -> Output {
        Command::new(env!("CARGO_BIN_EXE_nhtrack"))
            .args(args)
            .arg("--config")
            .arg(config)
            .arg("--out")
            .arg(self.out())
            .output()
            .unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn config_errors_exit_with_one() {
    let ws = Workspace::new();
    let o = ws.run(&["simulate"], &ws.config("epsilom = 7\n"));
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));

    let o = ws.run(&["track"], &ws.config("T = 4\nepsilon = 0\n"));
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("singular"));

    let o = ws.run(&["track", "--epsilon", "-2"], &ws.config(""));
    assert_eq!(code(&o), 1);

    let o = ws.run(&["simulate"], &ws.dir.path().join("missing.cfg"));
    assert_eq!(code(&o), 1);

    let o = ws.run(&["fly"], &ws.config(""));
    assert_eq!(code(&o), 1);
}

#[test]
fn help_mentions_default_omega() {
    let o = Command::new(env!("CARGO_BIN_EXE_nhtrack")).arg("--help").output().unwrap();
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("omega defaults to 1"), "{text}");
}

#[test]
fn simulate_round_trips_bit_exactly() {
    let ws = Workspace::new();
    let o = ws.run(&["simulate", "--steps", "500", "--T", "2"], &ws.config("initial_state = 0.1, -0.3, 0.2, 0.7, -0.4\n"));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let table = read_csv(&ws.out().join("simulate.csv")).unwrap();
    assert_eq!(table.header, CSV_HEADER.to_vec());
    assert_eq!(table.rows.len(), 501);

    let sys = particle_system();
    let s0 = AdaptedState::from_slices(&[0.1, -0.3, 0.2], &[0.7, -0.4]);
    let traj = integrate(&FreeFlow::new(&sys), 0.0, &s0.to_vec(), 2.0, 500).unwrap();
    for (row, (t, x)) in table.rows.iter().zip(traj.iter()) {
        assert_eq!(row[0].to_bits(), t.to_bits());
        for (a, b) in row[1..6].iter().zip(x) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert!(row[6..13].iter().all(|v| *v == 0.0));
    }
    assert_eq!(&table.rows[0][1..6], &[0.1, -0.3, 0.2, 0.7, -0.4]);
}

#[test]
fn single_step_writes_two_rows() {
    let ws = Workspace::new();
    let o = ws.run(&["analytic", "--steps", "1"], &ws.config(""));
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(ws.out().join("analytic.csv")).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn simulate_matches_analytic() {
    let ws = Workspace::new();
    let cfg = ws.config("T = 4\nsteps = 4000\n");
    assert_eq!(code(&ws.run(&["simulate"], &cfg)), 0);
    assert_eq!(code(&ws.run(&["analytic"], &cfg)), 0);
    let sim = read_csv(&ws.out().join("simulate.csv")).unwrap();
    let ana = read_csv(&ws.out().join("analytic.csv")).unwrap();
    assert_eq!(sim.rows.len(), ana.rows.len());
    let gap = sim
        .rows
        .iter()
        .zip(&ana.rows)
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
        .fold(0.0_f64, f64::max);
    assert!(gap <= 1e-9, "{gap}");
}

#[test]
fn track_only_keys_are_warned_not_rejected() {
    let ws = Workspace::new();
    let cfg = ws.config("omega = 3\n");
    let o = ws.run(&["analytic", "--epsilon", "2", "--steps", "10"], &cfg);
    assert_eq!(code(&o), 0);
    let err = stderr(&o);
    assert!(err.contains("warning") && err.contains("omega") && err.contains("epsilon"), "{err}");

    // Same output regardless of the ignored weights.
    let first = fs::read(ws.out().join("analytic.csv")).unwrap();
    let o = ws.run(&["analytic", "--steps", "10"], &ws.config(""));
    assert_eq!(code(&o), 0);
    assert!(!stderr(&o).contains("warning"));
    assert_eq!(fs::read(ws.out().join("analytic.csv")).unwrap(), first);
}

#[test]
fn non_convergence_exits_with_two_and_still_reports() {
    let ws = Workspace::new();
    let o = ws.run(&["track", "--steps", "400"], &ws.config("newton_max_iters = 2\n"));
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    let report = fs::read_to_string(ws.out().join("report.txt")).unwrap();
    assert!(report.contains("converged = false"));
    assert!(ws.out().join("track.csv").exists());
}

#[test]
fn track_writes_csv_report_and_plot() {
    let ws = Workspace::new();
    let o = ws.run(&["track", "--steps", "1000"], &ws.config("# coarse grid\nepsilon = 7\nT = 4\n"));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let table = read_csv(&ws.out().join("track.csv")).unwrap();
    assert_eq!(table.rows.len(), 1001);
    assert_eq!(&table.rows[0][1..6], &[0.5, 0.2, 0.7, 0.5, 0.4]);
    let (z, z_r) = (table.column("z").unwrap(), table.column("z_r").unwrap());
    assert_eq!(z_r[1000], 5.0);
    assert!((z[1000] - 5.0).abs() < 0.3);
    // u = −μ/ε in every row.
    for row in &table.rows {
        assert!((row[6] + row[11] / 7.0).abs() <= 1e-15 * (1.0 + row[11].abs()));
        assert!((row[7] + row[12] / 7.0).abs() <= 1e-15 * (1.0 + row[12].abs()));
    }
    let report = fs::read_to_string(ws.out().join("report.txt")).unwrap();
    assert!(report.contains("converged = true"));
    assert!(report.contains("steps = 1000"));
    let plot = fs::read_to_string(ws.out().join("track.gp")).unwrap();
    assert!(plot.contains("'track.csv'"));
}

#[test]
fn seedless_variable_is_accepted() {
    let ws = Workspace::new();
    let cfg = ws.config("steps = 20\n");
    let o = Command::new(env!("CARGO_BIN_EXE_nhtrack"))
        .args(["simulate", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(ws.out())
        .env("NHTRACK_SEEDLESS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let with = fs::read(ws.out().join("simulate.csv")).unwrap();
    assert_eq!(code(&ws.run(&["simulate"], &cfg)), 0);
    assert_eq!(fs::read(ws.out().join("simulate.csv")).unwrap(), with);
}

#[test]
fn check_passes_on_defaults() {
    let ws = Workspace::new();
    let o = ws.run(&["check"], &ws.config(""));
    let out = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{out}");
    assert!(!out.contains("FAIL"));
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 12);
}

//! CSV trajectories, plain-text reports and a gnuplot script.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{AdaptedState, Control};
use crate::pmp::{Costate, ReferenceTrajectory};

pub const CSV_HEADER: [&str; 18] = [
    "t", "x", "y", "z", "v1", "v2", "u1", "u2", "l1", "l2", "l3", "m1", "m2", "x_r", "y_r", "z_r", "v1_r", "v2_r",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// One row per grid point in the [`CSV_HEADER`] layout.
pub fn trajectory_table(
    times: &[f64],
    states: &[AdaptedState],
    controls: &[Control],
    costates: &[Costate],
    reference: &ReferenceTrajectory,
) -> Result<CsvTable> {
    let n = times.len();
    for (what, len) in [("states", states.len()), ("controls", controls.len()), ("costates", costates.len())] {
        if len != n {
            return Err(Error::InvalidArgument(format!(
                "{what} has {len} samples but the grid has {n}"
            )));
        }
    }
    let rows = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(CSV_HEADER.len());
            row.push(times[i]);
            row.extend(states[i].to_vec());
            row.extend(controls[i].u.iter());
            row.extend(costates[i].to_vec());
            row.extend(reference.sample(times[i]).to_vec());
            row
        })
        .collect();
    Ok(CsvTable {
        header: CSV_HEADER.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Floats are written with 17 significant digits, so every value reads back
/// bit-exactly. LF line endings, trailing newline.
pub fn write_csv(table: &CsvTable, path: &Path) -> Result<()> {
    let mut out = String::with_capacity(24 * table.header.len() * (table.rows.len() + 1));
    out.push_str(&table.header.join(","));
    out.push('\n');
    for row in &table.rows {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v:.16e}").expect("writing to a String");
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(io_err(path))
}

pub fn read_csv(path: &Path) -> Result<CsvTable> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument(format!("{} is empty", path.display())))?
        .split(',')
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidArgument(format!("{} row {}: {e}", path.display(), i + 1)))?;
        if row.len() != header.len() {
            return Err(Error::InvalidArgument(format!(
                "{} row {} has {} fields, header has {}",
                path.display(),
                i + 1,
                row.len(),
                header.len()
            )));
        }
        rows.push(row);
    }
    Ok(CsvTable { header, rows })
}

/// gnuplot commands plotting states against the reference, and the controls.
pub fn gnuplot_script(csv_name: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\nset key autotitle columnhead\nset xlabel 't'\n");
    s.push_str("set multiplot layout 3,2\n");
    for (col, refcol, name) in [(2, 14, "x"), (3, 15, "y"), (4, 16, "z"), (5, 17, "v1"), (6, 18, "v2")] {
        let _ = writeln!(
            s,
            "set title '{name}'\nplot '{csv_name}' using 1:{col} with lines, '' using 1:{refcol} with lines dashtype 2"
        );
    }
    let _ = writeln!(
        s,
        "set title 'controls'\nplot '{csv_name}' using 1:7 with lines, '' using 1:8 with lines"
    );
    s.push_str("unset multiplot\n");
    s
}

/// Summary of a `track` run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub config_echo: String,
    pub converged: bool,
    pub iterations: usize,
    pub residual_norms: Vec<f64>,
    pub final_residual: Vec<f64>,
    pub alpha_star: Vec<f64>,
    pub cost: f64,
    pub uncontrolled_cost: f64,
    pub initial_errors: [f64; 5],
    pub terminal_errors: [f64; 5],
    pub max_control: f64,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# configuration")?;
        for line in self.config_echo.lines() {
            writeln!(f, "  {line}")?;
        }
        writeln!(f, "# shooting")?;
        writeln!(f, "  converged = {}", self.converged)?;
        writeln!(f, "  iterations = {}", self.iterations)?;
        writeln!(f, "  alpha_star = {:?}", self.alpha_star)?;
        writeln!(f, "  final_residual = {:?}", self.final_residual)?;
        writeln!(f, "  residual_history:")?;
        for (i, r) in self.residual_norms.iter().enumerate() {
            writeln!(f, "    {i:3}  {r:.6e}")?;
        }
        writeln!(f, "# cost")?;
        writeln!(f, "  J = {:.12}", self.cost)?;
        writeln!(f, "  J(u = 0) = {:.12}", self.uncontrolled_cost)?;
        writeln!(f, "  max |u| = {:.6e}", self.max_control)?;
        writeln!(f, "# tracking errors |s - s_r| (initial -> terminal)")?;
        for (j, name) in ["x", "y", "z", "v1", "v2"].iter().enumerate() {
            let mark = if self.terminal_errors[j] < self.initial_errors[j] {
                "reduced"
            } else {
                "NOT reduced"
            };
            writeln!(
                f,
                "  {name:>2}: {:.6e} -> {:.6e}  {mark}",
                self.initial_errors[j], self.terminal_errors[j]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_table() -> CsvTable {
        let times = vec![0.0, 0.5];
        let states = vec![
            AdaptedState::from_slices(&[0.1, 0.2, 0.3], &[0.4, 0.5]),
            AdaptedState::from_slices(&[1.0 / 3.0, -2e-300, 5e300], &[f64::MIN_POSITIVE, -0.0]),
        ];
        let controls = vec![Control::from_slice(&[0.1, std::f64::consts::PI]); 2];
        let costates = vec![Costate::from_slices(&[1.0, 2.0, 3.0], &[4.0, 5.0]); 2];
        trajectory_table(&times, &states, &controls, &costates, &ReferenceTrajectory::paper()).unwrap()
    }

    #[test]
    fn csv_layout_and_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let table = small_table();
        write_csv(&table, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.ends_with('\n') && !text.contains('\r'));
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
        let back = read_csv(&path).unwrap();
        for (a, b) in back.rows.iter().flatten().zip(table.rows.iter().flatten()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.column("z_r").unwrap(), vec![1.0, 1.5]);
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("t.csv");
        let e = write_csv(&small_table(), &path).unwrap_err();
        assert!(matches!(e, Error::Io { .. }));
        assert!(e.to_string().contains("missing"));
    }

    #[test]
    fn misaligned_grids_are_rejected() {
        let r = trajectory_table(&[0.0], &[], &[], &[], &ReferenceTrajectory::paper());
        assert!(r.is_err());
    }
}

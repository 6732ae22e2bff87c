use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Format;
use crate::suites::{DiagonalRow, Report, TauTable};

/// Writes `bytes` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().ok_or_else(|| io::Error::other("output path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn csv_bytes<R: Serialize>(rows: impl IntoIterator<Item = R>) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

#[derive(Serialize)]
struct EntryRow<'a> {
    suite: String,
    id: &'a str,
    anchor: &'a str,
    residual: f64,
    tolerance: f64,
    pass: bool,
    wall_time_ms: f64,
}

/// Writes the report as `report.json` (tree) or `report.csv`, plus the
/// diagonal table and plot when the cohomology suite ran. Returns the paths.
pub fn write_report(report: &Report, dir: &Path, format: Format) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    match format {
        Format::Tree => {
            let path = dir.join("report.json");
            let mut text = serde_json::to_vec_pretty(report).map_err(io::Error::other)?;
            text.push(b'\n');
            write_atomic(&path, &text)?;
            written.push(path);
        }
        Format::Csv => {
            let rows = report.entries.iter().map(|e| EntryRow {
                suite: e.suite.to_string(),
                id: &e.id,
                anchor: &e.anchor,
                residual: e.residual,
                tolerance: e.tolerance,
                pass: e.pass,
                wall_time_ms: e.wall_time_ms,
            });
            let path = dir.join("report.csv");
            write_atomic(&path, &csv_bytes(rows)?)?;
            written.push(path);
        }
    }
    if let Some(summary) = &report.cohomology {
        written.extend(write_diagonal(&summary.tau_diagonal, dir)?);
    }
    Ok(written)
}

fn write_diagonal(rows: &[DiagonalRow], dir: &Path) -> io::Result<Vec<PathBuf>> {
    let csv_path = dir.join("tau_diagonal.csv");
    write_atomic(&csv_path, &csv_bytes(rows)?)?;
    let svg_path = dir.join("tau_diagonal.svg");
    write_atomic(&svg_path, diagonal_svg(rows).as_bytes())?;
    Ok(vec![csv_path, svg_path])
}

/// Writes `tau_matrix.csv`, `tau_diagonal.csv` and `tau_diagonal.svg`.
pub fn write_tau_table(table: &TauTable, dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = std::iter::once("").chain(table.labels.iter().map(String::as_str)).collect();
    w.write_record(&header).map_err(io::Error::other)?;
    for (label, row) in table.labels.iter().zip(&table.matrix) {
        let record: Vec<String> = std::iter::once(label.clone()).chain(row.iter().map(|v| format!("{v:.17e}"))).collect();
        w.write_record(&record).map_err(io::Error::other)?;
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    let matrix_path = dir.join("tau_matrix.csv");
    write_atomic(&matrix_path, &bytes)?;
    let mut written = vec![matrix_path];
    written.extend(write_diagonal(&table.diagonal, dir)?);
    Ok(written)
}

/// Scatter plot of `n ↦ c(c_n, s_n)` with the expected values as a line.
pub fn diagonal_svg(rows: &[DiagonalRow]) -> String {
    const W: f64 = 480.0;
    const H: f64 = 320.0;
    const PAD: f64 = 48.0;
    let n_max = rows.len().max(1) as f64;
    let (lo, hi) = rows
        .iter()
        .flat_map(|r| [r.value, r.expected])
        .fold((0.0f64, 0.0f64), |(a, b), v| (a.min(v), b.max(v)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x = |n: f64| PAD + (n - 0.5) / n_max * (W - 2.0 * PAD);
    let y = |v: f64| H - PAD - (v - lo) / span * (H - 2.0 * PAD);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{PAD}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"black\"/>\n\
         <line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{y2:.2}\" stroke=\"black\"/>\n",
        y0 = y(0.0),
        x1 = W - PAD,
        y2 = H - PAD,
    );
    let line: Vec<String> = rows.iter().map(|r| format!("{:.2},{:.2}", x(r.n as f64), y(r.expected))).collect();
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n",
        line.join(" ")
    ));
    for r in rows {
        let (cx, cy) = (x(r.n as f64), y(r.value));
        svg.push_str(&format!("<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"4\" fill=\"#1f5fa8\"/>\n"));
        svg.push_str(&format!(
            "<text x=\"{cx:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            H - PAD + 16.0,
            r.n
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">n</text>\n\
         <text x=\"14\" y=\"{PAD}\" font-size=\"12\">c(c_n, s_n)</text>\n</svg>\n",
        W / 2.0,
        H - 8.0
    ));
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = std::env::temp_dir().join(format!("jetmoment-out-{}", std::process::id()));
        let path = dir.join("x.txt");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"two");
        assert!(!dir.join(".x.txt.tmp").exists());
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn svg_has_one_marker_per_row() {
        let rows: Vec<_> = (1..=4).map(|n| DiagonalRow { n, value: n as f64, expected: n as f64 }).collect();
        let svg = diagonal_svg(&rows);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}

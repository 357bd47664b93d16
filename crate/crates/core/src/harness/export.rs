use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::batch::StatsTable;
use super::friedman::FriedmanResult;
use crate::error::{CsmaError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = CsmaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(CsmaError::InvalidInput(format!("unknown export format `{other}`"))),
        }
    }
}

/// Scientific notation with four decimals and a signed two-digit exponent,
/// e.g. `3.0083E-05`.
pub fn format_sci(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.4E}");
    let (mantissa, exp) = s.split_once('E').expect("E formatting always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}E{sign}{:02}", exp.abs())
}

pub fn write_stats_csv<W: Write>(mut w: W, table: &StatsTable) -> std::io::Result<()> {
    write!(w, "function_id,optimizer,average,std")?;
    for r in 0..table.runs {
        write!(w, ",run_{r}")?;
    }
    writeln!(w)?;
    for row in &table.rows {
        write!(
            w,
            "{},{},{},{}",
            row.function_id,
            row.optimizer,
            format_sci(row.average),
            format_sci(row.std)
        )?;
        for v in &row.per_run {
            write!(w, ",{}", format_sci(*v))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_friedman_csv<W: Write>(mut w: W, result: &FriedmanResult, labels: &[String]) -> std::io::Result<()> {
    writeln!(w, "treatment,mean_rank,chi_square,p_value,blocks,treatments")?;
    for (j, rank) in result.mean_ranks.iter().enumerate() {
        let label = labels.get(j).cloned().unwrap_or_else(|| j.to_string());
        writeln!(
            w,
            "{label},{rank},{},{},{},{}",
            format_sci(result.chi_square),
            format_sci(result.p_value),
            result.blocks,
            result.treatments
        )?;
    }
    Ok(())
}

/// Per-iteration trace CSV with header `iteration,best_so_far`.
pub fn write_trace_csv<W: Write>(mut w: W, trace: &[f64]) -> std::io::Result<()> {
    writeln!(w, "iteration,best_so_far")?;
    for (t, v) in trace.iter().enumerate() {
        writeln!(w, "{},{v:e}", t + 1)?;
    }
    Ok(())
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| CsmaError::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w).and_then(|_| w.flush()).map_err(|e| CsmaError::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CsmaError::json(path, e))?;
    write_file(path, |w| writeln!(w, "{text}"))
}

/// JSON output is a full-precision dump; CSV follows the 4-digit table style.
pub fn export_stats(table: &StatsTable, format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Csv => write_file(path, |w| write_stats_csv(w, table)),
        ExportFormat::Json => write_json(path, table),
    }
}

pub fn export_friedman(result: &FriedmanResult, labels: &[String], format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Csv => write_file(path, |w| write_friedman_csv(w, result, labels)),
        ExportFormat::Json => write_json(path, result),
    }
}

pub fn export_trace(trace: &[f64], path: &Path) -> Result<()> {
    write_file(path, |w| write_trace_csv(w, trace))
}

pub fn read_stats_json(path: &Path) -> Result<StatsTable> {
    let text = std::fs::read_to_string(path).map_err(|e| CsmaError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CsmaError::json(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::batch::{OptimizerKind, StatsRow};

    #[test]
    fn sci_formatting() {
        assert_eq!(format_sci(0.000_030_083), "3.0083E-05");
        assert_eq!(format_sci(0.0), "0.0000E+00");
        assert_eq!(format_sci(-12_569.487), "-1.2569E+04");
        assert_eq!(format_sci(4.440_892_098_500_626e-16), "4.4409E-16");
        assert_eq!(format_sci(7.1661e-169), "7.1661E-169");
        assert_eq!(format_sci(f64::INFINITY), "inf");
    }

    #[test]
    fn empty_table_is_header_only() {
        let mut buf = Vec::new();
        write_stats_csv(&mut buf, &StatsTable { runs: 2, rows: vec![] }).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "function_id,optimizer,average,std,run_0,run_1\n"
        );
    }

    #[test]
    fn csv_row_layout() {
        let t = StatsTable {
            runs: 2,
            rows: vec![StatsRow::from_runs(
                "F3".parse().unwrap(),
                OptimizerKind::Csma,
                vec![1.0, 3.0],
            )],
        };
        let mut buf = Vec::new();
        write_stats_csv(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "F3,csma,2.0000E+00,1.4142E+00,1.0000E+00,3.0000E+00"
        );
    }

    #[test]
    fn json_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("stats.json");
        let t = StatsTable {
            runs: 3,
            rows: vec![StatsRow::from_runs(
                "F10".parse().unwrap(),
                OptimizerKind::RandomSearch,
                vec![0.1 + 0.2, 1.0 / 3.0, 4.440_892_098_500_626e-16],
            )],
        };
        export_stats(&t, ExportFormat::Json, &path).unwrap();
        assert_eq!(read_stats_json(&path).unwrap(), t);
    }

    #[test]
    fn io_error_names_path() {
        let err = export_stats(
            &StatsTable::default(),
            ExportFormat::Csv,
            Path::new("/nonexistent/dir/x.csv"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/x.csv"));
    }
}

//! CSV emission: comma-separated, mandatory header, 12 significant digits,
//! `\n` line endings. Identical inputs produce byte-identical output.

use std::io::{self, Write};

pub struct CsvTable {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(header: &[&'static str]) -> Self {
        CsvTable { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.header.len(), "ragged CSV row");
        assert!(
            row.iter().all(|v| v.is_finite()),
            "refusing to emit a non-finite value: {row:?}"
        );
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            let mut first = true;
            for v in row {
                if !first {
                    write!(out, ",")?;
                }
                write!(out, "{}", format_value(*v))?;
                first = false;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// 12 significant digits in scientific notation.
fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::args::Format;
use crate::CliError;

/// Rows for csv and table output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub json: Value,
    pub table: Table,
    pub dot: Option<String>,
}

impl Report {
    pub fn new(json: Value, table: Table) -> Self {
        Report { json, table, dot: None }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(format!("{}\n", self.json)),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).map_err(csv_err)?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(csv_err)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Table => Ok(render_table(&self.table)),
            Format::Dot => {
                self.dot.clone().ok_or_else(|| CliError::Usage("--format dot is only available for `vertices`".into()))
            }
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn render_table(t: &Table) -> String {
    let cols = t.header.len();
    let mut widths: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = (0..cols).map(|i| format!("{:<w$}", cells[i], w = widths[i])).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(&t.header);
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn complex_text(z: Complex64) -> String {
    // adding 0.0 turns -0.0 into 0.0
    let z = Complex64::new(z.re + 0.0, z.im + 0.0);
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

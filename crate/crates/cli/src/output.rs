//! Records and their three renderings: an aligned text table, JSON lines
//! and CSV. Numbers are printed with 17 significant digits so identical
//! runs are byte-identical and every `f64` round-trips.

use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    /// A numeric field whose computation failed.
    Error,
}

impl Field {
    pub fn text(s: impl Into<String>) -> Self {
        Field::Text(s.into())
    }

    /// Non-finite numbers are errors.
    pub fn num(v: f64) -> Self {
        if v.is_finite() {
            Field::Num(v)
        } else {
            Field::Error
        }
    }

    pub fn render(&self) -> String {
        match self {
            Field::Num(v) => format_g17(*v),
            Field::Int(i) => i.to_string(),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
            Field::Error => "error".into(),
        }
    }

    fn json(&self) -> String {
        match self {
            Field::Num(v) => format_g17(*v),
            Field::Int(i) => i.to_string(),
            Field::Text(s) => serde_json::to_string(s).expect("strings serialize"),
            Field::Bool(b) => b.to_string(),
            Field::Error => "\"error\"".into(),
        }
    }
}

/// C's `%.17g`.
pub fn format_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.into();
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub fields: Vec<(&'static str, Field)>,
    /// Error or tolerance breach.
    pub failed: bool,
}

impl Record {
    pub fn new() -> Self {
        Self { fields: Vec::new(), failed: false }
    }

    pub fn with(mut self, name: &'static str, value: Field) -> Self {
        self.failed |= value == Field::Error;
        self.fields.push((name, value));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Field> {
        self.fields.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    pub fn num(&self, name: &str) -> Option<f64> {
        match self.get(name) {
            Some(Field::Num(v)) => Some(*v),
            _ => None,
        }
    }
}

impl Default for Record {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

pub fn write_records(out: &mut dyn Write, command: &str, records: &[Record], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                let body: Vec<String> = std::iter::once(format!("\"command\":{}", Field::text(command).json()))
                    .chain(r.fields.iter().map(|(k, v)| format!("\"{k}\":{}", v.json())))
                    .collect();
                writeln!(out, "{{{}}}", body.join(","))?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.fields.iter().map(|(k, _)| *k))?;
            }
            for r in records {
                w.write_record(r.fields.iter().map(|(_, v)| v.render()))?;
            }
            w.flush()
        }
        Format::Table => {
            let Some(first) = records.first() else { return Ok(()) };
            let header: Vec<&str> = first.fields.iter().map(|(k, _)| *k).collect();
            let rows: Vec<Vec<String>> =
                records.iter().map(|r| r.fields.iter().map(|(_, v)| v.render()).collect()).collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(header.clone()))?;
            for row in &rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
            Ok(())
        }
    }
}

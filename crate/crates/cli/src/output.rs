//! Flat records rendered as JSON, CSV or aligned plain text.
//!
//! Undefined quantities are `None` and come out as `null` / an empty CSV
//! field / `-`, never as zero.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(Option<f64>),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(Some(x))
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        Value::Num(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Int(n)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn push(&mut self, key: &'static str, v: impl Into<Value>) -> &mut Self {
        self.0.push((key, v.into()));
        self
    }

    fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|(k, _)| *k)
    }

    fn to_json(&self) -> Json {
        let mut m = Map::new();
        for (k, v) in &self.0 {
            let j = match v {
                // non-finite values never reach a record, but map them to null regardless
                Value::Num(x) => x.filter(|x| x.is_finite()).map_or(Json::Null, Json::from),
                Value::Int(n) => Json::from(*n),
                Value::Bool(b) => Json::from(*b),
                Value::Text(s) => Json::from(s.as_str()),
            };
            m.insert((*k).to_owned(), j);
        }
        Json::Object(m)
    }

    fn csv_fields(&self) -> Vec<String> {
        self.0
            .iter()
            .map(|(_, v)| match v {
                Value::Num(Some(x)) if x.is_finite() => format!("{x:?}"),
                Value::Num(_) => String::new(),
                Value::Int(n) => n.to_string(),
                Value::Bool(b) => b.to_string(),
                Value::Text(s) => s.clone(),
            })
            .collect()
    }

    fn plain_fields(&self) -> Vec<String> {
        self.0
            .iter()
            .map(|(_, v)| match v {
                Value::Num(Some(x)) if x.is_finite() => sig10(*x),
                Value::Num(_) => "-".to_owned(),
                Value::Int(n) => n.to_string(),
                Value::Bool(b) => b.to_string(),
                Value::Text(s) => s.clone(),
            })
            .collect()
    }
}

/// Ten significant digits; scientific notation outside `[1e-4, 1e10)`.
pub fn sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..10).contains(&e) {
        format!("{:.*}", (9 - e) as usize, x)
    } else {
        format!("{x:.9e}")
    }
}

/// Writes a single record.
pub fn write_record(out: &mut impl Write, format: Format, rec: &Record) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", rec.to_json()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(rec.keys())?;
            w.write_record(rec.csv_fields())?;
            w.flush()
        }
        Format::Plain => {
            let width = rec.keys().map(str::len).max().unwrap_or(0);
            for (k, v) in rec.keys().zip(rec.plain_fields()) {
                writeln!(out, "{k:<width$}  {v}")?;
            }
            Ok(())
        }
    }
}

/// Streams records that share one set of keys: JSON Lines, CSV with a
/// single header row, or a whitespace-aligned table.
pub struct Table<W: Write> {
    format: Format,
    header_written: bool,
    /// Plain rows held back until [`Table::flush`] so columns can be sized.
    pending: Option<Vec<Vec<String>>>,
    out: W,
}

const PLAIN_WIDTH: usize = 18;

impl<W: Write> Table<W> {
    /// Plain rows use fixed-width columns and are written immediately.
    pub fn new(out: W, format: Format) -> Self {
        Table {
            format,
            header_written: false,
            pending: None,
            out,
        }
    }

    /// Plain rows are buffered and the columns sized to fit.
    pub fn aligned(out: W, format: Format) -> Self {
        Table {
            pending: Some(Vec::new()),
            ..Table::new(out, format)
        }
    }

    pub fn row(&mut self, rec: &Record) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", rec.to_json())?,
            Format::Csv => {
                if !self.header_written {
                    write_csv_line(&mut self.out, rec.keys())?;
                }
                write_csv_line(&mut self.out, rec.csv_fields())?;
            }
            Format::Plain => {
                let header = (!self.header_written).then(|| rec.keys().map(str::to_owned).collect());
                match &mut self.pending {
                    Some(rows) => {
                        rows.extend(header);
                        rows.push(rec.plain_fields());
                    }
                    None => {
                        if let Some(h) = header {
                            write_plain_line(&mut self.out, &h, &[])?;
                        }
                        write_plain_line(&mut self.out, &rec.plain_fields(), &[])?;
                    }
                }
            }
        }
        self.header_written = true;
        Ok(())
    }

    pub fn flush(&mut self) -> io::Result<()> {
        if let Some(rows) = self.pending.take() {
            let cols = rows.first().map_or(0, Vec::len);
            let widths: Vec<usize> = (0..cols)
                .map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
                .collect();
            for r in &rows {
                write_plain_line(&mut self.out, r, &widths)?;
            }
            self.pending = Some(Vec::new());
        }
        self.out.flush()
    }
}

/// First column left-aligned, the rest right-aligned; missing widths
/// fall back to [`PLAIN_WIDTH`].
fn write_plain_line(out: &mut impl Write, fields: &[String], widths: &[usize]) -> io::Result<()> {
    let mut line = String::new();
    for (i, f) in fields.iter().enumerate() {
        let w = widths.get(i).copied().unwrap_or(PLAIN_WIDTH);
        if i == 0 {
            line.push_str(&format!("{f:<w$}"));
        } else {
            line.push_str(&format!("  {f:>w$}"));
        }
    }
    writeln!(out, "{}", line.trim_end())
}

fn write_csv_line<I, S>(out: &mut impl Write, fields: I) -> io::Result<()>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(fields)?;
    w.flush()
}

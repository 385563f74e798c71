use std::io::{self, Write};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Str(String),
}

/// An ordered list of named fields. A `None` field is a column with no value
/// (left empty in CSV, omitted in JSON), so pole records never carry NaN.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputRecord {
    fields: Vec<(&'static str, Option<Value>)>,
}

impl OutputRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn str(&mut self, name: &'static str, v: impl Into<String>) -> &mut Self {
        self.fields.push((name, Some(Value::Str(v.into()))));
        self
    }

    pub fn int(&mut self, name: &'static str, v: Option<i64>) -> &mut Self {
        self.fields.push((name, v.map(Value::Int)));
        self
    }

    pub fn num(&mut self, name: &'static str, v: Option<f64>) -> &mut Self {
        self.fields
            .push((name, v.filter(|x| x.is_finite()).map(Value::Num)));
        self
    }

    /// Adds `<prefix>_re` and `<prefix>_im`.
    pub fn complex(
        &mut self,
        re: &'static str,
        im: &'static str,
        v: Option<Complex64>,
    ) -> &mut Self {
        let v = v.filter(|z| z.re.is_finite() && z.im.is_finite());
        self.num(re, v.map(|z| z.re));
        self.num(im, v.map(|z| z.im))
    }

    pub fn append(&mut self, other: OutputRecord) -> &mut Self {
        self.fields.extend(other.fields);
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.fields.iter().map(|(n, _)| *n)
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.fields
            .iter()
            .find(|(n, _)| *n == name)
            .and_then(|(_, v)| v.as_ref())
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell(v: &Option<Value>) -> String {
    match v {
        None => String::new(),
        Some(Value::Num(x)) => format_number(*x),
        Some(Value::Int(n)) => n.to_string(),
        Some(Value::Str(s)) => s.clone(),
    }
}

/// Streams records as CSV (header first) or as one JSON object per line.
pub struct RecordWriter<W: Write> {
    format: Format,
    csv: Option<csv::Writer<W>>,
    json: Option<W>,
    header_written: bool,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(format: Format, out: W) -> Self {
        match format {
            Format::Csv => Self {
                format,
                csv: Some(csv::WriterBuilder::new().has_headers(false).from_writer(out)),
                json: None,
                header_written: false,
            },
            Format::Json => Self {
                format,
                csv: None,
                json: Some(out),
                header_written: false,
            },
        }
    }

    pub fn write(&mut self, record: &OutputRecord) -> io::Result<()> {
        match self.format {
            Format::Csv => {
                let w = self.csv.as_mut().expect("csv writer");
                if !self.header_written {
                    w.write_record(record.names())?;
                    self.header_written = true;
                }
                w.write_record(record.fields.iter().map(|(_, v)| cell(v)))?;
                Ok(())
            }
            Format::Json => {
                let w = self.json.as_mut().expect("json writer");
                let body: Vec<String> = record
                    .fields
                    .iter()
                    .filter_map(|(name, v)| {
                        let v = v.as_ref()?;
                        let rendered = match v {
                            Value::Num(x) => format_number(*x),
                            Value::Int(n) => n.to_string(),
                            Value::Str(s) => serde_json::to_string(s).expect("string"),
                        };
                        Some(format!("{}:{}", serde_json::to_string(name).expect("key"), rendered))
                    })
                    .collect();
                writeln!(w, "{{{}}}", body.join(","))
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        if let Some(mut w) = self.csv.take() {
            w.flush()?;
        }
        if let Some(mut w) = self.json.take() {
            w.flush()?;
        }
        Ok(())
    }
}

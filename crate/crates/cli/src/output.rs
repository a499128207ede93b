//! Result records and their two serializations.

use serde::{Deserialize, Serialize};

use crate::config::Format;

/// What a record is indexed by: a coweight or a label such as a Weyl group
/// word or a field name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Key {
    Weight(Vec<i32>),
    Label(String),
}

impl Key {
    fn render(&self) -> String {
        match self {
            Key::Weight(w) => w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            Key::Label(s) => s.clone(),
        }
    }
}

/// A canonical coefficient rendering or a complex number `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Text(String),
    Complex([f64; 2]),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Complex([re, im]) => {
                if *im < 0.0 {
                    format!("{re:.12} - {:.12}i", -im)
                } else {
                    format!("{re:.12} + {im:.12}i")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub command: String,
    pub context: String,
    pub key: Key,
    pub coefficient: Value,
}

impl Record {
    pub fn parse(line: &str) -> serde_json::Result<Record> {
        serde_json::from_str(line)
    }
}

/// Serialize the records of one job. Empty input gives empty output.
pub fn render(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Records => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
        }
        Format::Table => {
            let Some(first) = records.first() else {
                return out;
            };
            out.push_str(&format!("# {} on {}\n", first.command, first.context));
            let keys: Vec<String> = records.iter().map(|r| r.key.render()).collect();
            let width = keys.iter().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, r) in keys.iter().zip(records) {
                out.push_str(&format!("{k:<width$}  {}\n", r.coefficient.render()));
            }
        }
    }
    out
}

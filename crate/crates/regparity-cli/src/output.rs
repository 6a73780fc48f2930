//! Line-oriented structured output: a versioned header, the seed and the
//! command, then records introduced by `[kind]` with one `key: value` per
//! line. Repeated keys keep their order.
//!
//! ```text
//! %regparity-structured v1
//! seed: 1509949441
//! command: regconst
//! [table]
//! group: S3
//! irreducibles: 1 eps rho2
//! row: Theta | 2S3+1-2C2-C3 | 3 3 3
//! ```

use std::fmt;

use regparity::parity_engine::{Evidence, Parity, ParityVerdict};
use regparity::regconst::{RegConstTable, SquareClass};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;
const HEADER: &str = "%regparity-structured v";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    #[must_use]
    pub fn new(kind: &str) -> Self {
        Self { kind: kind.into(), fields: Vec::new() }
    }

    #[must_use]
    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    /// The only value of `key`.
    pub fn get(&self, key: &str) -> Result<&str, CliError> {
        let mut it = self.fields.iter().filter(|(k, _)| k == key);
        match (it.next(), it.next()) {
            (Some((_, v)), None) => Ok(v),
            (None, _) => Err(CliError::Input(format!("[{}] has no '{key}'", self.kind))),
            _ => Err(CliError::Input(format!("[{}] has more than one '{key}'", self.kind))),
        }
    }

    /// Every value of `key`, in order.
    #[must_use]
    pub fn all(&self, key: &str) -> Vec<&str> {
        self.fields.iter().filter(|(k, _)| k == key).map(|(_, v)| v.as_str()).collect()
    }

    fn expect_kind(&self, kind: &str) -> Result<(), CliError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(CliError::Input(format!("expected [{kind}], found [{}]", self.kind)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub version: u32,
    pub seed: u64,
    pub command: String,
    pub records: Vec<Record>,
}

impl Document {
    #[must_use]
    pub fn new(seed: u64, command: &str) -> Self {
        Self { version: FORMAT_VERSION, seed, command: command.into(), records: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let err = |line: usize, column: usize, message: &str| CliError::Parse { line, column, message: message.into() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, first) = lines.next().ok_or_else(|| err(1, 1, "empty document"))?;
        let version = first
            .strip_prefix(HEADER)
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(|| err(1, 1, "missing '%regparity-structured v<N>' header"))?;
        if version != FORMAT_VERSION {
            return Err(err(1, HEADER.len() + 1, &format!("unsupported version {version}")));
        }
        let mut seed = None;
        let mut command = None;
        let mut records: Vec<Record> = Vec::new();
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(kind) = line.strip_prefix('[') {
                let kind = kind.strip_suffix(']').ok_or_else(|| err(n, line.len() + 1, "expected ']'"))?;
                if kind.is_empty() || kind.contains(char::is_whitespace) {
                    return Err(err(n, 2, "bad record kind"));
                }
                records.push(Record::new(kind));
                continue;
            }
            let (key, value) = line.split_once(": ").or_else(|| line.strip_suffix(':').map(|k| (k, ""))).ok_or_else(|| err(n, 1, "expected 'key: value'"))?;
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(err(n, 1, "bad key"));
            }
            match (records.last_mut(), key) {
                (Some(r), _) => r.fields.push((key.into(), value.into())),
                (None, "seed") => seed = Some(value.parse::<u64>().map_err(|_| err(n, key.len() + 3, "seed must be an unsigned integer"))?),
                (None, "command") => command = Some(value.to_string()),
                (None, _) => return Err(err(n, 1, &format!("unexpected header key '{key}'"))),
            }
        }
        Ok(Self {
            version,
            seed: seed.ok_or_else(|| err(2, 1, "missing seed"))?,
            command: command.ok_or_else(|| err(3, 1, "missing command"))?,
            records,
        })
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}{}", self.version)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "command: {}", self.command)?;
        for r in &self.records {
            writeln!(f, "[{}]", r.kind)?;
            for (k, v) in &r.fields {
                if v.is_empty() {
                    writeln!(f, "{k}:")?;
                } else {
                    writeln!(f, "{k}: {v}")?;
                }
            }
        }
        Ok(())
    }
}

/// Conversion to and from one structured record.
pub trait Structured: Sized {
    fn to_record(&self) -> Record;
    fn from_record(r: &Record) -> Result<Self, CliError>;
}

impl Structured for ParityVerdict {
    fn to_record(&self) -> Record {
        let r = Record::new("verdict")
            .with("combination", &self.combination)
            .with("parity", self.parity.name())
            .with("evidence", self.evidence.name());
        self.assumptions.iter().fold(r, |r, a| r.with("assumption", a))
    }

    fn from_record(r: &Record) -> Result<Self, CliError> {
        r.expect_kind("verdict")?;
        let parity = r.get("parity")?;
        let evidence = r.get("evidence")?;
        Ok(Self {
            combination: r.get("combination")?.into(),
            parity: Parity::parse(parity).ok_or_else(|| CliError::Input(format!("bad parity '{parity}'")))?,
            evidence: Evidence::parse(evidence).ok_or_else(|| CliError::Input(format!("bad evidence '{evidence}'")))?,
            assumptions: r.all("assumption").into_iter().map(String::from).collect(),
        })
    }
}

impl Structured for RegConstTable {
    fn to_record(&self) -> Record {
        let r = Record::new("table").with("group", &self.group).with("irreducibles", self.irreducibles.join(" "));
        self.relations.iter().zip(&self.entries).fold(r, |r, ((name, display), row)| {
            let values: Vec<String> = row.iter().map(ToString::to_string).collect();
            r.with("row", format!("{name} | {display} | {}", values.join(" ")))
        })
    }

    fn from_record(r: &Record) -> Result<Self, CliError> {
        r.expect_kind("table")?;
        let irreducibles: Vec<String> = r.get("irreducibles")?.split_whitespace().map(String::from).collect();
        let mut relations = Vec::new();
        let mut entries = Vec::new();
        for row in r.all("row") {
            let parts: Vec<&str> = row.split(" | ").collect();
            let [name, display, values] = parts[..] else {
                return Err(CliError::Input(format!("bad table row '{row}'")));
            };
            let values = values
                .split_whitespace()
                .map(|v| SquareClass::parse(v).ok_or_else(|| CliError::Input(format!("bad square class '{v}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            if values.len() != irreducibles.len() {
                return Err(CliError::Input(format!("row '{name}' has {} entries for {} irreducibles", values.len(), irreducibles.len())));
            }
            relations.push((name.to_string(), display.to_string()));
            entries.push(values);
        }
        Ok(Self { group: r.get("group")?.into(), relations, irreducibles, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trip() {
        let mut d = Document::new(7, "parity");
        d.records.push(Record::new("verdict").with("parity", "odd").with("assumption", "").with("assumption", "a: b"));
        let text = d.to_string();
        assert_eq!(Document::parse(&text).unwrap(), d);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Document::parse("%regparity-structured v1\nseed: x\n") {
            Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 7)),
            other => panic!("{other:?}"),
        }
        match Document::parse("%regparity-structured v1\nseed: 1\ncommand: c\n[table\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Document::parse("hello"), Err(CliError::Parse { line: 1, .. })));
    }
}

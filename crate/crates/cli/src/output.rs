use std::fmt;
use std::io::Write;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use sylow_core::{CheckRecord, GroupId};

use crate::args::Format;
use crate::commands::CliError;

/// One output row. Values hold decimal integers, `num/den` rationals and
/// short strings, so every number re-parses exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub family: Option<String>,
    pub n: Option<u32>,
    pub q: Option<u64>,
    pub r: Option<String>,
    pub op: String,
    pub values: Vec<(String, String)>,
    pub verdict: String,
}

const FIXED: [&str; 6] = ["family", "n", "q", "r", "op", "verdict"];

impl OutputRecord {
    pub fn new(op: &str, verdict: &str) -> Self {
        OutputRecord {
            family: None,
            n: None,
            q: None,
            r: None,
            op: op.to_string(),
            values: Vec::new(),
            verdict: verdict.to_string(),
        }
    }

    pub fn for_group(op: &str, g: &GroupId, verdict: &str) -> Self {
        let mut rec = OutputRecord::new(op, verdict);
        rec.family = Some(g.family().tag().to_string());
        rec.n = g.rank();
        rec.q = g.q_value();
        rec
    }

    pub fn value(mut self, key: &str, v: impl ToString) -> Self {
        self.values.push((key.to_string(), v.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn cell(&self, column: &str) -> String {
        match column {
            "family" => self.family.clone().unwrap_or_default(),
            "n" => self.n.map(|n| n.to_string()).unwrap_or_default(),
            "q" => self.q.map(|q| q.to_string()).unwrap_or_default(),
            "r" => self.r.clone().unwrap_or_default(),
            "op" => self.op.clone(),
            "verdict" => self.verdict.clone(),
            _ => self.get(column).unwrap_or_default().to_string(),
        }
    }
}

impl From<&CheckRecord> for OutputRecord {
    fn from(rec: &CheckRecord) -> Self {
        OutputRecord {
            family: rec.family.map(|f| f.tag().to_string()),
            n: rec.n,
            q: rec.q,
            r: rec.r.clone(),
            op: rec.op.to_string(),
            values: rec.values.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            verdict: rec.outcome.as_str().to_string(),
        }
    }
}

impl Serialize for OutputRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        if let Some(f) = &self.family {
            map.serialize_entry("family", f)?;
        }
        if let Some(n) = self.n {
            map.serialize_entry("n", &n)?;
        }
        if let Some(q) = self.q {
            map.serialize_entry("q", &q)?;
        }
        if let Some(r) = &self.r {
            map.serialize_entry("r", r)?;
        }
        map.serialize_entry("op", &self.op)?;
        for (k, v) in &self.values {
            map.serialize_entry(k, v)?;
        }
        map.serialize_entry("verdict", &self.verdict)?;
        map.end()
    }
}

struct RecordVisitor;

impl<'de> Visitor<'de> for RecordVisitor {
    type Value = OutputRecord;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an output record")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<OutputRecord, A::Error> {
        let mut rec = OutputRecord::new("", "");
        let (mut op, mut verdict) = (None, None);
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "family" => rec.family = Some(map.next_value()?),
                "n" => rec.n = Some(map.next_value()?),
                "q" => rec.q = Some(map.next_value()?),
                "r" => rec.r = Some(map.next_value()?),
                "op" => op = Some(map.next_value()?),
                "verdict" => verdict = Some(map.next_value()?),
                _ => {
                    let v: String = map.next_value()?;
                    rec.values.push((key, v));
                }
            }
        }
        rec.op = op.ok_or_else(|| de::Error::missing_field("op"))?;
        rec.verdict = verdict.ok_or_else(|| de::Error::missing_field("verdict"))?;
        Ok(rec)
    }
}

impl<'de> Deserialize<'de> for OutputRecord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(RecordVisitor)
    }
}

/// Writes all records. CSV columns are the fixed fields plus every value
/// key in order of first appearance.
pub fn write_records<W: Write>(out: &mut W, records: &[OutputRecord], format: Format) -> Result<(), CliError> {
    match format {
        Format::Jsonl => {
            for rec in records {
                serde_json::to_writer(&mut *out, rec).map_err(|e| CliError::Io(e.to_string()))?;
                out.write_all(b"\n").map_err(|e| CliError::Io(e.to_string()))?;
            }
        }
        Format::Csv => {
            let mut columns: Vec<String> = FIXED[..5].iter().map(|c| c.to_string()).collect();
            for rec in records {
                for (k, _) in &rec.values {
                    if !columns.contains(k) {
                        columns.push(k.clone());
                    }
                }
            }
            columns.push("verdict".to_string());
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&columns).map_err(|e| CliError::Io(e.to_string()))?;
            for rec in records {
                w.write_record(columns.iter().map(|c| rec.cell(c)))
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut rec = OutputRecord::new("theorem1", "expected")
            .value("sylow_order", "4826809")
            .value("K", "7/2")
            .value("lhs", "1".repeat(80));
        rec.family = Some("G2".into());
        rec.q = Some(3);
        rec.r = Some("13".into());
        rec
    }

    #[test]
    fn json_round_trip_keeps_order() {
        let rec = sample();
        let line = serde_json::to_string(&rec).unwrap();
        assert!(line.starts_with(r#"{"family":"G2","q":3,"r":"13","op":"theorem1","sylow_order""#));
        assert!(line.ends_with(r#""verdict":"expected"}"#));
        let back: OutputRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn csv_has_union_of_columns() {
        let a = OutputRecord::new("x", "pass").value("a", 1);
        let b = OutputRecord::new("y", "fail").value("b", 2).value("a", 3);
        let mut buf = Vec::new();
        write_records(&mut buf, &[a, b], Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, vec!["family,n,q,r,op,a,b,verdict", ",,,,x,1,,pass", ",,,,y,3,2,fail"]);
    }
}

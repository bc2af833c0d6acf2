//! Line-oriented engine checkpoint.
//!
//! ```text
//! # moead-adf snapshot v1
//! generation<TAB>3
//! rng<TAB>42<TAB>1216
//! ideal<TAB>-0.5,-12,3
//! <index><TAB><w1,w2,...><TAB><effort><TAB><f1,f2,...>
//! ```
//!
//! Floats are written in Rust's shortest round-trip form, so parsing gives
//! back the exact values.

use std::fmt::Write as _;

use super::EngineError;

const MAGIC: &str = "# moead-adf snapshot v1";

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRecord {
    pub index: usize,
    pub weight: Vec<f64>,
    pub effort: usize,
    pub objectives: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub generation: usize,
    pub rng_seed: u64,
    pub rng_word_pos: u128,
    pub ideal: Vec<f64>,
    pub records: Vec<SnapshotRecord>,
}

fn join(values: &[f64]) -> String {
    let mut s = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "{v}").unwrap();
    }
    s
}

impl Snapshot {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{MAGIC}").unwrap();
        writeln!(out, "generation\t{}", self.generation).unwrap();
        writeln!(out, "rng\t{}\t{}", self.rng_seed, self.rng_word_pos).unwrap();
        writeln!(out, "ideal\t{}", join(&self.ideal)).unwrap();
        for r in &self.records {
            writeln!(out, "{}\t{}\t{}\t{}", r.index, join(&r.weight), r.effort, join(&r.objectives))
                .unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, EngineError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, message: String| EngineError::Snapshot { line: line + 1, message };

        match lines.next() {
            Some((_, l)) if l.trim() == MAGIC => {}
            Some((i, _)) => return Err(err(i, "missing snapshot header".into())),
            None => return Err(err(0, "empty snapshot".into())),
        }
        let mut header = |key: &str| -> Result<(usize, Vec<String>), EngineError> {
            let (i, line) =
                lines.next().ok_or_else(|| err(0, format!("missing `{key}` line")))?;
            let mut fields = line.split('\t');
            if fields.next() != Some(key) {
                return Err(err(i, format!("expected `{key}` line")));
            }
            Ok((i, fields.map(str::to_owned).collect()))
        };

        let (i, g) = header("generation")?;
        let generation = parse_one(&g, 0, i, "generation")?;
        let (i, r) = header("rng")?;
        let rng_seed = parse_one(&r, 0, i, "rng seed")?;
        let rng_word_pos = parse_one(&r, 1, i, "rng position")?;
        let (i, z) = header("ideal")?;
        let ideal = parse_list(z.first().map(String::as_str).unwrap_or(""), i)?;

        let mut records = Vec::new();
        for (i, line) in lines {
            let fields: Vec<String> = line.split('\t').map(str::to_owned).collect();
            if fields.len() != 4 {
                return Err(err(i, format!("expected 4 tab-separated fields, got {}", fields.len())));
            }
            let index: usize = parse_one(&fields, 0, i, "index")?;
            if index != records.len() {
                return Err(err(i, format!("record index {index} out of sequence")));
            }
            records.push(SnapshotRecord {
                index,
                weight: parse_list(&fields[1], i)?,
                effort: parse_one(&fields, 2, i, "effort")?,
                objectives: parse_list(&fields[3], i)?,
            });
        }
        Ok(Snapshot { generation, rng_seed, rng_word_pos, ideal, records })
    }
}

fn parse_one<T: std::str::FromStr>(
    fields: &[String],
    at: usize,
    line: usize,
    what: &str,
) -> Result<T, EngineError> {
    fields.get(at).and_then(|f| f.trim().parse().ok()).ok_or_else(|| EngineError::Snapshot {
        line: line + 1,
        message: format!("bad {what}"),
    })
}

fn parse_list(field: &str, line: usize) -> Result<Vec<f64>, EngineError> {
    field
        .split(',')
        .map(|v| {
            v.trim().parse::<f64>().map_err(|_| EngineError::Snapshot {
                line: line + 1,
                message: format!("bad number `{v}`"),
            })
        })
        .collect()
}

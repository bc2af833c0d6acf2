use std::collections::HashSet;

use super::{at_line, IoError};
use crate::msa::{is_residue, AlignedMatrix, RawSequence, GAP};

/// Residues per line in written FASTA.
pub const FASTA_WIDTH: usize = 60;

/// What a FASTA file held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FastaRecords {
    Raw(Vec<RawSequence>),
    Aligned(AlignedMatrix),
}

impl FastaRecords {
    pub fn len(&self) -> usize {
        match self {
            FastaRecords::Raw(s) => s.len(),
            FastaRecords::Aligned(a) => a.num_rows(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The degapped sequences, whichever form was read.
    pub fn sequences(&self) -> Vec<RawSequence> {
        match self {
            FastaRecords::Raw(s) => s.clone(),
            FastaRecords::Aligned(a) => a.raw_sequences(),
        }
    }

    /// The records as an alignment. Raw records qualify when they all have
    /// the same length.
    pub fn into_alignment(self) -> Result<AlignedMatrix, IoError> {
        match self {
            FastaRecords::Aligned(a) => Ok(a),
            FastaRecords::Raw(s) => {
                let ids = s.iter().map(|r| r.id().to_owned()).collect();
                let rows = s.iter().map(|r| r.residues().to_vec()).collect();
                AlignedMatrix::new(ids, rows).map_err(|e| IoError::Config(e.to_string()))
            }
        }
    }
}

/// Parses FASTA. Symbols are uppercased and `.` becomes `-`. The result is
/// an alignment when every record has the same length and some record has
/// a gap; otherwise the records are raw sequences.
pub fn parse_fasta(text: &str) -> Result<FastaRecords, IoError> {
    let mut records: Vec<(String, usize, Vec<u8>)> = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim_end_matches('\r');
        if let Some(header) = line.strip_prefix('>') {
            let id = header.split_whitespace().next().unwrap_or("");
            if id.is_empty() {
                return Err(at_line(lineno, "header without an id"));
            }
            if !seen.insert(id.to_owned()) {
                return Err(at_line(lineno, format!("duplicate id `{id}`")));
            }
            records.push((id.to_owned(), lineno, Vec::new()));
            continue;
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some(rec) = records.last_mut() else {
            return Err(at_line(lineno, "sequence data before the first header"));
        };
        for (col, c) in line.bytes().enumerate() {
            let s = match c.to_ascii_uppercase() {
                b'.' => GAP,
                s if s == GAP || is_residue(s) => s,
                _ if c.is_ascii_whitespace() => continue,
                _ => {
                    return Err(at_line(
                        lineno,
                        format!("illegal symbol `{}` at column {}", c as char, col + 1),
                    ))
                }
            };
            rec.2.push(s);
        }
    }
    if records.is_empty() {
        return Err(at_line(1, "no FASTA records"));
    }
    if let Some((id, line, _)) = records.iter().find(|r| r.2.is_empty()) {
        return Err(at_line(*line, format!("record `{id}` has no sequence")));
    }

    let gapped = records.iter().any(|r| r.2.contains(&GAP));
    let width = records[0].2.len();
    if gapped {
        if let Some((id, line, _)) = records.iter().find(|r| r.2.len() != width) {
            return Err(at_line(*line, format!("gapped record `{id}` differs in length from the first")));
        }
        if let Some((id, line, _)) = records.iter().find(|r| r.2.iter().all(|&s| s == GAP)) {
            return Err(at_line(*line, format!("record `{id}` is all gaps")));
        }
        let ids = records.iter().map(|r| r.0.clone()).collect();
        let rows = records.into_iter().map(|r| r.2).collect();
        let aln = AlignedMatrix::new(ids, rows).map_err(|e| at_line(1, e.to_string()))?;
        return Ok(FastaRecords::Aligned(aln));
    }
    records
        .into_iter()
        .map(|(id, line, seq)| RawSequence::new(id, seq).map_err(|e| at_line(line, e.to_string())))
        .collect::<Result<_, _>>()
        .map(FastaRecords::Raw)
}

/// Writes `(id, sequence)` records with sequence lines wrapped at
/// [`FASTA_WIDTH`].
pub fn write_fasta<'a, I>(records: I) -> Result<String, IoError>
where
    I: IntoIterator<Item = (&'a str, &'a [u8])>,
{
    let mut out = String::new();
    let mut any = false;
    for (id, seq) in records {
        any = true;
        out.push('>');
        out.push_str(id);
        out.push('\n');
        for chunk in seq.chunks(FASTA_WIDTH) {
            out.push_str(std::str::from_utf8(chunk).map_err(|e| IoError::Config(e.to_string()))?);
            out.push('\n');
        }
    }
    if !any {
        return Err(IoError::Config("cannot write an empty FASTA record list".into()));
    }
    Ok(out)
}

pub fn write_alignment(aln: &AlignedMatrix) -> String {
    write_fasta(aln.row_ids().iter().map(String::as_str).zip(aln.rows().iter().map(Vec::as_slice)))
        .expect("alignments have rows")
}

pub fn write_sequences(seqs: &[RawSequence]) -> Result<String, IoError> {
    write_fasta(seqs.iter().map(|s| (s.id(), s.residues())))
}

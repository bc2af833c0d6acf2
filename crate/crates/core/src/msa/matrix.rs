use super::MsaError;

/// NCBI BLOSUM62 in the usual square text layout.
pub const BLOSUM62_TEXT: &str = "\
#  BLOSUM62 (NCBI)
   A  R  N  D  C  Q  E  G  H  I  L  K  M  F  P  S  T  W  Y  V  B  Z  X  *
A  4 -1 -2 -2  0 -1 -1  0 -2 -1 -1 -1 -1 -2 -1  1  0 -3 -2  0 -2 -1  0 -4
R -1  5  0 -2 -3  1  0 -2  0 -3 -2  2 -1 -3 -2 -1 -1 -3 -2 -3 -1  0 -1 -4
N -2  0  6  1 -3  0  0  0  1 -3 -3  0 -2 -3 -2  1  0 -4 -2 -3  3  0 -1 -4
D -2 -2  1  6 -3  0  2 -1 -1 -3 -4 -1 -3 -3 -1  0 -1 -4 -3 -3  4  1 -1 -4
C  0 -3 -3 -3  9 -3 -4 -3 -3 -1 -1 -3 -1 -2 -3 -1 -1 -2 -2 -1 -3 -3 -2 -4
Q -1  1  0  0 -3  5  2 -2  0 -3 -2  1  0 -3 -1  0 -1 -2 -1 -2  0  3 -1 -4
E -1  0  0  2 -4  2  5 -2  0 -3 -3  1 -2 -3 -1  0 -1 -3 -2 -2  1  4 -1 -4
G  0 -2  0 -1 -3 -2 -2  6 -2 -4 -4 -2 -3 -3 -2  0 -2 -2 -3 -3 -1 -2 -1 -4
H -2  0  1 -1 -3  0  0 -2  8 -3 -3 -1 -2 -1 -2 -1 -2 -2  2 -3  0  0 -1 -4
I -1 -3 -3 -3 -1 -3 -3 -4 -3  4  2 -3  1  0 -3 -2 -1 -3 -1  3 -3 -3 -1 -4
L -1 -2 -3 -4 -1 -2 -3 -4 -3  2  4 -2  2  0 -3 -2 -1 -2 -1  1 -4 -3 -1 -4
K -1  2  0 -1 -3  1  1 -2 -1 -3 -2  5 -1 -3 -1  0 -1 -3 -2 -2  0  1 -1 -4
M -1 -1 -2 -3 -1  0 -2 -3 -2  1  2 -1  5  0 -2 -1 -1 -1 -1  1 -3 -1 -1 -4
F -2 -3 -3 -3 -2 -3 -3 -3 -1  0  0 -3  0  6 -4 -2 -2  1  3 -1 -3 -3 -1 -4
P -1 -2 -2 -1 -3 -1 -1 -2 -2 -3 -3 -1 -2 -4  7 -1 -1 -4 -3 -2 -2 -1 -2 -4
S  1 -1  1  0 -1  0  0  0 -1 -2 -2  0 -1 -2 -1  4  1 -3 -2 -2  0  0  0 -4
T  0 -1  0 -1 -1 -1 -1 -2 -2 -1 -1 -1 -1 -2 -1  1  5 -2 -2  0 -1 -1  0 -4
W -3 -3 -4 -4 -2 -2 -3 -2 -2 -3 -2 -3 -1  1 -4 -3 -2 11  2 -3 -4 -3 -2 -4
Y -2 -2 -2 -3 -2 -1 -2 -3  2 -1 -1 -2 -1  3 -3 -2 -2  2  7 -1 -3 -2 -1 -4
V  0 -3 -3 -3 -1 -2 -2 -3 -3  3  1 -2  1 -1 -2 -2  0 -3 -1  4 -3 -2 -1 -4
B -2 -1  3  4 -3  0  1 -1  0 -3 -4  0 -3 -3 -2  0 -1 -4 -3 -3  4  1 -1 -4
Z -1  0  0  1 -3  3  4 -2  0 -3 -3  1 -1 -3 -1  0 -1 -3 -2 -2  1  4 -1 -4
X  0 -1 -1 -1 -2 -1 -1 -1 -1 -1 -1 -1 -1 -1 -2  0  0 -2 -1 -1 -1 -1 -1 -4
* -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4 -4  1
";

/// Unknown-residue symbol; any pair involving it scores 0.
pub const UNKNOWN: u8 = b'X';

const ABSENT: u8 = u8::MAX;

/// Symmetric integer scores over an alphabet of residue symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionMatrix {
    symbols: Vec<u8>,
    index: Vec<u8>,
    scores: Vec<i32>,
}

impl SubstitutionMatrix {
    /// `scores` is row-major over `symbols` and must be symmetric.
    pub fn from_table(symbols: Vec<u8>, scores: Vec<i32>) -> Result<Self, MsaError> {
        let n = symbols.len();
        if n == 0 || n >= ABSENT as usize {
            return Err(MsaError::Contract(format!("matrix alphabet of size {n}")));
        }
        if scores.len() != n * n {
            return Err(MsaError::Contract(format!(
                "{} scores for a {n}x{n} matrix",
                scores.len()
            )));
        }
        let mut index = vec![ABSENT; 256];
        for (i, &s) in symbols.iter().enumerate() {
            let s = s.to_ascii_uppercase();
            if index[s as usize] != ABSENT {
                return Err(MsaError::Contract(format!("symbol `{}` listed twice", s as char)));
            }
            index[s as usize] = i as u8;
        }
        for i in 0..n {
            for j in 0..i {
                if scores[i * n + j] != scores[j * n + i] {
                    return Err(MsaError::Contract(format!(
                        "matrix is not symmetric at ({}, {})",
                        symbols[i] as char, symbols[j] as char
                    )));
                }
            }
        }
        Ok(Self { symbols, index, scores })
    }

    /// The built-in BLOSUM62 table.
    pub fn blosum62() -> Self {
        crate::io::parse_matrix(BLOSUM62_TEXT).expect("built-in BLOSUM62 parses")
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn contains(&self, symbol: u8) -> bool {
        symbol.to_ascii_uppercase() == UNKNOWN || self.index[symbol.to_ascii_uppercase() as usize] != ABSENT
    }

    /// Score for a residue pair. `X` against anything is 0.
    pub fn score(&self, a: u8, b: u8) -> Result<i32, MsaError> {
        let a = a.to_ascii_uppercase();
        let b = b.to_ascii_uppercase();
        let ia = self.index[a as usize];
        let ib = self.index[b as usize];
        if a == UNKNOWN || b == UNKNOWN {
            if ia == ABSENT && a != UNKNOWN {
                return Err(MsaError::UnknownResidue(a as char));
            }
            if ib == ABSENT && b != UNKNOWN {
                return Err(MsaError::UnknownResidue(b as char));
            }
            return Ok(0);
        }
        if ia == ABSENT {
            return Err(MsaError::UnknownResidue(a as char));
        }
        if ib == ABSENT {
            return Err(MsaError::UnknownResidue(b as char));
        }
        Ok(self.scores[ia as usize * self.symbols.len() + ib as usize])
    }

    /// The tabulated score by alphabet position, with no special cases.
    pub fn table_score(&self, i: usize, j: usize) -> i32 {
        self.scores[i * self.symbols.len() + j]
    }

    /// Fails on the first symbol of `residues` the matrix cannot score.
    pub fn check_symbols(&self, residues: &[u8]) -> Result<(), MsaError> {
        match residues.iter().find(|&&s| !self.contains(s)) {
            Some(&s) => Err(MsaError::UnknownResidue(s as char)),
            None => Ok(()),
        }
    }
}

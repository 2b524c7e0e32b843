//! Exact 2×2 and 4×4 gate matrices over [`CycloNum`].

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64;

use crate::cyclo::CycloNum;
use crate::error::{Error, ParseError, Result};

/// A square matrix of dimension 2 or 4, row-major, all entries reduced.
///
/// Equality, hashing and ordering are structural. Because reduced entries are
/// unique, structural equality is exact matrix equality, and the derived
/// order agrees with the byte order of [`GateMatrix::canonical_encoding`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateMatrix {
    dim: usize,
    entries: Vec<CycloNum>,
}

impl GateMatrix {
    pub fn from_entries(dim: usize, entries: Vec<CycloNum>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::Dimension(dim, dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension(dim, entries.len()));
        }
        Ok(GateMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![CycloNum::ONE; dim])
    }

    /// Panics unless `diag.len()` is 2 or 4.
    pub fn diagonal(diag: &[CycloNum]) -> Self {
        let dim = diag.len();
        assert!(dim == 2 || dim == 4, "unsupported dimension {dim}");
        let mut entries = vec![CycloNum::ZERO; dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * dim + i] = d;
        }
        GateMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> CycloNum {
        self.entries[row * self.dim + col]
    }

    pub fn matmul(&self, rhs: &GateMatrix) -> Result<GateMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut entries = vec![CycloNum::ZERO; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = self.entries[i * n + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = rhs.entries[l * n + j];
                    if !y.is_zero() {
                        entries[i * n + j] = entries[i * n + j] + x * y;
                    }
                }
            }
        }
        Ok(GateMatrix { dim: n, entries })
    }

    /// Kronecker product `a ⊗ b` of two 2×2 matrices; `a` acts on the first
    /// (most significant) wire.
    pub fn tensor(a: &GateMatrix, b: &GateMatrix) -> Result<GateMatrix> {
        if a.dim != 2 || b.dim != 2 {
            return Err(Error::Dimension(a.dim, b.dim));
        }
        let mut entries = vec![CycloNum::ZERO; 16];
        for (ai, aj) in (0..2).flat_map(|i| (0..2).map(move |j| (i, j))) {
            let s = a.get(ai, aj);
            for (bi, bj) in (0..2).flat_map(|i| (0..2).map(move |j| (i, j))) {
                entries[(2 * ai + bi) * 4 + 2 * aj + bj] = s * b.get(bi, bj);
            }
        }
        Ok(GateMatrix { dim: 4, entries })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> GateMatrix {
        let n = self.dim;
        let mut entries = vec![CycloNum::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        GateMatrix { dim: n, entries }
    }

    pub fn scale(&self, s: CycloNum) -> GateMatrix {
        GateMatrix { dim: self.dim, entries: self.entries.iter().map(|&e| s * e).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Exact test of `M·M† = I`.
    pub fn is_unitary(&self) -> bool {
        (self * &self.dagger()).is_identity()
    }

    pub fn is_reduced(&self) -> bool {
        self.entries.iter().all(CycloNum::is_reduced)
    }

    /// Injective byte serialization: the dimension, then per entry the five
    /// fields `a, b, c, d, k` as big-endian 32-bit words with the sign bit
    /// flipped on the signed fields. Byte-lexicographic order of encodings
    /// equals the derived `Ord` on matrices of equal dimension.
    pub fn canonical_encoding(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + self.entries.len() * 20);
        out.push(self.dim as u8);
        for e in &self.entries {
            for c in e.coeffs() {
                out.extend_from_slice(&((c as u32) ^ 0x8000_0000).to_be_bytes());
            }
            out.extend_from_slice(&e.k().to_be_bytes());
        }
        out
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.entries.iter().map(CycloNum::to_complex).collect()
    }
}

impl Mul for &GateMatrix {
    type Output = GateMatrix;

    /// Panics on dimension mismatch; use [`GateMatrix::matmul`] for a checked
    /// product.
    fn mul(self, rhs: &GateMatrix) -> GateMatrix {
        self.matmul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Debug for GateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GateMatrix[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

/// Matrix text format: the dimension on one line, then one line per row with
/// entries `a,b,c,d/k` separated by single spaces.
impl fmt::Display for GateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.dim)?;
        for row in self.entries.chunks(self.dim) {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl GateMatrix {
    /// Parses one matrix from a line iterator, consuming exactly `dim + 1`
    /// non-empty lines. `first_line` is the 1-based line number of the first
    /// line yielded, used in error messages.
    pub fn parse_lines<'a, I>(lines: &mut I, first_line: usize) -> Result<GateMatrix, ParseError>
    where
        I: Iterator<Item = &'a str>,
    {
        let header = lines.next().ok_or(ParseError::Truncated)?;
        let dim: usize = header.trim().parse().map_err(|_| ParseError::Line {
            line: first_line,
            msg: format!("expected dimension, found {header:?}"),
        })?;
        if dim != 2 && dim != 4 {
            return Err(ParseError::Line { line: first_line, msg: format!("unsupported dimension {dim}") });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            let line_no = first_line + 1 + r;
            let row = lines.next().ok_or(ParseError::Truncated)?;
            let before = entries.len();
            for tok in row.split_whitespace() {
                entries.push(tok.parse::<CycloNum>()?);
            }
            if entries.len() - before != dim {
                return Err(ParseError::Line {
                    line: line_no,
                    msg: format!("expected {dim} entries, found {}", entries.len() - before),
                });
            }
        }
        Ok(GateMatrix { dim, entries })
    }
}

impl FromStr for GateMatrix {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let m = GateMatrix::parse_lines(&mut lines, 1)?;
        if let Some(extra) = lines.next() {
            return Err(ParseError::Line { line: m.dim + 2, msg: format!("trailing input {extra:?}") });
        }
        Ok(m)
    }
}

/// Generator constants and a few named two-qubit gates.
pub mod gates {
    use super::GateMatrix;
    use crate::cyclo::CycloNum;

    pub fn i2() -> GateMatrix {
        GateMatrix::identity(2)
    }

    pub fn i4() -> GateMatrix {
        GateMatrix::identity(4)
    }

    /// Hadamard, entries ±1/√2.
    pub fn h() -> GateMatrix {
        let s = CycloNum::INV_SQRT2;
        GateMatrix { dim: 2, entries: vec![s, s, s, -s] }
    }

    /// Phase gate diag(1, i).
    pub fn p() -> GateMatrix {
        GateMatrix::diagonal(&[CycloNum::ONE, CycloNum::I])
    }

    /// diag(1, 1, 1, −1)
    pub fn cz() -> GateMatrix {
        let one = CycloNum::ONE;
        GateMatrix::diagonal(&[one, one, one, -one])
    }

    /// Single-qubit gate on wire 1: `g ⊗ I`.
    pub fn on_wire1(g: &GateMatrix) -> GateMatrix {
        GateMatrix::tensor(g, &i2()).expect("2x2 gate")
    }

    /// Single-qubit gate on wire 2: `I ⊗ g`.
    pub fn on_wire2(g: &GateMatrix) -> GateMatrix {
        GateMatrix::tensor(&i2(), g).expect("2x2 gate")
    }

    fn permutation(perm: [usize; 4]) -> GateMatrix {
        let mut entries = vec![CycloNum::ZERO; 16];
        for (col, &row) in perm.iter().enumerate() {
            entries[row * 4 + col] = CycloNum::ONE;
        }
        GateMatrix { dim: 4, entries }
    }

    /// CNOT with control on wire 1 and target on wire 2 (swaps |10⟩, |11⟩).
    pub fn cnot_target2() -> GateMatrix {
        permutation([0, 1, 3, 2])
    }

    /// CNOT with control on wire 2 and target on wire 1 (swaps |01⟩, |11⟩).
    pub fn cnot_target1() -> GateMatrix {
        permutation([0, 3, 2, 1])
    }

    pub fn swap() -> GateMatrix {
        permutation([0, 2, 1, 3])
    }
}

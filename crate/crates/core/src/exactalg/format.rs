//! The `BFSYZ-MAT v1` text format.
//!
//! ```text
//! BFSYZ-MAT v1 <rows> <cols> <sparse|dense> <field>
//! ```
//! followed by `row col value` lines (sparse) or one whitespace-separated
//! line per row (dense). `<field>` is `QQ` or `GF(p)`. Rationals are written
//! `num/den`; prime-field entries as their residue.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactalg::matrix::{Matrix, Storage};
use crate::exactalg::scalar::{format_rational, parse_rational, Field, Fp, Rational};

pub const MAGIC: &str = "BFSYZ-MAT";
pub const VERSION: &str = "v1";

pub trait MatrixScalar: Field + Sized {
    fn field_tag(sample: Option<&Self>) -> String;
    fn to_text(&self) -> String;
    fn from_text(s: &str, field: &str) -> Result<Self>;
}

impl MatrixScalar for Rational {
    fn field_tag(_: Option<&Self>) -> String {
        "QQ".into()
    }
    fn to_text(&self) -> String {
        format_rational(self)
    }
    fn from_text(s: &str, field: &str) -> Result<Self> {
        if field != "QQ" {
            return Err(Error::Parse(format!("expected field QQ, found {field}")));
        }
        parse_rational(s)
    }
}

fn prime_of(field: &str) -> Result<u64> {
    field
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad field tag {field:?}")))
}

impl MatrixScalar for Fp {
    fn field_tag(sample: Option<&Self>) -> String {
        format!("GF({})", sample.map(|x| x.modulus).unwrap_or(0))
    }
    fn to_text(&self) -> String {
        self.value.to_string()
    }
    fn from_text(s: &str, field: &str) -> Result<Self> {
        let p = prime_of(field)?;
        let v: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
        if v >= p {
            return Err(Error::Parse(format!("residue {v} not reduced mod {p}")));
        }
        Ok(Fp::new(v, p))
    }
}

/// Serializes with an explicit field tag (needed for an all-zero prime-field
/// matrix, which has no sample entry to read the modulus from).
pub fn write_matrix_with_field<T: MatrixScalar>(m: &Matrix<T>, storage: Storage, field: &str) -> String {
    let mut out = String::new();
    let kind = match storage {
        Storage::Dense => "dense",
        Storage::Sparse => "sparse",
    };
    writeln!(out, "{MAGIC} {VERSION} {} {} {kind} {field}", m.rows(), m.cols()).unwrap();
    match storage {
        Storage::Sparse => {
            for (r, row) in m.row_data().iter().enumerate() {
                for (c, v) in row {
                    writeln!(out, "{r} {c} {}", v.to_text()).unwrap();
                }
            }
        }
        Storage::Dense => {
            let zero = if field == "QQ" { "0/1".to_string() } else { "0".to_string() };
            for row in m.row_data() {
                let mut cells = vec![zero.clone(); m.cols()];
                for (c, v) in row {
                    cells[*c] = v.to_text();
                }
                writeln!(out, "{}", cells.join(" ")).unwrap();
            }
        }
    }
    out
}

pub fn write_matrix<T: MatrixScalar>(m: &Matrix<T>, storage: Storage) -> String {
    let sample = m.row_data().iter().flat_map(|r| r.iter()).map(|(_, v)| v).next();
    write_matrix_with_field(m, storage, &T::field_tag(sample))
}

pub fn read_matrix<T: MatrixScalar>(text: &str) -> Result<(Matrix<T>, Storage)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 6 || parts[0] != MAGIC || parts[1] != VERSION {
        return Err(Error::Parse(format!("bad header {header:?}")));
    }
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad dimension {s:?}")))
    };
    let (rows, cols) = (num(parts[2])?, num(parts[3])?);
    let field = parts[5];
    match parts[4] {
        "sparse" => {
            let mut entries = Vec::new();
            for l in lines {
                let f: Vec<&str> = l.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(Error::Parse(format!("bad sparse entry {l:?}")));
                }
                let (r, c) = (num(f[0])?, num(f[1])?);
                if r >= rows || c >= cols {
                    return Err(Error::Parse(format!("entry ({r},{c}) out of range")));
                }
                let v = T::from_text(f[2], field)?;
                if v.is_zero() {
                    return Err(Error::Parse("explicit zero in sparse matrix".into()));
                }
                entries.push((r, c, v));
            }
            Ok((Matrix::from_triplets(rows, cols, entries), Storage::Sparse))
        }
        "dense" => {
            let mut data = Vec::with_capacity(rows);
            for l in lines {
                let cells: Vec<&str> = l.split_whitespace().collect();
                if cells.len() != cols {
                    return Err(Error::Parse(format!("dense row has {} cells, expected {cols}", cells.len())));
                }
                let mut row = Vec::new();
                for (c, s) in cells.iter().enumerate() {
                    let v = T::from_text(s, field)?;
                    if !v.is_zero() {
                        row.push((c, v));
                    }
                }
                data.push(row);
            }
            if data.len() != rows {
                return Err(Error::Parse(format!("expected {rows} dense rows, found {}", data.len())));
            }
            Ok((Matrix::from_sparse_rows(cols, data), Storage::Dense))
        }
        other => Err(Error::Parse(format!("unknown storage {other:?}"))),
    }
}

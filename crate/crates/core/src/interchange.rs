//! Matrix interchange format: a JSON document
//! `{"rows": r, "cols": c, "entries": [[re, im], ...]}` with entries in
//! row-major order.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixDocument {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries_row_major().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl From<&ComplexVector> for MatrixDocument {
    /// Vectors travel as single-column matrices.
    fn from(v: &ComplexVector) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            entries: v.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixDocument> for ComplexMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDocument) -> Result<Self> {
        if doc.rows == 0 || doc.cols == 0 {
            return Err(Error::Format(format!("dimensions must be positive, got {}x{}", doc.rows, doc.cols)));
        }
        if doc.entries.len() != doc.rows * doc.cols {
            return Err(Error::Format(format!(
                "shape {}x{} needs {} entries, found {}",
                doc.rows,
                doc.cols,
                doc.rows * doc.cols,
                doc.entries.len()
            )));
        }
        let entries = doc.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        ComplexMatrix::from_row_major(doc.rows, doc.cols, entries)
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let doc: MatrixDocument = serde_json::from_str(text)?;
    doc.try_into()
}

pub fn read_matrix<R: Read>(reader: R) -> Result<ComplexMatrix> {
    let doc: MatrixDocument = serde_json::from_reader(reader)?;
    doc.try_into()
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    read_matrix(std::io::BufReader::new(std::fs::File::open(path)?))
}

pub fn to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixDocument::from(m)).expect("matrix documents always serialize")
}

pub fn write_matrix<W: Write>(mut writer: W, m: &ComplexMatrix) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, &MatrixDocument::from(m))?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub(crate) fn serialize_opt_vector<S: serde::Serializer>(
    v: &Option<ComplexVector>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(MatrixDocument::from).serialize(s)
}

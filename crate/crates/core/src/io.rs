//! Matrix files and JSON report emission.
//!
//! Reports are written with every float at 17 significant digits so the
//! same run always produces byte-identical output.

use std::io;
use std::path::Path;

use serde::ser::Serialize;
use serde::{Deserialize, Serialize as SerializeDerive};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// On-disk matrix: `{"rows": r, "cols": c, "data": [[re, im], ...], "partition": [n1, ...]}`.
#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, partition: Option<Vec<usize>>) -> Self {
        MatrixFile {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|z| [z.re, z.im]).collect(),
            partition,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.data.len() != self.rows * self.cols {
            return Err(Error::Parse(format!(
                "data has {} entries, expected rows*cols = {}",
                self.data.len(),
                self.rows * self.cols
            )));
        }
        if let Some(p) = &self.partition {
            if self.rows != self.cols {
                return Err(Error::Partition(format!(
                    "a partitioned matrix must be square, got {}x{}",
                    self.rows, self.cols
                )));
            }
            let total: usize = p.iter().sum();
            if total != self.rows || p.contains(&0) {
                return Err(Error::Partition(format!(
                    "partition {p:?} does not split dimension {} into positive parts",
                    self.rows
                )));
            }
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        self.validate()?;
        ComplexMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|&[re, im]| C64::new(re, im)).collect(),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> io::Result<()> {
        std::fs::write(path, to_json(self))
    }
}

impl From<ComplexMatrix> for MatrixFile {
    fn from(m: ComplexMatrix) -> Self {
        MatrixFile::from_matrix(&m, None)
    }
}

impl TryFrom<MatrixFile> for ComplexMatrix {
    type Error = Error;

    fn try_from(file: MatrixFile) -> Result<Self> {
        file.to_matrix()
    }
}

/// Pretty JSON with floats printed as `{:.16e}`.
struct FixedDigits<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Serializes a report as pretty JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let formatter = FixedDigits {
        inner: PrettyFormatter::with_indent(b"  "),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut out, formatter);
    value
        .serialize(&mut ser)
        .expect("report types serialize infallibly");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let f = MatrixFile::parse(
            r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]],"partition":[1,1]}"#,
        )
        .unwrap();
        assert_eq!(f.to_matrix().unwrap(), ComplexMatrix::identity(2));

        let bad = MatrixFile::parse(
            r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]],"partition":[1,2]}"#,
        );
        assert!(matches!(bad, Err(Error::Partition(_))));
        let short = MatrixFile::parse(r#"{"rows":2,"cols":2,"data":[[1,0]]}"#);
        assert!(matches!(short, Err(Error::Parse(_))));
        assert!(matches!(MatrixFile::parse("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn floats_use_seventeen_digits() {
        let s = to_json(&vec![2f64.sqrt(), 1.0, -1e-9]);
        assert!(s.contains("1.4142135623730951e0"), "{s}");
        assert!(s.contains("1.0000000000000000e0"), "{s}");
        assert!(
            s.contains("-1.0000000000000001e-9") || s.contains("-1.0000000000000000e-9"),
            "{s}"
        );
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0], 2f64.sqrt());
    }

    #[test]
    fn matrix_serializes_as_matrix_file() {
        let m = ComplexMatrix::new(1, 2, vec![C64::new(1.5, -2.0), C64::new(0.0, 3.0)]).unwrap();
        let text = to_json(&m);
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}

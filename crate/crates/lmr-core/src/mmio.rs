//! Matrix Market array format I/O for dense matrices.
//!
//! Only the `matrix array real general` flavor is supported. Values are
//! written with 17 significant digits, which round-trips `f64` exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::Error;
use crate::matrix::Matrix;

const HEADER: &str = "%%MatrixMarket matrix array real general";

/// Writes `m` in Matrix Market array format (column-major body, as the
/// format prescribes).
pub fn write_array<W: Write>(w: &mut W, m: &Matrix<f64>) -> Result<(), Error> {
    writeln!(w, "{HEADER}")?;
    writeln!(w, "{} {}", m.rows(), m.cols())?;
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            writeln!(w, "{:.16e}", m[(i, j)])?;
        }
    }
    Ok(())
}

pub fn write_array_file(path: impl AsRef<Path>, m: &Matrix<f64>) -> Result<(), Error> {
    let mut w = BufWriter::new(File::create(path)?);
    write_array(&mut w, m)?;
    w.flush()?;
    Ok(())
}

/// Reads a dense matrix in Matrix Market array format.
pub fn read_array<R: Read>(r: R) -> Result<Matrix<f64>, Error> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines();

    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty matrix market stream".into()))??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5
        || !fields[0].eq_ignore_ascii_case("%%MatrixMarket")
        || !fields[1].eq_ignore_ascii_case("matrix")
        || !fields[2].eq_ignore_ascii_case("array")
        || !fields[3].eq_ignore_ascii_case("real")
        || !fields[4].eq_ignore_ascii_case("general")
    {
        return Err(Error::Format(format!(
            "unsupported matrix market header: {header:?} (need `matrix array real general`)"
        )));
    }

    // Size line, skipping % comments.
    let size_line = loop {
        let line = lines
            .next()
            .ok_or_else(|| Error::Format("missing size line".into()))??;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        break line;
    };
    let dims: Vec<&str> = size_line.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(Error::Format(format!("bad size line: {size_line:?}")));
    }
    let rows: usize = dims[0]
        .parse()
        .map_err(|_| Error::Format(format!("bad row count: {:?}", dims[0])))?;
    let cols: usize = dims[1]
        .parse()
        .map_err(|_| Error::Format(format!("bad column count: {:?}", dims[1])))?;
    if rows == 0 || cols == 0 {
        return Err(Error::Format("matrix dimensions must be positive".into()));
    }

    let mut values = Vec::with_capacity(rows * cols);
    for line in lines {
        let line = line?;
        for tok in line.split_whitespace() {
            if tok.starts_with('%') {
                break;
            }
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Format(format!("bad numeric value: {tok:?}")))?;
            values.push(v);
        }
    }
    if values.len() != rows * cols {
        return Err(Error::Format(format!(
            "expected {} values, found {}",
            rows * cols,
            values.len()
        )));
    }

    // Body is column-major.
    let mut m = Matrix::zeros(rows, cols);
    let mut it = values.into_iter();
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = it.next().unwrap();
        }
    }
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix market file contains non-finite values".into()));
    }
    Ok(m)
}

pub fn read_array_file(path: impl AsRef<Path>) -> Result<Matrix<f64>, Error> {
    read_array(File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_exact() {
        let m = Matrix::<f64>::new(
            2,
            3,
            vec![1.0, -2.5e-17, std::f64::consts::PI, 4.0 / 3.0, -1e300, 0.1],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_array(&mut buf, &m).unwrap();
        let back = read_array(buf.as_slice()).unwrap();
        assert_eq!(m, back, "round trip must be bit-exact");
    }

    #[test]
    fn header_layout() {
        let m = Matrix::<f64>::identity(2);
        let mut buf = Vec::new();
        write_array(&mut buf, &m).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "%%MatrixMarket matrix array real general");
        assert_eq!(lines.next().unwrap(), "2 2");
        // Column-major body of I2.
        let body: Vec<&str> = lines.collect();
        assert_eq!(body.len(), 4);
        assert!(body[0].starts_with("1."));
        assert!(body[1].starts_with("0."));
    }

    #[test]
    fn rejects_bad_headers_and_counts() {
        assert!(read_array("%%MatrixMarket matrix coordinate real general\n1 1 1\n".as_bytes())
            .is_err());
        assert!(read_array("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n".as_bytes())
            .is_err());
        assert!(read_array("".as_bytes()).is_err());
        assert!(read_array("%%MatrixMarket matrix array real general\n2\n1\n2\n".as_bytes())
            .is_err());
    }

    #[test]
    fn comments_between_header_and_size() {
        let text = "%%MatrixMarket matrix array real general\n% produced by tests\n2 1\n1.5\n-2.5\n";
        let m = read_array(text.as_bytes()).unwrap();
        assert_eq!(m[(0, 0)], 1.5);
        assert_eq!(m[(1, 0)], -2.5);
    }
}

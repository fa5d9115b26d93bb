//! Field export: CSV with `#key=value` metadata lines, and sign-split binary
//! PGM images (positive and negative parts written separately).

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::{PhaseSpaceGrid, Timestamp, WignerField};

/// Ordered `key=value` annotations.
pub type Metadata = Vec<(String, String)>;

/// Output formats of one field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    PgmPos,
    PgmNeg,
}

/// A file that has been written.
#[derive(Debug, Clone, PartialEq)]
pub struct ExportArtifact {
    pub format: ExportFormat,
    pub path: PathBuf,
    pub metadata: Metadata,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

/// Writes the CSV form of `field`: metadata comment lines, the header
/// `x,p,value`, then one row per node in x-major order, all numbers with 17
/// significant digits.
pub fn write_csv_to(out: &mut impl Write, field: &WignerField, metadata: &Metadata) -> std::io::Result<()> {
    for (k, v) in metadata {
        writeln!(out, "#{k}={v}")?;
    }
    writeln!(out, "x,p,value")?;
    let grid = field.grid();
    for i in 0..grid.nx() {
        let x = grid.x(i);
        for (j, v) in field.row(i).iter().enumerate() {
            writeln!(out, "{:.16e},{:.16e},{:.16e}", x, grid.p(j), v)?;
        }
    }
    Ok(())
}

pub fn write_csv(path: &Path, field: &WignerField, metadata: &Metadata) -> Result<ExportArtifact> {
    let mut out = create(path)?;
    write_csv_to(&mut out, field, metadata)
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))?;
    Ok(ExportArtifact { format: ExportFormat::Csv, path: path.to_owned(), metadata: metadata.clone() })
}

/// Reads a CSV written by [`write_csv`]. The grid is rebuilt from the
/// first and last coordinates; the timestamp from a `t` metadata entry.
pub fn read_csv(path: &Path) -> Result<(Metadata, WignerField)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let parse_err = |line: usize, message: String| Error::Parse { path: path.to_owned(), line, message };
    let mut metadata = Metadata::new();
    let mut rows: Vec<[f64; 3]> = Vec::new();
    let mut seen_header = false;
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let lineno = k + 1;
        if let Some(rest) = line.strip_prefix('#') {
            let (key, value) = rest
                .split_once('=')
                .ok_or_else(|| parse_err(lineno, format!("metadata line without '=': {line}")))?;
            metadata.push((key.to_owned(), value.to_owned()));
        } else if !seen_header {
            if line != "x,p,value" {
                return Err(parse_err(lineno, format!("expected header 'x,p,value', got '{line}'")));
            }
            seen_header = true;
        } else {
            let mut cols = [0.0; 3];
            let mut parts = line.split(',');
            for c in cols.iter_mut() {
                let text = parts.next().ok_or_else(|| parse_err(lineno, "expected 3 columns".into()))?;
                *c = text.parse().map_err(|e| parse_err(lineno, format!("bad number '{text}': {e}")))?;
            }
            if parts.next().is_some() {
                return Err(parse_err(lineno, "expected 3 columns".into()));
            }
            rows.push(cols);
        }
    }
    let (first, last) = match (rows.first(), rows.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(parse_err(0, "no data rows".into())),
    };
    let np = rows.iter().take_while(|r| r[0] == first[0]).count();
    if np == 0 || !rows.len().is_multiple_of(np) {
        return Err(Error::Shape(format!("{} rows do not form a grid with {np} momenta", rows.len())));
    }
    let nx = rows.len() / np;
    let grid = PhaseSpaceGrid::new(first[0], last[0], nx, first[1], last[1], np)?;
    let timestamp = metadata
        .iter()
        .find(|(k, _)| k == "t")
        .and_then(|(_, v)| v.parse().ok())
        .map_or(Timestamp::Stationary, Timestamp::At);
    let field = WignerField::from_values(grid, timestamp, rows.iter().map(|r| r[2]).collect())?;
    Ok((metadata, field))
}

/// Gray levels for one sign of the field: `255` at the largest magnitude of
/// that sign, `0` where the field has the other sign. Rows run from the
/// largest momentum at the top to the smallest at the bottom; columns
/// follow `x`.
pub fn sign_split_pixels(field: &WignerField, sign: f64) -> Vec<u8> {
    let grid = field.grid();
    let part = |v: f64| (sign * v).max(0.0);
    let top = field.values().iter().map(|&v| part(v)).fold(0.0, f64::max);
    let mut pixels = Vec::with_capacity(grid.nx() * grid.np());
    for j in (0..grid.np()).rev() {
        for i in 0..grid.nx() {
            let level = if top > 0.0 { (255.0 * part(field.get(i, j)) / top).round() } else { 0.0 };
            pixels.push(level as u8);
        }
    }
    pixels
}

/// Binary P5 image of one sign of the field, metadata as comment lines.
pub fn write_pgm_to(out: &mut impl Write, field: &WignerField, sign: f64, metadata: &Metadata) -> std::io::Result<()> {
    writeln!(out, "P5")?;
    for (k, v) in metadata {
        writeln!(out, "# {k}={v}")?;
    }
    writeln!(out, "{} {}", field.grid().nx(), field.grid().np())?;
    writeln!(out, "255")?;
    out.write_all(&sign_split_pixels(field, sign))
}

/// Writes `<base>_pos.pgm` and `<base>_neg.pgm`.
pub fn write_pgm_pair(base: &Path, field: &WignerField, metadata: &Metadata) -> Result<[ExportArtifact; 2]> {
    let write = |suffix: &str, sign: f64, format: ExportFormat| -> Result<ExportArtifact> {
        let path = with_suffix(base, suffix);
        let mut out = create(&path)?;
        write_pgm_to(&mut out, field, sign, metadata)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(&path, e))?;
        Ok(ExportArtifact { format, path, metadata: metadata.clone() })
    };
    Ok([write("_pos.pgm", 1.0, ExportFormat::PgmPos)?, write("_neg.pgm", -1.0, ExportFormat::PgmNeg)?])
}

/// `base` with `suffix` appended to its final component.
pub fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_field() -> WignerField {
        let g = PhaseSpaceGrid::new(0.0, 1.0, 5, -2.0, 2.0, 3).unwrap();
        WignerField::from_fn(g, Timestamp::At(0.25), |x, p| (x - 0.3) * p + 1e-17 * x + 1.0 / 3.0)
    }

    fn meta() -> Metadata {
        vec![("kind".into(), "test".into()), ("t".into(), "0.25".into())]
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv_to(&mut buf, &sample_field(), &meta()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], "#kind=test");
        assert_eq!(lines[1], "#t=0.25");
        assert_eq!(lines[2], "x,p,value");
        assert_eq!(lines.len(), 3 + 15 + 1);
        assert_eq!(lines.last(), Some(&""));
        assert!(!text.contains('\r'));
        // x-major: the first three rows share x = 0
        assert!(lines[3].starts_with("0.0000000000000000e0,-2.0000000000000000e0,"));
        assert!(lines[5].starts_with("0.0000000000000000e0,2.0000000000000000e0,"));
        assert!(lines[6].starts_with("2.5000000000000000e-1,"));
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        let f = sample_field();
        write_csv(&path, &f, &meta()).unwrap();
        let (m, g) = read_csv(&path).unwrap();
        assert_eq!(m, meta());
        assert_eq!(g, f);
    }

    #[test]
    fn csv_read_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "x,p,value\n1,2\n").unwrap();
        assert!(matches!(read_csv(&path), Err(Error::Parse { line: 2, .. })));
        std::fs::write(&path, "a,b,c\n").unwrap();
        assert!(matches!(read_csv(&path), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_csv(&dir.path().join("missing.csv")), Err(Error::Io { .. })));
    }

    #[test]
    fn pgm_normalization() {
        let g = PhaseSpaceGrid::new(0.0, 1.0, 3, 0.0, 1.0, 2).unwrap();
        // rows: x index; columns: p index
        let f = WignerField::from_values(g, Timestamp::Stationary, vec![1.0, -0.5, 0.5, -2.0, 0.0, 0.25]).unwrap();
        let pos = sign_split_pixels(&f, 1.0);
        let neg = sign_split_pixels(&f, -1.0);
        // top row is p = 1: values (-0.5, -2.0, 0.25); bottom row p = 0: (1.0, 0.5, 0.0)
        assert_eq!(pos, vec![0, 0, 64, 255, 128, 0]);
        assert_eq!(neg, vec![64, 255, 0, 0, 0, 0]);
        let zero = WignerField::from_values(g, Timestamp::Stationary, vec![0.0; 6]).unwrap();
        assert!(sign_split_pixels(&zero, 1.0).iter().all(|&p| p == 0));
        assert!(sign_split_pixels(&zero, -1.0).iter().all(|&p| p == 0));
    }

    #[test]
    fn pgm_header() {
        let mut buf = Vec::new();
        write_pgm_to(&mut buf, &sample_field(), 1.0, &meta()).unwrap();
        let header = b"P5\n# kind=test\n# t=0.25\n5 3\n255\n";
        assert_eq!(&buf[..header.len()], header);
        assert_eq!(buf.len(), header.len() + 15);
    }

    #[test]
    fn pgm_pair_paths() {
        let dir = tempfile::tempdir().unwrap();
        let base = dir.path().join("w1");
        let [pos, neg] = write_pgm_pair(&base, &sample_field(), &meta()).unwrap();
        assert_eq!(pos.path, dir.path().join("w1_pos.pgm"));
        assert_eq!(neg.format, ExportFormat::PgmNeg);
        assert!(neg.path.exists());
        let bad = dir.path().join("no/such/dir/w");
        assert!(matches!(write_csv(&bad, &sample_field(), &meta()), Err(Error::Io { .. })));
    }
}

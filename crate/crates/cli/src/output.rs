//! CSV and JSON artifacts. Floats are written with 17 significant digits so
//! that identical runs give byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// 17 significant digits in scientific notation.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub struct CsvTable {
    writer: csv::Writer<BufWriter<File>>,
}

impl CsvTable {
    pub fn create(path: &Path, header: &[&str]) -> std::io::Result<Self> {
        let file = BufWriter::new(File::create(path)?);
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file);
        writer.write_record(header).map_err(std::io::Error::other)?;
        Ok(Self { writer })
    }

    pub fn row(&mut self, fields: &[String]) -> std::io::Result<()> {
        self.writer.write_record(fields).map_err(std::io::Error::other)
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.writer.flush()
    }
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> std::io::Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut file, value).map_err(std::io::Error::other)?;
    file.write_all(b"\n")?;
    file.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            let s = num(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
            assert_eq!(mantissa.len(), 17, "{s}");
        }
        assert_eq!(num(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn table_has_header_and_unix_newlines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let mut t = CsvTable::create(&path, &["a_m", "b"]).unwrap();
        t.row(&[num(1.0), "x".into()]).unwrap();
        t.finish().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "a_m,b\n1.0000000000000000e0,x\n");
    }
}

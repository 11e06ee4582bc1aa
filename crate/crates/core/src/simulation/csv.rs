//! Plain CSV output: header row, comma separator, 17 significant digits.

use std::io::{self, Write};

/// Formats a float with 17 significant digits, enough to round-trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write, S: AsRef<str>>(out: &mut W, header: &[S], rows: &[Vec<String>]) -> io::Result<()> {
    let head: Vec<&str> = header.iter().map(|h| h.as_ref()).collect();
    writeln!(out, "{}", head.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for &x in &[0.1_f64, 1.0 / 3.0, 6.02214076e23, -2.5e-300] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["a", "b"], &[vec!["1".into(), "2".into()]]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,2\n");
    }
}

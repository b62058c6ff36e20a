use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

/// Version tag of every CSV layout; bumped whenever a column changes.
pub const CSV_SCHEMA_VERSION: u32 = 1;

pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `x` to 9 significant digits, fixed-point for moderate magnitudes and
/// scientific otherwise (the `%.9g` convention, trailing zeros kept).
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.8e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..9).contains(&exp) {
        format!("{x:.*}", (8 - exp) as usize)
    } else {
        sci
    }
}

/// Shortest decimal string that parses back to the same binary64 value.
pub fn roundtrip(x: f64) -> String {
    format!("{x:?}")
}

/// Writes a CSV table preceded by a `#schema=` comment line.
pub fn write_csv<W: Write>(mut out: W, schema: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    writeln!(out, "#schema=thetagraph.{schema}.v{CSV_SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(&mut out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    drop(w);
    out.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn write_lines<W: Write>(mut out: W, lines: impl IntoIterator<Item = impl AsRef<str>>) -> Result<()> {
    for line in lines {
        writeln!(out, "{}", line.as_ref())?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(10.184232195690221), "10.1842322");
        assert_eq!(sig9(9.6994026051e-5), "0.0000969940261");
        assert_eq!(sig9(-0.129757), "-0.129757000");
        assert_eq!(sig9(4.242640687119285), "4.24264069");
        assert_eq!(sig9(9.9999999996), "10.0000000");
        assert_eq!(sig9(1.5e-7), "1.50000000e-7");
        assert_eq!(sig9(123456789012.0), "1.23456789e11");
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(1.0), "1.00000000");
    }

    #[test]
    fn roundtrip_strings_parse_back() {
        for x in [0.1, 10.184232195690221, -9.699402605468e-5, 1e-300] {
            assert_eq!(roundtrip(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_has_schema_line() {
        let mut buf = Vec::new();
        write_csv(&mut buf, "demo", &["a", "b"], &[vec!["1".into(), "x,y".into()]]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "#schema=thetagraph.demo.v1\na,b\n1,\"x,y\"\n"
        );
    }
}

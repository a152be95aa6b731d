//! Plain `key=value` files: the frozen base decoration and the calibration report.
//!
//! Blank lines and lines starting with `#` are ignored. Keys are case-sensitive.
//!
//! ```text
//! version=1
//! NE=T3
//! NW=T1
//! SW=T2
//! SE=T4
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::calibration::Calibration;
use crate::decoration::{BaseDecoration, ColourType, Quadrant};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Parses `key=value` lines, rejecting duplicates.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            msg: format!("expected key=value, got {line:?}"),
        })?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("duplicate key {:?}", k.trim()),
            });
        }
    }
    Ok(out)
}

pub fn parse_base_decoration(text: &str) -> Result<BaseDecoration> {
    let kv = parse_key_values(text)?;
    match kv.get("version").map(String::as_str) {
        Some(v) if v == FORMAT_VERSION.to_string() => {}
        other => {
            return Err(Error::Parse {
                line: 0,
                msg: format!("unsupported version {other:?}"),
            })
        }
    }
    let mut colours = [ColourType::T1; 4];
    for q in Quadrant::ALL {
        let v = kv.get(q.name()).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing key {}", q.name()),
        })?;
        colours[q.index()] = v.parse()?;
    }
    BaseDecoration::new(colours)
}

pub fn write_base_decoration(base: &BaseDecoration) -> String {
    let mut s = String::from("# Quadrant colouring of the base square.\n");
    let _ = writeln!(s, "version={FORMAT_VERSION}");
    for q in Quadrant::ALL {
        let _ = writeln!(s, "{}={}", q.name(), base.colour(q));
    }
    s
}

/// Calibration report: the chosen colouring followed by every survivor.
pub fn write_calibration_report(cal: &Calibration) -> String {
    let mut s = write_base_decoration(&cal.chosen);
    let _ = writeln!(s, "candidates={}", cal.candidates);
    let _ = writeln!(s, "survivors={}", cal.survivors.len());
    for (i, b) in cal.survivors.iter().enumerate() {
        let _ = writeln!(s, "survivor.{i}={b}");
    }
    let _ = writeln!(s, "ambiguous={}", cal.survivors.len() > 1);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for base in BaseDecoration::all() {
            assert_eq!(parse_base_decoration(&write_base_decoration(&base)), Ok(base));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_base_decoration("version=1\nNE=T1\nNW=T1\nSW=T2\nSE=T3\n").is_err());
        assert!(parse_base_decoration("version=2\nNE=T1\nNW=T2\nSW=T3\nSE=T4\n").is_err());
        assert!(parse_base_decoration("version=1\nNE=T1\n").is_err());
        assert!(matches!(
            parse_key_values("a=1\na=2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_key_values("junk"), Err(Error::Parse { line: 1, .. })));
    }
}

//! Summary table of lower/upper bounds and example intervals.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use super::lp::BsBounds;
use crate::error::{Error, Result};
use crate::field::quadratic::ExtensionKind;

pub const SECTIONS: [&str; 2] = ["GRH", "Unconditional"];
pub const ROWS: [&str; 3] = ["all fields", "totally real", "totally complex"];
pub const COLUMNS: [&str; 4] = ["lower bound", "lower example", "upper example", "upper bound"];

/// Literal cells supplied by configuration, keyed by (section, row, column).
#[derive(Clone, Debug, Default)]
pub struct TableConfig {
    pub literals: BTreeMap<(String, String, String), String>,
}

const DEFAULT_LITERALS: &str = "\
GRH | all fields | lower bound = 0.5165
GRH | all fields | upper example = 1.0602-1.0798
GRH | all fields | upper bound = 1.0938
GRH | totally real | lower bound = 0.7419
GRH | totally real | upper example = 1.0602-1.0798
GRH | totally real | upper bound = 1.0938
GRH | totally complex | lower bound = 0.5165
GRH | totally complex | upper example = 1.0482-1.0653
GRH | totally complex | upper bound = 1.0764
Unconditional | all fields | lower bound = 0.4087
Unconditional | all fields | lower example = 0.5939-0.6208
Unconditional | all fields | upper example = 1.0602-1.1133
Unconditional | all fields | upper bound = 1.1588
Unconditional | totally real | lower bound = 0.6625
Unconditional | totally real | lower example = 0.8009-0.9081
Unconditional | totally real | upper example = 1.0602-1.1133
Unconditional | totally real | upper bound = 1.1588
Unconditional | totally complex | lower bound = 0.4087
Unconditional | totally complex | lower example = 0.5939-0.6208
Unconditional | totally complex | upper example = 1.0482-1.1026
Unconditional | totally complex | upper bound = 1.1310
";

impl TableConfig {
    /// Parse lines `SECTION | ROW | COLUMN = VALUE`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut literals = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.into() };
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected KEY = VALUE"))?;
            let parts: Vec<&str> = key.split('|').map(str::trim).collect();
            let [s, r, c] = parts.as_slice() else {
                return Err(err("expected SECTION | ROW | COLUMN"));
            };
            if !SECTIONS.contains(s) || !ROWS.contains(r) || !COLUMNS.contains(c) {
                return Err(err("unknown table position"));
            }
            literals.insert((s.to_string(), r.to_string(), c.to_string()), value.trim().to_string());
        }
        Ok(TableConfig { literals })
    }

    pub fn default_literals() -> Self {
        Self::parse(DEFAULT_LITERALS).expect("built-in table literals")
    }
}

/// A computed tower to place in the GRH rows.
#[derive(Clone, Debug)]
pub struct TableInput {
    pub label: String,
    pub kind: ExtensionKind,
    pub bounds: BsBounds,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub section: String,
    pub row: String,
    pub column: String,
    pub value: String,
    pub computed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub cells: Vec<Cell>,
    pub text: String,
}

impl Table {
    pub fn cell(&self, section: &str, row: &str, column: &str) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.section == section && c.row == row && c.column == column)
    }
}

fn round4(q: &BigRational, up: bool) -> String {
    let scaled = q * BigRational::from_integer(BigInt::from(10_000));
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let (i, f) = n.div_mod_floor(&BigInt::from(10_000));
    format!("{i}.{f:0>4}")
}

/// "lo-hi" with lo rounded down and hi rounded up at four decimals.
pub fn interval_cell(b: &BsBounds) -> String {
    format!("{}-{}", round4(b.bsl.lo(), false), round4(b.bsu.hi(), true))
}

pub fn emit_table(inputs: &[TableInput], config: &TableConfig) -> Table {
    let mut cells = Vec::new();
    let mut text = String::new();
    let header = format!("{:<14}{:<16}{:<16}{:<16}{:<16}{}", "", "", COLUMNS[0], COLUMNS[1], COLUMNS[2], COLUMNS[3]);
    let _ = writeln!(text, "{header}");
    if inputs.is_empty() {
        return Table { cells, text };
    }
    let pick = |row: &str| -> Option<&TableInput> {
        let fits = |t: &&TableInput| match row {
            "totally real" => t.kind == ExtensionKind::TotallyReal,
            "totally complex" => t.kind == ExtensionKind::TotallyComplex,
            _ => true,
        };
        inputs
            .iter()
            .filter(fits)
            .min_by(|a, b| a.bounds.bsl.mid().cmp(&b.bounds.bsl.mid()))
    };
    let mut footnote = false;
    for s in SECTIONS {
        for r in ROWS {
            let mut line = format!("{:<14}{:<16}", if r == ROWS[0] { s } else { "" }, r);
            for c in COLUMNS {
                let computed = (s == "GRH" && c == "lower example")
                    .then(|| pick(r).map(|t| interval_cell(&t.bounds)))
                    .flatten();
                let (value, is_computed) = match computed {
                    Some(v) => (v, true),
                    None => match config.literals.get(&(s.to_string(), r.to_string(), c.to_string())) {
                        Some(v) => {
                            footnote = true;
                            (format!("{v}*"), false)
                        }
                        None => ("-".to_string(), false),
                    },
                };
                let _ = write!(line, "{value:<16}");
                cells.push(Cell {
                    section: s.into(),
                    row: r.into(),
                    column: c.into(),
                    value: value.trim_end_matches('*').to_string(),
                    computed: is_computed,
                });
            }
            let _ = writeln!(text, "{}", line.trim_end());
        }
    }
    if footnote {
        let _ = writeln!(text, "* literal from configuration, not re-derived");
    }
    Table { cells, text }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(round4(&q(564983, 1_000_000), false), "0.5649");
        assert_eq!(round4(&q(597480, 1_000_000), true), "0.5975");
        assert_eq!(round4(&q(5, 10), true), "0.5000");
    }

    #[test]
    fn header_only() {
        let t = emit_table(&[], &TableConfig::default_literals());
        assert!(t.cells.is_empty());
        assert_eq!(t.text.lines().count(), 1);
    }

    #[test]
    fn config_errors() {
        assert!(TableConfig::parse("GRH | all fields = 1").is_err());
        assert!(TableConfig::parse("GRH | some | lower bound = 1").is_err());
        assert_eq!(TableConfig::default_literals().literals.len(), 21);
    }
}

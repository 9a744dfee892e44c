//! Frequency tables from CSV (`value,frequency`, `#` comments) or from the
//! embedded fixtures.

use std::fmt;
use std::path::Path;

use power_lindley::fitting::FrequencyTable;

use crate::error::CliError;

pub const DIT_SYSTEM: &str = include_str!("../data/dit-system.csv");
pub const NOC_SYSTEM: &str = include_str!("../data/noc-system.csv");

/// Names accepted in place of a path.
pub const EMBEDDED: [&str; 2] = ["dit-system", "noc-system"];

pub fn embedded(name: &str) -> Option<&'static str> {
    match name {
        "dit-system" => Some(DIT_SYSTEM),
        "noc-system" => Some(NOC_SYSTEM),
        _ => None,
    }
}

/// Loads an embedded table by name, or else reads the file at `source`.
pub fn read_table(source: &str) -> Result<FrequencyTable<f64>, CliError> {
    if let Some(text) = embedded(source) {
        return parse_table(source, text);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Input(format!(
            "cannot read {source}: {e} (embedded tables: {})",
            EMBEDDED.join(", ")
        ))
    })?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(source);
    parse_table(name, &text)
}

pub fn parse_table(name: &str, text: &str) -> Result<FrequencyTable<f64>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{name}: {e}")))?
        .clone();
    if header.is_empty() {
        return Err(CliError::Input(format!("{name}: empty input, expected header `value,frequency`")));
    }
    if header.len() != 2 || &header[0] != "value" || &header[1] != "frequency" {
        let got: Vec<&str> = header.iter().collect();
        return Err(CliError::Input(format!(
            "{name}: expected header `value,frequency`, found `{}`",
            got.join(",")
        )));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Input(format!("{name}: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(CliError::Input(format!(
                "{name}: line {line}: expected 2 fields, found {}",
                record.len()
            )));
        }
        let field = |i: usize, what: &str| -> Result<f64, CliError> {
            record[i]
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("{name}: line {line}: {what} `{}` is not a number", &record[i])))
        };
        rows.push((field(0, "value")?, field(1, "frequency")?));
    }
    if rows.is_empty() {
        return Err(CliError::Input(format!("{name}: no data rows")));
    }
    FrequencyTable::new(name, rows).map_err(|e| CliError::Input(format!("{name}: {e}")))
}

/// How the frequency column reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScale {
    Percentages,
    Proportions,
    Counts,
}

impl WeightScale {
    /// Percentages when the total is within 1% of 100, proportions when within
    /// 1% of 1, counts otherwise.
    pub fn detect(total: f64) -> Self {
        if (total - 100.0).abs() <= 1.0 {
            WeightScale::Percentages
        } else if (total - 1.0).abs() <= 0.01 {
            WeightScale::Proportions
        } else {
            WeightScale::Counts
        }
    }
}

impl fmt::Display for WeightScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightScale::Percentages => "percentages",
            WeightScale::Proportions => "proportions",
            WeightScale::Counts => "counts",
        })
    }
}

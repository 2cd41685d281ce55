//! Batch input files: one case per row, units declared in the header.

use std::{collections::BTreeMap, fmt, path::Path};

use serde::{Deserialize, Serialize};

use crate::{
    document::{parse_cell, Column, Document, Provenance},
    ReferenceTable, RefError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BatchKind {
    Alpha,
    Scatter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemaColumn {
    pub name: &'static str,
    /// `-` for dimensionless; `a|b` when each cell names its unit.
    pub unit: &'static str,
    pub required: bool,
    pub numeric: bool,
}

const fn col(name: &'static str, unit: &'static str, required: bool, numeric: bool) -> SchemaColumn {
    SchemaColumn { name, unit, required, numeric }
}

const ALPHA: [SchemaColumn; 10] = [
    col("nuclide", "-", false, false),
    col("z", "-", true, true),
    col("a", "-", true, true),
    col("ealpha", "MeV", true, true),
    col("ell", "-", true, true),
    col("r0", "fm", true, true),
    col("u0", "MeV", true, true),
    col("daughter_mass", "u", false, true),
    col("t_exp", "y|d|s", false, true),
    col("t_new", "y|d|s", false, true),
];

const SCATTER: [SchemaColumn; 15] = [
    col("target", "-", false, false),
    col("projectile", "-", false, false),
    col("z", "-", true, true),
    col("a", "-", true, true),
    col("e_lab", "MeV", true, true),
    col("r0", "fm", true, true),
    col("v0", "MeV", false, true),
    col("ac", "fm", false, true),
    col("target_mass", "u", false, true),
    col("l", "-", false, true),
    col("j", "-", false, true),
    col("sigma_s", "mb", false, true),
    col("sigma_r", "mb", false, true),
    col("sigma_t", "mb", false, true),
    col("sign", "-", false, false),
];

impl BatchKind {
    pub fn name(self) -> &'static str {
        match self {
            BatchKind::Alpha => "alpha",
            BatchKind::Scatter => "scatter",
        }
    }

    pub fn schema(self) -> &'static [SchemaColumn] {
        match self {
            BatchKind::Alpha => &ALPHA,
            BatchKind::Scatter => &SCATTER,
        }
    }
}

impl fmt::Display for BatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BatchKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha" => Ok(BatchKind::Alpha),
            "scatter" => Ok(BatchKind::Scatter),
            _ => Err(format!("unknown batch kind `{s}` (alpha or scatter)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BatchValue {
    Number { value: f64, unit: String },
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchCase {
    /// 1-based data row in the source file.
    pub row: usize,
    pub values: BTreeMap<String, BatchValue>,
}

impl BatchCase {
    pub fn number(&self, name: &str) -> Option<f64> {
        match self.values.get(name)? {
            BatchValue::Number { value, .. } => Some(*value),
            BatchValue::Text(_) => None,
        }
    }

    pub fn unit(&self, name: &str) -> Option<&str> {
        match self.values.get(name)? {
            BatchValue::Number { unit, .. } => Some(unit),
            BatchValue::Text(_) => None,
        }
    }

    pub fn text(&self, name: &str) -> Option<&str> {
        match self.values.get(name)? {
            BatchValue::Text(t) => Some(t),
            BatchValue::Number { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowError {
    pub row: usize,
    pub column: String,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}, column `{}`: {}", self.row, self.column, self.message)
    }
}

fn unit_accepted(schema: &SchemaColumn, declared: &str) -> bool {
    declared == schema.unit || (schema.unit.contains('|') && schema.unit.split('|').any(|u| u == declared))
}

/// Parse batch text. Header problems fail the whole file; cell problems
/// are collected for every row before failing.
pub fn parse_batch(text: &str, kind: BatchKind) -> Result<Vec<BatchCase>, RefError> {
    let doc = Document::parse(text, false)?;
    let mut used = Vec::new();
    for s in kind.schema() {
        match doc.columns.iter().position(|c| c.name == s.name) {
            Some(i) => {
                let declared = &doc.columns[i].unit;
                if !unit_accepted(s, declared) {
                    return Err(RefError::UnitMismatch {
                        column: s.name.into(),
                        expected: s.unit.into(),
                        found: declared.clone(),
                    });
                }
                let provenance = if s.numeric { Provenance::Paper } else { Provenance::Label };
                used.push((s, i, Column { name: s.name.into(), unit: declared.clone(), provenance }));
            }
            None if s.required => {
                return Err(RefError::MissingColumn { kind: kind.name().into(), column: s.name.into() })
            }
            None => {}
        }
    }
    let mut cases = Vec::with_capacity(doc.rows.len());
    let mut errors = Vec::new();
    for (r, raw) in doc.rows.iter().enumerate() {
        let row = r + 1;
        let mut values = BTreeMap::new();
        for (s, i, column) in &used {
            let text = raw[*i].text.trim();
            let fail = |message: String| RowError { row, column: s.name.into(), message };
            if text.is_empty() {
                if s.required {
                    errors.push(fail("required value is empty".into()));
                }
                continue;
            }
            if !s.numeric {
                values.insert(s.name.to_string(), BatchValue::Text(text.to_string()));
                continue;
            }
            match parse_cell(text, column) {
                Ok(c) => match c.value {
                    Some(value) => {
                        values.insert(s.name.to_string(), BatchValue::Number { value, unit: c.unit });
                    }
                    None => errors.push(fail(format!("`{text}` is not a number"))),
                },
                Err(m) => errors.push(fail(m)),
            }
        }
        cases.push(BatchCase { row, values });
    }
    if errors.is_empty() {
        Ok(cases)
    } else {
        Err(RefError::Rows(errors))
    }
}

pub fn load_batch(path: &Path, kind: BatchKind) -> Result<Vec<BatchCase>, RefError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RefError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_batch(&text, kind)
}

/// Schema columns of a reference table, one case per row.
pub fn batch_from_table(table: &ReferenceTable, kind: BatchKind) -> Result<Vec<BatchCase>, RefError> {
    let doc = Document {
        columns: table.columns.clone(),
        rows: table.rows.iter().map(|r| r.cells.clone()).collect(),
        ..Default::default()
    };
    parse_batch(&doc.write(), kind)
}

/// Batch text for `cases` over every schema column any case uses.
pub fn export_batch(cases: &[BatchCase], kind: BatchKind) -> String {
    let present: Vec<&SchemaColumn> =
        kind.schema().iter().filter(|s| cases.iter().any(|c| c.values.contains_key(s.name))).collect();
    let columns = present
        .iter()
        .map(|s| Column {
            name: s.name.into(),
            unit: s.unit.into(),
            provenance: if s.numeric { Provenance::Paper } else { Provenance::Label },
        })
        .collect();
    let rows = cases
        .iter()
        .map(|c| {
            present
                .iter()
                .map(|s| {
                    let text = match c.values.get(s.name) {
                        None => String::new(),
                        Some(BatchValue::Text(t)) => t.clone(),
                        Some(BatchValue::Number { value, unit }) if s.unit.contains('|') => format!("{value} {unit}"),
                        Some(BatchValue::Number { value, .. }) => format!("{value}"),
                    };
                    crate::Cell { text, value: None, unit: String::new() }
                })
                .collect()
        })
        .collect();
    Document { columns, rows, ..Default::default() }.write()
}

//! Reference tables shipped with the crate, each pinned by a SHA-256 digest,
//! plus the CSV batch loader used by the command line.

mod batch;
mod document;

use std::{fmt, path::Path, str::FromStr};

use quantarea_core::units::{SECONDS_PER_DAY, SECONDS_PER_YEAR};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use batch::{
    batch_from_table, export_batch, load_batch, parse_batch, BatchCase, BatchKind, BatchValue, RowError, SchemaColumn,
};
pub use document::{Cell, Column, Param, Provenance};

use document::{parse_cell, Document};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RefError {
    #[error("unknown table `{0}` (expected 1-9, T1-T9, work-functions or masses)")]
    UnknownTable(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("table {table}, row {row}, column `{column}`: {message}")]
    Cell { table: String, row: usize, column: String, message: String },
    #[error("{kind} batch is missing required column `{column}`")]
    MissingColumn { kind: String, column: String },
    #[error("column `{column}` declares unit `{found}`, expected `{expected}`")]
    UnitMismatch { column: String, expected: String, found: String },
    #[error("{} row error(s): {}", .0.len(), .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Rows(Vec<RowError>),
    #[error("table {table} digest {found} does not match the pinned {expected}")]
    DigestMismatch { table: String, expected: String, found: String },
    #[error("table {table} declares id `{found}`")]
    WrongId { table: String, found: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    WorkFunctions,
    Masses,
}

impl TableId {
    pub const ALL: [TableId; 11] = [
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
        TableId::T7,
        TableId::T8,
        TableId::T9,
        TableId::WorkFunctions,
        TableId::Masses,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::T1 => "T1",
            TableId::T2 => "T2",
            TableId::T3 => "T3",
            TableId::T4 => "T4",
            TableId::T5 => "T5",
            TableId::T6 => "T6",
            TableId::T7 => "T7",
            TableId::T8 => "T8",
            TableId::T9 => "T9",
            TableId::WorkFunctions => "work-functions",
            TableId::Masses => "masses",
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            TableId::T1 => "t1.csv",
            TableId::T2 => "t2.csv",
            TableId::T3 => "t3.csv",
            TableId::T4 => "t4.csv",
            TableId::T5 => "t5.csv",
            TableId::T6 => "t6.csv",
            TableId::T7 => "t7.csv",
            TableId::T8 => "t8.csv",
            TableId::T9 => "t9.csv",
            TableId::WorkFunctions => "workfunctions.csv",
            TableId::Masses => "masses.csv",
        }
    }

    pub fn embedded(self) -> &'static str {
        match self {
            TableId::T1 => include_str!("../data/t1.csv"),
            TableId::T2 => include_str!("../data/t2.csv"),
            TableId::T3 => include_str!("../data/t3.csv"),
            TableId::T4 => include_str!("../data/t4.csv"),
            TableId::T5 => include_str!("../data/t5.csv"),
            TableId::T6 => include_str!("../data/t6.csv"),
            TableId::T7 => include_str!("../data/t7.csv"),
            TableId::T8 => include_str!("../data/t8.csv"),
            TableId::T9 => include_str!("../data/t9.csv"),
            TableId::WorkFunctions => include_str!("../data/workfunctions.csv"),
            TableId::Masses => include_str!("../data/masses.csv"),
        }
    }

    /// SHA-256 of the embedded file. Editing the data without updating
    /// this fails the suite.
    pub fn pinned_digest(self) -> &'static str {
        match self {
            TableId::T1 => "9938d5b2a6446da0f963a16d679e8c1301576719ca2d23109919d8c7c30b42bf",
            TableId::T2 => "c11068d9c60f12ef3aac4a5cbc2f25d84ee435d0541c5120ef1dea7980cac921",
            TableId::T3 => "31b908721ab96183a1ade12fea068933435e75a2a1a878ab193ce33e5aa9a1bc",
            TableId::T4 => "f748db10c74bada7c1453f13a34a61cace88b14da0be61f6b16ebd595f018a56",
            TableId::T5 => "5088caf5ff94ce1c4c9037c3ad81d607757f2a19f9764a89302f803ea31fe5fe",
            TableId::T6 => "42225e9574f30dffee8da25fa44ec734be59b23839a9bbf118f8de18c6091d6e",
            TableId::T7 => "feb77ce2a11098b2b31f76244b6726fbedb4715407717d4185a18d37882f9d21",
            TableId::T8 => "ad1d0b821543d9fa4af82ddcada08c578f169f11dad47047a8445aa92ac98802",
            TableId::T9 => "0e6fdabadd60cfbf44fb12778cbeeb2bf79530ec309540094e938de4b7cede06",
            TableId::WorkFunctions => "d278a2428a247eb0488f46c69af3f6ffac4000b7bd30256e430a4937e84cf208",
            TableId::Masses => "020b2ef3354d859666ee5e833c3b4ef07ea777a654aa606f86df78d897259083",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = RefError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('T').or_else(|| t.strip_prefix('t')).unwrap_or(t);
        Ok(match t {
            "1" => TableId::T1,
            "2" => TableId::T2,
            "3" => TableId::T3,
            "4" => TableId::T4,
            "5" => TableId::T5,
            "6" => TableId::T6,
            "7" => TableId::T7,
            "8" => TableId::T8,
            "9" => TableId::T9,
            "work-functions" | "workfunctions" | "5w" => TableId::WorkFunctions,
            "masses" => TableId::Masses,
            _ => return Err(RefError::UnknownTable(s.to_string())),
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub cells: Vec<Cell>,
    pub anomaly: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub id: TableId,
    pub title: String,
    pub params: Vec<Param>,
    pub notes: Vec<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
    /// Digest of the source text this table was parsed from.
    pub digest: String,
}

impl ReferenceTable {
    pub fn parse(id: TableId, text: &str) -> Result<Self, RefError> {
        let doc = Document::parse(text, true)?;
        match &doc.table {
            Some(t) if t == id.name() => {}
            other => {
                return Err(RefError::WrongId { table: id.name().into(), found: other.clone().unwrap_or_default() })
            }
        }
        if doc.columns.first().map(|c| c.provenance) != Some(Provenance::Label) {
            return Err(RefError::Format { line: 1, message: "first column must be the row label".into() });
        }
        let mut rows = Vec::with_capacity(doc.rows.len());
        for (i, raw) in doc.rows.iter().enumerate() {
            let mut cells = Vec::with_capacity(raw.len());
            let mut anomaly = None;
            for (c, col) in raw.iter().zip(&doc.columns) {
                let cell = parse_cell(&c.text, col).map_err(|message| RefError::Cell {
                    table: id.name().into(),
                    row: i + 1,
                    column: col.name.clone(),
                    message,
                })?;
                if col.name == "anomaly" && !cell.text.is_empty() {
                    anomaly = Some(cell.text.clone());
                }
                cells.push(cell);
            }
            rows.push(Row { label: raw[0].text.clone(), cells, anomaly });
        }
        Ok(ReferenceTable {
            id,
            title: doc.title.unwrap_or_default(),
            params: doc.params,
            notes: doc.notes,
            columns: doc.columns,
            rows,
            digest: sha256_hex(text.as_bytes()),
        })
    }

    /// Canonical CSV text; identical to the embedded file.
    pub fn to_csv(&self) -> String {
        Document {
            table: Some(self.id.name().to_string()),
            title: Some(self.title.clone()).filter(|t| !t.is_empty()),
            params: self.params.clone(),
            notes: self.notes.clone(),
            columns: self.columns.clone(),
            rows: self.rows.iter().map(|r| r.cells.clone()).collect(),
        }
        .write()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, RefError> {
        serde_json::from_str(s).map_err(|e| RefError::Format { line: e.line(), message: e.to_string() })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn cell(&self, row: usize, column: &str) -> Option<&Cell> {
        self.rows.get(row)?.cells.get(self.column_index(column)?)
    }

    pub fn value(&self, row: usize, column: &str) -> Option<f64> {
        self.cell(row, column)?.value
    }

    pub fn text(&self, row: usize, column: &str) -> Option<&str> {
        self.cell(row, column).map(|c| c.text.as_str())
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|p| p.name == name).map(|p| p.value)
    }

    pub fn provenance(&self, column: &str) -> Option<Provenance> {
        self.column_index(column).map(|i| self.columns[i].provenance)
    }
}

/// The embedded copy; checked against its pinned digest.
pub fn load_table(id: TableId) -> Result<ReferenceTable, RefError> {
    let text = id.embedded();
    let digest = sha256_hex(text.as_bytes());
    if digest != id.pinned_digest() {
        return Err(RefError::DigestMismatch {
            table: id.name().into(),
            expected: id.pinned_digest().into(),
            found: digest,
        });
    }
    ReferenceTable::parse(id, text)
}

/// A copy from `dir/<file_name>`. Not digest-checked: this is the hook
/// for trying edited data.
pub fn load_table_from(dir: &Path, id: TableId) -> Result<ReferenceTable, RefError> {
    let path = dir.join(id.file_name());
    let text = std::fs::read_to_string(&path)
        .map_err(|e| RefError::Io { path: path.display().to_string(), message: e.to_string() })?;
    ReferenceTable::parse(id, &text)
}

/// Every embedded table as CSV plus a JSON mirror, written into `dir`.
pub fn dump_tables(dir: &Path) -> Result<Vec<String>, RefError> {
    let io = |p: &Path, e: std::io::Error| RefError::Io { path: p.display().to_string(), message: e.to_string() };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let mut written = Vec::new();
    for id in TableId::ALL {
        let t = load_table(id)?;
        let csv = dir.join(id.file_name());
        std::fs::write(&csv, t.to_csv()).map_err(|e| io(&csv, e))?;
        let json = csv.with_extension("json");
        std::fs::write(&json, t.to_json()).map_err(|e| io(&json, e))?;
        written.push(csv.display().to_string());
        written.push(json.display().to_string());
    }
    Ok(written)
}

/// Atomic mass in u from the embedded mass table.
pub fn atomic_mass_u(z: u32, a: u32) -> Option<f64> {
    let t = load_table(TableId::Masses).ok()?;
    (0..t.rows.len())
        .find(|&i| t.value(i, "z") == Some(z as f64) && t.value(i, "a") == Some(a as f64))
        .and_then(|i| t.value(i, "mass"))
}

const ELEMENTS: [(&str, u32); 17] = [
    ("n", 0),
    ("H", 1),
    ("He", 2),
    ("Be", 4),
    ("C", 6),
    ("O", 8),
    ("Si", 14),
    ("Ca", 20),
    ("Fe", 26),
    ("Cu", 29),
    ("Pb", 82),
    ("Po", 84),
    ("Pa", 91),
    ("U", 92),
    ("Np", 93),
    ("Am", 95),
    ("Bk", 97),
];

/// Proton number for an element symbol, or for a `Symbol-A` nuclide label.
pub fn element_z(symbol: &str) -> Option<u32> {
    let s = symbol.split('-').next()?.trim();
    ELEMENTS.iter().find(|(e, _)| *e == s).map(|(_, z)| *z)
}

/// Seconds per unit for the time suffixes used in the tables.
pub fn seconds_per(unit: &str) -> Option<f64> {
    match unit {
        "s" => Some(1.0),
        "d" => Some(SECONDS_PER_DAY),
        "y" => Some(SECONDS_PER_YEAR),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse() {
        assert_eq!("3".parse::<TableId>().unwrap(), TableId::T3);
        assert_eq!("T9".parse::<TableId>().unwrap(), TableId::T9);
        assert_eq!("work-functions".parse::<TableId>().unwrap(), TableId::WorkFunctions);
        assert!(matches!("10".parse::<TableId>(), Err(RefError::UnknownTable(_))));
    }

    #[test]
    fn element_lookup() {
        assert_eq!(element_z("Np-237"), Some(93));
        assert_eq!(element_z("Po"), Some(84));
        assert_eq!(element_z("Xx-1"), None);
    }

    #[test]
    fn wrong_id_rejected() {
        assert!(matches!(ReferenceTable::parse(TableId::T2, TableId::T1.embedded()), Err(RefError::WrongId { .. })));
    }
}

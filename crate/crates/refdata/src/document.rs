//! The on-disk layout shared by reference tables and batch files:
//!
//! ```text
//! # table: T6
//! # title: ...
//! # param: r0 = 1.25 fm
//! # note: ...
//! # units: -,MeV,y|d|s
//! # provenance: label,paper,experimental
//! nuclide,ealpha,t_exp
//! Po-208,5.215,2.898 y
//! ```
//!
//! A unit written as `y|d|s` means every cell carries its own unit suffix.

use serde::{Deserialize, Serialize};

use crate::RefError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Row or column label, not a number.
    Label,
    /// Printed as a calculated or input value.
    Paper,
    /// Measured value quoted from the literature.
    Experimental,
    /// Outside source (atomic mass evaluations).
    External,
    /// Free-text annotation.
    Note,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Label => "label",
            Provenance::Paper => "paper",
            Provenance::Experimental => "experimental",
            Provenance::External => "external",
            Provenance::Note => "note",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "label" => Provenance::Label,
            "paper" => Provenance::Paper,
            "experimental" => Provenance::Experimental,
            "external" => Provenance::External,
            "note" => Provenance::Note,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
    pub provenance: Provenance,
}

impl Column {
    /// Units listed as `a|b|c` are carried per cell.
    pub fn allowed_units(&self) -> Vec<&str> {
        self.unit.split('|').collect()
    }

    pub fn per_cell_units(&self) -> bool {
        self.unit.contains('|')
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    pub text: String,
    pub value: f64,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    /// Exactly as printed, unit suffix included.
    pub text: String,
    pub value: Option<f64>,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub(crate) struct Document {
    pub table: Option<String>,
    pub title: Option<String>,
    pub params: Vec<Param>,
    pub notes: Vec<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

fn format_err(line: usize, message: impl Into<String>) -> RefError {
    RefError::Format { line, message: message.into() }
}

/// Split "2.898 y" into (2.898, "y"); a bare number takes the column unit.
pub(crate) fn parse_cell(text: &str, column: &Column) -> Result<Cell, String> {
    let t = text.trim();
    if t.is_empty() || column.provenance == Provenance::Label || column.provenance == Provenance::Note {
        return Ok(Cell { text: text.to_string(), value: None, unit: column.unit.clone() });
    }
    let (num, unit) = match t.split_once(' ') {
        Some((n, u)) => (n, u.trim().to_string()),
        None if column.per_cell_units() => return Err(format!("`{t}` needs a unit, one of {}", column.unit)),
        None => (t, column.unit.clone()),
    };
    if !column.allowed_units().contains(&unit.as_str()) {
        return Err(format!("unit `{unit}` is not {}", column.unit));
    }
    match num.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Cell { text: text.to_string(), value: Some(v), unit }),
        // spins such as 3/2- and other labels stay text
        _ if column.unit == "-" => Ok(Cell { text: text.to_string(), value: None, unit }),
        _ => Err(format!("`{t}` is not a number")),
    }
}

impl Document {
    pub fn parse(text: &str, require_provenance: bool) -> Result<Self, RefError> {
        let mut doc = Document::default();
        let mut units: Option<(usize, Vec<String>)> = None;
        let mut provenance: Option<(usize, Vec<String>)> = None;
        let mut body_start = None;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let Some(rest) = line.strip_prefix('#') else {
                body_start = Some(i);
                break;
            };
            let rest = rest.trim();
            let Some((key, value)) = rest.split_once(':') else {
                return Err(format_err(lineno, format!("comment `{line}` is not `key: value`")));
            };
            let value = value.trim();
            match key.trim() {
                "table" => doc.table = Some(value.to_string()),
                "title" => doc.title = Some(value.to_string()),
                "note" => doc.notes.push(value.to_string()),
                "param" => doc.params.push(parse_param(value).map_err(|m| format_err(lineno, m))?),
                "units" => units = Some((lineno, split_list(value))),
                "provenance" => provenance = Some((lineno, split_list(value))),
                other => return Err(format_err(lineno, format!("unknown header key `{other}`"))),
            }
        }
        let Some((units_line, units)) = units else {
            return Err(format_err(1, "missing `# units:` line"));
        };
        let start = body_start.ok_or_else(|| format_err(units_line, "no column header after the comments"))?;
        let body: String = text.lines().skip(start).map(|l| format!("{l}\n")).collect();
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(body.as_bytes());
        let header = reader.headers().map_err(|e| format_err(start + 1, e.to_string()))?.clone();
        if header.len() != units.len() {
            return Err(format_err(
                units_line,
                format!("{} units for {} columns", units.len(), header.len()),
            ));
        }
        let provenance: Vec<Provenance> = match provenance {
            Some((line, list)) => {
                if list.len() != header.len() {
                    return Err(format_err(line, format!("{} provenance tags for {} columns", list.len(), header.len())));
                }
                list.iter()
                    .map(|p| Provenance::parse(p).ok_or_else(|| format_err(line, format!("unknown provenance `{p}`"))))
                    .collect::<Result<_, _>>()?
            }
            None if require_provenance => return Err(format_err(units_line, "missing `# provenance:` line")),
            None => units.iter().map(|u| if u == "-" { Provenance::Label } else { Provenance::Paper }).collect(),
        };
        doc.columns = header
            .iter()
            .zip(units)
            .zip(provenance)
            .map(|((name, unit), provenance)| Column { name: name.to_string(), unit, provenance })
            .collect();
        for (i, record) in reader.records().enumerate() {
            let lineno = start + 2 + i;
            let record = record.map_err(|e| format_err(lineno, e.to_string()))?;
            doc.rows.push(record.iter().map(|t| Cell { text: t.to_string(), value: None, unit: String::new() }).collect());
        }
        Ok(doc)
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.table {
            out.push_str(&format!("# table: {t}\n"));
        }
        if let Some(t) = &self.title {
            out.push_str(&format!("# title: {t}\n"));
        }
        for p in &self.params {
            if p.unit.is_empty() {
                out.push_str(&format!("# param: {} = {}\n", p.name, p.text));
            } else {
                out.push_str(&format!("# param: {} = {} {}\n", p.name, p.text, p.unit));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("# note: {n}\n"));
        }
        let units: Vec<&str> = self.columns.iter().map(|c| c.unit.as_str()).collect();
        out.push_str(&format!("# units: {}\n", units.join(",")));
        let prov: Vec<&str> = self.columns.iter().map(|c| c.provenance.name()).collect();
        out.push_str(&format!("# provenance: {}\n", prov.join(",")));
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
        w.write_record(self.columns.iter().map(|c| c.name.as_str())).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text.as_str())).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input"));
        out
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).collect()
}

/// `name = text [unit]`
fn parse_param(s: &str) -> Result<Param, String> {
    let (name, rest) = s.split_once('=').ok_or_else(|| format!("param `{s}` is not `name = value unit`"))?;
    let rest = rest.trim();
    let (text, unit) = match rest.split_once(' ') {
        Some((t, u)) => (t.to_string(), u.trim().to_string()),
        None => (rest.to_string(), String::new()),
    };
    let value = text.parse::<f64>().map_err(|_| format!("param `{}` has non-numeric value `{text}`", name.trim()))?;
    Ok(Param { name: name.trim().to_string(), text, value, unit })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(unit: &str) -> Column {
        Column { name: "t".into(), unit: unit.into(), provenance: Provenance::Paper }
    }

    #[test]
    fn cell_units() {
        let c = parse_cell("138.28 d", &col("y|d|s")).unwrap();
        assert_eq!((c.value, c.unit.as_str()), (Some(138.28), "d"));
        assert!(parse_cell("138.28", &col("y|d|s")).is_err());
        assert!(parse_cell("1.0 h", &col("y|d|s")).is_err());
        assert_eq!(parse_cell("3.5", &col("MeV")).unwrap().value, Some(3.5));
        assert!(parse_cell("abc", &col("MeV")).is_err());
        assert_eq!(parse_cell("3/2-", &col("-")).unwrap().value, None);
    }

    #[test]
    fn params() {
        let p = parse_param("v0 = 47.655271 MeV").unwrap();
        assert_eq!((p.name.as_str(), p.value, p.unit.as_str()), ("v0", 47.655271, "MeV"));
        assert!(parse_param("v0 = deep MeV").is_err());
    }
}

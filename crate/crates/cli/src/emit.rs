use std::io::Write;

use serde::Serialize;

use crate::{compute, Failure};

/// Flat records as CSV (header from field names) or as a JSON array.
pub fn records<T: Serialize>(rows: &[T], json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    if json {
        return value(&rows, out);
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for r in rows {
        w.serialize(r).map_err(compute)?;
    }
    w.flush().map_err(compute)?;
    Ok(())
}

pub fn value<T: Serialize + ?Sized>(v: &T, out: &mut dyn Write) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(compute)?;
    writeln!(out, "{s}").map_err(compute)
}

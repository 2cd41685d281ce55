use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::PotentialError;

/// Piecewise-linear U through (x, U) samples with strictly increasing x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tabulated {
    pub points: Vec<[f64; 2]>,
}

impl Tabulated {
    pub fn new(points: Vec<[f64; 2]>) -> Result<Self, PotentialError> {
        let t = Tabulated { points };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        if self.points.len() < 2 {
            return Err(PotentialError::Invalid("tabulated potential needs at least two points".into()));
        }
        for (i, w) in self.points.windows(2).enumerate() {
            if !(w[1][0] > w[0][0]) {
                return Err(PotentialError::Invalid(format!("x not strictly increasing at row {}", i + 1)));
            }
        }
        if self.points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(PotentialError::Invalid("tabulated potential has non-finite values".into()));
        }
        Ok(())
    }

    pub fn range(&self) -> (f64, f64) {
        (self.points[0][0], self.points[self.points.len() - 1][0])
    }

    pub fn min_index(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.points.iter().enumerate() {
            if p[1] < self.points[best][1] {
                best = i;
            }
        }
        best
    }

    pub fn min_value(&self) -> f64 {
        self.points[self.min_index()][1]
    }

    pub fn interpolate(&self, x: f64) -> Option<f64> {
        let (lo, hi) = self.range();
        if x < lo || x > hi {
            return None;
        }
        let i = self.points.partition_point(|p| p[0] <= x).clamp(1, self.points.len() - 1);
        let [x0, u0] = self.points[i - 1];
        let [x1, u1] = self.points[i];
        Some(u0 + (u1 - u0) * (x - x0) / (x1 - x0))
    }

    /// Nearest crossings of U = target on either side of the minimum sample.
    pub fn bracketing_crossings(&self, target: f64) -> Option<(f64, f64)> {
        let m = self.min_index();
        if self.points[m][1] >= target {
            return None;
        }
        let cross = |i: usize, j: usize| {
            let [x0, u0] = self.points[i];
            let [x1, u1] = self.points[j];
            x0 + (target - u0) * (x1 - x0) / (u1 - u0)
        };
        let left = (0..m).rev().find(|&i| self.points[i][1] >= target).map(|i| cross(i, i + 1))?;
        let right = (m + 1..self.points.len()).find(|&i| self.points[i][1] >= target).map(|i| cross(i - 1, i))?;
        Some((left, right))
    }
}

/// Read (x, U) rows. Lines starting with `#` are skipped, as is a single
/// non-numeric header row.
pub fn parse_tabulated_csv<R: Read>(reader: R) -> Result<Tabulated, PotentialError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut points = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| PotentialError::Invalid(format!("csv row {}: {e}", row + 1)))?;
        if rec.len() < 2 {
            return Err(PotentialError::Invalid(format!("csv row {}: expected two columns", row + 1)));
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(x), Ok(u)) => points.push([x, u]),
            _ if row == 0 => continue,
            _ => return Err(PotentialError::Invalid(format!("csv row {}: not a number", row + 1))),
        }
    }
    Tabulated::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_with_header_and_comment() {
        let t = parse_tabulated_csv("# sample well\nx,U\n-1,1\n0,-1\n1,1\n".as_bytes()).unwrap();
        assert_eq!(t.points.len(), 3);
        assert_eq!(t.interpolate(0.5), Some(0.0));
        assert_eq!(t.interpolate(2.0), None);
    }

    #[test]
    fn crossings() {
        let t = Tabulated::new(vec![[-1.0, 1.0], [0.0, -1.0], [1.0, 1.0]]).unwrap();
        assert_eq!(t.bracketing_crossings(0.0), Some((-0.5, 0.5)));
        assert_eq!(t.bracketing_crossings(-2.0), None);
    }

    #[test]
    fn rejects_unsorted() {
        assert!(Tabulated::new(vec![[0.0, 1.0], [0.0, 2.0]]).is_err());
        assert!(parse_tabulated_csv("0,1\n1,x\n".as_bytes()).is_err());
    }
}

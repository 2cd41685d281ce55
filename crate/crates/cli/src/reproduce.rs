//! Recompute reference tables through the public library calls and compare
//! cell by cell.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use quantarea_core::{units::AMU_MEV, QuantizationMode, UnitSystem};
use quantarea_oracle::{baseline_energy, BaselineQuery};
use quantarea_potentials::{centrifugal_b, Family, Nucleon, Potential, SaxonWoodsParams, SpinOrbitScale};
use quantarea_refdata::{atomic_mass_u, element_z, load_table, load_table_from, seconds_per, ReferenceTable, TableId};
use quantarea_scattering::{cross_sections, invert_r0, CrossSections, Nucleus, ScatteringCase, Sign, WellParams};
use quantarea_solver::{saxon_woods_level, solve_bound_state};
use quantarea_tunneling::{alpha_half_life, cold_emission, AlphaInputs};
use serde::Serialize;

/// How far a computed cell may sit from the printed one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Absolute(f64),
    Relative(f64),
    /// Half a unit in the last printed digit, but never tighter than three
    /// significant figures.
    PrintedDigits,
    /// Half a unit in the last printed digit plus the linear effect of
    /// rounding the printed inputs.
    PrintedWithInputs,
    /// A relative bound plus half a printed unit, for quantities printed
    /// after division by another rounded value.
    RelativePlusPrinted(f64),
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TolerancePolicy {
    pub table: TableId,
    pub rules: &'static [(&'static str, Rule)],
    pub description: &'static str,
}

/// Every tolerance used by `reproduce`, in one place.
pub const POLICIES: [TolerancePolicy; 9] = [
    TolerancePolicy {
        table: TableId::T1,
        rules: &[("e_new", Rule::Absolute(5e-3)), ("e_bessel", Rule::Absolute(5e-3))],
        description: "energies printed to 3 decimals: 5e-3 absolute",
    },
    TolerancePolicy {
        table: TableId::T2,
        rules: &[("e_new", Rule::Absolute(1e-3)), ("e_shell", Rule::Absolute(1e-3))],
        description: "energies in hbar*omega: 1e-3 absolute",
    },
    TolerancePolicy {
        table: TableId::T3,
        rules: &[("e_new", Rule::Absolute(1e-3)), ("e_shell_ls", Rule::Absolute(1e-3))],
        description: "energies in hbar*omega: 1e-3 absolute",
    },
    TolerancePolicy {
        table: TableId::T4,
        rules: &[("e_neutron", Rule::Relative(0.02)), ("e_proton", Rule::Relative(0.02))],
        description: "levels: 2% relative; anomalous cells and literal-parameter runs flagged",
    },
    TolerancePolicy {
        table: TableId::T5,
        rules: &[("t_new", Rule::PrintedDigits), ("t_wkb", Rule::PrintedDigits)],
        description: "transmission: 3 significant figures or printed precision, whichever is coarser",
    },
    TolerancePolicy {
        table: TableId::T6,
        rules: &[
            ("t_wkb", Rule::Relative(5e-3)),
            ("t_new", Rule::Relative(5e-3)),
            ("ratio_wkb", Rule::RelativePlusPrinted(5e-3)),
            ("ratio_new", Rule::RelativePlusPrinted(5e-3)),
        ],
        description: "half-lives: 0.5% relative; ratios 0.5% plus printed precision",
    },
    TolerancePolicy {
        table: TableId::T7,
        rules: &[("t_new", Rule::Relative(5e-3)), ("ratio_new", Rule::RelativePlusPrinted(5e-3))],
        description: "half-lives: 0.5% relative; ratios 0.5% plus printed precision",
    },
    TolerancePolicy {
        table: TableId::T8,
        rules: &[
            ("rc", Rule::PrintedWithInputs),
            ("rm", Rule::PrintedWithInputs),
            ("r1", Rule::PrintedWithInputs),
            ("sigma_s", Rule::PrintedWithInputs),
            ("sigma_r", Rule::PrintedWithInputs),
            ("sigma_t", Rule::PrintedWithInputs),
            ("r0_inverted", Rule::Absolute(1e-4)),
        ],
        description: "printed precision plus propagated rounding of printed R0 and V0; inverted R0 to 1e-4 fm",
    },
    TolerancePolicy {
        table: TableId::T9,
        rules: &[
            ("rc", Rule::Relative(2e-3)),
            ("rm", Rule::Relative(2e-3)),
            ("r1", Rule::Relative(2e-3)),
            ("sigma_t", Rule::Relative(5e-3)),
        ],
        description: "zone radii 0.2% relative; total cross section 0.5% relative",
    },
];

pub fn policy(id: TableId) -> Option<&'static TolerancePolicy> {
    POLICIES.iter().find(|p| p.table == id)
}

fn rule(id: TableId, column: &str) -> Rule {
    policy(id)
        .and_then(|p| p.rules.iter().find(|(c, _)| *c == column))
        .map(|(_, r)| *r)
        .unwrap_or_else(|| panic!("no tolerance rule for {id} column {column}"))
}

/// Half a unit in the last digit of a printed number.
pub fn half_unit(printed: &str) -> f64 {
    let t = printed.split_whitespace().next().unwrap_or(printed);
    let mantissa = t.split(['e', 'E']).next().unwrap_or(t);
    let exp: i32 = t.split(['e', 'E']).nth(1).and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = mantissa.split('.').nth(1).map(|d| d.len() as i32).unwrap_or(0);
    0.5 * 10f64.powi(exp - decimals)
}

fn absolute_tolerance(rule: Rule, reference: f64, printed: &str, inputs_effect: f64) -> f64 {
    match rule {
        Rule::Absolute(t) => t,
        Rule::Relative(r) => r * reference.abs(),
        Rule::PrintedDigits => {
            let three_sf = 0.5 * 10f64.powi(reference.abs().log10().floor() as i32 - 2);
            half_unit(printed).max(three_sf)
        }
        Rule::PrintedWithInputs => half_unit(printed) + inputs_effect,
        Rule::RelativePlusPrinted(r) => r * reference.abs() + half_unit(printed),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Pass,
    Fail,
    Flagged,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellReport {
    pub row: String,
    pub column: String,
    pub printed: String,
    pub reference: Option<f64>,
    pub computed: Option<f64>,
    pub abs_dev: Option<f64>,
    pub rel_dev: Option<f64>,
    /// Absolute tolerance applied to this cell.
    pub tolerance: f64,
    pub status: CellStatus,
    pub note: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
    pub unsupported: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproductionReport {
    pub table: TableId,
    pub title: String,
    pub tolerance: String,
    pub source: String,
    pub digest: String,
    pub cells: Vec<CellReport>,
    pub summary: Summary,
}

impl ReproductionReport {
    pub fn cell(&self, row: &str, column: &str) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.row == row && c.column == column)
    }

    /// Comment header, then one CSV line per cell.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# table: {}\n# title: {}\n# tolerance: {}\n# source: {}\n# digest: {}\n# summary: pass={} fail={} flagged={} unsupported={}\n",
            self.table,
            self.title,
            self.tolerance,
            self.source,
            self.digest,
            self.summary.pass,
            self.summary.fail,
            self.summary.flagged,
            self.summary.unsupported
        );
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
        for c in &self.cells {
            w.serialize(c).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
        out
    }
}

struct Builder {
    id: TableId,
    cells: Vec<CellReport>,
}

impl Builder {
    fn push(&mut self, row: &str, column: &str, printed: &str, computed: f64, inputs_effect: f64, note: &str) {
        let reference = first_number(printed);
        let (abs_dev, rel_dev, tolerance, status) = match reference {
            Some(r) => {
                let tol = absolute_tolerance(rule(self.id, column), r, printed, inputs_effect);
                let dev = (computed - r).abs();
                let status = if dev <= tol { CellStatus::Pass } else { CellStatus::Fail };
                (Some(dev), Some(if r != 0.0 { dev / r.abs() } else { dev }), tol, status)
            }
            None => (None, None, 0.0, CellStatus::Unsupported),
        };
        self.cells.push(CellReport {
            row: row.into(),
            column: column.into(),
            printed: printed.into(),
            reference,
            computed: Some(computed),
            abs_dev,
            rel_dev,
            tolerance,
            status,
            note: note.into(),
        });
    }

    fn flag_last(&mut self, note: &str) {
        if let Some(c) = self.cells.last_mut() {
            c.status = CellStatus::Flagged;
            if c.note.is_empty() {
                c.note = note.into();
            } else {
                c.note = format!("{}; {note}", c.note);
            }
        }
    }

    fn unsupported(&mut self, row: &str, columns: &[&str], printed: &[&str], reason: &str) {
        for (c, p) in columns.iter().zip(printed) {
            self.cells.push(CellReport {
                row: row.into(),
                column: (*c).into(),
                printed: (*p).into(),
                reference: first_number(p),
                computed: None,
                abs_dev: None,
                rel_dev: None,
                tolerance: 0.0,
                status: CellStatus::Unsupported,
                note: reason.into(),
            });
        }
    }
}

/// True when `anomaly` names `column` as a whole word.
fn names_column(anomaly: Option<&str>, column: &str) -> bool {
    anomaly.is_some_and(|a| a.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).any(|w| w == column))
}

fn first_number(printed: &str) -> Option<f64> {
    printed.split_whitespace().next()?.parse().ok()
}

fn table_source(id: TableId, dir: Option<&Path>) -> Result<(ReferenceTable, String)> {
    match dir {
        Some(d) => Ok((load_table_from(d, id)?, d.display().to_string())),
        None => Ok((load_table(id)?, "embedded".to_string())),
    }
}

/// Reproduce with the data directory from the environment, if set.
pub fn reproduce(id: TableId) -> Result<ReproductionReport> {
    let dir = std::env::var_os(crate::DATA_DIR_ENV).map(std::path::PathBuf::from);
    reproduce_with(id, dir.as_deref())
}

pub fn reproduce_with(id: TableId, data_dir: Option<&Path>) -> Result<ReproductionReport> {
    let pol = policy(id).ok_or_else(|| anyhow!("table {id} has no reproduction recipe"))?;
    let (table, source) = table_source(id, data_dir)?;
    let mut b = Builder { id, cells: Vec::new() };
    match id {
        TableId::T1 => spherical_box(&table, &mut b),
        TableId::T2 => oscillator(&table, &mut b),
        TableId::T3 => oscillator_spin_orbit(&table, &mut b),
        TableId::T4 => saxon_woods(&table, &mut b),
        TableId::T5 => cold(&table, &mut b),
        TableId::T6 => alpha_fixed(&table, &mut b),
        TableId::T7 => {
            let (t6, _) = table_source(TableId::T6, data_dir)?;
            alpha_fitted(&table, &t6, &mut b)
        }
        TableId::T8 => thermal(&table, &mut b),
        TableId::T9 => helium(&table, &mut b),
        TableId::WorkFunctions | TableId::Masses => unreachable!("no policy"),
    }
    let mut summary = Summary::default();
    for c in &b.cells {
        match c.status {
            CellStatus::Pass => summary.pass += 1,
            CellStatus::Fail => summary.fail += 1,
            CellStatus::Flagged => summary.flagged += 1,
            CellStatus::Unsupported => summary.unsupported += 1,
        }
    }
    Ok(ReproductionReport {
        table: id,
        title: table.title.clone(),
        tolerance: pol.description.to_string(),
        source,
        digest: table.digest.clone(),
        cells: b.cells,
        summary,
    })
}

fn num(t: &ReferenceTable, i: usize, col: &str) -> Result<f64> {
    t.value(i, col).ok_or_else(|| anyhow!("{} row {} has no number in `{col}`", t.id, i + 1))
}

fn text<'a>(t: &'a ReferenceTable, i: usize, col: &str) -> &'a str {
    t.text(i, col).unwrap_or("")
}

fn spherical_box(t: &ReferenceTable, b: &mut Builder) {
    for (i, row) in t.rows.iter().enumerate() {
        let cols = ["e_new", "e_bessel"];
        let r = (|| -> Result<(f64, f64)> {
            let (n, l) = (num(t, i, "n")? as u32, num(t, i, "l")? as u32);
            // mass ½ in natural units makes ħ²/2m = 1
            let p = Potential::new(Family::RadialBox { radius: 1.0, b: centrifugal_b(l, 1.0) }, UnitSystem::Natural, 0.5)?;
            let e = solve_bound_state(&p, QuantizationMode::General(n))?.energy;
            let bessel = baseline_energy(BaselineQuery::BesselZero { n, l })?.value;
            Ok((e, bessel))
        })();
        match r {
            Ok((e, bessel)) => {
                b.push(&row.label, "e_new", text(t, i, "e_new"), e, 0.0, "");
                b.push(&row.label, "e_bessel", text(t, i, "e_bessel"), bessel, 0.0, "tabulated Bessel zero squared");
            }
            Err(e) => b.unsupported(&row.label, &cols, &[text(t, i, cols[0]), text(t, i, cols[1])], &format!("{e:#}")),
        }
    }
}

fn oscillator(t: &ReferenceTable, b: &mut Builder) {
    for (i, row) in t.rows.iter().enumerate() {
        let cols = ["e_new", "e_shell"];
        let r = (|| -> Result<(f64, f64)> {
            let (n, l) = (num(t, i, "n")? as u32, num(t, i, "l")? as u32);
            // ħ = m = ω = 1: a = ½, M_h = ½
            let p = Potential::natural(Family::IsotropicHO { a: 0.5, b: centrifugal_b(l, 0.5) });
            let e = solve_bound_state(&p, QuantizationMode::General(n))?.energy;
            let shell = baseline_energy(BaselineQuery::HoShell { n, l })?.value;
            Ok((e, shell))
        })();
        match r {
            Ok((e, shell)) => {
                b.push(&row.label, "e_new", text(t, i, "e_new"), e, 0.0, "");
                b.push(&row.label, "e_shell", text(t, i, "e_shell"), shell, 0.0, "2n + l + 3/2 with n from the label");
            }
            Err(e) => b.unsupported(&row.label, &cols, &[text(t, i, cols[0]), text(t, i, cols[1])], &format!("{e:#}")),
        }
    }
}

fn oscillator_spin_orbit(t: &ReferenceTable, b: &mut Builder) {
    let c0 = t.param("c0").unwrap_or(0.015);
    for (i, row) in t.rows.iter().enumerate() {
        let cols = ["e_new", "e_shell_ls"];
        let r = (|| -> Result<(f64, f64)> {
            let (n, l, j) = (num(t, i, "n")? as u32, num(t, i, "l")? as u32, num(t, i, "j")?);
            let lf = l as f64;
            let c_lsj = 0.25 * c0 * (j * (j + 1.0) - lf * (lf + 1.0) - 0.75);
            let p = Potential::natural(Family::HOSpinOrbit { a: 0.5, b: centrifugal_b(l, 0.5), c_lsj });
            let e = solve_bound_state(&p, QuantizationMode::General(n))?.energy;
            // the shell column counts n from 0 here
            let shell = baseline_energy(BaselineQuery::HoLsPerturbation { n: n - 1, l, j, c0 })?.value;
            Ok((e, shell))
        })();
        match r {
            Ok((e, shell)) => {
                b.push(&row.label, "e_new", text(t, i, "e_new"), e, 0.0, "");
                b.push(&row.label, "e_shell_ls", text(t, i, "e_shell_ls"), shell, 0.0, "2n + l + 3/2 with n counted from 0");
            }
            Err(e) => b.unsupported(&row.label, &cols, &[text(t, i, cols[0]), text(t, i, cols[1])], &format!("{e:#}")),
        }
    }
}

/// The printed well depth minus this reproduces the levels.
pub const T4_DEPTH_OFFSET: f64 = -2.0;
const NEUTRON_MASS_U: f64 = 1.008665;

fn saxon_woods(t: &ReferenceTable, b: &mut Builder) {
    let param = |n: &str| t.param(n).ok_or_else(|| anyhow!("T4 is missing parameter `{n}`"));
    let level = |i: usize, nucleon: Nucleon, v0: f64, scale: SpinOrbitScale| -> Result<f64> {
        let (n, l, j) = (num(t, i, "n")? as u32, num(t, i, "l")? as u32, num(t, i, "j")?);
        let mode = match n {
            1 => QuantizationMode::Ground,
            k => QuantizationMode::General(k - 1),
        };
        let p = Potential::new(
            Family::SaxonWoodsComposite(SaxonWoodsParams {
                v0,
                r0: param("r0")?,
                a0: param("a0")?,
                vso: param("vso")?,
                rso: param("rso")?,
                aso: param("aso")?,
                z: param("z")? as u32,
                l,
                j,
                r_co: param("rco")?,
                nucleon,
                spin_orbit_scale: scale,
            }),
            UnitSystem::NuclearMevFm,
            NEUTRON_MASS_U * AMU_MEV,
        )?;
        Ok(saxon_woods_level(&p, mode)?.energy)
    };
    for (i, row) in t.rows.iter().enumerate() {
        for (col, nucleon) in [("e_neutron", Nucleon::Neutron), ("e_proton", Nucleon::Proton)] {
            let printed = text(t, i, col);
            let v0 = match param("v0") {
                Ok(v) => v,
                Err(e) => {
                    b.unsupported(&row.label, &[col], &[printed], &format!("{e:#}"));
                    continue;
                }
            };
            match level(i, nucleon, v0 + T4_DEPTH_OFFSET, SpinOrbitScale::Relativistic) {
                Ok(e) => {
                    b.push(&row.label, col, printed, e, 0.0, "depth v0 - 2 MeV, relativistic spin-orbit scale");
                    let repeats = col == "e_proton" && row.anomaly.is_some();
                    if repeats {
                        b.flag_last(row.anomaly.as_deref().unwrap_or("anomalous cell"));
                    }
                }
                Err(e) => b.unsupported(&row.label, &[col], &[printed], &format!("{e:#}")),
            }
            let literal = format!("{col}_literal");
            match level(i, nucleon, v0, SpinOrbitScale::Bare) {
                Ok(e) => {
                    b.cells.push(CellReport {
                        row: row.label.clone(),
                        column: literal,
                        printed: printed.into(),
                        reference: first_number(printed),
                        computed: Some(e),
                        abs_dev: first_number(printed).map(|r| (e - r).abs()),
                        rel_dev: first_number(printed).map(|r| ((e - r) / r).abs()),
                        tolerance: 0.0,
                        status: CellStatus::Flagged,
                        note: "printed parameters taken literally".into(),
                    });
                }
                Err(e) => b.unsupported(&row.label, &[literal.as_str()], &[printed], &format!("{e:#}")),
            }
        }
    }
}

fn cold(t: &ReferenceTable, b: &mut Builder) {
    for (i, row) in t.rows.iter().enumerate() {
        let label = format!("{} {} V/cm", row.label, text(t, i, "field"));
        let r = (|| -> Result<_> { Ok(cold_emission(num(t, i, "work_function")?, num(t, i, "field")?)?) })();
        match r {
            Ok(c) => {
                b.push(&label, "t_new", text(t, i, "t_new"), c.t_new, 0.0, "");
                b.push(&label, "t_wkb", text(t, i, "t_wkb"), c.t_wkb, 0.0, "");
            }
            Err(e) => b.unsupported(&label, &["t_new", "t_wkb"], &[text(t, i, "t_new"), text(t, i, "t_wkb")], &format!("{e:#}")),
        }
    }
}

/// Alpha inputs for nuclide `label` (Z taken from the element symbol).
fn alpha_inputs(label: &str, printed_z: f64, a: u32, ealpha: f64, ell: u32, r0: f64, u0: f64) -> (AlphaInputs, String) {
    let z = element_z(label).unwrap_or(printed_z as u32);
    let mut note = String::new();
    if z as f64 != printed_z {
        note = format!("z = {z} used (printed {printed_z})");
    }
    let mut inp = AlphaInputs::new(z, a, ealpha, ell, r0, u0);
    if let Some(m) = atomic_mass_u(z - 2, a - 4) {
        inp = inp.with_daughter_mass_u(m);
    }
    (inp, note)
}

fn in_unit(t: &ReferenceTable, i: usize, col: &str, seconds: f64) -> Result<f64> {
    let unit = &t.cell(i, col).ok_or_else(|| anyhow!("no `{col}` cell"))?.unit;
    Ok(seconds / seconds_per(unit).ok_or_else(|| anyhow!("unknown time unit `{unit}`"))?)
}

fn seconds(t: &ReferenceTable, i: usize, col: &str) -> Result<f64> {
    let c = t.cell(i, col).ok_or_else(|| anyhow!("no `{col}` cell"))?;
    let v = c.value.ok_or_else(|| anyhow!("`{col}` is empty"))?;
    Ok(v * seconds_per(&c.unit).ok_or_else(|| anyhow!("unknown time unit `{}`", c.unit))?)
}

fn alpha_fixed(t: &ReferenceTable, b: &mut Builder) {
    let cols = ["t_wkb", "t_new", "ratio_wkb", "ratio_new"];
    for (i, row) in t.rows.iter().enumerate() {
        let r = (|| -> Result<([f64; 4], String)> {
            let (inp, note) = alpha_inputs(
                &row.label,
                num(t, i, "z")?,
                num(t, i, "a")? as u32,
                num(t, i, "ealpha")?,
                num(t, i, "ell")? as u32,
                num(t, i, "r0")?,
                num(t, i, "u0")?,
            );
            let c = alpha_half_life(&inp).with_context(|| format!("alpha decay of {}", row.label))?;
            let exp = seconds(t, i, "t_exp")?;
            let o = c.outputs;
            Ok((
                [
                    in_unit(t, i, "t_wkb", o.t_half_wkb)?,
                    in_unit(t, i, "t_new", o.t_half_new)?,
                    o.t_half_wkb / exp,
                    o.t_half_new / exp,
                ],
                note,
            ))
        })();
        match r {
            Ok((v, note)) => {
                for (col, x) in cols.iter().zip(v) {
                    b.push(&row.label, col, text(t, i, col), x, 0.0, &note);
                    if names_column(row.anomaly.as_deref(), col) {
                        b.flag_last(row.anomaly.as_deref().unwrap_or_default());
                    }
                }
            }
            Err(e) => b.unsupported(&row.label, &cols, &cols.map(|c| text(t, i, c)), &format!("{e:#}")),
        }
    }
}

fn alpha_fitted(t: &ReferenceTable, t6: &ReferenceTable, b: &mut Builder) {
    let cols = ["t_new", "ratio_new"];
    for (i, row) in t.rows.iter().enumerate() {
        let r = (|| -> Result<([f64; 2], String)> {
            let e = num(t, i, "ealpha")?;
            let k = (0..t6.rows.len())
                .find(|&k| t6.value(k, "ealpha") == Some(e))
                .ok_or_else(|| anyhow!("no T6 nuclide with ealpha = {e} MeV"))?;
            let key = &t6.rows[k].label;
            let (inp, z_note) = alpha_inputs(
                key,
                num(t6, k, "z")?,
                num(t6, k, "a")? as u32,
                e,
                num(t6, k, "ell")? as u32,
                num(t, i, "r0")?,
                num(t, i, "u0")?,
            );
            let mut notes = Vec::new();
            if key != &row.label {
                notes.push(format!("matched by ealpha to {key}"));
            }
            if !z_note.is_empty() {
                notes.push(z_note);
            }
            let c = alpha_half_life(&inp).with_context(|| format!("alpha decay of {key}"))?;
            let exp = seconds(t, i, "t_exp")?;
            Ok(([in_unit(t, i, "t_new", c.outputs.t_half_new)?, c.outputs.t_half_new / exp], notes.join("; ")))
        })();
        match r {
            Ok((v, note)) => {
                for (col, x) in cols.iter().zip(v) {
                    b.push(&row.label, col, text(t, i, col), x, 0.0, &note);
                    if names_column(row.anomaly.as_deref(), col) {
                        b.flag_last(row.anomaly.as_deref().unwrap_or_default());
                    }
                }
            }
            Err(e) => b.unsupported(&row.label, &cols, &cols.map(|c| text(t, i, c)), &format!("{e:#}")),
        }
    }
}

fn nucleus(z: u32, a: u32) -> Nucleus {
    match atomic_mass_u(z, a) {
        Some(m) => Nucleus::with_mass_u(z, a, m),
        None => Nucleus::new(z, a),
    }
}

fn pick(c: &CrossSections, col: &str) -> f64 {
    match col {
        "rc" => c.zones.rc,
        "rm" => c.zones.r2,
        "r1" => c.zones.r1,
        "sigma_s" => c.sigma_s,
        "sigma_r" => c.sigma_r,
        "sigma_t" => c.sigma_t,
        _ => unreachable!("unknown cross-section column {col}"),
    }
}

fn thermal(t: &ReferenceTable, b: &mut Builder) {
    let cols = ["rc", "rm", "r1", "sigma_s", "sigma_r", "sigma_t"];
    let e_lab = match t.params.iter().find(|p| p.name == "e_lab") {
        Some(p) if p.unit == "eV" => p.value * 1e-6,
        Some(p) => p.value,
        None => 0.025e-6,
    };
    for (i, row) in t.rows.iter().enumerate() {
        let r = (|| -> Result<()> {
            let (z, a) = (num(t, i, "z")? as u32, num(t, i, "a")? as u32);
            let (r0, v0, ac) = (num(t, i, "r0")?, num(t, i, "v0")?, num(t, i, "ac")?);
            let case = |r0: f64, v0: f64| {
                ScatteringCase::new(nucleus(0, 1), 0.5, nucleus(z, a), e_lab, WellParams::new(r0, v0, ac))
            };
            let at = |r0: f64, v0: f64| cross_sections(&case(r0, v0), Sign::Lower);
            let c = at(r0, v0)?;
            let (dr, dv) = (half_unit(text(t, i, "r0")), half_unit(text(t, i, "v0")));
            for col in cols {
                let f = |r: f64, v: f64| at(r, v).map(|c| pick(&c, col));
                let sv = (f(r0, v0 + 1e-6)? - f(r0, v0 - 1e-6)?) / 2e-6;
                let sr = (f(r0 + 1e-7, v0)? - f(r0 - 1e-7, v0)?) / 2e-7;
                b.push(&row.label, col, text(t, i, col), pick(&c, col), sv.abs() * dv + sr.abs() * dr, "");
            }
            let st = num(t, i, "sigma_t")?;
            let back = invert_r0(st, &case(1.0, v0))?;
            b.push(&row.label, "r0_inverted", text(t, i, "r0"), back, 0.0, "R0 from the printed total");
            Ok(())
        })();
        if let Err(e) = r {
            let done: Vec<String> = b.cells.iter().filter(|c| c.row == row.label).map(|c| c.column.clone()).collect();
            let left: Vec<&str> = cols.into_iter().filter(|c| !done.iter().any(|d| d == c)).collect();
            let printed: Vec<&str> = left.iter().map(|c| text(t, i, c)).collect();
            b.unsupported(&row.label, &left, &printed, &format!("{e:#}"));
        }
    }
}

fn helium(t: &ReferenceTable, b: &mut Builder) {
    let cols = ["rc", "rm", "r1", "sigma_t"];
    for (i, row) in t.rows.iter().enumerate() {
        let label = format!("{} {} MeV", row.label, text(t, i, "e_lab"));
        let r = (|| -> Result<CrossSections> {
            let (z, a) = (num(t, i, "z")? as u32, num(t, i, "a")? as u32);
            // the total depends on R0 alone; V0 and a_c are placeholders
            let case = ScatteringCase::new(
                nucleus(2, 3),
                0.5,
                nucleus(z, a),
                num(t, i, "e_lab")?,
                WellParams::new(num(t, i, "r0")?, 40.0, 0.5),
            );
            Ok(cross_sections(&case, Sign::Lower)?)
        })();
        match r {
            Ok(c) => {
                for col in cols {
                    b.push(&label, col, text(t, i, col), pick(&c, col), 0.0, "");
                }
            }
            Err(e) => b.unsupported(&label, &cols, &cols.map(|c| text(t, i, c)), &format!("{e:#}")),
        }
    }
}

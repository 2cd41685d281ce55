use std::{io::Write, path::Path};

use anyhow::{anyhow, Context};
use quantarea_core::QuantizationMode;
use quantarea_potentials::Potential;
use quantarea_refdata::{atomic_mass_u, element_z, load_batch, seconds_per, BatchCase, BatchKind, TableId};
use quantarea_scattering::{
    cross_sections, differential, fit_depth, invert_r0, FitGrid, Nucleus, ScatteringCase, Sign, WellParams,
};
use quantarea_solver::{potential_areas, spectrum as solve_spectrum, solve_bound_state};
use quantarea_tunneling::{alpha_half_life, barrier_result, scan_parameters, AlphaInputs, BarrierResult, BarrierWindow, GridSpec};
use quantarea_wavefunction::{sample_grid, AreaFunction, Parity};
use serde::Serialize;

use crate::{
    compute, emit,
    reproduce::{reproduce, CellStatus},
    usage, AlphaArgs, CaseArgs, ColdArgs, Failure, FitArgs, ReproduceArgs, ScatterArgs, SpectrumArgs, TunnelArgs,
    WavefunctionArgs,
};

fn read_potential(path: &Path) -> Result<Potential, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(anyhow!("cannot read potential spec {}: {e}", path.display())))?;
    Potential::from_json(&text).map_err(|e| usage(anyhow!("potential spec {}: {e}", path.display())))
}

fn parse_mode(s: &str) -> Result<QuantizationMode, Failure> {
    s.parse().map_err(|e| usage(anyhow!("{e}")))
}

/// Comma-separated numbers, exactly `n` of them.
fn numbers(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(usage(anyhow!("{what} must be {n} comma-separated numbers, got `{s}`"))),
    }
}

#[derive(Serialize)]
struct LevelRow {
    mode: String,
    q: f64,
    d: f64,
    x0: f64,
    x1: f64,
    x2: f64,
    #[serde(rename = "E")]
    e: f64,
    #[serde(rename = "K")]
    k: f64,
    #[serde(rename = "Sp")]
    sp: f64,
    #[serde(rename = "Sk")]
    sk: f64,
    #[serde(rename = "SE")]
    se: f64,
}

pub fn spectrum(a: &SpectrumArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    if a.out != "csv" && a.out != "json" {
        return Err(usage(anyhow!("--out must be csv or json, got `{}`", a.out)));
    }
    let p = read_potential(&a.potential)?;
    let modes = a.modes.split(',').map(parse_mode).collect::<Result<Vec<_>, _>>()?;
    let s = solve_spectrum(&p, &modes)
        .map_err(|e| compute(anyhow!("spectrum of {} for modes {}: {e}", p.name(), a.modes)))?;
    for (m, e) in &s.failures {
        eprintln!("warning: {} mode {m}: {e}", p.name());
    }
    let rows: Vec<LevelRow> = s
        .states
        .iter()
        .map(|b| {
            let ar = potential_areas(b);
            LevelRow {
                mode: b.mode.to_string(),
                q: b.q,
                d: b.d,
                x0: b.x0,
                x1: b.turning.x1,
                x2: b.turning.x2,
                e: b.energy,
                k: b.k,
                sp: ar.sp,
                sk: ar.sk,
                se: ar.se,
            }
        })
        .collect();
    emit::records(&rows, json, out)
}

#[derive(Serialize)]
struct WaveRow {
    x: f64,
    re_psi: f64,
    im_psi: f64,
    abs2: f64,
    #[serde(rename = "G")]
    g: f64,
}

pub fn wavefunction(a: &WavefunctionArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let p = read_potential(&a.potential)?;
    let mode = parse_mode(&a.mode)?;
    let parity = match a.parity.as_str() {
        "auto" => Parity::for_mode(mode),
        "symmetric" => Parity::Symmetric,
        "antisymmetric" => Parity::Antisymmetric,
        other => return Err(usage(anyhow!("--parity must be auto, symmetric or antisymmetric, got `{other}`"))),
    };
    if a.samples < 2 {
        return Err(usage(anyhow!("--samples must be at least 2")));
    }
    let b = solve_bound_state(&p, mode).map_err(|e| compute(anyhow!("level {mode} of {}: {e}", p.name())))?;
    let g = AreaFunction::for_state(&p, &b);
    let samples = sample_grid(&b, &g, parity, a.samples)
        .map_err(|e| compute(anyhow!("wave function of level {mode} of {}: {e}", p.name())))?;
    let rows: Vec<WaveRow> = samples
        .iter()
        .map(|s| WaveRow { x: s.x, re_psi: s.value.re, im_psi: s.value.im, abs2: s.value.norm_sqr(), g: s.phase })
        .collect();
    emit::records(&rows, json, out)
}

#[derive(Serialize)]
struct BarrierRow {
    #[serde(rename = "K")]
    k: f64,
    k_branch: &'static str,
    d: f64,
    #[serde(rename = "P")]
    p: f64,
    p_branch: &'static str,
    #[serde(rename = "T_new")]
    t_new: f64,
    #[serde(rename = "T_wkb")]
    t_wkb: f64,
    g: f64,
    r1: f64,
    r2: f64,
}

fn branch_name(v: quantarea_tunneling::BranchValue) -> &'static str {
    match v.branch {
        quantarea_tunneling::Branch::Real => "real",
        quantarea_tunneling::Branch::Imaginary => "imaginary",
    }
}

fn barrier_row(r: &BarrierResult) -> BarrierRow {
    BarrierRow {
        k: r.k.magnitude,
        k_branch: branch_name(r.k),
        d: r.d,
        p: r.p.magnitude,
        p_branch: branch_name(r.p),
        t_new: r.t_new,
        t_wkb: r.t_wkb,
        g: r.g,
        r1: r.r1,
        r2: r.r2,
    }
}

pub fn tunnel(a: &TunnelArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let p = read_potential(&a.barrier)?;
    let window = match &a.window {
        Some(w) => {
            let v = numbers(w, 2, "--window")?;
            Some(BarrierWindow { lo: v[0], hi: v[1] })
        }
        None => None,
    };
    let r = barrier_result(&p, a.energy, window)
        .map_err(|e| compute(anyhow!("barrier {} at energy {}: {e}", p.name(), a.energy)))?;
    if json {
        emit::value(&r, out)
    } else {
        emit::records(&[barrier_row(&r)], false, out)
    }
}

#[derive(Serialize)]
struct ColdRow {
    work_function: f64,
    field: f64,
    #[serde(rename = "K")]
    k: f64,
    d: f64,
    #[serde(rename = "P")]
    p: f64,
    #[serde(rename = "T_new")]
    t_new: f64,
    #[serde(rename = "T_wkb")]
    t_wkb: f64,
    g: f64,
}

pub fn cold_emission(a: &ColdArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let r = quantarea_tunneling::cold_emission(a.work_function, a.field).map_err(|e| {
        compute(anyhow!("cold emission at W = {} eV, field = {} V/cm: {e}", a.work_function, a.field))
    })?;
    let row = ColdRow {
        work_function: a.work_function,
        field: a.field,
        k: r.k.magnitude,
        d: r.d,
        p: r.p.magnitude,
        t_new: r.t_new,
        t_wkb: r.t_wkb,
        g: r.g,
    };
    emit::records(&[row], json, out)
}

#[derive(Serialize, Default)]
struct AlphaRow {
    nuclide: String,
    z: u32,
    a: u32,
    ealpha: f64,
    ell: u32,
    r0: f64,
    u0: f64,
    time_unit: String,
    t_exp: Option<f64>,
    t_wkb: f64,
    t_new: f64,
    ratio_wkb: Option<f64>,
    ratio_new: Option<f64>,
    scan_r0: Option<f64>,
    scan_u0: Option<f64>,
    scan_t_new: Option<f64>,
    scan_ratio: Option<f64>,
}

struct AlphaJob {
    nuclide: String,
    inputs: AlphaInputs,
    t_exp_s: Option<f64>,
}

/// "2.898y", "138.4 d", or bare seconds.
fn parse_time(s: &str) -> anyhow::Result<f64> {
    let t = s.trim();
    let split = t.find(|c: char| c.is_ascii_alphabetic() && c != 'e' && c != 'E').unwrap_or(t.len());
    let (num, unit) = t.split_at(split);
    let unit = if unit.trim().is_empty() { "s" } else { unit.trim() };
    let v: f64 = num.trim().parse().with_context(|| format!("bad time `{s}`"))?;
    Ok(v * seconds_per(unit).ok_or_else(|| anyhow!("unknown time unit `{unit}` in `{s}` (s, d or y)"))?)
}

fn daughter_mass(z: u32, a: u32, given: Option<f64>) -> Option<f64> {
    given.or_else(|| atomic_mass_u(z.checked_sub(2)?, a.checked_sub(4)?))
}

fn alpha_job(nuclide: String, z: u32, a: u32, e: f64, ell: u32, r0: f64, u0: f64, dm: Option<f64>, t: Option<f64>) -> AlphaJob {
    let mut inputs = AlphaInputs::new(z, a, e, ell, r0, u0);
    if let Some(m) = daughter_mass(z, a, dm) {
        inputs = inputs.with_daughter_mass_u(m);
    }
    AlphaJob { nuclide, inputs, t_exp_s: t }
}

fn batch_alpha(case: &BatchCase) -> anyhow::Result<AlphaJob> {
    let need = |c: &str| case.number(c).ok_or_else(|| anyhow!("row {}: `{c}` missing", case.row));
    let (z, a) = (need("z")? as u32, need("a")? as u32);
    let nuclide = case.text("nuclide").map(str::to_string).unwrap_or_else(|| format!("{z}-{a}"));
    // a recognisable element symbol wins over a mistyped Z
    let z = element_z(&nuclide).unwrap_or(z);
    let t = match (case.number("t_exp"), case.unit("t_exp")) {
        (Some(v), Some(u)) => {
            Some(v * seconds_per(u).ok_or_else(|| anyhow!("row {}: unknown time unit `{u}`", case.row))?)
        }
        _ => None,
    };
    Ok(alpha_job(nuclide, z, a, need("ealpha")?, need("ell")? as u32, need("r0")?, need("u0")?, case.number("daughter_mass"), t))
}

pub fn alpha(a: &AlphaArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let per = seconds_per(&a.time_unit)
        .ok_or_else(|| usage(anyhow!("--time-unit must be s, d or y, got `{}`", a.time_unit)))?;
    let jobs: Vec<AlphaJob> = match &a.batch {
        Some(path) => {
            let cases = load_batch(path, BatchKind::Alpha).map_err(|e| usage(anyhow!("batch {}: {e}", path.display())))?;
            cases.iter().map(batch_alpha).collect::<anyhow::Result<_>>().map_err(usage)?
        }
        None => {
            let za = a.nuclide.as_deref().ok_or_else(|| usage(anyhow!("--nuclide Z,A is required without --batch")))?;
            let v = numbers(za, 2, "--nuclide")?;
            let e = a.ealpha.ok_or_else(|| usage(anyhow!("--ealpha is required without --batch")))?;
            let t = a.t_exp.as_deref().map(parse_time).transpose().map_err(usage)?;
            vec![alpha_job(format!("{}-{}", v[0], v[1]), v[0] as u32, v[1] as u32, e, a.ell, a.r0, a.u0, a.daughter_mass, t)]
        }
    };
    if a.scan && jobs.iter().any(|j| j.t_exp_s.is_none()) {
        return Err(usage(anyhow!("--scan needs an experimental half-life (--t-exp or a t_exp column)")));
    }
    let mut rows = Vec::with_capacity(jobs.len());
    for j in &jobs {
        let i = &j.inputs;
        let describe = || format!("alpha decay of {} (Z = {}, A = {}, E = {} MeV, l = {})", j.nuclide, i.z, i.a, i.e_alpha, i.ell);
        let c = alpha_half_life(i).map_err(|e| compute(anyhow!("{}: {e}", describe())))?;
        let o = c.outputs;
        let mut row = AlphaRow {
            nuclide: j.nuclide.clone(),
            z: i.z,
            a: i.a,
            ealpha: i.e_alpha,
            ell: i.ell,
            r0: i.r0,
            u0: i.u0,
            time_unit: a.time_unit.clone(),
            t_exp: j.t_exp_s.map(|t| t / per),
            t_wkb: o.t_half_wkb / per,
            t_new: o.t_half_new / per,
            ratio_wkb: j.t_exp_s.map(|t| o.t_half_wkb / t),
            ratio_new: j.t_exp_s.map(|t| o.t_half_new / t),
            ..Default::default()
        };
        if a.scan {
            let t = j.t_exp_s.expect("checked above");
            let f = scan_parameters(i, t, &GridSpec::default()).map_err(|e| compute(anyhow!("scan for {}: {e}", describe())))?;
            row.scan_r0 = Some(f.r0);
            row.scan_u0 = Some(f.u0);
            row.scan_t_new = Some(f.t_half_new / per);
            row.scan_ratio = Some(f.ratio);
        }
        rows.push(row);
    }
    emit::records(&rows, json, out)
}

fn nucleus(z: u32, a: u32, mass_u: Option<f64>) -> Nucleus {
    match mass_u.or_else(|| atomic_mass_u(z, a)) {
        Some(m) => Nucleus::with_mass_u(z, a, m),
        None => Nucleus::new(z, a),
    }
}

fn parse_sign(s: &str) -> Result<Sign, Failure> {
    match s {
        "lower" => Ok(Sign::Lower),
        "upper" => Ok(Sign::Upper),
        other => Err(usage(anyhow!("sign must be lower or upper, got `{other}`"))),
    }
}

fn parse_projectile(s: &str) -> Result<(u32, u32), Failure> {
    match s {
        "n" | "neutron" => Ok((0, 1)),
        "he3" | "helium3" => Ok((2, 3)),
        _ => {
            let sep = if s.contains(',') { ',' } else { '-' };
            let v = numbers(&s.replace(sep, ","), 2, "projectile")?;
            Ok((v[0] as u32, v[1] as u32))
        }
    }
}

/// Case from the flags, with R0 from `--sigma-t-exp` when `--r0` is absent.
fn build_case(c: &CaseArgs) -> Result<(ScatteringCase, Sign), Failure> {
    let (pz, pa) = parse_projectile(&c.projectile)?;
    let t = c.target.as_deref().ok_or_else(|| usage(anyhow!("--target Z,A is required")))?;
    let tv = numbers(t, 2, "--target")?;
    let e = c.elab.ok_or_else(|| usage(anyhow!("--elab is required")))?;
    let lsj = numbers(&c.lsj, 3, "--lsj")?;
    let sign = parse_sign(&c.sign)?;
    let case = ScatteringCase::new(nucleus(pz, pa, None), lsj[1], nucleus(tv[0] as u32, tv[1] as u32, None), e, WellParams::new(1.0, c.v0, c.ac))
        .with_lsj(lsj[0] as u32, lsj[1], lsj[2]);
    let r0 = match (c.r0, c.sigma_t_exp) {
        (Some(r), _) => r,
        (None, Some(st)) => invert_r0(st, &case)
            .map_err(|e| compute(anyhow!("R0 from sigma_t = {st} mb for target {t} at {e_lab} MeV: {e}", e_lab = e)))?,
        (None, None) => return Err(usage(anyhow!("give --r0 or --sigma-t-exp"))),
    };
    Ok((case.with_params(WellParams::new(r0, c.v0, c.ac)), sign))
}

#[derive(Serialize)]
struct ScatterRow {
    target: String,
    e_lab: f64,
    r0: f64,
    v0: f64,
    ac: f64,
    e_r: f64,
    k: f64,
    r3: f64,
    rm: f64,
    r1: f64,
    rc: f64,
    y_tail: f64,
    y_well: f64,
    y: f64,
    ratio: f64,
    sigma_s: f64,
    sigma_r: f64,
    sigma_t: f64,
}

fn scatter_row(target: String, case: &ScatteringCase, sign: Sign) -> anyhow::Result<ScatterRow> {
    let c = cross_sections(case, sign).with_context(|| {
        format!("cross sections for target {target} at {} MeV, R0 = {} fm, V0 = {} MeV", case.e_lab, case.params.r0, case.params.v0)
    })?;
    Ok(ScatterRow {
        target,
        e_lab: case.e_lab,
        r0: case.params.r0,
        v0: case.params.v0,
        ac: case.params.ac,
        e_r: c.e_r,
        k: c.k,
        r3: c.zones.r3,
        rm: c.zones.r2,
        r1: c.zones.r1,
        rc: c.zones.rc,
        y_tail: c.y.tail,
        y_well: c.y.well,
        y: c.y.total,
        ratio: c.ratio,
        sigma_s: c.sigma_s,
        sigma_r: c.sigma_r,
        sigma_t: c.sigma_t,
    })
}

fn batch_scatter(b: &BatchCase, defaults: &CaseArgs) -> Result<(String, ScatteringCase, Sign), Failure> {
    let need = |c: &str| b.number(c).ok_or_else(|| usage(anyhow!("row {}: `{c}` missing", b.row)));
    let (z, a) = (need("z")? as u32, need("a")? as u32);
    let (pz, pa) = parse_projectile(b.text("projectile").unwrap_or(&defaults.projectile))?;
    let s = if (pz, pa) == (0, 1) || (pz, pa) == (2, 3) { 0.5 } else { 0.0 };
    let l = b.number("l").unwrap_or(0.0) as u32;
    let j = b.number("j").unwrap_or(l as f64 + s);
    let sign = parse_sign(b.text("sign").unwrap_or(&defaults.sign))?;
    let params = WellParams::new(need("r0")?, b.number("v0").unwrap_or(defaults.v0), b.number("ac").unwrap_or(defaults.ac));
    let case = ScatteringCase::new(nucleus(pz, pa, None), s, nucleus(z, a, b.number("target_mass")), need("e_lab")?, params)
        .with_lsj(l, s, j);
    let label = b.text("target").map(str::to_string).unwrap_or_else(|| format!("{z}-{a}"));
    Ok((label, case, sign))
}

pub fn scatter(a: &ScatterArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(path) = &a.batch {
        let cases = load_batch(path, BatchKind::Scatter).map_err(|e| usage(anyhow!("batch {}: {e}", path.display())))?;
        let mut rows = Vec::new();
        for b in &cases {
            let (label, case, sign) = batch_scatter(b, &a.case)?;
            rows.push(scatter_row(label, &case, sign).with_context(|| format!("batch row {}", b.row)).map_err(compute)?);
        }
        return emit::records(&rows, json, out);
    }
    let (case, sign) = build_case(&a.case)?;
    let target = a.case.target.clone().unwrap_or_default();
    match a.angles {
        Some(n) if n < 2 => Err(usage(anyhow!("--angles must be at least 2"))),
        Some(n) => {
            let thetas: Vec<f64> = (0..n).map(|i| std::f64::consts::PI * i as f64 / (n - 1) as f64).collect();
            let d = differential(&case, sign, &thetas)
                .map_err(|e| compute(anyhow!("differential cross section for target {target}: {e}")))?;
            emit::records(&d, json, out)
        }
        None => emit::records(&[scatter_row(target, &case, sign).map_err(compute)?], json, out),
    }
}

#[derive(Serialize)]
struct FitRow {
    r0: f64,
    v0_grid: f64,
    ac: f64,
    v0: f64,
    sigma_s: f64,
    sigma_r: f64,
    sigma_t: f64,
    forward_sigma_s: f64,
    forward_sigma_r: f64,
}

pub fn fit(a: &FitArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let t = numbers(&a.targets, 2, "--targets")?;
    let (case, sign) = build_case(&a.case)?;
    let f = fit_depth(&case, t[0], t[1], sign, &FitGrid::default()).map_err(|e| {
        compute(anyhow!("depth fit to sigma_s = {} mb, sigma_r = {} mb at R0 = {} fm: {e}", t[0], t[1], case.params.r0))
    })?;
    let check = cross_sections(&case.clone().with_params(WellParams::new(case.params.r0, f.v0, f.ac)), sign)
        .map_err(|e| compute(anyhow!("forward check at V0 = {} MeV, a_c = {} fm: {e}", f.v0, f.ac)))?;
    let row = FitRow {
        r0: case.params.r0,
        v0_grid: f.v0_grid,
        ac: f.ac,
        v0: f.v0,
        sigma_s: f.sigma_s,
        sigma_r: f.sigma_r,
        sigma_t: f.sigma_t,
        forward_sigma_s: check.sigma_s,
        forward_sigma_r: check.sigma_r,
    };
    emit::records(&[row], json, out)
}

pub fn reproduce_table(a: &ReproduceArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let id: TableId = a.table.parse().map_err(|e| usage(anyhow!("{e}")))?;
    if matches!(id, TableId::WorkFunctions | TableId::Masses) {
        return Err(usage(anyhow!("table {id} is input data, not a result table (choose 1-9)")));
    }
    if let Some(dir) = &a.dump {
        std::fs::create_dir_all(dir).map_err(|e| compute(anyhow!("cannot create {}: {e}", dir.display())))?;
        quantarea_refdata::dump_tables(dir).map_err(|e| compute(anyhow!("dumping tables to {}: {e}", dir.display())))?;
    }
    let report = reproduce(id).map_err(|e| compute(e.context(format!("reproducing table {id}"))))?;
    if json {
        emit::value(&report, out)?;
    } else {
        write!(out, "{}", report.to_csv()).map_err(compute)?;
    }
    let failed: Vec<String> = report
        .cells
        .iter()
        .filter(|c| c.status == CellStatus::Fail)
        .map(|c| format!("{}/{}", c.row, c.column))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Tolerance(format!("table {id}: {} cell(s) out of tolerance: {}", failed.len(), failed.join(", "))))
    }
}

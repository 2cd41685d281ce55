use std::path::PathBuf;

use proptest::prelude::*;
use quantarea_refdata::*;

#[test]
fn every_table_loads_and_matches_its_digest() {
    for id in TableId::ALL {
        let t = load_table(id).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert_eq!(t.digest, id.pinned_digest());
        assert_eq!(t.digest, sha256_hex(id.embedded().as_bytes()));
        assert!(!t.rows.is_empty());
        for r in &t.rows {
            assert_eq!(r.cells.len(), t.columns.len(), "{id} {}", r.label);
        }
    }
}

#[test]
fn export_reproduces_embedded_bytes() {
    for id in TableId::ALL {
        let t = load_table(id).unwrap();
        assert_eq!(t.to_csv(), id.embedded(), "{id}");
        let back = ReferenceTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t, "{id}");
    }
}

#[test]
fn edited_data_changes_the_digest() {
    let edited = TableId::T5.embedded().replace("5.12448e-23", "5.12449e-23");
    let t = ReferenceTable::parse(TableId::T5, &edited).unwrap();
    assert_ne!(t.digest, TableId::T5.pinned_digest());
}

#[test]
fn cold_emission_row() {
    let t = load_table(TableId::T5).unwrap();
    assert_eq!(t.rows.len(), 24);
    assert_eq!(t.rows[0].label, "Na");
    assert_eq!(t.value(0, "work_function"), Some(2.46));
    assert_eq!(t.value(0, "field"), Some(5e6));
    assert_eq!(t.value(0, "t_new"), Some(5.12448e-23));
    assert_eq!(t.cell(0, "work_function").unwrap().unit, "eV");
    assert_eq!(t.provenance("work_function"), Some(Provenance::Experimental));
    assert_eq!(t.provenance("t_new"), Some(Provenance::Paper));
    // printed precision survives in the text
    assert_eq!(t.text(4, "t_new"), Some("0.000052"));
}

#[test]
fn thermal_neutron_row() {
    let t = load_table(TableId::T8).unwrap();
    let h = &t.rows[0];
    assert_eq!(h.label, "H");
    let got: Vec<f64> =
        ["r0", "v0", "ac", "sigma_s", "sigma_r", "sigma_t"].iter().map(|c| t.value(0, c).unwrap()).collect();
    assert_eq!(got, [2.29845, 21.3275, 0.40, 3390.0, 0.519, 3390.52]);
    assert_eq!(t.provenance("sigma_s_exp"), Some(Provenance::Experimental));
    assert_eq!(t.param("e_lab"), Some(0.025));
    assert_eq!(t.params[0].unit, "eV");
}

#[test]
fn alpha_row_with_cell_units() {
    let t = load_table(TableId::T6).unwrap();
    assert_eq!(t.rows[0].label, "Po-208");
    assert_eq!(t.value(0, "ealpha"), Some(5.215));
    assert_eq!(t.value(0, "r0"), Some(1.25));
    assert_eq!(t.value(0, "u0"), Some(40.0));
    let exp = t.cell(0, "t_exp").unwrap();
    assert_eq!((exp.value, exp.unit.as_str()), (Some(2.898), "y"));
    assert_eq!(t.cell(1, "t_exp").unwrap().unit, "d");
    assert_eq!(t.provenance("t_exp"), Some(Provenance::Experimental));
}

#[test]
fn anomalies_are_annotated() {
    let t4 = load_table(TableId::T4).unwrap();
    let flagged: Vec<&str> = t4.rows.iter().filter(|r| r.anomaly.is_some()).map(|r| r.label.as_str()).collect();
    assert_eq!(flagged, ["2s1/2"]);
    assert!(!t4.notes.is_empty());
    let t6 = load_table(TableId::T6).unwrap();
    let np = t6.rows.iter().position(|r| r.label == "Np-237").unwrap();
    assert_eq!(t6.value(np, "z"), Some(83.0));
    assert!(t6.rows[np].anomaly.is_some());
    let t7 = load_table(TableId::T7).unwrap();
    assert_eq!(t7.rows.iter().filter(|r| r.anomaly.is_some()).count(), 3);
}

#[test]
fn mass_lookup() {
    assert_eq!(atomic_mass_u(82, 204), Some(203.973044));
    assert_eq!(atomic_mass_u(2, 4), Some(4.002603));
    assert_eq!(atomic_mass_u(50, 120), None);
}

#[test]
fn reading_from_a_directory() {
    let dir = scratch("dir");
    let written = dump_tables(&dir).unwrap();
    assert_eq!(written.len(), 2 * TableId::ALL.len());
    for id in TableId::ALL {
        assert_eq!(load_table_from(&dir, id).unwrap(), load_table(id).unwrap());
    }
    assert!(matches!(load_table_from(&dir.join("missing"), TableId::T1), Err(RefError::Io { .. })));
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("quantarea-refdata-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn table6_round_trip_through_a_batch_file() {
    let t6 = load_table(TableId::T6).unwrap();
    let cases = batch_from_table(&t6, BatchKind::Alpha).unwrap();
    assert_eq!(cases.len(), 5);
    assert_eq!(cases[1].number("t_exp"), Some(138.28));
    assert_eq!(cases[1].unit("t_exp"), Some("d"));
    assert_eq!(cases[0].text("nuclide"), Some("Po-208"));
    let path = scratch("batch").join("t6.csv");
    std::fs::write(&path, export_batch(&cases, BatchKind::Alpha)).unwrap();
    assert_eq!(load_batch(&path, BatchKind::Alpha).unwrap(), cases);
}

const GOOD: &str = "# units: -,-,-,MeV,-,fm,MeV\nnuclide,z,a,ealpha,ell,r0,u0\nPo-208,84,208,5.215,0,1.25,40\nPo-210,84,210,5.407,0,1.3,47\n";

#[test]
fn well_formed_alpha_batch() {
    let cases = parse_batch(GOOD, BatchKind::Alpha).unwrap();
    assert_eq!(cases.len(), 2);
    assert_eq!(cases[1].number("u0"), Some(47.0));
    assert_eq!(cases[1].row, 2);
}

#[test]
fn missing_column_is_a_schema_error() {
    let text = GOOD.replace(",ealpha", ",energy");
    match parse_batch(&text, BatchKind::Alpha) {
        Err(RefError::MissingColumn { column, .. }) => assert_eq!(column, "ealpha"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn declared_unit_mismatch() {
    let text = GOOD.replace("-,fm,MeV", "-,nm,MeV");
    assert!(matches!(parse_batch(&text, BatchKind::Alpha), Err(RefError::UnitMismatch { .. })));
    assert!(matches!(
        parse_batch("nuclide,z\nx,1\n", BatchKind::Alpha),
        Err(RefError::Format { .. })
    ));
}

#[test]
fn bad_cells_are_named_by_row() {
    let text = GOOD.replace("5.407", "five") + "Po-209,84,209,4.979,,1.24,35\n";
    match parse_batch(&text, BatchKind::Alpha) {
        Err(RefError::Rows(errs)) => {
            assert_eq!(errs.len(), 2);
            assert_eq!((errs[0].row, errs[0].column.as_str()), (2, "ealpha"));
            assert_eq!((errs[1].row, errs[1].column.as_str()), (3, "ell"));
            assert!(RefError::Rows(errs).to_string().contains("row 2"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn per_cell_time_units() {
    let text = "# units: -,-,MeV,-,fm,MeV,y|d|s\nz,a,ealpha,ell,r0,u0,t_exp\n84,210,5.407,0,1.3,47,138.4 d\n84,210,5.407,0,1.3,47,138.4 h\n";
    match parse_batch(text, BatchKind::Alpha) {
        Err(RefError::Rows(errs)) => assert_eq!((errs.len(), errs[0].row), (1, 2)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn scatter_batch() {
    let text = "# units: -,-,-,MeV,fm\ntarget,z,a,e_lab,r0\nO,8,16,96.4,0.631332\n";
    let c = parse_batch(text, BatchKind::Scatter).unwrap();
    assert_eq!(c[0].number("r0"), Some(0.631332));
    assert!(matches!(parse_batch(text, BatchKind::Alpha), Err(RefError::MissingColumn { .. })));
}

proptest! {
    #[test]
    fn exported_batches_reimport(rows in prop::collection::vec(
        (1u32..120, 4u32..300, 1.0f64..10.0, 0u32..6, 0.5f64..2.0, 1.0f64..80.0, 1e-6f64..1e12), 1..8)) {
        let text = rows.iter().fold(
            String::from("# units: -,-,MeV,-,fm,MeV,y|d|s\nz,a,ealpha,ell,r0,u0,t_exp\n"),
            |acc, (z, a, e, l, r0, u0, t)| acc + &format!("{z},{a},{e},{l},{r0},{u0},{t} s\n"),
        );
        let cases = parse_batch(&text, BatchKind::Alpha).unwrap();
        let again = parse_batch(&export_batch(&cases, BatchKind::Alpha), BatchKind::Alpha).unwrap();
        prop_assert_eq!(again, cases);
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;

use mixent_cli::campaign::{run_campaign, sibling_path};
use mixent_cli::input::MatrixJson;
use mixent_cli::{
    generate, lptps_line, memms_grid, verify_row, Bundle, CampaignConfig, Figure, Format, ParsedTable,
};
use mixent::states::{bell_state, werner_state, Family};
use mixent::Matrix4;

const BIN: &str = env!("CARGO_BIN_EXE_mixent");

fn config(dir: &Path, figure: Figure, family: Option<Family>, n: usize, format: Format) -> CampaignConfig {
    let path = dir.join(format!("{figure}.{}", format.extension()));
    CampaignConfig::new(n, 7, family, figure, path, format).unwrap()
}

#[test]
fn campaigns_are_byte_identical_on_rerun() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for figure in [Figure::Fig1a, Figure::Fig2, Figure::Fig3b, Figure::None] {
        for format in [Format::Csv, Format::Json] {
            let (_, wa) = run_campaign(&config(a.path(), figure, None, 400, format)).unwrap();
            let (_, wb) = run_campaign(&config(b.path(), figure, None, 400, format)).unwrap();
            assert_eq!(wa.len(), wb.len());
            for (pa, pb) in wa.iter().zip(&wb) {
                assert_eq!(fs::read(pa).unwrap(), fs::read(pb).unwrap(), "{}", pa.display());
            }
        }
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}.csv"));
        let status = Command::new(BIN)
            .args(["campaign", "--figure", "fig2", "--n", "500", "--seed", "3", "--out"])
            .arg(&out)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn different_seeds_give_different_data() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(dir.path(), Figure::Fig1b, None, 50, Format::Csv);
    let first = generate(&c).dataset.to_csv_string();
    c.seed += 1;
    assert_ne!(first, generate(&c).dataset.to_csv_string());
}

#[test]
fn every_emitted_row_passes_the_record_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let mut cases: Vec<(Figure, Option<Family>)> = vec![
        (Figure::Fig1a, None),
        (Figure::Fig1b, None),
        (Figure::Fig2, None),
        (Figure::Fig3a, None),
        (Figure::Fig3b, None),
    ];
    cases.extend(Family::ALL.into_iter().filter(|f| mixent_cli::campaign::CAMPAIGN_FAMILIES.contains(f)).map(|f| (Figure::None, Some(f))));
    for (figure, family) in cases {
        let c = config(dir.path(), figure, family, 1000, Format::Csv);
        run_campaign(&c).unwrap();
        let table = ParsedTable::from_csv(&fs::read_to_string(&c.output_path).unwrap()).unwrap();
        assert_eq!(table.columns, figure.columns());
        assert_eq!(table.rows.len(), 1000);
        assert_eq!(table.meta("seed"), Some("7"));
        assert!(table.meta("rng").unwrap().starts_with("ChaCha8Rng"));
        for (i, row) in table.rows.iter().enumerate() {
            verify_row(&table.columns, row, figure.bundle_measure())
                .unwrap_or_else(|e| panic!("{figure} {family:?} row {i}: {e}"));
        }
    }
}

#[test]
fn full_records_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), Figure::None, Some(Family::Random), 300, Format::Csv);
    let (out, _) = run_campaign(&c).unwrap();
    let table = ParsedTable::from_csv(&fs::read_to_string(&c.output_path).unwrap()).unwrap();
    for (rec, row) in out.records.iter().zip(&table.rows) {
        for (col, text) in table.columns.iter().zip(row) {
            let cell = rec.cell(col).unwrap();
            match cell.as_f64() {
                Some(v) => assert_eq!(text.parse::<f64>().unwrap(), v, "{col}"),
                None => assert_eq!(*text, cell.to_csv(), "{col}"),
            }
        }
    }
}

#[test]
fn summary_bundle_counts_match_a_recount() {
    let dir = tempfile::tempdir().unwrap();
    for figure in [Figure::Fig1a, Figure::Fig1b, Figure::Fig3a, Figure::None] {
        let c = config(dir.path(), figure, None, 2000, Format::Csv);
        let (out, _) = run_campaign(&c).unwrap();
        let table = ParsedTable::from_csv(&fs::read_to_string(&c.output_path).unwrap()).unwrap();
        let mut recount: BTreeMap<Bundle, usize> = Bundle::ALL.into_iter().map(|b| (b, 0)).collect();
        for b in table.column("bundle").unwrap() {
            *recount.get_mut(&Bundle::parse(b).unwrap()).unwrap() += 1;
        }
        assert_eq!(recount, out.summary.bundle_counts, "{figure}");
        assert!(out.summary.violations.is_empty());
    }
}

#[test]
fn json_dataset_matches_csv_content() {
    let dir = tempfile::tempdir().unwrap();
    let (csv_out, _) = run_campaign(&config(dir.path(), Figure::Fig3b, None, 100, Format::Csv)).unwrap();
    let c = config(dir.path(), Figure::Fig3b, None, 100, Format::Json);
    run_campaign(&c).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&c.output_path).unwrap()).unwrap();
    assert_eq!(doc["meta"]["seed"], "7");
    let rows = doc["rows"].as_array().unwrap();
    let tangles = csv_out.dataset.column_f64("tangle").unwrap();
    for (row, t) in rows.iter().zip(tangles) {
        assert_eq!(row[1].as_f64().unwrap(), t);
    }
}

#[test]
fn figure_companions_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), Figure::Fig2, None, 100, Format::Csv);
    let (_, written) = run_campaign(&c).unwrap();
    let surface = sibling_path(&c.output_path, "memms", "csv");
    assert!(written.contains(&surface));
    let table = ParsedTable::from_csv(&fs::read_to_string(surface).unwrap()).unwrap();
    assert_eq!(table.rows.len(), 2500);

    let c = config(dir.path(), Figure::Fig3b, None, 100, Format::Csv).with_svg(true);
    let (_, written) = run_campaign(&c).unwrap();
    assert!(written.contains(&sibling_path(&c.output_path, "line", "csv")));
    let svg = fs::read_to_string(c.output_path.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<circle").count() == 100);
}

#[test]
fn memms_grid_rows_saturate_the_tangle_bound() {
    let d = memms_grid(50).unwrap();
    assert_eq!(d.rows.len(), 2500);
    for s in d.column_f64("slack").unwrap() {
        assert!(s.abs() <= 1e-10, "{s}");
    }
}

#[test]
fn lptps_line_rows_lie_on_the_line() {
    let d = lptps_line(11).unwrap();
    assert_eq!(d.rows.len(), 11);
    let dm = d.column_f64("delta_mu").unwrap();
    let t = d.column_f64("tangle").unwrap();
    for (dm, t) in dm.iter().zip(&t) {
        assert!((t + 2.0 * dm - 2.0 * mixent::criteria::DELTA_MU_MAX).abs() <= 1e-9);
    }
}

fn write_matrix(dir: &Path, name: &str, m: &Matrix4) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, MatrixJson::from_matrix(m).to_json_string()).unwrap();
    path
}

fn analyze_file(path: &Path) -> (i32, String, String) {
    let out = Command::new(BIN).arg("analyze").arg(path).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn field<'a>(csv: &'a str, name: &str) -> &'a str {
    let table = ParsedTable::from_csv(csv).unwrap();
    let i = table.columns.iter().position(|c| c == name).unwrap();
    csv.lines().nth(2).unwrap().split(',').nth(i).unwrap()
}

#[test]
fn analyze_command_reports_state_properties() {
    let dir = tempfile::tempdir().unwrap();

    let (code, out, _) = analyze_file(&write_matrix(dir.path(), "bell.json", bell_state().matrix()));
    assert_eq!(code, 0);
    assert_eq!(field(&out, "bundle"), "q4");
    assert_eq!(field(&out, "ppt"), "true");

    let (code, out, _) = analyze_file(&write_matrix(dir.path(), "mixed.json", &Matrix4::identity().scale(0.25)));
    assert_eq!(code, 0);
    assert_eq!(field(&out, "bundle"), "separable");
    for f in ["ppt", "entropic_vn", "entropic_lin", "majorization"] {
        assert_eq!(field(&out, f), "false");
    }
    for f in ["sV1", "sV2", "sV"] {
        assert!((field(&out, f).parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    }

    let (code, out, _) = analyze_file(&write_matrix(dir.path(), "werner.json", werner_state(0.8).unwrap().matrix()));
    assert_eq!(code, 0);
    assert!((field(&out, "concurrence").parse::<f64>().unwrap() - 0.7).abs() < 1e-12);
    assert!((field(&out, "tangle").parse::<f64>().unwrap() - 0.49).abs() < 1e-12);
}

#[test]
fn analyze_names_the_failed_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let mut m = Matrix4::identity().scale(0.25);
    m[(0, 1)] = mixent::C64::new(0.1, 0.0);
    let cases = [
        ("herm.json", m, "hermiticity"),
        ("trace.json", Matrix4::identity().scale(1.01 / 4.0), "trace"),
        ("psd.json", Matrix4::from_real_diagonal([0.5, 0.6, -0.1, 0.0]), "positivity"),
    ];
    for (name, m, invariant) in cases {
        let (code, _, err) = analyze_file(&write_matrix(dir.path(), name, &m));
        assert_eq!(code, 2, "{name}");
        assert!(err.contains(invariant), "{name}: {err}");
    }
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "not json").unwrap();
    assert_eq!(analyze_file(&garbage).0, 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| Command::new(BIN).args(args).output().unwrap().status.code().unwrap();

    assert_eq!(run(&["fuzz", "--n", "0"]), 0);
    assert_eq!(run(&["fuzz", "--n", "500", "--seed", "9"]), 0);
    assert_eq!(run(&["frobnicate"]), 1);
    assert_eq!(run(&["campaign", "--figure", "fig1a"]), 1);
    assert_eq!(run(&["campaign", "--n", "0", "--out", "x.csv"]), 1);
    assert_eq!(run(&["campaign", "--figure", "fig1a", "--family", "lptps", "--out", "x.csv"]), 1);
    assert_eq!(run(&["memms-grid", "--n", "1"]), 1);
    assert_eq!(run(&["campaign", "--n", "3", "--out", "/nonexistent/dir/x.csv"]), 1);
    assert_eq!(run(&["--help"]), 0);

    let bad = write_matrix(dir.path(), "bad.json", &Matrix4::identity().scale(1.01 / 4.0));
    let good = write_matrix(dir.path(), "good.json", bell_state().matrix());
    let report = dir.path().join("report.json");
    let out = Command::new(BIN)
        .args(["fuzz", "--n", "10", "--inject"])
        .arg(&bad)
        .arg("--inject")
        .arg(&good)
        .arg("--out")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(doc["checked"], 11);
    assert_eq!(doc["rejected"].as_array().unwrap().len(), 1);
    assert!(doc["rejected"][0]["reason"].as_str().unwrap().starts_with("trace"));
}

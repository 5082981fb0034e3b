use std::fs;
use std::process::{Command, Output};

fn orbitlaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitlaw")).args(args).env_remove("ORBITLAW_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().skip(2).collect()
}

#[test]
fn count_growth_rows() {
    let out = stdout(&orbitlaw(&["count-growth", "--phi", "i:a+b", "--L-grid", "2,3"]));
    assert!(out.starts_with("# orbitlaw schema=count-growth v1 config={"));
    assert_eq!(out.lines().nth(1), Some("L,count,normalized"));
    let rows = data_rows(&out);
    assert_eq!(rows[0], "2,2,0.5");
    assert!(rows[1].starts_with("3,10,1.111"));
}

#[test]
fn enumerate_csv_and_json_agree() {
    let csv = stdout(&orbitlaw(&["enumerate", "--phi", "flat", "--L", "12", "--partitions", "3"]));
    let json = stdout(&orbitlaw(&["enumerate", "--phi", "flat", "--L", "12", "--emit", "json"]));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let items = doc["data"].as_array().unwrap();
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), items.len());
    assert_eq!(doc["config"]["cutoff"], "12");
    for (row, item) in rows.iter().zip(items) {
        assert!(row.starts_with(&format!("\"{}\"", item["multicurve"].as_str().unwrap())));
        assert!(item["total"].as_f64().unwrap() <= 12.0 + 1e-12);
    }
}

#[test]
fn enumerate_is_independent_of_partitions() {
    let a = stdout(&orbitlaw(&["enumerate", "--L", "40", "--partitions", "1"]));
    let b = stdout(&orbitlaw(&["enumerate", "--L", "40", "--partitions", "7"]));
    assert_eq!(a, b);
}

#[test]
fn volume_and_density() {
    let v = stdout(&orbitlaw(&["volume", "--phi", "i:a+b", "--L", "10"]));
    assert_eq!(data_rows(&v), ["10,110,1.1"]);
    let d = stdout(&orbitlaw(&["density", "--pants", "1,2", "--at", "0.5,0.5", "--at", "0.25,0.75"]));
    let rows = data_rows(&d);
    let first: f64 = rows[0].rsplit(',').next().unwrap().parse().unwrap();
    assert!((first - 1.0606601717798212).abs() < 1e-12);
    assert_eq!(rows.len(), 2);
}

#[test]
fn ratio_law_table() {
    let out =
        stdout(&orbitlaw(&["ratio-law", "--phi", "i:a+b", "--psi", "flat", "--resolution", "2048", "--points", "50"]));
    for row in data_rows(&out) {
        let (t, f) = row.split_once(',').unwrap();
        let (t, f): (f64, f64) = (t.parse().unwrap(), f.parse().unwrap());
        let exact =
            if t < std::f64::consts::FRAC_1_SQRT_2 { 0.0 } else { (2.0 * t * t - 1.0).max(0.0).sqrt().min(1.0) };
        assert!((f - exact).abs() < 1e-3, "{t}: {f} vs {exact}");
    }
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        &["enumerate"][..],
        &["enumerate", "--L", "-3"],
        &["count-growth", "--L-grid", "2,x"],
        &["volume", "--phi", "i:", "--L", "5"],
        &["density", "--pants", "0,1", "--at", "1"],
        &["density", "--pants", "1,1", "--at", "0.3"],
        &["enumerate", "--L", "5", "--emit", "xml"],
        &["no-such-command"],
    ] {
        let o = orbitlaw(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn out_dir_from_environment_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_orbitlaw"))
        .args(["length-dist", "--L-grid", "20,40", "--bins", "5"])
        .env("ORBITLAW_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("length_dist.json")).unwrap()).unwrap();
    assert_eq!(doc["schema"], "length-dist");
    assert_eq!(doc["data"].as_array().unwrap().len(), 2);

    let ratio_dir = dir.path().join("ratio");
    stdout(&orbitlaw(&["ratio-dist", "--L-grid", "30", "--resolution", "256", "--out", ratio_dir.to_str().unwrap()]));
    for name in [
        "fraction_ecdf.csv",
        "radius_ecdf.csv",
        "simplex_hist.csv",
        "ratio/ratio_law.csv",
        "ratio/gap_ecdf.csv",
        "ratio/ratio1_ecdf.csv",
    ] {
        let csv = dir.path().join(name);
        let header = fs::read_to_string(&csv).unwrap();
        assert!(header.starts_with("# orbitlaw schema="), "{name}");
        let svg = dir.path().join(format!("{name}.svg"));
        stdout(&orbitlaw(&["plot", "--input", csv.to_str().unwrap(), "--output", svg.to_str().unwrap()]));
        let svg = fs::read_to_string(svg).unwrap();
        assert!(svg.starts_with("<?xml") && svg.contains("version=\"1.1\""), "{name}");
    }
}

#[test]
fn plot_refuses_other_files() {
    let dir = tempfile::tempdir().unwrap();
    let plain = dir.path().join("plain.csv");
    fs::write(&plain, "t,cdf\n0,0\n1,1\n").unwrap();
    assert_eq!(orbitlaw(&["plot", "--input", plain.to_str().unwrap()]).status.code(), Some(2));
    let vol = dir.path().join("volume.csv");
    fs::write(&vol, stdout(&orbitlaw(&["volume", "--phi", "flat", "--L", "20"]))).unwrap();
    assert_eq!(orbitlaw(&["plot", "--input", vol.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_is_listed() {
    let help = stdout(&orbitlaw(&["--help"]));
    for cmd in
        ["enumerate", "count-growth", "length-dist", "ratio-dist", "ratio-law", "volume", "density", "verify", "plot"]
    {
        assert!(help.contains(cmd), "{cmd}");
    }
}

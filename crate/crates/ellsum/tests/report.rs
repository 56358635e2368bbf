use ellsum::parallel::Mode;
use ellsum::report::{read_json, render, run, Format, RunConfig};

fn config(mode: Mode) -> RunConfig {
    RunConfig {
        id_filter: Some("T2.*".into()),
        mode,
        ..RunConfig::default()
    }
}

fn strip_timestamp(s: &str) -> String {
    s.lines()
        .filter(|l| !l.contains("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn json_is_reproducible() {
    let a = render(&run(&config(Mode::Parallel)).unwrap(), Format::Json).unwrap();
    let b = render(&run(&config(Mode::Parallel)).unwrap(), Format::Json).unwrap();
    let c = render(&run(&config(Mode::Sequential)).unwrap(), Format::Json).unwrap();
    assert_eq!(strip_timestamp(&a), strip_timestamp(&b));
    assert_eq!(strip_timestamp(&a), strip_timestamp(&c));
}

#[test]
fn schema_and_round_trip() {
    let rep = run(&config(Mode::Parallel)).unwrap();
    let text = render(&rep, Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["tol", "grid", "timestamp", "version"] {
        assert!(v["run_meta"].get(key).is_some(), "{key}");
    }
    for key in [
        "id",
        "anchor",
        "point",
        "lhs",
        "rhs",
        "abs_err",
        "rel_err",
        "tail_bound",
        "pass",
    ] {
        assert!(v["results"][0].get(key).is_some(), "{key}");
    }
    assert_eq!(read_json(&text).unwrap().summary(), rep.summary());
    let csv = render(&rep, Format::Csv).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("id,reading,status,anchor,point,lhs,rhs,abs_err,rel_err,tail_bound"));
    assert_eq!(csv.lines().count(), rep.results.len() + 1);
}

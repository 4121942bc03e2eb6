use detachable::families::{gen_graph, gen_matroid, FamilySpec};
use detachable::io::*;
use detachable::mask::k_subsets;
use detachable::{Mask, Matroid};

#[test]
fn c_tilde_is_k4() {
    let g = decode_graph6("C~").unwrap();
    assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]);
}

#[test]
fn graph_format_round_trip_k35() {
    let g = gen_graph(&"k3m/m=5".parse::<FamilySpec>().unwrap()).unwrap();
    let text = write_graph(&g);
    let h = parse_graph(&text).unwrap();
    assert_eq!(h.edges(), g.edges());
    assert_eq!(write_graph(&h), text);
    let m = parse_matroid(&text).unwrap();
    assert_eq!(m.table(), Matroid::from_graph(&g).unwrap().table());
}

#[test]
fn bases_format_for_u24() {
    let b: Vec<Mask> = k_subsets(Mask::full(4), 2).collect();
    let m = Matroid::from_bases(4, &b).unwrap();
    let text = write_matroid(&m);
    assert_eq!(text.lines().count(), 7);
    assert!(text.starts_with("bases 4 2\n0 1\n"));
    assert_eq!(parse_matroid(&text).unwrap().table(), m.table());
}

#[test]
fn linear_writer_keeps_the_representation() {
    let m = gen_matroid(&"hinged_triad_paddle/m=3".parse::<FamilySpec>().unwrap()).unwrap();
    let text = write_matroid(&m);
    assert!(text.starts_with("gfp "));
    let back = parse_matroid(&text).unwrap();
    assert_eq!(back.table(), m.table());
    assert_eq!(write_matroid(&back), text);
}

fn record(i: usize, outcome: &str) -> ReportRecord {
    ReportRecord {
        id: format!("r{i}"),
        source: "family".into(),
        spec: "wheel/n=7".into(),
        elements: 14,
        outcome: outcome.into(),
        witness: Some(
            serde_json::json!({"kind": "wheel_whirl", "order": [0, 1, 2], "whirl": false}),
        ),
        timing_ms: 0,
        version: VERSION.into(),
    }
}

#[test]
fn json_reports_round_trip_byte_for_byte() {
    let recs: Vec<ReportRecord> = (0..3).map(|i| record(i, "wheel")).collect();
    let text = write_report(&recs, ReportFormat::Json);
    assert!(text.contains("\"outcome\":\"wheel\""));
    let back = read_report_json(&text).unwrap();
    assert_eq!(back, recs);
    assert_eq!(write_report(&back, ReportFormat::Json), text);
    assert_eq!(write_report(&[], ReportFormat::Json), "[]\n");
}

#[test]
fn csv_has_one_row_per_record() {
    let recs: Vec<ReportRecord> = (0..300).map(|i| record(i, "detachable_pair")).collect();
    let text = write_report(&recs, ReportFormat::Csv);
    assert_eq!(text.lines().count(), 301);
    assert!(text.ends_with('\n'));
    assert_eq!(
        text.lines().next().unwrap(),
        "id,source,spec,elements,outcome,witness,timing_ms,version"
    );
}

#[test]
fn digests_are_stable() {
    assert_eq!(digest(""), "cbf29ce484222325");
    assert_ne!(digest("C~"), digest("C^"));
}

use flatdeg::bounds::{render_tables, resolve_bounds};
use flatdeg::Metric;

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn compare(metric: Metric, file: &str) {
    let ours = render_tables(12, 6, metric).unwrap().to_csv();
    let theirs = golden(file);
    let mismatches: Vec<String> = ours
        .lines()
        .zip(theirs.lines())
        .filter(|(a, b)| a != b)
        .map(|(a, b)| format!("computed {a:?}\nexpected {b:?}"))
        .collect();
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
    assert_eq!(ours.lines().count(), theirs.lines().count());
}

#[test]
fn degree_table_matches_reference() {
    compare(Metric::Degree, "degree_12x6.csv");
}

#[test]
fn nonlinearity_table_matches_reference() {
    compare(Metric::Nonlinearity, "nonlinearity_12x6.csv");
}

#[test]
fn larger_tables_render() {
    for metric in [Metric::Degree, Metric::Nonlinearity] {
        let t = render_tables(24, 16, metric).unwrap();
        assert_eq!(t.rows.len(), 16);
        assert!(t.to_text().lines().count() == 17);
    }
    assert!(resolve_bounds(24, 24, Metric::Degree).unwrap().lo == 24);
}

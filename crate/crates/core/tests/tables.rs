use std::sync::Arc;

use burnside::burnside::{BurnsideRing, ExtendedMarkTable};
use burnside::functor_spec::{builtin_mu, Functor, FunctorSpec};
use burnside::permgroup::symmetric_group;
use burnside::subgroups::SubgroupClassification;

fn ring(n: usize, spec: FunctorSpec) -> BurnsideRing {
    let cls = Arc::new(SubgroupClassification::new(&symmetric_group(n).unwrap()).unwrap());
    BurnsideRing::new(Functor::new(spec, cls).unwrap()).unwrap()
}

fn mu_ring(n: usize) -> BurnsideRing {
    ring(n, builtin_mu(&format!("S{n}")).unwrap())
}

fn fixture(name: &str) -> ExtendedMarkTable {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    ExtendedMarkTable::from_csv(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn mismatches(a: &ExtendedMarkTable, b: &ExtendedMarkTable) -> Vec<(String, String)> {
    assert_eq!(a.row_labels, b.row_labels);
    assert_eq!(a.column_labels, b.column_labels);
    let mut out = Vec::new();
    for r in 0..a.row_labels.len() {
        for c in 0..a.column_labels.len() {
            if a.values[r][c] != b.values[r][c] {
                out.push((a.row_labels[r].clone(), a.column_labels[c].clone()));
            }
        }
        if a.euler[r] != b.euler[r] {
            out.push((a.row_labels[r].clone(), "M".into()));
        }
    }
    out
}

fn cells(list: &[(&str, &str)]) -> Vec<(String, String)> {
    list.iter().map(|(r, c)| (r.to_string(), c.to_string())).collect()
}

// The Schur multiplier of S4 restricts nontrivially to both Klein groups and
// to A4 (checked against the binary octahedral cover), while the printed
// table keeps +1 in those cells.
#[test]
fn s4_table_differs_where_printed_restrictions_are_trivial() {
    let t = mu_ring(4).extended_table_of_marks();
    assert_eq!(
        mismatches(&t, &fixture("table1_s4.csv")),
        cells(&[
            ("D8'", "K1'"),
            ("D8'", "K2'"),
            ("S4'", "K1'"),
            ("S4'", "K2'"),
            ("S4'", "A4'")
        ])
    );
}

// The printed S4 table is exactly the table of the functor whose restrictions
// to K1, K2 and A4 are trivial; that functor passes validation.
#[test]
fn printed_s4_table_is_a_consistent_variant() {
    let path = format!("{}/data/printed_table_s4.json", env!("CARGO_MANIFEST_DIR"));
    let spec = FunctorSpec::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    let t = ring(4, spec).extended_table_of_marks();
    assert_eq!(t, fixture("table1_s4.csv"));
}

// Besides the restriction pattern above, the printed S5 table gives 3 for
// the untwisted A4 count (A4 has 4 classes) and +1 at S5' x S4' although
// [S5:S4] is odd.
#[test]
fn s5_table_mismatch_set() {
    let t = mu_ring(5).extended_table_of_marks();
    assert_eq!(
        mismatches(&t, &fixture("table2_s5.csv")),
        cells(&[
            ("A4", "M"),
            ("D8'", "K1'"),
            ("D8'", "K2'"),
            ("S4'", "K1'"),
            ("S4'", "K2'"),
            ("S4'", "A4'"),
            ("S5'", "K1'"),
            ("S5'", "K2'"),
            ("S5'", "A4'"),
            ("S5'", "S4'"),
            ("S5'", "A5'"),
        ])
    );
}

// Without frills the ring is the classical Burnside ring, whose table is the
// unprimed block of the printed S4 table.
#[test]
fn classical_block_matches_printed_table() {
    let cls = Arc::new(SubgroupClassification::new(&symmetric_group(4).unwrap()).unwrap());
    let t = BurnsideRing::new(Functor::trivial(cls)).unwrap().extended_table_of_marks();
    let printed = fixture("table1_s4.csv");
    assert_eq!(t.row_labels, printed.row_labels[..11]);
    assert_eq!(t.column_labels, printed.column_labels[..11]);
    for r in 0..11 {
        assert_eq!(t.values[r], printed.values[r][..11]);
        assert_eq!(t.euler[r], printed.euler[r]);
    }
}

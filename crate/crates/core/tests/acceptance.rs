//! One line per acceptance criterion.
//!
//! Three criteria fail against the printed fixtures for reasons analysed in the
//! README. The harness prints FAIL for them, and exits nonzero only when some
//! outcome differs from the recorded mismatch sets below.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use burnside::burnside::{BurnsideRing, ExtendedMarkTable, RingElement};
use burnside::cellsearch::{
    parabolic_families, run_cell_search, solve_effective, table3_text, table4_text, CharacterTarget, ParabolicData,
    SearchConstraints,
};
use burnside::characters::{green_multiplicities, GreenFunctionData, F4A3_GREEN};
use burnside::decorated_sets::{decompose, product_concrete, DecoratedGSet};
use burnside::functor_spec::covers::{binary_octahedral, dihedral, Cover};
use burnside::functor_spec::regular_class_count;
use burnside::permgroup::symmetric_group;
use burnside::subgroups::SubgroupClassification;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{mu_ring, naive_solutions, s4_character};

const S4_KNOWN_CELLS: &[&str] = &["(D8',K1')", "(D8',K2')", "(S4',K1')", "(S4',K2')", "(S4',A4')"];
const S5_KNOWN_CELLS: &[&str] = &[
    "(A4,M)",
    "(D8',K1')",
    "(D8',K2')",
    "(S4',K1')",
    "(S4',K2')",
    "(S4',A4')",
    "(S5',K1')",
    "(S5',K2')",
    "(S5',A4')",
    "(S5',S4')",
    "(S5',A5')",
];
const W1_COMPUTED: &str = "W(1) | 25 14 5 1 0 | (8+γ)<S4> + (12-γ)<S3> + (4-γ)<D8> + <C2> + γ<K1>, max(α,β) ≤ γ ≤ 4";

struct Outcome {
    id: &'static str,
    title: &'static str,
    passed: bool,
    /// Whether the outcome is the recorded one.
    expected: bool,
    detail: String,
    elapsed: Duration,
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn table_mismatches(got: &ExtendedMarkTable, want: &ExtendedMarkTable) -> Vec<String> {
    if got.row_labels != want.row_labels || got.column_labels != want.column_labels {
        return vec!["labels".into()];
    }
    let mut out = Vec::new();
    for (r, row) in got.row_labels.iter().enumerate() {
        for (c, col) in got.column_labels.iter().enumerate() {
            if got.values[r][c] != want.values[r][c] {
                out.push(format!("({row},{col})"));
            }
        }
        if got.euler[r] != want.euler[r] {
            out.push(format!("({row},M)"));
        }
    }
    out
}

fn table_criterion(n: usize, fixture_name: &str, limit: Duration, known: &[&str]) -> (bool, bool, String) {
    let start = Instant::now();
    let table = mu_ring(n).extended_table_of_marks();
    let took = start.elapsed();
    let want = ExtendedMarkTable::from_csv(&fixture(fixture_name)).unwrap();
    let cells = table_mismatches(&table, &want);
    let passed = cells.is_empty() && took < limit;
    let detail = if cells.is_empty() {
        format!(
            "{}x{} plus M column identical",
            table.row_labels.len(),
            table.column_labels.len()
        )
    } else {
        format!("{} cells differ: {}", cells.len(), cells.join(" "))
    };
    (passed, cells == known && took < limit, detail)
}

fn basis(ring: &BurnsideRing) -> Vec<RingElement> {
    (0..ring.rank()).map(RingElement::basis).collect()
}

fn ring_axioms() -> (bool, String) {
    let ring = mu_ring(4);
    let b = basis(&ring);
    let mut bad = 0;
    for x in &b {
        if ring.dual(&ring.dual(x)) != *x || ring.multiply(&ring.one(), x) != *x {
            bad += 1;
        }
        for y in &b {
            let xy = ring.multiply(x, y);
            if xy != ring.multiply(y, x) || ring.dual(&xy) != ring.multiply(&ring.dual(x), &ring.dual(y)) {
                bad += 1;
            }
            for z in &b {
                if ring.multiply(&xy, z) != ring.multiply(x, &ring.multiply(y, z)) {
                    bad += 1;
                }
            }
        }
    }
    let n = b.len();
    (
        bad == 0,
        format!(
            "{} triples, {} pairs, {n} duals; {bad} violations",
            n * n * n,
            n * (n + 1) / 2
        ),
    )
}

fn marks_homomorphism() -> (bool, String) {
    let ring = mu_ring(4);
    let cols = ring.columns().len();
    let mut bad = 0;
    let mut pairs = 0;
    for i in 0..ring.rank() {
        for j in i..ring.rank() {
            pairs += 1;
            let (x, y) = (RingElement::basis(i), RingElement::basis(j));
            let (mx, my, mxy) = (
                ring.mark_vector(&x),
                ring.mark_vector(&y),
                ring.mark_vector(&ring.multiply(&x, &y)),
            );
            bad += (0..cols).filter(|&c| mxy[c] != mx[c] * my[c]).count();
        }
    }
    let det = ring.determinant().unwrap();
    let nonsingular = det != 0.into();
    (
        bad == 0 && nonsingular && cols == 16 && pairs == 136,
        format!("{cols} marks x {pairs} pairs, determinant {det}"),
    )
}

fn concrete_oracle() -> (bool, String) {
    let check = |ring: &BurnsideRing, i: usize, j: usize| {
        let x = DecoratedGSet::from_basis(ring, ring.basis()[i]);
        let y = DecoratedGSet::from_basis(ring, ring.basis()[j]);
        decompose(ring, &product_concrete(ring, &x, &y)).unwrap() == *ring.basis_product_of(i, j)
    };
    let s4 = mu_ring(4);
    let mut s4_pairs = 0;
    let mut bad = 0;
    for i in 0..s4.rank() {
        for j in i..s4.rank() {
            s4_pairs += 1;
            bad += usize::from(!check(&s4, i, j));
        }
    }
    let s5 = mu_ring(5);
    let mut rng = ChaCha8Rng::seed_from_u64(20240229);
    let s5_pairs = 60;
    for _ in 0..s5_pairs {
        bad += usize::from(!check(&s5, rng.gen_range(0..s5.rank()), rng.gen_range(0..s5.rank())));
    }
    (
        bad == 0,
        format!("{s4_pairs} S4 pairs, {s5_pairs} seeded S5 pairs, {bad} disagreements"),
    )
}

fn green_ingestion() -> (bool, String) {
    let m = green_multiplicities(&GreenFunctionData::parse(F4A3_GREEN).unwrap()).unwrap();
    (m == [42, 19, 10, 1, 0], format!("{m:?}"))
}

fn twenty_solutions() -> (bool, String) {
    let ring = mu_ring(4);
    let sols = solve_effective(&ring, &CharacterTarget::new(vec![42, 19, 10, 1, 0]), None).unwrap();
    let terms = |x: &RingElement| {
        let mut t: Vec<(String, i64)> = x.terms().map(|(i, c)| (ring.label(i).to_string(), c)).collect();
        t.sort();
        t
    };
    let fast: BTreeSet<_> = sols.iter().map(terms).collect();
    let naive = naive_solutions(&ring, s4_character([42, 19, 10, 1, 0]));
    let y0 = ring.parse("15*S4 + 17*S3 + 9*D8 + C2").unwrap();
    let x0 = ring.parse("13*S4 + 19*S3 + 9*D8 + C4").unwrap();
    let step = ring.parse("S4 - S3 - D8 + K1").unwrap();
    let families: BTreeSet<_> = (0..=9)
        .flat_map(|e| [terms(&y0.add(&step.scale(e))), terms(&x0.add(&step.scale(e)))])
        .collect();
    let passed = sols.len() == 20 && fast == naive && fast == families;
    (
        passed,
        format!(
            "{} solutions, box enumeration finds {}, Y and X families {}",
            sols.len(),
            naive.len(),
            fast == families
        ),
    )
}

fn cell_pipeline() -> (bool, String) {
    let ring = mu_ring(4);
    let r = run_cell_search(
        &ring,
        &CharacterTarget::new(vec![42, 19, 10, 1, 0]),
        &SearchConstraints::f4a3(),
    )
    .unwrap();
    let text = table3_text(&ring, &r);
    let same = text == fixture("table3_printed.txt");
    let twins_ok = r.twins.len() == 4
        && r.twins
            .iter()
            .all(|(a, b)| ring.is_undecorated(&a.element) || ring.is_undecorated(&b.element));
    let passed = same && r.candidates.len() == 14 && r.survivors.len() == 8 && twins_ok;
    (
        passed,
        format!(
            "universe {}, {} candidates, {} survivors, {} twins, printed rows identical: {same}",
            r.universe,
            r.candidates.len(),
            r.survivors.len(),
            r.twins.len()
        ),
    )
}

/// Lines of the computed and printed parabolic tables that differ.
fn parabolic_diff() -> Vec<(String, String)> {
    let ring = mu_ring(4);
    let blocks = parabolic_families(&ring, &ParabolicData::f4a3()).unwrap();
    let got = table4_text(&ring, &blocks);
    let want = fixture("table4_printed.txt");
    let (g, w): (Vec<&str>, Vec<&str>) = (got.lines().collect(), want.lines().collect());
    if g.len() != w.len() {
        return vec![(format!("{} lines", g.len()), format!("{} lines", w.len()))];
    }
    g.iter()
        .zip(&w)
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn strip_upper_bound(line: &str) -> &str {
    line.rsplit_once(" ≤ ").map_or(line, |(head, _)| head)
}

fn euler_classification() -> (bool, String) {
    let ring = mu_ring(4);
    let found: Vec<&str> = (0..ring.rank())
        .filter(|&i| {
            let m = RingElement::basis(i);
            ring.euler(&ring.multiply(&m, &m)).unwrap() == 5
        })
        .map(|i| ring.label(i))
        .collect();
    (
        found == ["S3", "S4", "S4'"],
        format!("M(m m) = 5 exactly for {}", found.join(", ")),
    )
}

fn cocycle_counts() -> (bool, String) {
    let g = symmetric_group(4).unwrap();
    let cls = Arc::new(SubgroupClassification::new(&g).unwrap());
    let count = |label: &str, cover| {
        let rep = cls.class(cls.class_by_label(label).unwrap()).rep();
        let cov = Cover::onto(cover, &g, rep).unwrap();
        regular_class_count(&g, rep, &cov.cocycle(&g, rep).unwrap()).unwrap()
    };
    let (d8, s4) = (
        count("D8", dihedral(8).unwrap()),
        count("S4", binary_octahedral().unwrap()),
    );
    (
        d8 == 2 && s4 == 3,
        format!("D16 over D8 gives {d8}, binary octahedral over S4 gives {s4}"),
    )
}

/// Id, title, check and time limit.
type Plain = (&'static str, &'static str, fn() -> (bool, String), Duration);

fn timed(f: impl FnOnce() -> (bool, String)) -> (bool, String, Duration) {
    let start = Instant::now();
    let (p, d) = f();
    (p, d, start.elapsed())
}

fn main() -> ExitCode {
    let mut out: Vec<Outcome> = Vec::new();
    let mut push = |id, title, passed: bool, expected: bool, detail: String, elapsed| {
        out.push(Outcome {
            id,
            title,
            passed,
            expected,
            detail,
            elapsed,
        });
    };

    let start = Instant::now();
    let (p, e, d) = table_criterion(4, "table1_s4.csv", Duration::from_secs(1), S4_KNOWN_CELLS);
    push("1", "S4 extended table of marks", p, e, d, start.elapsed());

    let start = Instant::now();
    let (p, e, d) = table_criterion(5, "table2_s5.csv", Duration::from_secs(30), S5_KNOWN_CELLS);
    push("2", "S5 extended table of marks", p, e, d, start.elapsed());

    let plain: [Plain; 5] = [
        (
            "3",
            "ring axioms over all S4 basis triples",
            ring_axioms,
            Duration::from_secs(60),
        ),
        (
            "4",
            "marks are ring homomorphisms, mark matrix nonsingular",
            marks_homomorphism,
            Duration::MAX,
        ),
        (
            "5",
            "double coset formula against explicit products",
            concrete_oracle,
            Duration::MAX,
        ),
        ("6", "Green function ingestion", green_ingestion, Duration::MAX),
        (
            "7",
            "twenty effective solutions",
            twenty_solutions,
            Duration::from_secs(10),
        ),
    ];
    for (id, title, f, limit) in plain {
        let (p, d, t) = timed(f);
        let p = p && t < limit;
        push(id, title, p, p, d, t);
    }

    let (p, d, t) = timed(cell_pipeline);
    let p = p && t < Duration::from_secs(60);
    push("8", "cell pipeline rows, survivors and twins", p, p, d, t);

    let start = Instant::now();
    let diff = parabolic_diff();
    let t = start.elapsed();
    let others_ok = diff
        .iter()
        .all(|(g, w)| g.starts_with("W(1) |") && strip_upper_bound(g) == strip_upper_bound(w));
    let detail = format!(
        "{} of 12 rows differ outside the W(1) upper bound",
        if others_ok { 0 } else { diff.len() }
    );
    push(
        "9a",
        "parabolic blocks: solutions, families, lower bounds",
        others_ok,
        others_ok,
        detail,
        t,
    );
    let w1_ok = diff.is_empty();
    let (detail, expected) = match diff.first() {
        None => ("W(1) row identical".to_string(), false),
        Some((g, w)) => (
            format!(
                "computed `{}` printed `{}`",
                g.rsplit_once(", ").unwrap().1,
                w.rsplit_once(", ").unwrap().1
            ),
            diff.len() == 1 && g == W1_COMPUTED,
        ),
    };
    push("9b", "parabolic blocks: W(1) upper bound", w1_ok, expected, detail, t);

    let (p, d, t) = timed(euler_classification);
    push("10", "single orbits with M(m m) = 5", p, p, d, t);
    let (p, d, t) = timed(cocycle_counts);
    push("11", "twisted class counts from double covers", p, p, d, t);

    let mut unexpected = 0;
    for o in &out {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let note = if o.expected { "" } else { " [unexpected]" };
        println!(
            "{status} criterion {:<3} {} ({:.2}s): {}{note}",
            o.id,
            o.title,
            o.elapsed.as_secs_f64(),
            o.detail
        );
        unexpected += usize::from(!o.expected);
    }
    let failed = out.iter().filter(|o| !o.passed).count();
    println!(
        "{} passed, {failed} failed, {unexpected} unexpected",
        out.len() - failed
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

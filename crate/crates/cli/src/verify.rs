//! Consistency checks behind `burnside verify`.

use std::path::Path;
use std::sync::Arc;

use burnside::burnside::{BurnsideRing, ExtendedMarkTable, RingElement};
use burnside::decorated_sets::{decompose, product_concrete, DecoratedGSet};
use burnside::functor_spec::{Functor, FunctorSpec};
use burnside::subgroups::SubgroupClassification;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::{Failure, Format};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v: Vec<_> = self
                    .checks
                    .iter()
                    .map(|c| json!({"check": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect();
                crate::pretty(&serde_json::Value::Array(v))
            }
            _ => self
                .checks
                .iter()
                .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect(),
        }
    }
}

fn check(name: &'static str, failures: Vec<String>, total: usize, unit: &str) -> Check {
    let detail = match failures.first() {
        None => format!("{total} {unit}"),
        Some(first) => format!("{} of {total} {unit} fail, first {first}", failures.len()),
    };
    Check {
        name,
        passed: failures.is_empty(),
        detail,
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

pub fn run(
    spec: &FunctorSpec,
    cls: Arc<SubgroupClassification>,
    samples: usize,
    seed: u64,
    expect: Option<&Path>,
) -> Result<Report, Failure> {
    let functor = Functor::new(spec.clone(), cls)?;
    let violations = functor.validate();
    let mut checks = vec![Check {
        name: "functor validation",
        passed: violations.is_empty(),
        detail: if violations.is_empty() {
            "transitivity, identity and equivariance hold".into()
        } else {
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        },
    }];
    if !violations.is_empty() {
        return Ok(Report { checks });
    }
    let ring = BurnsideRing::new(functor)?;
    let n = ring.rank();
    let b = RingElement::basis;
    let name = |x: &RingElement| ring.format(x);

    let bad: Vec<String> = pairs(n)
        .into_iter()
        .filter(|&(i, j)| i < j && ring.basis_product_of(i, j) != ring.basis_product_of(j, i))
        .map(|(i, j)| format!("{} * {}", ring.label(i), ring.label(j)))
        .collect();
    checks.push(check("commutativity", bad, n * (n - 1) / 2, "pairs"));

    let bad: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let ring = &ring;
            pairs(n).into_iter().filter_map(move |(j, k)| {
                let l = ring.multiply(ring.basis_product_of(i, j), &b(k));
                let r = ring.multiply(&b(i), ring.basis_product_of(j, k));
                (l != r).then(|| format!("({} * {}) * {}", ring.label(i), ring.label(j), ring.label(k)))
            })
        })
        .collect();
    checks.push(check("associativity", bad, n * n * n, "triples"));

    let one = ring.one();
    let bad: Vec<String> = (0..n)
        .filter(|&i| ring.multiply(&one, &b(i)) != b(i))
        .map(|i| ring.label(i).to_string())
        .collect();
    checks.push(check("unit", bad, n, "basis elements"));

    let mut bad: Vec<String> = (0..n)
        .filter(|&i| ring.dual(&ring.dual(&b(i))) != b(i))
        .map(|i| format!("dual twice of {}", ring.label(i)))
        .collect();
    bad.extend(pairs(n).into_iter().filter_map(|(i, j)| {
        let l = ring.dual(ring.basis_product_of(i, j));
        let r = ring.multiply(&ring.dual(&b(i)), &ring.dual(&b(j)));
        (l != r).then(|| format!("dual of {} * {}", ring.label(i), ring.label(j)))
    }));
    checks.push(check("dual is a ring involution", bad, n + n * n, "identities"));

    let bad: Vec<String> = pairs(n)
        .into_iter()
        .filter_map(|(i, j)| {
            let p = ring.mark_vector(ring.basis_product_of(i, j));
            let (mi, mj) = (ring.mark_vector(&b(i)), ring.mark_vector(&b(j)));
            let c = (0..p.len()).find(|&c| p[c] != mi[c] * mj[c])?;
            Some(format!(
                "{} * {} at column {}",
                ring.label(i),
                ring.label(j),
                ring.column_labels()[c]
            ))
        })
        .collect();
    checks.push(check("marks are multiplicative", bad, n * n, "pairs"));

    let det = ring.determinant()?;
    checks.push(Check {
        name: "mark matrix nonsingular",
        passed: det != 0.into(),
        detail: format!("determinant {det}"),
    });

    let selected: Vec<(usize, usize)> = if ring.group().order() <= 24 {
        pairs(n).into_iter().filter(|&(i, j)| i <= j).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    };
    let sets: Vec<DecoratedGSet> = ring
        .basis()
        .iter()
        .map(|&e| DecoratedGSet::from_basis(&ring, e))
        .collect();
    let outcomes: Vec<Result<Option<String>, burnside::Error>> = selected
        .par_iter()
        .map(|&(i, j)| {
            let got = decompose(&ring, &product_concrete(&ring, &sets[i], &sets[j]))?;
            let want = ring.basis_product_of(i, j);
            Ok((&got != want).then(|| {
                format!(
                    "{} * {}: concrete {} vs formula {}",
                    ring.label(i),
                    ring.label(j),
                    name(&got),
                    name(want)
                )
            }))
        })
        .collect();
    let mut bad = Vec::new();
    for o in outcomes {
        if let Some(msg) = o? {
            bad.push(msg);
        }
    }
    checks.push(check("concrete product oracle", bad, selected.len(), "pairs"));

    if let Some(path) = expect {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let want = ExtendedMarkTable::from_csv(&text)?;
        checks.push(compare_tables(&ring.extended_table_of_marks(), &want));
    }
    Ok(Report { checks })
}

fn compare_tables(got: &ExtendedMarkTable, want: &ExtendedMarkTable) -> Check {
    let name = "table matches expected";
    if got.row_labels != want.row_labels || got.column_labels != want.column_labels {
        return Check {
            name,
            passed: false,
            detail: "row or column labels differ".into(),
        };
    }
    let mut cells = Vec::new();
    for (r, label) in got.row_labels.iter().enumerate() {
        for (c, col) in got.column_labels.iter().enumerate() {
            if got.values[r][c] != want.values[r][c] {
                cells.push(format!("({label},{col}) {} vs {}", got.values[r][c], want.values[r][c]));
            }
        }
        if got.euler[r] != want.euler[r] {
            let show = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
            cells.push(format!("({label},M) {} vs {}", show(got.euler[r]), show(want.euler[r])));
        }
    }
    let total = got.row_labels.len() * (got.column_labels.len() + 1);
    if cells.is_empty() {
        Check {
            name,
            passed: true,
            detail: format!("{total} cells"),
        }
    } else {
        Check {
            name,
            passed: false,
            detail: format!("{} of {total} cells differ: {}", cells.len(), cells.join(", ")),
        }
    }
}

//! Independent oracles shared by the integration tests.

use std::collections::BTreeSet;
use std::sync::Arc;

use burnside::burnside::BurnsideRing;
use burnside::functor_spec::{builtin_mu, Functor};
use burnside::permgroup::{symmetric_group, FiniteGroup};
use burnside::subgroups::{Subgroup, SubgroupClassification};

pub fn mu_ring(n: usize) -> BurnsideRing {
    let cls = Arc::new(SubgroupClassification::new(&symmetric_group(n).unwrap()).unwrap());
    BurnsideRing::new(Functor::new(builtin_mu(&format!("S{n}")).unwrap(), cls).unwrap()).unwrap()
}

// S4 character table over cycle types e, (12), (12)(34), (123), (1234),
// rows [4], [3,1], [2,2], [2,1,1], [1,1,1,1].
pub const S4_TABLE: [[i64; 5]; 5] = [
    [1, 1, 1, 1, 1],
    [3, 1, -1, 0, -1],
    [2, 0, 2, -1, 0],
    [3, -1, -1, 0, 1],
    [1, -1, 1, 1, -1],
];

fn s4_class_reps(g: &FiniteGroup) -> [usize; 5] {
    let find = |ty: &[usize]| (0..g.order()).find(|&x| g.element(x).cycle_type() == ty).unwrap();
    [g.identity(), find(&[2, 1, 1]), find(&[2, 2]), find(&[3, 1]), find(&[4])]
}

/// Fixed points of `x` on G/H by direct counting.
fn fixed_points(g: &FiniteGroup, h: &Subgroup, x: usize) -> i64 {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for t in 0..g.order() {
        if seen[t] {
            continue;
        }
        for &k in h.elements() {
            seen[g.mul(t, k)] = true;
        }
        if h.contains(g.mul(g.inv(t), g.mul(x, t))) {
            count += 1;
        }
    }
    count
}

/// All nonnegative combinations of undecorated S4 classes with the given permutation
/// character: a box search over every class but S4, whose coefficient is fixed by the degree.
pub fn naive_solutions(ring: &BurnsideRing, target: [i64; 5]) -> BTreeSet<Vec<(String, i64)>> {
    let g = ring.group();
    let cls = ring.functor().classification();
    let reps = s4_class_reps(g);
    let top = cls.class_by_label("S4").unwrap();
    let others: Vec<usize> = (0..cls.len()).filter(|&c| c != top).collect();
    let fix: Vec<[i64; 5]> = others
        .iter()
        .map(|&c| reps.map(|x| fixed_points(g, cls.class(c).rep(), x)))
        .collect();
    let mut out = BTreeSet::new();
    let mut coeffs = vec![0i64; others.len()];
    fn rec(k: usize, fix: &[[i64; 5]], left: [i64; 5], coeffs: &mut Vec<i64>, found: &mut Vec<(Vec<i64>, i64)>) {
        if k == fix.len() {
            // the transitive S4-set has one fixed point everywhere
            if left.iter().all(|&v| v == left[0]) {
                found.push((coeffs.clone(), left[0]));
            }
            return;
        }
        let mut c = 0;
        let mut l = left;
        while l.iter().all(|&v| v >= 0) {
            coeffs[k] = c;
            rec(k + 1, fix, l, coeffs, found);
            c += 1;
            for t in 0..5 {
                l[t] -= fix[k][t];
            }
        }
        coeffs[k] = 0;
    }
    let mut found = Vec::new();
    rec(0, &fix, target, &mut coeffs, &mut found);
    for (cs, top_coeff) in found {
        let mut terms: Vec<(String, i64)> = others
            .iter()
            .zip(&cs)
            .filter(|(_, &c)| c > 0)
            .map(|(&cl, &c)| (cls.class(cl).label.clone(), c))
            .collect();
        if top_coeff > 0 {
            terms.push(("S4".into(), top_coeff));
        }
        terms.sort();
        out.insert(terms);
    }
    out
}

/// Permutation character values of the multiplicity vector, over the columns of [`S4_TABLE`].
pub fn s4_character(mult: [i64; 5]) -> [i64; 5] {
    let mut out = [0i64; 5];
    for (m, row) in mult.iter().zip(S4_TABLE) {
        for t in 0..5 {
            out[t] += m * row[t];
        }
    }
    out
}

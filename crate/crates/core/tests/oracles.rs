mod common;

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use burnside::burnside::{BurnsideRing, RingElement};
use burnside::cellsearch::{
    polynomial_discrepancies, run_cell_search, solve_effective, split_families, CharacterTarget, SearchConstraints,
};
use burnside::decorated_sets::{decompose, product_concrete, DecoratedGSet};
use burnside::functor_spec::covers::{binary_octahedral, dihedral, quaternion, special_linear, Cover};
use burnside::functor_spec::{builtin_mu, regular_class_count, subgroup_class_count, CocycleTable, Functor};
use burnside::permgroup::{symmetric_group, FiniteGroup};
use burnside::subgroups::{all_subgroups, double_cosets, SubgroupClassification};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{mu_ring, naive_solutions, s4_character};

/// Subgroups by closing cyclic subgroups under pairwise joins until nothing new appears.
fn subgroups_by_joins(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let mut all: BTreeSet<Vec<usize>> = (0..g.order()).map(|x| g.closure(&[x])).collect();
    loop {
        let list: Vec<Vec<usize>> = all.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                let mut gens = a.clone();
                gens.extend(b);
                if all.insert(g.closure(&gens)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return all;
        }
    }
}

#[test]
fn subgroup_lattice_matches_join_closure() {
    for (n, count, classes) in [(3, 6, 4), (4, 30, 11), (5, 156, 19)] {
        let g = symmetric_group(n).unwrap();
        let found: BTreeSet<Vec<usize>> = all_subgroups(&g)
            .unwrap()
            .iter()
            .map(|h| h.elements().to_vec())
            .collect();
        assert_eq!(found.len(), count);
        assert_eq!(found, subgroups_by_joins(&g));
        assert_eq!(SubgroupClassification::new(&g).unwrap().len(), classes);
    }
}

#[test]
fn double_cosets_partition_the_group() {
    let g = symmetric_group(5).unwrap();
    let cls = SubgroupClassification::new(&g).unwrap();
    for a in cls.classes() {
        for b in cls.classes() {
            let (a, b) = (a.rep(), b.rep());
            // brute force: orbits of A x B on G
            let mut seen = vec![false; g.order()];
            let mut orbits = 0;
            for x in 0..g.order() {
                if seen[x] {
                    continue;
                }
                orbits += 1;
                for &p in a.elements() {
                    for &q in b.elements() {
                        seen[g.mul(g.mul(p, x), q)] = true;
                    }
                }
            }
            let reps = double_cosets(&g, a, b);
            assert_eq!(reps.len(), orbits);
            let mut cover = HashSet::new();
            for &x in &reps {
                let before = cover.len();
                for &p in a.elements() {
                    for &q in b.elements() {
                        cover.insert(g.mul(g.mul(p, x), q));
                    }
                }
                assert!(cover.len() > before, "two representatives share a double coset");
            }
            assert_eq!(cover.len(), g.order());
        }
    }
}

fn concrete_matches(ring: &BurnsideRing, i: usize, j: usize) {
    let x = DecoratedGSet::from_basis(ring, ring.basis()[i]);
    let y = DecoratedGSet::from_basis(ring, ring.basis()[j]);
    let p = product_concrete(ring, &x, &y);
    assert_eq!(p.len(), x.len() * y.len());
    p.check_equivariance(ring).unwrap();
    assert_eq!(
        &decompose(ring, &p).unwrap(),
        ring.basis_product_of(i, j),
        "{} * {}",
        ring.label(i),
        ring.label(j)
    );
}

#[test]
fn formula_agrees_with_concrete_product_s4() {
    let ring = mu_ring(4);
    for i in 0..ring.rank() {
        for j in 0..ring.rank() {
            concrete_matches(&ring, i, j);
        }
    }
}

#[test]
fn formula_agrees_with_concrete_product_s5_sampled() {
    let ring = mu_ring(5);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        concrete_matches(&ring, rng.gen_range(0..ring.rank()), rng.gen_range(0..ring.rank()));
    }
    // every decorated pair at least once
    let twisted: Vec<usize> = (0..ring.rank()).filter(|&i| ring.basis()[i].frill != 0).collect();
    for &i in &twisted {
        for &j in &twisted {
            concrete_matches(&ring, i, j);
        }
    }
}

fn as_terms(ring: &BurnsideRing, x: &RingElement) -> Vec<(String, i64)> {
    let mut t: Vec<(String, i64)> = x.terms().map(|(i, c)| (ring.label(i).to_string(), c)).collect();
    t.sort();
    t
}

#[test]
fn twenty_solutions_agree_with_box_enumeration() {
    let ring = mu_ring(4);
    let mult = [42i64, 19, 10, 1, 0];
    let target = s4_character(mult);
    assert_eq!(target, [122, 60, 42, 32, 24]);
    let naive = naive_solutions(&ring, target);
    let sols = solve_effective(&ring, &CharacterTarget::new(vec![42, 19, 10, 1, 0]), None).unwrap();
    let fast: BTreeSet<_> = sols.iter().map(|x| as_terms(&ring, x)).collect();
    assert_eq!(sols.len(), 20);
    assert_eq!(fast, naive);

    let y0 = ring.parse("15*S4 + 17*S3 + 9*D8 + C2").unwrap();
    let x0 = ring.parse("13*S4 + 19*S3 + 9*D8 + C4").unwrap();
    let step = ring.parse("S4 - S3 - D8 + K1").unwrap();
    let mut expected = BTreeSet::new();
    for e in 0..=9 {
        expected.insert(as_terms(&ring, &y0.add(&step.scale(e))));
        expected.insert(as_terms(&ring, &x0.add(&step.scale(e))));
    }
    assert_eq!(fast, expected);
    assert_eq!(split_families(&ring, &sols).len(), 2);
}

#[test]
fn closed_form_cell_size_matches_every_decoration() {
    let ring = mu_ring(4);
    let sols = solve_effective(&ring, &CharacterTarget::new(vec![42, 19, 10, 1, 0]), None).unwrap();
    let fams = split_families(&ring, &sols);
    let y = fams
        .iter()
        .find(|f| f.base.coeff(ring.index_of_label("C2").unwrap()) == 1)
        .unwrap();
    assert!(polynomial_discrepancies(&ring, y).unwrap().is_empty());
}

#[test]
fn pipeline_twins_each_contain_an_undecorated_set() {
    let ring = mu_ring(4);
    let r = run_cell_search(
        &ring,
        &CharacterTarget::new(vec![42, 19, 10, 1, 0]),
        &SearchConstraints::f4a3(),
    )
    .unwrap();
    assert_eq!(r.universe, 4510);
    assert_eq!(r.candidates.len(), 14);
    assert_eq!(r.survivors.len(), 8);
    assert_eq!(r.twins.len(), 4);
    for (a, b) in &r.twins {
        assert_eq!(a.double_cell_size, b.double_cell_size);
        assert_eq!(a.partition, b.partition);
        assert_eq!(ring.dual(&a.element), a.element);
        assert!(ring.is_undecorated(&a.element) || ring.is_undecorated(&b.element));
    }
}

#[test]
fn y_family_times_c2_orbit() {
    let ring = mu_ring(4);
    let c2 = ring.element("C2").unwrap();
    let want = ring.parse("60*C2 + 31*1").unwrap();
    for e in 0..=9 {
        let y = ring
            .parse(&format!("{}*S4 + {}*S3 + {}*D8 + C2 + {e}*K1", 15 + e, 17 - e, 9 - e))
            .unwrap();
        let p = ring.multiply(&y, &c2);
        assert_eq!(p, want, "eps {e}");
        assert_eq!(ring.euler(&p).unwrap(), 151);
        assert_eq!(
            ring.euler(&ring.multiply(&y, &ring.element("C4").unwrap())).unwrap(),
            134
        );
    }
}

/// Twisted counts and restriction patterns of the built-in S5 data against cocycles
/// pulled back from explicit double covers.
#[test]
fn s5_multiplier_data_matches_covers() {
    let g = symmetric_group(5).unwrap();
    let cls = Arc::new(SubgroupClassification::new(&g).unwrap());
    let f = Functor::new(builtin_mu("S5").unwrap(), cls.clone()).unwrap();
    let subgroups = all_subgroups(&g).unwrap();
    let covers: [(&str, FiniteGroup); 7] = [
        ("K1", dihedral(4).unwrap()),
        ("K2", quaternion().unwrap()),
        ("D8", dihedral(8).unwrap()),
        ("A4", special_linear(3).unwrap()),
        ("S3xC2", dihedral(12).unwrap()),
        ("S4", binary_octahedral().unwrap()),
        ("A5", special_linear(5).unwrap()),
    ];
    let mut restrictions_checked = 0;
    for (label, cover) in covers {
        let c = cls.class_by_label(label).unwrap();
        let rep = cls.class(c).rep();
        let cov = Cover::onto(cover, &g, rep).unwrap();
        let full = cov.cocycle(&g, rep).unwrap();
        let regular = regular_class_count(&g, rep, &full).unwrap() as u64;
        assert!(regular < subgroup_class_count(&g, rep) as u64, "{label} cover splits");
        assert_eq!(f.twisted_count(c, 1), Some(regular), "{label}");
        for t in subgroups
            .iter()
            .filter(|t| t.is_subset_of(rep) && t.order() < rep.order())
        {
            let tc = cls.class_of(t);
            if f.value(tc).is_trivial() {
                continue;
            }
            let theta = CocycleTable::from_central_extension(&cov.cover, cov.z, &cov.map, &g, t).unwrap();
            let nontrivial = regular_class_count(&g, t, &theta).unwrap() < subgroup_class_count(&g, t);
            let image = f.restrict(rep, 1, t).unwrap();
            assert_eq!(image != 0, nontrivial, "{label} -> {}", cls.class(tc).label);
            restrictions_checked += 1;
        }
    }
    assert!(restrictions_checked > 20);
}

#[test]
fn s4_octahedral_cocycle_counts() {
    let g = symmetric_group(4).unwrap();
    let cls = SubgroupClassification::new(&g).unwrap();
    for (label, cover, count) in [
        ("D8", dihedral(8).unwrap(), 2),
        ("S4", binary_octahedral().unwrap(), 3),
        ("A4", special_linear(3).unwrap(), 3),
    ] {
        let rep = cls.class(cls.class_by_label(label).unwrap()).rep();
        let cov = Cover::onto(cover, &g, rep).unwrap();
        assert_eq!(
            regular_class_count(&g, rep, &cov.cocycle(&g, rep).unwrap()).unwrap(),
            count
        );
    }
}

//! Subgroup lattices, conjugacy classes of subgroups and double cosets.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{FiniteGroup, DEFAULT_SIZE_CAP};

/// Row order of the subgroup classes of S4.
pub const S4_LABELS: [&str; 11] = ["1", "H2", "C2", "C3", "C4", "S3", "K1", "K2", "D8", "A4", "S4"];

/// Row order of the subgroup classes of S5.
pub const S5_LABELS: [&str; 19] = [
    "1", "H2", "C2", "C3", "C4", "C5", "S3", "H6", "C3xC2", "D10", "K1", "K2", "H20", "D8", "A4", "S3xC2", "S4", "A5",
    "S5",
];

/// A subgroup as a sorted list of element indices of its parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<u64>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mask.hash(state);
    }
}

impl Subgroup {
    /// Wrap a sorted, duplicate-free list of indices into a group of the given order.
    pub fn from_sorted(group_order: usize, elements: Vec<usize>) -> Subgroup {
        let mut mask = vec![0u64; group_order.div_ceil(64)];
        for &e in &elements {
            mask[e / 64] |= 1 << (e % 64);
        }
        Subgroup { elements, mask }
    }

    pub fn new(g: &FiniteGroup, elements: &[usize]) -> Result<Subgroup> {
        if !g.is_subgroup(elements) {
            return Err(Error::NotSubgroup(format!("{elements:?}")));
        }
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        Ok(Subgroup::from_sorted(g.order(), e))
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
        Subgroup::from_sorted(g.order(), g.closure(gens))
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_sorted(g.order(), (0..g.order()).collect())
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_sorted(g.order(), vec![0])
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn mask(&self) -> &[u64] {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.mask[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask: Vec<u64> = self.mask.iter().zip(&other.mask).map(|(a, b)| a & b).collect();
        let elements = self.elements.iter().copied().filter(|&e| other.contains(e)).collect();
        Subgroup { elements, mask }
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&h| g.conj(x, h)).collect();
        e.sort_unstable();
        Subgroup::from_sorted(g.order(), e)
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &e in &self.elements {
            if span.binary_search(&e).is_err() {
                gens.push(e);
                span = g.closure(&gens);
                if span.len() == self.elements.len() {
                    break;
                }
            }
        }
        gens
    }
}

/// Every subgroup of `g` exactly once, ordered by (order, element list).
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    if g.order() > DEFAULT_SIZE_CAP {
        return Err(Error::SizeCap(DEFAULT_SIZE_CAP));
    }
    let n = g.order();
    // cyclic subgroups seed the search; each is kept with one generator
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    for x in 0..n {
        let c = Subgroup::generated(g, &[x]);
        if seen.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    let mut found: Vec<(Vec<usize>, Subgroup)> = cyclic
        .iter()
        .map(|(x, c)| (if *x == 0 { vec![] } else { vec![*x] }, c.clone()))
        .collect();
    let mut frontier: Vec<usize> = (0..found.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for (x, _) in &cyclic {
                if found[i].1.contains(*x) {
                    continue;
                }
                let mut gens = found[i].0.clone();
                gens.push(*x);
                let k = Subgroup::generated(g, &gens);
                if seen.insert(k.clone()) {
                    found.push((gens, k));
                    next.push(found.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = found.into_iter().map(|(_, s)| s).collect();
    subs.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(subs)
}

/// One representative per double coset `A x B`, each the smallest element of its coset.
pub fn double_cosets(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &p in a.elements() {
            let px = g.mul(p, x);
            for &q in b.elements() {
                covered[g.mul(px, q)] = true;
            }
        }
    }
    reps
}

/// The first `g` in element order with `g A g^-1 = B`.
pub fn conjugating_element(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Option<usize> {
    if a.order() != b.order() {
        return None;
    }
    (0..g.order()).find(|&x| a.elements().iter().all(|&h| b.contains(g.conj(x, h))))
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub label: String,
    /// Members in element-list order; the first is the representative.
    pub members: Vec<Subgroup>,
    /// For each member `H`, the first `t` with `t H t^-1` equal to the representative.
    pub conjugators: Vec<usize>,
    pub normalizer: Subgroup,
    pub generators: Vec<usize>,
}

impl SubgroupClass {
    pub fn rep(&self) -> &Subgroup {
        &self.members[0]
    }

    pub fn order(&self) -> usize {
        self.members[0].order()
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All subgroups of a group, grouped into labelled conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupClassification {
    group: FiniteGroup,
    classes: Vec<SubgroupClass>,
    lookup: HashMap<Vec<u64>, (usize, usize)>,
    includes: Vec<Vec<bool>>,
    standard_labels: bool,
}

#[derive(Serialize)]
struct ClassJson<'a> {
    label: &'a str,
    order: usize,
    class_size: usize,
    generators: Vec<String>,
}

impl SubgroupClassification {
    pub fn new(g: &FiniteGroup) -> Result<SubgroupClassification> {
        let subs = all_subgroups(g)?;
        classify(g, &subs)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether labels and order follow the S4/S5 table conventions.
    pub fn has_standard_labels(&self) -> bool {
        self.standard_labels
    }

    pub fn class_by_label(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    /// Class index and member index of an arbitrary subgroup.
    pub fn locate(&self, h: &Subgroup) -> (usize, usize) {
        self.lookup[h.mask()]
    }

    pub fn class_of(&self, h: &Subgroup) -> usize {
        self.locate(h).0
    }

    /// The canonical conjugator taking `h` onto its class representative.
    pub fn conjugator(&self, h: &Subgroup) -> usize {
        let (c, m) = self.locate(h);
        self.classes[c].conjugators[m]
    }

    /// Whether some conjugate of class `a` lies in the representative of class `b`.
    pub fn includes(&self, a: usize, b: usize) -> bool {
        self.includes[a][b]
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.size()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<ClassJson> = self
            .classes
            .iter()
            .map(|c| ClassJson {
                label: &c.label,
                order: c.order(),
                class_size: c.size(),
                generators: c
                    .generators
                    .iter()
                    .map(|&x| self.group.element(x).to_string())
                    .collect(),
            })
            .collect();
        serde_json::json!({ "order": self.group.order(), "degree": self.group.degree(), "classes": v })
    }
}

fn standard_label(g: &FiniteGroup, h: &Subgroup) -> Option<&'static str> {
    let perms: Vec<_> = h.elements().iter().map(|&i| g.element(i)).collect();
    let transposition = perms.iter().any(|p| p.cycles().len() == 1 && p.cycles()[0].len() == 2);
    let cyclic = perms.iter().any(|p| p.order() == h.order());
    let odd = perms.iter().any(|p| p.is_odd());
    Some(match h.order() {
        1 => "1",
        2 if transposition => "C2",
        2 => "H2",
        3 => "C3",
        4 if cyclic => "C4",
        4 if transposition => "K1",
        4 => "K2",
        5 => "C5",
        6 if cyclic => "C3xC2",
        6 if transposition => "S3",
        6 => "H6",
        8 => "D8",
        10 => "D10",
        12 if odd => "S3xC2",
        12 => "A4",
        20 => "H20",
        24 => "S4",
        60 => "A5",
        120 => "S5",
        _ => return None,
    })
}

/// Group a complete subgroup list into conjugacy classes and label them.
pub fn classify(g: &FiniteGroup, subgroups: &[Subgroup]) -> Result<SubgroupClassification> {
    let n = g.order();
    let mut assigned: HashSet<&Subgroup> = HashSet::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    for h in subgroups {
        if assigned.contains(h) {
            continue;
        }
        let mut members: Vec<Subgroup> = Vec::new();
        let mut best_conj: HashMap<Subgroup, usize> = HashMap::new();
        let mut member_set: HashSet<Subgroup> = HashSet::new();
        for x in 0..n {
            let k = h.conjugate(g, x);
            if member_set.insert(k.clone()) {
                members.push(k);
            }
        }
        members.sort_by(|a, b| a.elements.cmp(&b.elements));
        let rep = members[0].clone();
        for x in 0..n {
            let k = rep.conjugate(g, x);
            let t = g.inv(x);
            let e = best_conj.entry(k).or_insert(t);
            if t < *e {
                *e = t;
            }
        }
        let conjugators = members.iter().map(|m| best_conj[m]).collect();
        for m in subgroups.iter().filter(|s| member_set.contains(*s)) {
            assigned.insert(m);
        }
        let normalizer = Subgroup::from_sorted(n, g.normalizer(rep.elements())?);
        let generators = rep.generators(g);
        classes.push(SubgroupClass {
            label: String::new(),
            members,
            conjugators,
            normalizer,
            generators,
        });
    }
    let total: usize = classes.iter().map(|c| c.size()).sum();
    if total != subgroups.len() {
        return Err(Error::NotSubgroup(
            "subgroup list is not closed under conjugation".into(),
        ));
    }

    let order_list: Option<&[&str]> = match (g.degree(), g.is_full_symmetric()) {
        (4, true) => Some(&S4_LABELS),
        (5, true) => Some(&S5_LABELS),
        _ => None,
    };
    let standard_labels = order_list.is_some();
    match order_list {
        Some(list) => {
            let mut slots: Vec<Option<SubgroupClass>> = vec![None; list.len()];
            for mut c in classes {
                let label = standard_label(g, c.rep()).ok_or(Error::Unclassified(c.order()))?;
                let pos = list
                    .iter()
                    .position(|l| *l == label)
                    .ok_or(Error::Unclassified(c.order()))?;
                if slots[pos].is_some() {
                    return Err(Error::Unclassified(c.order()));
                }
                c.label = label.to_string();
                slots[pos] = Some(c);
            }
            classes = slots
                .into_iter()
                .map(|s| s.ok_or(Error::Unclassified(0)))
                .collect::<Result<Vec<_>>>()?;
        }
        None => {
            classes.sort_by(|a, b| (a.order(), &a.rep().elements).cmp(&(b.order(), &b.rep().elements)));
            let mut counter: HashMap<usize, usize> = HashMap::new();
            for c in classes.iter_mut() {
                let k = counter.entry(c.order()).or_insert(0);
                *k += 1;
                c.label = if c.order() == 1 {
                    "1".to_string()
                } else {
                    format!("L{}_{}", c.order(), k)
                };
            }
        }
    }

    let mut lookup = HashMap::new();
    for (ci, c) in classes.iter().enumerate() {
        for (mi, m) in c.members.iter().enumerate() {
            lookup.insert(m.mask.clone(), (ci, mi));
        }
    }
    let k = classes.len();
    let mut includes = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            let rb = classes[b].rep();
            includes[a][b] = classes[a].order() <= rb.order()
                && rb.order().is_multiple_of(classes[a].order())
                && classes[a].members.iter().any(|m| m.is_subset_of(rb));
        }
    }
    Ok(SubgroupClassification {
        group: g.clone(),
        classes,
        lookup,
        includes,
        standard_labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{symmetric_group, Permutation};

    fn sub(g: &FiniteGroup, gens: &[&str]) -> Subgroup {
        let idx: Vec<usize> = gens
            .iter()
            .map(|s| g.index_of(&Permutation::parse(s, g.degree()).unwrap()).unwrap())
            .collect();
        Subgroup::generated(g, &idx)
    }

    #[test]
    fn trivial_group_lattice() {
        let g = symmetric_group(1).unwrap();
        let s = all_subgroups(&g).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn s4_labels_and_sizes() {
        let g = symmetric_group(4).unwrap();
        let c = SubgroupClassification::new(&g).unwrap();
        let labels: Vec<&str> = c.classes().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, S4_LABELS);
        assert_eq!(c.subgroup_count(), 30);
        let c2 = c.class_by_label("C2").unwrap();
        assert_eq!(c.class(c2).size(), 6);
        for cls in c.classes() {
            assert_eq!(cls.size() * cls.normalizer.order(), 24);
        }
        let k1 = sub(&g, &["(1,2)", "(3,4)"]);
        let k2 = sub(&g, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert_eq!(c.class(c.class_of(&k1)).label, "K1");
        assert_eq!(c.class(c.class_of(&k2)).label, "K2");
    }

    #[test]
    fn s5_labels() {
        let g = symmetric_group(5).unwrap();
        let c = SubgroupClassification::new(&g).unwrap();
        let labels: Vec<&str> = c.classes().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, S5_LABELS);
        assert_eq!(c.subgroup_count(), 156);
        let h6 = sub(&g, &["(1,2,3)", "(1,2)(4,5)"]);
        assert_eq!(c.class(c.class_of(&h6)).label, "H6");
        let c5 = sub(&g, &["(1,2,3,4,5)"]);
        let n = Subgroup::new(&g, &g.normalizer(c5.elements()).unwrap()).unwrap();
        assert_eq!(c.class(c.class_of(&n)).label, "H20");
    }

    #[test]
    fn double_coset_examples() {
        let g = symmetric_group(4).unwrap();
        let whole = Subgroup::whole(&g);
        let triv = Subgroup::trivial(&g);
        let c2 = sub(&g, &["(1,2)"]);
        assert_eq!(double_cosets(&g, &whole, &c2), vec![0]);
        assert_eq!(double_cosets(&g, &c2, &whole), vec![0]);
        assert_eq!(double_cosets(&g, &triv, &triv).len(), 24);
        let reps = double_cosets(&g, &c2, &c2);
        assert_eq!(reps.len(), 7);
        let mut sizes: Vec<usize> = reps
            .iter()
            .map(|&x| c2.order() * c2.order() / c2.intersection(&c2.conjugate(&g, x)).order())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn conjugating_elements() {
        let g = symmetric_group(4).unwrap();
        let k1 = sub(&g, &["(1,2)", "(3,4)"]);
        let k2 = sub(&g, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert_eq!(conjugating_element(&g, &k1, &k1), Some(0));
        assert_eq!(conjugating_element(&g, &k1, &k2), None);
        let a = sub(&g, &["(1,2)"]);
        let b = sub(&g, &["(3,4)"]);
        let x = conjugating_element(&g, &a, &b).unwrap();
        assert_eq!(a.conjugate(&g, x), b);
    }

    #[test]
    fn canonical_conjugators_hit_representative() {
        let g = symmetric_group(4).unwrap();
        let c = SubgroupClassification::new(&g).unwrap();
        for cls in c.classes() {
            for (m, &t) in cls.members.iter().zip(&cls.conjugators) {
                assert_eq!(&m.conjugate(&g, t), cls.rep());
                assert_eq!(conjugating_element(&g, m, cls.rep()), Some(t));
            }
        }
    }

    #[test]
    fn generic_labels_for_other_groups() {
        let g = symmetric_group(3).unwrap();
        let c = SubgroupClassification::new(&g).unwrap();
        let labels: Vec<&str> = c.classes().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["1", "L2_1", "L3_1", "L6_1"]);
        assert!(!c.has_standard_labels());
    }
}

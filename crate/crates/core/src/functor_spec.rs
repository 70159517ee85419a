//! Coefficient functors on the subgroup category: finite abelian values on
//! subgroup classes, restriction and conjugation maps, twisted counts.
//!
//! Frills live in representative coordinates. Every subgroup `H` has a
//! canonical conjugator `t_H` with `t_H H t_H^-1 = R`, the representative of
//! its class, and a frill `v` in `Phi(R)` stands for the transport of `v` to
//! `H` along `t_H^-1`. Conjugation `g_*` moves frills forward:
//! a frill of `H` goes to a frill of `gHg^-1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{FiniteGroup, Permutation};
use crate::subgroups::{Subgroup, SubgroupClassification};

const BUILTIN_S4: &str = include_str!("../data/builtin_mu_s4.json");
const BUILTIN_S5: &str = include_str!("../data/builtin_mu_s5.json");

/// An element of a finite abelian group as a residue tuple.
pub type Frill = Vec<u32>;

/// Rows act on column vectors of residues.
pub type IntMatrix = Vec<Vec<i64>>;

/// `Z/o_1 x ... x Z/o_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupSpec {
    pub cyclic_orders: Vec<u32>,
}

impl AbelianGroupSpec {
    pub fn trivial() -> Self {
        AbelianGroupSpec {
            cyclic_orders: Vec::new(),
        }
    }

    pub fn new(cyclic_orders: Vec<u32>) -> Result<Self> {
        if cyclic_orders.contains(&0) {
            return Err(Error::Spec("cyclic orders must be at least 1".into()));
        }
        Ok(AbelianGroupSpec { cyclic_orders })
    }

    pub fn size(&self) -> usize {
        self.cyclic_orders.iter().map(|&o| o as usize).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn zero(&self) -> Frill {
        vec![0; self.rank()]
    }

    /// Mixed-radix index; index order is lexicographic order on tuples.
    pub fn encode(&self, v: &[u32]) -> usize {
        v.iter()
            .zip(&self.cyclic_orders)
            .fold(0, |acc, (&x, &o)| acc * o as usize + (x % o) as usize)
    }

    pub fn decode(&self, mut i: usize) -> Frill {
        let mut v = vec![0; self.rank()];
        for k in (0..self.rank()).rev() {
            let o = self.cyclic_orders[k] as usize;
            v[k] = (i % o) as u32;
            i /= o;
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.rank() && v.iter().zip(&self.cyclic_orders).all(|(&x, &o)| x < o)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Frill {
        a.iter()
            .zip(b)
            .zip(&self.cyclic_orders)
            .map(|((&x, &y), &o)| (x + y) % o)
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> Frill {
        a.iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &o)| (o - x % o) % o)
            .collect()
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.encode(&self.add(&self.decode(a), &self.decode(b)))
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        self.encode(&self.neg(&self.decode(a)))
    }

    /// Image of every element under an integer matrix into `target`.
    fn matrix_map(&self, target: &AbelianGroupSpec, m: &IntMatrix) -> Vec<usize> {
        (0..self.size())
            .map(|i| {
                let v = self.decode(i);
                let w: Frill = target
                    .cyclic_orders
                    .iter()
                    .enumerate()
                    .map(|(r, &o)| {
                        let s: i64 = m[r].iter().zip(&v).map(|(&c, &x)| c * x as i64).sum();
                        s.rem_euclid(o as i64) as u32
                    })
                    .collect();
                target.encode(&w)
            })
            .collect()
    }

    /// Whether the matrix gives a well-defined homomorphism into `target`.
    fn matrix_is_homomorphism(&self, target: &AbelianGroupSpec, m: &IntMatrix) -> bool {
        target.cyclic_orders.iter().enumerate().all(|(r, &o_t)| {
            self.cyclic_orders
                .iter()
                .enumerate()
                .all(|(c, &o_s)| (m[r][c] * o_s as i64).rem_euclid(o_t as i64) == 0)
        })
    }
}

pub fn format_frill(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

pub fn parse_frill(s: &str) -> Result<Frill> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad frill `{s}`")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub label: String,
    pub cyclic_orders: Vec<u32>,
    /// Keyed by comma-separated frill tuples.
    #[serde(default)]
    pub twisted_counts: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionSpec {
    /// The larger subgroup class.
    pub from_label: String,
    pub to_label: String,
    /// Which orbit of embeddings, when the representative of `from_label`
    /// contains several non-equivalent copies of `to_label`.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub embedding: usize,
    pub matrix: IntMatrix,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub label: String,
    /// An element of the normalizer of the class representative, in cycle notation.
    pub element: String,
    pub matrix: IntMatrix,
}

/// A coefficient functor as plain data. Classes not listed carry the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSpec {
    pub group_label: String,
    pub classes: Vec<ClassSpec>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionSpec>,
    #[serde(default)]
    pub actions: Vec<ActionSpec>,
}

/// The Schur multiplier data for S4 or S5.
pub fn builtin_mu(label: &str) -> Result<FunctorSpec> {
    match label {
        "S4" => FunctorSpec::from_json(BUILTIN_S4),
        "S5" => FunctorSpec::from_json(BUILTIN_S5),
        other => Err(Error::UnknownLabel(other.to_string())),
    }
}

impl FunctorSpec {
    pub fn trivial(group_label: &str) -> FunctorSpec {
        FunctorSpec {
            group_label: group_label.to_string(),
            classes: Vec::new(),
            restrictions: Vec::new(),
            actions: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<FunctorSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Bind to a classification and collect every rule violation.
    pub fn validate(&self, classification: &Arc<SubgroupClassification>) -> Vec<Violation> {
        match Functor::new(self.clone(), classification.clone()) {
            Ok(f) => f.validate(),
            Err(e) => vec![Violation {
                rule: "binding",
                detail: e.to_string(),
            }],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

/// Number of conjugacy classes of the subgroup `h`.
pub fn subgroup_class_count(g: &FiniteGroup, h: &Subgroup) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for &x in h.elements() {
        if seen[x] {
            continue;
        }
        count += 1;
        for &y in h.elements() {
            seen[g.conj(y, x)] = true;
        }
    }
    count
}

#[derive(Clone, Debug)]
struct Embedding {
    index: usize,
    /// `n` in the normalizer of the larger representative carrying the
    /// orbit representative onto this copy.
    carrier: usize,
}

/// A functor spec bound to a subgroup classification.
#[derive(Clone, Debug)]
pub struct Functor {
    spec: FunctorSpec,
    cls: Arc<SubgroupClassification>,
    values: Vec<AbelianGroupSpec>,
    /// Per class, the permutation of `Phi(R)` induced by each normalizer element.
    action: Vec<Vec<Option<Vec<usize>>>>,
    action_violations: Vec<Violation>,
    /// Per larger class, where each subgroup of its representative sits.
    embeddings: Vec<HashMap<Vec<u64>, Embedding>>,
    /// Per (larger class, smaller class), orbit representatives of embedded copies.
    embedding_reps: HashMap<(usize, usize), Vec<Subgroup>>,
    restrictions: HashMap<(usize, usize, usize), Vec<usize>>,
    restriction_violations: Vec<Violation>,
    twisted: Vec<Vec<Option<u64>>>,
}

impl Functor {
    pub fn new(spec: FunctorSpec, cls: Arc<SubgroupClassification>) -> Result<Functor> {
        let g = cls.group();
        let k = cls.len();
        let mut values = vec![AbelianGroupSpec::trivial(); k];
        let mut twisted_in: Vec<BTreeMap<String, u64>> = vec![BTreeMap::new(); k];
        for c in &spec.classes {
            let i = cls
                .class_by_label(&c.label)
                .ok_or_else(|| Error::UnknownLabel(c.label.clone()))?;
            values[i] = AbelianGroupSpec::new(c.cyclic_orders.clone())?;
            twisted_in[i] = c.twisted_counts.clone();
        }

        // conjugation actions
        let mut given: Vec<Vec<(usize, IntMatrix)>> = vec![Vec::new(); k];
        for a in &spec.actions {
            let i = cls
                .class_by_label(&a.label)
                .ok_or_else(|| Error::UnknownLabel(a.label.clone()))?;
            let p = Permutation::parse(&a.element, g.degree())?;
            let x = g.index_of(&p).ok_or(Error::NotInGroup)?;
            if !cls.class(i).normalizer.contains(x) {
                return Err(Error::Spec(format!("{} does not normalize {}", a.element, a.label)));
            }
            let r = values[i].rank();
            if a.matrix.len() != r || a.matrix.iter().any(|row| row.len() != r) {
                return Err(Error::Spec(format!(
                    "action matrix for {} has the wrong shape",
                    a.label
                )));
            }
            given[i].push((x, a.matrix.clone()));
        }
        let mut action = Vec::with_capacity(k);
        let mut action_violations = Vec::new();
        for i in 0..k {
            let (table, mut v) = build_action(g, &cls, i, &values[i], &given[i]);
            action.push(table);
            action_violations.append(&mut v);
        }

        // embeddings of subgroups into each representative
        let mut embeddings = Vec::with_capacity(k);
        let mut embedding_reps: HashMap<(usize, usize), Vec<Subgroup>> = HashMap::new();
        for b in 0..k {
            let rb = cls.class(b).rep();
            let norm = &cls.class(b).normalizer;
            let mut map = HashMap::new();
            for a in 0..k {
                if !cls.includes(a, b) {
                    continue;
                }
                let mut reps: Vec<Subgroup> = Vec::new();
                for m in cls.class(a).members.iter().filter(|m| m.is_subset_of(rb)) {
                    if map.contains_key(m.mask()) {
                        continue;
                    }
                    // members are in element order, so the first unseen one is its orbit's minimum
                    let index = reps.len();
                    reps.push(m.clone());
                    for &n in norm.elements() {
                        let copy = m.conjugate(g, n);
                        map.entry(copy.mask().to_vec())
                            .or_insert(Embedding { index, carrier: n });
                    }
                }
                embedding_reps.insert((b, a), reps);
            }
            embeddings.push(map);
        }

        // restriction maps
        let mut restrictions = HashMap::new();
        let mut restriction_violations = Vec::new();
        for r in &spec.restrictions {
            let b = cls
                .class_by_label(&r.from_label)
                .ok_or_else(|| Error::UnknownLabel(r.from_label.clone()))?;
            let a = cls
                .class_by_label(&r.to_label)
                .ok_or_else(|| Error::UnknownLabel(r.to_label.clone()))?;
            let reps = embedding_reps
                .get(&(b, a))
                .ok_or_else(|| Error::Spec(format!("{} is not contained in {}", r.to_label, r.from_label)))?;
            if r.embedding >= reps.len() || a == b {
                return Err(Error::Spec(format!(
                    "no embedding {} of {} into {}",
                    r.embedding, r.to_label, r.from_label
                )));
            }
            let (vb, va) = (&values[b], &values[a]);
            if r.matrix.len() != va.rank() || r.matrix.iter().any(|row| row.len() != vb.rank()) {
                return Err(Error::Spec(format!(
                    "restriction matrix {} -> {} has the wrong shape",
                    r.from_label, r.to_label
                )));
            }
            if !vb.matrix_is_homomorphism(va, &r.matrix) {
                restriction_violations.push(Violation {
                    rule: "homomorphism",
                    detail: format!("restriction {} -> {} is not well defined", r.from_label, r.to_label),
                });
            }
            if restrictions
                .insert((b, a, r.embedding), vb.matrix_map(va, &r.matrix))
                .is_some()
            {
                return Err(Error::Spec(format!(
                    "duplicate restriction {} -> {}",
                    r.from_label, r.to_label
                )));
            }
        }
        for (&(b, a), reps) in &embedding_reps {
            if a == b || values[a].is_trivial() || values[b].is_trivial() {
                continue;
            }
            for e in 0..reps.len() {
                if !restrictions.contains_key(&(b, a, e)) {
                    return Err(Error::MissingRestriction {
                        from: cls.class(b).label.clone(),
                        to: format!("{} (embedding {e})", cls.class(a).label),
                    });
                }
            }
        }

        // twisted counts; the trivial frill defaults to the class count
        let mut twisted = Vec::with_capacity(k);
        for i in 0..k {
            let mut counts = vec![None; values[i].size()];
            for (key, &count) in &twisted_in[i] {
                let v = parse_frill(key)?;
                if !values[i].contains(&v) {
                    return Err(Error::Spec(format!(
                        "twisted count key `{key}` for {}",
                        cls.class(i).label
                    )));
                }
                counts[values[i].encode(&v)] = Some(count);
            }
            if counts[0].is_none() {
                counts[0] = Some(subgroup_class_count(g, cls.class(i).rep()) as u64);
            }
            twisted.push(counts);
        }

        Ok(Functor {
            spec,
            cls,
            values,
            action,
            action_violations,
            embeddings,
            embedding_reps,
            restrictions,
            restriction_violations,
            twisted,
        })
    }

    /// The trivial functor over a classification.
    pub fn trivial(cls: Arc<SubgroupClassification>) -> Functor {
        Functor::new(FunctorSpec::trivial(""), cls).expect("trivial functor binds")
    }

    pub fn spec(&self) -> &FunctorSpec {
        &self.spec
    }

    pub fn classification(&self) -> &Arc<SubgroupClassification> {
        &self.cls
    }

    pub fn group(&self) -> &FiniteGroup {
        self.cls.group()
    }

    pub fn value(&self, class: usize) -> &AbelianGroupSpec {
        &self.values[class]
    }

    /// `n . v` for `n` in the normalizer of the representative of `class`.
    #[inline]
    pub fn act(&self, class: usize, n: usize, v: usize) -> usize {
        match &self.action[class][n] {
            Some(p) => p[v],
            None => panic!("element {n} does not normalize class {class}"),
        }
    }

    /// `g_*`: carries a frill of `h` to a frill of `g h g^-1`.
    pub fn push(&self, g: usize, h: &Subgroup, v: usize) -> usize {
        let grp = self.group();
        let (c, _) = self.cls.locate(h);
        if self.values[c].is_trivial() {
            return 0;
        }
        let gh = h.conjugate(grp, g);
        let n = grp.mul(grp.mul(self.cls.conjugator(&gh), g), grp.inv(self.cls.conjugator(h)));
        self.act(c, n, v)
    }

    /// `Phi(gamma_g)` applied to a frill of the class representative; the
    /// result is a frill of `g R g^-1`.
    pub fn conjugate_frill(&self, g: &Permutation, frill: &[u32], class: usize) -> Result<Frill> {
        let x = self.group().index_of(g).ok_or(Error::NotInGroup)?;
        let val = &self.values[class];
        if !val.contains(frill) {
            return Err(Error::Spec(format!("frill {frill:?} not in the value group")));
        }
        let rep = self.cls.class(class).rep().clone();
        Ok(val.decode(self.push(x, &rep, val.encode(frill))))
    }

    /// Restriction of a frill `w` of `b` to the subgroup `a` of `b`.
    pub fn restrict(&self, b: &Subgroup, w: usize, a: &Subgroup) -> Result<usize> {
        if !a.is_subset_of(b) {
            return Err(Error::NotSubgroup(
                "restriction target is not contained in the source".into(),
            ));
        }
        Ok(self.restrict_unchecked(b, w, a))
    }

    pub(crate) fn restrict_unchecked(&self, b: &Subgroup, w: usize, a: &Subgroup) -> usize {
        let grp = self.group();
        let (cb, _) = self.cls.locate(b);
        let (ca, _) = self.cls.locate(a);
        if self.values[ca].is_trivial() {
            return 0;
        }
        if a.order() == b.order() {
            return w;
        }
        if self.values[cb].is_trivial() {
            return 0;
        }
        let tb = self.cls.conjugator(b);
        let a_prime = a.conjugate(grp, tb);
        let emb = &self.embeddings[cb][a_prime.mask()];
        let u = self.act(cb, grp.inv(emb.carrier), w);
        let v = self.restrictions[&(cb, ca, emb.index)][u];
        let a_star = &self.embedding_reps[&(cb, ca)][emb.index];
        let t_star = self.cls.conjugator(a_star);
        let m = grp.mul(
            grp.mul(grp.mul(self.cls.conjugator(a), grp.inv(tb)), emb.carrier),
            grp.inv(t_star),
        );
        self.act(ca, m, v)
    }

    /// Restriction between class representatives along a recorded embedding.
    pub fn restrict_classes(&self, from: usize, to: usize, embedding: usize, frill: &[u32]) -> Result<Frill> {
        let reps = self
            .embedding_reps
            .get(&(from, to))
            .ok_or_else(|| Error::MissingRestriction {
                from: self.cls.class(from).label.clone(),
                to: self.cls.class(to).label.clone(),
            })?;
        let a = reps.get(embedding).ok_or_else(|| Error::MissingRestriction {
            from: self.cls.class(from).label.clone(),
            to: format!("{} (embedding {embedding})", self.cls.class(to).label),
        })?;
        let vb = &self.values[from];
        if !vb.contains(frill) {
            return Err(Error::Spec(format!("frill {frill:?} not in the value group")));
        }
        let rb = self.cls.class(from).rep();
        let out = self.restrict_unchecked(rb, vb.encode(frill), a);
        Ok(self.values[to].decode(out))
    }

    /// Number of embedding orbits of class `to` in the representative of `from`.
    pub fn embedding_count(&self, from: usize, to: usize) -> usize {
        self.embedding_reps.get(&(from, to)).map_or(0, |r| r.len())
    }

    /// Lexicographically least frill in the normalizer orbit of `v`.
    pub fn canonical_frill(&self, class: usize, v: usize) -> usize {
        if self.values[class].is_trivial() {
            return 0;
        }
        self.cls
            .class(class)
            .normalizer
            .elements()
            .iter()
            .map(|&n| self.act(class, n, v))
            .min()
            .expect("normalizer is nonempty")
    }

    pub fn twisted_count(&self, class: usize, v: usize) -> Option<u64> {
        self.twisted[class][v]
    }

    /// Every rule violation: action, naturality, transitivity, odd index, counts.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.action_violations.clone();
        out.extend(self.restriction_violations.iter().cloned());
        let grp = self.group();
        let cls = &self.cls;
        let label = |c: usize| cls.class(c).label.clone();

        // every subgroup pair A <= B
        let all: Vec<&Subgroup> = cls.classes().iter().flat_map(|c| c.members.iter()).collect();
        let pairs: Vec<(&Subgroup, &Subgroup)> = all
            .iter()
            .flat_map(|&b| all.iter().filter(move |&&a| a.is_subset_of(b)).map(move |&a| (a, b)))
            .collect();
        let movers: Vec<usize> = {
            let gens: Vec<usize> = grp.generators().collect();
            if gens.is_empty() || !self.action_violations.is_empty() {
                (0..grp.order()).collect()
            } else {
                gens
            }
        };

        // naturality: g_* commutes with restriction
        'nat: for &(a, b) in &pairs {
            let cb = cls.class_of(b);
            for w in 0..self.values[cb].size() {
                let r = self.restrict_unchecked(b, w, a);
                for &g in &movers {
                    let lhs = self.restrict_unchecked(&b.conjugate(grp, g), self.push(g, b, w), &a.conjugate(grp, g));
                    let rhs = self.push(g, a, r);
                    if lhs != rhs {
                        out.push(Violation {
                            rule: "naturality",
                            detail: format!(
                                "restriction {} -> {} does not commute with conjugation",
                                label(cb),
                                label(cls.class_of(a))
                            ),
                        });
                        break 'nat;
                    }
                }
            }
        }

        // transitivity along chains A <= B <= R_C
        let mut reported = std::collections::HashSet::new();
        for (c, class) in cls.classes().iter().enumerate() {
            let rc = class.rep();
            if self.values[c].is_trivial() {
                continue;
            }
            for &(b, _) in pairs.iter().filter(|(_, top)| *top == rc) {
                for &(a, _) in pairs.iter().filter(|(_, top)| *top == b) {
                    for w in 0..self.values[c].size() {
                        let direct = self.restrict_unchecked(rc, w, a);
                        let two = self.restrict_unchecked(b, self.restrict_unchecked(rc, w, b), a);
                        if direct != two {
                            let key = (c, cls.class_of(b), cls.class_of(a));
                            if reported.insert(key) {
                                out.push(Violation {
                                    rule: "transitivity",
                                    detail: format!(
                                        "{} -> {} differs from {} -> {} -> {}",
                                        label(c),
                                        label(key.2),
                                        label(c),
                                        label(key.1),
                                        label(key.2)
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }

        // odd index between two groups of order 2 forces a nontrivial restriction
        for b in 0..cls.len() {
            for a in 0..cls.len() {
                if a == b || self.values[a].size() != 2 || self.values[b].size() != 2 {
                    continue;
                }
                let rb = cls.class(b).rep();
                if (rb.order() / cls.class(a).order()).is_multiple_of(2) {
                    continue;
                }
                for (e, copy) in self.embedding_reps.get(&(b, a)).into_iter().flatten().enumerate() {
                    if self.restrict_unchecked(rb, 1, copy) == 0 {
                        out.push(Violation {
                            rule: "odd-index",
                            detail: format!(
                                "restriction {} -> {} (embedding {e}) is trivial at odd index {}",
                                label(b),
                                label(a),
                                rb.order() / cls.class(a).order()
                            ),
                        });
                    }
                }
            }
        }

        // twisted counts
        for c in 0..cls.len() {
            let expected = subgroup_class_count(grp, cls.class(c).rep()) as u64;
            if self.twisted[c][0] != Some(expected) {
                out.push(Violation {
                    rule: "twisted-count",
                    detail: format!(
                        "trivial frill of {} has count {:?}, class count is {expected}",
                        label(c),
                        self.twisted[c][0]
                    ),
                });
            }
            for v in 0..self.values[c].size() {
                let w = self.canonical_frill(c, v);
                if self.twisted[c][v] != self.twisted[c][w] {
                    out.push(Violation {
                        rule: "twisted-count",
                        detail: format!("counts of {} are not constant on normalizer orbits", label(c)),
                    });
                    break;
                }
            }
        }
        out
    }
}

fn build_action(
    g: &FiniteGroup,
    cls: &SubgroupClassification,
    class: usize,
    value: &AbelianGroupSpec,
    given: &[(usize, IntMatrix)],
) -> (Vec<Option<Vec<usize>>>, Vec<Violation>) {
    let label = &cls.class(class).label;
    let size = value.size();
    let identity: Vec<usize> = (0..size).collect();
    let mut table: Vec<Option<Vec<usize>>> = vec![None; g.order()];
    let mut violations = Vec::new();
    let norm = &cls.class(class).normalizer;
    let rep = cls.class(class).rep();
    let mut gens: Vec<(usize, Vec<usize>)> = Vec::new();
    for &r in rep.elements() {
        gens.push((r, identity.clone()));
    }
    for (x, m) in given {
        let p = value.matrix_map(value, m);
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != identity {
            violations.push(Violation {
                rule: "action",
                detail: format!("action of {} on {label} is not bijective", g.element(*x)),
            });
        }
        gens.push((*x, p));
    }
    table[0] = Some(identity.clone());
    let mut queue = vec![0usize];
    let mut conflict = false;
    while let Some(x) = queue.pop() {
        for (s, p) in &gens {
            let y = g.mul(*s, x);
            let px = table[x].as_ref().expect("visited");
            let img: Vec<usize> = px.iter().map(|&i| p[i]).collect();
            match &table[y] {
                None => {
                    table[y] = Some(img);
                    queue.push(y);
                }
                Some(existing) => {
                    if *existing != img {
                        conflict = true;
                    }
                }
            }
        }
    }
    if conflict {
        violations.push(Violation {
            rule: "action",
            detail: format!("conjugation action on {label} is not a homomorphism trivial on the subgroup"),
        });
    }
    let mut uncovered = false;
    for &n in norm.elements() {
        if table[n].is_none() {
            uncovered = true;
            table[n] = Some(identity.clone());
        }
    }
    // classes without listed actions carry the trivial action
    if uncovered && !given.is_empty() {
        violations.push(Violation {
            rule: "action",
            detail: format!("given action elements do not generate the normalizer of {label}"),
        });
    }
    for c in g.centralizer_of_all(rep.elements()) {
        if table[c].as_ref() != Some(&identity) {
            violations.push(Violation {
                rule: "action",
                detail: format!("centralizer of {label} acts nontrivially"),
            });
            break;
        }
    }
    (table, violations)
}

/// A normalized 2-cocycle with values in `Z/modulus`, over the elements of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    pub modulus: u32,
    /// Group indices of the subgroup elements, in order.
    pub elements: Vec<usize>,
    /// Row-major `theta(elements[i], elements[j])`.
    pub values: Vec<u32>,
}

impl CocycleTable {
    pub fn trivial(h: &Subgroup, modulus: u32) -> CocycleTable {
        let n = h.order();
        CocycleTable {
            modulus,
            elements: h.elements().to_vec(),
            values: vec![0; n * n],
        }
    }

    /// `theta(g, h)` defined by `s(g) s(h) = z^theta s(gh)`, with `s` picking
    /// the least preimage in `cover` and `map` the projection onto `g`.
    pub fn from_central_extension(
        cover: &FiniteGroup,
        z: usize,
        map: &[usize],
        g: &FiniteGroup,
        h: &Subgroup,
    ) -> Result<CocycleTable> {
        let modulus = cover.element_order(z) as u32;
        let mut powers = HashMap::new();
        let mut x = 0;
        for k in 0..modulus {
            powers.insert(x, k);
            x = cover.mul(x, z);
        }
        let mut section = vec![usize::MAX; g.order()];
        for (c, &img) in map.iter().enumerate() {
            if section[img] == usize::MAX {
                section[img] = c;
            }
        }
        let n = h.order();
        let mut values = vec![0; n * n];
        for (i, &a) in h.elements().iter().enumerate() {
            for (j, &b) in h.elements().iter().enumerate() {
                let (sa, sb, sab) = (section[a], section[b], section[g.mul(a, b)]);
                if sa == usize::MAX || sb == usize::MAX || sab == usize::MAX {
                    return Err(Error::Spec("cover does not map onto the subgroup".into()));
                }
                let q = cover.mul(cover.mul(sa, sb), cover.inv(sab));
                values[i * n + j] = *powers
                    .get(&q)
                    .ok_or_else(|| Error::Spec("kernel is not generated by z".into()))?;
            }
        }
        let t = CocycleTable {
            modulus,
            elements: h.elements().to_vec(),
            values,
        };
        t.check(g)?;
        Ok(t)
    }

    pub fn value(&self, i: usize, j: usize) -> u32 {
        self.values[i * self.elements.len() + j]
    }

    /// Verify the cocycle identity and normalization.
    pub fn check(&self, g: &FiniteGroup) -> Result<()> {
        let n = self.elements.len();
        let pos: HashMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = self.modulus;
        for i in 0..n {
            if self.value(0, i) != 0 || self.value(i, 0) != 0 {
                return Err(Error::NotCocycle(0, i, 0));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = pos[&g.mul(self.elements[a], self.elements[b])];
                for c in 0..n {
                    let bc = pos[&g.mul(self.elements[b], self.elements[c])];
                    let lhs = (self.value(a, b) + self.value(ab, c)) % m;
                    let rhs = (self.value(b, c) + self.value(a, bc)) % m;
                    if lhs != rhs {
                        return Err(Error::NotCocycle(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Number of conjugacy classes of `h` on which `theta` is symmetric against
/// the centralizer, i.e. the number of irreducible theta-projective representations.
pub fn regular_class_count(g: &FiniteGroup, h: &Subgroup, theta: &CocycleTable) -> Result<usize> {
    if theta.elements != h.elements() {
        return Err(Error::Mismatch);
    }
    theta.check(g)?;
    let n = h.order();
    let pos: HashMap<usize, usize> = h.elements().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut seen = vec![false; n];
    let mut count = 0;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let x = h.elements()[i];
        for &y in h.elements() {
            seen[pos[&g.conj(y, x)]] = true;
        }
        let regular = h
            .elements()
            .iter()
            .enumerate()
            .all(|(j, &y)| g.mul(x, y) != g.mul(y, x) || theta.value(i, j) == theta.value(j, i));
        if regular {
            count += 1;
        }
    }
    Ok(count)
}

/// Central extensions used to check twisted counts independently.
pub mod covers {
    use super::*;
    use crate::permgroup::{find_epimorphism, generate_group};

    /// A group `cover` with a central element `z` and a surjection onto a subgroup of some target.
    pub struct Cover {
        pub cover: FiniteGroup,
        pub z: usize,
        pub map: Vec<usize>,
    }

    impl Cover {
        /// Build from a cover group whose central element of order 2 is `z`,
        /// mapping onto `onto` inside `target`.
        pub fn onto(cover: FiniteGroup, target: &FiniteGroup, onto: &Subgroup) -> Result<Cover> {
            let map = find_epimorphism(&cover, target, onto.elements())
                .ok_or_else(|| Error::Spec("no epimorphism onto the subgroup".into()))?;
            let kernel: Vec<usize> = (0..cover.order()).filter(|&x| map[x] == 0).collect();
            if kernel.len() * onto.order() != cover.order() || kernel.len() != 2 {
                return Err(Error::Spec("kernel is not of order 2".into()));
            }
            let z = kernel[1];
            Ok(Cover { cover, z, map })
        }

        pub fn cocycle(&self, target: &FiniteGroup, onto: &Subgroup) -> Result<CocycleTable> {
            CocycleTable::from_central_extension(&self.cover, self.z, &self.map, target, onto)
        }
    }

    /// Dihedral group of order `2n` acting on `n` points.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        generate_group(n, &[Permutation::new(r)?, Permutation::new(s)?])
    }

    /// Quaternion group acting regularly on 8 points.
    pub fn quaternion() -> Result<FiniteGroup> {
        // elements 1,i,j,k,-1,-i,-j,-k as points 0..8; left multiplication by i and j
        let i = [1, 4, 3, 6, 5, 0, 7, 2];
        let j = [2, 7, 4, 1, 6, 3, 0, 5];
        generate_group(8, &[Permutation::new(i.to_vec())?, Permutation::new(j.to_vec())?])
    }

    /// `SL(2, p)` acting on the nonzero vectors of `F_p^2`.
    pub fn special_linear(p: usize) -> Result<FiniteGroup> {
        let points: Vec<(usize, usize)> = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .filter(|&v| v != (0, 0))
            .collect();
        let index = |v: (usize, usize)| points.iter().position(|&w| w == v).expect("nonzero vector");
        let mat = |m: [[usize; 2]; 2]| -> Result<Permutation> {
            Permutation::new(
                points
                    .iter()
                    .map(|&(a, b)| index(((m[0][0] * a + m[0][1] * b) % p, (m[1][0] * a + m[1][1] * b) % p)))
                    .collect(),
            )
        };
        generate_group(points.len(), &[mat([[1, 1], [0, 1]])?, mat([[0, p - 1], [1, 0]])?])
    }

    /// A subgroup of order 48 of `SL(2, 7)`: the binary octahedral group.
    pub fn binary_octahedral() -> Result<FiniteGroup> {
        let sl = special_linear(7)?;
        let x = (0..sl.order())
            .find(|&x| sl.element_order(x) == 8)
            .ok_or_else(|| Error::Spec("no element of order 8".into()))?;
        for y in 0..sl.order() {
            if sl.closure(&[x, y]).len() == 48 {
                return generate_group(sl.degree(), &[sl.element(x).clone(), sl.element(y).clone()]);
            }
        }
        Err(Error::Spec("no subgroup of order 48".into()))
    }
}

//! Explicit decorated G-sets: points, a permutation action and a frill per
//! point. Used as a brute-force model of the ring operations.

use std::collections::VecDeque;

use serde_json::{json, Value};

use crate::burnside::{BasisElement, BurnsideRing, RingElement};
use crate::error::{Error, Result};
use crate::functor_spec::format_frill;
use crate::subgroups::Subgroup;

/// Frills are stored in the coordinates of the stabilizer's class
/// representative, through the standard conjugator of the stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedGSet {
    /// `action[g][x]` is the image of point `x` under group element `g`.
    action: Vec<Vec<u32>>,
    stabilizers: Vec<Subgroup>,
    classes: Vec<usize>,
    frills: Vec<usize>,
}

impl DecoratedGSet {
    pub fn empty(ring: &BurnsideRing) -> Self {
        DecoratedGSet {
            action: vec![Vec::new(); ring.group().order()],
            stabilizers: Vec::new(),
            classes: Vec::new(),
            frills: Vec::new(),
        }
    }

    /// Build from a raw action table and frills, checking the action axioms
    /// and equivariance.
    pub fn new(ring: &BurnsideRing, action: Vec<Vec<u32>>, frills: Vec<usize>) -> Result<Self> {
        let g = ring.group();
        let n = frills.len();
        if action.len() != g.order() || action.iter().any(|row| row.len() != n) {
            return Err(Error::Spec("action table has the wrong shape".into()));
        }
        for row in &action {
            let mut seen = vec![false; n];
            for &y in row {
                if y as usize >= n || std::mem::replace(&mut seen[y as usize], true) {
                    return Err(Error::Spec("group element does not act bijectively".into()));
                }
            }
        }
        let e = g.identity();
        if (0..n).any(|x| action[e][x] as usize != x) {
            return Err(Error::Spec("identity acts nontrivially".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                if (0..n).any(|x| action[ab][x] != action[a][action[b][x] as usize]) {
                    return Err(Error::Spec("action is not compatible with multiplication".into()));
                }
            }
        }
        let cls = ring.functor().classification();
        let stabilizers: Vec<Subgroup> = (0..n)
            .map(|x| {
                let elems: Vec<usize> = (0..g.order()).filter(|&h| action[h][x] as usize == x).collect();
                Subgroup::from_sorted(g.order(), elems)
            })
            .collect();
        let classes = stabilizers.iter().map(|s| cls.class_of(s)).collect();
        let set = DecoratedGSet {
            action,
            stabilizers,
            classes,
            frills,
        };
        for x in 0..n {
            if set.frills[x] >= ring.functor().value(set.classes[x]).size() {
                return Err(Error::Equivariance { point: x });
            }
        }
        set.check_equivariance(ring)?;
        Ok(set)
    }

    /// The coset space `G/A` with frills `push(g, A, a)` at `gA`.
    pub fn from_basis(ring: &BurnsideRing, b: BasisElement) -> DecoratedGSet {
        let g = ring.group();
        let f = ring.functor();
        let a = f.classification().class(b.class).rep().clone();
        let mut point_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if point_of[x] != usize::MAX {
                continue;
            }
            let p = reps.len();
            reps.push(x);
            for &h in a.elements() {
                point_of[g.mul(x, h)] = p;
            }
        }
        let action: Vec<Vec<u32>> = (0..g.order())
            .map(|h| reps.iter().map(|&x| point_of[g.mul(h, x)] as u32).collect())
            .collect();
        let stabilizers: Vec<Subgroup> = reps.iter().map(|&x| a.conjugate(g, x)).collect();
        let frills = reps.iter().map(|&x| f.push(x, &a, b.frill)).collect();
        DecoratedGSet {
            action,
            classes: vec![b.class; reps.len()],
            stabilizers,
            frills,
        }
    }

    pub fn len(&self) -> usize {
        self.frills.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frills.is_empty()
    }

    pub fn image(&self, g: usize, x: usize) -> usize {
        self.action[g][x] as usize
    }

    pub fn stabilizer(&self, x: usize) -> &Subgroup {
        &self.stabilizers[x]
    }

    pub fn frill(&self, x: usize) -> usize {
        self.frills[x]
    }

    /// Checks `pi_{gx} = g_* pi_x` and `G_{gx} = g G_x g^-1` for every `g` and `x`.
    pub fn check_equivariance(&self, ring: &BurnsideRing) -> Result<()> {
        let g = ring.group();
        let f = ring.functor();
        for x in 0..self.len() {
            for h in 0..g.order() {
                let y = self.image(h, x);
                let conj = self.stabilizers[x].conjugate(g, h);
                if conj != self.stabilizers[y] || f.push(h, &self.stabilizers[x], self.frills[x]) != self.frills[y] {
                    return Err(Error::Equivariance { point: x });
                }
            }
        }
        Ok(())
    }

    /// Orbit representatives, smallest point first.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for row in &self.action {
                    let y = row[x] as usize;
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn to_json(&self, ring: &BurnsideRing) -> Value {
        let cls = ring.functor().classification();
        let g = ring.group();
        let points: Vec<Value> = (0..self.len())
            .map(|x| {
                let t = cls.conjugator(&self.stabilizers[x]);
                let val = ring.functor().value(self.classes[x]);
                json!({
                    "stabilizer": cls.class(self.classes[x]).label,
                    "conjugator": g.element(t).to_string(),
                    "frill": format_frill(&val.decode(self.frills[x])),
                })
            })
            .collect();
        json!({ "size": self.len(), "points": points })
    }
}

/// Cartesian product with diagonal action; frills restricted to `G_x ∩ G_y` and added.
pub fn product_concrete(ring: &BurnsideRing, x: &DecoratedGSet, y: &DecoratedGSet) -> DecoratedGSet {
    let g = ring.group();
    let f = ring.functor();
    let cls = f.classification();
    let (nx, ny) = (x.len(), y.len());
    let action = (0..g.order())
        .map(|h| {
            let mut row = Vec::with_capacity(nx * ny);
            for p in 0..nx {
                for q in 0..ny {
                    row.push(x.action[h][p] * ny as u32 + y.action[h][q]);
                }
            }
            row
        })
        .collect();
    let mut stabilizers = Vec::with_capacity(nx * ny);
    let mut classes = Vec::with_capacity(nx * ny);
    let mut frills = Vec::with_capacity(nx * ny);
    for p in 0..nx {
        for q in 0..ny {
            let (sp, sq) = (&x.stabilizers[p], &y.stabilizers[q]);
            let inter = sp.intersection(sq);
            let c = cls.class_of(&inter);
            let a = f
                .restrict(sp, x.frills[p], &inter)
                .expect("intersection lies in both stabilizers");
            let b = f
                .restrict(sq, y.frills[q], &inter)
                .expect("intersection lies in both stabilizers");
            frills.push(f.value(c).add_idx(a, b));
            classes.push(c);
            stabilizers.push(inter);
        }
    }
    DecoratedGSet {
        action,
        stabilizers,
        classes,
        frills,
    }
}

/// Tagged union: the points of `x` followed by those of `y`.
pub fn disjoint_union(x: &DecoratedGSet, y: &DecoratedGSet) -> DecoratedGSet {
    let shift = x.len() as u32;
    let action = x
        .action
        .iter()
        .zip(&y.action)
        .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&p| p + shift)).collect())
        .collect();
    DecoratedGSet {
        action,
        stabilizers: x.stabilizers.iter().chain(&y.stabilizers).cloned().collect(),
        classes: x.classes.iter().chain(&y.classes).copied().collect(),
        frills: x.frills.iter().chain(&y.frills).copied().collect(),
    }
}

/// Same G-set with every frill inverted.
pub fn dual_concrete(ring: &BurnsideRing, x: &DecoratedGSet) -> DecoratedGSet {
    let f = ring.functor();
    let mut out = x.clone();
    for (p, v) in out.frills.iter_mut().enumerate() {
        *v = f.value(x.classes[p]).neg_idx(*v);
    }
    out
}

/// Sum over orbits of the canonical basis element of a representative point.
pub fn decompose(ring: &BurnsideRing, x: &DecoratedGSet) -> Result<RingElement> {
    x.check_equivariance(ring)?;
    let f = ring.functor();
    let mut out = RingElement::zero();
    for orbit in x.orbits() {
        let p = orbit[0];
        let c = x.classes[p];
        let b = BasisElement {
            class: c,
            frill: f.canonical_frill(c, x.frills[p]),
        };
        out.add_term(ring.position(b).expect("canonical frills index the basis"), 1);
    }
    Ok(out)
}

/// A concrete set realizing an effective ring element.
pub fn realize(ring: &BurnsideRing, x: &RingElement) -> Result<DecoratedGSet> {
    if !x.is_effective() {
        return Err(Error::NotEffective);
    }
    let mut out = DecoratedGSet::empty(ring);
    for (i, c) in x.terms() {
        let piece = DecoratedGSet::from_basis(ring, ring.basis()[i]);
        for _ in 0..c {
            out = disjoint_union(&out, &piece);
        }
    }
    Ok(out)
}

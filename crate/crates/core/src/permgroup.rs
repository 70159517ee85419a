//! Permutations and finite permutation groups with full element enumeration.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the order of a generated group.
pub const DEFAULT_SIZE_CAP: usize = 10_000;

/// Groups up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A permutation of `{0, .., degree-1}`, stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Build from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || used[p] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                used[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parse 1-based cycle notation such as `(1,2)(3,4)`; `()` is the identity.
    pub fn parse(s: &str, degree: usize) -> Result<Self> {
        let s = s.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            if rest_trim.is_empty() {
                break;
            }
            if !rest_trim.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' in `{s}`")));
            }
            let close = rest_trim
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{s}`")))?;
            let body = &rest_trim[1..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{tok}` in `{s}`")))?;
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!("point {p} outside 1..={degree}")));
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = &rest_trim[close + 1..];
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p]
    }

    /// `self * other`, acting as `p -> self(other(p))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&p| self.images[p]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted decreasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    pub fn is_odd(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A finite permutation group with every element listed in lexicographic
/// order of image arrays. Index 0 is always the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    generators: Vec<usize>,
    table: Option<Vec<u32>>,
    inverses: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators().collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

/// Closure of `generators` with the default size cap.
pub fn generate_group(degree: usize, generators: &[Permutation]) -> Result<FiniteGroup> {
    generate_group_capped(degree, generators, DEFAULT_SIZE_CAP)
}

pub fn generate_group_capped(degree: usize, generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let id = Permutation::identity(degree);
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = s.compose(&x);
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(Error::SizeCap(cap));
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_keys().collect();
    elements.sort();
    let mut group = FiniteGroup::from_sorted(degree, elements);
    let mut gens: Vec<usize> = generators.iter().map(|g| group.index[g]).filter(|&i| i != 0).collect();
    gens.dedup();
    group.generators = gens;
    Ok(group)
}

/// The symmetric group on `n` points, `1 <= n <= 6`.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    if !(1..=6).contains(&n) {
        return Err(Error::OutOfRange(format!("symmetric group degree {n}")));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
    }
    if n >= 3 {
        let cycle: Vec<usize> = (0..n).collect();
        gens.push(Permutation::from_cycles(n, &[&cycle])?);
    }
    generate_group(n, &gens)
}

/// A group from `S<n>` or a `;`-separated list of generators in cycle notation.
/// Without `degree`, generators act on points up to the largest one mentioned.
pub fn parse_group(s: &str, degree: Option<usize>) -> Result<FiniteGroup> {
    let s = s.trim();
    if let Some(n) = s.strip_prefix('S').and_then(|n| n.parse::<usize>().ok()) {
        return symmetric_group(n);
    }
    let gens: Vec<&str> = s.split(';').map(str::trim).filter(|g| !g.is_empty()).collect();
    if gens.is_empty() {
        return Err(Error::Parse(format!("empty group description `{s}`")));
    }
    let max_point = s
        .split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(1);
    let n = degree.unwrap_or(max_point);
    let perms = gens
        .iter()
        .map(|g| Permutation::parse(g, n))
        .collect::<Result<Vec<_>>>()?;
    generate_group(n, &perms)
}

impl FiniteGroup {
    fn from_sorted(degree: usize, elements: Vec<Permutation>) -> FiniteGroup {
        let index: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let inverses = elements.iter().map(|g| index[&g.inverse()]).collect();
        let table = if n <= TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = index[&elements[i].compose(&elements[j])] as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        FiniteGroup {
            degree,
            elements,
            index,
            generators: Vec::new(),
            table,
            inverses,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Indices of the generators this group was built from.
    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.iter().copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.elements.len() + j] as usize,
            None => self.index[&self.elements[i].compose(&self.elements[j])],
        }
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// `g h g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverses[g])
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for &s in gens {
                let y = self.mul(s, x);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks that `subset` is closed, contains the identity and is nonempty.
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        if subset.is_empty() || subset.iter().any(|&i| i >= self.order()) {
            return false;
        }
        let mut member = vec![false; self.order()];
        for &i in subset {
            member[i] = true;
        }
        member[0] && subset.iter().all(|&a| subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Conjugacy classes as sorted index lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let movers: Vec<usize> = if self.generators.is_empty() {
            (0..n).collect()
        } else {
            self.generators.clone()
        };
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < class.len() {
                let x = class[k];
                k += 1;
                for &g in &movers {
                    let y = self.conj(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        class.push(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// `{g : g H g^-1 = H}`.
    pub fn normalizer(&self, h: &[usize]) -> Result<Vec<usize>> {
        if !self.is_subgroup(h) {
            return Err(Error::NotSubgroup(format!("{} elements", h.len())));
        }
        let mut member = vec![false; self.order()];
        for &x in h {
            member[x] = true;
        }
        Ok((0..self.order())
            .filter(|&g| h.iter().all(|&x| member[self.conj(g, x)]))
            .collect())
    }

    /// `{h : hg = gh}`.
    pub fn centralizer(&self, g: &Permutation) -> Result<Vec<usize>> {
        let gi = self.index_of(g).ok_or(Error::NotInGroup)?;
        Ok(self.centralizer_of(gi))
    }

    pub fn centralizer_of(&self, g: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&h| self.mul(h, g) == self.mul(g, h))
            .collect()
    }

    /// Elements commuting with every element of `subset`.
    pub fn centralizer_of_all(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&c| subset.iter().all(|&x| self.mul(c, x) == self.mul(x, c)))
            .collect()
    }

    /// True for the full symmetric group on its points.
    pub fn is_full_symmetric(&self) -> bool {
        self.order() == (1..=self.degree).product::<usize>()
    }
}

/// A surjective homomorphism from `source` onto the subgroup `onto` of
/// `target`, found by trying images for the source generators. Returns the
/// image index of every source element.
pub fn find_epimorphism(source: &FiniteGroup, target: &FiniteGroup, onto: &[usize]) -> Option<Vec<usize>> {
    let gens: Vec<usize> = source.generators().collect();
    if gens.is_empty() {
        return if onto == [0] {
            Some(vec![0; source.order()])
        } else {
            None
        };
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = source.element_order(g);
            onto.iter()
                .copied()
                .filter(|&t| o.is_multiple_of(target.element_order(t)))
                .collect()
        })
        .collect();
    let mut onto_sorted = onto.to_vec();
    onto_sorted.sort_unstable();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&k, c)| c[k]).collect();
        if let Some(map) = extend_generator_map(source, target, &gens, &images) {
            let mut image: Vec<usize> = map.clone();
            image.sort_unstable();
            image.dedup();
            if image == onto_sorted {
                return Some(map);
            }
        }
        // advance the odometer
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return None;
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn extend_generator_map(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(s, x);
            let img = target.mul(t, map[x]);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

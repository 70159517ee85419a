//! Searches for decorated G-sets with prescribed permutation character, and
//! the cell-size bookkeeping built on the twisted Euler characteristic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::burnside::{BurnsideRing, RingElement};
use crate::characters::{character_table_symmetric, decompose, permutation_character};
use crate::error::{Error, Result};

/// Targets and degeneration edges of the F4(a3) parabolic blocks.
pub const F4A3_TARGETS: &str = include_str!("../data/table4.targets");

/// Order in which standard S4 labels are printed in set formulas.
const DISPLAY_ORDER: [&str; 6] = ["S4", "S3", "D8", "C2", "C4", "K1"];

/// Multiplicities of the irreducible characters, in partition order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterTarget {
    pub multiplicities: Vec<u64>,
}

impl CharacterTarget {
    pub fn new(multiplicities: Vec<u64>) -> Self {
        CharacterTarget { multiplicities }
    }

    /// Parses `42,19,10,1,0` or `42 19 10 1 0`.
    pub fn parse(s: &str) -> Result<Self> {
        let m = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if m.is_empty() {
            return Err(Error::Parse("empty character target".into()));
        }
        Ok(CharacterTarget { multiplicities: m })
    }
}

impl fmt::Display for CharacterTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Thresholds on left cell sizes and the double cell size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchConstraints {
    pub min_left_cell: i64,
    pub big_cell_threshold: i64,
    pub min_big_cells: usize,
    pub min_double_cell: i64,
}

impl SearchConstraints {
    /// 151 / 175 x 30 / 7400.
    pub fn f4a3() -> Self {
        SearchConstraints {
            min_left_cell: 151,
            big_cell_threshold: 175,
            min_big_cells: 30,
            min_double_cell: 7400,
        }
    }
}

/// `base + t * direction` for `t` in `0..=max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub base: RingElement,
    pub direction: RingElement,
    pub max: i64,
}

impl Family {
    pub fn member(&self, t: i64) -> RingElement {
        self.base.add(&self.direction.scale(t))
    }

    pub fn members(&self) -> Vec<RingElement> {
        (0..=self.max).map(|t| self.member(t)).collect()
    }

    /// Position of `x` in the family.
    pub fn parameter_of(&self, x: &RingElement) -> Option<i64> {
        (0..=self.max).find(|&t| self.member(t) == *x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub element: RingElement,
    /// Parameter of the underlying undecorated family member.
    pub parameter: i64,
    pub double_cell_size: i64,
    /// Left cell sizes, ascending.
    pub partition: Vec<i64>,
}

impl Candidate {
    pub fn primes(&self, ring: &BurnsideRing) -> i64 {
        self.element
            .terms()
            .filter(|&(i, _)| ring.basis()[i].frill != 0)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn to_json(&self, ring: &BurnsideRing) -> Value {
        json!({
            "set": ring.to_json(&self.element),
            "text": format_set(ring, &self.element),
            "parameter": self.parameter,
            "double_cell_size": self.double_cell_size,
            "partition": self.partition,
        })
    }
}

/// Permutation character multiplicities of every basis element with trivial frill.
fn undecorated_characters(ring: &BurnsideRing) -> Result<Vec<(usize, Vec<u64>)>> {
    let g = ring.group();
    let table = character_table_symmetric(g.degree())?;
    let cls = ring.functor().classification();
    (0..ring.rank())
        .filter(|&i| ring.basis()[i].frill == 0)
        .map(|i| {
            let chi = permutation_character(g, cls.class(ring.basis()[i].class).rep())?;
            Ok((i, decompose(&chi, &table)?))
        })
        .collect()
}

/// All effective undecorated `x` with `Omega(x) = target` and `x - required` effective.
pub fn solve_effective(
    ring: &BurnsideRing,
    target: &CharacterTarget,
    required: Option<&RingElement>,
) -> Result<Vec<RingElement>> {
    let chars = undecorated_characters(ring)?;
    let width = chars.first().map_or(0, |c| c.1.len());
    if target.multiplicities.len() != width {
        return Err(Error::DegreeMismatch {
            expected: width,
            found: target.multiplicities.len(),
        });
    }
    let zero = RingElement::zero();
    let required = required.unwrap_or(&zero);
    if required.terms().any(|(i, _)| ring.basis()[i].frill != 0) {
        return Err(Error::Spec("required subset must be undecorated".into()));
    }
    let mut remaining: Vec<i64> = target.multiplicities.iter().map(|&m| m as i64).collect();
    for (i, c) in required.terms() {
        if c < 0 {
            return Err(Error::NotEffective);
        }
        let w = &chars
            .iter()
            .find(|(j, _)| *j == i)
            .expect("undecorated basis element")
            .1;
        for (r, &m) in remaining.iter_mut().zip(w) {
            *r -= c * m as i64;
        }
    }
    let mut out = Vec::new();
    if remaining.iter().all(|&r| r >= 0) {
        let mut coeffs = vec![0i64; chars.len()];
        search(&chars, 0, &mut remaining, &mut coeffs, &mut out);
    }
    let mut sols: Vec<RingElement> = out
        .into_iter()
        .map(|coeffs| {
            let x = RingElement::from_terms(chars.iter().zip(&coeffs).map(|((i, _), &c)| (*i, c)));
            x.add(required)
        })
        .collect();
    sols.sort_by_key(|x| sort_key(ring, x));
    Ok(sols)
}

fn search(chars: &[(usize, Vec<u64>)], k: usize, remaining: &mut [i64], coeffs: &mut [i64], out: &mut Vec<Vec<i64>>) {
    if k == chars.len() {
        if remaining.iter().all(|&r| r == 0) {
            out.push(coeffs.to_vec());
        }
        return;
    }
    let w = &chars[k].1;
    let max = w
        .iter()
        .zip(remaining.iter())
        .filter(|(&m, _)| m > 0)
        .map(|(&m, &r)| r / m as i64)
        .min()
        .unwrap_or(0);
    for c in 0..=max {
        for (r, &m) in remaining.iter_mut().zip(w) {
            *r -= c * m as i64;
        }
        coeffs[k] = c;
        search(chars, k + 1, remaining, coeffs, out);
        for (r, &m) in remaining.iter_mut().zip(w) {
            *r += c * m as i64;
        }
    }
    coeffs[k] = 0;
}

fn display_rank(ring: &BurnsideRing, i: usize) -> (usize, std::cmp::Reverse<usize>) {
    let b = ring.basis()[i];
    let cls = ring.functor().classification();
    let label = &cls.class(b.class).label;
    let pos = if cls.has_standard_labels() {
        DISPLAY_ORDER.iter().position(|l| l == label)
    } else {
        None
    };
    (pos.unwrap_or(DISPLAY_ORDER.len()), std::cmp::Reverse(b.class))
}

fn sort_key(ring: &BurnsideRing, x: &RingElement) -> Vec<i64> {
    let mut order: Vec<usize> = (0..ring.rank()).collect();
    order.sort_by_key(|&i| (display_rank(ring, i), ring.basis()[i].frill));
    order.iter().map(|&i| -x.coeff(i)).collect()
}

/// Splits solutions into chains `base + t d` along the most frequent difference.
pub fn split_families(ring: &BurnsideRing, solutions: &[RingElement]) -> Vec<Family> {
    if solutions.len() < 2 {
        return solutions
            .iter()
            .map(|s| Family {
                base: s.clone(),
                direction: RingElement::zero(),
                max: 0,
            })
            .collect();
    }
    let mut counts: HashMap<RingElement, usize> = HashMap::new();
    for a in solutions {
        for b in solutions {
            let d = orient(ring, b.sub(a));
            if !d.is_zero() {
                *counts.entry(d).or_insert(0) += 1;
            }
        }
    }
    let direction = counts
        .into_iter()
        .max_by(|(d1, c1), (d2, c2)| {
            c1.cmp(c2).then_with(|| {
                let n = |d: &RingElement| d.terms().map(|(_, c)| c.abs()).sum::<i64>();
                n(d2)
                    .cmp(&n(d1))
                    .then_with(|| sort_key(ring, d2).cmp(&sort_key(ring, d1)))
            })
        })
        .map(|(d, _)| d)
        .expect("at least one difference");
    let set: std::collections::HashSet<&RingElement> = solutions.iter().collect();
    let mut families = Vec::new();
    for s in solutions {
        if set.contains(&s.sub(&direction)) {
            continue;
        }
        let mut max = 0;
        while set.contains(&s.add(&direction.scale(max + 1))) {
            max += 1;
        }
        families.push(Family {
            base: s.clone(),
            direction: direction.clone(),
            max,
        });
    }
    families.sort_by_key(|f| sort_key(ring, &f.base));
    families
}

/// Sign convention: the first nonzero coefficient in display order is positive.
fn orient(ring: &BurnsideRing, d: RingElement) -> RingElement {
    let mut terms: Vec<(usize, i64)> = d.terms().collect();
    terms.sort_by_key(|&(i, _)| (display_rank(ring, i), ring.basis()[i].frill));
    match terms.first() {
        Some(&(_, c)) if c < 0 => d.scale(-1),
        _ => d,
    }
}

/// Every decorated effective element whose underlying undecorated element is `x`.
pub fn enumerate_decorations(ring: &BurnsideRing, x: &RingElement) -> Result<Vec<RingElement>> {
    if !x.is_effective() {
        return Err(Error::NotEffective);
    }
    let mut partial = vec![RingElement::zero()];
    for (class, k) in ring.underlying(x) {
        let slots: Vec<usize> = (0..ring.rank()).filter(|&i| ring.basis()[i].class == class).collect();
        let mut next = Vec::new();
        for p in &partial {
            for split in compositions(k, slots.len()) {
                next.push(p.add(&RingElement::from_terms(slots.iter().copied().zip(split))));
            }
        }
        partial = next;
    }
    partial.sort_by_key(|y| sort_key(ring, y));
    Ok(partial)
}

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `M(x * dual(x))`.
pub fn double_cell_size(ring: &BurnsideRing, x: &RingElement) -> Result<i64> {
    ring.fun_simple_count(x, x)
}

/// One entry `M(x * dual(b))` per orbit `b` of `x`, ascending.
pub fn left_cell_partition(ring: &BurnsideRing, x: &RingElement) -> Result<Vec<i64>> {
    if !x.is_effective() {
        return Err(Error::NotEffective);
    }
    let mut out = Vec::new();
    for (i, k) in x.terms() {
        let m = ring.euler(&ring.multiply(x, &ring.dual(&RingElement::basis(i))))?;
        out.extend(std::iter::repeat_n(m, k as usize));
    }
    out.sort_unstable();
    Ok(out)
}

pub fn evaluate(ring: &BurnsideRing, x: &RingElement, parameter: i64) -> Result<Candidate> {
    Ok(Candidate {
        element: x.clone(),
        parameter,
        double_cell_size: double_cell_size(ring, x)?,
        partition: left_cell_partition(ring, x)?,
    })
}

/// `(151,153^11,179^21)`.
pub fn format_cell_partition(p: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < p.len() {
        let j = p[i..].iter().take_while(|&&v| v == p[i]).count();
        parts.push(if j == 1 {
            p[i].to_string()
        } else {
            format!("{}^{}", p[i], j)
        });
        i += j;
    }
    format!("({})", parts.join(","))
}

/// `21<S4> + <S4'> + 6<K1>`: classes in display order, larger coefficient first within a class.
pub fn format_set(ring: &BurnsideRing, x: &RingElement) -> String {
    let mut terms: Vec<(usize, i64)> = x.terms().collect();
    terms.sort_by_key(|&(i, c)| (display_rank(ring, i), -c, ring.basis()[i].frill));
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|&(i, c)| {
            if c == 1 {
                format!("<{}>", ring.label(i))
            } else {
                format!("{c}<{}>", ring.label(i))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn filter_constraints(candidates: &[Candidate], k: &SearchConstraints) -> Vec<Candidate> {
    candidates
        .iter()
        .filter(|c| {
            c.partition.iter().all(|&v| v >= k.min_left_cell)
                && c.partition.iter().filter(|&&v| v >= k.big_cell_threshold).count() >= k.min_big_cells
                && c.double_cell_size >= k.min_double_cell
        })
        .cloned()
        .collect()
}

/// Groups candidates with equal `x * dual(x)`; every group must be a pair
/// containing an undecorated member, which comes first.
pub fn pair_twins(ring: &BurnsideRing, survivors: &[Candidate]) -> Result<Vec<(Candidate, Candidate)>> {
    let mut groups: Vec<(RingElement, Vec<&Candidate>)> = Vec::new();
    for c in survivors {
        let sq = ring.multiply(&c.element, &ring.dual(&c.element));
        match groups.iter_mut().find(|(k, _)| *k == sq) {
            Some((_, g)) => g.push(c),
            None => groups.push((sq, vec![c])),
        }
    }
    let mut out = Vec::new();
    for (_, g) in groups {
        if g.len() != 2 {
            return Err(Error::Unpaired(format_set(ring, &g[0].element)));
        }
        let (a, b) = if ring.is_undecorated(&g[0].element) {
            (g[0], g[1])
        } else {
            (g[1], g[0])
        };
        if !ring.is_undecorated(&a.element) {
            return Err(Error::Unpaired(format!(
                "{} has no undecorated twin",
                format_set(ring, &a.element)
            )));
        }
        out.push((a.clone(), b.clone()));
    }
    Ok(out)
}

/// The closed form for `M(Y_C Y_C)` over the decorated `Y` family.
pub fn polynomial_double_cell_size(e: i64, a: i64, b: i64, g: i64) -> i64 {
    4 * e * e - 4 * e * a - 12 * e * g + 30 * e + 4 * a * a + 12 * a * b + 12 * a * g - 114 * a
        + 12 * b * b
        + 12 * b * g
        - 198 * b
        + 12 * g * g
        - 144 * g
        + 7084
}

/// Counts of `(epsilon, alpha, beta, delta)` for the `Y` family from a decorated element.
pub fn y_family_parameters(ring: &BurnsideRing, x: &RingElement) -> Option<(i64, i64, i64, i64)> {
    let c = |l: &str| ring.index_of_label(l).map_or(0, |i| x.coeff(i));
    let eps = c("K1") + c("K1'");
    Some((eps, c("S4'"), c("D8'"), c("K1'")))
}

/// `((eps, alpha, beta, delta), closed form, computed)`.
pub type Discrepancy = ((i64, i64, i64, i64), i64, i64);

/// Points where the closed form and `M(Y Y^v)` disagree, with delta standing in for gamma.
pub fn polynomial_discrepancies(ring: &BurnsideRing, family: &Family) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for t in 0..=family.max {
        for x in enumerate_decorations(ring, &family.member(t))? {
            let (e, a, b, d) = y_family_parameters(ring, &x).expect("standard labels");
            let computed = double_cell_size(ring, &x)?;
            let poly = polynomial_double_cell_size(e, a, b, d);
            if computed != poly {
                out.push(((e, a, b, d), computed, poly));
            }
        }
    }
    Ok(out)
}

/// A class all of whose subgroups carry trivial values, so products with it
/// ignore decorations.
fn is_plain(ring: &BurnsideRing, class: usize) -> bool {
    let f = ring.functor();
    let cls = f.classification();
    (0..cls.len()).all(|b| !cls.includes(b, class) || f.value(b).is_trivial())
}

/// Left cell sizes of one family member that do not depend on its decorations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedCells {
    pub parameter: i64,
    /// `(label, M(x * <A>), multiplicity of <A> in x)` for every plain class `A`.
    pub probes: Vec<(String, i64, i64)>,
    pub orbit_count: i64,
}

impl FixedCells {
    pub fn min_cell(&self) -> Option<i64> {
        self.probes.iter().filter(|p| p.2 > 0).map(|p| p.1).min()
    }

    pub fn small_cells(&self, threshold: i64) -> i64 {
        self.probes.iter().filter(|p| p.1 < threshold).map(|p| p.2).sum()
    }

    pub fn probe(&self, label: &str) -> Option<i64> {
        self.probes.iter().find(|p| p.0 == label).map(|p| p.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub family: Family,
    pub cells: Vec<FixedCells>,
    /// A decoration-independent cell below the minimum for every member.
    pub excluded: bool,
    /// Members allowed by the count of small cells.
    pub allowed: Vec<i64>,
}

pub fn fixed_cells(ring: &BurnsideRing, x: &RingElement, parameter: i64) -> Result<FixedCells> {
    let mut probes = Vec::new();
    for i in 0..ring.rank() {
        let b = ring.basis()[i];
        if b.frill != 0 || !is_plain(ring, b.class) {
            continue;
        }
        let m = ring.euler(&ring.multiply(x, &RingElement::basis(i)))?;
        probes.push((ring.label(i).to_string(), m, x.coeff(i)));
    }
    Ok(FixedCells {
        parameter,
        probes,
        orbit_count: x.orbit_count(),
    })
}

/// Eliminates families whose decoration-independent cells violate the constraints.
pub fn rule_out_families(ring: &BurnsideRing, families: &[Family], k: &SearchConstraints) -> Result<Vec<FamilyReport>> {
    families
        .iter()
        .map(|f| {
            let cells = (0..=f.max)
                .map(|t| fixed_cells(ring, &f.member(t), t))
                .collect::<Result<Vec<_>>>()?;
            let excluded = cells.iter().all(|c| c.min_cell().is_some_and(|m| m < k.min_left_cell));
            let allowed = if excluded {
                Vec::new()
            } else {
                cells
                    .iter()
                    .filter(|c| {
                        c.min_cell().is_none_or(|m| m >= k.min_left_cell)
                            && c.orbit_count - c.small_cells(k.big_cell_threshold) >= k.min_big_cells as i64
                    })
                    .map(|c| c.parameter)
                    .collect()
            };
            Ok(FamilyReport {
                family: f.clone(),
                cells,
                excluded,
                allowed,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CellSearchResult {
    pub solutions: Vec<RingElement>,
    pub families: Vec<FamilyReport>,
    pub universe: usize,
    /// Decorated candidates reaching the double cell bound, in table order.
    pub candidates: Vec<Candidate>,
    pub survivors: Vec<Candidate>,
    pub twins: Vec<(Candidate, Candidate)>,
}

/// Solve, split into families, rule out families, enumerate decorations of the
/// remaining ones and filter.
pub fn run_cell_search(
    ring: &BurnsideRing,
    target: &CharacterTarget,
    k: &SearchConstraints,
) -> Result<CellSearchResult> {
    let solutions = solve_effective(ring, target, None)?;
    let families = rule_out_families(ring, &split_families(ring, &solutions), k)?;
    let mut universe: Vec<(RingElement, i64)> = Vec::new();
    for report in families.iter().filter(|r| !r.excluded) {
        for t in 0..=report.family.max {
            for x in enumerate_decorations(ring, &report.family.member(t))? {
                universe.push((x, t));
            }
        }
    }
    let evaluated: Vec<Candidate> = universe
        .par_iter()
        .map(|(x, t)| evaluate(ring, x, *t))
        .collect::<Result<Vec<_>>>()?;
    let bound = SearchConstraints {
        min_double_cell: k.min_double_cell,
        ..SearchConstraints::default()
    };
    let mut candidates = filter_constraints(&evaluated, &bound);
    let survivors_set = filter_constraints(&candidates, k);
    candidates.sort_by_key(|c| {
        (
            !survivors_set.contains(c),
            c.parameter,
            c.double_cell_size,
            c.primes(ring),
            sort_key(ring, &c.element),
        )
    });
    let survivors: Vec<Candidate> = candidates
        .iter()
        .filter(|c| survivors_set.contains(c))
        .cloned()
        .collect();
    let twins = pair_twins(ring, &survivors)?;
    Ok(CellSearchResult {
        solutions,
        families,
        universe: universe.len(),
        candidates,
        survivors,
        twins,
    })
}

/// Rows `parameter | set | double cell size | partition`, survivors above a rule.
pub fn table3_text(ring: &BurnsideRing, result: &CellSearchResult) -> String {
    let mut out = String::from("eps | set | double cell size | partition into left cells\n");
    let mut ruled = false;
    for c in &result.candidates {
        if !ruled && !result.survivors.contains(c) {
            out.push_str("---\n");
            ruled = true;
        }
        out.push_str(&format!(
            "{} | {} | {} | {}\n",
            c.parameter,
            format_set(ring, &c.element),
            c.double_cell_size,
            format_cell_partition(&c.partition)
        ));
    }
    out
}

pub fn cell_search_json(ring: &BurnsideRing, result: &CellSearchResult) -> Value {
    json!({
        "solutions": result.solutions.iter().map(|s| format_set(ring, s)).collect::<Vec<_>>(),
        "families": result.families.iter().map(|r| json!({
            "base": format_set(ring, &r.family.base),
            "direction": ring.format(&r.family.direction),
            "max": r.family.max,
            "excluded": r.excluded,
            "allowed": r.allowed,
            "fixed_cells": r.cells.iter().map(|c| json!({
                "parameter": c.parameter,
                "probes": c.probes.iter().map(|p| json!({"orbit": p.0, "size": p.1, "multiplicity": p.2})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "universe": result.universe,
        "candidates": result.candidates.iter().map(|c| c.to_json(ring)).collect::<Vec<_>>(),
        "survivors": result.survivors.len(),
        "twins": result.twins.iter().map(|(a, b)| json!([format_set(ring, &a.element), format_set(ring, &b.element)])).collect::<Vec<_>>(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTarget {
    pub label: String,
    pub target: CharacterTarget,
    pub parameter: Option<String>,
}

/// Block targets, the degeneration relation and parameter couplings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicData {
    pub blocks: Vec<BlockTarget>,
    pub degenerations: BTreeMap<String, Vec<String>>,
    pub couplings: BTreeMap<String, Vec<String>>,
}

impl ParabolicData {
    pub fn f4a3() -> Self {
        ParabolicData::parse(F4A3_TARGETS).expect("shipped data parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut data = ParabolicData {
            blocks: Vec::new(),
            degenerations: BTreeMap::new(),
            couplings: BTreeMap::new(),
        };
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: `{line}`", n + 1));
            match words[0] {
                "block" if words.len() >= 3 => {
                    let nums: Vec<&str> = words[2..]
                        .iter()
                        .copied()
                        .take_while(|w| w.parse::<u64>().is_ok())
                        .collect();
                    let rest = &words[2 + nums.len()..];
                    if nums.is_empty() || rest.len() > 1 {
                        return Err(bad());
                    }
                    data.blocks.push(BlockTarget {
                        label: words[1].to_string(),
                        target: CharacterTarget::parse(&nums.join(" "))?,
                        parameter: rest.first().map(|s| s.to_string()),
                    });
                }
                "degenerates" if words.len() >= 2 => {
                    data.degenerations
                        .entry(words[1].to_string())
                        .or_default()
                        .extend(words[2..].iter().map(|s| s.to_string()));
                }
                "couple" if words.len() >= 2 => {
                    data.couplings
                        .entry(words[1].to_string())
                        .or_default()
                        .extend(words[2..].iter().map(|s| s.to_string()));
                }
                _ => return Err(bad()),
            }
        }
        Ok(data)
    }

    /// Blocks in an order where every degeneration comes first.
    pub fn order(&self) -> Result<Vec<usize>> {
        let index: HashMap<&str, usize> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.label.as_str(), i))
            .collect();
        if index.len() != self.blocks.len() {
            return Err(Error::Degeneration("duplicate block label".into()));
        }
        let mut deps = vec![Vec::new(); self.blocks.len()];
        for (from, tos) in &self.degenerations {
            let f = *index
                .get(from.as_str())
                .ok_or_else(|| Error::Degeneration(format!("unknown block {from}")))?;
            for to in tos {
                let t = *index
                    .get(to.as_str())
                    .ok_or_else(|| Error::Degeneration(format!("unknown block {to}")))?;
                if t == f {
                    return Err(Error::Degeneration(format!("{from} degenerates to itself")));
                }
                deps[f].push(t);
            }
        }
        let params: Vec<&str> = self.blocks.iter().filter_map(|b| b.parameter.as_deref()).collect();
        for (label, ps) in &self.couplings {
            if !index.contains_key(label.as_str()) {
                return Err(Error::Degeneration(format!("unknown block {label}")));
            }
            if let Some(p) = ps.iter().find(|p| !params.contains(&p.as_str())) {
                return Err(Error::Degeneration(format!("unknown parameter {p}")));
            }
        }
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; self.blocks.len()];
        let mut order = Vec::new();
        fn visit(
            i: usize,
            deps: &[Vec<usize>],
            state: &mut [u8],
            order: &mut Vec<usize>,
            data: &ParabolicData,
        ) -> Result<()> {
            match state[i] {
                2 => return Ok(()),
                1 => return Err(Error::Degeneration(format!("cycle through {}", data.blocks[i].label))),
                _ => {}
            }
            state[i] = 1;
            for &d in &deps[i] {
                visit(d, deps, state, order, data)?;
            }
            state[i] = 2;
            order.push(i);
            Ok(())
        }
        for i in 0..self.blocks.len() {
            visit(i, &deps, &mut state, &mut order, self)?;
        }
        Ok(order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSolution {
    pub label: String,
    pub target: CharacterTarget,
    pub solutions: Vec<RingElement>,
    /// Set when the solutions form a single family with a named parameter.
    pub family: Option<Family>,
    pub parameter: Option<String>,
    pub coupling: Vec<String>,
}

impl BlockSolution {
    pub fn text(&self, ring: &BurnsideRing) -> String {
        match (&self.family, &self.parameter) {
            (Some(f), Some(p)) => {
                let lower = match self.coupling.len() {
                    0 => String::new(),
                    1 => format!("{} ≤ ", self.coupling[0]),
                    _ => format!("max({}) ≤ ", self.coupling.join(",")),
                };
                format!("{}, {lower}{p} ≤ {}", format_family(ring, f, p), f.max)
            }
            _ if self.solutions.is_empty() => "none".into(),
            _ => self
                .solutions
                .iter()
                .map(|s| format_set(ring, s))
                .collect::<Vec<_>>()
                .join(" | "),
        }
    }

    pub fn to_json(&self, ring: &BurnsideRing) -> Value {
        json!({
            "label": self.label,
            "target": self.target.multiplicities,
            "solutions": self.solutions.iter().map(|s| format_set(ring, s)).collect::<Vec<_>>(),
            "parameter": self.parameter,
            "range": self.family.as_ref().map(|f| [0, f.max]),
            "lower_bound_from": self.coupling,
            "text": self.text(ring),
        })
    }
}

/// `(7+α)<S4> + (6-α)<S3> + α<K1>`.
pub fn format_family(ring: &BurnsideRing, f: &Family, p: &str) -> String {
    let mut idx: Vec<usize> = (0..ring.rank())
        .filter(|&i| f.base.coeff(i) != 0 || f.direction.coeff(i) != 0)
        .collect();
    idx.sort_by_key(|&i| (display_rank(ring, i), ring.basis()[i].frill));
    idx.iter()
        .map(|&i| {
            let (b, d) = (f.base.coeff(i), f.direction.coeff(i));
            let slope = match d.abs() {
                1 => p.to_string(),
                n => format!("{n}{p}"),
            };
            let coef = match (b, d) {
                (1, 0) => String::new(),
                (b, 0) => b.to_string(),
                (0, d) if d > 0 => slope,
                (0, _) => format!("-{slope}"),
                (b, d) => format!("({b}{}{slope})", if d > 0 { "+" } else { "-" }),
            };
            format!("{coef}<{}>", ring.label(i))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn contains(big: &RingElement, small: &RingElement) -> bool {
    small.terms().all(|(i, c)| big.coeff(i) >= c)
}

/// Solves every block; a solution must contain some solution of each block it
/// degenerates to.
pub fn parabolic_families(ring: &BurnsideRing, data: &ParabolicData) -> Result<Vec<BlockSolution>> {
    let order = data.order()?;
    let mut solved: HashMap<&str, Vec<RingElement>> = HashMap::new();
    let mut out: Vec<Option<BlockSolution>> = vec![None; data.blocks.len()];
    let empty = Vec::new();
    for i in order {
        let block = &data.blocks[i];
        let degs = data.degenerations.get(&block.label).unwrap_or(&empty);
        // componentwise minimum per degeneration, then maximum over degenerations
        let mut required = RingElement::zero();
        for d in degs {
            let sols = &solved[d.as_str()];
            for j in 0..ring.rank() {
                let lo = sols.iter().map(|s| s.coeff(j)).min().unwrap_or(0);
                if lo > required.coeff(j) {
                    required.add_term(j, lo - required.coeff(j));
                }
            }
        }
        let solutions: Vec<RingElement> = solve_effective(ring, &block.target, Some(&required))?
            .into_iter()
            .filter(|s| degs.iter().all(|d| solved[d.as_str()].iter().any(|t| contains(s, t))))
            .collect();
        let family = match split_families(ring, &solutions).as_slice() {
            [f] if solutions.len() > 1 && block.parameter.is_some() => Some(f.clone()),
            _ => None,
        };
        solved.insert(block.label.as_str(), solutions.clone());
        out[i] = Some(BlockSolution {
            label: block.label.clone(),
            target: block.target.clone(),
            solutions,
            family,
            parameter: block.parameter.clone(),
            coupling: data.couplings.get(&block.label).cloned().unwrap_or_default(),
        });
    }
    Ok(out.into_iter().map(|b| b.expect("every block is visited")).collect())
}

/// Rows `label | multiplicities | sets`.
pub fn table4_text(ring: &BurnsideRing, blocks: &[BlockSolution]) -> String {
    let mut out = String::from("block | [4] [3,1] [2,2] [2,1,1] [1,1,1,1] | set\n");
    for b in blocks {
        let m: Vec<String> = b.target.multiplicities.iter().map(|m| m.to_string()).collect();
        out.push_str(&format!("{} | {} | {}\n", b.label, m.join(" "), b.text(ring)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor_spec::{builtin_mu, Functor};
    use crate::permgroup::symmetric_group;
    use crate::subgroups::SubgroupClassification;
    use std::sync::Arc;

    fn s4() -> BurnsideRing {
        let cls = Arc::new(SubgroupClassification::new(&symmetric_group(4).unwrap()).unwrap());
        BurnsideRing::new(Functor::new(builtin_mu("S4").unwrap(), cls).unwrap()).unwrap()
    }

    #[test]
    fn trivial_target() {
        let r = s4();
        let sols = solve_effective(&r, &CharacterTarget::parse("1,0,0,0,0").unwrap(), None).unwrap();
        assert_eq!(sols, vec![r.element("S4").unwrap()]);
    }

    #[test]
    fn required_subset() {
        let r = s4();
        let req = r.parse("3*S4 + 4*S3").unwrap();
        let sols = solve_effective(&r, &CharacterTarget::parse("11 9 1 1 0").unwrap(), Some(&req)).unwrap();
        assert_eq!(sols, vec![r.parse("3*S4 + 7*S3 + C2").unwrap()]);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(compositions(0, 3).len(), 1);
    }

    #[test]
    fn decorations_of_y0() {
        let r = s4();
        let y0 = r.parse("15*S4 + 17*S3 + 9*D8 + C2").unwrap();
        let decs = enumerate_decorations(&r, &y0).unwrap();
        assert_eq!(decs.len(), 16 * 10);
        assert_eq!(decs[0], y0);
    }

    #[test]
    fn partition_format() {
        assert_eq!(format_cell_partition(&[151, 153, 153, 179]), "(151,153^2,179)");
        assert_eq!(format_cell_partition(&[]), "()");
    }

    #[test]
    fn single_orbit_partition() {
        let r = s4();
        assert_eq!(left_cell_partition(&r, &r.element("S4").unwrap()).unwrap(), vec![5]);
    }

    #[test]
    fn set_formatting() {
        let r = s4();
        let x = r.parse("S4 + 22*S4' + 9*S3 + D8' + C2 + 8*K1'").unwrap();
        assert_eq!(format_set(&r, &x), "22<S4'> + <S4> + 9<S3> + <D8'> + <C2> + 8<K1'>");
    }

    #[test]
    fn filter_identity_on_empty_constraints() {
        let r = s4();
        let c = evaluate(&r, &r.element("S3").unwrap(), 0).unwrap();
        assert_eq!(
            filter_constraints(std::slice::from_ref(&c), &SearchConstraints::default()),
            vec![c]
        );
    }

    #[test]
    fn pairing_rejects_singletons() {
        let r = s4();
        let c = evaluate(&r, &r.element("S3").unwrap(), 0).unwrap();
        assert!(matches!(pair_twins(&r, &[c]), Err(Error::Unpaired(_))));
    }

    #[test]
    fn degeneration_errors() {
        let cyc = "block A 1 0\nblock B 1 0\ndegenerates A B\ndegenerates B A\n";
        assert!(matches!(
            ParabolicData::parse(cyc).unwrap().order(),
            Err(Error::Degeneration(_))
        ));
        let unknown = "block A 1 0\ndegenerates A C\n";
        assert!(matches!(
            ParabolicData::parse(unknown).unwrap().order(),
            Err(Error::Degeneration(_))
        ));
        assert!(ParabolicData::parse("blok A 1").is_err());
    }

    #[test]
    fn shipped_targets_parse() {
        let d = ParabolicData::f4a3();
        assert_eq!(d.blocks.len(), 12);
        assert_eq!(d.order().unwrap().len(), 12);
        assert_eq!(d.blocks[11].target, CharacterTarget::new(vec![42, 19, 10, 1, 0]));
    }
}

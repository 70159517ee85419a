//! Ordinary characters of symmetric groups, permutation characters and
//! Green function multiplicities.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::permgroup::FiniteGroup;
use crate::subgroups::Subgroup;

/// Green function of the F4(a3) unipotent class, one `dim q_power [partition]` term per line.
pub const F4A3_GREEN: &str = include_str!("../data/f4a3.green");

pub type Partition = Vec<usize>;

/// Partitions of `n` in lexicographically decreasing order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn format_partition(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parse `[a,b,...]`; the result is sorted decreasing.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let t = s.trim();
    let body = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("partition `{s}` must look like [a,b,...]")))?;
    let mut p: Partition = Vec::new();
    for tok in body.split(',') {
        let tok = tok.trim();
        let v: usize = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad part `{tok}` in `{s}`")))?;
        if v == 0 {
            return Err(Error::Parse(format!("zero part in `{s}`")));
        }
        p.push(v);
    }
    p.sort_unstable_by(|a, b| b.cmp(a));
    Ok(p)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Size of the centralizer of an element with cycle type `mu`.
fn z(mu: &[usize]) -> usize {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &m in mu {
        *counts.entry(m).or_insert(0) += 1;
    }
    counts.iter().map(|(&k, &c)| k.pow(c as u32) * factorial(c)).product()
}

struct MurnaghanNakayama {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl MurnaghanNakayama {
    fn value(&mut self, lambda: &[usize], mu: &[usize]) -> i64 {
        let k = lambda.len();
        let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + k - 1 - i).collect();
        self.beta_value(beta, mu)
    }

    fn beta_value(&mut self, beta: Vec<usize>, mu: &[usize]) -> i64 {
        if mu.is_empty() {
            return 1;
        }
        let key = (beta.clone(), mu.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let r = mu[0];
        let mut total = 0;
        for &b in &beta {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            let mut next: Vec<usize> = beta.iter().map(|&c| if c == b { b - r } else { c }).collect();
            next.sort_unstable_by(|a, b| b.cmp(a));
            total += sign * self.beta_value(next, &mu[1..]);
        }
        self.memo.insert(key, total);
        total
    }
}

/// A class function on S_n, one value per cycle type in table column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub n: usize,
    pub values: Vec<i64>,
}

impl Character {
    pub fn zero(n: usize) -> Character {
        Character {
            n,
            values: vec![0; partitions(n).len()],
        }
    }

    pub fn degree(&self) -> i64 {
        self.values[0]
    }

    pub fn add(&self, other: &Character) -> Character {
        Character {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Character {
        Character {
            n: self.n,
            values: self.values.iter().map(|a| a * k).collect(),
        }
    }

    pub fn tensor(&self, other: &Character) -> Character {
        Character {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }
}

/// Irreducible characters of S_n.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    /// Row labels, lexicographically decreasing.
    pub partitions: Vec<Partition>,
    /// Column cycle types, lexicographically increasing.
    pub classes: Vec<Partition>,
    pub class_sizes: Vec<usize>,
    pub values: Vec<Vec<i64>>,
}

pub fn character_table_symmetric(n: usize) -> Result<CharacterTable> {
    if !(1..=6).contains(&n) {
        return Err(Error::OutOfRange(format!("character table degree {n}")));
    }
    let parts = partitions(n);
    let mut classes = parts.clone();
    classes.reverse();
    let class_sizes = classes.iter().map(|mu| factorial(n) / z(mu)).collect();
    let mut mn = MurnaghanNakayama { memo: HashMap::new() };
    let values = parts
        .iter()
        .map(|l| classes.iter().map(|mu| mn.value(l, mu)).collect())
        .collect();
    Ok(CharacterTable {
        n,
        partitions: parts,
        classes,
        class_sizes,
        values,
    })
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        factorial(self.n)
    }

    pub fn row(&self, i: usize) -> Character {
        Character {
            n: self.n,
            values: self.values[i].clone(),
        }
    }

    pub fn class_index(&self, cycle_type: &[usize]) -> Option<usize> {
        self.classes.iter().position(|c| c == cycle_type)
    }

    /// `(1/|G|) sum chi(g) psi(g)` for real-valued class functions.
    pub fn inner_product(&self, a: &Character, b: &Character) -> Result<i64> {
        let s: i64 = (0..self.classes.len())
            .map(|k| self.class_sizes[k] as i64 * a.values[k] * b.values[k])
            .sum();
        let order = self.order() as i64;
        if s % order != 0 {
            return Err(Error::Decomposition(format!(
                "inner product {s}/{order} is not integral"
            )));
        }
        Ok(s / order)
    }
}

/// Multiplicities of the irreducibles (table row order) in `chi`.
pub fn decompose(chi: &Character, table: &CharacterTable) -> Result<Vec<u64>> {
    if chi.n != table.n {
        return Err(Error::Mismatch);
    }
    let mut out = Vec::with_capacity(table.partitions.len());
    for i in 0..table.partitions.len() {
        let m = table.inner_product(chi, &table.row(i))?;
        if m < 0 {
            return Err(Error::Decomposition(format!(
                "negative multiplicity {m} of {}",
                format_partition(&table.partitions[i])
            )));
        }
        out.push(m as u64);
    }
    Ok(out)
}

/// The permutation character of `G` on the cosets of `H`, for `G` the full symmetric group.
pub fn permutation_character(g: &FiniteGroup, h: &Subgroup) -> Result<Character> {
    if !g.is_full_symmetric() {
        return Err(Error::OutOfRange(
            "permutation characters need a full symmetric group".into(),
        ));
    }
    let n = g.degree();
    let mut classes = partitions(n);
    classes.reverse();
    let mut counts = vec![0usize; classes.len()];
    for &x in h.elements() {
        let ct = g.element(x).cycle_type();
        counts[classes
            .iter()
            .position(|c| *c == ct)
            .expect("cycle type is a partition")] += 1;
    }
    let values = classes
        .iter()
        .zip(&counts)
        .map(|(mu, &c)| {
            let size = factorial(n) / z(mu);
            (c * g.order() / (size * h.order())) as i64
        })
        .collect();
    Ok(Character { n, values })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenTerm {
    pub dim: u64,
    pub q_power: u32,
    pub partition: Partition,
    pub label: Option<String>,
}

/// Terms of a Green function, as read from a data file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GreenFunctionData {
    pub terms: Vec<GreenTerm>,
}

impl GreenFunctionData {
    /// One term per line: `dim q_power [partition] [label]`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<GreenFunctionData> {
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Parse(format!("line {}: {m}", lineno + 1));
            let open = line.find('[').ok_or_else(|| err("missing partition"))?;
            let close = line.find(']').ok_or_else(|| err("unclosed partition"))?;
            let head: Vec<&str> = line[..open].split_whitespace().collect();
            if head.len() != 2 {
                return Err(err("expected `dim q_power [partition]`"));
            }
            let dim = head[0].parse().map_err(|_| err("bad dimension"))?;
            let q_power = head[1].parse().map_err(|_| err("bad q power"))?;
            let partition = parse_partition(&line[open..=close])?;
            let tail = line[close + 1..].trim();
            let label = if tail.is_empty() { None } else { Some(tail.to_string()) };
            terms.push(GreenTerm {
                dim,
                q_power,
                partition,
                label,
            });
        }
        Ok(GreenFunctionData { terms })
    }
}

impl fmt::Display for GreenFunctionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            write!(f, "{} {} {}", t.dim, t.q_power, format_partition(&t.partition))?;
            if let Some(l) = &t.label {
                write!(f, " {l}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Total dimension per partition of 4, q-grading summed out.
pub fn green_multiplicities(data: &GreenFunctionData) -> Result<Vec<u64>> {
    let parts = partitions(4);
    let mut out = vec![0u64; parts.len()];
    for t in &data.terms {
        let i = parts
            .iter()
            .position(|p| *p == t.partition)
            .ok_or_else(|| Error::UnknownLabel(format_partition(&t.partition)))?;
        out[i] += t.dim;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{symmetric_group, Permutation};

    #[test]
    fn partition_order() {
        assert_eq!(
            partitions(4),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn s4_table() {
        let t = character_table_symmetric(4).unwrap();
        assert_eq!(t.values[0], vec![1, 1, 1, 1, 1]);
        assert_eq!(t.values[2], vec![2, 0, 2, -1, 0]);
        let degrees: Vec<i64> = t.values.iter().map(|r| r[0]).collect();
        assert_eq!(degrees, vec![1, 3, 2, 3, 1]);
        assert_eq!(degrees.iter().map(|d| d * d).sum::<i64>(), 24);
        assert!(character_table_symmetric(0).is_err());
        assert!(character_table_symmetric(7).is_err());
    }

    #[test]
    fn orthogonality() {
        for n in 1..=6 {
            let t = character_table_symmetric(n).unwrap();
            let k = t.partitions.len();
            for i in 0..k {
                for j in 0..k {
                    let ip = t.inner_product(&t.row(i), &t.row(j)).unwrap();
                    assert_eq!(ip, i64::from(i == j), "rows {i} {j} of S{n}");
                }
            }
            // column orthogonality
            for a in 0..k {
                for b in 0..k {
                    let s: i64 = (0..k).map(|i| t.values[i][a] * t.values[i][b]).sum();
                    let expected = if a == b {
                        (t.order() / t.class_sizes[a]) as i64
                    } else {
                        0
                    };
                    assert_eq!(s, expected);
                }
            }
        }
    }

    fn gen_sub(g: &FiniteGroup, gens: &[&str]) -> Subgroup {
        let idx: Vec<usize> = gens
            .iter()
            .map(|s| g.index_of(&Permutation::parse(s, g.degree()).unwrap()).unwrap())
            .collect();
        Subgroup::generated(g, &idx)
    }

    #[test]
    fn permutation_characters_of_s4() {
        let g = symmetric_group(4).unwrap();
        let t = character_table_symmetric(4).unwrap();
        let cases: [(&[&str], [u64; 5]); 5] = [
            (&["(1,2,3,4)", "(1,3)"], [1, 0, 1, 0, 0]),
            (&["(1,2)"], [1, 2, 1, 1, 0]),
            (&["(1,2)", "(3,4)"], [1, 1, 1, 0, 0]),
            (&["(1,2,3,4)"], [1, 0, 1, 1, 0]),
            (&["(1,2)", "(1,2,3,4)"], [1, 0, 0, 0, 0]),
        ];
        for (gens, expected) in cases {
            let chi = permutation_character(&g, &gen_sub(&g, gens)).unwrap();
            assert_eq!(decompose(&chi, &t).unwrap(), expected, "{gens:?}");
        }
        let whole = Subgroup::whole(&g);
        assert_eq!(permutation_character(&g, &whole).unwrap(), t.row(0));
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let t = character_table_symmetric(4).unwrap();
        let neg = t.row(1).scale(-1);
        assert!(decompose(&neg, &t).is_err());
        let odd = Character {
            n: 4,
            values: vec![1, 0, 0, 0, 0],
        };
        assert!(decompose(&odd, &t).is_err());
        for i in 0..5 {
            let mut unit = vec![0; 5];
            unit[i] = 1;
            assert_eq!(decompose(&t.row(i), &t).unwrap(), unit);
        }
    }

    #[test]
    fn green_data() {
        let d = GreenFunctionData::parse(F4A3_GREEN).unwrap();
        assert_eq!(green_multiplicities(&d).unwrap(), vec![42, 19, 10, 1, 0]);
        let four: u64 = d.terms.iter().filter(|t| t.partition == vec![4]).map(|t| t.dim).sum();
        assert_eq!(four, 12 + 8 + 8 + 9 + 4 + 1);
        assert_eq!(green_multiplicities(&GreenFunctionData::default()).unwrap(), vec![0; 5]);
        let single = GreenFunctionData::parse("9 4 [3,1]").unwrap();
        assert_eq!(green_multiplicities(&single).unwrap(), vec![0, 9, 0, 0, 0]);
        let bad = GreenFunctionData::parse("1 0 [5]").unwrap();
        assert!(green_multiplicities(&bad).is_err());
        assert!(GreenFunctionData::parse("1 [4]").is_err());
        let again = GreenFunctionData::parse(&d.to_string()).unwrap();
        assert_eq!(again, d);
    }
}

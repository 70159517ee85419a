//! The generalised Burnside ring of a coefficient functor: canonical basis,
//! double coset products, marks, duality and twisted Euler characteristics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::characters::{permutation_character, Character};
use crate::error::{Error, Result};
use crate::functor_spec::{format_frill, parse_frill, Frill, Functor};
use crate::subgroups::{double_cosets, Subgroup};

/// `<a, A>` with `A` a class representative and `a` a canonical frill index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub class: usize,
    pub frill: usize,
}

/// A character of the value group of a class, as a residue tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkColumn {
    pub class: usize,
    pub character: Frill,
}

/// A sparse integer combination of basis elements, keyed by basis position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: BTreeMap<usize, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::from_terms([(i, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut x = RingElement::zero();
        for (i, c) in terms {
            x.add_term(i, c);
        }
        x
    }

    pub fn add_term(&mut self, i: usize, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(i).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&i);
        }
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut x = self.clone();
        for (i, c) in other.terms() {
            x.add_term(i, c);
        }
        x
    }

    pub fn scale(&self, k: i64) -> RingElement {
        RingElement::from_terms(self.terms().map(|(i, c)| (i, c * k)))
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.scale(-1))
    }

    /// All coefficients nonnegative.
    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Sum of coefficients.
    pub fn orbit_count(&self) -> i64 {
        self.coeffs.values().sum()
    }
}

/// Extended table of marks with the twisted count column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedMarkTable {
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub values: Vec<Vec<i64>>,
    pub euler: Vec<Option<u64>>,
}

impl ExtendedMarkTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push(',');
        out.push_str(&self.column_labels.join(","));
        out.push_str(",M\n");
        for (r, label) in self.row_labels.iter().enumerate() {
            out.push_str(label);
            for v in &self.values[r] {
                out.push_str(&format!(",{v}"));
            }
            match self.euler[r] {
                Some(m) => out.push_str(&format!(",{m}\n")),
                None => out.push_str(",\n"),
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<ExtendedMarkTable> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty table".into()))?;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < 2 || !cols[0].is_empty() || cols[cols.len() - 1] != "M" {
            return Err(Error::Parse("table header must look like `,labels...,M`".into()));
        }
        let column_labels: Vec<String> = cols[1..cols.len() - 1].iter().map(|s| s.to_string()).collect();
        let (mut row_labels, mut values, mut euler) = (Vec::new(), Vec::new(), Vec::new());
        for line in lines {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != column_labels.len() + 2 {
                return Err(Error::Parse(format!("row `{}` has {} cells", cells[0], cells.len())));
            }
            row_labels.push(cells[0].to_string());
            let row = cells[1..cells.len() - 1]
                .iter()
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad cell `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            values.push(row);
            let m = cells[cells.len() - 1].trim();
            euler.push(if m.is_empty() {
                None
            } else {
                Some(m.parse().map_err(|_| Error::Parse(format!("bad count `{m}`")))?)
            });
        }
        Ok(ExtendedMarkTable {
            row_labels,
            column_labels,
            values,
            euler,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.row_labels,
            "columns": self.column_labels,
            "marks": self.values,
            "M": self.euler,
        })
    }

    pub fn from_json(v: &Value) -> Result<ExtendedMarkTable> {
        let bad = |what: &str| Error::Parse(format!("mark table JSON: bad `{what}`"));
        let strings = |key: &str| -> Result<Vec<String>> {
            v[key]
                .as_array()
                .ok_or_else(|| bad(key))?
                .iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad(key)))
                .collect()
        };
        let values = v["marks"]
            .as_array()
            .ok_or_else(|| bad("marks"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("marks"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("marks")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let euler = v["M"]
            .as_array()
            .ok_or_else(|| bad("M"))?
            .iter()
            .map(|m| m.as_u64())
            .collect();
        Ok(ExtendedMarkTable {
            row_labels: strings("rows")?,
            column_labels: strings("columns")?,
            values,
            euler,
        })
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut head = vec![String::new()];
        head.extend(self.column_labels.iter().cloned());
        head.push("M".into());
        cells.push(head);
        for (r, label) in self.row_labels.iter().enumerate() {
            let mut row = vec![label.clone()];
            row.extend(
                self.values[r]
                    .iter()
                    .map(|v| if *v == 0 { ".".into() } else { v.to_string() }),
            );
            row.push(self.euler[r].map_or(String::new(), |m| m.to_string()));
            cells.push(row);
        }
        let widths: Vec<usize> = (0..cells[0].len())
            .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// The ring `B^Phi(G)` for an abelian coefficient functor, with all
/// structure constants and marks precomputed.
pub struct BurnsideRing {
    functor: Functor,
    basis: Vec<BasisElement>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    position: HashMap<BasisElement, usize>,
    columns: Vec<MarkColumn>,
    column_labels: Vec<String>,
    products: Vec<Vec<RingElement>>,
    marks: Vec<Vec<i64>>,
}

impl fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BurnsideRing").field("basis", &self.labels).finish()
    }
}

fn element_label(class_label: &str, size: usize, v: &[u32]) -> String {
    if v.iter().all(|&x| x == 0) {
        class_label.to_string()
    } else if size == 2 {
        format!("{class_label}'")
    } else {
        format!("{class_label}'[{}]", format_frill(v))
    }
}

impl BurnsideRing {
    /// Validate the functor and build the ring.
    pub fn new(functor: Functor) -> Result<BurnsideRing> {
        let violations = functor.validate();
        if !violations.is_empty() {
            let text: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::Spec(text.join("; ")));
        }
        let cls = functor.classification().clone();
        let standard = cls.has_standard_labels();

        let mut basis = Vec::new();
        let mut columns = Vec::new();
        for c in 0..cls.len() {
            let val = functor.value(c);
            for v in 0..val.size() {
                if functor.canonical_frill(c, v) == v {
                    basis.push(BasisElement { class: c, frill: v });
                }
            }
            for ch in character_orbit_reps(&functor, c) {
                columns.push(MarkColumn {
                    class: c,
                    character: ch,
                });
            }
        }
        let key = |class: usize, nontrivial: bool| {
            if standard {
                (nontrivial as usize, class)
            } else {
                (0, class)
            }
        };
        basis.sort_by_key(|b| (key(b.class, b.frill != 0), b.frill));
        columns.sort_by(|a, b| {
            let ka = key(a.class, a.character.iter().any(|&x| x != 0));
            let kb = key(b.class, b.character.iter().any(|&x| x != 0));
            (ka, &a.character).cmp(&(kb, &b.character))
        });

        let labels: Vec<String> = basis
            .iter()
            .map(|b| {
                let val = functor.value(b.class);
                element_label(&cls.class(b.class).label, val.size(), &val.decode(b.frill))
            })
            .collect();
        let column_labels: Vec<String> = columns
            .iter()
            .map(|c| element_label(&cls.class(c.class).label, functor.value(c.class).size(), &c.character))
            .collect();
        let label_index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let position = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();

        let mut ring = BurnsideRing {
            functor,
            basis,
            labels,
            label_index,
            position,
            columns,
            column_labels,
            products: Vec::new(),
            marks: Vec::new(),
        };
        let n = ring.basis.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let computed: Vec<RingElement> = pairs.par_iter().map(|&(i, j)| ring.basis_product(i, j)).collect();
        let mut products = vec![vec![RingElement::zero(); n]; n];
        for (&(i, j), p) in pairs.iter().zip(computed) {
            products[j][i] = p.clone();
            products[i][j] = p;
        }
        ring.products = products;
        let marks: Vec<Vec<i64>> = (0..n)
            .into_par_iter()
            .map(|b| {
                (0..ring.columns.len())
                    .map(|c| ring.basis_mark(c, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ring.marks = marks;
        Ok(ring)
    }

    pub fn functor(&self) -> &Functor {
        &self.functor
    }

    pub fn group(&self) -> &crate::permgroup::FiniteGroup {
        self.functor.group()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn columns(&self) -> &[MarkColumn] {
        &self.columns
    }

    pub fn column_labels(&self) -> &[String] {
        &self.column_labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn position(&self, b: BasisElement) -> Option<usize> {
        self.position.get(&b).copied()
    }

    /// `<label>` as a ring element.
    pub fn element(&self, label: &str) -> Result<RingElement> {
        self.index_of_label(label)
            .map(RingElement::basis)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `<1, G>`.
    pub fn one(&self) -> RingElement {
        let top = self.functor.classification().len() - 1;
        RingElement::basis(self.position[&BasisElement { class: top, frill: 0 }])
    }

    /// Basis element of a subgroup `h` decorated with `frill` (in `h`'s coordinates).
    pub fn canonicalize(&self, h: &Subgroup, frill: &[u32]) -> Result<BasisElement> {
        let class = self.functor.classification().class_of(h);
        let val = self.functor.value(class);
        if !val.contains(frill) {
            return Err(Error::Spec(format!("frill {frill:?} is not in the value group")));
        }
        Ok(BasisElement {
            class,
            frill: self.functor.canonical_frill(class, val.encode(frill)),
        })
    }

    fn basis_product(&self, i: usize, j: usize) -> RingElement {
        let f = &self.functor;
        let cls = f.classification();
        let g = f.group();
        let (bi, bj) = (self.basis[i], self.basis[j]);
        let a = cls.class(bi.class).rep();
        let b = cls.class(bj.class).rep();
        let mut out = RingElement::zero();
        for x in double_cosets(g, a, b) {
            let xb = b.conjugate(g, x);
            let inter = a.intersection(&xb);
            let ci = cls.class_of(&inter);
            let left = f.restrict_unchecked(a, bi.frill, &inter);
            let pushed = f.push(x, b, bj.frill);
            let right = f.restrict_unchecked(&xb, pushed, &inter);
            let sum = f.value(ci).add_idx(left, right);
            let canon = BasisElement {
                class: ci,
                frill: f.canonical_frill(ci, sum),
            };
            out.add_term(self.position[&canon], 1);
        }
        out
    }

    pub fn basis_product_of(&self, i: usize, j: usize) -> &RingElement {
        &self.products[i][j]
    }

    pub fn multiply(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                for (k, c) in self.products[i][j].terms() {
                    out.add_term(k, a * b * c);
                }
            }
        }
        out
    }

    fn basis_mark(&self, column: usize, row: usize) -> Result<i64> {
        let f = &self.functor;
        let cls = f.classification();
        let g = f.group();
        let col = &self.columns[column];
        let be = self.basis[row];
        let a = cls.class(col.class).rep();
        let b = cls.class(be.class).rep();
        if !cls.includes(col.class, be.class) {
            return Ok(0);
        }
        let val = f.value(col.class);
        let mut total: i64 = 0;
        for x in 0..g.order() {
            let ax = a.conjugate(g, x);
            if !ax.is_subset_of(b) {
                continue;
            }
            let w = f.restrict_unchecked(b, be.frill, &ax);
            let v = f.push(g.inv(x), &ax, w);
            total += sign_of_character(val.cyclic_orders.as_slice(), &col.character, &val.decode(v))
                .ok_or_else(|| Error::UnsupportedCharacter(self.column_labels[column].clone()))?;
        }
        let den = b.order() as i64;
        if total % den != 0 {
            return Err(Error::NonIntegralMark { num: total, den });
        }
        Ok(total / den)
    }

    /// `f_A^alpha(x)` for the given column.
    pub fn mark(&self, column: usize, x: &RingElement) -> i64 {
        x.terms().map(|(i, c)| c * self.marks[i][column]).sum()
    }

    pub fn mark_vector(&self, x: &RingElement) -> Vec<i64> {
        (0..self.columns.len()).map(|c| self.mark(c, x)).collect()
    }

    /// Column position of a class and character tuple, if it is an orbit representative.
    pub fn column_index(&self, class: usize, character: &[u32]) -> Option<usize> {
        self.columns
            .iter()
            .position(|c| c.class == class && c.character == character)
    }

    /// Twisted count of a basis element, if recorded.
    pub fn basis_euler(&self, i: usize) -> Option<u64> {
        let b = self.basis[i];
        self.functor.twisted_count(b.class, b.frill)
    }

    pub fn extended_table_of_marks(&self) -> ExtendedMarkTable {
        ExtendedMarkTable {
            row_labels: self.labels.clone(),
            column_labels: self.column_labels.clone(),
            values: self.marks.clone(),
            euler: (0..self.rank()).map(|i| self.basis_euler(i)).collect(),
        }
    }

    /// Frills inverted, then canonicalized.
    pub fn dual(&self, x: &RingElement) -> RingElement {
        RingElement::from_terms(x.terms().map(|(i, c)| {
            let b = self.basis[i];
            let f = &self.functor;
            let inv = f.value(b.class).neg_idx(b.frill);
            let canon = BasisElement {
                class: b.class,
                frill: f.canonical_frill(b.class, inv),
            };
            (self.position[&canon], c)
        }))
    }

    /// The twisted Euler characteristic: coefficients weighted by twisted counts.
    pub fn euler(&self, x: &RingElement) -> Result<i64> {
        x.terms()
            .map(|(i, c)| {
                self.basis_euler(i)
                    .map(|m| c * m as i64)
                    .ok_or_else(|| Error::MissingTwistedCount(self.labels[i].clone()))
            })
            .sum()
    }

    /// Permutation character of the underlying undecorated set.
    pub fn omega(&self, x: &RingElement) -> Result<Character> {
        let g = self.group();
        let mut chi: Option<Character> = None;
        for (i, c) in x.terms() {
            let rep = self.functor.classification().class(self.basis[i].class).rep();
            let term = permutation_character(g, rep)?.scale(c);
            chi = Some(match chi {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
        match chi {
            Some(c) => Ok(c),
            None => Ok(Character::zero(g.degree())),
        }
    }

    /// `M(dual(m) n)`, the number of simple objects of the functor category.
    pub fn fun_simple_count(&self, m: &RingElement, n: &RingElement) -> Result<i64> {
        if !m.is_effective() || !n.is_effective() {
            return Err(Error::NotEffective);
        }
        self.euler(&self.multiply(&self.dual(m), n))
    }

    /// Forget frills: the image in the classical Burnside ring, by class.
    pub fn underlying(&self, x: &RingElement) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (i, c) in x.terms() {
            *out.entry(self.basis[i].class).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Whether every frill is trivial.
    pub fn is_undecorated(&self, x: &RingElement) -> bool {
        x.terms().all(|(i, _)| self.basis[i].frill == 0)
    }

    pub fn mark_matrix(&self) -> &[Vec<i64>] {
        &self.marks
    }

    /// Exact determinant of the square mark matrix.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.columns.len() != self.rank() {
            return Err(Error::Singular);
        }
        Ok(bareiss(&self.marks))
    }

    /// The element whose mark vector is `marks`, if it has integer coefficients.
    pub fn solve_marks(&self, marks: &[i64]) -> Result<RingElement> {
        let n = self.rank();
        if self.columns.len() != n || marks.len() != n {
            return Err(Error::Singular);
        }
        // rows of the mark matrix are basis elements: solve x^T M = marks
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|c| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|r| BigRational::from_integer(self.marks[r][c].into()))
                    .collect();
                row.push(BigRational::from_integer(marks[c].into()));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &p;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *v = &*v - &factor * p;
                    }
                }
            }
        }
        let mut out = RingElement::zero();
        for (i, row) in a.iter().enumerate() {
            let v = &row[n];
            if !v.is_integer() {
                return Err(Error::NonIntegralMark {
                    num: v.numer().to_i64().unwrap_or(0),
                    den: v.denom().to_i64().unwrap_or(0),
                });
            }
            out.add_term(i, v.to_integer().to_i64().ok_or(Error::Singular)?);
        }
        Ok(out)
    }

    /// Product computed through marks: componentwise multiplication, then inversion.
    pub fn multiply_via_marks(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        let prod: Vec<i64> = self
            .mark_vector(x)
            .iter()
            .zip(self.mark_vector(y))
            .map(|(a, b)| a * b)
            .collect();
        self.solve_marks(&prod)
    }

    /// Render as `21*S4 + 6*K1'`, in basis order.
    pub fn format(&self, x: &RingElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (i, c)) in x.terms().enumerate() {
            let label = &self.labels[i];
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if abs == 1 {
                out.push_str(label);
            } else {
                out.push_str(&format!("{abs}*{label}"));
            }
        }
        out
    }

    /// Angle-bracket rendering `21<S4> + 6<K1'>`.
    pub fn format_angle(&self, x: &RingElement) -> String {
        let mut parts = Vec::new();
        for (i, c) in x.terms() {
            let l = &self.labels[i];
            parts.push(if c == 1 { format!("<{l}>") } else { format!("{c}<{l}>") });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Parse `21*S4 + 6*K1' - S3`. A bare `1` is the trivial subgroup.
    pub fn parse(&self, text: &str) -> Result<RingElement> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(RingElement::zero());
        }
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut current = String::new();
        let mut sign = 1;
        let mut depth = 0;
        for ch in compact.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    current.push(ch);
                }
                ']' => {
                    depth -= 1;
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if !current.is_empty() {
                        terms.push((sign, std::mem::take(&mut current)));
                    }
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => current.push(ch),
            }
        }
        if !current.is_empty() {
            terms.push((sign, current));
        }
        let mut out = RingElement::zero();
        for (s, term) in terms {
            let (coef, label) = match term.split_once('*') {
                Some((c, l)) => (
                    c.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?,
                    l,
                ),
                None => (1, term.as_str()),
            };
            let label = label.trim_start_matches('<').trim_end_matches('>');
            let i = self.resolve_label(label)?;
            out.add_term(i, s * coef);
        }
        Ok(out)
    }

    fn resolve_label(&self, label: &str) -> Result<usize> {
        if let Some(i) = self.index_of_label(label) {
            return Ok(i);
        }
        // a non-canonical frill tuple such as K2'[0,1]
        if let Some((class_label, rest)) = label.split_once("'[") {
            let frill = parse_frill(rest.trim_end_matches(']'))?;
            let cls = self.functor.classification();
            let c = cls
                .class_by_label(class_label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            let rep = cls.class(c).rep().clone();
            let b = self.canonicalize(&rep, &frill)?;
            return self.position(b).ok_or_else(|| Error::UnknownLabel(label.to_string()));
        }
        Err(Error::UnknownLabel(label.to_string()))
    }

    /// `{label: coefficient}`.
    pub fn to_json(&self, x: &RingElement) -> Value {
        let map: serde_json::Map<String, Value> = x.terms().map(|(i, c)| (self.labels[i].clone(), json!(c))).collect();
        Value::Object(map)
    }

    pub fn from_json(&self, v: &Value) -> Result<RingElement> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("expected a label:coefficient map".into()))?;
        let mut out = RingElement::zero();
        for (label, c) in obj {
            let c = c
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("bad coefficient for {label}")))?;
            out.add_term(self.resolve_label(label)?, c);
        }
        Ok(out)
    }
}

/// `+1` or `-1` for a character taking the value `exp(2 pi i sum c_j v_j / o_j)`.
fn sign_of_character(orders: &[u32], character: &[u32], v: &[u32]) -> Option<i64> {
    let l: u64 = orders
        .iter()
        .fold(1u64, |acc, &o| crate::permgroup::lcm(acc as usize, o as usize) as u64);
    let phase: u64 = orders
        .iter()
        .zip(character)
        .zip(v)
        .map(|((&o, &c), &x)| c as u64 * x as u64 * (l / o as u64))
        .sum::<u64>()
        % l;
    if phase == 0 {
        Some(1)
    } else if 2 * phase == l {
        Some(-1)
    } else {
        None
    }
}

/// Orbit representatives of characters of the value group under the normalizer.
fn character_orbit_reps(f: &Functor, class: usize) -> Vec<Frill> {
    let val = f.value(class);
    let size = val.size();
    if size == 1 {
        return vec![val.zero()];
    }
    let l: u64 = val
        .cyclic_orders
        .iter()
        .fold(1u64, |acc, &o| crate::permgroup::lcm(acc as usize, o as usize) as u64);
    let phase = |c: &[u32], v: &[u32]| -> u64 {
        val.cyclic_orders
            .iter()
            .zip(c)
            .zip(v)
            .map(|((&o, &ci), &x)| ci as u64 * x as u64 * (l / o as u64))
            .sum::<u64>()
            % l
    };
    let table: Vec<Vec<u64>> = (0..size)
        .map(|c| (0..size).map(|v| phase(&val.decode(c), &val.decode(v))).collect())
        .collect();
    let g = f.group();
    let norm = f.classification().class(class).normalizer.clone();
    let mut orbit_min = vec![usize::MAX; size];
    for c in 0..size {
        if orbit_min[c] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        for &n in norm.elements() {
            let ninv = g.inv(n);
            // (n . alpha)(v) = alpha(n^-1 . v)
            let values: Vec<u64> = (0..size).map(|v| table[c][f.act(class, ninv, v)]).collect();
            let image = table
                .iter()
                .position(|row| *row == values)
                .expect("characters are closed under the action");
            orbit.push(image);
        }
        let m = *orbit.iter().min().expect("nonempty orbit");
        for o in orbit {
            orbit_min[o] = m;
        }
    }
    (0..size)
        .filter(|&c| orbit_min[c] == c)
        .map(|c| val.decode(c))
        .collect()
}

fn bareiss(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

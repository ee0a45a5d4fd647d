//! Finite sets and tabulated functions.
//!
//! This is the enrichment base: every hom-object anywhere in the crate is a
//! [`FinSet`], and every structure map between hom-objects is a [`FinFn`].
//! Elements are dense indices `0..size`; labels are display-only and ignored
//! by equality and hashing, so values are canonical and hashable.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A finite set with elements `0..size` and optional display labels.
#[derive(Clone, Debug, Default)]
pub struct FinSet {
    size: usize,
    labels: Option<Arc<Vec<String>>>,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, labels: None }
    }

    /// A set labelled by the given strings; labels must be pairwise distinct.
    pub fn labeled(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::Validation(format!("duplicate label {l:?}")));
            }
        }
        Ok(FinSet {
            size: labels.len(),
            labels: Some(Arc::new(labels)),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn elems(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn elem_name(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) if i < ls.len() => ls[i].clone(),
            _ => i.to_string(),
        }
    }
}

// Labels are cosmetic: the base is skeletal, so sets of equal size are equal.
impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}
impl Eq for FinSet {}
impl Hash for FinSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.size)
    }
}

/// A function between finite sets, tabulated on every domain element.
#[derive(Clone, Debug)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    table: Arc<Vec<usize>>,
}

impl FinFn {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(Error::Structural(format!(
                "table length {} does not match domain {dom}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::Structural(format!(
                "table entry {bad} out of range for codomain {cod}"
            )));
        }
        Ok(FinFn {
            dom,
            cod,
            table: Arc::new(table),
        })
    }

    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table: Vec<usize> = dom.elems().map(f).collect();
        FinFn::new(dom, cod, table)
    }

    pub fn identity(set: &FinSet) -> Self {
        FinFn {
            dom: set.clone(),
            cod: set.clone(),
            table: Arc::new(set.elems().collect()),
        }
    }

    pub fn constant(dom: FinSet, cod: FinSet, value: usize) -> Result<Self> {
        if value >= cod.size() {
            return Err(Error::Structural(format!(
                "constant value {value} out of range for codomain {cod}"
            )));
        }
        let n = dom.size();
        Ok(FinFn {
            dom,
            cod,
            table: Arc::new(vec![value; n]),
        })
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn eval(&self, x: usize) -> usize {
        self.table[x]
    }

    /// True iff the table has no repeated entries. The unique map out of the
    /// empty set is injective vacuously.
    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        for &v in self.table.iter() {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Result<FinFn> {
        if !self.is_bijective() {
            return Err(Error::Structural(format!("{self} is not a bijection")));
        }
        let mut table = vec![0; self.dom.size()];
        for (x, &v) in self.table.iter().enumerate() {
            table[v] = x;
        }
        FinFn::new(self.cod.clone(), self.dom.clone(), table)
    }
}

impl PartialEq for FinFn {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.table == other.table
    }
}
impl Eq for FinFn {}
impl Hash for FinFn {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dom.hash(state);
        self.cod.hash(state);
        self.table.hash(state);
    }
}
impl PartialOrd for FinFn {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FinFn {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dom.size(), self.cod.size(), &*self.table).cmp(&(
            other.dom.size(),
            other.cod.size(),
            &*other.table,
        ))
    }
}

impl fmt::Display for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}→{} {:?}",
            self.dom,
            self.cod,
            self.table.as_slice()
        )
    }
}

/// g∘f, defined when `f.cod = g.dom`.
pub fn compose(g: &FinFn, f: &FinFn) -> Result<FinFn> {
    if f.cod() != g.dom() {
        return Err(Error::Structural(format!(
            "cannot compose: middle sets differ ({} vs {})",
            f.cod(),
            g.dom()
        )));
    }
    let table: Vec<usize> = f.table.iter().map(|&x| g.table[x]).collect();
    Ok(FinFn {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table: Arc::new(table),
    })
}

/// Encode coordinates into a product index, leftmost factor most significant.
pub fn encode_tuple(sizes: &[usize], coords: &[usize]) -> usize {
    debug_assert_eq!(sizes.len(), coords.len());
    let mut idx = 0;
    for (s, c) in sizes.iter().zip(coords) {
        debug_assert!(c < s);
        idx = idx * s + c;
    }
    idx
}

/// Decode a product index into its coordinates.
pub fn decode_tuple(sizes: &[usize], mut idx: usize) -> Vec<usize> {
    let mut coords = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        coords[k] = idx % sizes[k];
        idx /= sizes[k];
    }
    coords
}

/// Cartesian product of finite sets in lexicographic element order, together
/// with its projections. The empty product is the one-element set.
pub fn product(factors: &[FinSet]) -> (FinSet, Vec<FinFn>) {
    let sizes: Vec<usize> = factors.iter().map(|s| s.size()).collect();
    let total: usize = sizes.iter().product();
    let prod = FinSet::new(total);
    let mut projections = Vec::with_capacity(factors.len());
    let mut stride: Vec<usize> = vec![1; factors.len()];
    for k in (0..factors.len().saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * sizes[k + 1];
    }
    for (k, factor) in factors.iter().enumerate() {
        let table: Vec<usize> = (0..total).map(|e| (e / stride[k]) % sizes[k]).collect();
        projections.push(FinFn {
            dom: prod.clone(),
            cod: factor.clone(),
            table: Arc::new(table),
        });
    }
    (prod, projections)
}

/// The pairing `⟨f_1, …, f_k⟩` of maps with a common domain into the product
/// of their codomains.
pub fn pairing(maps: &[FinFn]) -> Result<FinFn> {
    let dom = match maps.first() {
        Some(f) => f.dom().clone(),
        None => {
            return Err(Error::Structural("pairing of zero maps is ambiguous".into()));
        }
    };
    if maps.iter().any(|f| f.dom() != &dom) {
        return Err(Error::Structural("pairing requires a common domain".into()));
    }
    let sizes: Vec<usize> = maps.iter().map(|f| f.cod().size()).collect();
    let (prod, _) = product(&maps.iter().map(|f| f.cod().clone()).collect::<Vec<_>>());
    let table: Vec<usize> = dom
        .elems()
        .map(|x| {
            let coords: Vec<usize> = maps.iter().map(|f| f.eval(x)).collect();
            encode_tuple(&sizes, &coords)
        })
        .collect();
    FinFn::new(dom, prod, table)
}

/// The subset `{x | f(x) = g(x)}` in increasing index order, with its
/// inclusion into the common domain.
pub fn equalizer(f: &FinFn, g: &FinFn) -> Result<(FinSet, FinFn)> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::Structural(format!(
            "equalizer requires parallel maps, got {f} and {g}"
        )));
    }
    let selected: Vec<usize> = f
        .dom()
        .elems()
        .filter(|&x| f.eval(x) == g.eval(x))
        .collect();
    subset_inclusion(f.dom(), &selected)
}

/// A subset of `ambient` given by increasing element indices, with inclusion.
pub fn subset_inclusion(ambient: &FinSet, selected: &[usize]) -> Result<(FinSet, FinFn)> {
    let mut last: Option<usize> = None;
    for &x in selected {
        if x >= ambient.size() {
            return Err(Error::Structural(format!(
                "subset element {x} outside ambient {ambient}"
            )));
        }
        if let Some(p) = last {
            if x <= p {
                return Err(Error::Structural("subset indices must be increasing".into()));
            }
        }
        last = Some(x);
    }
    let labels = selected
        .iter()
        .map(|&x| ambient.elem_name(x))
        .collect::<Vec<_>>();
    let sub = if ambient.size() == selected.len() && selected.iter().copied().eq(ambient.elems()) {
        ambient.clone()
    } else {
        FinSet::labeled(labels).unwrap_or_else(|_| FinSet::new(selected.len()))
    };
    let incl = FinFn::new(sub.clone(), ambient.clone(), selected.to_vec())?;
    Ok((sub, incl))
}

/// Number of functions `A → B`, with the empty-domain convention `|B|^0 = 1`.
pub fn count_functions(dom_size: usize, cod_size: usize) -> usize {
    let mut n = 1usize;
    for _ in 0..dom_size {
        n = n.checked_mul(cod_size).expect("function count overflow");
    }
    n
}

/// All functions `A → B` in the stable order that reads each table as a
/// base-`|B|` numeral, most significant digit at index 0.
pub fn all_functions(a: &FinSet, b: &FinSet) -> Vec<FinFn> {
    let total = count_functions(a.size(), b.size());
    (0..total)
        .map(|k| fn_from_index(a, b, k))
        .collect()
}

/// The index of a function in the `all_functions` order.
pub fn fn_index(f: &FinFn) -> usize {
    let b = f.cod().size();
    f.table().iter().fold(0, |acc, &d| acc * b + d)
}

/// The function at position `idx` of the `all_functions` order.
pub fn fn_from_index(a: &FinSet, b: &FinSet, idx: usize) -> FinFn {
    let table = decode_tuple(&vec![b.size(); a.size()], idx);
    FinFn {
        dom: a.clone(),
        cod: b.clone(),
        table: Arc::new(table),
    }
}

/// All permutations of `{0..n}` as functions, in lexicographic one-line
/// order. The identity comes first.
pub fn symmetric_group(n: usize) -> Vec<FinFn> {
    let set = FinSet::new(n);
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(FinFn {
            dom: set.clone(),
            cod: set.clone(),
            table: Arc::new(current.clone()),
        });
        // next_permutation in lexicographic order
        let mut i = n;
        let done = loop {
            if i < 2 {
                break true;
            }
            i -= 1;
            if current[i - 1] < current[i] {
                break false;
            }
        };
        if done {
            break;
        }
        let mut j = n - 1;
        while current[j] <= current[i - 1] {
            j -= 1;
        }
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation table (its position in the
/// `symmetric_group` order), via the factorial number system.
pub fn perm_rank(table: &[usize]) -> usize {
    let n = table.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = table[i + 1..].iter().filter(|&&v| v < table[i]).count();
        rank += smaller * factorial(n - 1 - i);
    }
    rank
}

/// Decompose a permutation into adjacent transpositions `s_j = (j, j+1)`
/// (0-based `j`), such that `σ = s_{w[k-1]} ∘ … ∘ s_{w[0]}` as functions.
pub fn adjacent_transpositions(table: &[usize]) -> Vec<usize> {
    let mut t = table.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(j) = (0..t.len().saturating_sub(1)).find(|&j| t[j] > t[j + 1]) else {
            break;
        };
        t.swap(j, j + 1); // t := t ∘ s_j
        word.push(j);
    }
    // t ∘ s_{w0} ∘ s_{w1} ∘ … = id, so σ = s_{w(last)} ∘ … ∘ s_{w0};
    // reverse so the returned word reads left-to-right as outermost-first.
    word.reverse();
    word
}

/// Memo table from permutation tables to their ranks, for one arity.
pub fn perm_rank_map(n: usize) -> BTreeMap<Vec<usize>, usize> {
    symmetric_group(n)
        .iter()
        .enumerate()
        .map(|(k, p)| (p.table().to_vec(), k))
        .collect()
}

//! Set-enriched categories behind one interface.
//!
//! Two backends implement [`Category`]: explicit finite tables
//! ([`TableCategory`]), and rule-computed instances whose hom-sets are
//! enumerated on demand (see the `instances` module). Morphisms are referred
//! to by their index in the hom-set enumeration; composition is an oracle on
//! indices. Axiom checks are bounded-exhaustive and always echo their bound.

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// An object identifier. Its meaning is owned by the backend: a roster index
/// for table categories, a size for the skeletal set-based instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Obj(pub usize);

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite or rule-computed category. Hom-sets are deterministic: repeated
/// enumeration yields the same morphisms in the same order, so morphism
/// indices are stable and hom-sets may be cached freely.
pub trait Category {
    fn cat_name(&self) -> String;

    /// The finite roster of objects this backend exposes for exhaustive
    /// checks. Computable backends may admit objects beyond the roster.
    fn objects(&self) -> Vec<Obj>;

    /// Whether `x` denotes a valid object, including ones outside the roster.
    fn contains_obj(&self, x: Obj) -> bool {
        self.objects().contains(&x)
    }

    fn object_name(&self, x: Obj) -> String {
        x.to_string()
    }

    /// The hom-set from `a` to `b` as a finite set of morphism indices.
    fn hom(&self, a: Obj, b: Obj) -> FinSet;

    /// Index of the identity in `hom(a, a)`.
    fn identity(&self, a: Obj) -> usize;

    /// Composition oracle: `g∘f` for `f ∈ hom(a,b)`, `g ∈ hom(b,c)`.
    fn compose(&self, a: Obj, b: Obj, c: Obj, g: usize, f: usize) -> usize;

    /// For set-like backends: the underlying table of a morphism, one value
    /// per underlying element of `a`. `None` when morphisms have no element
    /// structure (thin and table backends).
    fn hom_table(&self, _a: Obj, _b: Obj, _idx: usize) -> Option<Vec<usize>> {
        None
    }

    /// Inverse of `hom_table`.
    fn hom_from_table(&self, _a: Obj, _b: Obj, _table: &[usize]) -> Option<usize> {
        None
    }

    /// For set-like backends: the number of underlying elements of `x`.
    fn underlying_size(&self, _x: Obj) -> Option<usize> {
        None
    }
}

/// A category given by explicit finite tables, fully checkable.
#[derive(Clone, Debug)]
pub struct TableCategory {
    names: Vec<String>,
    hom_sizes: Vec<Vec<usize>>,
    identities: Vec<usize>,
    // comp[a][b][c][g][f] flattened: keyed by (a,b,c), table[g][f]
    comp: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
}

impl TableCategory {
    pub fn new(
        names: Vec<String>,
        hom_sizes: Vec<Vec<usize>>,
        identities: Vec<usize>,
        comp: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = names.len();
        if hom_sizes.len() != n || hom_sizes.iter().any(|row| row.len() != n) {
            return Err(Error::Validation("hom size table must be n×n".into()));
        }
        if identities.len() != n {
            return Err(Error::Validation("one identity index per object required".into()));
        }
        for (a, &id) in identities.iter().enumerate() {
            if id >= hom_sizes[a][a] {
                return Err(Error::Validation(format!(
                    "identity index {id} out of range for hom({a},{a})"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let table = comp.get(&(a, b, c)).ok_or_else(|| {
                        Error::Validation(format!("missing composition table ({a},{b},{c})"))
                    })?;
                    if table.len() != hom_sizes[b][c]
                        || table.iter().any(|row| row.len() != hom_sizes[a][b])
                    {
                        return Err(Error::Validation(format!(
                            "composition table ({a},{b},{c}) has wrong shape"
                        )));
                    }
                    if table.iter().flatten().any(|&v| v >= hom_sizes[a][c]) {
                        return Err(Error::Validation(format!(
                            "composition table ({a},{b},{c}) has out-of-range entry"
                        )));
                    }
                }
            }
        }
        Ok(TableCategory {
            names,
            hom_sizes,
            identities,
            comp,
        })
    }

    /// Overwrite one composition entry. Intended for fault-injection tests;
    /// the result may no longer be a category.
    pub fn corrupt_composition(&mut self, a: usize, b: usize, c: usize, g: usize, f: usize, v: usize) {
        let table = self.comp.get_mut(&(a, b, c)).expect("composition table");
        table[g][f] = v;
    }
}

impl Category for TableCategory {
    fn cat_name(&self) -> String {
        format!("table category on {} objects", self.names.len())
    }

    fn objects(&self) -> Vec<Obj> {
        (0..self.names.len()).map(Obj).collect()
    }

    fn contains_obj(&self, x: Obj) -> bool {
        x.0 < self.names.len()
    }

    fn object_name(&self, x: Obj) -> String {
        self.names[x.0].clone()
    }

    fn hom(&self, a: Obj, b: Obj) -> FinSet {
        FinSet::new(self.hom_sizes[a.0][b.0])
    }

    fn identity(&self, a: Obj) -> usize {
        self.identities[a.0]
    }

    fn compose(&self, a: Obj, b: Obj, c: Obj, g: usize, f: usize) -> usize {
        self.comp[&(a.0, b.0, c.0)][g][f]
    }
}

/// One located violation found by a checker. `code` is stable and
/// machine-readable; `message` names the witness.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub code: String,
    pub message: String,
}

impl Violation {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        Violation {
            code: code.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.code, self.message)
    }
}

/// Report of a bounded-exhaustive category-axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct CategoryReport {
    pub category: String,
    pub probe_bound: usize,
    pub objects_probed: Vec<String>,
    pub violations: Vec<Violation>,
}

impl CategoryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively check identity and associativity laws over the roster,
/// truncated to `probe_bound` objects. Violations are report content, never
/// errors.
pub fn check_category_axioms(cat: &dyn Category, probe_bound: usize) -> CategoryReport {
    let mut roster = cat.objects();
    roster.truncate(probe_bound);
    let mut violations = Vec::new();

    for &a in &roster {
        for &b in &roster {
            let hom_ab = cat.hom(a, b);
            let id_a = cat.identity(a);
            let id_b = cat.identity(b);
            for f in hom_ab.elems() {
                if cat.compose(a, b, b, id_b, f) != f {
                    violations.push(Violation::new(
                        "unit-left",
                        format!(
                            "id∘f ≠ f for f = {f} in hom({}, {})",
                            cat.object_name(a),
                            cat.object_name(b)
                        ),
                    ));
                }
                if cat.compose(a, a, b, f, id_a) != f {
                    violations.push(Violation::new(
                        "unit-right",
                        format!(
                            "f∘id ≠ f for f = {f} in hom({}, {})",
                            cat.object_name(a),
                            cat.object_name(b)
                        ),
                    ));
                }
            }
        }
    }

    for &a in &roster {
        for &b in &roster {
            for &c in &roster {
                for &d in &roster {
                    let nf = cat.hom(a, b).size();
                    let ng = cat.hom(b, c).size();
                    let nh = cat.hom(c, d).size();
                    for f in 0..nf {
                        for g in 0..ng {
                            let gf = cat.compose(a, b, c, g, f);
                            for h in 0..nh {
                                let hg = cat.compose(b, c, d, h, g);
                                let lhs = cat.compose(a, c, d, h, gf);
                                let rhs = cat.compose(a, b, d, hg, f);
                                if lhs != rhs {
                                    violations.push(Violation::new(
                                        "associativity",
                                        format!(
                                            "(h∘g)∘f ≠ h∘(g∘f) at f={f}:{}→{}, g={g}:{}→{}, h={h}:{}→{}",
                                            cat.object_name(a),
                                            cat.object_name(b),
                                            cat.object_name(b),
                                            cat.object_name(c),
                                            cat.object_name(c),
                                            cat.object_name(d)
                                        ),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    CategoryReport {
        category: cat.cat_name(),
        probe_bound,
        objects_probed: roster.iter().map(|&x| cat.object_name(x)).collect(),
        violations,
    }
}

/// A functor given by its object map and one hom-set function per hom.
#[derive(Clone, Debug)]
pub struct FunctorData {
    pub object_map: BTreeMap<Obj, Obj>,
    pub hom_maps: BTreeMap<(Obj, Obj), FinFn>,
}

impl FunctorData {
    pub fn identity(cat: &dyn Category, roster: &[Obj]) -> Self {
        let object_map = roster.iter().map(|&x| (x, x)).collect();
        let mut hom_maps = BTreeMap::new();
        for &a in roster {
            for &b in roster {
                hom_maps.insert((a, b), FinFn::identity(&cat.hom(a, b)));
            }
        }
        FunctorData {
            object_map,
            hom_maps,
        }
    }
}

/// Report of a functor-axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct FunctorReport {
    pub source: String,
    pub target: String,
    pub probe_bound: usize,
    pub violations: Vec<Violation>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that `fun` preserves identities and composition on the source
/// roster, truncated to `probe_bound` objects. An object map leaving the
/// target is a structural error, not a violation.
pub fn check_functor(
    fun: &FunctorData,
    source: &dyn Category,
    target: &dyn Category,
    probe_bound: usize,
) -> Result<FunctorReport> {
    let mut roster = source.objects();
    roster.truncate(probe_bound);
    for &x in &roster {
        let fx = *fun.object_map.get(&x).ok_or_else(|| {
            Error::Structural(format!("functor object map undefined at {}", source.object_name(x)))
        })?;
        if !target.contains_obj(fx) {
            return Err(Error::Structural(format!(
                "functor object map sends {} outside the target category",
                source.object_name(x)
            )));
        }
    }
    let hom_map = |a: Obj, b: Obj| -> Result<&FinFn> {
        fun.hom_maps.get(&(a, b)).ok_or_else(|| {
            Error::Structural(format!(
                "functor hom map undefined on hom({}, {})",
                source.object_name(a),
                source.object_name(b)
            ))
        })
    };

    let mut violations = Vec::new();
    for &a in &roster {
        let fa = fun.object_map[&a];
        let fmap = hom_map(a, a)?;
        if fmap.eval(source.identity(a)) != target.identity(fa) {
            violations.push(Violation::new(
                "functor-identity",
                format!("identity of {} not preserved", source.object_name(a)),
            ));
        }
    }
    for &a in &roster {
        for &b in &roster {
            for &c in &roster {
                let (fa, fb, fc) = (
                    fun.object_map[&a],
                    fun.object_map[&b],
                    fun.object_map[&c],
                );
                let m_ab = hom_map(a, b)?;
                let m_bc = hom_map(b, c)?;
                let m_ac = hom_map(a, c)?;
                for f in source.hom(a, b).elems() {
                    for g in source.hom(b, c).elems() {
                        let lhs = m_ac.eval(source.compose(a, b, c, g, f));
                        let rhs = target.compose(fa, fb, fc, m_bc.eval(g), m_ab.eval(f));
                        if lhs != rhs {
                            violations.push(Violation::new(
                                "functor-composition",
                                format!(
                                    "F(g∘f) ≠ F(g)∘F(f) at f={f}:{}→{}, g={g}:{}→{}",
                                    source.object_name(a),
                                    source.object_name(b),
                                    source.object_name(b),
                                    source.object_name(c)
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }

    Ok(FunctorReport {
        source: source.cat_name(),
        target: target.cat_name(),
        probe_bound,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The poset {0 ≤ 1 ≤ 2} as a table category.
    pub(crate) fn chain3_table() -> TableCategory {
        let names = vec!["0".into(), "1".into(), "2".into()];
        let hom = |a: usize, b: usize| usize::from(a <= b);
        let hom_sizes: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| hom(a, b)).collect()).collect();
        let mut comp = BTreeMap::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let table = vec![vec![0; hom(a, b)]; hom(b, c)];
                    comp.insert((a, b, c), table);
                }
            }
        }
        TableCategory::new(names, hom_sizes, vec![0, 0, 0], comp).unwrap()
    }

    #[test]
    fn chain_passes_axioms() {
        let cat = chain3_table();
        let report = check_category_axioms(&cat, 10);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn corrupted_composition_is_located() {
        // a table with hom sizes > 1 so corruption has room: one object,
        // hom = Z/2 under addition (a one-object groupoid)
        let names = vec!["*".into()];
        let hom_sizes = vec![vec![2]];
        let mut comp = BTreeMap::new();
        comp.insert((0, 0, 0), vec![vec![0, 1], vec![1, 0]]);
        let mut cat = TableCategory::new(names, hom_sizes, vec![0], comp).unwrap();
        assert!(check_category_axioms(&cat, 1).passed());

        cat.corrupt_composition(0, 0, 0, 0, 1, 0); // id∘1 := 0, breaking unitality
        let report = check_category_axioms(&cat, 1);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.code == "unit-left"));
        // exactly the corrupted entry is implicated: every reported witness
        // mentions the broken composite
        assert!(report
            .violations
            .iter()
            .all(|v| v.code == "associativity" || v.code.starts_with("unit")));
    }

    #[test]
    fn identity_functor_passes() {
        let cat = chain3_table();
        let f = FunctorData::identity(&cat, &cat.objects());
        let report = check_functor(&f, &cat, &cat, 10).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn corrupted_functor_fails_with_witness() {
        // one-object groupoid Z/2 again; functor swapping the two morphisms
        // of hom(*,*) without being a homomorphism on identities
        let names = vec!["*".into()];
        let hom_sizes = vec![vec![2]];
        let mut comp = BTreeMap::new();
        comp.insert((0, 0, 0), vec![vec![0, 1], vec![1, 0]]);
        let cat = TableCategory::new(names, hom_sizes, vec![0], comp).unwrap();
        let mut fun = FunctorData::identity(&cat, &cat.objects());
        fun.hom_maps.insert(
            (Obj(0), Obj(0)),
            FinFn::new(FinSet::new(2), FinSet::new(2), vec![1, 0]).unwrap(),
        );
        let report = check_functor(&fun, &cat, &cat, 1).unwrap();
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.code == "functor-identity"));
    }

    #[test]
    fn functor_leaving_target_is_structural_error() {
        let cat = chain3_table();
        let mut fun = FunctorData::identity(&cat, &cat.objects());
        fun.object_map.insert(Obj(0), Obj(99));
        assert!(check_functor(&fun, &cat, &cat, 10).is_err());
    }
}

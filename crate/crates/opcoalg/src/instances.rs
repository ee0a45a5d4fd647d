//! Concrete semicartesian symmetric monoidal instances.
//!
//! Three backends, all skeletal with strict tensor normal forms:
//!
//! * [`LatticeInstance`]: a finite meet-semilattice with top; thin,
//!   Cartesian, isomorphically projecting.
//! * [`PointedSetsInstance`]: skeleton of pointed sets under wedge sum;
//!   monically but not isomorphically projecting. The size bound `B` fixes
//!   the roster for exhaustive claims; hom-sets, tensors and cotensors are
//!   computed on demand for objects of any size, since carriers of comonads
//!   routinely leave the roster.
//! * [`FinSetsCartesianInstance`]: finite sets under Cartesian product,
//!   isomorphically projecting. Here the size cap is hard: products that
//!   would exceed it raise bound errors.

use crate::error::{Error, Result};
use crate::fincat::{check_category_axioms, Category, Obj};
use crate::finset::{self, FinSet};
use crate::monoidal::{bifunctoriality_report, projection_report, MonoidalCategory};

// ---------------------------------------------------------------------------
// lattice instance

/// A finite meet-semilattice with top element; tensor = meet, unit = top.
#[derive(Clone, Debug)]
pub struct LatticeInstance {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    top: usize,
}

/// Build and verify a lattice instance from a reflexive-transitive order
/// table. Fails with a witness pair when a meet or the top is missing.
pub fn build_lattice(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<LatticeInstance> {
    let n = names.len();
    if leq.len() != n || leq.iter().any(|row| row.len() != n) {
        return Err(Error::Validation("order table must be n×n".into()));
    }
    for a in 0..n {
        if !leq[a][a] {
            return Err(Error::Validation(format!("order not reflexive at {}", names[a])));
        }
        for b in 0..n {
            if leq[a][b] && leq[b][a] && a != b {
                return Err(Error::Validation(format!(
                    "order not antisymmetric at ({}, {})",
                    names[a], names[b]
                )));
            }
            for c in 0..n {
                if leq[a][b] && leq[b][c] && !leq[a][c] {
                    return Err(Error::Validation(format!(
                        "order not transitive at ({}, {}, {})",
                        names[a], names[b], names[c]
                    )));
                }
            }
        }
    }
    let top = (0..n)
        .find(|&t| (0..n).all(|a| leq[a][t]))
        .ok_or_else(|| Error::Validation("no top element".into()))?;
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
            let glb = lower
                .iter()
                .copied()
                .find(|&m| lower.iter().all(|&c| leq[c][m]))
                .ok_or_else(|| {
                    Error::Validation(format!(
                        "missing meet of ({}, {})",
                        names[a], names[b]
                    ))
                })?;
            meet[a][b] = glb;
        }
    }
    let inst = LatticeInstance {
        names,
        leq,
        meet,
        top,
    };
    validate_instance(&inst, inst.names.len(), Classification::Iso)?;
    Ok(inst)
}

/// The divisor lattice of `n` under gcd, top = n.
pub fn divisor_lattice(n: usize) -> Result<LatticeInstance> {
    let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    let names = divisors.iter().map(|d| d.to_string()).collect();
    let k = divisors.len();
    let mut leq = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            leq[a][b] = divisors[b] % divisors[a] == 0;
        }
    }
    build_lattice(names, leq)
}

/// The Boolean lattice on `atoms` atoms (subsets ordered by inclusion).
pub fn boolean_lattice(atoms: usize) -> Result<LatticeInstance> {
    let k = 1usize << atoms;
    let names = (0..k).map(|s| format!("{s:0width$b}", width = atoms.max(1))).collect();
    let mut leq = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            leq[a][b] = a & b == a;
        }
    }
    build_lattice(names, leq)
}

/// The chain `0 < 1 < … < len-1`.
pub fn chain_lattice(len: usize) -> Result<LatticeInstance> {
    let names = (0..len).map(|i| i.to_string()).collect();
    let leq = (0..len)
        .map(|a| (0..len).map(|b| a <= b).collect())
        .collect();
    build_lattice(names, leq)
}

impl Category for LatticeInstance {
    fn cat_name(&self) -> String {
        format!("lattice({} elements)", self.names.len())
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
        FinSet::new(usize::from(self.leq[a.0][b.0]))
    }
    fn identity(&self, _a: Obj) -> usize {
        0
    }
    fn compose(&self, _a: Obj, _b: Obj, _c: Obj, _g: usize, _f: usize) -> usize {
        0
    }
}

impl MonoidalCategory for LatticeInstance {
    fn unit(&self) -> Obj {
        Obj(self.top)
    }
    fn tensor_obj(&self, a: Obj, b: Obj) -> Result<Obj> {
        Ok(Obj(self.meet[a.0][b.0]))
    }
    fn tensor_mor(&self, a: Obj, b: Obj, c: Obj, d: Obj, _f: usize, _g: usize) -> Result<usize> {
        debug_assert!(self.leq[a.0][c.0] && self.leq[b.0][d.0]);
        Ok(0)
    }
    fn symmetry(&self, _a: Obj, _b: Obj) -> Result<usize> {
        Ok(0)
    }
    fn semicartesian(&self) -> bool {
        true
    }
    fn terminal_map(&self, _a: Obj) -> Result<usize> {
        Ok(0)
    }
    fn cotensor(&self, v_size: usize, x: Obj) -> Result<Obj> {
        // hom(c, V⋔X) ≅ Set(V, hom(c,X)): top for empty V, X otherwise
        Ok(if v_size == 0 { Obj(self.top) } else { x })
    }
}

// ---------------------------------------------------------------------------
// pointed sets under wedge

/// Skeleton of finite pointed sets: object `Obj(s)` is `{0, …, s-1}` based
/// at 0; tensor is wedge sum with the left block first.
#[derive(Clone, Debug)]
pub struct PointedSetsInstance {
    roster_bound: usize,
}

/// Build the pointed-sets instance with roster `1..=bound`.
pub fn build_pointed_sets(bound: usize) -> Result<PointedSetsInstance> {
    if bound < 1 {
        return Err(Error::Validation("pointed-sets bound must be ≥ 1".into()));
    }
    let inst = PointedSetsInstance {
        roster_bound: bound,
    };
    let expected = if bound >= 2 {
        // objects of size ≥ 2 witness that κ is not surjective
        Classification::MonicNotIso
    } else {
        Classification::Monic
    };
    validate_instance(&inst, 3, expected)?;
    Ok(inst)
}

impl PointedSetsInstance {
    pub fn roster_bound(&self) -> usize {
        self.roster_bound
    }

    fn decode(&self, a: Obj, b: Obj, idx: usize) -> Vec<usize> {
        // a pointed map is its table on the non-base elements, read as a
        // base-|b| numeral
        let mut table = finset::decode_tuple(&vec![b.0; a.0 - 1], idx);
        table.insert(0, 0);
        table
    }

    fn encode(&self, b: Obj, table: &[usize]) -> usize {
        table[1..].iter().fold(0, |acc, &d| acc * b.0 + d)
    }
}

impl Category for PointedSetsInstance {
    fn cat_name(&self) -> String {
        format!("pointed sets (wedge, roster ≤ {})", self.roster_bound)
    }
    fn objects(&self) -> Vec<Obj> {
        (1..=self.roster_bound).map(Obj).collect()
    }
    fn contains_obj(&self, x: Obj) -> bool {
        x.0 >= 1
    }
    fn object_name(&self, x: Obj) -> String {
        format!("pointed-{}", x.0)
    }
    fn hom(&self, a: Obj, b: Obj) -> FinSet {
        FinSet::new(finset::count_functions(a.0 - 1, b.0))
    }
    fn identity(&self, a: Obj) -> usize {
        let table: Vec<usize> = (0..a.0).collect();
        self.encode(a, &table)
    }
    fn compose(&self, a: Obj, b: Obj, c: Obj, g: usize, f: usize) -> usize {
        let tf = self.decode(a, b, f);
        let tg = self.decode(b, c, g);
        let composed: Vec<usize> = tf.iter().map(|&x| tg[x]).collect();
        self.encode(c, &composed)
    }
    fn hom_table(&self, a: Obj, b: Obj, idx: usize) -> Option<Vec<usize>> {
        if idx < self.hom(a, b).size() {
            Some(self.decode(a, b, idx))
        } else {
            None
        }
    }
    fn hom_from_table(&self, a: Obj, b: Obj, table: &[usize]) -> Option<usize> {
        if table.len() != a.0 || table[0] != 0 || table.iter().any(|&v| v >= b.0) {
            return None;
        }
        Some(self.encode(b, table))
    }
    fn underlying_size(&self, x: Obj) -> Option<usize> {
        Some(x.0)
    }
}

impl MonoidalCategory for PointedSetsInstance {
    fn unit(&self) -> Obj {
        Obj(1)
    }
    fn tensor_obj(&self, a: Obj, b: Obj) -> Result<Obj> {
        Ok(Obj(a.0 + b.0 - 1))
    }
    fn tensor_mor(&self, a: Obj, b: Obj, c: Obj, d: Obj, f: usize, g: usize) -> Result<usize> {
        let tf = self.decode(a, c, f);
        let tg = self.decode(b, d, g);
        let (s, t, u) = (a.0, b.0, c.0);
        let mut table = vec![0usize; s + t - 1];
        for e in 1..s {
            table[e] = tf[e];
        }
        for e in s..s + t - 1 {
            let y = e - (s - 1);
            let w = tg[y];
            table[e] = if w == 0 { 0 } else { u - 1 + w };
        }
        Ok(self.encode(Obj(c.0 + d.0 - 1), &table))
    }
    fn symmetry(&self, a: Obj, b: Obj) -> Result<usize> {
        let (s, t) = (a.0, b.0);
        let mut table = vec![0usize; s + t - 1];
        for e in 1..s {
            table[e] = (t - 1) + e;
        }
        for e in s..s + t - 1 {
            table[e] = e - (s - 1);
        }
        Ok(self.encode(Obj(t + s - 1), &table))
    }
    fn semicartesian(&self) -> bool {
        true
    }
    fn terminal_map(&self, _a: Obj) -> Result<usize> {
        Ok(0)
    }
    fn cotensor(&self, v_size: usize, x: Obj) -> Result<Obj> {
        // all (not necessarily based) maps V → X, based at the constant-
        // basepoint map, which is index 0 of the function enumeration
        Ok(Obj(finset::count_functions(v_size, x.0)))
    }
    fn representing_probe(&self) -> Option<Obj> {
        Some(Obj(2))
    }
    fn elem_as_hom(&self, x: Obj, e: usize) -> Option<usize> {
        if e < x.0 {
            self.hom_from_table(Obj(2), x, &[0, e])
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// finite sets under Cartesian product

/// Skeleton of finite sets: object `Obj(s)` is `{0, …, s-1}`; tensor is the
/// Cartesian product with lexicographic normal form. The cap is hard:
/// realizing any object larger than it is a bound error.
#[derive(Clone, Debug)]
pub struct FinSetsCartesianInstance {
    roster_bound: usize,
    size_cap: usize,
}

/// Build the Cartesian finite-sets instance with roster `0..=bound` and the
/// default hard cap equal to the bound.
pub fn build_finsets(bound: usize) -> Result<FinSetsCartesianInstance> {
    build_finsets_capped(bound, bound)
}

/// Same, with an explicit hard size cap for computed objects (tensor powers
/// and cotensors), recorded in reports.
pub fn build_finsets_capped(bound: usize, size_cap: usize) -> Result<FinSetsCartesianInstance> {
    if bound < 1 {
        return Err(Error::Validation("finite-sets bound must be ≥ 1".into()));
    }
    if size_cap < bound {
        return Err(Error::Validation("size cap must be ≥ roster bound".into()));
    }
    let inst = FinSetsCartesianInstance {
        roster_bound: bound,
        size_cap,
    };
    validate_instance(&inst, 3, Classification::Iso)?;
    Ok(inst)
}

impl FinSetsCartesianInstance {
    pub fn roster_bound(&self) -> usize {
        self.roster_bound
    }
    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    fn guard(&self, size: usize) -> Result<Obj> {
        if size > self.size_cap {
            Err(Error::Bound(format!(
                "object of size {size} exceeds the instance cap {}",
                self.size_cap
            )))
        } else {
            Ok(Obj(size))
        }
    }

    fn decode(&self, a: Obj, b: Obj, idx: usize) -> Vec<usize> {
        finset::decode_tuple(&vec![b.0; a.0], idx)
    }

    fn encode(&self, b: Obj, table: &[usize]) -> usize {
        table.iter().fold(0, |acc, &d| acc * b.0 + d)
    }
}

impl Category for FinSetsCartesianInstance {
    fn cat_name(&self) -> String {
        format!(
            "finite sets (cartesian, roster ≤ {}, cap {})",
            self.roster_bound, self.size_cap
        )
    }
    fn objects(&self) -> Vec<Obj> {
        (0..=self.roster_bound).map(Obj).collect()
    }
    fn contains_obj(&self, x: Obj) -> bool {
        x.0 <= self.size_cap
    }
    fn object_name(&self, x: Obj) -> String {
        format!("set-{}", x.0)
    }
    fn hom(&self, a: Obj, b: Obj) -> FinSet {
        FinSet::new(finset::count_functions(a.0, b.0))
    }
    fn identity(&self, a: Obj) -> usize {
        let table: Vec<usize> = (0..a.0).collect();
        self.encode(a, &table)
    }
    fn compose(&self, a: Obj, b: Obj, c: Obj, g: usize, f: usize) -> usize {
        let tf = self.decode(a, b, f);
        let tg = self.decode(b, c, g);
        let composed: Vec<usize> = tf.iter().map(|&x| tg[x]).collect();
        self.encode(c, &composed)
    }
    fn hom_table(&self, a: Obj, b: Obj, idx: usize) -> Option<Vec<usize>> {
        if idx < self.hom(a, b).size() {
            Some(self.decode(a, b, idx))
        } else {
            None
        }
    }
    fn hom_from_table(&self, a: Obj, b: Obj, table: &[usize]) -> Option<usize> {
        if table.len() != a.0 || table.iter().any(|&v| v >= b.0) {
            return None;
        }
        Some(self.encode(b, table))
    }
    fn underlying_size(&self, x: Obj) -> Option<usize> {
        Some(x.0)
    }
}

impl MonoidalCategory for FinSetsCartesianInstance {
    fn unit(&self) -> Obj {
        Obj(1)
    }
    fn tensor_obj(&self, a: Obj, b: Obj) -> Result<Obj> {
        self.guard(a.0 * b.0)
    }
    fn tensor_mor(&self, a: Obj, b: Obj, c: Obj, d: Obj, f: usize, g: usize) -> Result<usize> {
        self.guard(a.0 * b.0)?;
        let cd = self.guard(c.0 * d.0)?;
        let tf = self.decode(a, c, f);
        let tg = self.decode(b, d, g);
        let mut table = vec![0usize; a.0 * b.0];
        for x in 0..a.0 {
            for y in 0..b.0 {
                table[x * b.0 + y] = tf[x] * d.0 + tg[y];
            }
        }
        Ok(self.encode(cd, &table))
    }
    fn symmetry(&self, a: Obj, b: Obj) -> Result<usize> {
        let ab = self.guard(a.0 * b.0)?;
        let _ = ab;
        let mut table = vec![0usize; a.0 * b.0];
        for x in 0..a.0 {
            for y in 0..b.0 {
                table[x * b.0 + y] = y * a.0 + x;
            }
        }
        Ok(self.encode(Obj(b.0 * a.0), &table))
    }
    fn semicartesian(&self) -> bool {
        true
    }
    fn terminal_map(&self, _a: Obj) -> Result<usize> {
        Ok(0)
    }
    fn cotensor(&self, v_size: usize, x: Obj) -> Result<Obj> {
        self.guard(finset::count_functions(v_size, x.0))
    }
    fn representing_probe(&self) -> Option<Obj> {
        Some(Obj(1))
    }
    fn elem_as_hom(&self, x: Obj, e: usize) -> Option<usize> {
        if e < x.0 {
            self.hom_from_table(Obj(1), x, &[e])
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------

/// The projection classification an instance documents for itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Classification {
    Monic,
    MonicNotIso,
    Iso,
}

/// Checks run by every builder before an instance is handed out: category
/// axioms, tensor bifunctoriality, and the projection classification, all
/// bounded-exhaustive over at most `probe_bound` roster objects.
fn validate_instance(
    inst: &dyn MonoidalCategory,
    probe_bound: usize,
    expected: Classification,
) -> Result<()> {
    let cat_report = check_category_axioms(inst, probe_bound);
    if !cat_report.passed() {
        return Err(Error::Validation(format!(
            "{}: {}",
            inst.cat_name(),
            cat_report.violations[0]
        )));
    }
    let bif = bifunctoriality_report(inst, probe_bound);
    if let Some(v) = bif.first() {
        return Err(Error::Validation(format!("{}: {v}", inst.cat_name())));
    }
    let proj = projection_report(inst, probe_bound);
    if !proj.semicartesian || !proj.monically_projecting {
        return Err(Error::Validation(format!(
            "{}: projection classification failed: {:?}",
            inst.cat_name(),
            proj.witnesses
        )));
    }
    let iso_ok = match expected {
        Classification::Monic => true,
        Classification::MonicNotIso => !proj.isomorphically_projecting,
        Classification::Iso => proj.isomorphically_projecting,
    };
    if !iso_ok {
        return Err(Error::Validation(format!(
            "{}: projection classification disagrees with the documented one ({expected:?}): {:?}",
            inst.cat_name(),
            proj.witnesses
        )));
    }
    Ok(())
}

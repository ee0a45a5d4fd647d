//! Operadic coalgebras: operad morphisms into a coendomorphism operad.
//!
//! A structure on a carrier `X` is a family `Φ_n : P(n) → hom(X, X^{⊗n})`
//! forming an operad morphism into `coend_operad(X)`. The enumerator searches
//! arity by arity, pruning by unit preservation, then equivariance orbits,
//! then composition constraints; results come back canonically ordered
//! (lexicographic on the concatenated tables) and duplicate-free.
//! Coalgebra morphisms are recognized by the equaliser condition
//! `f^{⊗r} ∘ Φ_X(p) = Φ_Y(p) ∘ f`.

use crate::coendo::{coend_operad, CoEndOperad};
use crate::error::{Error, Result};
use crate::fincat::{Obj, Violation};
use crate::finset::{self, FinFn, FinSet};
use crate::monoidal::{mor_power, tensor_power, MonoidalCategory};
use crate::operad::{partial_keys, OperadMorphism, TruncatedOperad};
use serde::Serialize;

/// An operadic coalgebra structure: a carrier and the morphism family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoalgebraStructure {
    pub carrier: Obj,
    pub maps: Vec<FinFn>,
}

impl CoalgebraStructure {
    pub fn as_morphism(&self) -> OperadMorphism {
        OperadMorphism {
            components: self.maps.clone(),
        }
    }

    /// Compact display of the family tables.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .maps
            .iter()
            .enumerate()
            .map(|(n, f)| format!("Φ{n}={:?}", f.table()))
            .collect();
        parts.join(" ")
    }
}

/// Whether arity 0 is searched like any other arity or filled in by the
/// semicartesian uniqueness argument. Output must not depend on the choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArityZeroMode {
    Forced,
    Searched,
}

/// Enumerate every operad morphism `P → CoEnd(X)`, exhaustively with
/// pruning. `budget` bounds the number of candidate values examined.
pub fn enumerate_coalgebras(
    cat: &dyn MonoidalCategory,
    op: &TruncatedOperad,
    x: Obj,
    budget: usize,
) -> Result<Vec<CoalgebraStructure>> {
    enumerate_coalgebras_mode(cat, op, x, budget, ArityZeroMode::Forced)
}

pub fn enumerate_coalgebras_mode(
    cat: &dyn MonoidalCategory,
    op: &TruncatedOperad,
    x: Obj,
    budget: usize,
    zero_mode: ArityZeroMode,
) -> Result<Vec<CoalgebraStructure>> {
    let n_max = op.max_arity();
    let ce = coend_operad(cat, x, n_max)?;
    let mut search = Search {
        op,
        ce: &ce,
        budget,
        attempted: 0,
        zero_mode,
        found: Vec::new(),
    };
    let orbits: Vec<Vec<OrbitInfo>> = (0..=n_max).map(|n| orbit_info(op, n)).collect();
    let mut partial: Vec<Option<FinFn>> = vec![None; n_max + 1];
    search.descend(0, &orbits, &mut partial)?;
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found)
}

struct OrbitInfo {
    representative: usize,
    /// permutation ranks fixing the representative
    stabilizer: Vec<usize>,
    /// (element, rank) pairs with element = rep·σ_rank, covering the orbit
    members: Vec<(usize, usize)>,
}

fn orbit_info(op: &TruncatedOperad, n: usize) -> Vec<OrbitInfo> {
    let size = op.component(n).size();
    let ranks = finset::factorial(n);
    let mut seen = vec![false; size];
    let mut orbits = Vec::new();
    for rep in 0..size {
        if seen[rep] {
            continue;
        }
        let mut stabilizer = Vec::new();
        let mut members = Vec::new();
        let mut member_seen = vec![false; size];
        for rank in 0..ranks {
            let image = op.act(n, rank, rep);
            seen[image] = true;
            if image == rep {
                stabilizer.push(rank);
            }
            if !member_seen[image] {
                member_seen[image] = true;
                members.push((image, rank));
            }
        }
        orbits.push(OrbitInfo {
            representative: rep,
            stabilizer,
            members,
        });
    }
    orbits
}

struct Search<'a> {
    op: &'a TruncatedOperad,
    ce: &'a CoEndOperad,
    budget: usize,
    attempted: usize,
    zero_mode: ArityZeroMode,
    found: Vec<CoalgebraStructure>,
}

impl<'a> Search<'a> {
    fn spend(&mut self, context: &str) -> Result<()> {
        self.attempted += 1;
        if self.attempted > self.budget {
            Err(Error::Budget {
                budget: self.budget,
                attempted: self.attempted,
                context: context.into(),
            })
        } else {
            Ok(())
        }
    }

    fn descend(
        &mut self,
        arity: usize,
        orbits: &[Vec<OrbitInfo>],
        partial: &mut Vec<Option<FinFn>>,
    ) -> Result<()> {
        let n_max = self.op.max_arity();
        if arity > n_max {
            self.found.push(CoalgebraStructure {
                carrier: self.ce.carrier,
                maps: partial.iter().map(|f| f.clone().unwrap()).collect(),
            });
            return Ok(());
        }
        let p_size = self.op.component(arity).size();
        let ce_size = self.ce.operad.component(arity).size();

        if arity == 0 && self.zero_mode == ArityZeroMode::Forced {
            // in a semicartesian instance hom(X, unit) is a point, so the
            // nullary family has exactly one candidate
            if ce_size != 1 {
                return Err(Error::Unsupported(
                    "forced nullary family needs hom(X, unit) to be a point".into(),
                ));
            }
            let table = vec![0; p_size];
            let f = FinFn::new(
                self.op.component(0).clone(),
                self.ce.operad.component(0).clone(),
                table,
            )?;
            partial[0] = Some(f);
            self.descend(1, orbits, partial)?;
            partial[0] = None;
            return Ok(());
        }

        if p_size == 0 || ce_size == 0 {
            if p_size > 0 {
                return Ok(()); // no functions into an empty component
            }
            let f = FinFn::new(
                self.op.component(arity).clone(),
                self.ce.operad.component(arity).clone(),
                vec![],
            )?;
            partial[arity] = Some(f);
            if self.levels_consistent(arity, partial) {
                self.descend(arity + 1, orbits, partial)?;
            }
            partial[arity] = None;
            return Ok(());
        }

        let mut assignment = vec![usize::MAX; p_size];
        self.assign_orbits(arity, 0, orbits, &mut assignment, partial)?;
        Ok(())
    }

    fn assign_orbits(
        &mut self,
        arity: usize,
        orbit_idx: usize,
        orbits: &[Vec<OrbitInfo>],
        assignment: &mut Vec<usize>,
        partial: &mut Vec<Option<FinFn>>,
    ) -> Result<()> {
        let level = &orbits[arity];
        if orbit_idx == level.len() {
            let f = FinFn::new(
                self.op.component(arity).clone(),
                self.ce.operad.component(arity).clone(),
                assignment.clone(),
            )?;
            partial[arity] = Some(f);
            if self.levels_consistent(arity, partial) {
                self.descend(arity + 1, orbits, partial)?;
            }
            partial[arity] = None;
            return Ok(());
        }
        let orbit = &level[orbit_idx];
        let ce_size = self.ce.operad.component(arity).size();
        'candidates: for value in 0..ce_size {
            self.spend(&format!(
                "coalgebra search on {} at arity {arity}",
                self.op.name
            ))?;
            // unit preservation
            if arity == 1
                && orbit.representative == self.op.unit_elem()
                && value != self.ce.operad.unit_elem()
            {
                continue;
            }
            // stabilizer invariance
            for &rank in &orbit.stabilizer {
                if self.ce.operad.act(arity, rank, value) != value {
                    continue 'candidates;
                }
            }
            // restriction compatibility against already-fixed lower arities
            if arity >= 1 && self.op.component(0).size() == 1 {
                let lower = partial[arity - 1].as_ref().expect("lower arity fixed");
                for i in 1..=arity {
                    let p_restricted = self.op.comp(arity, 0, i, orbit.representative, 0);
                    let v_restricted = self.ce.operad.comp(arity, 0, i, value, 0);
                    if lower.eval(p_restricted) != v_restricted {
                        continue 'candidates;
                    }
                }
            }
            // propagate along the orbit
            for &(member, rank) in &orbit.members {
                assignment[member] = self.ce.operad.act(arity, rank, value);
            }
            self.assign_orbits(arity, orbit_idx + 1, orbits, assignment, partial)?;
            for &(member, _) in &orbit.members {
                assignment[member] = usize::MAX;
            }
        }
        Ok(())
    }

    /// Check every morphism constraint whose arities are all ≤ `arity`.
    fn levels_consistent(&self, arity: usize, partial: &[Option<FinFn>]) -> bool {
        for &(m, n, i) in partial_keys(self.op.max_arity()).iter() {
            if m > arity || n > arity || m + n - 1 > arity {
                continue;
            }
            // only re-check constraints that involve the newest level
            if m != arity && n != arity && m + n - 1 != arity {
                continue;
            }
            let (fm, fn_, fout) = (
                partial[m].as_ref().unwrap(),
                partial[n].as_ref().unwrap(),
                partial[m + n - 1].as_ref().unwrap(),
            );
            for p in 0..self.op.component(m).size() {
                for q in 0..self.op.component(n).size() {
                    let lhs = fout.eval(self.op.comp(m, n, i, p, q));
                    let rhs = self.ce.operad.comp(m, n, i, fm.eval(p), fn_.eval(q));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The equaliser condition for a map between coalgebra carriers:
/// `f^{⊗r} ∘ Φ_X(p) = Φ_Y(p) ∘ f` for every arity and operad element.
pub fn is_coalgebra_morphism(
    cat: &dyn MonoidalCategory,
    op: &TruncatedOperad,
    a: &CoalgebraStructure,
    b: &CoalgebraStructure,
    f: usize,
) -> Result<bool> {
    Ok(morphism_defect(cat, op, a, b, f)?.is_none())
}

/// As `is_coalgebra_morphism`, but returning the witness (arity, element)
/// where the equaliser condition first fails.
pub fn morphism_defect(
    cat: &dyn MonoidalCategory,
    op: &TruncatedOperad,
    a: &CoalgebraStructure,
    b: &CoalgebraStructure,
    f: usize,
) -> Result<Option<(usize, usize)>> {
    let (x, y) = (a.carrier, b.carrier);
    for r in 0..=op.max_arity() {
        let x_pow = tensor_power(cat, x, r)?;
        let y_pow = tensor_power(cat, y, r)?;
        let f_pow = mor_power(cat, x, y, f, r)?;
        for p in op.component(r).elems() {
            let lhs = cat.compose(x, x_pow, y_pow, f_pow, a.maps[r].eval(p));
            let rhs = cat.compose(x, y, y_pow, b.maps[r].eval(p), f);
            if lhs != rhs {
                return Ok(Some((r, p)));
            }
        }
    }
    Ok(None)
}

/// The coalgebra hom-set as an equaliser-style subset of `hom(X, Y)` with
/// its inclusion.
pub fn coalgebra_hom_set(
    cat: &dyn MonoidalCategory,
    op: &TruncatedOperad,
    a: &CoalgebraStructure,
    b: &CoalgebraStructure,
) -> Result<(FinSet, FinFn, Vec<usize>)> {
    let ambient = cat.hom(a.carrier, b.carrier);
    let mut selected = Vec::new();
    for f in ambient.elems() {
        if is_coalgebra_morphism(cat, op, a, b, f)? {
            selected.push(f);
        }
    }
    let (sub, incl) = finset::subset_inclusion(&ambient, &selected)?;
    Ok((sub, incl, selected))
}

/// Report of the executable coalgebra-category check: identities belong to
/// every endo hom-set and hom-sets are closed under composition.
#[derive(Clone, Debug, Serialize)]
pub struct CoalgebraCategoryReport {
    pub operad: String,
    pub truncation: usize,
    pub instance: String,
    pub roster: Vec<String>,
    pub structures_per_object: Vec<(String, usize)>,
    pub violations: Vec<Violation>,
}

impl CoalgebraCategoryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Enumerate all structures on the roster and verify that the recognized
/// morphisms assemble into a category.
pub fn check_coalgebra_category(
    cat: &dyn MonoidalCategory,
    op: &TruncatedOperad,
    roster: &[Obj],
    budget: usize,
) -> Result<CoalgebraCategoryReport> {
    let mut violations = Vec::new();
    let mut all: Vec<CoalgebraStructure> = Vec::new();
    let mut per_object = Vec::new();
    for &x in roster {
        let found = enumerate_coalgebras(cat, op, x, budget)?;
        per_object.push((cat.object_name(x), found.len()));
        all.extend(found);
    }
    // identities
    for a in &all {
        if !is_coalgebra_morphism(cat, op, a, a, cat.identity(a.carrier))? {
            violations.push(Violation::new(
                "identity-not-morphism",
                format!(
                    "identity of {} rejected on a structure there",
                    cat.object_name(a.carrier)
                ),
            ));
        }
    }
    // closure under composition
    for a in &all {
        for b in &all {
            let (_, _, fs) = coalgebra_hom_set(cat, op, a, b)?;
            for c in &all {
                let (_, _, gs) = coalgebra_hom_set(cat, op, b, c)?;
                for &f in &fs {
                    for &g in &gs {
                        let gf = cat.compose(a.carrier, b.carrier, c.carrier, g, f);
                        if !is_coalgebra_morphism(cat, op, a, c, gf)? {
                            violations.push(Violation::new(
                                "composition-not-closed",
                                format!(
                                    "composite of recognized morphisms rejected: f={f}, g={g} over ({}, {}, {})",
                                    cat.object_name(a.carrier),
                                    cat.object_name(b.carrier),
                                    cat.object_name(c.carrier)
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(CoalgebraCategoryReport {
        operad: op.name.clone(),
        truncation: op.max_arity(),
        instance: cat.cat_name(),
        roster: roster.iter().map(|&x| cat.object_name(x)).collect(),
        structures_per_object: per_object,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Category;
    use crate::instances::{build_pointed_sets, divisor_lattice};
    use crate::operad::{ass, com, from_monoid, MonoidTable};

    const BUDGET: usize = 1_000_000;

    #[test]
    fn point_carrier_has_one_structure() {
        let p = build_pointed_sets(3).unwrap();
        let found = enumerate_coalgebras(&p, &com(2), Obj(1), BUDGET).unwrap();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn two_point_pointed_has_none() {
        // independent oracle: exhaust all candidate Φ₂ values against the
        // restriction constraints by hand
        let p = build_pointed_sets(3).unwrap();
        let ce = coend_operad(&p, Obj(2), 2).unwrap();
        let mut by_hand = 0;
        for v in 0..ce.operad.component(2).size() {
            let d1 = ce.operad.comp(2, 0, 1, v, 0);
            let d2 = ce.operad.comp(2, 0, 2, v, 0);
            if d1 == ce.operad.unit_elem() && d2 == ce.operad.unit_elem() {
                by_hand += 1;
            }
        }
        assert_eq!(by_hand, 0);
        let found = enumerate_coalgebras(&p, &com(2), Obj(2), BUDGET).unwrap();
        assert_eq!(found.len(), 0);
    }

    #[test]
    fn lattice_objects_have_exactly_the_diagonal() {
        let l = divisor_lattice(12).unwrap();
        for x in l.objects() {
            let found = enumerate_coalgebras(&l, &com(2), x, BUDGET).unwrap();
            assert_eq!(found.len(), 1, "at {}", l.object_name(x));
        }
    }

    #[test]
    fn arity_zero_mode_does_not_change_output() {
        let p = build_pointed_sets(3).unwrap();
        for op in [com(3), ass(3), from_monoid(&MonoidTable::cyclic(2), 3)] {
            for x in [Obj(1), Obj(2), Obj(3)] {
                let forced =
                    enumerate_coalgebras_mode(&p, &op, x, BUDGET, ArityZeroMode::Forced).unwrap();
                let searched =
                    enumerate_coalgebras_mode(&p, &op, x, BUDGET, ArityZeroMode::Searched)
                        .unwrap();
                assert_eq!(forced, searched, "operad {} at {x}", op.name);
            }
        }
    }

    #[test]
    fn enumerated_structures_revalidate() {
        let p = build_pointed_sets(3).unwrap();
        for op in [com(3), ass(3), from_monoid(&MonoidTable::cyclic(2), 3)] {
            for x in [Obj(1), Obj(2), Obj(3)] {
                let ce = coend_operad(&p, x, op.max_arity()).unwrap();
                for s in enumerate_coalgebras(&p, &op, x, BUDGET).unwrap() {
                    let violations = s.as_morphism().check(&op, &ce.operad);
                    assert!(violations.is_empty(), "{:?}", violations);
                }
            }
        }
    }

    #[test]
    fn budget_error_reports_attempts() {
        let p = build_pointed_sets(3).unwrap();
        let err = enumerate_coalgebras(&p, &ass(3), Obj(3), 5).unwrap_err();
        match err {
            Error::Budget { attempted, .. } => assert!(attempted > 5),
            other => panic!("expected budget error, got {other}"),
        }
    }

    #[test]
    fn identity_is_a_morphism() {
        let p = build_pointed_sets(3).unwrap();
        let op = from_monoid(&MonoidTable::cyclic(2), 3);
        let found = enumerate_coalgebras(&p, &op, Obj(2), BUDGET).unwrap();
        assert_eq!(found.len(), 1);
        let s = &found[0];
        assert!(is_coalgebra_morphism(&p, &op, s, s, p.identity(Obj(2))).unwrap());
    }

    #[test]
    fn terminal_map_is_a_morphism() {
        let p = build_pointed_sets(3).unwrap();
        let op = com(2);
        let on_point = enumerate_coalgebras(&p, &op, Obj(1), BUDGET).unwrap();
        assert_eq!(on_point.len(), 1);
        // the only structure total: the point coalgebra receives the unique
        // map from itself
        let s = &on_point[0];
        assert!(is_coalgebra_morphism(&p, &op, s, s, p.terminal_map(Obj(1)).unwrap()).unwrap());
        let (hom, incl, _) = coalgebra_hom_set(&p, &op, s, s).unwrap();
        assert_eq!(hom.size(), 1);
        assert!(incl.is_injective());
    }

    #[test]
    fn fault_injected_family_fails_with_witness() {
        let p = build_pointed_sets(3).unwrap();
        let op = from_monoid(&MonoidTable::cyclic(2), 2);
        let found = enumerate_coalgebras(&p, &op, Obj(2), BUDGET).unwrap();
        let good = &found[0];
        // corrupt Φ₁ at the non-unit element: point it at the constant map
        let mut bad = good.clone();
        let mut table = bad.maps[1].table().to_vec();
        let non_unit = (0..table.len()).find(|&e| e != op.unit_elem()).unwrap();
        table[non_unit] = p.hom_from_table(Obj(2), Obj(2), &[0, 0]).unwrap();
        bad.maps[1] = FinFn::new(
            bad.maps[1].dom().clone(),
            bad.maps[1].cod().clone(),
            table,
        )
        .unwrap();
        let defect =
            morphism_defect(&p, &op, good, &bad, p.identity(Obj(2))).unwrap();
        assert_eq!(defect, Some((1, non_unit)));
    }

    #[test]
    fn monoid_endo_hom_set_is_closed() {
        let p = build_pointed_sets(3).unwrap();
        let op = from_monoid(&MonoidTable::cyclic(2), 3);
        let report = check_coalgebra_category(&p, &op, &[Obj(1), Obj(2)], BUDGET).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn lattice_hom_sets_between_comparable_objects() {
        let l = divisor_lattice(12).unwrap();
        let op = com(2);
        let s2 = enumerate_coalgebras(&l, &op, Obj(1), BUDGET).unwrap(); // divisor 2
        let s12 = enumerate_coalgebras(&l, &op, Obj(5), BUDGET).unwrap(); // divisor 12
        let (hom, _, _) = coalgebra_hom_set(&l, &op, &s2[0], &s12[0]).unwrap();
        assert_eq!(hom.size(), 1);
    }
}

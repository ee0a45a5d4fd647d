//! The comonad associated to a unital operad.
//!
//! The carrier at `X` is the subobject of the cotensor `P(1) ⋔ X` cut out by
//! image conditions: a function `f : P(1) → X` belongs iff for every higher
//! arity `n` with `P(n)` inhabited, the tuple `(f(d_1 p), …, f(d_n p))` lies
//! in the image of `κ_n` for each `p ∈ P(n)` (`d_i` the slot-keeping
//! composite of restrictions). The counit evaluates at the operadic unit and
//! the comultiplication is `Δ(f)(p)(q) = f(p∘q)` with `∘` the arity-(1,1)
//! partial composition. An independent oracle computes the same hom-objects
//! as end families filtered by naturality against permutations and
//! collapses, with no cotensor in sight.
//!
//! Everything is element-level and needs a set-like instance (one exposing
//! underlying elements). Thin instances take the isomorphically-projecting
//! shortcut: the carrier is the whole cotensor.

use crate::coalgebra::{coalgebra_hom_set, enumerate_coalgebras, CoalgebraStructure};
use crate::error::{Error, Result};
use crate::fincat::{check_functor, Category, FunctorData, FunctorReport, Obj, Violation};
use crate::finset::{self, FinFn, FinSet};
use crate::monoidal::{
    collapse, kappa_image, kappa_n, pairwise_strength_check, perm_iso, projection_report,
    tensor_power, MonoidalCategory,
};
use crate::operad::{BarFunctor, IndexKCategory, TruncatedOperad};
use serde::Serialize;
use std::collections::BTreeMap;

/// Which arities the carrier condition quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StrengthMode {
    /// Only the pairwise condition (valid when the instance is 2-strong;
    /// verified before use).
    Pairwise,
    /// Every arity up to the truncation.
    AllArities,
}

/// Membership data for a carrier inside its cotensor.
#[derive(Clone, Debug)]
pub enum CarrierMembers {
    /// The whole cotensor, element `k` being cotensor element `k`.
    All(usize),
    /// A proper subset, listed by increasing cotensor index.
    Subset(Vec<usize>),
}

impl CarrierMembers {
    pub fn len(&self) -> usize {
        match self {
            CarrierMembers::All(n) => *n,
            CarrierMembers::Subset(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cot_index(&self, k: usize) -> usize {
        match self {
            CarrierMembers::All(_) => k,
            CarrierMembers::Subset(v) => v[k],
        }
    }

    pub fn carrier_index(&self, cot: usize) -> Option<usize> {
        match self {
            CarrierMembers::All(n) => (cot < *n).then_some(cot),
            CarrierMembers::Subset(v) => v.binary_search(&cot).ok(),
        }
    }
}

/// One computed carrier: the slice of the comonad at an object.
#[derive(Clone, Debug)]
pub struct CpSlice {
    pub x: Obj,
    pub cotensor_obj: Obj,
    pub carrier_obj: Obj,
    /// underlying size of `x`
    pub u_x: usize,
    /// size of the acting monoid `P(1)`
    pub m_size: usize,
    pub members: CarrierMembers,
}

impl CpSlice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The underlying table `P(1) → X` of carrier element `k`.
    pub fn cot_table(&self, k: usize) -> Vec<usize> {
        finset::decode_tuple(&vec![self.u_x; self.m_size], self.members.cot_index(k))
    }
}

/// Whether an engine realizes the plain coaction structure of `P(1)` or the
/// image-restricted subcomonad.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComonadKind {
    Coaction,
    Cp,
}

/// Element-level realization of the comonad on a set-like instance, with a
/// per-object carrier cache.
pub struct ComonadEngine<'a> {
    cat: &'a dyn MonoidalCategory,
    op: &'a TruncatedOperad,
    bar: BarFunctor,
    kind: ComonadKind,
    mode: StrengthMode,
    m_size: usize,
    unit: usize,
    mult: Vec<Vec<usize>>,
    slices: BTreeMap<Obj, CpSlice>,
}

impl<'a> ComonadEngine<'a> {
    pub fn new(
        cat: &'a dyn MonoidalCategory,
        op: &'a TruncatedOperad,
        kind: ComonadKind,
        mode: StrengthMode,
    ) -> Result<Self> {
        if !op.is_unital() {
            return Err(Error::Unsupported(
                "the comonad construction needs a unital operad".into(),
            ));
        }
        if !cat.semicartesian() {
            return Err(Error::Unsupported(
                "the comonad construction needs a semicartesian instance".into(),
            ));
        }
        let bar = BarFunctor::from_operad(op)?;
        let m_size = op.component(1).size();
        let mult: Vec<Vec<usize>> = (0..m_size)
            .map(|p| (0..m_size).map(|q| op.comp(1, 1, 1, p, q)).collect())
            .collect();
        Ok(ComonadEngine {
            cat,
            op,
            bar,
            kind,
            mode,
            m_size,
            unit: op.unit_elem(),
            mult,
            slices: BTreeMap::new(),
        })
    }

    pub fn cat(&self) -> &'a dyn MonoidalCategory {
        self.cat
    }

    pub fn operad(&self) -> &'a TruncatedOperad {
        self.op
    }

    pub fn monoid_mult(&self) -> &Vec<Vec<usize>> {
        &self.mult
    }

    fn underlying(&self, x: Obj) -> Result<usize> {
        self.cat.underlying_size(x).ok_or_else(|| {
            Error::Unsupported(format!(
                "{} exposes no underlying elements; element-level comonad computation needs a set-like instance",
                self.cat.cat_name()
            ))
        })
    }

    fn probe(&self) -> Result<Obj> {
        self.cat.representing_probe().ok_or_else(|| {
            Error::Unsupported(format!(
                "{} has no representing probe object",
                self.cat.cat_name()
            ))
        })
    }

    /// The carrier at `x`, computed once and cached.
    pub fn slice(&mut self, x: Obj) -> Result<CpSlice> {
        if let Some(s) = self.slices.get(&x) {
            return Ok(s.clone());
        }
        let s = self.compute_slice(x)?;
        self.slices.insert(x, s.clone());
        Ok(s)
    }

    fn active_arities(&self, x: Obj) -> Result<Vec<usize>> {
        if self.kind == ComonadKind::Coaction {
            return Ok(vec![]);
        }
        let n_max = self.op.max_arity();
        let inhabited: Vec<usize> = (2..=n_max)
            .filter(|&n| !self.op.component(n).is_empty())
            .collect();
        match self.mode {
            StrengthMode::AllArities => Ok(inhabited),
            StrengthMode::Pairwise => {
                let probe = self.probe()?;
                for n in 3..=n_max {
                    if !pairwise_strength_check(self.cat, probe, x, n)? {
                        return Err(Error::Unsupported(format!(
                            "pairwise strength fails at ({}, arity {n}); the shortcut is not valid here",
                            self.cat.object_name(x)
                        )));
                    }
                }
                Ok(inhabited.into_iter().filter(|&n| n == 2).collect())
            }
        }
    }

    fn compute_slice(&self, x: Obj) -> Result<CpSlice> {
        let u_x = self.underlying(x)?;
        let cot_obj = self.cat.cotensor(self.m_size, x)?;
        let cot_size = finset::count_functions(self.m_size, u_x);
        if self.cat.underlying_size(cot_obj) != Some(cot_size) {
            return Err(Error::Structural(format!(
                "cotensor of {} has unexpected size",
                self.cat.object_name(x)
            )));
        }
        let active = self.active_arities(x)?;
        if !active.is_empty() {
            // monic-projection spot check with witness; only meaningful when
            // image conditions will actually be tested
            let probe = self.probe()?;
            let k2 = crate::monoidal::kappa2(self.cat, probe, x, x)?;
            if !k2.is_injective() {
                return Err(Error::Unsupported(format!(
                    "instance is not monically projecting at {}: κ₂ collides",
                    self.cat.object_name(x)
                )));
            }
        }
        let members = if active.is_empty() {
            CarrierMembers::All(cot_size)
        } else {
            let probe = self.probe()?;
            let elem_to_hom: Vec<usize> = (0..u_x)
                .map(|e| {
                    self.cat.elem_as_hom(x, e).ok_or_else(|| {
                        Error::Structural(format!(
                            "element {e} of {} has no representing morphism",
                            self.cat.object_name(x)
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let hom_px = self.cat.hom(probe, x).size();
            let mut conditions = Vec::new();
            for &n in &active {
                let image = kappa_image(self.cat, probe, x, n)?;
                let slot_maps: Vec<FinFn> = (1..=n)
                    .map(|i| {
                        let phi =
                            FinFn::new(FinSet::new(1), FinSet::new(n), vec![i - 1]).unwrap();
                        self.bar.action_for_injection(&phi)
                    })
                    .collect::<Result<Vec<_>>>()?;
                conditions.push((n, image, slot_maps));
            }
            let mut selected = Vec::new();
            'cot: for idx in 0..cot_size {
                let table = finset::decode_tuple(&vec![u_x; self.m_size], idx);
                for (n, image, slot_maps) in &conditions {
                    let sizes = vec![hom_px; *n];
                    for p in self.op.component(*n).elems() {
                        let coords: Vec<usize> = slot_maps
                            .iter()
                            .map(|d| elem_to_hom[table[d.eval(p)]])
                            .collect();
                        if !image.contains(&finset::encode_tuple(&sizes, &coords)) {
                            continue 'cot;
                        }
                    }
                }
                selected.push(idx);
            }
            if selected.len() == cot_size {
                CarrierMembers::All(cot_size)
            } else {
                CarrierMembers::Subset(selected)
            }
        };
        let carrier_obj = match &members {
            CarrierMembers::All(_) => cot_obj,
            CarrierMembers::Subset(v) => Obj(v.len()),
        };
        Ok(CpSlice {
            x,
            cotensor_obj: cot_obj,
            carrier_obj,
            u_x,
            m_size: self.m_size,
            members,
        })
    }

    /// The inclusion of the carrier into its cotensor as an instance
    /// morphism. Only sensible for roster-scale objects, where hom indices
    /// stay representable.
    pub fn inclusion_hom(&self, slice: &CpSlice) -> Result<usize> {
        match &slice.members {
            CarrierMembers::All(_) => Ok(self.cat.identity(slice.cotensor_obj)),
            CarrierMembers::Subset(v) => self
                .cat
                .hom_from_table(slice.carrier_obj, slice.cotensor_obj, v)
                .ok_or_else(|| {
                    Error::Structural(format!(
                        "carrier of {} does not include into its cotensor as an instance morphism",
                        self.cat.object_name(slice.x)
                    ))
                }),
        }
    }

    /// ε(f) = f(η), as an underlying element of `x`.
    pub fn counit(&self, slice: &CpSlice, k: usize) -> usize {
        slice.cot_table(k)[self.unit]
    }

    /// Δ(f)(p) = (q ↦ f(p∘q)), returned per `p` as cotensor indices at `x`.
    pub fn delta(&self, slice: &CpSlice, k: usize) -> Vec<usize> {
        let table = slice.cot_table(k);
        let sizes = vec![slice.u_x; self.m_size];
        (0..self.m_size)
            .map(|p| {
                let inner: Vec<usize> =
                    (0..self.m_size).map(|q| table[self.mult[p][q]]).collect();
                finset::encode_tuple(&sizes, &inner)
            })
            .collect()
    }

    /// The underlying table of an instance morphism.
    pub fn hom_elem_table(&self, x: Obj, y: Obj, f: usize) -> Result<Vec<usize>> {
        self.cat.hom_table(x, y, f).ok_or_else(|| {
            Error::Structural(format!(
                "morphism {f} of hom({}, {}) has no underlying table",
                self.cat.object_name(x),
                self.cat.object_name(y)
            ))
        })
    }

    /// The carrier map of `C(f)` applied to carrier element `k`; `None`
    /// when the image leaves the target carrier (a functoriality
    /// counterexample).
    pub fn map_elem(
        &self,
        slice_x: &CpSlice,
        slice_y: &CpSlice,
        uf: &[usize],
        k: usize,
    ) -> Option<usize> {
        let table = slice_x.cot_table(k);
        let mapped: Vec<usize> = table.iter().map(|&e| uf[e]).collect();
        let idx = finset::encode_tuple(&vec![slice_y.u_x; self.m_size], &mapped);
        slice_y.members.carrier_index(idx)
    }
}

/// Standalone carrier computation, with a thin-instance shortcut: when the
/// instance exposes no elements it must verify as isomorphically projecting,
/// and the carrier is then the whole cotensor.
pub struct CpResult {
    pub x: Obj,
    pub cotensor_obj: Obj,
    pub carrier_obj: Obj,
    pub carrier_size: Option<usize>,
    pub inclusion: usize,
    pub full: bool,
}

pub fn compute_cp(
    cat: &dyn MonoidalCategory,
    op: &TruncatedOperad,
    x: Obj,
    mode: StrengthMode,
) -> Result<CpResult> {
    if cat.underlying_size(x).is_none() {
        if !op.is_unital() {
            return Err(Error::Unsupported(
                "the comonad construction needs a unital operad".into(),
            ));
        }
        let report = projection_report(cat, 6);
        if !report.isomorphically_projecting {
            return Err(Error::Unsupported(format!(
                "thin carrier shortcut needs an isomorphically projecting instance: {:?}",
                report.witnesses
            )));
        }
        let cot = cat.cotensor(op.component(1).size(), x)?;
        return Ok(CpResult {
            x,
            cotensor_obj: cot,
            carrier_obj: cot,
            carrier_size: None,
            inclusion: cat.identity(cot),
            full: true,
        });
    }
    let mut engine = ComonadEngine::new(cat, op, ComonadKind::Cp, mode)?;
    let slice = engine.slice(x)?;
    let inclusion = engine.inclusion_hom(&slice)?;
    Ok(CpResult {
        x,
        cotensor_obj: slice.cotensor_obj,
        carrier_obj: slice.carrier_obj,
        carrier_size: Some(slice.len()),
        inclusion,
        full: matches!(slice.members, CarrierMembers::All(_)),
    })
}

/// Check that the inclusion of the carrier induces injective maps on
/// hom-sets from every probe; bijective when the carrier is full.
pub fn inclusion_mono_report(
    cat: &dyn MonoidalCategory,
    cp: &CpResult,
    probes: &[Obj],
) -> Vec<Violation> {
    let mut violations = Vec::new();
    for &c in probes {
        let dom = cat.hom(c, cp.carrier_obj);
        let induced = match FinFn::from_fn(dom.clone(), cat.hom(c, cp.cotensor_obj), |g| {
            cat.compose(c, cp.carrier_obj, cp.cotensor_obj, cp.inclusion, g)
        }) {
            Ok(f) => f,
            Err(e) => {
                violations.push(Violation::new(
                    "inclusion-induced-map",
                    format!("could not build the induced map at probe {}: {e}", cat.object_name(c)),
                ));
                continue;
            }
        };
        if !induced.is_injective() {
            violations.push(Violation::new(
                "inclusion-not-monic",
                format!(
                    "induced map on hom({}, −) is not injective at {}",
                    cat.object_name(c),
                    cat.object_name(cp.x)
                ),
            ));
        }
        if cp.full && !induced.is_bijective() {
            violations.push(Violation::new(
                "inclusion-not-iso",
                format!(
                    "carrier claimed full but the induced map at probe {} is not bijective",
                    cat.object_name(c)
                ),
            ));
        }
    }
    violations
}

// ---------------------------------------------------------------------------
// the brute-force end oracle

/// A family `(f_n : P(n) → hom(c, X^{⊗n}))` natural against every permutation
/// and collapse generator.
pub type EndFamily = Vec<FinFn>;

/// Enumerate all natural families by direct filtration, arity by arity:
/// every candidate value is checked against the collapse constraints into
/// the previous arity and the permutation constraints within its own. No
/// cotensor or image computation is involved; this is the independent oracle
/// for the carrier construction.
pub fn brute_force_end(
    cat: &dyn MonoidalCategory,
    bar: &BarFunctor,
    c: Obj,
    x: Obj,
    budget: usize,
) -> Result<Vec<EndFamily>> {
    let n_max = bar.truncation;
    let mut homs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        homs.push(cat.hom(c, tensor_power(cat, x, n)?));
    }
    // postcomposition tables for the generators of the index category
    let mut perm_post: Vec<Vec<FinFn>> = Vec::with_capacity(n_max + 1);
    let mut collapse_post: Vec<Vec<FinFn>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let power = tensor_power(cat, x, n)?;
        let mut perms = Vec::new();
        for sigma in finset::symmetric_group(n) {
            let iso = perm_iso(cat, x, &sigma)?;
            perms.push(FinFn::from_fn(homs[n].clone(), homs[n].clone(), |g| {
                cat.compose(c, power, power, iso, g)
            })?);
        }
        perm_post.push(perms);
        let mut collapses = Vec::new();
        if n >= 1 {
            let lower = tensor_power(cat, x, n - 1)?;
            for i in 1..=n {
                let coll = collapse(cat, x, n, i)?;
                collapses.push(FinFn::from_fn(homs[n].clone(), homs[n - 1].clone(), |g| {
                    cat.compose(c, power, lower, coll, g)
                })?);
            }
        }
        collapse_post.push(collapses);
    }

    let mut out = Vec::new();
    let mut assignment: Vec<Vec<usize>> = (0..=n_max)
        .map(|n| vec![usize::MAX; bar.components[n].size()])
        .collect();
    let mut attempted = 0usize;

    fn extend(
        bar: &BarFunctor,
        homs: &[FinSet],
        perm_post: &[Vec<FinFn>],
        collapse_post: &[Vec<FinFn>],
        assignment: &mut Vec<Vec<usize>>,
        n: usize,
        p: usize,
        budget: usize,
        attempted: &mut usize,
        out: &mut Vec<EndFamily>,
    ) -> Result<()> {
        let n_max = bar.truncation;
        if n > n_max {
            let family: EndFamily = (0..=n_max)
                .map(|m| {
                    FinFn::new(
                        bar.components[m].clone(),
                        homs[m].clone(),
                        assignment[m].clone(),
                    )
                    .expect("assembled family")
                })
                .collect();
            out.push(family);
            return Ok(());
        }
        if p == bar.components[n].size() {
            return extend(
                bar, homs, perm_post, collapse_post, assignment, n + 1, 0, budget, attempted,
                out,
            );
        }
        'values: for v in 0..homs[n].size() {
            *attempted += 1;
            if *attempted > budget {
                return Err(Error::Budget {
                    budget,
                    attempted: *attempted,
                    context: "end family enumeration".into(),
                });
            }
            // collapse constraints into the previous arity
            if n >= 1 {
                for i in 1..=n {
                    let p_low = bar.restrictions[n][i - 1].eval(p);
                    if assignment[n - 1][p_low] != collapse_post[n][i - 1].eval(v) {
                        continue 'values;
                    }
                }
            }
            // permutation constraints within this arity, against what is
            // already pinned (including p itself under stabilizers)
            for (rank, act) in bar.perm_actions[n].iter().enumerate() {
                let q = act.eval(p);
                if q < p && assignment[n][q] != perm_post[n][rank].eval(v) {
                    continue 'values;
                }
                if q == p && perm_post[n][rank].eval(v) != v {
                    continue 'values;
                }
            }
            assignment[n][p] = v;
            extend(
                bar,
                homs,
                perm_post,
                collapse_post,
                assignment,
                n,
                p + 1,
                budget,
                attempted,
                out,
            )?;
            assignment[n][p] = usize::MAX;
        }
        Ok(())
    }

    extend(
        bar,
        &homs,
        &perm_post,
        &collapse_post,
        &mut assignment,
        0,
        0,
        budget,
        &mut attempted,
        &mut out,
    )?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// comonad laws

/// The structure the law checker consumes. The engine implements it; tests
/// wrap it to inject faults.
pub trait ComonadStructure {
    fn describe(&self) -> String;
    fn object_name(&self, x: Obj) -> String;
    fn hom_size(&self, x: Obj, y: Obj) -> usize;
    fn monoid_size(&self) -> usize;
    fn monoid_unit(&self) -> usize;
    fn slice(&mut self, x: Obj) -> Result<CpSlice>;
    fn counit(&self, slice: &CpSlice, k: usize) -> usize;
    fn delta(&self, slice: &CpSlice, k: usize) -> Vec<usize>;
    fn hom_elem_table(&self, x: Obj, y: Obj, f: usize) -> Result<Vec<usize>>;
}

impl<'a> ComonadStructure for ComonadEngine<'a> {
    fn describe(&self) -> String {
        let kind = match self.kind {
            ComonadKind::Coaction => "coaction",
            ComonadKind::Cp => "operadic subcomonad",
        };
        format!("{kind} of {} on {}", self.op.name, self.cat.cat_name())
    }
    fn object_name(&self, x: Obj) -> String {
        self.cat.object_name(x)
    }
    fn hom_size(&self, x: Obj, y: Obj) -> usize {
        self.cat.hom(x, y).size()
    }
    fn monoid_size(&self) -> usize {
        self.m_size
    }
    fn monoid_unit(&self) -> usize {
        self.unit
    }
    fn slice(&mut self, x: Obj) -> Result<CpSlice> {
        ComonadEngine::slice(self, x)
    }
    fn counit(&self, slice: &CpSlice, k: usize) -> usize {
        ComonadEngine::counit(self, slice, k)
    }
    fn delta(&self, slice: &CpSlice, k: usize) -> Vec<usize> {
        ComonadEngine::delta(self, slice, k)
    }
    fn hom_elem_table(&self, x: Obj, y: Obj, f: usize) -> Result<Vec<usize>> {
        ComonadEngine::hom_elem_table(self, x, y, f)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComonadLawsReport {
    pub comonad: String,
    pub roster: Vec<String>,
    pub carrier_sizes: Vec<(String, usize)>,
    pub violations: Vec<Violation>,
}

impl ComonadLawsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Element-wise verification of coassociativity, both counit laws, that Δ
/// lands in the carrier, and functoriality/naturality on every roster
/// morphism.
pub fn comonad_laws(
    ops: &mut dyn ComonadStructure,
    roster: &[Obj],
) -> Result<ComonadLawsReport> {
    let mut violations = Vec::new();
    let mut carrier_sizes = Vec::new();
    let m = ops.monoid_size();
    let unit = ops.monoid_unit();

    // Δ of a carrier element as carrier indices of C(x), or a violation
    fn delta_as_carrier(
        ops: &mut dyn ComonadStructure,
        x: Obj,
        slice: &CpSlice,
        k: usize,
        violations: &mut Vec<Violation>,
    ) -> Option<Vec<usize>> {
        let raw = ops.delta(slice, k);
        let mut out = Vec::with_capacity(raw.len());
        for (p, &cot) in raw.iter().enumerate() {
            match slice.members.carrier_index(cot) {
                Some(j) => out.push(j),
                None => {
                    violations.push(Violation::new(
                        "delta-left-carrier",
                        format!(
                            "Δ(f)({p}) leaves the carrier at {} (element {k})",
                            ops.object_name(x)
                        ),
                    ));
                    return None;
                }
            }
        }
        Some(out)
    }

    for &x in roster {
        let slice = ops.slice(x)?;
        carrier_sizes.push((ops.object_name(x), slice.len()));
        let slice_c = ops.slice(slice.carrier_obj)?;
        // Δ as a hom-style table on all carrier elements, for the C(Δ) side
        let mut delta_table: Vec<Option<usize>> = Vec::with_capacity(slice.len());
        let mut delta_carrier: Vec<Option<Vec<usize>>> = Vec::with_capacity(slice.len());
        for k in 0..slice.len() {
            let dc = delta_as_carrier(ops, x, &slice, k, &mut violations);
            delta_carrier.push(dc.clone());
            delta_table.push(dc.map(|table| {
                let idx = finset::encode_tuple(&vec![slice_c.u_x; m], &table);
                slice_c.members.carrier_index(idx).unwrap_or(usize::MAX)
            }));
        }
        for k in 0..slice.len() {
            let Some(dk) = &delta_carrier[k] else { continue };
            let Some(j) = delta_table[k] else { continue };
            if j == usize::MAX {
                violations.push(Violation::new(
                    "delta-left-carrier",
                    format!(
                        "Δ(f) is not an element of the second-level carrier at {} (element {k})",
                        ops.object_name(x)
                    ),
                ));
                continue;
            }
            // counit laws
            if dk[unit] != k {
                violations.push(Violation::new(
                    "counit-after-delta",
                    format!(
                        "ε(Δf) ≠ f at {} (element {k})",
                        ops.object_name(x)
                    ),
                ));
            }
            let table = slice.cot_table(k);
            for p in 0..m {
                if ops.counit(&slice, dk[p]) != table[p] {
                    violations.push(Violation::new(
                        "map-counit-after-delta",
                        format!(
                            "C(ε)(Δf) ≠ f at {} (element {k}, monoid element {p})",
                            ops.object_name(x)
                        ),
                    ));
                    break;
                }
            }
            // coassociativity
            let lhs = delta_as_carrier(ops, slice.carrier_obj, &slice_c, j, &mut violations);
            let Some(lhs) = lhs else { continue };
            let rhs: Vec<usize> = dk
                .iter()
                .map(|&kp| delta_table[kp].unwrap_or(usize::MAX))
                .collect();
            if lhs != rhs {
                violations.push(Violation::new(
                    "coassociativity",
                    format!(
                        "Δ∘Δ ≠ C(Δ)∘Δ at {} (element {k})",
                        ops.object_name(x)
                    ),
                ));
            }
        }
    }

    // functoriality and naturality on roster morphisms
    for &x in roster {
        for &y in roster {
            let slice_x = ops.slice(x)?;
            let slice_y = ops.slice(y)?;
            for f in 0..ops.hom_size(x, y) {
                let uf = ops.hom_elem_table(x, y, f)?;
                let mut cf: Vec<usize> = Vec::with_capacity(slice_x.len());
                let mut broken = false;
                for k in 0..slice_x.len() {
                    let table = slice_x.cot_table(k);
                    let mapped: Vec<usize> = table.iter().map(|&e| uf[e]).collect();
                    let idx = finset::encode_tuple(&vec![slice_y.u_x; m], &mapped);
                    match slice_y.members.carrier_index(idx) {
                        Some(j) => cf.push(j),
                        None => {
                            violations.push(Violation::new(
                                "map-left-carrier",
                                format!(
                                    "C(f) leaves the carrier for f = {f} : {} → {} (element {k})",
                                    ops.object_name(x),
                                    ops.object_name(y)
                                ),
                            ));
                            broken = true;
                            break;
                        }
                    }
                }
                if broken {
                    continue;
                }
                for k in 0..slice_x.len() {
                    // ε naturality
                    let lhs = ops.counit(&slice_y, cf[k]);
                    let rhs = uf[ops.counit(&slice_x, k)];
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "counit-naturality",
                            format!(
                                "ε∘C(f) ≠ f∘ε for f = {f} : {} → {} (element {k})",
                                ops.object_name(x),
                                ops.object_name(y)
                            ),
                        ));
                    }
                    // Δ naturality: Δ_y(C(f)k) = C(C(f))(Δ_x k)
                    let raw_y = ops.delta(&slice_y, cf[k]);
                    let lhs_delta: Option<Vec<usize>> = raw_y
                        .iter()
                        .map(|&cot| slice_y.members.carrier_index(cot))
                        .collect();
                    let raw_x = ops.delta(&slice_x, k);
                    let rhs_delta: Option<Vec<usize>> = raw_x
                        .iter()
                        .map(|&cot| {
                            slice_x
                                .members
                                .carrier_index(cot)
                                .map(|kp| cf[kp])
                        })
                        .collect();
                    match (lhs_delta, rhs_delta) {
                        (Some(l), Some(r)) if l == r => {}
                        _ => {
                            violations.push(Violation::new(
                                "delta-naturality",
                                format!(
                                    "Δ∘C(f) ≠ C(C(f))∘Δ for f = {f} : {} → {} (element {k})",
                                    ops.object_name(x),
                                    ops.object_name(y)
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }

    Ok(ComonadLawsReport {
        comonad: ops.describe(),
        roster: roster.iter().map(|&x| ops.object_name(x)).collect(),
        carrier_sizes,
        violations,
    })
}

// ---------------------------------------------------------------------------
// co-Eilenberg–Moore structures

/// A structure map `γ : X → C_P(X)` satisfying the counit and
/// coassociativity laws.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EmStructure {
    pub carrier: Obj,
    pub gamma: usize,
    /// underlying table of γ: element of `X` → carrier index
    pub gamma_table: Vec<usize>,
}

/// Exhaustively list the structure maps over the computed carrier at `x`.
pub fn em_structures(
    engine: &mut ComonadEngine<'_>,
    x: Obj,
) -> Result<Vec<EmStructure>> {
    let slice = engine.slice(x)?;
    let cat = engine.cat;
    let u_x = slice.u_x;
    let mut out = Vec::new();
    for gamma in 0..cat.hom(x, slice.carrier_obj).size() {
        let table = engine.hom_elem_table(x, slice.carrier_obj, gamma)?;
        // counit: ε∘γ = id
        if (0..u_x).any(|e| engine.counit(&slice, table[e]) != e) {
            continue;
        }
        // coassociativity: Δ∘γ = C(γ)∘γ
        let mut ok = true;
        'elems: for e in 0..u_x {
            let raw = engine.delta(&slice, table[e]);
            let lhs: Option<Vec<usize>> = raw
                .iter()
                .map(|&cot| slice.members.carrier_index(cot))
                .collect();
            let Some(lhs) = lhs else {
                ok = false;
                break 'elems;
            };
            let inner = slice.cot_table(table[e]);
            let rhs: Vec<usize> = inner.iter().map(|&v| table[v]).collect();
            if lhs != rhs {
                ok = false;
                break 'elems;
            }
        }
        if ok {
            out.push(EmStructure {
                carrier: x,
                gamma,
                gamma_table: table,
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// the equivalence between operadic and comonadic structures

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub instance: String,
    pub operad: String,
    pub truncation: usize,
    pub roster: Vec<String>,
    pub counts: Vec<(String, usize, usize)>,
    pub hom_pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Convert an operadic structure into its comonadic structure map:
/// `γ(e) = (p ↦ Φ₁(p)(e))`, which must land in the carrier.
fn operadic_to_em(
    engine: &mut ComonadEngine<'_>,
    s: &CoalgebraStructure,
    violations: &mut Vec<Violation>,
) -> Result<Option<EmStructure>> {
    let cat = engine.cat;
    let x = s.carrier;
    let slice = engine.slice(x)?;
    let m = engine.m_size;
    let u_x = slice.u_x;
    let phi1_tables: Vec<Vec<usize>> = (0..m)
        .map(|p| engine.hom_elem_table(x, x, s.maps[1].eval(p)))
        .collect::<Result<Vec<_>>>()?;
    let mut gamma_table = Vec::with_capacity(u_x);
    for e in 0..u_x {
        let f_table: Vec<usize> = (0..m).map(|p| phi1_tables[p][e]).collect();
        let cot = finset::encode_tuple(&vec![u_x; m], &f_table);
        match slice.members.carrier_index(cot) {
            Some(k) => gamma_table.push(k),
            None => {
                violations.push(Violation::new(
                    "structure-leaves-carrier",
                    format!(
                        "transposed structure map leaves the carrier at {} (element {e})",
                        cat.object_name(x)
                    ),
                ));
                return Ok(None);
            }
        }
    }
    match cat.hom_from_table(x, slice.carrier_obj, &gamma_table) {
        Some(gamma) => Ok(Some(EmStructure {
            carrier: x,
            gamma,
            gamma_table,
        })),
        None => {
            violations.push(Violation::new(
                "structure-not-a-morphism",
                format!(
                    "transposed structure map is not an instance morphism at {}",
                    cat.object_name(x)
                ),
            ));
            Ok(None)
        }
    }
}

/// Convert a comonadic structure map back into an operadic structure:
/// `Φ₁` by transposition, higher components by the unique κ-lifts.
fn em_to_operadic(
    engine: &mut ComonadEngine<'_>,
    em: &EmStructure,
    violations: &mut Vec<Violation>,
) -> Result<Option<CoalgebraStructure>> {
    let cat = engine.cat;
    let op = engine.op;
    let x = em.carrier;
    let slice = engine.slice(x)?;
    let m = engine.m_size;
    let u_x = slice.u_x;
    let n_max = op.max_arity();
    let ce = crate::coendo::coend_operad(cat, x, n_max)?;

    // Φ₁(p) = (e ↦ γ(e)(p))
    let mut phi1 = Vec::with_capacity(m);
    for p in 0..m {
        let table: Vec<usize> = (0..u_x)
            .map(|e| slice.cot_table(em.gamma_table[e])[p])
            .collect();
        match cat.hom_from_table(x, x, &table) {
            Some(h) => phi1.push(h),
            None => {
                violations.push(Violation::new(
                    "transposition-not-a-morphism",
                    format!(
                        "γ transposed at monoid element {p} is not an instance morphism at {}",
                        cat.object_name(x)
                    ),
                ));
                return Ok(None);
            }
        }
    }

    let mut maps: Vec<FinFn> = Vec::with_capacity(n_max + 1);
    // arity 0: the unique map into the terminal hom
    maps.push(FinFn::constant(
        op.component(0).clone(),
        ce.operad.component(0).clone(),
        0,
    )?);
    maps.push(FinFn::new(
        op.component(1).clone(),
        ce.operad.component(1).clone(),
        phi1.clone(),
    )?);
    for n in 2..=n_max {
        let kappa = kappa_n(cat, x, x, n)?;
        let mut preimage: BTreeMap<usize, usize> = BTreeMap::new();
        for g in kappa.dom().elems() {
            preimage.insert(kappa.eval(g), g);
        }
        let hom_xx = cat.hom(x, x).size();
        let sizes = vec![hom_xx; n];
        let mut table = Vec::with_capacity(op.component(n).size());
        for p in op.component(n).elems() {
            let coords: Vec<usize> = (1..=n)
                .map(|i| {
                    let phi =
                        FinFn::new(FinSet::new(1), FinSet::new(n), vec![i - 1]).unwrap();
                    let slot = engine.bar.action_for_injection(&phi).expect("slot map");
                    phi1[slot.eval(p)]
                })
                .collect();
            match preimage.get(&finset::encode_tuple(&sizes, &coords)) {
                Some(&lift) => table.push(lift),
                None => {
                    violations.push(Violation::new(
                        "lift-failure",
                        format!(
                            "κ-lift missing at arity {n}, element {p} over {}; the comonadic structure does not come from an operadic one",
                            cat.object_name(x)
                        ),
                    ));
                    return Ok(None);
                }
            }
        }
        maps.push(FinFn::new(
            op.component(n).clone(),
            ce.operad.component(n).clone(),
            table,
        )?);
    }

    let structure = CoalgebraStructure { carrier: x, maps };
    let check = structure.as_morphism().check(op, &ce.operad);
    if let Some(v) = check.first() {
        violations.push(Violation::new(
            "reconstruction-not-a-morphism",
            format!("reconstructed family fails: {v}"),
        ));
        return Ok(None);
    }
    Ok(Some(structure))
}

/// For every roster object: enumerate both structure kinds, build the two
/// translations, verify they are mutually inverse bijections, and check
/// hom-set equality for every pair of structures. Lift failures are
/// counterexamples, never silently repaired.
pub fn equivalence_report(
    cat: &dyn MonoidalCategory,
    op: &TruncatedOperad,
    roster: &[Obj],
    budget: usize,
    mode: StrengthMode,
) -> Result<EquivalenceReport> {
    let mut engine = ComonadEngine::new(cat, op, ComonadKind::Cp, mode)?;
    let mut violations = Vec::new();
    let mut counts = Vec::new();
    let mut operadic_all: Vec<CoalgebraStructure> = Vec::new();

    for &x in roster {
        let operadic = enumerate_coalgebras(cat, op, x, budget)?;
        let em = em_structures(&mut engine, x)?;
        counts.push((cat.object_name(x), operadic.len(), em.len()));

        // operadic → comonadic is injective into the enumerated set
        let mut images = Vec::new();
        for s in &operadic {
            if let Some(e) = operadic_to_em(&mut engine, s, &mut violations)? {
                if !em.contains(&e) {
                    violations.push(Violation::new(
                        "translation-misses",
                        format!(
                            "translated operadic structure is not a recognized comonadic one at {}",
                            cat.object_name(x)
                        ),
                    ));
                }
                images.push(e);
            }
        }
        // comonadic → operadic and the round trips
        for e in &em {
            if let Some(s) = em_to_operadic(&mut engine, e, &mut violations)? {
                if !operadic.contains(&s) {
                    violations.push(Violation::new(
                        "translation-misses",
                        format!(
                            "reconstructed operadic structure was not enumerated at {}",
                            cat.object_name(x)
                        ),
                    ));
                }
                match operadic_to_em(&mut engine, &s, &mut violations)? {
                    Some(back) if &back == e => {}
                    _ => violations.push(Violation::new(
                        "round-trip",
                        format!(
                            "comonadic → operadic → comonadic is not the identity at {}",
                            cat.object_name(x)
                        ),
                    )),
                }
            }
        }
        for (s, e) in operadic.iter().zip(images.iter()) {
            match em_to_operadic(&mut engine, e, &mut violations)? {
                Some(back) if &back == s => {}
                _ => violations.push(Violation::new(
                    "round-trip",
                    format!(
                        "operadic → comonadic → operadic is not the identity at {}",
                        cat.object_name(x)
                    ),
                )),
            }
        }
        if operadic.len() != em.len() {
            violations.push(Violation::new(
                "count-mismatch",
                format!(
                    "{}: {} operadic vs {} comonadic structures",
                    cat.object_name(x),
                    operadic.len(),
                    em.len()
                ),
            ));
        }
        operadic_all.extend(operadic);
    }

    // hom-set equality, pairing structures by the translation
    let mut hom_pairs_checked = 0usize;
    let mut em_of: BTreeMap<usize, EmStructure> = BTreeMap::new();
    for (idx, s) in operadic_all.iter().enumerate() {
        if let Some(e) = operadic_to_em(&mut engine, s, &mut violations)? {
            em_of.insert(idx, e);
        }
    }
    for (ia, a) in operadic_all.iter().enumerate() {
        for (ib, b) in operadic_all.iter().enumerate() {
            let (Some(ea), Some(eb)) = (em_of.get(&ia), em_of.get(&ib)) else {
                continue;
            };
            hom_pairs_checked += 1;
            let (_, _, operadic_homs) = coalgebra_hom_set(cat, op, a, b)?;
            let slice_a = engine.slice(a.carrier)?;
            let slice_b = engine.slice(b.carrier)?;
            let mut em_homs = Vec::new();
            for f in 0..cat.hom(a.carrier, b.carrier).size() {
                let uf = engine.hom_elem_table(a.carrier, b.carrier, f)?;
                let mut good = true;
                for e in 0..slice_a.u_x {
                    let lhs = eb.gamma_table[uf[e]];
                    let rhs = engine.map_elem(&slice_a, &slice_b, &uf, ea.gamma_table[e]);
                    if rhs != Some(lhs) {
                        good = false;
                        break;
                    }
                }
                if good {
                    em_homs.push(f);
                }
            }
            if operadic_homs != em_homs {
                violations.push(Violation::new(
                    "hom-set-mismatch",
                    format!(
                        "operadic hom-set {:?} ≠ comonadic hom-set {:?} between structures on ({}, {})",
                        operadic_homs,
                        em_homs,
                        cat.object_name(a.carrier),
                        cat.object_name(b.carrier)
                    ),
                ));
            }
        }
    }
    Ok(EquivalenceReport {
        instance: cat.cat_name(),
        operad: op.name.clone(),
        truncation: op.max_arity(),
        roster: roster.iter().map(|&x| cat.object_name(x)).collect(),
        counts,
        hom_pairs_checked,
        violations,
    })
}

// ---------------------------------------------------------------------------
// the Cartesian application

#[derive(Clone, Debug, Serialize)]
pub struct FoxReport {
    pub instance: String,
    pub truncation: usize,
    pub roster: Vec<String>,
    pub coalgebra_count: usize,
    pub violations: Vec<Violation>,
}

impl FoxReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// In a verified Cartesian (isomorphically projecting) instance: the comonad
/// of the commutative operad is naturally isomorphic to the identity, every
/// object carries exactly one counital cocommutative structure, and its
/// comultiplication is the diagonal.
pub fn fox_report(
    cat: &dyn MonoidalCategory,
    max_arity: usize,
    roster: &[Obj],
    budget: usize,
) -> Result<FoxReport> {
    let op = crate::operad::com(max_arity);
    let mut violations = Vec::new();

    let proj = projection_report(cat, roster.len().max(4));
    if !proj.isomorphically_projecting {
        return Err(Error::Unsupported(format!(
            "the identity-comonad check needs a Cartesian (isomorphically projecting) instance: {:?}",
            proj.witnesses
        )));
    }

    let mut count = 0usize;
    for &x in roster {
        let found = enumerate_coalgebras(cat, &op, x, budget)?;
        if found.len() != 1 {
            violations.push(Violation::new(
                "structure-count",
                format!(
                    "{} carries {} structures, expected exactly 1",
                    cat.object_name(x),
                    found.len()
                ),
            ));
            continue;
        }
        count += 1;
        let s = &found[0];
        // the binary co-operation must be the diagonal
        let xx = cat.tensor_obj(x, x)?;
        let diagonal = match cat.underlying_size(x) {
            Some(u) => {
                let table: Vec<usize> = (0..u).map(|e| e * u + e).collect();
                cat.hom_from_table(x, xx, &table)
            }
            // thin instance: hom(x, x⊗x) is a point, the diagonal
            None => (cat.hom(x, xx).size() == 1).then_some(0),
        };
        match diagonal {
            Some(d) if s.maps[2].table().iter().all(|&v| v == d) => {}
            _ => violations.push(Violation::new(
                "not-diagonal",
                format!(
                    "the binary co-operation on {} is not the diagonal",
                    cat.object_name(x)
                ),
            )),
        }
        // the carrier is the object itself, identity comonad
        let cp = compute_cp(cat, &op, x, StrengthMode::AllArities)?;
        if cp.carrier_obj != x || !cp.full {
            violations.push(Violation::new(
                "not-identity-comonad",
                format!(
                    "carrier at {} is {} rather than the object itself",
                    cat.object_name(x),
                    cat.object_name(cp.carrier_obj)
                ),
            ));
        }
    }

    // naturality of the identification on every roster morphism (set-like
    // instances only; thin instances have at most one parallel morphism)
    if roster.iter().all(|&x| cat.underlying_size(x).is_some()) {
        let mut engine = ComonadEngine::new(cat, &op, ComonadKind::Cp, StrengthMode::AllArities)?;
        for &x in roster {
            for &y in roster {
                let slice_x = engine.slice(x)?;
                let slice_y = engine.slice(y)?;
                for f in 0..cat.hom(x, y).size() {
                    let uf = engine.hom_elem_table(x, y, f)?;
                    for k in 0..slice_x.len() {
                        // under carrier ≅ object, C(f) must act exactly as f
                        let mapped = engine.map_elem(&slice_x, &slice_y, &uf, k);
                        if mapped != Some(uf[k]) {
                            violations.push(Violation::new(
                                "iso-not-natural",
                                format!(
                                    "C(f) ≠ f under the identification for f = {f} : {} → {}",
                                    cat.object_name(x),
                                    cat.object_name(y)
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }

    Ok(FoxReport {
        instance: cat.cat_name(),
        truncation: max_arity,
        roster: roster.iter().map(|&x| cat.object_name(x)).collect(),
        coalgebra_count: count,
        violations,
    })
}

// ---------------------------------------------------------------------------
// the tensor-power functor on the index category

/// The functor sending arity `n` to `x^{⊗n}`, permutations to structural
/// isomorphisms and deletions to collapse maps, ready for `check_functor`
/// against the index category.
pub fn power_functor(
    cat: &dyn MonoidalCategory,
    x: Obj,
    truncation: usize,
) -> Result<FunctorData> {
    let mut object_map = BTreeMap::new();
    for n in 0..=truncation {
        object_map.insert(Obj(n), tensor_power(cat, x, n)?);
    }
    let mut hom_maps = BTreeMap::new();
    for m in 0..=truncation {
        for n in 0..=truncation {
            let injections = crate::operad::injections(n, m);
            let dom = FinSet::new(injections.len());
            let cod = cat.hom(object_map[&Obj(m)], object_map[&Obj(n)]);
            let mut table = Vec::with_capacity(injections.len());
            for phi in &injections {
                // factor as (permutation of m slots, then deletion of the
                // top m−n slots), mirroring the operadic action
                let mut tau: Vec<usize> = phi.table().to_vec();
                let mut used = vec![false; m];
                for &v in phi.table() {
                    used[v] = true;
                }
                tau.extend((0..m).filter(|&v| !used[v]));
                let tau_fn = FinFn::new(FinSet::new(m), FinSet::new(m), tau)?;
                let mut acc = perm_iso(cat, x, &tau_fn)?;
                let full = object_map[&Obj(m)];
                for arity in ((n + 1)..=m).rev() {
                    let step = collapse(cat, x, arity, arity)?;
                    let mid = tensor_power(cat, x, arity)?;
                    let out = tensor_power(cat, x, arity - 1)?;
                    acc = cat.compose(full, mid, out, step, acc);
                }
                table.push(acc);
            }
            hom_maps.insert((Obj(m), Obj(n)), FinFn::new(dom, cod, table)?);
        }
    }
    Ok(FunctorData {
        object_map,
        hom_maps,
    })
}

/// Convenience wrapper: verify the tensor-power functor against the index
/// category.
pub fn check_power_functor(
    cat: &dyn MonoidalCategory,
    x: Obj,
    truncation: usize,
) -> Result<FunctorReport> {
    let k = IndexKCategory::new(truncation);
    let f = power_functor(cat, x, truncation)?;
    check_functor(&f, &k, cat as &dyn Category, truncation + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Category;
    use crate::instances::{
        boolean_lattice, build_finsets_capped, build_pointed_sets, divisor_lattice,
    };
    use crate::operad::{ass, com, from_monoid, MonoidTable};

    const BUDGET: usize = 2_000_000;

    fn z2_operad() -> TruncatedOperad {
        from_monoid(&MonoidTable::cyclic(2), 3)
    }

    #[test]
    fn cotensor_universal_property_on_probes() {
        // hom(c, V⋔X) in natural bijection with functions V → hom(c, X)
        let p = build_pointed_sets(3).unwrap();
        for v in 0..=2usize {
            for x in [Obj(1), Obj(2), Obj(3)] {
                for c in [Obj(1), Obj(2), Obj(3)] {
                    let cot = p.cotensor(v, x).unwrap();
                    let lhs = p.hom(c, cot).size();
                    let rhs = finset::count_functions(v, p.hom(c, x).size());
                    assert_eq!(lhs, rhs, "v={v}, x={x}, c={c}");
                }
            }
        }
    }

    #[test]
    fn cp_carrier_of_com_on_two_points() {
        let p = build_pointed_sets(3).unwrap();
        let com3 = com(3);
        let cp = compute_cp(&p, &com3, Obj(2), StrengthMode::AllArities).unwrap();
        assert_eq!(cp.carrier_size, Some(1));
        // the surviving element is the constant-basepoint function
        let mut engine =
            ComonadEngine::new(&p, &com3, ComonadKind::Cp, StrengthMode::AllArities).unwrap();
        let slice = engine.slice(Obj(2)).unwrap();
        assert_eq!(slice.cot_table(0), vec![0]);
    }

    #[test]
    fn cp_of_monoid_operad_is_the_coaction() {
        let p = build_pointed_sets(3).unwrap();
        let op = z2_operad();
        let mut cp =
            ComonadEngine::new(&p, &op, ComonadKind::Cp, StrengthMode::AllArities).unwrap();
        let mut coaction =
            ComonadEngine::new(&p, &op, ComonadKind::Coaction, StrengthMode::AllArities).unwrap();
        for x in [Obj(1), Obj(2), Obj(3)] {
            let a = cp.slice(x).unwrap();
            let b = coaction.slice(x).unwrap();
            assert_eq!(a.len(), b.len());
            assert_eq!(a.carrier_obj, b.carrier_obj);
            for k in 0..a.len() {
                assert_eq!(a.cot_table(k), b.cot_table(k));
                assert_eq!(cp.counit(&a, k), coaction.counit(&b, k));
                assert_eq!(cp.delta(&a, k), coaction.delta(&b, k));
            }
        }
        let x2 = cp.slice(Obj(2)).unwrap();
        assert_eq!(x2.len(), 4);
    }

    #[test]
    fn cp_on_cartesian_instance_is_identity_like() {
        let f = build_finsets_capped(2, 16).unwrap();
        let cp = compute_cp(&f, &com(3), Obj(2), StrengthMode::AllArities).unwrap();
        assert!(cp.full);
        // P(1) is a point, so the cotensor is the object itself
        assert_eq!(cp.carrier_obj, Obj(2));
    }

    #[test]
    fn cp_thin_shortcut_on_lattice() {
        let l = divisor_lattice(12).unwrap();
        for x in l.objects() {
            let cp = compute_cp(&l, &com(3), x, StrengthMode::AllArities).unwrap();
            assert!(cp.full);
            assert_eq!(cp.carrier_obj, x);
            let probes = l.objects();
            assert!(inclusion_mono_report(&l, &cp, &probes).is_empty());
        }
    }

    #[test]
    fn brute_force_end_examples() {
        let p = build_pointed_sets(3).unwrap();
        let probe = Obj(2);
        // commutative operad on the two-point object: one family
        let bar = BarFunctor::from_operad(&com(3)).unwrap();
        let families = brute_force_end(&p, &bar, probe, Obj(2), BUDGET).unwrap();
        assert_eq!(families.len(), 1);
        // monoid operad: one family per function P(1) → X
        let bar = BarFunctor::from_operad(&z2_operad()).unwrap();
        let families = brute_force_end(&p, &bar, probe, Obj(2), BUDGET).unwrap();
        assert_eq!(families.len(), 4);
    }

    #[test]
    fn brute_force_end_degenerate_components() {
        // a diagram with every positive arity empty follows the
        // empty-function conventions: exactly one family
        let p = build_pointed_sets(2).unwrap();
        let bar = BarFunctor {
            truncation: 2,
            components: vec![FinSet::new(1), FinSet::new(0), FinSet::new(0)],
            perm_actions: vec![
                vec![FinFn::identity(&FinSet::new(1))],
                vec![FinFn::identity(&FinSet::new(0))],
                vec![FinFn::identity(&FinSet::new(0)); 2],
            ],
            restrictions: vec![
                vec![],
                vec![FinFn::new(FinSet::new(0), FinSet::new(1), vec![]).unwrap()],
                vec![FinFn::new(FinSet::new(0), FinSet::new(0), vec![]).unwrap(); 2],
            ],
        };
        let families = brute_force_end(&p, &bar, Obj(2), Obj(2), BUDGET).unwrap();
        assert_eq!(families.len(), 1);
    }

    #[test]
    fn oracle_agreement_on_pointed_probes() {
        // carrier elements correspond exactly to end families at the
        // representing probe, matching on the arity-1 component
        let p = build_pointed_sets(3).unwrap();
        let probe = Obj(2);
        for op in [com(3), ass(3), z2_operad()] {
            let bar = BarFunctor::from_operad(&op).unwrap();
            let mut engine =
                ComonadEngine::new(&p, &op, ComonadKind::Cp, StrengthMode::AllArities).unwrap();
            for x in [Obj(1), Obj(2), Obj(3)] {
                let slice = engine.slice(x).unwrap();
                let families = brute_force_end(&p, &bar, probe, x, BUDGET).unwrap();
                assert_eq!(
                    slice.len(),
                    families.len(),
                    "operad {} at {x}",
                    op.name
                );
                // each family's unary component, read as a function
                // P(1) → X, must be a carrier element, bijectively
                let mut family_tables: Vec<Vec<usize>> = families
                    .iter()
                    .map(|fam| {
                        fam[1]
                            .table()
                            .iter()
                            .map(|&h| {
                                let t = p.hom_table(probe, x, h).unwrap();
                                t[1]
                            })
                            .collect()
                    })
                    .collect();
                family_tables.sort();
                let mut carrier_tables: Vec<Vec<usize>> =
                    (0..slice.len()).map(|k| slice.cot_table(k)).collect();
                carrier_tables.sort();
                assert_eq!(family_tables, carrier_tables, "operad {}", op.name);
            }
        }
    }

    #[test]
    fn oracle_bijection_commutes_with_counit_and_delta() {
        let p = build_pointed_sets(3).unwrap();
        let probe = Obj(2);
        let op = z2_operad();
        let bar = BarFunctor::from_operad(&op).unwrap();
        let mut engine =
            ComonadEngine::new(&p, &op, ComonadKind::Cp, StrengthMode::AllArities).unwrap();
        let x = Obj(2);
        let slice = engine.slice(x).unwrap();
        let families = brute_force_end(&p, &bar, probe, x, BUDGET).unwrap();
        for fam in &families {
            let table: Vec<usize> = fam[1]
                .table()
                .iter()
                .map(|&h| p.hom_table(probe, x, h).unwrap()[1])
                .collect();
            let cot = finset::encode_tuple(&vec![slice.u_x; slice.m_size], &table);
            let k = slice.members.carrier_index(cot).expect("family is a carrier element");
            // counit agrees: evaluating the family at the unit recovers ε
            assert_eq!(engine.counit(&slice, k), table[op.unit_elem()]);
            // Δ agrees with the multiplication-shifted family
            let delta = engine.delta(&slice, k);
            for p_elem in 0..slice.m_size {
                let expected: Vec<usize> = (0..slice.m_size)
                    .map(|q| table[engine.monoid_mult()[p_elem][q]])
                    .collect();
                assert_eq!(
                    delta[p_elem],
                    finset::encode_tuple(&vec![slice.u_x; slice.m_size], &expected)
                );
            }
        }
    }

    #[test]
    fn strength_shortcut_agrees_with_full_check() {
        let p = build_pointed_sets(3).unwrap();
        for op in [com(3), ass(3), z2_operad()] {
            for x in [Obj(1), Obj(2), Obj(3)] {
                let full = compute_cp(&p, &op, x, StrengthMode::AllArities).unwrap();
                let quick = compute_cp(&p, &op, x, StrengthMode::Pairwise).unwrap();
                assert_eq!(full.carrier_size, quick.carrier_size, "{} at {x}", op.name);
                assert_eq!(full.carrier_obj, quick.carrier_obj);
                assert_eq!(full.inclusion, quick.inclusion);
            }
        }
    }

    #[test]
    fn comonad_laws_pass_for_builtins() {
        let p = build_pointed_sets(3).unwrap();
        let roster = [Obj(1), Obj(2), Obj(3)];
        for op in [com(3), ass(3), z2_operad()] {
            let mut engine =
                ComonadEngine::new(&p, &op, ComonadKind::Cp, StrengthMode::AllArities).unwrap();
            let report = comonad_laws(&mut engine, &roster).unwrap();
            assert!(report.passed(), "{}: {:?}", op.name, report.violations);
        }
    }

    #[test]
    fn coaction_laws_for_small_monoids() {
        let p = build_pointed_sets(2).unwrap();
        let roster = [Obj(1), Obj(2)];
        for monoid in crate::operad::enumerate_monoids(3) {
            let op = from_monoid(&monoid, 2);
            let mut engine =
                ComonadEngine::new(&p, &op, ComonadKind::Coaction, StrengthMode::AllArities)
                    .unwrap();
            let report = comonad_laws(&mut engine, &roster).unwrap();
            assert!(report.passed(), "{}: {:?}", monoid.name, report.violations);
        }
    }

    /// Wrapper that flips the order of the monoid multiplication inside Δ at
    /// one object only, which is inconsistent with the untouched levels.
    struct SkewedDelta<'a> {
        inner: ComonadEngine<'a>,
        target: Obj,
    }

    impl<'a> ComonadStructure for SkewedDelta<'a> {
        fn describe(&self) -> String {
            format!("{} with skewed comultiplication", self.inner.describe())
        }
        fn object_name(&self, x: Obj) -> String {
            self.inner.object_name(x)
        }
        fn hom_size(&self, x: Obj, y: Obj) -> usize {
            ComonadStructure::hom_size(&self.inner, x, y)
        }
        fn monoid_size(&self) -> usize {
            ComonadStructure::monoid_size(&self.inner)
        }
        fn monoid_unit(&self) -> usize {
            ComonadStructure::monoid_unit(&self.inner)
        }
        fn slice(&mut self, x: Obj) -> Result<CpSlice> {
            self.inner.slice(x)
        }
        fn counit(&self, slice: &CpSlice, k: usize) -> usize {
            self.inner.counit(slice, k)
        }
        fn delta(&self, slice: &CpSlice, k: usize) -> Vec<usize> {
            if slice.x != self.target {
                return self.inner.delta(slice, k);
            }
            let table = slice.cot_table(k);
            let m = ComonadStructure::monoid_size(&self.inner);
            let mult = self.inner.monoid_mult();
            (0..m)
                .map(|p| {
                    let inner_table: Vec<usize> =
                        (0..m).map(|q| table[mult[q][p]]).collect();
                    finset::encode_tuple(&vec![slice.u_x; m], &inner_table)
                })
                .collect()
        }
        fn hom_elem_table(&self, x: Obj, y: Obj, f: usize) -> Result<Vec<usize>> {
            self.inner.hom_elem_table(x, y, f)
        }
    }

    #[test]
    fn skewed_comultiplication_is_caught() {
        // a non-commutative monoid distinguishes the two orders: the
        // left-zero semigroup with adjoined unit
        let mult = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        let monoid = MonoidTable::new(3, 0, mult, "lz3".into()).unwrap();
        let op = from_monoid(&monoid, 2);
        let p = build_pointed_sets(3).unwrap();
        let engine =
            ComonadEngine::new(&p, &op, ComonadKind::Coaction, StrengthMode::AllArities).unwrap();
        let mut skewed = SkewedDelta {
            inner: engine,
            target: Obj(3),
        };
        let report = comonad_laws(&mut skewed, &[Obj(3)]).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn em_structure_counts() {
        let p = build_pointed_sets(3).unwrap();
        let com3 = com(3);
        let mut engine =
            ComonadEngine::new(&p, &com3, ComonadKind::Cp, StrengthMode::AllArities).unwrap();
        assert_eq!(em_structures(&mut engine, Obj(1)).unwrap().len(), 1);
        assert_eq!(em_structures(&mut engine, Obj(2)).unwrap().len(), 0);
        let z2 = z2_operad();
        let mut engine =
            ComonadEngine::new(&p, &z2, ComonadKind::Cp, StrengthMode::AllArities).unwrap();
        let found = em_structures(&mut engine, Obj(2)).unwrap();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn equivalence_for_suite_operads() {
        let p = build_pointed_sets(3).unwrap();
        let roster = [Obj(1), Obj(2), Obj(3)];
        for op in [com(3), ass(3), z2_operad()] {
            let report =
                equivalence_report(&p, &op, &roster, BUDGET, StrengthMode::AllArities).unwrap();
            assert!(report.passed(), "{}: {:?}", op.name, report.violations);
        }
    }

    #[test]
    fn equivalence_respects_composition() {
        // recognized morphisms compose, and the two recognitions agree on
        // composites across every structure pair
        use crate::coalgebra::{coalgebra_hom_set, is_coalgebra_morphism};
        let p = build_pointed_sets(3).unwrap();
        let op = z2_operad();
        let mut engine =
            ComonadEngine::new(&p, &op, ComonadKind::Cp, StrengthMode::AllArities).unwrap();
        let mut structures = Vec::new();
        for x in [Obj(1), Obj(2), Obj(3)] {
            structures.extend(enumerate_coalgebras(&p, &op, x, BUDGET).unwrap());
        }
        for a in &structures {
            for b in &structures {
                let (_, _, fs) = coalgebra_hom_set(&p, &op, a, b).unwrap();
                for c in &structures {
                    let (_, _, gs) = coalgebra_hom_set(&p, &op, b, c).unwrap();
                    for &f in &fs {
                        for &g in &gs {
                            let gf = p.compose(a.carrier, b.carrier, c.carrier, g, f);
                            assert!(is_coalgebra_morphism(&p, &op, a, c, gf).unwrap());
                            // comonadic recognition of the composite
                            let ea = em_of(&mut engine, a);
                            let ec = em_of(&mut engine, c);
                            let slice_a = engine.slice(a.carrier).unwrap();
                            let slice_c = engine.slice(c.carrier).unwrap();
                            let uf = engine.hom_elem_table(a.carrier, c.carrier, gf).unwrap();
                            for e in 0..slice_a.u_x {
                                let lhs = ec.gamma_table[uf[e]];
                                let rhs = engine
                                    .map_elem(&slice_a, &slice_c, &uf, ea.gamma_table[e])
                                    .unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    /// The comonadic structure corresponding to an operadic one, for tests.
    pub(super) fn em_of(
        engine: &mut ComonadEngine<'_>,
        s: &crate::coalgebra::CoalgebraStructure,
    ) -> EmStructure {
        let mut violations = Vec::new();
        let e = super::operadic_to_em(engine, s, &mut violations)
            .unwrap()
            .expect("structure translates");
        assert!(violations.is_empty());
        e
    }

    #[test]
    fn fox_reports_on_lattices() {
        let l = divisor_lattice(12).unwrap();
        let report = fox_report(&l, 3, &l.objects(), BUDGET).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.coalgebra_count, 6);

        let b = boolean_lattice(2).unwrap();
        let report = fox_report(&b, 3, &b.objects(), BUDGET).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.coalgebra_count, 4);
    }

    #[test]
    fn fox_report_on_bounded_cartesian_sets() {
        let f = build_finsets_capped(3, 9).unwrap();
        let report = fox_report(&f, 2, &f.objects(), BUDGET).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.coalgebra_count, 4);
    }

    #[test]
    fn fox_rejects_non_cartesian_instances() {
        let p = build_pointed_sets(3).unwrap();
        assert!(matches!(
            fox_report(&p, 2, &p.objects(), BUDGET),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn power_functor_is_a_functor() {
        let p = build_pointed_sets(3).unwrap();
        let report = check_power_functor(&p, Obj(2), 3).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        let f = build_finsets_capped(2, 16).unwrap();
        let report = check_power_functor(&f, Obj(2), 3).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn inclusion_is_monic_on_probes() {
        let p = build_pointed_sets(3).unwrap();
        let probes = p.objects();
        for op in [com(3), ass(3), z2_operad()] {
            for x in [Obj(1), Obj(2), Obj(3)] {
                let cp = compute_cp(&p, &op, x, StrengthMode::AllArities).unwrap();
                let violations = inclusion_mono_report(&p, &cp, &probes);
                assert!(violations.is_empty(), "{} at {x}: {violations:?}", op.name);
            }
        }
    }
}

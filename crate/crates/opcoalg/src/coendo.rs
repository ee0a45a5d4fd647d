//! Coendomorphism operads.
//!
//! For an object `X` of a symmetric monoidal instance, the arity-r component
//! is `hom(X, X^{⊗r})`. Partial composition substitutes into one tensor slot
//! (`(f, g) ↦ (id^{⊗(i−1)} ⊗ g ⊗ id^{⊗(m−i)}) ∘ f`), the unit is the
//! identity of `X`, and permutations act by post-composing the structural
//! isomorphisms of the power. The result is materialized as an ordinary
//! [`TruncatedOperad`] so every downstream consumer is uniform.

use crate::error::{Error, Result};
use crate::fincat::Obj;
use crate::finset::{self, FinFn, FinSet};
use crate::monoidal::{mor_power, perm_iso, tensor_many, tensor_power, MonoidalCategory};
use crate::operad::{partial_keys, OperadMorphism, TruncatedOperad};
use std::collections::BTreeMap;

/// A coendomorphism operad, remembering its carrier object.
#[derive(Clone, Debug)]
pub struct CoEndOperad {
    pub carrier: Obj,
    pub operad: TruncatedOperad,
}

/// Materialize the coendomorphism operad of `x` up to `max_arity`.
pub fn coend_operad(
    cat: &dyn MonoidalCategory,
    x: Obj,
    max_arity: usize,
) -> Result<CoEndOperad> {
    let powers: Vec<Obj> = (0..=max_arity)
        .map(|r| tensor_power(cat, x, r))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            Error::Bound(msg) => Error::Bound(format!(
                "coendomorphism operad of {} needs a tensor power outside the instance: {msg}",
                cat.object_name(x)
            )),
            other => other,
        })?;
    let components: Vec<FinSet> = (0..=max_arity).map(|r| cat.hom(x, powers[r])).collect();
    let unit = cat.identity(x);

    let mut partial = BTreeMap::new();
    for key @ (m, n, i) in partial_keys(max_arity) {
        let dom = FinSet::new(components[m].size() * components[n].size());
        let cod = components[m + n - 1].clone();
        let n_size = components[n].size();
        let id_x = cat.identity(x);
        let mut table = Vec::with_capacity(dom.size());
        for pair in 0..dom.size() {
            let f = pair / n_size;
            let g = pair % n_size;
            // id^{⊗(i-1)} ⊗ g ⊗ id^{⊗(m-i)}
            let mut parts = Vec::with_capacity(m);
            for _ in 0..i - 1 {
                parts.push((x, x, id_x));
            }
            parts.push((x, powers[n], g));
            for _ in i..m {
                parts.push((x, x, id_x));
            }
            let (mid_dom, mid_cod, middle) = tensor_many(cat, &parts)?;
            debug_assert_eq!(mid_dom, powers[m]);
            debug_assert_eq!(mid_cod, powers[m + n - 1]);
            table.push(cat.compose(x, powers[m], powers[m + n - 1], middle, f));
        }
        partial.insert(key, FinFn::new(dom, cod, table)?);
    }

    let mut actions = Vec::with_capacity(max_arity + 1);
    for (r, component) in components.iter().enumerate() {
        let mut family = Vec::new();
        for sigma in finset::symmetric_group(r) {
            let iso = perm_iso(cat, x, &sigma)?;
            family.push(FinFn::from_fn(component.clone(), component.clone(), |f| {
                cat.compose(x, powers[r], powers[r], iso, f)
            })?);
        }
        actions.push(family);
    }

    let operad = TruncatedOperad::new(
        format!("coend({})", cat.object_name(x)),
        max_arity,
        components,
        unit,
        partial,
        actions,
    )?;
    Ok(CoEndOperad { carrier: x, operad })
}

/// Transport a coendomorphism operad along an isomorphism `f : X → Y` with
/// stated inverse: `h ↦ f^{⊗r} ∘ h ∘ f⁻¹` per arity. Returns the transported
/// operad together with the operad isomorphism.
pub fn transport_iso(
    cat: &dyn MonoidalCategory,
    source: &CoEndOperad,
    y: Obj,
    f: usize,
    f_inv: usize,
) -> Result<(CoEndOperad, OperadMorphism)> {
    let x = source.carrier;
    if cat.compose(x, y, x, f_inv, f) != cat.identity(x) {
        return Err(Error::Validation(format!(
            "claimed inverse fails: f⁻¹∘f ≠ id on {}",
            cat.object_name(x)
        )));
    }
    if cat.compose(y, x, y, f, f_inv) != cat.identity(y) {
        return Err(Error::Validation(format!(
            "claimed inverse fails: f∘f⁻¹ ≠ id on {}",
            cat.object_name(y)
        )));
    }
    let n_max = source.operad.max_arity();
    let target = coend_operad(cat, y, n_max)?;
    let mut components = Vec::with_capacity(n_max + 1);
    for r in 0..=n_max {
        let x_pow = tensor_power(cat, x, r)?;
        let y_pow = tensor_power(cat, y, r)?;
        let f_pow = mor_power(cat, x, y, f, r)?;
        components.push(FinFn::from_fn(
            source.operad.component(r).clone(),
            target.operad.component(r).clone(),
            |h| {
                let to_x = cat.compose(y, x, x_pow, h, f_inv);
                cat.compose(y, x_pow, y_pow, f_pow, to_x)
            },
        )?);
    }
    let morphism = OperadMorphism { components };
    let violations = morphism.check(&source.operad, &target.operad);
    if let Some(v) = violations.first() {
        return Err(Error::Validation(format!(
            "transport along an isomorphism produced a non-morphism: {v}"
        )));
    }
    if !morphism.is_isomorphism() {
        return Err(Error::Validation(
            "transport along an isomorphism is not invertible".into(),
        ));
    }
    Ok((target, morphism))
}

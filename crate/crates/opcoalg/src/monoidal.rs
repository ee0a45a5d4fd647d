//! Strict symmetric monoidal structure on a category.
//!
//! Everything here is presented strictly: iterated tensors have a chosen
//! normal form, so there is no associator bookkeeping. The module provides
//! the derived machinery the rest of the crate runs on: tensor powers,
//! collapse maps in semicartesian structures, the comparison maps
//! `κ_n : hom(c, X^{⊗n}) → hom(c, X)^{×n}`, the projection classification
//! (monic / isomorphic), and the pairwise strength criterion.

use crate::error::{Error, Result};
use crate::fincat::{Category, Obj, Violation};
use crate::finset::{self, FinFn};
use serde::Serialize;

/// A category carrying strict symmetric monoidal structure, with a
/// designated unit and symmetry components for each pair of objects.
pub trait MonoidalCategory: Category {
    fn unit(&self) -> Obj;

    /// Strict normal form of `a ⊗ b`. May fail with a bound error in
    /// capped backends.
    fn tensor_obj(&self, a: Obj, b: Obj) -> Result<Obj>;

    /// `f ⊗ g ∈ hom(a⊗b, c⊗d)` for `f ∈ hom(a,c)`, `g ∈ hom(b,d)`.
    fn tensor_mor(&self, a: Obj, b: Obj, c: Obj, d: Obj, f: usize, g: usize) -> Result<usize>;

    /// The symmetry `σ_{a,b} ∈ hom(a⊗b, b⊗a)`.
    fn symmetry(&self, a: Obj, b: Obj) -> Result<usize>;

    /// Whether the backend claims its unit is terminal. Verified, not
    /// trusted, by `projection_report`.
    fn semicartesian(&self) -> bool;

    /// The unique map `a → unit` in a semicartesian structure.
    fn terminal_map(&self, a: Obj) -> Result<usize>;

    /// The cotensor `V ⋔ x` for an indexing set of size `v_size`.
    fn cotensor(&self, v_size: usize, x: Obj) -> Result<Obj>;

    /// For set-like backends: the object whose hom-sets realize underlying
    /// elements, i.e. `hom(probe, x)` is naturally the element set of `x`.
    fn representing_probe(&self) -> Option<Obj> {
        None
    }

    /// Index in `hom(probe, x)` of the morphism picking out element `e`.
    fn elem_as_hom(&self, _x: Obj, _e: usize) -> Option<usize> {
        None
    }
}

/// `x^{⊗n}` in strict normal form; `n = 0` is the unit.
pub fn tensor_power(cat: &dyn MonoidalCategory, x: Obj, n: usize) -> Result<Obj> {
    let mut acc = cat.unit();
    for _ in 0..n {
        acc = cat.tensor_obj(acc, x)?;
    }
    Ok(acc)
}

/// `f^{⊗n} ∈ hom(x^{⊗n}, y^{⊗n})` for `f ∈ hom(x, y)`.
pub fn mor_power(cat: &dyn MonoidalCategory, x: Obj, y: Obj, f: usize, n: usize) -> Result<usize> {
    let mut acc = cat.identity(cat.unit());
    let mut dom = cat.unit();
    let mut cod = cat.unit();
    for _ in 0..n {
        acc = cat.tensor_mor(dom, x, cod, y, acc, f)?;
        dom = cat.tensor_obj(dom, x)?;
        cod = cat.tensor_obj(cod, y)?;
    }
    Ok(acc)
}

/// Tensor a list of morphisms `(dom, cod, idx)` left to right.
pub fn tensor_many(
    cat: &dyn MonoidalCategory,
    parts: &[(Obj, Obj, usize)],
) -> Result<(Obj, Obj, usize)> {
    let mut dom = cat.unit();
    let mut cod = cat.unit();
    let mut acc = cat.identity(cat.unit());
    for &(d, c, f) in parts {
        acc = cat.tensor_mor(dom, d, cod, c, acc, f)?;
        dom = cat.tensor_obj(dom, d)?;
        cod = cat.tensor_obj(cod, c)?;
    }
    Ok((dom, cod, acc))
}

/// The collapse `x^{⊗n} → x^{⊗(n−1)}` that kills slot `i` (1-based) via the
/// terminal map. Requires a semicartesian structure.
pub fn collapse(cat: &dyn MonoidalCategory, x: Obj, n: usize, i: usize) -> Result<usize> {
    if !cat.semicartesian() {
        return Err(Error::Unsupported(
            "collapse maps need a semicartesian structure".into(),
        ));
    }
    if i == 0 || i > n {
        return Err(Error::Structural(format!("collapse slot {i} out of 1..={n}")));
    }
    let id_x = cat.identity(x);
    let t = cat.terminal_map(x)?;
    let mut parts = Vec::with_capacity(n);
    for slot in 1..=n {
        if slot == i {
            parts.push((x, cat.unit(), t));
        } else {
            parts.push((x, x, id_x));
        }
    }
    Ok(tensor_many(cat, &parts)?.2)
}

/// The projection `x^{⊗n} → x` onto slot `i`, as the composite of the n−1
/// collapses away from slot `i`, deleted from the highest slot downward so
/// that remaining slot indices stay stable.
pub fn project_to_slot(cat: &dyn MonoidalCategory, x: Obj, n: usize, i: usize) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::Structural(format!("projection slot {i} out of 1..={n}")));
    }
    let full = tensor_power(cat, x, n)?;
    let mut acc = cat.identity(full);
    let mut arity = n;
    for j in (1..=n).rev() {
        if j == i {
            continue;
        }
        // original slot j sits at index j while everything above it is gone
        let step = collapse(cat, x, arity, j)?;
        let mid = tensor_power(cat, x, arity)?;
        let out = tensor_power(cat, x, arity - 1)?;
        acc = cat.compose(full, mid, out, step, acc);
        arity -= 1;
    }
    Ok(acc)
}

/// The structural isomorphism `σ^x : x^{⊗n} → x^{⊗n}` for a permutation σ,
/// built from adjacent symmetry components. Satisfies `(σ∘τ)^x = τ^x ∘ σ^x`,
/// so that post-composition is a right action.
pub fn perm_iso(cat: &dyn MonoidalCategory, x: Obj, perm: &FinFn) -> Result<usize> {
    let n = perm.dom().size();
    let power = tensor_power(cat, x, n)?;
    let word = finset::adjacent_transpositions(perm.table());
    // σ = s_{w[0]} ∘ s_{w[1]} ∘ …, and (αβ)^x = β^x ∘ α^x, so
    // σ^x = (s_{w[last]})^x ∘ … ∘ (s_{w[0]})^x: apply earlier letters first.
    let mut acc = cat.identity(power);
    let id_x = cat.identity(x);
    let sym = cat.symmetry(x, x)?;
    for &j in word.iter() {
        // id^{⊗j} ⊗ σ_{x,x} ⊗ id^{⊗(n-j-2)}  (0-based j swaps slots j+1, j+2)
        let xx = cat.tensor_obj(x, x)?;
        let mut parts = Vec::new();
        for _ in 0..j {
            parts.push((x, x, id_x));
        }
        parts.push((xx, xx, sym));
        for _ in j + 2..n {
            parts.push((x, x, id_x));
        }
        let (_, _, step) = tensor_many(cat, &parts)?;
        acc = cat.compose(power, power, power, step, acc);
    }
    Ok(acc)
}

/// `κ_n(c) : hom(c, x^{⊗n}) → hom(c, x)^{×n}`, sending `g` to the tuple of
/// its slot projections.
pub fn kappa_n(cat: &dyn MonoidalCategory, c: Obj, x: Obj, n: usize) -> Result<FinFn> {
    let power = tensor_power(cat, x, n)?;
    let dom = cat.hom(c, power);
    let hom_cx = cat.hom(c, x);
    let sizes = vec![hom_cx.size(); n];
    let (prod, _) = finset::product(&vec![hom_cx.clone(); n]);
    let mut projections = Vec::with_capacity(n);
    for i in 1..=n {
        projections.push(project_to_slot(cat, x, n, i)?);
    }
    let table: Vec<usize> = dom
        .elems()
        .map(|g| {
            let coords: Vec<usize> = projections
                .iter()
                .map(|&p| cat.compose(c, power, x, p, g))
                .collect();
            finset::encode_tuple(&sizes, &coords)
        })
        .collect();
    FinFn::new(dom, prod, table)
}

/// The binary comparison `hom(c, x⊗y) → hom(c, x) × hom(c, y)` for a general
/// pair, via the two collapse maps.
pub fn kappa2(cat: &dyn MonoidalCategory, c: Obj, x: Obj, y: Obj) -> Result<FinFn> {
    let xy = cat.tensor_obj(x, y)?;
    let dom = cat.hom(c, xy);
    let hom_cx = cat.hom(c, x);
    let hom_cy = cat.hom(c, y);
    let id_x = cat.identity(x);
    let id_y = cat.identity(y);
    let tx = cat.terminal_map(x)?;
    let ty = cat.terminal_map(y)?;
    // x⊗y → x kills the y slot; x⊗y → y kills the x slot
    let (_, _, p1) = tensor_many(cat, &[(x, x, id_x), (y, cat.unit(), ty)])?;
    let (_, _, p2) = tensor_many(cat, &[(x, cat.unit(), tx), (y, y, id_y)])?;
    let sizes = [hom_cx.size(), hom_cy.size()];
    let (prod, _) = finset::product(&[hom_cx, hom_cy]);
    let table: Vec<usize> = dom
        .elems()
        .map(|g| {
            let a = cat.compose(c, xy, x, p1, g);
            let b = cat.compose(c, xy, y, p2, g);
            finset::encode_tuple(&sizes, &[a, b])
        })
        .collect();
    FinFn::new(dom, prod, table)
}

/// The image of `κ_n(c)` as a sorted set of tuple indices.
pub fn kappa_image(
    cat: &dyn MonoidalCategory,
    c: Obj,
    x: Obj,
    n: usize,
) -> Result<std::collections::BTreeSet<usize>> {
    Ok(kappa_n(cat, c, x, n)?.table().iter().copied().collect())
}

/// Classification of the comparison maps over all object triples within a
/// roster bound.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub category: String,
    pub probe_bound: usize,
    pub semicartesian: bool,
    pub monically_projecting: bool,
    pub isomorphically_projecting: bool,
    pub witnesses: Vec<String>,
    pub skipped: Vec<String>,
}

/// Check semicartesianness and κ injectivity/bijectivity for all triples of
/// roster objects within `probe_bound`. Triples whose tensor exceeds a
/// backend bound are skipped and recorded.
pub fn projection_report(cat: &dyn MonoidalCategory, probe_bound: usize) -> ProjectionReport {
    let mut roster = cat.objects();
    roster.truncate(probe_bound);
    let mut semicartesian = true;
    let mut monic = true;
    let mut iso = true;
    let mut witnesses = Vec::new();
    let mut skipped = Vec::new();

    for &x in &roster {
        let h = cat.hom(x, cat.unit());
        if h.size() != 1 {
            semicartesian = false;
            witnesses.push(format!(
                "hom({}, unit) has {} elements, expected 1",
                cat.object_name(x),
                h.size()
            ));
        }
    }

    for &c in &roster {
        for &x in &roster {
            for &y in &roster {
                let k = match kappa2(cat, c, x, y) {
                    Ok(k) => k,
                    Err(Error::Bound(msg)) => {
                        skipped.push(format!(
                            "({}, {}, {}): {msg}",
                            cat.object_name(c),
                            cat.object_name(x),
                            cat.object_name(y)
                        ));
                        continue;
                    }
                    Err(_) => {
                        monic = false;
                        iso = false;
                        continue;
                    }
                };
                if !k.is_injective() {
                    monic = false;
                    iso = false;
                    // locate a colliding pair
                    'outer: for g1 in k.dom().elems() {
                        for g2 in g1 + 1..k.dom().size() {
                            if k.eval(g1) == k.eval(g2) {
                                witnesses.push(format!(
                                    "κ collision at (c={}, x={}, y={}): elements {g1} and {g2} agree on all projections",
                                    cat.object_name(c),
                                    cat.object_name(x),
                                    cat.object_name(y)
                                ));
                                break 'outer;
                            }
                        }
                    }
                } else if !k.is_bijective() {
                    if iso {
                        witnesses.push(format!(
                            "κ not surjective at (c={}, x={}, y={}): |hom(c,x⊗y)| = {} < {}",
                            cat.object_name(c),
                            cat.object_name(x),
                            cat.object_name(y),
                            k.dom().size(),
                            k.cod().size()
                        ));
                    }
                    iso = false;
                }
            }
        }
    }

    ProjectionReport {
        category: cat.cat_name(),
        probe_bound,
        semicartesian,
        monically_projecting: monic,
        isomorphically_projecting: iso,
        witnesses,
        skipped,
    }
}

/// The pairwise (k = 2) strength criterion at `(c, x, n)`: every tuple in
/// `hom(c,x)^n` whose every pair projection lies in the image of `κ_2` must
/// itself lie in the image of `κ_n`. Vacuously true for `n = 2`.
pub fn pairwise_strength_check(
    cat: &dyn MonoidalCategory,
    c: Obj,
    x: Obj,
    n: usize,
) -> Result<bool> {
    if n < 2 {
        return Err(Error::Structural("strength check needs n ≥ 2".into()));
    }
    if n == 2 {
        return Ok(true);
    }
    let h = cat.hom(c, x).size();
    let pair_image = kappa_image(cat, c, x, 2)?;
    let full_image = kappa_image(cat, c, x, n)?;
    // depth-first over tuples, pruning prefixes as soon as a pair fails
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    fn dfs(
        stack: &mut Vec<usize>,
        h: usize,
        n: usize,
        pair_image: &std::collections::BTreeSet<usize>,
        full_image: &std::collections::BTreeSet<usize>,
    ) -> bool {
        if stack.len() == n {
            let sizes = vec![h; n];
            let idx = finset::encode_tuple(&sizes, stack);
            return full_image.contains(&idx);
        }
        for v in 0..h {
            let ok = stack
                .iter()
                .all(|&u| pair_image.contains(&finset::encode_tuple(&[h, h], &[u, v])));
            if !ok {
                continue;
            }
            stack.push(v);
            if !dfs(stack, h, n, pair_image, full_image) {
                stack.pop();
                return false;
            }
            stack.pop();
        }
        true
    }
    Ok(dfs(&mut stack, h, n, &pair_image, &full_image))
}

/// Probe bifunctoriality of the tensor on morphisms:
/// `(g∘f) ⊗ (g'∘f') = (g⊗g') ∘ (f⊗f')`, plus preservation of identities.
pub fn bifunctoriality_report(cat: &dyn MonoidalCategory, probe_bound: usize) -> Vec<Violation> {
    let mut roster = cat.objects();
    roster.truncate(probe_bound);
    let mut violations = Vec::new();
    for &a in &roster {
        for &b in &roster {
            let (Ok(ab), id_a, id_b) = (cat.tensor_obj(a, b), cat.identity(a), cat.identity(b))
            else {
                continue;
            };
            match cat.tensor_mor(a, b, a, b, id_a, id_b) {
                Ok(t) if t == cat.identity(ab) => {}
                Ok(_) => violations.push(Violation::new(
                    "tensor-identity",
                    format!(
                        "id ⊗ id ≠ id at ({}, {})",
                        cat.object_name(a),
                        cat.object_name(b)
                    ),
                )),
                Err(_) => continue,
            }
        }
    }
    // interchange on composable pairs; keep the probe small
    let probe: Vec<Obj> = roster.iter().copied().take(3).collect();
    for &a in &probe {
        for &b in &probe {
            for &c in &probe {
                for &a2 in &probe {
                    for &b2 in &probe {
                        for &c2 in &probe {
                            let Ok(aa) = cat.tensor_obj(a, a2) else { continue };
                            let Ok(bb) = cat.tensor_obj(b, b2) else { continue };
                            let Ok(cc) = cat.tensor_obj(c, c2) else { continue };
                            for f in cat.hom(a, b).elems() {
                                for g in cat.hom(b, c).elems() {
                                    for f2 in cat.hom(a2, b2).elems() {
                                        for g2 in cat.hom(b2, c2).elems() {
                                            let gf = cat.compose(a, b, c, g, f);
                                            let gf2 = cat.compose(a2, b2, c2, g2, f2);
                                            let Ok(lhs) =
                                                cat.tensor_mor(a, a2, c, c2, gf, gf2)
                                            else {
                                                continue;
                                            };
                                            let Ok(tf) = cat.tensor_mor(a, a2, b, b2, f, f2)
                                            else {
                                                continue;
                                            };
                                            let Ok(tg) = cat.tensor_mor(b, b2, c, c2, g, g2)
                                            else {
                                                continue;
                                            };
                                            let rhs = cat.compose(aa, bb, cc, tg, tf);
                                            if lhs != rhs {
                                                violations.push(Violation::new(
                                                    "tensor-interchange",
                                                    format!(
                                                        "(g∘f)⊗(g'∘f') ≠ (g⊗g')∘(f⊗f') at a={}, b={}, c={}, a'={}, b'={}, c'={}",
                                                        cat.object_name(a),
                                                        cat.object_name(b),
                                                        cat.object_name(c),
                                                        cat.object_name(a2),
                                                        cat.object_name(b2),
                                                        cat.object_name(c2)
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
            }
        }
    }
    violations
}

//! Arity-truncated symmetric operads in finite sets.
//!
//! An operad is stored as its components up to a maximum arity, the unit,
//! every partial-composition table that lands within the truncation, and the
//! symmetric-group action tables. Axioms are quantified only over data the
//! truncation retains, and every report echoes the truncation.
//!
//! Action convention: components carry a *right* action, so
//! `act(σ∘τ) = act(τ) ∘ act(σ)`, matching post-composition with the
//! structural isomorphisms `σ^X` in a coendomorphism operad.

use crate::error::{Error, Result};
use crate::fincat::{Category, Obj, Violation};
use crate::finset::{self, FinFn, FinSet};
use serde::Serialize;
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// block permutations

/// The permutation `σ ∘_i 1_n ∈ S_{m+n-1}` describing how a partial
/// composition at slot `i` transports the outer action by `σ ∈ S_m`
/// (tables are 0-based one-line notation, `i` is 1-based).
pub fn outer_block_perm(sigma: &[usize], n: usize, i: usize) -> Vec<usize> {
    let m = sigma.len();
    debug_assert!((1..=m).contains(&i));
    let s_i = sigma[i - 1] + 1; // σ(i), 1-based
    let total = m + n - 1;
    let shift = |t: usize| if t > s_i { t + n - 1 } else { t };
    let mut rho = vec![0usize; total];
    for j in 1..=total {
        let value = if j < i {
            shift(sigma[j - 1] + 1)
        } else if j < i + n {
            s_i + (j - i)
        } else {
            shift(sigma[j - n] + 1) // σ(j - n + 1)
        };
        rho[j - 1] = value - 1;
    }
    rho
}

/// The permutation `1_m ∘_i τ ∈ S_{m+n-1}` acting as `τ ∈ S_n` on the block
/// `[i, i+n-1]` and trivially elsewhere.
pub fn inner_block_perm(m: usize, n: usize, i: usize, tau: &[usize]) -> Vec<usize> {
    debug_assert_eq!(tau.len(), n);
    debug_assert!((1..=m).contains(&i));
    let total = m + n - 1;
    let mut rho = vec![0usize; total];
    for j in 1..=total {
        let value = if j < i || j > i + n - 1 {
            j
        } else {
            i - 1 + (tau[j - i] + 1)
        };
        rho[j - 1] = value - 1;
    }
    rho
}

// ---------------------------------------------------------------------------
// finite monoids

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    pub size: usize,
    pub unit: usize,
    pub mult: Vec<Vec<usize>>,
    pub name: String,
}

impl MonoidTable {
    pub fn new(size: usize, unit: usize, mult: Vec<Vec<usize>>, name: String) -> Result<Self> {
        if mult.len() != size || mult.iter().any(|r| r.len() != size) {
            return Err(Error::Validation("multiplication table must be n×n".into()));
        }
        if unit >= size {
            return Err(Error::Validation("monoid unit out of range".into()));
        }
        if mult.iter().flatten().any(|&v| v >= size) {
            return Err(Error::Validation("multiplication entry out of range".into()));
        }
        for a in 0..size {
            if mult[unit][a] != a || mult[a][unit] != a {
                return Err(Error::Validation(format!(
                    "unit law fails at element {a}"
                )));
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(MonoidTable {
            size,
            unit,
            mult,
            name,
        })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        let mult = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        MonoidTable::new(n, 0, mult, format!("Z/{n}")).expect("cyclic group is a monoid")
    }
}

/// Every monoid structure on `{0, …, k-1}` with unit 0, for all `k ≤
/// max_order`, in lexicographic table order. Relabelings are not deduplicated
/// beyond the fixed unit.
pub fn enumerate_monoids(max_order: usize) -> Vec<MonoidTable> {
    let mut out = Vec::new();
    for k in 1..=max_order {
        let free = (k - 1) * (k - 1);
        let total = finset::count_functions(free, k);
        for code in 0..total {
            let digits = finset::decode_tuple(&vec![k; free], code);
            let mut mult = vec![vec![0usize; k]; k];
            for a in 0..k {
                mult[0][a] = a;
                mult[a][0] = a;
            }
            for a in 1..k {
                for b in 1..k {
                    mult[a][b] = digits[(a - 1) * (k - 1) + (b - 1)];
                }
            }
            if let Ok(m) = MonoidTable::new(k, 0, mult, format!("monoid-{k}-{code}")) {
                out.push(m);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// truncated operads

/// A symmetric operad in finite sets with components up to `max_arity`.
#[derive(Clone, Debug)]
pub struct TruncatedOperad {
    pub name: String,
    max_arity: usize,
    components: Vec<FinSet>,
    unit: usize,
    partial: BTreeMap<(usize, usize, usize), FinFn>,
    actions: Vec<Vec<FinFn>>,
}

/// The set of partial-composition keys present in a truncation:
/// `(m, n, i)` with `1 ≤ m ≤ N`, `0 ≤ n`, `m+n-1 ≤ N`, `1 ≤ i ≤ m`.
pub fn partial_keys(max_arity: usize) -> Vec<(usize, usize, usize)> {
    let mut keys = Vec::new();
    for m in 1..=max_arity {
        for n in 0..=max_arity {
            if m + n == 0 || m + n - 1 > max_arity {
                continue;
            }
            for i in 1..=m {
                keys.push((m, n, i));
            }
        }
    }
    keys
}

impl TruncatedOperad {
    pub fn new(
        name: String,
        max_arity: usize,
        components: Vec<FinSet>,
        unit: usize,
        partial: BTreeMap<(usize, usize, usize), FinFn>,
        actions: Vec<Vec<FinFn>>,
    ) -> Result<Self> {
        if max_arity < 1 {
            return Err(Error::Validation("max arity must be ≥ 1".into()));
        }
        if components.len() != max_arity + 1 {
            return Err(Error::Validation(format!(
                "expected {} components, got {}",
                max_arity + 1,
                components.len()
            )));
        }
        if components[1].is_empty() {
            return Err(Error::Validation("arity-1 component must contain the unit".into()));
        }
        if unit >= components[1].size() {
            return Err(Error::Validation(format!(
                "unit index {unit} out of range for arity-1 component"
            )));
        }
        let keys = partial_keys(max_arity);
        for key @ (m, n, i) in &keys {
            let f = partial.get(key).ok_or_else(|| {
                Error::Validation(format!("missing partial composition table ({m},{n},{i})"))
            })?;
            let expected_dom = components[*m].size() * components[*n].size();
            if f.dom().size() != expected_dom || f.cod() != &components[m + n - 1] {
                return Err(Error::Validation(format!(
                    "partial composition table ({m},{n},{i}) has wrong shape"
                )));
            }
        }
        if partial.len() != keys.len() {
            return Err(Error::Validation(
                "unexpected extra partial composition tables".into(),
            ));
        }
        if actions.len() != max_arity + 1 {
            return Err(Error::Validation("one action family per arity required".into()));
        }
        for (n, family) in actions.iter().enumerate() {
            if family.len() != finset::factorial(n) {
                return Err(Error::Validation(format!(
                    "arity-{n} action family must have {}! = {} tables",
                    n,
                    finset::factorial(n)
                )));
            }
            for f in family {
                if f.dom() != &components[n] || f.cod() != &components[n] {
                    return Err(Error::Validation(format!(
                        "arity-{n} action table has wrong shape"
                    )));
                }
            }
        }
        Ok(TruncatedOperad {
            name,
            max_arity,
            components,
            unit,
            partial,
            actions,
        })
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn component(&self, n: usize) -> &FinSet {
        &self.components[n]
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.size()).collect()
    }

    pub fn unit_elem(&self) -> usize {
        self.unit
    }

    /// Unital means the nullary component is the monoidal unit: a singleton.
    pub fn is_unital(&self) -> bool {
        self.components[0].size() == 1
    }

    pub fn partial_table(&self, m: usize, n: usize, i: usize) -> Option<&FinFn> {
        self.partial.get(&(m, n, i))
    }

    /// `p ∘_i q` via the stored tables.
    pub fn comp(&self, m: usize, n: usize, i: usize, p: usize, q: usize) -> usize {
        let f = &self.partial[&(m, n, i)];
        f.eval(p * self.components[n].size() + q)
    }

    /// The right action of the permutation with the given lexicographic rank.
    pub fn act(&self, n: usize, perm_rank: usize, p: usize) -> usize {
        self.actions[n][perm_rank].eval(p)
    }

    pub fn action_table(&self, n: usize, perm_rank: usize) -> &FinFn {
        &self.actions[n][perm_rank]
    }

    /// Replace one partial-composition entry; for fault-injection tests.
    pub fn corrupt_partial(&mut self, m: usize, n: usize, i: usize, pair_idx: usize, v: usize) {
        let f = self.partial.get_mut(&(m, n, i)).expect("partial table");
        let mut table = f.table().to_vec();
        table[pair_idx] = v;
        *f = FinFn::new(f.dom().clone(), f.cod().clone(), table).expect("corrupt in range");
    }

    /// Replace one action entry; for fault-injection tests.
    pub fn corrupt_action(&mut self, n: usize, perm_rank: usize, p: usize, v: usize) {
        let f = &mut self.actions[n][perm_rank];
        let mut table = f.table().to_vec();
        table[p] = v;
        *f = FinFn::new(f.dom().clone(), f.cod().clone(), table).expect("corrupt in range");
    }
}

/// Outcome of the exhaustive within-truncation axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct OperadAxiomReport {
    pub operad: String,
    pub truncation: usize,
    pub component_sizes: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl OperadAxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively check unitality, the two partial-composition associativity
/// laws, equivariance, and that each action family is a right group action.
/// Quantified only over compositions landing within the truncation.
pub fn check_operad_axioms(op: &TruncatedOperad) -> OperadAxiomReport {
    let n_max = op.max_arity();
    let mut violations = Vec::new();
    let perms: Vec<Vec<FinFn>> = (0..=n_max).map(finset::symmetric_group).collect();

    // unit laws
    for n in 0..=n_max {
        for q in op.component(n).elems() {
            if op.comp(1, n, 1, op.unit_elem(), q) != q {
                violations.push(Violation::new(
                    "unit-left",
                    format!("η ∘₁ q ≠ q at arity {n}, q = {q}"),
                ));
            }
        }
    }
    for m in 1..=n_max {
        for p in op.component(m).elems() {
            for i in 1..=m {
                if op.comp(m, 1, i, p, op.unit_elem()) != p {
                    violations.push(Violation::new(
                        "unit-right",
                        format!("p ∘_{i} η ≠ p at arity {m}, p = {p}"),
                    ));
                }
            }
        }
    }

    // nested associativity: (p ∘_i q) ∘_{i-1+j} r = p ∘_i (q ∘_j r)
    for m in 1..=n_max {
        for n in 1..=n_max {
            for k in 0..=n_max {
                if m + n - 1 > n_max || n + k - 1 > n_max || m + n + k - 2 > n_max {
                    continue;
                }
                for p in op.component(m).elems() {
                    for q in op.component(n).elems() {
                        for r in op.component(k).elems() {
                            for i in 1..=m {
                                for j in 1..=n {
                                    let lhs =
                                        op.comp(m + n - 1, k, i - 1 + j, op.comp(m, n, i, p, q), r);
                                    let rhs =
                                        op.comp(m, n + k - 1, i, p, op.comp(n, k, j, q, r));
                                    if lhs != rhs {
                                        violations.push(Violation::new(
                                            "assoc-nested",
                                            format!(
                                                "(p∘_{i}q)∘_{}r ≠ p∘_{i}(q∘_{j}r) at arities ({m},{n},{k}), p={p}, q={q}, r={r}",
                                                i - 1 + j
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

    // disjoint associativity: (p ∘_i q) ∘_j r = (p ∘_j r) ∘_{i+k-1} q, j < i
    for m in 2..=n_max {
        for n in 0..=n_max {
            for k in 0..=n_max {
                if m + n - 1 > n_max || m + k - 1 > n_max || m + n + k - 2 > n_max {
                    continue;
                }
                for p in op.component(m).elems() {
                    for q in op.component(n).elems() {
                        for r in op.component(k).elems() {
                            for i in 2..=m {
                                for j in 1..i {
                                    let lhs =
                                        op.comp(m + n - 1, k, j, op.comp(m, n, i, p, q), r);
                                    let rhs = op.comp(
                                        m + k - 1,
                                        n,
                                        i + k - 1,
                                        op.comp(m, k, j, p, r),
                                        q,
                                    );
                                    if lhs != rhs {
                                        violations.push(Violation::new(
                                            "assoc-disjoint",
                                            format!(
                                                "(p∘_{i}q)∘_{j}r ≠ (p∘_{j}r)∘_{}q at arities ({m},{n},{k}), p={p}, q={q}, r={r}",
                                                i + k - 1
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

    // equivariance in the outer argument
    for &(m, n, i) in partial_keys(n_max).iter() {
        for (s_rank, sigma) in perms[m].iter().enumerate() {
            for p in op.component(m).elems() {
                for q in op.component(n).elems() {
                    let lhs = op.comp(m, n, i, op.act(m, s_rank, p), q);
                    let rho = outer_block_perm(sigma.table(), n, i);
                    let sigma_i = sigma.eval(i - 1) + 1;
                    let rhs = op.act(
                        m + n - 1,
                        finset::perm_rank(&rho),
                        op.comp(m, n, sigma_i, p, q),
                    );
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "equivariance-outer",
                            format!(
                                "(p·σ)∘_{i}q ≠ (p∘_{sigma_i}q)·(σ∘_{i}1) at ({m},{n},{i}), σ rank {s_rank}, p={p}, q={q}"
                            ),
                        ));
                    }
                }
            }
        }
    }

    // equivariance in the inner argument
    for &(m, n, i) in partial_keys(n_max).iter() {
        for (t_rank, tau) in perms[n].iter().enumerate() {
            for p in op.component(m).elems() {
                for q in op.component(n).elems() {
                    let lhs = op.comp(m, n, i, p, op.act(n, t_rank, q));
                    let rho = inner_block_perm(m, n, i, tau.table());
                    let rhs = op.act(
                        m + n - 1,
                        finset::perm_rank(&rho),
                        op.comp(m, n, i, p, q),
                    );
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "equivariance-inner",
                            format!(
                                "p∘_{i}(q·τ) ≠ (p∘_{i}q)·(1∘_{i}τ) at ({m},{n},{i}), τ rank {t_rank}, p={p}, q={q}"
                            ),
                        ));
                    }
                }
            }
        }
    }

    // each action family is a right group action
    for n in 0..=n_max {
        let id_rank = 0;
        if op.action_table(n, id_rank) != &FinFn::identity(op.component(n)) {
            violations.push(Violation::new(
                "action-identity",
                format!("identity permutation does not act as identity at arity {n}"),
            ));
        }
        for (a_rank, a) in perms[n].iter().enumerate() {
            for (b_rank, b) in perms[n].iter().enumerate() {
                let ab = finset::compose(a, b).expect("same arity");
                let ab_rank = finset::perm_rank(ab.table());
                for p in op.component(n).elems() {
                    let lhs = op.act(n, ab_rank, p);
                    let rhs = op.act(n, b_rank, op.act(n, a_rank, p));
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "action-composition",
                            format!(
                                "p·(σ∘τ) ≠ (p·σ)·τ at arity {n}, σ rank {a_rank}, τ rank {b_rank}, p={p}"
                            ),
                        ));
                    }
                }
            }
        }
    }

    OperadAxiomReport {
        operad: op.name.clone(),
        truncation: n_max,
        component_sizes: op.component_sizes(),
        violations,
    }
}

/// The canonical restriction `d_i : P(n) → P(n-1)` of a unital operad,
/// plugging the unique nullary element into slot `i`.
pub fn restriction(op: &TruncatedOperad, n: usize, i: usize) -> Result<FinFn> {
    if !op.is_unital() {
        return Err(Error::Unsupported(
            "restriction operators need a unital operad".into(),
        ));
    }
    if n == 0 || i == 0 || i > n {
        return Err(Error::Structural(format!("restriction slot {i} out of 1..={n}")));
    }
    FinFn::from_fn(op.component(n).clone(), op.component(n - 1).clone(), |p| {
        op.comp(n, 0, i, p, 0)
    })
}

// ---------------------------------------------------------------------------
// builtins

/// The commutative operad truncated at `max_arity`: every component a
/// singleton.
pub fn com(max_arity: usize) -> TruncatedOperad {
    let components: Vec<FinSet> = (0..=max_arity).map(|_| FinSet::new(1)).collect();
    let mut partial = BTreeMap::new();
    for key @ (m, n, _) in partial_keys(max_arity) {
        let dom = FinSet::new(components[m].size() * components[n].size());
        partial.insert(key, FinFn::constant(dom, FinSet::new(1), 0).unwrap());
    }
    let actions: Vec<Vec<FinFn>> = (0..=max_arity)
        .map(|n| vec![FinFn::identity(&FinSet::new(1)); finset::factorial(n)])
        .collect();
    TruncatedOperad::new("com".into(), max_arity, components, 0, partial, actions)
        .expect("com is well-formed")
}

/// The associative operad truncated at `max_arity`: arity-n component the
/// permutations of n letters, composition by block substitution, action by
/// right multiplication.
pub fn ass(max_arity: usize) -> TruncatedOperad {
    let perms: Vec<Vec<FinFn>> = (0..=max_arity).map(finset::symmetric_group).collect();
    let components: Vec<FinSet> = perms.iter().map(|ps| FinSet::new(ps.len())).collect();
    let mut partial = BTreeMap::new();
    for key @ (m, n, i) in partial_keys(max_arity) {
        let dom = FinSet::new(components[m].size() * components[n].size());
        let cod = components[m + n - 1].clone();
        let n_size = components[n].size();
        let table: Vec<usize> = (0..dom.size())
            .map(|pair| {
                let p = &perms[m][pair / n_size];
                let q = &perms[n][pair % n_size];
                let outer = outer_block_perm(p.table(), n, i);
                let inner = inner_block_perm(m, n, i, q.table());
                // p ∘_i q = (p ∘_i 1_n) ∘ (1_m ∘_i q) as functions
                let composed: Vec<usize> = inner.iter().map(|&v| outer[v]).collect();
                finset::perm_rank(&composed)
            })
            .collect();
        partial.insert(key, FinFn::new(dom, cod, table).unwrap());
    }
    let actions: Vec<Vec<FinFn>> = perms
        .iter()
        .map(|ps| {
            ps.iter()
                .map(|sigma| {
                    FinFn::from_fn(FinSet::new(ps.len()), FinSet::new(ps.len()), |p_rank| {
                        let composed = finset::compose(&ps[p_rank], sigma).unwrap();
                        finset::perm_rank(composed.table())
                    })
                    .unwrap()
                })
                .collect()
        })
        .collect();
    TruncatedOperad::new("ass".into(), max_arity, components, 0, partial, actions)
        .expect("ass is well-formed")
}

/// The operad of a finite monoid: nullary a point, unary the monoid with its
/// multiplication, every higher component empty.
pub fn from_monoid(monoid: &MonoidTable, max_arity: usize) -> TruncatedOperad {
    let mut components = vec![FinSet::new(1), FinSet::new(monoid.size)];
    for _ in 2..=max_arity {
        components.push(FinSet::new(0));
    }
    let mut partial = BTreeMap::new();
    for key @ (m, n, _) in partial_keys(max_arity) {
        let dom = FinSet::new(components[m].size() * components[n].size());
        let cod = components[m + n - 1].clone();
        let table: Vec<usize> = match (m, n) {
            (1, 1) => (0..dom.size())
                .map(|pair| monoid.mult[pair / monoid.size][pair % monoid.size])
                .collect(),
            (1, 0) => vec![0; dom.size()],
            _ => vec![],
        };
        partial.insert(key, FinFn::new(dom, cod, table).expect("monoid operad table"));
    }
    let actions: Vec<Vec<FinFn>> = components
        .iter()
        .enumerate()
        .map(|(n, c)| vec![FinFn::identity(c); finset::factorial(n)])
        .collect();
    TruncatedOperad::new(
        format!("monoid({})", monoid.name),
        max_arity,
        components,
        monoid.unit,
        partial,
        actions,
    )
    .expect("monoid operad is well-formed")
}

// ---------------------------------------------------------------------------
// operad morphisms

/// An arity-indexed family of maps between two operads of the same
/// truncation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OperadMorphism {
    pub components: Vec<FinFn>,
}

impl OperadMorphism {
    /// Check unit preservation, compatibility with every partial composition
    /// within truncation, and equivariance. Violations carry witnesses.
    pub fn check(&self, source: &TruncatedOperad, target: &TruncatedOperad) -> Vec<Violation> {
        let mut violations = Vec::new();
        let n_max = source.max_arity();
        if target.max_arity() != n_max || self.components.len() != n_max + 1 {
            violations.push(Violation::new(
                "morphism-shape",
                "operad morphism must have one component per arity of a common truncation",
            ));
            return violations;
        }
        for n in 0..=n_max {
            let f = &self.components[n];
            if f.dom() != source.component(n) || f.cod() != target.component(n) {
                violations.push(Violation::new(
                    "morphism-shape",
                    format!("arity-{n} component has wrong shape"),
                ));
                return violations;
            }
        }
        if self.components[1].eval(source.unit_elem()) != target.unit_elem() {
            violations.push(Violation::new("morphism-unit", "unit not preserved"));
        }
        for &(m, n, i) in partial_keys(n_max).iter() {
            for p in source.component(m).elems() {
                for q in source.component(n).elems() {
                    let lhs = self.components[m + n - 1].eval(source.comp(m, n, i, p, q));
                    let rhs = target.comp(
                        m,
                        n,
                        i,
                        self.components[m].eval(p),
                        self.components[n].eval(q),
                    );
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "morphism-composition",
                            format!("ψ(p∘_{i}q) ≠ ψ(p)∘_{i}ψ(q) at ({m},{n},{i}), p={p}, q={q}"),
                        ));
                    }
                }
            }
        }
        for n in 0..=n_max {
            for rank in 0..finset::factorial(n) {
                for p in source.component(n).elems() {
                    let lhs = self.components[n].eval(source.act(n, rank, p));
                    let rhs = target.act(n, rank, self.components[n].eval(p));
                    if lhs != rhs {
                        violations.push(Violation::new(
                            "morphism-equivariance",
                            format!("ψ(p·σ) ≠ ψ(p)·σ at arity {n}, σ rank {rank}, p={p}"),
                        ));
                    }
                }
            }
        }
        violations
    }

    pub fn is_valid(&self, source: &TruncatedOperad, target: &TruncatedOperad) -> bool {
        self.check(source, target).is_empty()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(|f| f.is_bijective())
    }
}

// ---------------------------------------------------------------------------
// the index category of arities

/// All injective maps from an `n`-set into an `m`-set, in the stable
/// lexicographic table order.
pub fn injections(n: usize, m: usize) -> Vec<FinFn> {
    finset::all_functions(&FinSet::new(n), &FinSet::new(m))
        .into_iter()
        .filter(FinFn::is_injective)
        .collect()
}

/// The index category of arities, truncated: objects are arities `0..=N`, a
/// morphism `m → n` is canonically an injection of the n-set into the m-set,
/// and composition of canonical forms is function composition of injections
/// (in the opposite order).
#[derive(Clone, Debug)]
pub struct IndexKCategory {
    truncation: usize,
}

impl IndexKCategory {
    pub fn new(truncation: usize) -> Self {
        IndexKCategory { truncation }
    }

    pub fn injection(&self, m: usize, n: usize, idx: usize) -> FinFn {
        injections(n, m)[idx].clone()
    }

    pub fn injection_index(&self, m: usize, n: usize, inj: &FinFn) -> Option<usize> {
        injections(n, m).iter().position(|f| f == inj)
    }
}

impl Category for IndexKCategory {
    fn cat_name(&self) -> String {
        format!("index category of arities ≤ {}", self.truncation)
    }
    fn objects(&self) -> Vec<Obj> {
        (0..=self.truncation).map(Obj).collect()
    }
    fn contains_obj(&self, x: Obj) -> bool {
        x.0 <= self.truncation
    }
    fn object_name(&self, x: Obj) -> String {
        format!("arity-{}", x.0)
    }
    fn hom(&self, a: Obj, b: Obj) -> FinSet {
        FinSet::new(injections(b.0, a.0).len())
    }
    fn identity(&self, a: Obj) -> usize {
        let id = FinFn::identity(&FinSet::new(a.0));
        self.injection_index(a.0, a.0, &id).expect("identity injection")
    }
    fn compose(&self, a: Obj, b: Obj, c: Obj, g: usize, f: usize) -> usize {
        // arrows: f : a → b, g : b → c; injections point the other way
        let inj_f = self.injection(a.0, b.0, f); // [b] ↪ [a]
        let inj_g = self.injection(b.0, c.0, g); // [c] ↪ [b]
        let composite = finset::compose(&inj_f, &inj_g).expect("composable injections");
        self.injection_index(a.0, c.0, &composite)
            .expect("composite is a canonical injection")
    }
}

// ---------------------------------------------------------------------------
// the functor a unital operad induces on the index category

/// The arity-indexed diagram a unital operad induces: components with their
/// permutation actions and restriction operators. This is exactly the data
/// the end computation consumes, and it can also be built by hand for
/// degenerate edge cases.
#[derive(Clone, Debug)]
pub struct BarFunctor {
    pub truncation: usize,
    pub components: Vec<FinSet>,
    pub perm_actions: Vec<Vec<FinFn>>,
    /// `restrictions[n][i-1] : P(n) → P(n-1)`, for `n ≥ 1`; entry 0 is empty.
    pub restrictions: Vec<Vec<FinFn>>,
}

impl BarFunctor {
    pub fn from_operad(op: &TruncatedOperad) -> Result<Self> {
        if !op.is_unital() {
            return Err(Error::Unsupported(
                "only unital operads induce an arity diagram".into(),
            ));
        }
        let n_max = op.max_arity();
        let components: Vec<FinSet> = (0..=n_max).map(|n| op.component(n).clone()).collect();
        let perm_actions: Vec<Vec<FinFn>> = (0..=n_max)
            .map(|n| {
                (0..finset::factorial(n))
                    .map(|rank| op.action_table(n, rank).clone())
                    .collect()
            })
            .collect();
        let mut restrictions = vec![Vec::new()];
        for n in 1..=n_max {
            restrictions.push(
                (1..=n)
                    .map(|i| restriction(op, n, i))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(BarFunctor {
            truncation: n_max,
            components,
            perm_actions,
            restrictions,
        })
    }

    /// The action `P(m) → P(n)` of an injection `[n] ↪ [m]`, via the
    /// factorization (permutation of m inputs, then deletion of the top
    /// `m−n` slots): act by the permutation, then restrict from the top.
    pub fn action_for_injection(&self, phi: &FinFn) -> Result<FinFn> {
        let n = phi.dom().size();
        let m = phi.cod().size();
        if !phi.is_injective() {
            return Err(Error::Structural(format!("{phi} is not injective")));
        }
        if m > self.truncation {
            return Err(Error::Structural(format!(
                "arity {m} outside truncation {}",
                self.truncation
            )));
        }
        // canonical extension: τ agrees with φ on the first n inputs and
        // lists the unused values in increasing order after them
        let mut tau: Vec<usize> = phi.table().to_vec();
        let mut used = vec![false; m];
        for &v in phi.table() {
            used[v] = true;
        }
        tau.extend((0..m).filter(|&v| !used[v]));
        let mut acc = self.perm_actions[m][finset::perm_rank(&tau)].clone();
        for arity in (n + 1..=m).rev() {
            acc = finset::compose(&self.restrictions[arity][arity - 1], &acc)?;
        }
        Ok(acc)
    }

    /// Alternative factorization (deletion of the slots outside the image,
    /// then a permutation of the n survivors); used to verify that the
    /// action is independent of the factorization chosen.
    pub fn action_for_injection_alt(&self, phi: &FinFn) -> Result<FinFn> {
        let n = phi.dom().size();
        let m = phi.cod().size();
        if !phi.is_injective() {
            return Err(Error::Structural(format!("{phi} is not injective")));
        }
        let mut image: Vec<usize> = phi.table().to_vec();
        image.sort_unstable();
        let tau_n: Vec<usize> = phi
            .table()
            .iter()
            .map(|&v| image.binary_search(&v).unwrap())
            .collect();
        let mut acc = FinFn::identity(&self.components[m]);
        let mut arity = m;
        for slot0 in (0..m).rev() {
            if image.contains(&slot0) {
                continue;
            }
            acc = finset::compose(&self.restrictions[arity][slot0], &acc)?;
            arity -= 1;
        }
        finset::compose(&self.perm_actions[n][finset::perm_rank(&tau_n)], &acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_sizes() {
        assert_eq!(com(3).component_sizes(), vec![1, 1, 1, 1]);
        assert_eq!(ass(3).component_sizes(), vec![1, 1, 2, 6]);
        assert_eq!(
            from_monoid(&MonoidTable::cyclic(2), 3).component_sizes(),
            vec![1, 2, 0, 0]
        );
    }

    #[test]
    fn builtins_pass_axioms() {
        for op in [com(3), ass(3), from_monoid(&MonoidTable::cyclic(2), 3)] {
            let report = check_operad_axioms(&op);
            assert!(report.passed(), "{}: {:?}", op.name, report.violations);
        }
    }

    #[test]
    fn ass4_passes_axioms() {
        let report = check_operad_axioms(&ass(4));
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn corrupted_action_is_caught() {
        let mut op = ass(3);
        // swap the images of the two elements of P(2) under a transposition
        op.corrupt_action(2, 1, 0, 0);
        let report = check_operad_axioms(&op);
        assert!(!report.passed());
    }

    #[test]
    fn corrupted_partial_is_caught() {
        let mut op = ass(3);
        op.corrupt_partial(2, 2, 1, 0, 1);
        let report = check_operad_axioms(&op);
        assert!(!report.passed());
    }

    #[test]
    fn restriction_examples() {
        // com: the unique map between singletons
        let c = com(3);
        for i in 1..=3 {
            assert_eq!(restriction(&c, 3, i).unwrap().table(), &[0]);
        }
        // ass(2): both restrictions send both transposition classes to the
        // unit of S_1
        let a = ass(2);
        for i in 1..=2 {
            let d = restriction(&a, 2, i).unwrap();
            assert_eq!(d.table(), &[0, 0]);
        }
        // monoid operad: d_1 is the terminal map P(1) → point
        let m = from_monoid(&MonoidTable::cyclic(2), 2);
        let d = restriction(&m, 1, 1).unwrap();
        assert_eq!(d.table(), &[0, 0]);
    }

    #[test]
    fn non_unital_restriction_rejected() {
        // doctor an operad with an empty nullary component: drop P(0) of com
        let c = com(2);
        let mut components: Vec<FinSet> = (0..=2).map(|n| c.component(n).clone()).collect();
        components[0] = FinSet::new(0);
        let mut partial = BTreeMap::new();
        for key @ (m, n, _) in partial_keys(2) {
            let dom = FinSet::new(components[m].size() * components[n].size());
            let cod = components[m + n - 1].clone();
            let table = vec![0; dom.size() * usize::from(!cod.is_empty())];
            let table = if cod.is_empty() { vec![] } else { table };
            partial.insert(key, FinFn::new(dom, cod, table).unwrap());
        }
        let actions = (0..=2)
            .map(|n| vec![FinFn::identity(&components[n]); finset::factorial(n)])
            .collect();
        let op =
            TruncatedOperad::new("headless".into(), 2, components, 0, partial, actions).unwrap();
        assert!(!op.is_unital());
        assert!(matches!(restriction(&op, 2, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn monoid_enumeration_counts() {
        // with the unit pinned at 0: one trivial monoid, two of order 2
        let monoids = enumerate_monoids(2);
        assert_eq!(monoids.iter().filter(|m| m.size == 1).count(), 1);
        assert_eq!(monoids.iter().filter(|m| m.size == 2).count(), 2);
        for m in enumerate_monoids(3) {
            assert!(MonoidTable::new(m.size, m.unit, m.mult.clone(), m.name.clone()).is_ok());
        }
    }

    #[test]
    fn bad_monoid_rejected() {
        // 1·1 = 1 with 1 not idempotent-compatible: build a non-associative table
        let mult = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(MonoidTable::new(3, 0, mult, "bad".into()).is_err());
    }

    #[test]
    fn injection_action_examples() {
        let bar = BarFunctor::from_operad(&ass(3)).unwrap();
        // identity injection acts as the identity
        let id2 = FinFn::identity(&FinSet::new(2));
        assert_eq!(
            bar.action_for_injection(&id2).unwrap(),
            FinFn::identity(&FinSet::new(2))
        );
        // the injection 1 ↪ 2 hitting slot 1 forgets the unseen slot: d_2
        let phi = FinFn::new(FinSet::new(1), FinSet::new(2), vec![0]).unwrap();
        let expected = restriction(&ass(3), 2, 2).unwrap();
        assert_eq!(bar.action_for_injection(&phi).unwrap(), expected);
        // hitting slot 2 should match d_1
        let phi2 = FinFn::new(FinSet::new(1), FinSet::new(2), vec![1]).unwrap();
        let expected1 = restriction(&ass(3), 2, 1).unwrap();
        assert_eq!(bar.action_for_injection(&phi2).unwrap(), expected1);
    }

    #[test]
    fn injection_action_well_defined_and_functorial() {
        // both factorizations agree, and the action respects composition of
        // injections, exhaustively up to truncation 4 / 3
        for op in [ass(4), com(4), from_monoid(&MonoidTable::cyclic(2), 4)] {
            let bar = BarFunctor::from_operad(&op).unwrap();
            for m in 0..=4usize {
                for n in 0..=m {
                    for phi in injections(n, m) {
                        let a = bar.action_for_injection(&phi).unwrap();
                        let b = bar.action_for_injection_alt(&phi).unwrap();
                        assert_eq!(a, b, "factorizations disagree at {phi}");
                    }
                }
            }
        }
        let bar = BarFunctor::from_operad(&ass(3)).unwrap();
        for m in 0..=3usize {
            for n in 0..=m {
                for p in 0..=n {
                    for phi in injections(n, m) {
                        for psi in injections(p, n) {
                            let composite = finset::compose(&phi, &psi).unwrap();
                            let lhs = bar.action_for_injection(&composite).unwrap();
                            let rhs = finset::compose(
                                &bar.action_for_injection(&psi).unwrap(),
                                &bar.action_for_injection(&phi).unwrap(),
                            )
                            .unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_action_consistency() {
        // d_i ∘ (σ-action) identities implied by equivariance, on probes
        let op = ass(3);
        let bar = BarFunctor::from_operad(&op).unwrap();
        for n in 1..=3usize {
            for (rank, sigma) in finset::symmetric_group(n).iter().enumerate() {
                for i in 1..=n {
                    // p·σ then delete slot i = delete slot σ(i) then act by
                    // the permutation σ with value σ(i) removed
                    let lhs = finset::compose(
                        &bar.restrictions[n][i - 1],
                        &bar.perm_actions[n][rank],
                    )
                    .unwrap();
                    let sigma_i = sigma.eval(i - 1);
                    let reduced: Vec<usize> = (0..n)
                        .filter(|&j| j != i - 1)
                        .map(|j| {
                            let v = sigma.eval(j);
                            if v > sigma_i {
                                v - 1
                            } else {
                                v
                            }
                        })
                        .collect();
                    let rhs = finset::compose(
                        &bar.perm_actions[n - 1][finset::perm_rank(&reduced)],
                        &bar.restrictions[n][sigma_i],
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs, "n={n}, i={i}, σ={:?}", sigma.table());
                }
            }
        }
    }

    #[test]
    fn index_category_is_a_category() {
        let k = IndexKCategory::new(3);
        let report = crate::fincat::check_category_axioms(&k, 4);
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(k.hom(Obj(3), Obj(2)).size(), 6);
        assert_eq!(k.hom(Obj(2), Obj(3)).size(), 0);
    }

    #[test]
    fn operad_morphism_identity_checks() {
        let a = ass(3);
        let id = OperadMorphism {
            components: (0..=3).map(|n| FinFn::identity(a.component(n))).collect(),
        };
        assert!(id.is_valid(&a, &a));
        assert!(id.is_isomorphism());
    }
}

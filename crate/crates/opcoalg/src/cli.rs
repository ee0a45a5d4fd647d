//! The user surface: a JSON job-file format, verification subcommands, and
//! text or structured report emission.
//!
//! A job file names an instance, an operad (builtin or explicit tables), and
//! optional run parameters. Parsing produces validated domain objects or
//! fails with a located diagnostic (a field path). Exit codes distinguish a
//! verified violation (1) from "could not run" (2); structured output is
//! byte-identical across runs on the same input.

use crate::coalgebra::{check_coalgebra_category, enumerate_coalgebras};
use crate::comonad::{
    comonad_laws, compute_cp, equivalence_report, fox_report, inclusion_mono_report,
    ComonadEngine, ComonadKind, StrengthMode,
};
use crate::error::{Error, Result};
use crate::fincat::{check_category_axioms, Category, Obj};
use crate::finset::{self, FinFn, FinSet};
use crate::instances::{
    build_lattice, build_pointed_sets, build_finsets_capped, FinSetsCartesianInstance,
    LatticeInstance, PointedSetsInstance,
};
use crate::monoidal::{bifunctoriality_report, projection_report, MonoidalCategory};
use crate::operad::{
    ass, check_operad_axioms, com, from_monoid, partial_keys, MonoidTable, TruncatedOperad,
};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::Path;

// ---------------------------------------------------------------------------
// document model

/// A loaded and validated job document.
#[derive(Debug)]
pub struct SpecDocument {
    pub instance: InstanceHandle,
    pub operad: TruncatedOperad,
    pub run: RunParams,
}

/// The instance selected by the job file.
#[derive(Debug)]
pub enum InstanceHandle {
    Lattice(LatticeInstance),
    Pointed(PointedSetsInstance),
    FinSets(FinSetsCartesianInstance),
}

impl InstanceHandle {
    pub fn monoidal(&self) -> &dyn MonoidalCategory {
        match self {
            InstanceHandle::Lattice(l) => l,
            InstanceHandle::Pointed(p) => p,
            InstanceHandle::FinSets(f) => f,
        }
    }

    pub fn describe(&self) -> Value {
        match self {
            InstanceHandle::Lattice(l) => json!({
                "kind": "lattice",
                "objects": l.objects().len(),
            }),
            InstanceHandle::Pointed(p) => json!({
                "kind": "pointed_sets",
                "roster_bound": p.roster_bound(),
            }),
            InstanceHandle::FinSets(f) => json!({
                "kind": "finite_sets",
                "roster_bound": f.roster_bound(),
                "size_cap": f.size_cap(),
            }),
        }
    }
}

/// Run parameters with their defaults; flags override the run block.
#[derive(Clone, Debug)]
pub struct RunParams {
    pub budget: usize,
    pub roster: Option<Vec<usize>>,
    pub strength: StrengthMode,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            budget: 5_000_000,
            roster: None,
            strength: StrengthMode::AllArities,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubCommand {
    CheckOperad,
    CheckInstance,
    EnumerateCoalgebras,
    ComputeComonad,
    VerifyComonadLaws,
    VerifyEquivalence,
    Fox,
}

impl SubCommand {
    pub fn name(self) -> &'static str {
        match self {
            SubCommand::CheckOperad => "check-operad",
            SubCommand::CheckInstance => "check-instance",
            SubCommand::EnumerateCoalgebras => "enumerate-coalgebras",
            SubCommand::ComputeComonad => "compute-comonad",
            SubCommand::VerifyComonadLaws => "verify-comonad-laws",
            SubCommand::VerifyEquivalence => "verify-equivalence",
            SubCommand::Fox => "fox",
        }
    }
}

// ---------------------------------------------------------------------------
// parsing helpers with field paths

fn parse_err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(&format!("{path}.{key}"), "missing field"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err(path, "expected a non-negative integer"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(path, "expected a string"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(path, "expected an array"))
}

fn usize_array(v: &Value, path: &str) -> Result<Vec<usize>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, item)| as_usize(item, &format!("{path}[{k}]")))
        .collect()
}

// ---------------------------------------------------------------------------
// loading

/// Parse and validate a job file. With `gate_axioms`, a loaded operad must
/// pass the axiom check before any run (check-operad loads without the gate
/// so that violations become its report).
pub fn load_spec(path: &Path, gate_axioms: bool) -> Result<SpecDocument> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| parse_err("<document>", format!("invalid JSON: {e}")))?;
    load_spec_value(&value, gate_axioms)
}

pub fn load_spec_value(value: &Value, gate_axioms: bool) -> Result<SpecDocument> {
    let root = as_object(value, "<document>")?;
    for key in root.keys() {
        if !matches!(key.as_str(), "instance" | "operad" | "run") {
            return Err(parse_err(key, "unknown top-level field"));
        }
    }
    let instance = parse_instance(field(root, "<document>", "instance")?)?;
    let operad = parse_operad(field(root, "<document>", "operad")?)?;
    if gate_axioms {
        let report = check_operad_axioms(&operad);
        if !report.passed() {
            return Err(Error::Validation(format!(
                "operad fails its axioms: {}",
                report.violations[0]
            )));
        }
    }
    let run = match root.get("run") {
        Some(v) => parse_run(v)?,
        None => RunParams::default(),
    };
    Ok(SpecDocument {
        instance,
        operad,
        run,
    })
}

fn parse_instance(v: &Value) -> Result<InstanceHandle> {
    let obj = as_object(v, "instance")?;
    let kind = as_str(field(obj, "instance", "kind")?, "instance.kind")?;
    match kind {
        "lattice" => {
            let names: Vec<String> = as_array(field(obj, "instance", "names")?, "instance.names")?
                .iter()
                .enumerate()
                .map(|(k, item)| {
                    as_str(item, &format!("instance.names[{k}]")).map(str::to_string)
                })
                .collect::<Result<_>>()?;
            let n = names.len();
            let pairs_value = field(obj, "instance", "leq_pairs")?;
            let pairs = as_array(pairs_value, "instance.leq_pairs")?;
            let mut leq = vec![vec![false; n]; n];
            for (k, pair) in pairs.iter().enumerate() {
                let path = format!("instance.leq_pairs[{k}]");
                let entries = usize_array(pair, &path)?;
                let [a, b] = entries[..] else {
                    return Err(parse_err(&path, "expected a pair [i, j]"));
                };
                if a >= n || b >= n {
                    return Err(parse_err(&path, format!("index out of range for {n} names")));
                }
                leq[a][b] = true;
            }
            // reflexive-transitive closure; antisymmetry is then validated
            for i in 0..n {
                leq[i][i] = true;
            }
            loop {
                let mut changed = false;
                for a in 0..n {
                    for b in 0..n {
                        if !leq[a][b] {
                            continue;
                        }
                        for c in 0..n {
                            if leq[b][c] && !leq[a][c] {
                                leq[a][c] = true;
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            Ok(InstanceHandle::Lattice(build_lattice(names, leq)?))
        }
        "pointed_sets" => {
            let bound = as_usize(field(obj, "instance", "bound")?, "instance.bound")?;
            Ok(InstanceHandle::Pointed(build_pointed_sets(bound)?))
        }
        "finite_sets" => {
            let bound = as_usize(field(obj, "instance", "bound")?, "instance.bound")?;
            let cap = match obj.get("size_cap") {
                Some(v) => as_usize(v, "instance.size_cap")?,
                None => bound,
            };
            Ok(InstanceHandle::FinSets(build_finsets_capped(bound, cap)?))
        }
        other => Err(parse_err(
            "instance.kind",
            format!("unknown instance kind {other:?} (expected lattice, pointed_sets or finite_sets)"),
        )),
    }
}

fn parse_operad(v: &Value) -> Result<TruncatedOperad> {
    let obj = as_object(v, "operad")?;
    let max_arity = as_usize(field(obj, "operad", "max_arity")?, "operad.max_arity")?;
    if let Some(builtin) = obj.get("builtin") {
        let name = as_str(builtin, "operad.builtin")?;
        return match name {
            "com" => Ok(com(max_arity)),
            "ass" => Ok(ass(max_arity)),
            "monoid" => {
                let m = as_object(field(obj, "operad", "monoid")?, "operad.monoid")?;
                let size = as_usize(field(m, "operad.monoid", "size")?, "operad.monoid.size")?;
                let unit = as_usize(field(m, "operad.monoid", "unit")?, "operad.monoid.unit")?;
                let mult_value = field(m, "operad.monoid", "mult")?;
                let rows = as_array(mult_value, "operad.monoid.mult")?;
                let mult: Vec<Vec<usize>> = rows
                    .iter()
                    .enumerate()
                    .map(|(k, row)| usize_array(row, &format!("operad.monoid.mult[{k}]")))
                    .collect::<Result<_>>()?;
                let table = MonoidTable::new(size, unit, mult, format!("monoid-of-order-{size}"))?;
                Ok(from_monoid(&table, max_arity))
            }
            other => Err(parse_err(
                "operad.builtin",
                format!("unknown builtin {other:?} (expected com, ass or monoid)"),
            )),
        };
    }

    // explicit tables
    let sizes = usize_array(field(obj, "operad", "components")?, "operad.components")?;
    if sizes.len() != max_arity + 1 {
        return Err(parse_err(
            "operad.components",
            format!("expected {} sizes for max_arity {max_arity}", max_arity + 1),
        ));
    }
    let components: Vec<FinSet> = sizes.iter().map(|&s| FinSet::new(s)).collect();
    let unit = as_usize(field(obj, "operad", "unit")?, "operad.unit")?;

    let mut partial = BTreeMap::new();
    let entries = as_array(field(obj, "operad", "partial")?, "operad.partial")?;
    for (k, entry) in entries.iter().enumerate() {
        let path = format!("operad.partial[{k}]");
        let e = as_object(entry, &path)?;
        let m = as_usize(field(e, &path, "m")?, &format!("{path}.m"))?;
        let n = as_usize(field(e, &path, "n")?, &format!("{path}.n"))?;
        let i = as_usize(field(e, &path, "i")?, &format!("{path}.i"))?;
        let table = usize_array(field(e, &path, "table")?, &format!("{path}.table"))?;
        if m > max_arity || m + n == 0 || m + n - 1 > max_arity || i == 0 || i > m {
            return Err(parse_err(&path, format!("illegal key ({m},{n},{i})")));
        }
        let dom = FinSet::new(components[m].size() * components[n].size());
        let cod = components[m + n - 1].clone();
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.size().max(1)) {
            return Err(parse_err(
                &format!("{path}.table"),
                format!("entry {bad} out of range for a component of size {}", cod.size()),
            ));
        }
        let f = FinFn::new(dom, cod, table)
            .map_err(|e| parse_err(&format!("{path}.table"), e.to_string()))?;
        if partial.insert((m, n, i), f).is_some() {
            return Err(parse_err(&path, format!("duplicate key ({m},{n},{i})")));
        }
    }
    for key @ (m, n, i) in partial_keys(max_arity) {
        if !partial.contains_key(&key) {
            return Err(parse_err(
                "operad.partial",
                format!("missing table for (m={m}, n={n}, i={i})"),
            ));
        }
    }

    // actions: identity rows are implied; all other permutations required
    // for arities with an inhabited component
    let mut actions: Vec<Vec<FinFn>> = components
        .iter()
        .enumerate()
        .map(|(n, c)| vec![FinFn::identity(c); finset::factorial(n)])
        .collect();
    let mut provided: Vec<Vec<bool>> = (0..=max_arity)
        .map(|n| {
            let mut v = vec![false; finset::factorial(n)];
            v[0] = true;
            v
        })
        .collect();
    if let Some(action_entries) = obj.get("actions") {
        for (k, entry) in as_array(action_entries, "operad.actions")?.iter().enumerate() {
            let path = format!("operad.actions[{k}]");
            let e = as_object(entry, &path)?;
            let arity = as_usize(field(e, &path, "arity")?, &format!("{path}.arity"))?;
            if arity > max_arity {
                return Err(parse_err(&format!("{path}.arity"), "arity above truncation"));
            }
            let perm = usize_array(field(e, &path, "perm")?, &format!("{path}.perm"))?;
            if perm.len() != arity {
                return Err(parse_err(
                    &format!("{path}.perm"),
                    format!("expected a one-line permutation of length {arity}"),
                ));
            }
            let perm_fn = FinFn::new(FinSet::new(arity), FinSet::new(arity), perm.clone())
                .map_err(|e| parse_err(&format!("{path}.perm"), e.to_string()))?;
            if !perm_fn.is_bijective() {
                return Err(parse_err(&format!("{path}.perm"), "not a permutation"));
            }
            let rank = finset::perm_rank(&perm);
            let table = usize_array(field(e, &path, "table")?, &format!("{path}.table"))?;
            let f = FinFn::new(components[arity].clone(), components[arity].clone(), table)
                .map_err(|e| parse_err(&format!("{path}.table"), e.to_string()))?;
            actions[arity][rank] = f;
            provided[arity][rank] = true;
        }
    }
    for n in 0..=max_arity {
        if components[n].is_empty() {
            continue;
        }
        if let Some(rank) = provided[n].iter().position(|&p| !p) {
            return Err(parse_err(
                "operad.actions",
                format!("missing action table for arity {n}, permutation rank {rank}"),
            ));
        }
    }

    TruncatedOperad::new(
        "explicit".into(),
        max_arity,
        components,
        unit,
        partial,
        actions,
    )
}

fn parse_run(v: &Value) -> Result<RunParams> {
    let obj = as_object(v, "run")?;
    let mut params = RunParams::default();
    for (key, value) in obj {
        match key.as_str() {
            "budget" => params.budget = as_usize(value, "run.budget")?,
            "roster" => params.roster = Some(usize_array(value, "run.roster")?),
            "strength" => {
                params.strength = parse_strength(as_str(value, "run.strength")?)
                    .ok_or_else(|| parse_err("run.strength", "expected \"2\" or \"all\""))?
            }
            other => return Err(parse_err(&format!("run.{other}"), "unknown field")),
        }
    }
    Ok(params)
}

pub fn parse_strength(s: &str) -> Option<StrengthMode> {
    match s {
        "2" => Some(StrengthMode::Pairwise),
        "all" => Some(StrengthMode::AllArities),
        _ => None,
    }
}

/// Serialize an operad into the explicit-table job format; handy for turning
/// a builtin into a starting point for hand edits.
pub fn operad_to_spec_json(op: &TruncatedOperad) -> Value {
    let n_max = op.max_arity();
    let partial: Vec<Value> = partial_keys(n_max)
        .into_iter()
        .map(|(m, n, i)| {
            json!({
                "m": m, "n": n, "i": i,
                "table": op.partial_table(m, n, i).unwrap().table(),
            })
        })
        .collect();
    let mut actions = Vec::new();
    for n in 0..=n_max {
        for (rank, sigma) in finset::symmetric_group(n).iter().enumerate() {
            if rank == 0 {
                continue;
            }
            actions.push(json!({
                "arity": n,
                "perm": sigma.table(),
                "table": op.action_table(n, rank).table(),
            }));
        }
    }
    json!({
        "max_arity": n_max,
        "components": op.component_sizes(),
        "unit": op.unit_elem(),
        "partial": partial,
        "actions": actions,
    })
}

// ---------------------------------------------------------------------------
// running

fn resolve_roster(doc: &SpecDocument, opts: &RunParams) -> Vec<Obj> {
    match &opts.roster {
        Some(ids) => ids.iter().map(|&k| Obj(k)).collect(),
        None => doc.instance.monoidal().objects(),
    }
}

fn params_json(doc: &SpecDocument, opts: &RunParams, roster: &[Obj]) -> Value {
    let cat = doc.instance.monoidal();
    json!({
        "budget": opts.budget,
        "roster": roster.iter().map(|&x| cat.object_name(x)).collect::<Vec<_>>(),
        "strength": match opts.strength {
            StrengthMode::Pairwise => "2",
            StrengthMode::AllArities => "all",
        },
        "truncation": doc.operad.max_arity(),
    })
}

/// Execute a subcommand; returns the report document and whether every check
/// passed. Errors mean the run could not be carried out.
pub fn run(doc: &SpecDocument, cmd: SubCommand, opts: &RunParams) -> Result<(Value, bool)> {
    let cat = doc.instance.monoidal();
    let roster = resolve_roster(doc, opts);
    for &x in &roster {
        if !cat.contains_obj(x) {
            return Err(Error::Validation(format!(
                "roster object {x} is not an object of the instance"
            )));
        }
    }
    let mut report = Map::new();
    report.insert("subcommand".into(), json!(cmd.name()));
    report.insert("instance".into(), doc.instance.describe());
    report.insert(
        "operad".into(),
        json!({
            "name": doc.operad.name,
            "max_arity": doc.operad.max_arity(),
            "component_sizes": doc.operad.component_sizes(),
        }),
    );
    report.insert("params".into(), params_json(doc, opts, &roster));

    let (result, pass) = match cmd {
        SubCommand::CheckOperad => {
            let r = check_operad_axioms(&doc.operad);
            let pass = r.passed();
            (serde_json::to_value(&r).unwrap(), pass)
        }
        SubCommand::CheckInstance => {
            let axioms = check_category_axioms(cat, roster.len());
            let bif = bifunctoriality_report(cat, roster.len().min(3));
            let proj = projection_report(cat, roster.len());
            let pass = axioms.passed()
                && bif.is_empty()
                && proj.semicartesian
                && proj.monically_projecting;
            (
                json!({
                    "category_axioms": axioms,
                    "bifunctoriality_violations": bif,
                    "projection": proj,
                }),
                pass,
            )
        }
        SubCommand::EnumerateCoalgebras => {
            let mut per_object = Vec::new();
            for &x in &roster {
                let found = enumerate_coalgebras(cat, &doc.operad, x, opts.budget)?;
                per_object.push(json!({
                    "object": cat.object_name(x),
                    "count": found.len(),
                    "structures": found.iter().map(|s| s.describe()).collect::<Vec<_>>(),
                }));
            }
            let closure =
                check_coalgebra_category(cat, &doc.operad, &roster, opts.budget)?;
            let pass = closure.passed();
            (
                json!({"objects": per_object, "category_check": closure}),
                pass,
            )
        }
        SubCommand::ComputeComonad => {
            let mut per_object = Vec::new();
            let mut pass = true;
            for &x in &roster {
                let cp = compute_cp(cat, &doc.operad, x, opts.strength)?;
                let mono = inclusion_mono_report(cat, &cp, &roster);
                pass &= mono.is_empty();
                per_object.push(json!({
                    "object": cat.object_name(x),
                    "cotensor": cat.object_name(cp.cotensor_obj),
                    "carrier": cat.object_name(cp.carrier_obj),
                    "carrier_size": cp.carrier_size,
                    "full_cotensor": cp.full,
                    "inclusion_violations": mono,
                }));
            }
            (json!({"objects": per_object}), pass)
        }
        SubCommand::VerifyComonadLaws => {
            let mut coaction =
                ComonadEngine::new(cat, &doc.operad, ComonadKind::Coaction, opts.strength)?;
            let coaction_report = comonad_laws(&mut coaction, &roster)?;
            let mut cp = ComonadEngine::new(cat, &doc.operad, ComonadKind::Cp, opts.strength)?;
            let cp_report = comonad_laws(&mut cp, &roster)?;
            let pass = coaction_report.passed() && cp_report.passed();
            (
                json!({"coaction": coaction_report, "subcomonad": cp_report}),
                pass,
            )
        }
        SubCommand::VerifyEquivalence => {
            let r = equivalence_report(cat, &doc.operad, &roster, opts.budget, opts.strength)?;
            let pass = r.passed();
            (serde_json::to_value(&r).unwrap(), pass)
        }
        SubCommand::Fox => {
            let r = fox_report(cat, doc.operad.max_arity(), &roster, opts.budget)?;
            let pass = r.passed();
            (serde_json::to_value(&r).unwrap(), pass)
        }
    };
    report.insert("result".into(), result);
    report.insert("pass".into(), json!(pass));
    Ok((Value::Object(report), pass))
}

// ---------------------------------------------------------------------------
// rendering

/// Render a report document as indented text, one line per leaf.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    if let Some(pass) = value.get("pass").and_then(Value::as_bool) {
        out.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    }
    render_into(value, 0, &mut out);
    out
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, item) in map {
                match item {
                    Value::Object(_) | Value::Array(_) if !is_short(item) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_into(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", compact(item))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) if !is_short(item) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", compact(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", compact(other))),
    }
}

fn is_short(value: &Value) -> bool {
    serde_json::to_string(value).map(|s| s.len() <= 60).unwrap_or(false)
}

fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).unwrap_or_default(),
    }
}

/// Top-level entry used by the binary: load, run, emit, and map the outcome
/// to the exit-code contract (0 pass, 1 violation, 2 unable to run).
pub fn execute(
    cmd: SubCommand,
    spec_path: &Path,
    format: OutputFormat,
    overrides: &CliOverrides,
) -> i32 {
    let gate = cmd != SubCommand::CheckOperad;
    let doc = match load_spec(spec_path, gate) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut params = doc.run.clone();
    if let Some(budget) = overrides.budget {
        params.budget = budget;
    }
    if let Some(roster) = &overrides.roster {
        params.roster = Some(roster.clone());
    }
    if let Some(strength) = overrides.strength {
        params.strength = strength;
    }
    match run(&doc, cmd, &params) {
        Ok((report, pass)) => {
            match format {
                OutputFormat::Text => print!("{}", render_text(&report)),
                OutputFormat::Structured => {
                    println!("{}", serde_json::to_string_pretty(&report).unwrap())
                }
            }
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Flag overrides collected by the binary.
#[derive(Clone, Debug, Default)]
pub struct CliOverrides {
    pub budget: Option<usize>,
    pub roster: Option<Vec<usize>>,
    pub strength: Option<StrengthMode>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pointed_com_doc() -> Value {
        json!({
            "instance": {"kind": "pointed_sets", "bound": 3},
            "operad": {"builtin": "com", "max_arity": 3},
            "run": {"budget": 1000000}
        })
    }

    #[test]
    fn builtin_document_loads() {
        let doc = load_spec_value(&pointed_com_doc(), true).unwrap();
        assert_eq!(doc.operad.component_sizes(), vec![1, 1, 1, 1]);
        assert_eq!(doc.run.budget, 1_000_000);
    }

    #[test]
    fn explicit_tables_match_builtin() {
        let builtin = ass(2);
        let mut spec = json!({
            "instance": {"kind": "pointed_sets", "bound": 2},
            "operad": operad_to_spec_json(&builtin),
        });
        let doc = load_spec_value(&spec, true).unwrap();
        assert_eq!(doc.operad.component_sizes(), builtin.component_sizes());
        for key @ (m, n, i) in partial_keys(2) {
            assert_eq!(
                doc.operad.partial_table(m, n, i),
                builtin.partial_table(m, n, i),
                "partial {key:?}"
            );
        }
        for n in 0..=2 {
            for rank in 0..finset::factorial(n) {
                assert_eq!(
                    doc.operad.action_table(n, rank),
                    builtin.action_table(n, rank)
                );
            }
        }
        // and a corrupted entry is rejected at its field path
        spec["operad"]["partial"][0]["table"][0] = json!(99);
        let err = load_spec_value(&spec, true).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("operad.partial[0].table"), "{msg}");
    }

    #[test]
    fn missing_action_is_located() {
        let mut spec_operad = operad_to_spec_json(&ass(2));
        spec_operad["actions"] = json!([]);
        let spec = json!({
            "instance": {"kind": "pointed_sets", "bound": 2},
            "operad": spec_operad,
        });
        let err = load_spec_value(&spec, true).unwrap_err();
        assert!(err.to_string().contains("operad.actions"), "{err}");
    }

    #[test]
    fn axiom_gate_fires_on_corrupted_tables() {
        let mut spec_operad = operad_to_spec_json(&ass(2));
        // collapse the transposition action to a constant: in range, so the
        // document parses, but the action laws break
        spec_operad["actions"][0]["table"] = json!([0, 0]);
        let spec = json!({
            "instance": {"kind": "pointed_sets", "bound": 2},
            "operad": spec_operad,
        });
        assert!(load_spec_value(&spec, true).is_err());
        // without the gate the same document loads, for check-operad
        assert!(load_spec_value(&spec, false).is_ok());
    }

    #[test]
    fn lattice_document_builds_with_closure() {
        let spec = json!({
            "instance": {
                "kind": "lattice",
                "names": ["1", "2", "3", "6"],
                "leq_pairs": [[0,1],[0,2],[1,3],[2,3]],
            },
            "operad": {"builtin": "com", "max_arity": 2},
        });
        let doc = load_spec_value(&spec, true).unwrap();
        let (report, pass) = run(&doc, SubCommand::Fox, &doc.run).unwrap();
        assert!(pass, "{}", render_text(&report));
    }

    #[test]
    fn monoid_builtin_loads() {
        let spec = json!({
            "instance": {"kind": "pointed_sets", "bound": 2},
            "operad": {
                "builtin": "monoid",
                "max_arity": 2,
                "monoid": {"size": 2, "unit": 0, "mult": [[0,1],[1,0]]},
            },
        });
        let doc = load_spec_value(&spec, true).unwrap();
        assert_eq!(doc.operad.component_sizes(), vec![1, 2, 0]);
    }

    #[test]
    fn bad_monoid_is_rejected() {
        let spec = json!({
            "instance": {"kind": "pointed_sets", "bound": 2},
            "operad": {
                "builtin": "monoid",
                "max_arity": 2,
                "monoid": {"size": 2, "unit": 0, "mult": [[0,1],[0,0]]},
            },
        });
        assert!(load_spec_value(&spec, true).is_err());
    }

    #[test]
    fn subcommands_run_and_pass() {
        let doc = load_spec_value(&pointed_com_doc(), true).unwrap();
        for cmd in [
            SubCommand::CheckOperad,
            SubCommand::CheckInstance,
            SubCommand::EnumerateCoalgebras,
            SubCommand::ComputeComonad,
            SubCommand::VerifyComonadLaws,
            SubCommand::VerifyEquivalence,
        ] {
            let (report, pass) = run(&doc, cmd, &doc.run).unwrap();
            assert!(pass, "{}: {}", cmd.name(), render_text(&report));
        }
    }

    #[test]
    fn structured_output_is_stable() {
        let doc = load_spec_value(&pointed_com_doc(), true).unwrap();
        let (a, _) = run(&doc, SubCommand::VerifyEquivalence, &doc.run).unwrap();
        let (b, _) = run(&doc, SubCommand::VerifyEquivalence, &doc.run).unwrap();
        assert_eq!(
            serde_json::to_string_pretty(&a).unwrap(),
            serde_json::to_string_pretty(&b).unwrap()
        );
    }

    #[test]
    fn reports_embed_truncation_and_bounds() {
        let doc = load_spec_value(&pointed_com_doc(), true).unwrap();
        let (report, _) = run(&doc, SubCommand::ComputeComonad, &doc.run).unwrap();
        assert_eq!(report["params"]["truncation"], json!(3));
        assert_eq!(report["params"]["budget"], json!(1_000_000));
        assert_eq!(report["instance"]["roster_bound"], json!(3));
    }

    #[test]
    fn fox_on_non_cartesian_is_an_error() {
        let doc = load_spec_value(&pointed_com_doc(), true).unwrap();
        assert!(run(&doc, SubCommand::Fox, &doc.run).is_err());
    }
}

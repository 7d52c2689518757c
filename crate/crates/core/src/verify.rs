//! Verification runs over sets of cluster-tilted algebras, producing
//! deterministic JSON reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::ar::{default_window, ArVertex};
use crate::cluster::{exchange_permutation, ClusterCategory, ObjectRef, TiltingObject};
use crate::dynkin::{mutation_class, DynkinType, Family, Quiver, DEFAULT_CLASS_BOUND};
use crate::error::{Error, Result};
use crate::radical::{RadicalTable, Route, TranslationQuiver, VertexBound};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample => "sample",
        })
    }
}

/// Which tilting objects a run covers.
#[derive(Clone, Debug)]
pub struct Selection {
    pub mode: Mode,
    pub seed: u64,
    /// Number of sampled tilting objects.
    pub walks: usize,
    pub walk_len: usize,
    /// At most this many tilting objects are verified.
    pub budget: Option<usize>,
    /// Verify only this tilting object.
    pub tilting: Option<TiltingObject>,
}

impl Default for Selection {
    fn default() -> Self {
        Selection { mode: Mode::Sample, seed: 1, walks: 10, walk_len: 20, budget: None, tilting: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub subject: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

/// Per-algebra results.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub tilting: Vec<ObjectRef>,
    #[serde(skip)]
    pub key: TiltingObject,
    pub quiver: Vec<[i64; 3]>,
    pub ind_count: usize,
    pub self_injective: bool,
    pub vertices: Vec<VertexBound>,
    pub r_bruteforce: usize,
    pub r_formula: usize,
    pub coxeter_minus_one_match: bool,
    pub routes_agree: bool,
    /// `dim Hom = 1` and `R^2 = 0` along every AR arrow.
    pub irreducible_hom: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunInfo {
    pub command: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub mode: Mode,
    pub seed: u64,
    pub walks: usize,
    pub walk_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tilting: Option<Vec<ObjectRef>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub run: RunInfo,
    pub pass: bool,
    pub complete: bool,
    pub checked: usize,
    pub records: Vec<CheckRecord>,
    pub algebras: Vec<AlgebraSummary>,
}

impl VerificationReport {
    fn new(command: &str, cat: &ClusterCategory, sel: &Selection) -> Self {
        let ty = cat.dynkin_type();
        VerificationReport {
            run: RunInfo {
                command: command.into(),
                ty: format!("{:?}", ty.family()),
                rank: ty.rank(),
                mode: sel.mode,
                seed: sel.seed,
                walks: sel.walks,
                walk_len: sel.walk_len,
                budget: sel.budget,
                tilting: sel.tilting.as_ref().map(|t| cat.tilting_to_refs(t)),
            },
            pass: true,
            complete: true,
            checked: 0,
            records: Vec::new(),
            algebras: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, subject: impl Into<String>, expected: Value, actual: Value) -> bool {
        let pass = expected == actual;
        self.pass &= pass;
        self.records.push(CheckRecord { name: name.into(), subject: subject.into(), expected, actual, pass });
        pass
    }

    /// 0 when passed and complete, 1 on failure, 2 when incomplete.
    pub fn exit_code(&self) -> i32 {
        match (self.pass, self.complete) {
            (false, _) => 1,
            (true, false) => 2,
            (true, true) => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per algebra vertex.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tilting,a,n_a,m_a,r_a,r_bruteforce,r_formula,coxeter_minus_one_match\n");
        for alg in &self.algebras {
            let key = serde_json::to_string(&alg.tilting).unwrap().replace('"', "'");
            for v in &alg.vertices {
                out.push_str(&format!(
                    "\"{key}\",{},{},{},{},{},{},{}\n",
                    v.a, v.n_a, v.m_a, v.r_a, alg.r_bruteforce, alg.r_formula, alg.coxeter_minus_one_match
                ));
            }
        }
        out
    }

    /// Failed records only.
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

fn subject(cat: &ClusterCategory, t: &TiltingObject) -> String {
    serde_json::to_string(&cat.tilting_to_refs(t)).unwrap()
}

/// Distinct tilting objects sampled by mutation walks from the hereditary
/// one. Each sample continues the previous walk for `walk_len` steps,
/// stepping further while it lands on an object already sampled.
pub fn sample_tilting(cat: &ClusterCategory, seed: u64, count: usize, walk_len: usize) -> Result<Vec<TiltingObject>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = cat.hereditary();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let cap = cat.dynkin_type().cluster_count() as usize;
    while out.len() < count.min(cap) {
        let mut steps = 0;
        while steps < walk_len.max(1) || seen.contains(&cur) {
            let u = rng.random_range(0..cat.rank());
            cur = cat.exchange(&cur, u)?.0;
            steps += 1;
            if steps > 100 * (walk_len + cat.rank()) {
                break;
            }
        }
        if seen.insert(cur.clone()) {
            out.push(cur.clone());
        }
    }
    Ok(out)
}

/// Tilting objects covered by a selection, and whether the selection is
/// complete (not cut by the budget).
pub fn select(cat: &ClusterCategory, sel: &Selection) -> Result<(Vec<TiltingObject>, bool)> {
    let ty = cat.dynkin_type();
    let mut list = if let Some(t) = &sel.tilting {
        vec![t.clone()]
    } else {
        match sel.mode {
            Mode::Exhaustive => {
                if !ty.exhaustive_allowed() {
                    return Err(Error::InvalidType(format!(
                        "exhaustive mode is limited to A_n (n <= 6) and D_n (n <= 5), got {ty}"
                    )));
                }
                cat.enumerate_tilting(None)?.tilting
            }
            Mode::Sample => sample_tilting(cat, sel.seed, sel.walks, sel.walk_len)?,
        }
    };
    list.sort();
    let complete = sel.budget.is_none_or(|b| list.len() <= b);
    if let Some(b) = sel.budget {
        list.truncate(b);
    }
    Ok((list, complete))
}

/// Builds the algebra of `t` and computes its radical table both ways.
pub fn summarize(cat: &ClusterCategory, t: &TiltingObject) -> Result<AlgebraSummary> {
    let ty = cat.dynkin_type();
    let alg = cat.module_category(t)?;
    let table = RadicalTable::new(&alg)?;
    let sinks = RadicalTable::with_route(&alg, Route::SinkMaps)?;
    let vertices = table.vertex_bounds()?;
    let r_bruteforce = table.nilpotency_index();
    let r_formula = vertices.iter().map(|v| v.r_a).max().unwrap_or(0) + 1;
    Ok(AlgebraSummary {
        tilting: cat.tilting_to_refs(t),
        key: t.clone(),
        quiver: alg.quiver().arrows().iter().map(|&(a, b, k)| [a as i64, b as i64, k as i64]).collect(),
        ind_count: alg.ind_count(),
        self_injective: alg.is_self_injective(),
        vertices,
        r_bruteforce,
        r_formula,
        coxeter_minus_one_match: r_bruteforce + 1 == ty.coxeter_number(),
        routes_agree: table.same_chains(&sinks),
        irreducible_hom: table.check_irreducible_hom(),
    })
}

fn summarize_all(cat: &ClusterCategory, list: &[TiltingObject]) -> Result<BTreeMap<TiltingObject, AlgebraSummary>> {
    let out: Vec<AlgebraSummary> = list.par_iter().map(|t| summarize(cat, t)).collect::<Result<_>>()?;
    Ok(out.into_iter().map(|s| (s.key.clone(), s)).collect())
}

fn b_records(report: &mut VerificationReport, cat: &ClusterCategory, s: &AlgebraSummary) {
    let ty = cat.dynkin_type();
    let subj = subject(cat, &s.key);
    report.record("nilpotency-index", &subj, json!(ty.expected_nilpotency_index()), json!(s.r_bruteforce));
    report.record("vertex-bound-formula", &subj, json!(s.r_bruteforce), json!(s.r_formula));
    report.record("coxeter", &subj, json!(ty.coxeter_number()), json!(s.r_bruteforce + 1));
    report.record("routes-agree", &subj, json!(true), json!(s.routes_agree));
    report.record("irreducible-hom-one-dimensional", &subj, json!(true), json!(s.irreducible_hom));
    report.record("ind-count", &subj, json!(ty.positive_root_count()), json!(s.ind_count));
    if s.self_injective && ty.family() == Family::D {
        report.record("self-injective-index", &subj, json!(2 * ty.rank() - 3), json!(s.r_bruteforce));
    }
}

/// Nilpotency index against the table, both ways.
pub fn verify_b(cat: &ClusterCategory, sel: &Selection) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("verify-b", cat, sel);
    let (list, complete) = select(cat, sel)?;
    report.complete = complete;
    let summaries = summarize_all(cat, &list)?;
    for s in summaries.values() {
        b_records(&mut report, cat, s);
    }
    report.checked = summaries.len();
    report.algebras = summaries.into_values().collect();
    Ok(report)
}

/// Invariance of the index and the vertex bounds under every exchange.
pub fn verify_a(cat: &ClusterCategory, sel: &Selection) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("verify-a", cat, sel);
    let (mut list, complete) = select(cat, sel)?;
    report.complete = complete;
    if sel.mode == Mode::Sample && sel.tilting.is_none() {
        list.push(cat.hereditary());
        list.sort();
        list.dedup();
    }
    let n = cat.rank();
    let mut exchanges = Vec::new();
    let mut needed: BTreeSet<TiltingObject> = list.iter().cloned().collect();
    for t in &list {
        for x in 0..n {
            let (t2, new) = cat.exchange(t, x)?;
            needed.insert(t2.clone());
            exchanges.push((t.clone(), x, t2, new));
        }
    }
    let needed: Vec<TiltingObject> = needed.into_iter().collect();
    let summaries = summarize_all(cat, &needed)?;
    for (t, x, t2, new) in &exchanges {
        let (s1, s2) = (&summaries[t], &summaries[t2]);
        let perm = exchange_permutation(t, t2, *x, *new);
        let subj = format!("{} at {x}", subject(cat, t));
        report.record("exchange-index", &subj, json!(s1.r_bruteforce), json!(s2.r_bruteforce));
        let shared_ok = (0..n).filter(|&a| a != *x).all(|a| s1.vertices[a].r_a == s2.vertices[perm[a]].r_a);
        report.record("exchange-shared-vertices", &subj, json!(true), json!(shared_ok));
        let (v1, v2) = (s1.vertices[*x], s2.vertices[perm[*x]]);
        report.record("exchange-vertex-bound", &subj, json!(v1.r_a), json!(v2.r_a));
        report.record("exchange-n-m", &subj, json!([v1.n_a, v1.m_a]), json!([v2.m_a, v2.n_a]));
    }
    for t in &list {
        b_records(&mut report, cat, &summaries[t]);
    }
    report.checked = exchanges.len();
    report.algebras = list.iter().map(|t| summaries[t].clone()).collect();
    Ok(report)
}

type Triple = (String, Value, Value);

/// Composites of irreducible maps, sectional paths and the shape of Hom
/// between neighbours.
pub fn verify_c(cat: &ClusterCategory, sel: &Selection, maxlen: Option<usize>) -> Result<VerificationReport> {
    let ty = cat.dynkin_type();
    let mut report = VerificationReport::new("verify-c", cat, sel);
    if !ty.composition_sweep_allowed() && sel.tilting.is_none() && sel.mode == Mode::Exhaustive {
        return Err(Error::InvalidType(format!(
            "exhaustive composition sweeps are limited to A_n (n <= 5) and D_4, got {ty}"
        )));
    }
    let (list, complete) = select(cat, sel)?;
    report.complete = complete;
    let results: Vec<(TiltingObject, Vec<Triple>)> = list
        .par_iter()
        .map(|t| {
            let alg = cat.module_category(t)?;
            let table = RadicalTable::new(&alg)?;
            let len = maxlen.unwrap_or(table.nilpotency_index());
            let check = table.check_composites(len)?;
            let recs = vec![
                ("composites-vanish-iff-deep".to_string(), json!(0), json!(check.violations.len())),
                ("sectional-depth".to_string(), json!(0), json!(check.sectional_violations.len())),
                ("irreducible-hom-one-dimensional".to_string(), json!(true), json!(table.check_irreducible_hom())),
                ("chains-checked".to_string(), json!(true), json!(check.chains > 0 || table.arrows().is_empty())),
            ];
            Ok((t.clone(), recs))
        })
        .collect::<Result<_>>()?;
    for (t, recs) in results {
        let subj = subject(cat, &t);
        for (name, e, a) in recs {
            report.record(&name, &subj, e, a);
        }
    }
    report.checked = list.len();
    Ok(report)
}

/// Structural properties of the whole construction for one type.
pub fn props(cat: &ClusterCategory, sel: &Selection) -> Result<VerificationReport> {
    let ty = cat.dynkin_type();
    let mut report = VerificationReport::new("props", cat, sel);
    let name = ty.to_string();
    let orbit = cat.orbit();
    let window = orbit.window();
    let base = window.base();

    report.record("positive-roots", &name, json!(ty.positive_root_count()), json!(base.len()));
    report.record("fundamental-domain", &name, json!(ty.positive_root_count() + ty.rank()), json!(orbit.len()));
    report.record("window-meshes", &name, json!(true), json!(window.check_meshes().is_ok()));
    let tq = TranslationQuiver::from_window(window);
    report.record("window-length", &name, json!(true), json!(tq.check_length()));
    let graph = tq.orbit_graph();
    let graph_type = graph.as_quiver().and_then(|q| q.dynkin_type()).map(|t| t.to_string()).unwrap_or_default();
    report.record("orbit-graph", &name, json!(name), json!(graph_type));

    let vs: Vec<ArVertex> = window.vertices().collect();
    let f_ok = vs.iter().all(|&v| {
        let f = window.f_unbounded(v, 1);
        f != v
            && window.f_unbounded(f, -1) == v
            && window.tau_unbounded(f) == window.f_unbounded(window.tau_unbounded(v), 1)
            && window.succs(v).iter().all(|&u| window.has_arrow(f, window.f_unbounded(u, 1)))
    });
    report.record("f-automorphism", &name, json!(true), json!(f_ok));
    let canon_ok = vs.iter().all(|&v| window.canonicalize(window.f_unbounded(v, 1)).0 == window.canonicalize(v).0);
    report.record("canonicalize-f-invariant", &name, json!(true), json!(canon_ok));

    let n = orbit.len();
    let exclusive = (0..n).all(|x| (0..n).all(|y| orbit.block(x, y).minus == 0 || orbit.block(x, y).zero == 0));
    report.record("hom-component-exclusivity", &name, json!(true), json!(exclusive));
    let symmetric = (0..n).all(|x| (0..n).all(|y| orbit.ext1(x, y) == orbit.ext1(y, x)));
    report.record("ext-symmetry", &name, json!(true), json!(symmetric));
    let end_ok = (0..n).all(|x| orbit.hom_dim(x, x) == 1 && orbit.ext1(x, x) == 0);
    report.record("rigid-bricks", &name, json!(true), json!(end_ok));

    let all = cat.enumerate_tilting(None)?;
    report.record("tilting-count", &name, json!(ty.cluster_count()), json!(all.tilting.len()));
    let two = all.tilting.par_iter().all(|t| (0..t.rank()).all(|u| cat.exchange(t, u).is_ok()));
    report.record("two-complements", &name, json!(true), json!(two));

    let class: BTreeSet<Quiver> = mutation_class(&ty.default_orientation(), DEFAULT_CLASS_BOUND)?.into_iter().collect();
    let realized: BTreeSet<Quiver> = all
        .tilting
        .par_iter()
        .map(|t| cat.cluster_tilted_quiver(t).map(|q| q.canonical_form()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    report.record("mutation-class-realized", &name, json!(class.len()), json!(realized.len()));
    report.record("quivers-in-mutation-class", &name, json!(true), json!(realized.is_subset(&class)));
    let simple = class.iter().all(|q| q.max_multiplicity() <= 1);
    report.record("class-without-multiple-arrows", &name, json!(true), json!(simple));
    let q = ty.default_orientation();
    let involution = (0..ty.rank()).all(|k| q.mutate(k).and_then(|m| m.mutate(k)).is_ok_and(|m| m == q));
    report.record("mutation-involution", &name, json!(true), json!(involution));

    let hereditary = cat.hereditary();
    let h = summarize(cat, &hereditary)?;
    let perm: Vec<usize> =
        hereditary.summands.iter().map(|&x| base.module(orbit.object(x).module).projective_of.unwrap()).collect();
    let q_gamma = cat.cluster_tilted_quiver(&hereditary)?.relabel(&perm);
    report.record("hereditary-quiver", &name, json!(q.arrows()), json!(q_gamma.arrows()));
    report.record("hereditary-index", &name, json!(ty.expected_nilpotency_index()), json!(h.r_bruteforce));

    let (list, complete) = select(cat, sel)?;
    report.complete = complete;
    let summaries = summarize_all(cat, &list)?;
    for s in summaries.values() {
        b_records(&mut report, cat, s);
    }
    report.checked = summaries.len();
    report.algebras = summaries.into_values().collect();
    Ok(report)
}

/// Window dump for `window` subcommands.
pub fn window_json(ty: DynkinType) -> Result<String> {
    let w = default_window(ty)?;
    Ok(serde_json::to_string_pretty(&w.dump())?)
}

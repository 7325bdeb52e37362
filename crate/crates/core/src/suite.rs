//! The acceptance battery: every decidable statement checked over a list of
//! types, subsets, primes and finite group models, one record per instance.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::{self, OmegaGroup};
use crate::error::{Error, Result};
use crate::hecke::{self, HeckeModule};
use crate::jcomb;
use crate::linalg::{rank_rational, PrimeField};
use crate::oracle::FiniteGroupModel;
use crate::roots::{CartanType, Family, RootSet, RootSystem};
use crate::special::{AlphaRule, CoefficientRing, SpecialModule};
use crate::weyl::{self, SubsetJ, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest Weyl group enumerated.
    pub weyl: u128,
    /// Largest `p^{|V^J|}` for line enumeration.
    pub lines: u128,
    /// Largest `q^{n^2}` scanned by the finite group model.
    pub oracle: u128,
    /// Largest rank for the restricted exactness battery.
    pub exactness_rank: usize,
    /// Largest rank for the witness battery.
    pub witness_rank: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl: weyl::DEFAULT_ENUMERATION_CAP,
            lines: hecke::DEFAULT_LINE_CAP,
            oracle: crate::oracle::DEFAULT_MODEL_CAP,
            exactness_rank: 3,
            witness_rank: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub types: Vec<String>,
    pub primes: Vec<u64>,
    pub oracle_models: Vec<(usize, u64)>,
    pub caps: Caps,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            types: ["A1", "A2", "A3", "B2", "B3", "C3", "D4"].iter().map(|s| s.to_string()).collect(),
            primes: vec![2, 3],
            oracle_models: vec![(2, 2), (3, 2), (2, 3)],
            caps: Caps::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> std::result::Result<(), String> {
        let c = &self.caps;
        if c.weyl == 0 || c.lines == 0 || c.oracle == 0 || c.exactness_rank == 0 || c.witness_rank == 0 {
            return Err("all caps must be positive".into());
        }
        for &p in &self.primes {
            PrimeField::new(p).map_err(|_| format!("{p} is not prime"))?;
        }
        for &(_, q) in &self.oracle_models {
            PrimeField::new(q).map_err(|_| format!("oracle field size {q} is not prime"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub detail: String,
}

impl Outcome {
    pub fn verdict(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    pub fn skip(detail: impl Into<String>) -> Self {
        Outcome { status: Status::Skip, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn from_result(r: Result<Outcome>) -> Outcome {
    match r {
        Ok(o) => o,
        Err(e @ Error::CapExceeded { .. }) => Outcome::skip(e.to_string()),
        Err(e) => Outcome::verdict(false, e.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check_id: String,
    pub instance: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    /// No failures; skipped records do not count against the run.
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("check_id\tinstance\tstatus\tdetail\n");
        for r in &self.records {
            let clean = |s: &str| s.replace(['\t', '\n'], " ");
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.check_id, clean(&r.instance), r.status, clean(&r.detail)));
        }
        out
    }
}

type Task<'a> = (String, String, Box<dyn Fn() -> Outcome + Send + Sync + 'a>);

fn task<'a>(id: &str, instance: String, f: impl Fn() -> Result<Outcome> + Send + Sync + 'a) -> Task<'a> {
    (id.to_string(), instance, Box::new(move || from_result(f())))
}

fn ring_label(r: CoefficientRing) -> String {
    match r {
        CoefficientRing::PrimeField(p) => format!("F{p}"),
        other => other.to_string(),
    }
}

/// Runs every battery; the record order depends only on the configuration.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let groups: Vec<(String, Result<WeylGroup>)> = cfg
        .types
        .iter()
        .map(|t| {
            let g = t
                .parse::<CartanType>()
                .and_then(|ct| RootSystem::build(&ct))
                .and_then(|rs| WeylGroup::with_cap(rs, cfg.caps.weyl));
            (t.clone(), g)
        })
        .collect();
    let mut tasks: Vec<Task> = Vec::new();
    for (name, g) in &groups {
        match g {
            Ok(g) => type_tasks(cfg, name, g, &mut tasks),
            Err(e) => {
                for id in PER_TYPE_CHECKS {
                    let msg = e.to_string();
                    tasks.push((id.to_string(), name.clone(), Box::new(move || Outcome::verdict(false, msg.clone()))));
                }
            }
        }
    }
    for &p in &cfg.primes {
        tasks.push(task("hecke.negative_control", format!("A2 J={{1}} p={p}"), move || negative_control(p)));
    }
    for &(n, q) in &cfg.oracle_models {
        oracle_tasks(cfg, n, q, &mut tasks);
    }
    let records = tasks
        .par_iter()
        .map(|(id, inst, f)| {
            let o = f();
            Record { check_id: id.clone(), instance: inst.clone(), status: o.status, detail: o.detail }
        })
        .collect();
    Report { records }
}

const PER_TYPE_CHECKS: [&str; 6] =
    ["weyl.group", "weyl.vj_partition", "module.rank_sum", "chains.chain", "hecke.trichotomy", "hecke.fingerprint"];

fn type_tasks<'a>(cfg: &'a SuiteConfig, name: &str, g: &'a WeylGroup, tasks: &mut Vec<Task<'a>>) {
    let rank = g.rank();
    let subsets: Vec<SubsetJ> = SubsetJ::all(rank).collect();
    let inst = |j: SubsetJ| format!("{name} J={j}");
    tasks.push(task("weyl.group", name.to_string(), move || check_group(g)));
    tasks.push(task("weyl.vj_partition", name.to_string(), move || check_vj_partition(g)));
    tasks.push(task("jcomb.phi_difference", name.to_string(), move || check_phi_difference(g)));
    for &j in &subsets {
        tasks.push(task("weyl.projection", inst(j), move || check_projection(g, j)));
        tasks.push(task("weyl.coset_lengths", inst(j), move || check_coset_lengths(g, j)));
        tasks.push(task("weyl.left_moves", inst(j), move || check_left_moves(g, j)));
    }
    for &j in &subsets {
        tasks.push(task("jcomb.quasi_parabolic", inst(j), move || check_quasi_parabolic(g, j)));
    }
    tasks.push(task("module.rank_sum", name.to_string(), move || check_rank_sum(g)));
    tasks.push(task("module.steinberg", name.to_string(), move || check_steinberg(g)));
    let mut rings = vec![CoefficientRing::Rationals];
    rings.extend(cfg.primes.iter().map(|&p| CoefficientRing::PrimeField(p)));
    for &j in &subsets {
        tasks.push(task("module.rank_z", inst(j), move || check_module(g, j, CoefficientRing::Integers)));
        for &r in &rings {
            tasks.push(task("module.rank_field", format!("{} ring={}", inst(j), ring_label(r)), move || {
                check_module(g, j, r)
            }));
        }
        tasks.push(task("module.normal_form", inst(j), move || check_normal_form(g, j)));
        tasks.push(task("module.sigma", inst(j), move || check_sigma(g, j)));
    }
    for &j in &subsets {
        for &r in &rings {
            let label = format!("{} ring={}", inst(j), ring_label(r));
            if rank > cfg.caps.exactness_rank {
                tasks.push(task("module.exactness", label, move || {
                    Ok(Outcome::skip(format!("rank {rank} above {}", cfg.caps.exactness_rank)))
                }));
            } else {
                tasks.push(task("module.exactness", label, move || check_exactness(g, j, r)));
            }
        }
        if rank <= cfg.caps.exactness_rank {
            tasks.push(task("module.exactness_negative", inst(j), move || check_exactness_negative(g, j)));
        }
    }
    tasks.push(task("chains.omega", name.to_string(), move || check_omega(g)));
    tasks.push(task("chains.chain", name.to_string(), move || check_chain(g)));
    for &j in &subsets {
        tasks.push(task("chains.order_raises_length", inst(j), move || check_order_raises_length(g, j)));
        tasks.push(task("chains.order_descent", inst(j), move || check_order_descent(g, j)));
        tasks.push(task("chains.above_parabolic", inst(j), move || check_above_parabolic(g, j)));
        tasks.push(task("chains.maximum", inst(j), move || check_maximum(g, j)));
        tasks.push(task("chains.ascents_in_vj", inst(j), move || check_ascents_in_vj(g, j)));
        if rank <= cfg.caps.witness_rank {
            tasks.push(task("chains.witness", inst(j), move || check_witnesses(g, j)));
        }
        tasks.push(task("chains.lift", inst(j), move || check_lifts(g, j)));
    }
    tasks.push(task("hecke.trichotomy", name.to_string(), move || check_trichotomy(g)));
    tasks.push(task("hecke.fingerprint", name.to_string(), move || check_fingerprints(g)));
    for &j in &subsets {
        tasks.push(task("hecke.omega_law", inst(j), move || check_omega_law(g, j)));
        tasks.push(task("hecke.zj_eigen", inst(j), move || check_zj_eigen(g, j)));
        for &p in &cfg.primes {
            let label = format!("{} p={p}", inst(j));
            tasks.push(task("hecke.quadratic", label.clone(), move || check_quadratic(g, j, p)));
            tasks.push(task("hecke.lines", label.clone(), move || check_lines(g, j, p, cfg.caps.lines)));
            tasks.push(task("hecke.simple", label, move || check_simple(g, j, p, cfg.caps.lines)));
        }
    }
}

fn oracle_tasks<'a>(cfg: &'a SuiteConfig, n: usize, q: u64, tasks: &mut Vec<Task<'a>>) {
    let name = format!("GL{n}(F{q})");
    let model = FiniteGroupModel::with_cap(n, q, cfg.caps.oracle);
    match model {
        Ok(m) => {
            let m = std::sync::Arc::new(m);
            let m2 = m.clone();
            tasks.push(task("oracle.model", name.clone(), move || check_model(&m2)));
            for j in SubsetJ::all(n - 1) {
                let m = m.clone();
                tasks.push(task("oracle.certify", format!("{name} J={j}"), move || check_oracle(&m, j)));
            }
        }
        Err(e) => {
            let out = match e {
                Error::TooLarge(_) => Outcome::skip(e.to_string()),
                _ => Outcome::verdict(false, e.to_string()),
            };
            tasks.push(("oracle.model".into(), name, Box::new(move || out.clone())));
        }
    }
}

fn expected_omega_order(ct: &CartanType) -> usize {
    ct.factors
        .iter()
        .map(|f| match f.family {
            Family::A => f.rank + 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            _ => 1,
        })
        .product()
}

fn inverted_positive_roots(g: &WeylGroup, w: usize) -> usize {
    let rs = g.root_system();
    (0..rs.num_positive()).filter(|&r| !rs.is_positive(g.act_on_root(w, r))).count()
}

/// Order, length formula against root inversions, and the longest element.
pub fn check_group(g: &WeylGroup) -> Result<Outcome> {
    let rs = g.root_system();
    let expected: u128 = rs.cartan_type().factors.iter().filter_map(|f| f.weyl_order()).product();
    if g.order() as u128 != expected {
        return Ok(Outcome::verdict(false, format!("|W| = {} but expected {expected}", g.order())));
    }
    for w in 0..g.order() {
        let l = g.length(w);
        if l != weyl::length(rs, g.element(w)) || l as usize != inverted_positive_roots(g, w) {
            return Ok(Outcome::verdict(false, format!("length mismatch at {}", g.element(w))));
        }
    }
    let w0 = g.longest();
    let ok = g.length(w0) as usize == rs.num_positive()
        && (0..g.order()).all(|w| {
            let l = g.length(w0) - g.length(w);
            g.length(g.mul(w0, w)) == l && g.length(g.mul(w, w0)) == l
        });
    Ok(Outcome::verdict(ok, format!("|W| = {}, l(w_Delta) = {}", g.order(), g.length(w0))))
}

/// The `V^J` partition `W` and their sizes add up to `|W|`.
pub fn check_vj_partition(g: &WeylGroup) -> Result<Outcome> {
    let mut owner = vec![None; g.order()];
    for j in SubsetJ::all(g.rank()) {
        for w in g.enumerate_vj(j) {
            if let Some(other) = owner[w] {
                return Ok(Outcome::verdict(false, format!("{} in V^{other} and V^{j}", g.element(w))));
            }
            owner[w] = Some(j);
        }
    }
    let covered = owner.iter().filter(|o| o.is_some()).count();
    Ok(Outcome::verdict(covered == g.order(), format!("sum |V^J| = {covered}, |W| = {}", g.order())))
}

/// Projection: idempotent, constant on cosets, independent of the descent
/// order; coset count; nesting of `W^J`.
pub fn check_projection(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let wj = g.parabolic(j);
    let reps = g.enumerate_wj(j);
    if reps.len() * wj.len() != g.order() {
        return Ok(Outcome::verdict(false, "|W^J| |W_J| != |W|"));
    }
    for w in 0..g.order() {
        let p = g.project(w, j);
        if g.project(p, j) != p || g.project_reversed(w, j) != p || !g.in_wj(p, j) {
            return Ok(Outcome::verdict(false, format!("projection of {}", g.element(w))));
        }
        if wj.iter().any(|&u| g.project(g.mul(w, u), j) != p) {
            return Ok(Outcome::verdict(false, format!("projection not constant on {} W_J", g.element(w))));
        }
    }
    let reps_set: HashSet<usize> = reps.iter().copied().collect();
    for a in j.complement(g.rank()).iter() {
        if !g.enumerate_wj(j.with(a)).iter().all(|w| reps_set.contains(w)) {
            return Ok(Outcome::verdict(false, format!("W^(J+{}) not inside W^J", a + 1)));
        }
    }
    let z = g.z_j(j);
    let ok = g.in_vj(z, j) && z == g.mul(g.longest(), g.longest_in(j)) && z == g.project(g.longest(), j);
    Ok(Outcome::verdict(ok, format!("|W^J| = {}", reps.len())))
}

/// Projection shortens; lengths add across `W^J x W_J`.
pub fn check_coset_lengths(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    if let Some(w) = (0..g.order()).find(|&w| g.length(g.project(w, j)) > g.length(w)) {
        return Ok(Outcome::verdict(false, format!("(a) fails at {}", g.element(w))));
    }
    let wj = g.parabolic(j);
    for w1 in g.enumerate_wj(j) {
        for &w2 in &wj {
            if g.length(g.mul(w1, w2)) != g.length(w1) + g.length(w2) {
                return Ok(Outcome::verdict(false, format!("(b) fails at {} {}", g.element(w1), g.element(w2))));
            }
        }
    }
    Ok(Outcome::verdict(true, format!("{} pairs", g.order())))
}

/// `(sw)^J` is `w` or `sw` when `sw` is longer; the length conditions for a
/// projected descent agree.
pub fn check_left_moves(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let mut n = 0;
    for w in g.enumerate_wj(j) {
        for s in 0..g.rank() {
            let sw = g.left_mul(s, w);
            let x = g.project(sw, j);
            if g.length(sw) > g.length(w) && x != w && x != sw {
                return Ok(Outcome::verdict(false, format!("(b) fails at {}, s{}", g.element(w), s + 1)));
            }
            if g.length(sw) > g.length(w) && x != w && !g.in_wj(sw, j) {
                return Ok(Outcome::verdict(false, format!("(b) sw not in W^J at {}", g.element(w))));
            }
            if (g.length(x) < g.length(w)) != (g.length(sw) < g.length(w)) {
                return Ok(Outcome::verdict(false, format!("(c) fails at {}, s{}", g.element(w), s + 1)));
            }
            n += 1;
        }
    }
    Ok(Outcome::verdict(true, format!("{n} pairs")))
}

/// `Phi_J(w) - Phi_J'(w)` is negative for `J < J'` and `w` in `W^J'`.
pub fn check_phi_difference(g: &WeylGroup) -> Result<Outcome> {
    let neg = jcomb::negative_roots(g);
    let mut n = 0;
    for j2 in SubsetJ::all(g.rank()) {
        let big = jcomb::phi_j_table(g, j2)?;
        for j in SubsetJ::all(g.rank()).filter(|j| j.is_subset(&j2)) {
            for &(w, ref set2) in &big {
                let set = jcomb::phi_j(g, j, w)?.roots;
                if !set.difference(set2).is_subset(&neg) || !set2.is_subset(&set) {
                    return Ok(Outcome::verdict(false, format!("J={j}, J'={j2}, w={}", g.element(w))));
                }
                n += 1;
            }
        }
    }
    Ok(Outcome::verdict(true, format!("{n} triples")))
}

/// Witnesses, generators, positivizing elements and stability of the
/// boundary under restriction, for every quasi-parabolic set.
pub fn check_quasi_parabolic(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let sets = jcomb::enumerate_quasi_parabolic(g, j)?;
    let all: HashSet<RootSet> = sets.iter().map(|q| q.roots).collect();
    for (_, r) in jcomb::phi_j_table(g, j)? {
        if !all.contains(&r) {
            return Ok(Outcome::verdict(false, "a generator is missing"));
        }
    }
    for q in &sets {
        if !jcomb::verify_witnesses(g, q)? || !jcomb::is_quasi_parabolic(g, j, q.roots)? {
            return Ok(Outcome::verdict(false, format!("bad witnesses for {:?}", q.roots.indices())));
        }
        let Some(w) = jcomb::positivizing_witness(g, q.roots) else {
            return Ok(Outcome::verdict(false, format!("no positivizing element for {:?}", q.roots.indices())));
        };
        if !jcomb::act_on_set(g, w, q.roots).is_subset(&jcomb::positive_roots(g)) {
            return Ok(Outcome::verdict(false, "positivizing element is wrong"));
        }
        let wjd: HashSet<usize> = jcomb::wj_of_d(g, j, q.roots)?.into_iter().collect();
        for a in j.complement(g.rank()).iter() {
            let ja = j.with(a);
            for w in jcomb::wj_of_d(g, ja, q.roots)? {
                let bad = g.enumerate_wj(j).into_iter().any(|x| g.project(x, ja) == w && !wjd.contains(&x));
                if bad {
                    return Ok(Outcome::verdict(false, format!("stability fails for alpha_{}", a + 1)));
                }
            }
        }
    }
    Ok(Outcome::verdict(true, format!("{} sets", sets.len())))
}

pub fn check_module(g: &WeylGroup, j: SubsetJ, ring: CoefficientRing) -> Result<Outcome> {
    let m = SpecialModule::new(g, j)?;
    let r = m.build_report(ring)?;
    let ok = r.rank == r.size_vj && r.torsion_invariants.is_empty() && r.vj_basis_ok;
    Ok(Outcome::verdict(
        ok,
        format!("rank {} |V^J| {} torsion {:?} basis {}", r.rank, r.size_vj, r.torsion_invariants, r.vj_basis_ok),
    ))
}

pub fn check_rank_sum(g: &WeylGroup) -> Result<Outcome> {
    let mut sum = 0;
    for j in SubsetJ::all(g.rank()) {
        sum += SpecialModule::new(g, j)?.build_report(CoefficientRing::Integers)?.rank;
    }
    Ok(Outcome::verdict(sum == g.order(), format!("sum of ranks {sum}, |W| = {}", g.order())))
}

pub fn check_steinberg(g: &WeylGroup) -> Result<Outcome> {
    let vj = g.enumerate_vj(SubsetJ::EMPTY);
    let r = SpecialModule::new(g, SubsetJ::EMPTY)?.build_report(CoefficientRing::Integers)?;
    let ok = vj == vec![g.longest()] && r.rank == 1 && r.torsion_invariants.is_empty();
    Ok(Outcome::verdict(ok, format!("|V^0| = {}, rank {}", vj.len(), r.rank)))
}

/// The normal form kills boundaries and does not depend on the rewriting
/// rule.
pub fn check_normal_form(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let m = SpecialModule::new(g, j)?;
    for (a, w) in m.boundary_columns() {
        if m.normal_form(&m.boundary(a, w)?)?.coeffs.iter().any(|&c| c != 0) {
            return Ok(Outcome::verdict(false, format!("boundary of {} survives", g.element(w))));
        }
    }
    let ok = m.normal_form_table(AlphaRule::Smallest)? == m.normal_form_table(AlphaRule::Largest)?;
    Ok(Outcome::verdict(ok, format!("{} generators", m.boundary_columns().len())))
}

/// The alternating sums lie in the kernel of the dual map and are
/// independent; the dual map is the transpose.
pub fn check_sigma(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let m = SpecialModule::new(g, j)?;
    let dual = m.dual_boundary();
    let transpose = dual == m.boundary_matrix().transpose();
    let sigma = m.sigma_matrix();
    let killed = dual.mul(&sigma.transpose()).is_zero();
    let independent = rank_rational(&sigma) == m.vj().len();
    let ker = m.wj().len() - rank_rational(&dual);
    let ok = transpose && killed && independent && ker >= m.vj().len();
    Ok(Outcome::verdict(
        ok,
        format!("transpose {transpose}, in kernel {killed}, independent {independent}, dim ker {ker}"),
    ))
}

pub fn check_exactness(g: &WeylGroup, j: SubsetJ, ring: CoefficientRing) -> Result<Outcome> {
    let m = SpecialModule::new(g, j)?;
    let sets = jcomb::enumerate_quasi_parabolic(g, j)?;
    for q in &sets {
        let r = m.restricted_exactness(q.roots, ring)?;
        if !r.exact {
            return Ok(Outcome::verdict(false, format!("D = {:?}: {r:?}", q.roots.indices())));
        }
    }
    Ok(Outcome::verdict(true, format!("{} sets", sets.len())))
}

/// Removing one root from a quasi-parabolic set: whenever the result is not
/// quasi-parabolic, the exactness check must refuse it.
pub fn check_exactness_negative(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let m = SpecialModule::new(g, j)?;
    let sets = jcomb::enumerate_quasi_parabolic(g, j)?;
    let mut tried = BTreeSet::new();
    for q in &sets {
        for r in q.roots.iter() {
            let mut d = q.roots;
            d.remove(r);
            if tried.len() >= 32 || !tried.insert(d.0) || jcomb::is_quasi_parabolic(g, j, d)? {
                continue;
            }
            match m.restricted_exactness(d, CoefficientRing::Rationals) {
                Err(Error::NotQuasiParabolic) => {}
                other => return Ok(Outcome::verdict(false, format!("{:?} accepted: {other:?}", d.indices()))),
            }
        }
    }
    Ok(Outcome::verdict(true, format!("{} corrupted sets refused", tried.len())))
}

pub fn check_omega(g: &WeylGroup) -> Result<Outcome> {
    let om = OmegaGroup::build(g.root_system())?;
    let expected = expected_omega_order(g.root_system().cartan_type());
    let ok = om.is_closed() && om.order() == expected && om.elements[0].is_identity();
    Ok(Outcome::verdict(ok, format!("|W_Omega| = {}, expected {expected}", om.order())))
}

pub fn check_chain(g: &WeylGroup) -> Result<Outcome> {
    let steps = chains::weyllem2_chain(g.root_system())?;
    Ok(Outcome::verdict(true, format!("{} steps", steps.len())))
}

/// `w <_J (sw)^J` forces `l(w) < l(sw)`.
pub fn check_order_raises_length(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    for w in g.enumerate_wj(j) {
        let dist = chains::distances_j(g, j, w);
        for s in 0..g.rank() {
            let x = g.project(g.left_mul(s, w), j);
            if x != w && dist[x].is_some() && g.length(g.left_mul(s, w)) <= g.length(w) {
                return Ok(Outcome::verdict(false, format!("w = {}, s{}", g.element(w), s + 1)));
            }
        }
    }
    Ok(Outcome::verdict(true, ""))
}

/// `(sw)^J <_J w` iff `l(sw) < l(w)`.
pub fn check_order_descent(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    for w in g.enumerate_wj(j) {
        for s in 0..g.rank() {
            let x = g.project(g.left_mul(s, w), j);
            let below = x != w && chains::leq_j(g, j, x, w);
            if below != (g.length(g.left_mul(s, w)) < g.length(w)) {
                return Ok(Outcome::verdict(false, format!("w = {}, s{}", g.element(w), s + 1)));
            }
        }
    }
    Ok(Outcome::verdict(true, ""))
}

/// Everything above `w_J w_Delta` in the weak order is `u w_Delta` with `u`
/// in `W_J`.
pub fn check_above_parabolic(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let w0 = g.longest();
    let start = g.mul(g.longest_in(j), w0);
    let dist = chains::distances_j(g, SubsetJ::EMPTY, start);
    let wj: HashSet<usize> = g.parabolic(j).into_iter().collect();
    let mut n = 0;
    for (x, d) in dist.iter().enumerate() {
        if d.is_some() {
            let u = g.mul(x, g.inverse(w0));
            if !wj.contains(&u) {
                return Ok(Outcome::verdict(false, format!("u = {}", g.element(u))));
            }
            n += 1;
        }
    }
    Ok(Outcome::verdict(n == wj.len(), format!("{n} elements above w_J w_Delta")))
}

/// `z^J` is the unique maximum of `W^J`; descents of `z^J` are descents of
/// everything above it.
pub fn check_maximum(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let z = g.z_j(j);
    if !g.in_vj(z, j) || z != g.mul(g.longest(), g.longest_in(j)) {
        return Ok(Outcome::verdict(false, "z^J is not w_Delta w_J in V^J"));
    }
    for w in g.enumerate_wj(j) {
        if !chains::leq_j(g, j, w, z) {
            return Ok(Outcome::verdict(false, format!("{} not below z^J", g.element(w))));
        }
    }
    if !chains::successors_j(g, j, z).is_empty() {
        return Ok(Outcome::verdict(false, "z^J has a successor"));
    }
    let dist = chains::distances_j(g, SubsetJ::EMPTY, z);
    let desc: Vec<usize> = (0..g.rank()).filter(|&s| g.length(g.left_mul(s, z)) < g.length(z)).collect();
    for (u, d) in dist.iter().enumerate() {
        if d.is_some() && desc.iter().any(|&s| g.length(g.left_mul(s, u)) > g.length(u)) {
            return Ok(Outcome::verdict(false, format!("descent lost at {}", g.element(u))));
        }
    }
    Ok(Outcome::verdict(true, format!("z^J = {}", g.element(z))))
}

/// Projected ascents from `V^J` stay in `V^J`.
pub fn check_ascents_in_vj(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    for w in g.enumerate_vj(j) {
        for s in 0..g.rank() {
            let x = g.project(g.left_mul(s, w), j);
            if g.length(x) > g.length(w) && !g.in_vj(x, j) {
                return Ok(Outcome::verdict(false, format!("w = {}, s{}", g.element(w), s + 1)));
            }
        }
    }
    Ok(Outcome::verdict(true, ""))
}

pub fn check_witnesses(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let z = g.z_j(j);
    let mut n = 0;
    for w in g.enumerate_vj(j).into_iter().filter(|&w| w != z) {
        let (x, s) = chains::weyllem1_witness(g, j, w)?;
        let proj_len = |y: usize| g.length(g.project(g.left_mul(s, y), j));
        let ok = g.in_vj(x, j)
            && x != w
            && chains::leq_j(g, j, w, x)
            && proj_len(w) < g.length(w)
            && proj_len(x) >= g.length(x);
        if !ok {
            return Ok(Outcome::verdict(false, format!("bad witness for {}", g.element(w))));
        }
        n += 1;
    }
    Ok(Outcome::verdict(true, format!("{n} witnesses")))
}

pub fn check_lifts(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let reps = g.enumerate_wj(j);
    for &w in &reps {
        chains::weyllem3_lift(g, j, w)?;
    }
    Ok(Outcome::verdict(true, format!("{} lifts", reps.len())))
}

pub fn check_trichotomy(g: &WeylGroup) -> Result<Outcome> {
    let mut n = 0;
    for j in SubsetJ::all(g.rank()) {
        for w in g.enumerate_wj(j) {
            for s in 0..g.rank() {
                hecke::hecke_case(g, j, w, s)?;
                n += 1;
            }
        }
    }
    Ok(Outcome::verdict(true, format!("{n} triples")))
}

/// `T_s T_s = -T_s` modulo `p`.
pub fn check_quadratic(g: &WeylGroup, j: SubsetJ, p: u64) -> Result<Outcome> {
    let f = PrimeField::new(p)?;
    let h = HeckeModule::new(g, j)?;
    for s in 0..g.rank() {
        let t = h.ts_matrix(s)?.entries;
        let sq = f.reduce_matrix(&t.mul(&t));
        let neg: Vec<Vec<u64>> = f.reduce_matrix(&t).into_iter().map(|r| r.into_iter().map(|x| f.neg(x)).collect()).collect();
        if sq != neg {
            return Ok(Outcome::verdict(false, format!("s{}", s + 1)));
        }
    }
    Ok(Outcome::verdict(true, format!("dim {}", h.dim())))
}

/// `M_u M_v = M_{vu}` and the identity acts trivially.
pub fn check_omega_law(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let h = HeckeModule::new(g, j)?;
    let els = &h.omega().elements;
    let mats = h.all_omega()?;
    for (a, ma) in els.iter().zip(&mats) {
        for (b, mb) in els.iter().zip(&mats) {
            let k = els.iter().position(|x| *x == b.compose(a)).expect("closed");
            if ma.entries.mul(&mb.entries) != mats[k].entries {
                return Ok(Outcome::verdict(false, format!("u = {a}, v = {b}")));
            }
        }
    }
    let id = crate::linalg::Matrix::identity(h.dim());
    Ok(Outcome::verdict(mats[0].entries == id, format!("|W_Omega| = {}", els.len())))
}

/// `g_{z^J} T_s` is `-g_{z^J}` for descents of `z^J` and zero otherwise.
pub fn check_zj_eigen(g: &WeylGroup, j: SubsetJ) -> Result<Outcome> {
    let h = HeckeModule::new(g, j)?;
    let zp = h.zj_position();
    let desc = hecke::fingerprint(g, j);
    for s in 0..g.rank() {
        let row = h.ts_matrix(s)?.entries.row(zp).to_vec();
        let mut expect = vec![0i64; h.dim()];
        if desc.contains(s) {
            expect[zp] = -1;
        }
        if row != expect {
            return Ok(Outcome::verdict(false, format!("s{}: {row:?}", s + 1)));
        }
    }
    Ok(Outcome::verdict(true, format!("descents {desc}")))
}

pub fn check_lines(g: &WeylGroup, j: SubsetJ, p: u64, cap: u128) -> Result<Outcome> {
    let h = HeckeModule::new(g, j)?.with_line_cap(cap);
    let (ok, bad) = h.check_indeco(p)?;
    Ok(Outcome::verdict(ok, match bad {
        None => format!("dim {}", h.dim()),
        Some(v) => format!("line {v:?} misses g_zJ"),
    }))
}

pub fn check_simple(g: &WeylGroup, j: SubsetJ, p: u64, cap: u128) -> Result<Outcome> {
    let h = HeckeModule::new(g, j)?.with_line_cap(cap);
    let r = h.check_simple(p)?;
    Ok(Outcome::verdict(
        r.is_simple,
        format!("dim {}, every orbit {}, generated {}", h.dim(), r.zj_in_every_orbit, r.generation_ok),
    ))
}

/// Without `W_Omega` the orbit of `g_{z^J}` in `A2`, `J = {1}` is a line.
pub fn negative_control(p: u64) -> Result<Outcome> {
    let g = WeylGroup::new(RootSystem::build(&"A2".parse()?)?)?;
    let h = HeckeModule::new(&g, SubsetJ(1))?;
    let without = h.generated_dimension(p, false)?;
    let with = h.generated_dimension(p, true)?;
    Ok(Outcome::verdict(
        without < h.dim() && with == h.dim(),
        format!("without Omega {without}, with Omega {with}, dim {}", h.dim()),
    ))
}

/// Descent sets of `z^J` are pairwise distinct and recover `J`; the
/// operators vanishing on `g_{z^J}` are the non-descents.
pub fn check_fingerprints(g: &WeylGroup) -> Result<Outcome> {
    let mut seen = HashSet::new();
    for j in SubsetJ::all(g.rank()) {
        let fp = hecke::fingerprint(g, j);
        if !seen.insert(fp) {
            return Ok(Outcome::verdict(false, format!("fingerprint {fp} repeats at J = {j}")));
        }
        if hecke::recover_j(g, fp)? != j {
            return Ok(Outcome::verdict(false, format!("J = {j} not recovered")));
        }
        let h = HeckeModule::new(g, j)?;
        let zp = h.zj_position();
        for s in 0..g.rank() {
            let zero = h.ts_matrix(s)?.entries.row(zp).iter().all(|&x| x == 0);
            if zero == fp.contains(s) {
                return Ok(Outcome::verdict(false, format!("J = {j}, s{}", s + 1)));
            }
        }
    }
    Ok(Outcome::verdict(true, format!("{} distinct fingerprints", seen.len())))
}

pub fn check_model(m: &FiniteGroupModel) -> Result<Outcome> {
    let flags = m.cosets(SubsetJ::EMPTY).len() as u64;
    let ok = m.borel_generated() && flags == m.flag_count();
    Ok(Outcome::verdict(ok, format!("|G| = {}, flags {flags}", m.order())))
}

pub fn check_oracle(m: &FiniteGroupModel, j: SubsetJ) -> Result<Outcome> {
    let r = m.report(j)?;
    let ok = r.dim_invariants == r.size_vj && r.cell_classes_basis && r.hecke_match.iter().all(|&b| b) && r.brudec_ok;
    Ok(Outcome::verdict(
        ok,
        format!(
            "invariants {} |V^J| {} hecke {:?} cells {}",
            r.dim_invariants, r.size_vj, r.hecke_match, r.brudec_ok
        ),
    ))
}

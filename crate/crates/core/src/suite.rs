//! The batch verification suite: named checks grouped by acceptance criterion.
//!
//! Every check is deterministic given the seed; randomized checks derive
//! their generator from the run seed and a per-check salt, so one check's
//! output does not depend on which others ran. Reports carry no timings.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::abelian::sample::{little_lemma_run, trace_oracle_run};
use crate::abelian::{cyclic_action_fixed_count, factor_cyclotomic_mod_p, CyclicProduct, Poly};
use crate::geometry::{
    format_rational, genus_certificate, half_coefficient_refutation, hirzebruch_jung, pullback_proper_transform,
    quotient_preset, reider_filter, ReiderCaseId, ReiderMode, SmoothnessVerdict,
};
use crate::par::{self, Strategy};
use crate::picard::registry::levenshtein;
use crate::picard::{DivisorClass, FppDescriptor};
use crate::simquot::examples::{grid_involution, hexagon_c3};
use crate::simquot::{coinvariant_surjection_check, exact_sequence_ii_check, SurjectionVerdict};
use crate::vanishing::{
    bicanonical_verdict, run_vanishing, separation_obstruction, trivial_action_check, BicanonicalVerdict, PairCase,
    SeparationVerdict,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Size of the randomized trace check.
pub const TRACE_CASES: usize = 500;
pub const TRACE_MAX_ORDER: u64 = 200;
/// Size of the randomized norm-vanishing check.
pub const LEMMA_MAX_ORDER: u64 = 500;
pub const LEMMA_PER_GROUP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub criterion: u8,
    /// The mathematical statements this check exercises.
    pub anchors: Vec<&'static str>,
    pub status: Status,
    pub summary: String,
    pub values: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRun {
    pub seed: u64,
    pub registry_rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl VerificationRun {
    fn new(seed: u64, registry_rows: usize, checks: Vec<Check>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        Self { seed, registry_rows, passed: count(Status::Pass), failed: count(Status::Fail), skipped: count(Status::Skip), checks }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed > 0)
    }

    /// One line per criterion: worst status among its checks.
    pub fn criterion_summary(&self) -> Vec<(u8, Status, Vec<String>)> {
        let criteria: BTreeSet<u8> = self.checks.iter().map(|c| c.criterion).collect();
        criteria
            .into_iter()
            .map(|k| {
                let of: Vec<&Check> = self.checks.iter().filter(|c| c.criterion == k).collect();
                let status = if of.iter().any(|c| c.status == Status::Fail) {
                    Status::Fail
                } else if of.iter().all(|c| c.status == Status::Skip) {
                    Status::Skip
                } else {
                    Status::Pass
                };
                (k, status, of.iter().map(|c| c.name.clone()).collect())
            })
            .collect()
    }

    /// Plain-text rendering, one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {:<28} {}", c.status.label(), c.name, c.summary);
        }
        let _ = writeln!(
            out,
            "seed {}: {} passed, {} failed, {} skipped",
            self.seed, self.passed, self.failed, self.skipped
        );
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown check {name:?}; did you mean {}?", suggestions.join(", "))]
pub struct UnknownCheck {
    pub name: String,
    pub suggestions: Vec<String>,
}

/// Inputs shared by all checks.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig<'a> {
    pub registry: &'a [FppDescriptor],
    pub seed: u64,
    pub strategy: Strategy,
}

impl<'a> SuiteConfig<'a> {
    pub fn new(registry: &'a [FppDescriptor], seed: u64) -> Self {
        Self { registry, seed, strategy: Strategy::default() }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn row(&self, table: u8, row: u8) -> Option<&'a FppDescriptor> {
        self.registry.iter().find(|d| d.table == table && d.row == row)
    }

    fn table(&self, table: u8) -> Vec<&'a FppDescriptor> {
        self.registry.iter().filter(|d| d.table == table).collect()
    }
}

struct Outcome {
    status: Status,
    summary: String,
    values: Value,
}

impl Outcome {
    fn new(ok: bool, summary: impl Into<String>, values: Value) -> Self {
        Self { status: Status::from_bool(ok), summary: summary.into(), values }
    }

    fn fail(summary: impl Into<String>) -> Self {
        Self { status: Status::Fail, summary: summary.into(), values: Value::Null }
    }
}

type Runner = fn(&SuiteConfig<'_>, &str) -> Outcome;

struct CheckDef {
    name: String,
    criterion: u8,
    anchors: &'static [&'static str],
    run: Runner,
}

fn def(name: impl Into<String>, criterion: u8, anchors: &'static [&'static str], run: Runner) -> CheckDef {
    CheckDef { name: name.into(), criterion, anchors, run }
}

fn definitions(registry: &[FppDescriptor]) -> Vec<CheckDef> {
    let mut rows: Vec<(u8, u8)> = registry.iter().map(|d| (d.table, d.row)).collect();
    rows.sort_unstable();
    let mut out = vec![def("table.rows", 1, &["registry of order-three pairs"], check_table_rows)];
    for (t, r) in rows {
        out.push(def(format!("table.T{t}.{r}"), 1, &["coinvariants of H1 match quotient abelianizations"], check_table_row));
    }
    out.extend([
        def("cyclotomic.x7", 2, &["factorization of x^7 - 1 over F2"], check_x7),
        def("cyclotomic.c7_fixed", 2, &["fixed points of C7 on elementary abelian 2-groups"], check_c7_fixed),
        def("trace.random", 3, &["trace duality for coprime cyclic actions"], check_trace),
        def("little_lemma.random", 4, &["norm vanishing for order-three automorphisms"], check_little_lemma),
    ]);
    for r in 1..=6 {
        out.push(def(format!("vanishing.row{r}"), 5, &["vanishing of H0(2L0 + t)"], check_vanishing_full));
    }
    out.extend([
        def("vanishing.row7", 6, &["pairing exclusion lemma"], check_vanishing_row7),
        def("separation.row7", 6, &["separation obstruction on Aut-orbits"], check_separation_row7),
        def("bicanonical.table1", 6, &["bicanonical embedding"], check_bicanonical_table1),
        def("reider.separation", 7, &["Reider criterion"], check_reider_separation),
        def("reider.basepoint", 7, &["Reider criterion"], check_reider_basepoint),
        def("genus.degree1", 8, &["smoothness of degree-one curves"], check_genus),
        def("pullback.a2", 9, &["pullback through A2 points"], check_pullback),
        def("pullback.half_coefficients", 9, &["pullback through A2 points"], check_half_coefficients),
    ]);
    for g in ["C3", "C3xC3", "C7", "G21"] {
        out.push(def(format!("quotsing.{g}"), 10, &["invariants of quotients by automorphism groups"], check_quotient));
    }
    out.extend([
        def("hj.7_5", 10, &["Hirzebruch-Jung resolution"], check_hj75),
        def("simquot.torus_involution", 11, &["coinvariant surjection onto H1 of a quotient"], check_torus_involution),
        def("simquot.free_c3", 11, &["exact sequence for quotient H1"], check_free_c3),
        def("table2.trivial_action", 12, &["automorphisms of C6"], check_table2_trivial),
        def("table2.curve_bound", 12, &["at most two effective degree-one classes"], check_table2_curve_bound),
        def("table2.bicanonical", 12, &["bicanonical embedding away from fixed points"], check_table2_bicanonical),
    ]);
    out
}

/// Check names in report order for the given registry.
pub fn check_names(registry: &[FppDescriptor]) -> Vec<String> {
    definitions(registry).into_iter().map(|s| s.name).collect()
}

/// Names of the checks that make up one acceptance criterion.
pub fn criterion_checks(registry: &[FppDescriptor], criterion: u8) -> Vec<String> {
    definitions(registry).into_iter().filter(|s| s.criterion == criterion).map(|s| s.name).collect()
}

fn execute(s: &CheckDef, cfg: &SuiteConfig<'_>) -> Check {
    let o = (s.run)(cfg, &s.name);
    Check { name: s.name.clone(), criterion: s.criterion, anchors: s.anchors.to_vec(), status: o.status, summary: o.summary, values: o.values }
}

fn suggestions(name: &str, names: &[String]) -> Vec<String> {
    let mut ranked: Vec<(usize, &String)> = names.iter().map(|n| (levenshtein(name, n), n)).collect();
    ranked.sort();
    ranked.into_iter().take(3).map(|(_, n)| n.clone()).collect()
}

fn unknown(name: &str, registry: &[FppDescriptor]) -> UnknownCheck {
    UnknownCheck { name: name.into(), suggestions: suggestions(name, &check_names(registry)) }
}

pub fn run_check(name: &str, cfg: &SuiteConfig<'_>) -> Result<Check, UnknownCheck> {
    let all = definitions(cfg.registry);
    let s = all.iter().find(|s| s.name == name).ok_or_else(|| unknown(name, cfg.registry))?;
    Ok(execute(s, cfg))
}

/// Runs every check; the report order is fixed whatever the strategy.
pub fn run_all(cfg: &SuiteConfig<'_>) -> VerificationRun {
    run_matching(cfg, &[])
}

/// Runs the checks whose names start with one of `prefixes` (all checks when empty).
pub fn run_matching(cfg: &SuiteConfig<'_>, prefixes: &[String]) -> VerificationRun {
    let all: Vec<CheckDef> = definitions(cfg.registry)
        .into_iter()
        .filter(|s| prefixes.is_empty() || prefixes.iter().any(|p| s.name.starts_with(p.as_str())))
        .collect();
    let checks = par::map(cfg.strategy, &all, |s| execute(s, cfg));
    VerificationRun::new(cfg.seed, cfg.registry.len(), checks)
}

fn parse_row(name: &str) -> Option<(u8, u8)> {
    let rest = name.strip_prefix("table.T")?;
    let (t, r) = rest.split_once('.')?;
    Some((t.parse().ok()?, r.parse().ok()?))
}

fn row_number(name: &str) -> u8 {
    name.trim_start_matches(|c: char| !c.is_ascii_digit()).parse().expect("row-indexed check name")
}

fn classes(v: &[DivisorClass]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn check_table_rows(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let (t1, t2) = (cfg.table(1).len(), cfg.table(2).len());
    Outcome::new(
        cfg.registry.len() == 10 && t1 == 7 && t2 == 3,
        format!("{} rows ({t1} in table 1, {t2} in table 2)", cfg.registry.len()),
        json!({ "rows": cfg.registry.len(), "table1": t1, "table2": t2 }),
    )
}

fn check_table_row(cfg: &SuiteConfig<'_>, name: &str) -> Outcome {
    let Some((t, r)) = parse_row(name) else { return Outcome::fail("malformed row name") };
    let Some(d) = cfg.row(t, r) else { return Outcome::fail(format!("no row T{t}.{r}")) };
    let cons = d.consistency();
    let ok = !cons.is_empty() && cons.iter().all(|c| c.passes);
    let parts: Vec<String> = cons
        .iter()
        .map(|c| {
            format!(
                "{}: coinvariants {} vs {} (ab order {}){}",
                c.subgroup,
                c.coinvariants,
                c.pi1.name,
                c.pi1.abelianization_order,
                if c.passes { "" } else { " MISMATCH" }
            )
        })
        .collect();
    let summary = if ok { format!("{}: {}", d.label, parts.join("; ")) } else { format!("row T{t}.{r} {}: {}", d.label, parts.join("; ")) };
    Outcome::new(ok, summary, json!({ "label": d.label, "h1": d.h1.to_string(), "subgroups": cons }))
}

fn check_x7(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    let got = match factor_cyclotomic_mod_p(7, 2) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let expected: BTreeSet<Vec<u64>> = [vec![1, 1], vec![1, 0, 1, 1], vec![1, 1, 0, 1]].into_iter().collect();
    let found: BTreeSet<Vec<u64>> = got.iter().map(|(p, _)| p.coeffs().to_vec()).collect();
    let simple = got.iter().all(|(_, m)| *m == 1);
    let names: Vec<String> = got.iter().map(|(p, _)| format!("({p})")).collect();
    let product = got.iter().fold(Poly::one(2), |acc, (p, _)| acc.mul(p)) == Poly::x_pow_minus_one(2, 7);
    Outcome::new(
        found == expected && simple && product,
        format!("x^7 + 1 = {}", names.join("")),
        json!({ "factors": names, "product_matches": product }),
    )
}

fn check_c7_fixed(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    // The fixed subgroup injects into π₁ of an elliptic quotient, of order at most 3.
    let bound = 3;
    let mut rows = Vec::new();
    let mut got = Vec::new();
    for n in [3, 4, 6] {
        match cyclic_action_fixed_count(n, 2, 7) {
            Ok(r) => {
                let forced = r.forced_fixed_dim(Some(bound));
                got.push(forced);
                rows.push(json!({
                    "n": n,
                    "faithful_fixed_dims": r.faithful_fixed_dims,
                    "with_fixed_order_at_most_3": r.faithful_with_fixed_order_at_most(bound),
                    "forced": forced,
                }));
            }
            Err(e) => return Outcome::fail(e.to_string()),
        }
    }
    let fmt = |o: &Option<usize>| o.map_or("?".to_string(), |d| d.to_string());
    Outcome::new(
        got == [Some(0), Some(1), Some(0)],
        format!("fixed dimensions on C2^3, C2^4, C2^6: {}, {}, {}", fmt(&got[0]), fmt(&got[1]), fmt(&got[2])),
        json!({ "max_fixed_order": bound, "cases": rows }),
    )
}

fn check_trace(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let s = trace_oracle_run(&mut cfg.rng(3), TRACE_CASES, TRACE_MAX_ORDER, cfg.strategy);
    Outcome::new(
        s.failures.is_empty() && s.cases >= TRACE_CASES,
        format!("{} cases (|H| <= {TRACE_MAX_ORDER}, {} with m > 1), {} failures", s.cases, s.nontrivial_m, s.failures.len()),
        json!(s),
    )
}

fn check_little_lemma(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let s = little_lemma_run(&mut cfg.rng(4), LEMMA_MAX_ORDER, LEMMA_PER_GROUP, cfg.strategy);
    Outcome::new(
        s.failures.is_empty() && s.checked > 0,
        format!(
            "{} groups, {} with order-3 automorphisms, {} sampled, {} admissible checked, {} failures",
            s.groups,
            s.groups_with_order_three,
            s.sampled,
            s.checked,
            s.failures.len()
        ),
        json!(s),
    )
}

fn check_vanishing_full(cfg: &SuiteConfig<'_>, name: &str) -> Outcome {
    let r = row_number(name);
    let Some(d) = cfg.row(1, r) else { return Outcome::fail(format!("no table-1 row {r}")) };
    let rep = match run_vanishing(d) {
        Ok(rep) => rep,
        Err(e) => return Outcome::fail(format!("{}: {e}", d.label)),
    };
    let ok = rep.undetermined.is_empty() && rep.branches.iter().all(|b| b.undetermined.is_empty());
    Outcome::new(
        ok,
        format!(
            "{}: {}/{} proved non-effective in {} branch(es), {} undetermined",
            d.label,
            rep.proved_noneffective.len(),
            rep.candidates.len(),
            rep.branches.len(),
            rep.undetermined.len()
        ),
        json!({
            "label": d.label,
            "candidates": rep.candidates.len(),
            "proved": rep.proved_noneffective.len(),
            "undetermined": classes(&rep.undetermined),
            "branches": rep.branches.iter().map(|b| json!({
                "offsets": b.offsets.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "undetermined": b.undetermined.len(),
            })).collect::<Vec<_>>(),
        }),
    )
}

fn check_vanishing_row7(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let Some(d) = cfg.row(1, 7) else { return Outcome::fail("no table-1 row 7") };
    let rep = match run_vanishing(d) {
        Ok(rep) => rep,
        Err(e) => return Outcome::fail(format!("{}: {e}", d.label)),
    };
    let orbits = &rep.undetermined_orbits;
    let cross = orbits.len() == 2 && orbits[0].iter().all(|a| orbits[1].iter().all(|b| rep.excluded(a, b)));
    let ok = rep.proved_noneffective.len() == 8 && rep.undetermined.len() == 6 && cross;
    Outcome::new(
        ok,
        format!(
            "{} proved, {} undetermined in {} orbit(s), cross-excluded: {}, at most {} effective",
            rep.proved_noneffective.len(),
            rep.undetermined.len(),
            orbits.len(),
            cross,
            rep.max_simultaneously_effective
        ),
        json!({
            "label": d.label,
            "proved": rep.proved_noneffective.len(),
            "undetermined": classes(&rep.undetermined),
            "orbits": orbits.iter().map(|o| classes(o)).collect::<Vec<_>>(),
            "cross_excluded": cross,
            "max_simultaneously_effective": rep.max_simultaneously_effective,
        }),
    )
}

fn check_separation_row7(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let Some(d) = cfg.row(1, 7) else { return Outcome::fail("no table-1 row 7") };
    let Some(sigma) = d.aut_generators.first() else { return Outcome::fail("row 7 has no automorphism") };
    let c14 = match CyclicProduct::new(&[2, 7]) {
        Ok(c) if c.group() == &d.h1 => c,
        _ => return Outcome::fail(format!("row 7 has H1 = {}, expected C14", d.h1)),
    };
    let pic = d.picard();
    let start = DivisorClass::new(1, c14.element(&[1, 1]));
    let orbit = match sigma.orbit(&start) {
        Ok(o) => o,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let mut certs = Vec::new();
    for case in PairCase::ALL {
        match separation_obstruction(&pic, sigma, &orbit, case) {
            Ok(c) => certs.push(c),
            Err(e) => return Outcome::fail(e.to_string()),
        }
    }
    let g = pic.torsion_group();
    let t2 = c14.element(&[1, 0]);
    let t25 = c14.element(&[1, 5]);
    let distinct_ok = certs[0].delta == t2;
    let near_ok = certs[1..].iter().all(|c| c.delta == t25 || c.delta == g.neg(&t25));
    let nonzero = certs.iter().all(|c| !c.delta.is_zero() && c.verdict == SeparationVerdict::Contradicted);
    let deltas: Vec<String> = certs
        .iter()
        .map(|c| {
            let x = c14.coords_of(&c.delta);
            format!("{} for {:?}", torsion_name(x[0], x[1]), c.case)
        })
        .collect();
    Outcome::new(distinct_ok && near_ok && nonzero, format!("Δ = {}", deltas.join(", ")), json!(certs))
}

/// `a·t₂ + b·t₇` in the notation of `C₂ × C₇`.
fn torsion_name(a: i64, b: i64) -> String {
    let mut parts = Vec::new();
    if a != 0 {
        parts.push("t2".to_string());
    }
    match b {
        0 => {}
        1 => parts.push("t7".into()),
        _ => parts.push(format!("{b}t7")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn check_bicanonical_table1(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let rows = cfg.table(1);
    let mut bad = Vec::new();
    let mut values = Vec::new();
    for d in &rows {
        match bicanonical_verdict(d) {
            Ok(rep) => {
                if rep.verdict != BicanonicalVerdict::Embedding {
                    bad.push(format!("T1.{} {}", d.row, d.label));
                }
                values.push(json!({ "row": d.row, "label": d.label, "verdict": rep.verdict }));
            }
            Err(e) => bad.push(format!("T1.{} {}: {e}", d.row, d.label)),
        }
    }
    let ok = rows.len() == 7 && bad.is_empty();
    let summary =
        if ok { "EMBEDDING for all 7 rows".to_string() } else { format!("{} rows, not embedding: {}", rows.len(), bad.join("; ")) };
    Outcome::new(ok, summary, json!(values))
}

fn check_reider_separation(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    match reider_filter(9, 1, 3, ReiderMode::Separation) {
        Ok(w) => {
            let ok = w.len() == 1
                && w[0].case == ReiderCaseId::SepD
                && w[0].derived.is_some_and(|s| s.d_squared == 1 && s.k_dot_d == 3 && s.arithmetic_genus == 3);
            let cases: Vec<String> = w.iter().map(|x| format!("{:?}(m={})", x.case, x.m)).collect();
            Outcome::new(ok, format!("L^2 = 9, degree 3: surviving {}", cases.join(", ")), json!(w))
        }
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn check_reider_basepoint(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    match reider_filter(9, 1, 3, ReiderMode::Basepoint) {
        Ok(w) => Outcome::new(w.is_empty(), format!("L^2 = 9, degree 3: {} surviving cases", w.len()), json!(w)),
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn check_genus(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    match genus_certificate(1, true) {
        Ok(c) => Outcome::new(
            c.verdict == SmoothnessVerdict::Smooth { genus: 3 },
            format!(
                "p_a = {}, genus bound {}, {}",
                c.arithmetic_genus,
                c.genus_lower_bound,
                match c.verdict {
                    SmoothnessVerdict::Smooth { genus } => format!("SMOOTH of genus {genus}"),
                    SmoothnessVerdict::Inconclusive => "INCONCLUSIVE".into(),
                }
            ),
            json!(c),
        ),
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn fmt_rats(v: &[Rational64]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn check_pullback(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    let a2 = match hirzebruch_jung(3, 2) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let p = match pullback_proper_transform(&[a2.clone(), a2.clone()], &[vec![1, 0], vec![1, 0]], r(1, 3)) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let ok = a2.hj == [2, 2]
        && p.coefficients.iter().all(|c| c == &[r(2, 3), r(1, 3)])
        && p.proper_transform_square == r(-1, 1)
        && p.pullback_orthogonal;
    Outcome::new(
        ok,
        format!(
            "HJ(3,2) = {:?}; coefficients ({}) at each point; D'^2 = {}",
            a2.hj,
            fmt_rats(&p.coefficients[0]),
            format_rational(&p.proper_transform_square)
        ),
        json!({ "hj": a2.hj, "pullback": p }),
    )
}

fn check_half_coefficients(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    let h = half_coefficient_refutation();
    Outcome::new(
        h.refuted,
        format!("claimed ({}) leaves residual ({}); exact ({})", fmt_rats(&h.claimed), fmt_rats(&h.claimed_residual), fmt_rats(&h.correct)),
        json!(h),
    )
}

fn check_quotient(_: &SuiteConfig<'_>, name: &str) -> Outcome {
    let g = name.trim_start_matches("quotsing.");
    let expected = match g {
        "C3" => (3, 9, 1),
        "C3xC3" => (1, 11, 1),
        _ => (0, 12, 1),
    };
    match quotient_preset(g).and_then(|p| p.invariants()) {
        Ok(q) => {
            let got = (q.k2_resolution, q.euler_resolution, q.chi);
            Outcome::new(got == expected, format!("(K^2, e, chi) = ({}, {}, {})", got.0, got.1, got.2), json!(q))
        }
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn check_hj75(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    match hirzebruch_jung(7, 5) {
        Ok(g) => Outcome::new(
            g.hj == [2, 2, 3] && g.discrepancies == [r(-1, 7), r(-2, 7), r(-3, 7)],
            format!("HJ(7,5) = {:?}, discrepancies ({})", g.hj, fmt_rats(&g.discrepancies)),
            json!(g),
        ),
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn check_torus_involution(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    let (k, a) = grid_involution(4);
    let fixed = (0..k.num_vertices()).filter(|&v| a.generators()[0][v] == v).count();
    match coinvariant_surjection_check(&k, &a) {
        Ok(rep) => {
            let ok = fixed == 4
                && rep.hypothesis_holds
                && rep.verdict == SurjectionVerdict::Surjective
                && rep.coinvariants.free_rank == 0
                && rep.coinvariants.torsion.invariant_factors() == [2, 2]
                && rep.h1_quotient.is_trivial();
            Outcome::new(
                ok,
                format!(
                    "{fixed} fixed points; H_G = {}, H1(quotient) = {}, {:?}",
                    rep.coinvariants, rep.h1_quotient, rep.verdict
                ),
                json!({ "fixed_points": fixed, "report": rep }),
            )
        }
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn check_free_c3(_: &SuiteConfig<'_>, _: &str) -> Outcome {
    let (k, a) = hexagon_c3();
    match exact_sequence_ii_check(&k, &a) {
        Ok(s) => {
            let ok = s.exact && s.cokernel_matches && s.cokernel.to_string() == "C3";
            Outcome::new(
                ok,
                format!(
                    "H_G = {}, H1(quotient) = {}, (G/K)^ab = {}, cokernel {}, exact: {}",
                    s.coinvariants, s.h1_quotient, s.g_mod_k_ab, s.cokernel, s.exact
                ),
                json!(s),
            )
        }
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn table2_reports<'a>(cfg: &SuiteConfig<'a>) -> Result<Vec<(&'a FppDescriptor, crate::vanishing::BicanonicalReport)>, String> {
    let rows = cfg.table(2);
    if rows.len() != 3 {
        return Err(format!("expected 3 table-2 rows, found {}", rows.len()));
    }
    rows.into_iter().map(|d| bicanonical_verdict(d).map(|b| (d, b)).map_err(|e| format!("{}: {e}", d.label))).collect()
}

fn check_table2_trivial(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let rows = cfg.table(2);
    let checks: Vec<_> = rows.iter().map(|d| (d, trivial_action_check(d))).collect();
    let ok = rows.len() == 3
        && checks.iter().all(|(d, c)| d.h1.to_string() == "C6" && c.forced && c.registered_action_trivial);
    let orders: Vec<String> =
        checks.iter().map(|(d, c)| format!("{}: |Aut(H1)| = {}", d.h1, c.aut_h1_order.map_or("?".into(), |n| n.to_string()))).collect();
    Outcome::new(
        ok,
        format!("{} rows; {}; trivial action forced", rows.len(), orders.join(", ")),
        json!(checks.iter().map(|(d, c)| json!({ "label": d.label, "check": c })).collect::<Vec<_>>()),
    )
}

fn check_table2_curve_bound(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let reps = match table2_reports(cfg) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(e),
    };
    let mut values = Vec::new();
    let mut worst = 0;
    let mut ok = true;
    for (d, b) in &reps {
        let v = &b.vanishing;
        worst = worst.max(v.undetermined.len());
        ok &= v.undetermined.len() <= 2;
        values.push(json!({ "label": d.label, "undetermined": classes(&v.undetermined), "curve_bound": v.curve_bound }));
    }
    Outcome::new(ok, format!("at most {worst} undetermined degree-1 classes per row (required <= 2)"), json!(values))
}

fn check_table2_bicanonical(cfg: &SuiteConfig<'_>, _: &str) -> Outcome {
    let reps = match table2_reports(cfg) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(e),
    };
    let ok = reps.iter().all(|(_, b)| matches!(b.verdict, BicanonicalVerdict::EmbeddingOutsideFixedPoints { .. }));
    let values: Vec<Value> = reps.iter().map(|(d, b)| json!({ "label": d.label, "verdict": b.verdict })).collect();
    Outcome::new(ok, "EMBEDDING_OUTSIDE_FIXED_POINTS for every row".to_string(), json!(values))
}

/// A human-readable derivation for one check.
pub fn explain(name: &str, cfg: &SuiteConfig<'_>) -> Result<String, UnknownCheck> {
    let check = run_check(name, cfg)?;
    let mut out = String::new();
    let _ = writeln!(out, "{} [{}]", check.name, check.status.label());
    let _ = writeln!(out, "statement: {}", check.anchors.join("; "));
    let _ = writeln!(out, "result: {}", check.summary);
    if let Some(r) = name.strip_prefix("vanishing.row").and_then(|r| r.parse::<u8>().ok()) {
        if let Some(d) = cfg.row(1, r) {
            explain_vanishing(&mut out, d);
        }
    } else if let Some(g) = name.strip_prefix("quotsing.") {
        explain_quotient(&mut out, g);
    } else {
        let _ = writeln!(out, "values: {}", serde_json::to_string_pretty(&check.values).expect("serializable"));
    }
    Ok(out)
}

fn explain_vanishing(out: &mut String, d: &FppDescriptor) {
    let rep = match run_vanishing(d) {
        Ok(rep) => rep,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return;
        }
    };
    let _ = writeln!(out, "surface {} with H1 = {}", d.label, d.h1);
    for c in &rep.candidates {
        let _ = writeln!(out, "class L0 + {}:", c.torsion);
        for line in rep.explain(c) {
            let _ = writeln!(out, "  {line}");
        }
    }
    for n in &rep.notes {
        let _ = writeln!(out, "note: {n}");
    }
    if rep.undetermined_orbits.is_empty() {
        let _ = writeln!(out, "conclusion: H0(2L0 + t) = 0 for every t (vanishing theorem)");
    } else {
        let orbits: Vec<String> = rep.undetermined_orbits.iter().map(|o| format!("{{{}}}", classes(o).join(", "))).collect();
        let _ = writeln!(
            out,
            "conclusion: the undetermined orbits {} are pairwise excluded, so at most {} classes are effective at once (pairing exclusion lemma)",
            orbits.join(" and "),
            rep.max_simultaneously_effective
        );
    }
}

fn explain_quotient(out: &mut String, g: &str) {
    let q = match quotient_preset(g).and_then(|p| p.invariants().map(|q| (p, q))) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return;
        }
    };
    let (p, q) = q;
    let _ = writeln!(out, "G = {} of order {}, {} isolated fixed points", p.name, p.group_order, p.fixed_points);
    for (s, res) in q.singularities.iter().zip(&q.resolutions) {
        let _ = writeln!(
            out,
            "{} point(s) of type 1/{}({},{}): chain {:?}, self-intersections {:?}, discrepancies ({}), K.E = {:?}",
            s.count,
            s.n,
            1,
            s.q,
            res.hj,
            res.self_intersections,
            fmt_rats(&res.discrepancies),
            res.canonical_degrees()
        );
    }
    let corr: Vec<String> = q.k2_corrections.iter().map(format_rational).collect();
    let _ = writeln!(out, "K^2(X/G) = K_X^2/|G| = 9/{}", p.group_order);
    let _ = writeln!(out, "K^2 = {} + ({}) = {}", format_rational(&q.k2_quotient), corr.join(") + ("), q.k2_resolution);
    let _ = writeln!(
        out,
        "e = (3 - {})/{} + {} = {} on X/G, {} on the resolution",
        p.fixed_points,
        p.group_order,
        q.singularities.iter().map(|s| s.count).sum::<i64>(),
        q.euler_quotient,
        q.euler_resolution
    );
    let _ = writeln!(out, "chi = (K^2 + e)/12 = ({} + {})/12 = {}", q.k2_resolution, q.euler_resolution, q.chi);
    let _ = writeln!(out, "minimal model: {}", p.description);
}

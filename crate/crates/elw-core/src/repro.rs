//! End-to-end reproduction suite.
//!
//! Every check the workbench makes, run with fixed seeds and reported one
//! line per item. The suite is deterministic: same options, same report.
//! Failures are report entries rather than panics, so deliberately
//! weakened kernels (the sensitivity switches in [`ReproOptions`]) still
//! produce a full report in which the broken items show up as failures.

use crate::heyting::{downset_lattice, enumerate_algebras, HeytingAlgebra};
use crate::ipc::kripke::ipc_countermodel;
use crate::ipc::{ipc_consequence, ipc_valid, is_int_instance};
use crate::kernel::{
    check_proof, match_axiom, sp_script, theorem_library, CheckOptions, LogicId, SchemeName,
    ScriptBuilder,
};
use crate::model::{
    assignments, embedding_crosscheck, enumerate_models_with, find_countermodel, model_from_json,
    model_to_json, restricted_dp_check, validate_el_model, validate_iel_model, Assignment, ElModel,
    EnumeratedModel, Enumeration, SearchBudget, ValidationOptions,
};
use crate::syntax::{abstract_modal, parse, Formula, Substitution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use std::path::PathBuf;

/// Suite switches. Defaults reproduce the standard run; the three
/// sensitivity switches weaken one check each so the suite can prove its
/// own items are not vacuous.
#[derive(Debug, Clone)]
pub struct ReproOptions {
    pub budget: SearchBudget,
    /// Trials for the randomized property items.
    pub trials: usize,
    /// Random propositional formulas for the embedding crosscheck.
    pub embed_samples: usize,
    /// Random non-theorem pairs for the disjunction probe.
    pub dp_pairs: usize,
    /// Random substitution-scheme instances.
    pub sp_instances: usize,
    pub seed: u64,
    /// Sensitivity switch: unset to let necessitation target any line.
    pub an_axioms_only: bool,
    /// Sensitivity switch: schemes treated as absent from every logic.
    pub dropped_schemes: Vec<SchemeName>,
    /// Sensitivity switch: unset to skip the intuitionistic-reflection
    /// model condition during enumeration and validation.
    pub enforce_viii: bool,
    pub fixtures_dir: PathBuf,
}

impl Default for ReproOptions {
    fn default() -> Self {
        ReproOptions {
            budget: SearchBudget::default(),
            trials: 1000,
            embed_samples: 100,
            dp_pairs: 50,
            sp_instances: 200,
            seed: 2026,
            an_axioms_only: true,
            dropped_schemes: Vec::new(),
            enforce_viii: true,
            fixtures_dir: PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproItem {
    pub id: &'static str,
    /// What ran, for a reader chasing a failure.
    pub what: &'static str,
    pub expected: &'static str,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproReport {
    pub items: Vec<ReproItem>,
}

impl ReproReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failed_ids(&self) -> Vec<&'static str> {
        self.items
            .iter()
            .filter(|i| !i.passed)
            .map(|i| i.id)
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let mark = if i.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("{mark}  {:<36} {}\n", i.id, i.observed));
            if !i.passed {
                out.push_str(&format!("      expected: {}\n", i.expected));
                out.push_str(&format!("      ran: {}\n", i.what));
            }
        }
        let n = self.items.iter().filter(|i| i.passed).count();
        out.push_str(&format!("{n}/{} items passed\n", self.items.len()));
        out
    }
}

/// Operation inventory the suite must exercise; the final item checks the
/// union of per-item registrations against this list.
const ALL_OPS: &[&str] = &[
    "parse",
    "render",
    "substitute",
    "abstract-modal",
    "ipc-valid",
    "ipc-consequence",
    "ipc-countermodel",
    "match-axiom",
    "int-instance",
    "check-proof",
    "theorem-library",
    "downset-lattice",
    "verify-heyting",
    "filters",
    "prime-filter",
    "ultrafilter",
    "has-dp",
    "ultrafilter-quotient",
    "enumerate-algebras",
    "validate-el-model",
    "validate-iel-model",
    "eval",
    "satisfies",
    "valid-in-model",
    "enumerate-models",
    "find-countermodel",
    "kripke-to-el5",
    "embedding-crosscheck",
    "restricted-dp-check",
];

struct Suite {
    items: Vec<ReproItem>,
    ops: BTreeSet<&'static str>,
}

impl Suite {
    fn push(
        &mut self,
        id: &'static str,
        what: &'static str,
        expected: &'static str,
        observed: String,
        passed: bool,
        ops: &[&'static str],
    ) {
        self.ops.extend(ops.iter().copied());
        self.items.push(ReproItem {
            id,
            what,
            expected,
            observed,
            passed,
        });
    }
}

fn p(s: &str) -> Formula {
    parse(s).expect("suite formula parses")
}

fn rng_for(opts: &ReproOptions, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
}

/// Random formula with at most `budget` connectives over the given
/// variables; `modal` admits the two unary modalities.
fn rand_formula(rng: &mut ChaCha8Rng, vars: &[u32], budget: usize, modal: bool) -> Formula {
    if budget == 0 || rng.gen_ratio(1, 6) {
        if rng.gen_ratio(1, 8) {
            return Formula::Bottom;
        }
        return Formula::var(vars[rng.gen_range(0..vars.len())]);
    }
    match rng.gen_range(0..if modal { 5 } else { 3 }) {
        op @ (0 | 1 | 2) => {
            let left = rng.gen_range(0..budget);
            let a = rand_formula(rng, vars, left, modal);
            let b = rand_formula(rng, vars, budget - 1 - left, modal);
            match op {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                _ => Formula::imp(a, b),
            }
        }
        3 => Formula::nec(rand_formula(rng, vars, budget - 1, modal)),
        _ => Formula::know(rand_formula(rng, vars, budget - 1, modal)),
    }
}

fn rand_assignment(rng: &mut ChaCha8Rng, vars: &[u32], size: usize) -> Assignment {
    let mut g = Assignment::new();
    for &v in vars {
        g = g.bind(v, rng.gen_range(0..size));
    }
    g
}

fn render_assignment(g: &Assignment) -> String {
    if g.0.is_empty() {
        return "empty assignment".into();
    }
    g.0.iter()
        .map(|(v, e)| format!("x{v}={e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Axiom instances swept per scheme: the defining pattern itself (validity
/// quantifies over assignments, so this covers every element
/// instantiation) plus one compound substitution instance.
fn scheme_instances(scheme: SchemeName) -> Vec<Formula> {
    let base = scheme.pattern();
    let mut sigma = Substitution::new();
    sigma.0.insert(0, p("x0 & x1"));
    sigma.0.insert(1, p("x0 -> x1"));
    vec![base.clone(), sigma.apply(&base)]
}

fn int_instances(with_box: bool) -> Vec<Formula> {
    let mut pool = vec![
        p("x0 -> x0"),
        p("x0 -> (x1 -> x0)"),
        p("~(x0 & ~x0)"),
        p("(x0 & x1) -> x0"),
        p("K x0 -> K x0"),
    ];
    if with_box {
        pool.push(p("box x0 -> box x0"));
    }
    pool
}

fn el_model(m: &EnumeratedModel) -> &ElModel {
    match m {
        EnumeratedModel::El(m) => m,
        EnumeratedModel::Iel(_) => unreachable!("EL stream"),
    }
}

pub fn run(opts: &ReproOptions) -> ReproReport {
    let mut s = Suite {
        items: Vec::new(),
        ops: BTreeSet::new(),
    };
    let kopts = CheckOptions {
        an_axioms_only: opts.an_axioms_only,
        dropped_schemes: opts.dropped_schemes.clone(),
    };
    let vopts = ValidationOptions {
        enforce_viii: opts.enforce_viii,
    };

    syntax_roundtrip(&mut s, opts);
    ipc_spot_checks(&mut s);
    axiom_recognition(&mut s);
    an_restriction(&mut s, &kopts);
    library_items(&mut s, &kopts);
    sp_random(&mut s, opts, &kopts);
    algebra_catalog(&mut s);
    ultrafilter_laws(&mut s, opts);

    let el_streams: Vec<(LogicId, Enumeration)> =
        [LogicId::El3Minus, LogicId::El3, LogicId::El4, LogicId::El5]
            .into_iter()
            .map(|c| (c, enumerate_models_with(c, &opts.budget, &vopts)))
            .collect();

    soundness_sweeps(&mut s, &el_streams);
    library_conclusions(&mut s, &el_streams);
    believed_implies_true(&mut s, &el_streams);
    el5_revalidate_at_el4(&mut s, &el_streams, &vopts);
    countermodel_items(&mut s, opts);
    fixture_models(&mut s, opts);
    nonfregean_witness(&mut s, &el_streams);
    identity_trials(&mut s, opts, &el_streams);
    box_as_identity_with_top(&mut s, opts, &el_streams);
    embed_crosscheck_random(&mut s, opts);
    dp_random(&mut s, opts);
    iel_items(&mut s, opts);

    let missing: Vec<&str> = ALL_OPS
        .iter()
        .copied()
        .filter(|op| !s.ops.contains(op))
        .collect();
    let observed = if missing.is_empty() {
        format!("all {} operations exercised", ALL_OPS.len())
    } else {
        format!("not exercised: {}", missing.join(", "))
    };
    let passed = missing.is_empty();
    s.push(
        "coverage.operations",
        "compared the operations the suite registered against the full inventory",
        "every public operation exercised at least once",
        observed,
        passed,
        &[],
    );

    ReproReport { items: s.items }
}

fn no_modal(f: &Formula) -> bool {
    match f {
        Formula::Var(_) | Formula::Bottom => true,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => no_modal(a) && no_modal(b),
        Formula::Box(_) | Formula::Know(_) => false,
    }
}

fn syntax_roundtrip(s: &mut Suite, opts: &ReproOptions) {
    let mut rng = rng_for(opts, 1);
    let mut pool: Vec<Formula> = [
        "x0",
        "false",
        "~x0",
        "box K x0 -> box x0",
        "K (x0 | x1) -> (K x0 | K x1)",
        "(x0 == x1) -> ((x0 & x2) == (x1 & x2))",
    ]
    .iter()
    .map(|t| p(t))
    .collect();
    for _ in 0..30 {
        pool.push(rand_formula(&mut rng, &[0, 1, 2], 8, true));
    }
    let mut roundtrip_ok = 0usize;
    let mut abstraction_ok = 0usize;
    for f in &pool {
        if parse(&f.render()) == Ok(f.clone()) {
            roundtrip_ok += 1;
        }
        let (skeleton, binding) = abstract_modal(f);
        if no_modal(&skeleton) && binding.apply(&skeleton) == *f {
            abstraction_ok += 1;
        }
    }
    let n = pool.len();
    s.push(
        "syntax.roundtrip",
        "rendered and re-parsed a formula pool; abstracted modal subformulas and substituted them back",
        "identity on every formula",
        format!("{roundtrip_ok}/{n} round-trip, {abstraction_ok}/{n} abstraction-invert"),
        roundtrip_ok == n && abstraction_ok == n,
        &["parse", "render", "substitute", "abstract-modal"],
    );
}

fn ipc_spot_checks(s: &mut Suite) {
    let peirce = p("((x0 -> x1) -> x0) -> x0");
    let mut ok = 0usize;
    let mut total = 0usize;
    let mut spot = |cond: bool| {
        total += 1;
        if cond {
            ok += 1;
        }
    };
    spot(ipc_valid(&peirce) == Ok(false));
    match ipc_countermodel(&peirce) {
        Ok(Some(k)) => {
            spot(k.well_formed(&[peirce.clone()]));
            spot(k.refutes(&[], &peirce) == Ok(true));
        }
        _ => {
            spot(false);
            spot(false);
        }
    }
    spot(ipc_valid(&p("~~x0 -> x0")) == Ok(false));
    spot(ipc_valid(&p("x0 | ~x0")) == Ok(false));
    spot(ipc_valid(&p("x0 -> x0")) == Ok(true));
    spot(ipc_valid(&p("~~(x0 | ~x0)")) == Ok(true));
    spot(ipc_consequence(&[p("x0"), p("x0 -> x1")], &p("x1")) == Ok(true));
    spot(ipc_consequence(&[p("~~x0")], &p("x0")) == Ok(false));
    s.push(
        "ipc.decision-spot-checks",
        "decided classical-but-not-intuitionistic validities and a consequence pair; extracted a countermodel",
        "all verdicts match the known classifications",
        format!("{ok}/{total} spot checks"),
        ok == total,
        &["ipc-valid", "ipc-consequence", "ipc-countermodel"],
    );
}

fn axiom_recognition(s: &mut Suite) {
    let mut ok = 0usize;
    let mut total = 0usize;
    let mut spot = |cond: bool| {
        total += 1;
        if cond {
            ok += 1;
        }
    };
    spot(match_axiom(&p("box x0 -> box box x0"), LogicId::El4) == Some(SchemeName::A4));
    spot(match_axiom(&p("box x0 -> box box x0"), LogicId::El3).is_none());
    spot(match_axiom(&p("K x0 -> ~~x0"), LogicId::El3) == Some(SchemeName::A8));
    spot(match_axiom(&p("K x0 -> ~~x0"), LogicId::El3Minus).is_none());
    spot(match_axiom(&p("x0 -> K x0"), LogicId::IelMinus) == Some(SchemeName::Co));
    spot(match_axiom(&p("x0 -> K x0"), LogicId::El5).is_none());
    spot(is_int_instance(&p("x0 -> x0")));
    spot(is_int_instance(&p("box x0 -> box x0")));
    spot(!is_int_instance(&p("x0 | ~x0")));
    spot(!is_int_instance(&p("box x0 -> x0")));
    s.push(
        "kernel.axiom-recognition",
        "matched axiom shapes against each logic's scheme set and classified intuitionistic instances",
        "recognition follows the scheme sets exactly",
        format!("{ok}/{total} spot checks"),
        ok == total,
        &["match-axiom", "int-instance"],
    );
}

fn an_restriction(s: &mut Suite, kopts: &CheckOptions) {
    // box introduction on a modus-ponens line; sound kernels reject this
    let mut b = ScriptBuilder::new();
    let taut = p("x0 -> x0");
    let i1 = b.int(taut.clone());
    let i2 = b.int(Formula::imp(taut.clone(), taut.clone()));
    let i3 = b.mp(i2, i1);
    b.an(i3);
    let v = check_proof(LogicId::L3, &b.finish(), kopts);
    let passed = !v.is_accepted() && v.condition() == Some("an-restriction");
    s.push(
        "kernel.an-restricted-to-axioms",
        "ran a script that necessitates a modus-ponens conclusion",
        "rejected with condition an-restriction",
        v.to_string(),
        passed,
        &["check-proof"],
    );
}

fn library_items(s: &mut Suite, kopts: &CheckOptions) {
    let lib = theorem_library();
    let accepted = lib
        .iter()
        .filter(|e| check_proof(e.logic, &e.script, kopts).is_accepted())
        .count();
    s.push(
        "library.accepted-at-tagged-logic",
        "checked every library derivation at its tagged logic",
        "all accepted",
        format!("{accepted}/{} accepted", lib.len()),
        accepted == lib.len(),
        &["theorem-library", "check-proof"],
    );

    let below: Vec<_> = lib.iter().filter(|e| e.rejected_at.is_some()).collect();
    let rejected = below
        .iter()
        .filter(|e| !check_proof(e.rejected_at.unwrap(), &e.script, kopts).is_accepted())
        .count();
    s.push(
        "library.rejected-below-tag",
        "re-checked each logic-distinguishing derivation at the next-weaker logic",
        "all rejected there",
        format!("{rejected}/{} rejected", below.len()),
        rejected == below.len(),
        &["theorem-library", "check-proof"],
    );
}

fn sp_random(s: &mut Suite, opts: &ReproOptions, kopts: &CheckOptions) {
    let mut rng = rng_for(opts, 7);
    let mut accepted = 0usize;
    for i in 0..opts.sp_instances {
        let phi = rand_formula(&mut rng, &[0, 1], 7, true);
        let psi = rand_formula(&mut rng, &[0, 1], 7, true);
        let x = 2;
        // every fifth context omits the substituted variable entirely
        let chi_vars: &[u32] = if i % 5 == 4 { &[3, 4] } else { &[2, 3] };
        let chi = rand_formula(&mut rng, chi_vars, 7, true);
        let script = sp_script(&phi, &psi, &chi, x);
        if check_proof(LogicId::El3Minus, &script, kopts).is_accepted() {
            accepted += 1;
        }
    }
    s.push(
        "sp.random-instances",
        "built and checked substitution-scheme derivations for random formula triples",
        "every generated script accepted at EL3-",
        format!("{accepted}/{} accepted", opts.sp_instances),
        accepted == opts.sp_instances,
        &["check-proof"],
    );
}

fn algebra_catalog(s: &mut Suite) {
    let algs = enumerate_algebras(3);
    let mut ok = 0usize;
    let mut total = 0usize;
    let mut spot = |cond: bool| {
        total += 1;
        if cond {
            ok += 1;
        }
    };
    spot(algs.len() == 8);
    spot(algs.iter().all(|a| a.verify().is_accepted()));
    spot(algs.iter().map(|a| a.size).sum::<usize>() == 2 + 4 + 3 + 8 + 6 + 5 + 5 + 4);

    let antichain2 = vec![vec![false, false], vec![false, false]];
    spot(downset_lattice(&antichain2).size == 4);

    let find = |pred: &dyn Fn(&HeytingAlgebra) -> bool| algs.iter().find(|a| pred(a));
    if let Some(c3) = find(&|a| a.size == 3) {
        spot(c3.filters().len() == 3);
        spot(c3.filters().iter().filter(|&&f| c3.is_proper(f)).count() == 2);
        spot(c3.ultrafilters().len() == 1 && c3.is_ultrafilter(c3.ultrafilters()[0]));
        // the filter {top} is prime here (join-irreducible top) but not
        // maximal, and its indicator is not a homomorphism
        let top_only = c3.filters()[c3.top];
        spot(c3.is_prime_filter(top_only) && !c3.is_ultrafilter(top_only));
        spot(!c3.indicator_is_hom(top_only));
        spot(c3.has_dp());
    } else {
        spot(false);
    }
    if let Some(b4) = find(&|a| a.size == 4 && a.atoms().len() == 2) {
        spot(b4.ultrafilters().len() == 2);
        spot(!b4.has_dp());
    } else {
        spot(false);
    }
    if let Some(car5) = find(&|a| a.size == 5 && a.has_dp()) {
        // two atoms joining to a middle element: the filter above it is
        // proper but not prime
        let c = car5.join[1][2];
        spot(c != car5.top && !car5.is_prime_filter(car5.filters()[c]));
    } else {
        spot(false);
    }
    spot(
        algs.iter()
            .all(|a| a.ultrafilters().iter().all(|&u| a.indicator_is_hom(u))),
    );
    s.push(
        "algebra.catalog-spot-checks",
        "verified the small-carrier catalog and its filter structure",
        "catalog shape, filter classifications and quotient maps as established",
        format!("{ok}/{total} spot checks"),
        ok == total,
        &[
            "enumerate-algebras",
            "downset-lattice",
            "verify-heyting",
            "filters",
            "prime-filter",
            "ultrafilter",
            "has-dp",
            "ultrafilter-quotient",
        ],
    );
}

fn ultrafilter_laws(s: &mut Suite, opts: &ReproOptions) {
    let algs = enumerate_algebras(3);
    let mut rng = rng_for(opts, 9);
    let mut violations = 0usize;
    for _ in 0..opts.trials {
        let a = &algs[rng.gen_range(0..algs.len())];
        let ultras = a.ultrafilters();
        if ultras.is_empty() {
            violations += 1;
            continue;
        }
        let u = ultras[rng.gen_range(0..ultras.len())];
        let m = rng.gen_range(0..a.size);
        let m2 = rng.gen_range(0..a.size);
        let inu = |x: usize| a.filter_contains(u, x);
        let join_law = inu(a.join[m][m2]) == (inu(m) || inu(m2));
        let complement_law = inu(m) || inu(a.neg[m]);
        let imp_in = inu(a.imp[m][m2]);
        let imp_law = imp_in == (!inu(m) || inu(m2)) && imp_in == inu(a.join[a.neg[m]][m2]);
        if !(join_law && complement_law && imp_law && a.indicator_is_hom(u)) {
            violations += 1;
        }
    }
    s.push(
        "ultrafilter.two-valued-laws",
        "sampled algebra/ultrafilter/element triples and checked the classical membership laws",
        "zero violations",
        format!("{} trials, {violations} violations", opts.trials),
        violations == 0,
        &["ultrafilter-quotient", "filters"],
    );
}

fn sweep_formulas(class: LogicId) -> Vec<Formula> {
    let mut base: Vec<Formula> = class
        .schemes()
        .iter()
        .flat_map(|&sch| scheme_instances(sch))
        .collect();
    base.extend(int_instances(true));
    let mut all = Vec::with_capacity(base.len() * 2);
    for f in base {
        all.push(Formula::nec(f.clone()));
        all.push(f);
    }
    all
}

fn soundness_sweeps(s: &mut Suite, streams: &[(LogicId, Enumeration)]) {
    for (class, stream) in streams {
        let formulas = sweep_formulas(*class);
        let mut violations = 0usize;
        for m in &stream.models {
            for f in &formulas {
                if m.valid(f) != Ok(true) {
                    violations += 1;
                }
            }
        }
        let floor_met = stream.models.len() >= 50;
        let id = match class {
            LogicId::El3Minus => "sweep.el3minus",
            LogicId::El3 => "sweep.el3",
            LogicId::El4 => "sweep.el4",
            LogicId::El5 => "sweep.el5",
            _ => unreachable!(),
        };
        s.push(
            id,
            "validated every axiom instance over two variables, and its boxed image, in every enumerated model of the class",
            "at least 50 validated models and zero violations",
            format!(
                "{} validated models (floor 50), {} formulas swept, {violations} violations",
                stream.models.len(),
                formulas.len()
            ),
            floor_met && violations == 0 && !stream.budget_exhausted,
            &["enumerate-models", "valid-in-model"],
        );
    }
}

fn library_conclusions(s: &mut Suite, streams: &[(LogicId, Enumeration)]) {
    let lib = theorem_library();
    let mut checked = 0usize;
    let mut violations = 0usize;
    for (class, stream) in streams {
        for entry in lib.iter().filter(|e| e.logic <= *class) {
            let conclusion = entry.statement();
            for m in &stream.models {
                checked += 1;
                if m.valid(conclusion) != Ok(true) {
                    violations += 1;
                }
            }
        }
    }
    s.push(
        "sweep.library-conclusions",
        "validated every library theorem in every enumerated model of each class at or above its tag",
        "zero violations",
        format!("{checked} model/theorem pairs, {violations} violations"),
        violations == 0,
        &["theorem-library", "valid-in-model"],
    );
}

fn believed_implies_true(s: &mut Suite, streams: &[(LogicId, Enumeration)]) {
    let mut checked = 0usize;
    let mut outside = 0usize;
    for (class, stream) in streams {
        if *class == LogicId::El3Minus {
            continue;
        }
        for m in &stream.models {
            let m = el_model(m);
            checked += 1;
            if m.bel
                .iter()
                .any(|&b| !m.algebra.filter_contains(m.true_set, b))
            {
                outside += 1;
            }
        }
    }
    s.push(
        "models.believed-implies-true",
        "checked belief sets against the designated ultrafilter in every enumerated model above the base class",
        "belief contained in classical truth",
        format!("{checked} models, {outside} with belief outside classical truth"),
        outside == 0,
        &["enumerate-models"],
    );
}

fn el5_revalidate_at_el4(
    s: &mut Suite,
    streams: &[(LogicId, Enumeration)],
    vopts: &ValidationOptions,
) {
    let el5 = &streams[3].1;
    let ok = el5
        .models
        .iter()
        .filter(|m| {
            let mut m = el_model(m).clone();
            m.class = LogicId::El4;
            crate::model::validate_el_model_with(&m, vopts).is_accepted()
        })
        .count();
    s.push(
        "models.el5-revalidate-at-el4",
        "re-validated every top-class model against the next-weaker class's conditions",
        "all accepted",
        format!("{ok}/{} revalidate", el5.models.len()),
        ok == el5.models.len(),
        &["validate-el-model"],
    );
}

fn countermodel_items(s: &mut Suite, opts: &ReproOptions) {
    let cases: [(&'static str, &'static str, &'static str); 3] = [
        (
            "refute.box-know-to-box",
            "box K x0 -> box x0",
            "searched the top class for a model where known-under-box fails to force boxed truth",
        ),
        (
            "refute.know-excluded-middle",
            "K x0 | K ~x0",
            "searched the top class for a model with an element neither known nor known-false",
        ),
        (
            "refute.know-distribution",
            "K (x0 | x1) -> (K x0 | K x1)",
            "searched the top class for a model knowing a join without knowing either arm",
        ),
    ];
    for (id, text, what) in cases {
        let f = p(text);
        let out = find_countermodel(&f, LogicId::El5, &opts.budget);
        let (observed, passed) = match &out.found {
            Some((m, g)) => {
                let revalidates = validate_el_model(el_model(m)).is_accepted();
                let refked = m.satisfies(g, &f) == Ok(false);
                (
                    format!(
                        "carrier {}, {}; revalidates: {revalidates}",
                        m.carrier_size(),
                        render_assignment(g)
                    ),
                    revalidates && refked,
                )
            }
            None => ("no countermodel within budget".to_string(), false),
        };
        s.push(
            id,
            what,
            "countermodel found and re-validated",
            observed,
            passed,
            &["find-countermodel", "validate-el-model", "satisfies"],
        );
    }
}

fn fixture_models(s: &mut Suite, opts: &ReproOptions) {
    let names = ["chain3_el5.json", "chain4_el5.json", "vee5_el5.json"];
    let mut ok = 0usize;
    let mut notes = Vec::new();
    for name in names {
        let path = opts.fixtures_dir.join("models").join(name);
        let outcome = std::fs::read_to_string(&path)
            .map_err(|e| format!("{name}: {e}"))
            .and_then(|text| {
                let m = model_from_json(&text).map_err(|e| format!("{name}: {e}"))?;
                let v = match &m {
                    EnumeratedModel::El(m) => validate_el_model(m),
                    EnumeratedModel::Iel(m) => validate_iel_model(m),
                };
                if !v.is_accepted() {
                    return Err(format!("{name}: {v}"));
                }
                if model_to_json(&m) != text {
                    return Err(format!("{name}: canonical rendering differs from file"));
                }
                Ok(())
            });
        match outcome {
            Ok(()) => ok += 1,
            Err(e) => notes.push(e),
        }
    }
    let observed = if notes.is_empty() {
        format!("{ok}/{} fixture models validate and round-trip byte-exactly", names.len())
    } else {
        notes.join("; ")
    };
    s.push(
        "fixtures.models-bit-exact",
        "loaded each shipped model file, validated it, and re-rendered it canonically",
        "validated and byte-identical",
        observed,
        ok == names.len(),
        &["validate-el-model"],
    );
}

fn nonfregean_witness(s: &mut Suite, streams: &[(LogicId, Enumeration)]) {
    let material = p("x0 <-> ~~x0");
    let strict = p("x0 == ~~x0");
    let el5 = &streams[3].1;
    let mut witness = None;
    'outer: for m in &el5.models {
        for g in assignments(&[0], m.carrier_size()) {
            if m.satisfies(&g, &material) == Ok(true) && m.satisfies(&g, &strict) == Ok(false) {
                let el = el_model(m);
                let lhs = el.eval(&g, &p("x0")).unwrap();
                let rhs = el.eval(&g, &p("~~x0")).unwrap();
                witness = Some((m.carrier_size(), render_assignment(&g), lhs, rhs));
                break 'outer;
            }
        }
    }
    let (observed, passed) = match witness {
        Some((n, g, lhs, rhs)) => (
            format!("carrier {n}, {g}: materially equivalent (elements {lhs} vs {rhs}) yet not identical"),
            true,
        ),
        None => ("no witness among enumerated models".to_string(), false),
    };
    s.push(
        "nonfregean.witness",
        "searched enumerated top-class models for a materially-equivalent pair denoting different elements",
        "witness found",
        observed,
        passed,
        &["satisfies", "eval"],
    );
}

fn identity_trials(s: &mut Suite, opts: &ReproOptions, streams: &[(LogicId, Enumeration)]) {
    let pool = &streams[0].1.models;
    let mut rng = rng_for(opts, 21);
    let mut violations = 0usize;
    for _ in 0..opts.trials {
        let m = el_model(&pool[rng.gen_range(0..pool.len())]);
        let phi = rand_formula(&mut rng, &[0, 1], 5, true);
        let psi = rand_formula(&mut rng, &[0, 1], 5, true);
        let g = rand_assignment(&mut rng, &[0, 1], m.algebra.size);
        let identical = m
            .satisfies(&g, &Formula::equiv(phi.clone(), psi.clone()))
            .unwrap();
        let same_element = m.eval(&g, &phi).unwrap() == m.eval(&g, &psi).unwrap();
        if identical != same_element {
            violations += 1;
        }
    }
    s.push(
        "identity.satisfaction-is-eval-equality",
        "compared satisfaction of the identity connective with equality of denoted elements on random triples",
        "zero violations",
        format!("{} trials, {violations} violations", opts.trials),
        violations == 0,
        &["satisfies", "eval", "enumerate-models"],
    );
}

fn box_as_identity_with_top(
    s: &mut Suite,
    opts: &ReproOptions,
    streams: &[(LogicId, Enumeration)],
) {
    let pool = &streams[0].1.models;
    let mut rng = rng_for(opts, 22);
    let mut violations = 0usize;
    for _ in 0..opts.trials {
        let m = el_model(&pool[rng.gen_range(0..pool.len())]);
        let phi = rand_formula(&mut rng, &[0, 1], 5, true);
        let g = rand_assignment(&mut rng, &[0, 1], m.algebra.size);
        let boxed = m.satisfies(&g, &Formula::nec(phi.clone())).unwrap();
        let identified = m
            .satisfies(&g, &Formula::equiv(phi.clone(), Formula::top()))
            .unwrap();
        if boxed != identified {
            violations += 1;
        }
    }
    s.push(
        "box.satisfaction-is-identity-with-top",
        "compared satisfaction of a boxed formula with identity of the formula and verum on random pairs",
        "zero violations",
        format!("{} trials, {violations} violations", opts.trials),
        violations == 0,
        &["satisfies"],
    );
}

fn embed_crosscheck_random(s: &mut Suite, opts: &ReproOptions) {
    let mut rng = rng_for(opts, 24);
    let mut agreements = 0usize;
    let mut refuted = 0usize;
    let mut refuted_with_model = 0usize;
    for i in 0..opts.embed_samples {
        let f = rand_formula(&mut rng, &[0, 1, 2], 10, false);
        // exercise the finite-premise form on implications periodically
        let (premises, chi): (Vec<Formula>, Formula) = match &f {
            Formula::Imp(a, b) if i % 3 == 0 => (vec![(**a).clone()], (**b).clone()),
            _ => (Vec::new(), f.clone()),
        };
        match embedding_crosscheck(&premises, &chi, &opts.budget) {
            Ok(r) => {
                if r.agrees {
                    agreements += 1;
                }
                if !r.consequence {
                    refuted += 1;
                    if r.pipeline_refutation.is_some() {
                        refuted_with_model += 1;
                    }
                }
            }
            Err(_) => {}
        }
    }
    s.push(
        "embed.random-crosscheck",
        "cross-checked the propositional decision against model search and embedded refutations on random formulas",
        "agreement on every sample; every failed consequence gets an explicit model",
        format!(
            "{agreements}/{} agree, {refuted_with_model}/{refuted} failed consequences with embedded refutations",
            opts.embed_samples
        ),
        agreements == opts.embed_samples && refuted_with_model == refuted,
        &["embedding-crosscheck", "kripke-to-el5", "ipc-consequence"],
    );
}

fn dp_random(s: &mut Suite, opts: &ReproOptions) {
    let mut rng = rng_for(opts, 25);
    let mut pairs = Vec::new();
    while pairs.len() < opts.dp_pairs {
        let phi = rand_formula(&mut rng, &[0, 1], 7, false);
        let psi = rand_formula(&mut rng, &[0, 1], 7, false);
        if ipc_valid(&phi) == Ok(false) && ipc_valid(&psi) == Ok(false) {
            pairs.push((phi, psi));
        }
    }
    let mut refuted = 0usize;
    for (phi, psi) in &pairs {
        let disjunction = Formula::or(Formula::nec(phi.clone()), Formula::nec(psi.clone()));
        if let Ok(r) = restricted_dp_check(phi, psi) {
            if let Some((m, g)) = r.refutation {
                if m.satisfies(&g, &disjunction) == Ok(false) && validate_el_model(&m).is_accepted()
                {
                    refuted += 1;
                }
            }
        }
    }
    s.push(
        "dp.random-pairs",
        "built embedded refutations of the boxed disjunction for random non-theorem pairs",
        "refutation for every pair",
        format!("{refuted}/{} pairs refuted with validated models", opts.dp_pairs),
        refuted == opts.dp_pairs,
        &["restricted-dp-check", "ipc-valid", "validate-el-model"],
    );

    let theorems = [p("x0 -> x0"), p("~(x0 & ~x0)"), p("x0 -> (x1 -> x0)")];
    let non = p("x0 | ~x0");
    let mut declined = 0usize;
    let mut total = 0usize;
    for t in &theorems {
        for (a, b) in [(t.clone(), non.clone()), (non.clone(), t.clone())] {
            total += 1;
            if let Ok(r) = restricted_dp_check(&a, &b) {
                if r.refutation.is_none() && (r.phi_theorem || r.psi_theorem) {
                    declined += 1;
                }
            }
        }
    }
    s.push(
        "dp.theorem-pairs-decline",
        "ran the disjunction probe on pairs containing a propositional theorem",
        "no refutation claimed",
        format!("{declined}/{total} pairs declined"),
        declined == total,
        &["restricted-dp-check"],
    );
}

fn iel_items(s: &mut Suite, opts: &ReproOptions) {
    let mut swept_models = 0usize;
    let mut violations = 0usize;
    let mut revalidated = 0usize;
    for class in [LogicId::IelMinus, LogicId::Iel] {
        let stream = enumerate_models_with(class, &opts.budget, &ValidationOptions::default());
        let mut formulas: Vec<Formula> = class
            .schemes()
            .iter()
            .flat_map(|&sch| scheme_instances(sch))
            .collect();
        formulas.extend(int_instances(false));
        for m in &stream.models {
            swept_models += 1;
            let iel = match m {
                EnumeratedModel::Iel(m) => m,
                EnumeratedModel::El(_) => unreachable!("IEL stream"),
            };
            if validate_iel_model(iel).is_accepted() {
                revalidated += 1;
            }
            for f in &formulas {
                if m.valid(f) != Ok(true) {
                    violations += 1;
                }
            }
        }
    }
    s.push(
        "iel.soundness-sweep",
        "validated every knowledge-family axiom instance over two variables in every enumerated model",
        "zero violations, all models revalidate",
        format!("{swept_models} models, {violations} violations, {revalidated} revalidate"),
        violations == 0 && revalidated == swept_models && swept_models > 0,
        &["enumerate-models", "validate-iel-model", "valid-in-model"],
    );

    let reflection = p("K x0 -> x0");
    let out = find_countermodel(&reflection, LogicId::IelMinus, &opts.budget);
    let (observed, passed) = match &out.found {
        Some((m, g)) => (
            format!("carrier {}, {}", m.carrier_size(), render_assignment(g)),
            m.satisfies(g, &reflection) == Ok(false),
        ),
        None => ("no countermodel within budget".to_string(), false),
    };
    s.push(
        "iel.reflection-refuted",
        "searched the base knowledge family for a model where knowledge does not imply truth",
        "countermodel found",
        observed,
        passed,
        &["find-countermodel", "satisfies"],
    );
}

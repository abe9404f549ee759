//! Deterministic model enumeration and first-hit countermodel search.
//!
//! The stream walks carriers in the frozen algebra-catalog order (skipping
//! those without the disjunction property, which can carry no valid model),
//! then designated ultrafilters by ascending generator, then belief sets by
//! ascending bitmask, then box tables, then knowledge tables. Tables are
//! generated with the cheap membership conditions as pruning filters and
//! candidates are re-validated in full, so the pruning can only cost
//! completeness bugs speed, never soundness.

use super::{
    assignments, validate_el_model_with, validate_iel_model, Assignment, ElModel, EvalError,
    IelModel, ValidationOptions,
};
use crate::heyting::{enumerate_algebras, Filter, HeytingAlgebra};
use crate::kernel::LogicId;
use crate::syntax::Formula;
use std::time::{Duration, Instant};

/// Caps for enumeration and search. Exceeding any cap ends the stream
/// early with `budget_exhausted` set; it is never an error.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_poset_size: usize,
    pub max_models: usize,
    /// Cap on candidate operation-table combinations examined.
    pub max_op_tables: usize,
    pub time_cap: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_poset_size: 3,
            max_models: 100_000,
            max_op_tables: 10_000_000,
            time_cap: Duration::from_secs(30),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumeratedModel {
    El(ElModel),
    Iel(IelModel),
}

impl EnumeratedModel {
    pub fn carrier_size(&self) -> usize {
        match self {
            EnumeratedModel::El(m) => m.algebra.size,
            EnumeratedModel::Iel(m) => m.algebra.size,
        }
    }

    pub fn class(&self) -> LogicId {
        match self {
            EnumeratedModel::El(m) => m.class,
            EnumeratedModel::Iel(m) => m.class,
        }
    }

    pub fn algebra(&self) -> &HeytingAlgebra {
        match self {
            EnumeratedModel::El(m) => &m.algebra,
            EnumeratedModel::Iel(m) => &m.algebra,
        }
    }

    pub fn satisfies(&self, g: &Assignment, f: &Formula) -> Result<bool, EvalError> {
        match self {
            EnumeratedModel::El(m) => m.satisfies(g, f),
            EnumeratedModel::Iel(m) => m.satisfies(g, f),
        }
    }

    pub fn valid(&self, f: &Formula) -> Result<bool, EvalError> {
        match self {
            EnumeratedModel::El(m) => m.valid(f),
            EnumeratedModel::Iel(m) => m.valid(f),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub models: Vec<EnumeratedModel>,
    pub budget_exhausted: bool,
}

pub fn enumerate_models(class: LogicId, budget: &SearchBudget) -> Enumeration {
    enumerate_models_with(class, budget, &ValidationOptions::default())
}

pub fn enumerate_models_with(
    class: LogicId,
    budget: &SearchBudget,
    opts: &ValidationOptions,
) -> Enumeration {
    let mut models = Vec::new();
    let budget_exhausted = walk_models(class, budget, opts, &mut |m| {
        models.push(m);
        true
    });
    Enumeration {
        models,
        budget_exhausted,
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub found: Option<(EnumeratedModel, Assignment)>,
    pub budget_exhausted: bool,
}

/// First enumerated model and assignment falsifying the formula. Absence
/// within budget proves nothing; validity claims belong to the kernel.
pub fn find_countermodel(f: &Formula, class: LogicId, budget: &SearchBudget) -> SearchOutcome {
    let vars = f.vars();
    let mut found = None;
    let budget_exhausted = walk_models(class, budget, &ValidationOptions::default(), &mut |m| {
        for g in assignments(&vars, m.carrier_size()) {
            match m.satisfies(&g, f) {
                Ok(true) => {}
                Ok(false) => {
                    found = Some((m, g));
                    return false;
                }
                // a formula this family cannot evaluate is never refuted
                Err(_) => break,
            }
        }
        true
    });
    SearchOutcome {
        found,
        budget_exhausted,
    }
}

/// Exhaustive knowledge/box-table search is only attempted on carriers this
/// small; larger carriers get the indicator fast path only.
const EXHAUSTIVE_TABLE_CAP: usize = 6;

fn mask_elems(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Cartesian product of per-element candidate images, ascending with the
/// last element fastest. An empty candidate set yields no tables.
fn table_product(cands: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if cands.iter().any(|c| c.is_empty()) {
        return out;
    }
    let n = cands.len();
    let mut idx = vec![0usize; n];
    loop {
        out.push((0..n).map(|i| cands[i][idx[i]]).collect());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < cands[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

fn collapse_table(a: &HeytingAlgebra) -> Vec<usize> {
    (0..a.size)
        .map(|x| if x == a.top { a.top } else { a.bot })
        .collect()
}

fn indicator_table(a: &HeytingAlgebra, bel: &[usize]) -> Vec<usize> {
    (0..a.size)
        .map(|x| if bel.contains(&x) { a.top } else { a.bot })
        .collect()
}

/// Box candidates: the collapse map for the top class, otherwise every
/// table pointwise consistent with "below the argument" and "designated
/// only at top" (the full conditions are re-checked by validation).
fn box_tables(a: &HeytingAlgebra, truth: Filter, class: LogicId) -> Vec<Vec<usize>> {
    if class == LogicId::El5 {
        return vec![collapse_table(a)];
    }
    let n = a.size;
    if n > EXHAUSTIVE_TABLE_CAP {
        return vec![collapse_table(a)];
    }
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|m| {
            if m == a.top {
                (0..n).filter(|&v| a.filter_contains(truth, v)).collect()
            } else {
                (0..n)
                    .filter(|&v| a.le(v, m) && !a.filter_contains(truth, v))
                    .collect()
            }
        })
        .collect();
    table_product(&cands)
}

/// Knowledge candidates for the EL family: the indicator of the belief set
/// first, then (on small carriers) every table pointwise consistent with
/// the designation condition, indicator duplicate skipped.
fn know_tables_el(a: &HeytingAlgebra, truth: Filter, bel: &[usize]) -> Vec<Vec<usize>> {
    let ind = indicator_table(a, bel);
    let mut out = vec![ind.clone()];
    let n = a.size;
    if n <= EXHAUSTIVE_TABLE_CAP {
        let cands: Vec<Vec<usize>> = (0..n)
            .map(|m| {
                let want = bel.contains(&m);
                (0..n)
                    .filter(|&v| a.filter_contains(truth, v) == want)
                    .collect()
            })
            .collect();
        out.extend(table_product(&cands).into_iter().filter(|t| *t != ind));
    }
    out
}

/// Knowledge candidates for the IEL family, pruned by the designation and
/// inflation conditions.
fn know_tables_iel(a: &HeytingAlgebra, bel: &[usize]) -> Vec<Vec<usize>> {
    let ind = indicator_table(a, bel);
    let mut out = vec![ind.clone()];
    let n = a.size;
    if n <= EXHAUSTIVE_TABLE_CAP {
        let cands: Vec<Vec<usize>> = (0..n)
            .map(|m| {
                if bel.contains(&m) {
                    vec![a.top]
                } else {
                    (0..n).filter(|&v| a.le(m, v) && v != a.top).collect()
                }
            })
            .collect();
        out.extend(table_product(&cands).into_iter().filter(|t| *t != ind));
    }
    out
}

/// Drives `visit` over every validated model in the deterministic order;
/// `visit` returns false to stop early. The return value reports whether a
/// budget cap ended the walk.
pub(crate) fn walk_models(
    class: LogicId,
    budget: &SearchBudget,
    opts: &ValidationOptions,
    visit: &mut dyn FnMut(EnumeratedModel) -> bool,
) -> bool {
    use LogicId::*;
    let el_family = matches!(class, El3Minus | El3 | El4 | El5);
    assert!(
        el_family || matches!(class, IelMinus | Iel),
        "{class} has no model class"
    );
    let start = Instant::now();
    let mut tables = 0usize;
    let mut yielded = 0usize;
    for algebra in enumerate_algebras(budget.max_poset_size) {
        if !algebra.has_dp() {
            continue;
        }
        let n = algebra.size;
        if el_family {
            let el3_plus = matches!(class, El3 | El4 | El5);
            for truth in algebra.ultrafilters() {
                let true_mask: u32 = (0..n)
                    .filter(|&v| algebra.filter_contains(truth, v))
                    .map(|v| 1 << v)
                    .sum();
                let boxes = box_tables(&algebra, truth, class);
                for bel_mask in 0u32..(1 << n) {
                    // believed elements are classically true from EL3 up
                    if el3_plus && opts.enforce_viii && bel_mask & !true_mask != 0 {
                        continue;
                    }
                    let bel = mask_elems(bel_mask);
                    for box_table in &boxes {
                        for know in know_tables_el(&algebra, truth, &bel) {
                            tables += 1;
                            if tables > budget.max_op_tables || start.elapsed() > budget.time_cap
                            {
                                return true;
                            }
                            let cand = ElModel {
                                algebra: algebra.clone(),
                                true_set: truth,
                                bel: bel.clone(),
                                box_table: box_table.clone(),
                                know,
                                class,
                            };
                            if validate_el_model_with(&cand, opts).is_accepted() {
                                yielded += 1;
                                if !visit(EnumeratedModel::El(cand)) {
                                    return false;
                                }
                                if yielded >= budget.max_models {
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        } else {
            for bel_mask in 0u32..(1 << n) {
                // top must be believed
                if bel_mask >> algebra.top & 1 == 0 {
                    continue;
                }
                let bel = mask_elems(bel_mask);
                for know in know_tables_iel(&algebra, &bel) {
                    tables += 1;
                    if tables > budget.max_op_tables || start.elapsed() > budget.time_cap {
                        return true;
                    }
                    let cand = IelModel {
                        algebra: algebra.clone(),
                        bel: bel.clone(),
                        know,
                        class,
                    };
                    if validate_iel_model(&cand).is_accepted() {
                        yielded += 1;
                        if !visit(EnumeratedModel::Iel(cand)) {
                            return false;
                        }
                        if yielded >= budget.max_models {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::validate_el_model;
    use super::*;
    use crate::syntax::parse;

    fn small_budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn el5_enumeration_is_small_deterministic_and_validated() {
        let e = enumerate_models(LogicId::El5, &small_budget());
        assert!(!e.budget_exhausted);
        let again = enumerate_models(LogicId::El5, &small_budget());
        assert_eq!(e.models, again.models);
        for m in &e.models {
            match m {
                EnumeratedModel::El(m) => assert!(validate_el_model(m).is_accepted()),
                EnumeratedModel::Iel(_) => panic!("wrong family"),
            }
        }
        // the first model lives on the two-element algebra and believes
        // only top
        match &e.models[0] {
            EnumeratedModel::El(m) => {
                assert_eq!(m.algebra.size, 2);
                assert_eq!(m.bel, vec![1]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn el3_stream_believes_only_true_elements() {
        let e = enumerate_models(LogicId::El3, &small_budget());
        assert!(e.models.len() >= 50, "only {} models", e.models.len());
        for m in &e.models {
            if let EnumeratedModel::El(m) = m {
                for &b in &m.bel {
                    assert!(m.algebra.filter_contains(m.true_set, b));
                }
            }
        }
    }

    #[test]
    fn el3minus_stream_contains_belief_outside_truth() {
        let e = enumerate_models(LogicId::El3Minus, &small_budget());
        let some_outside = e.models.iter().any(|m| match m {
            EnumeratedModel::El(m) => m
                .bel
                .iter()
                .any(|&b| !m.algebra.filter_contains(m.true_set, b)),
            _ => false,
        });
        assert!(some_outside);
    }

    #[test]
    fn minimal_iel_model_is_enumerated() {
        let e = enumerate_models(LogicId::IelMinus, &small_budget());
        let minimal = e.models.iter().any(|m| match m {
            EnumeratedModel::Iel(m) => {
                m.algebra.size == 2 && m.bel == vec![1] && m.know == vec![0, 1]
            }
            _ => false,
        });
        assert!(minimal);
    }

    #[test]
    fn countermodel_search_reproduces_the_reference_witnesses() {
        let b = small_budget();

        let t = parse("box K x0 -> box x0").unwrap();
        let out = find_countermodel(&t, LogicId::El5, &b);
        let (m, g) = out.found.expect("refutable");
        assert!(!m.satisfies(&g, &t).unwrap());
        match &m {
            EnumeratedModel::El(m) => {
                assert_eq!(m.algebra.size, 3);
                assert_eq!(m.bel, vec![1, 2]);
                assert_eq!(g, Assignment::new().bind(0, 1));
                assert!(validate_el_model(m).is_accepted());
            }
            _ => unreachable!(),
        }

        let t = parse("K x0 | K ~x0").unwrap();
        let out = find_countermodel(&t, LogicId::El5, &b);
        let (m, g) = out.found.expect("refutable");
        assert!(!m.satisfies(&g, &t).unwrap());
        match &m {
            EnumeratedModel::El(m) => {
                assert_eq!(m.algebra.size, 3);
                assert_eq!(m.bel, vec![2]);
                assert_eq!(m.know, vec![0, 0, 2]);
                assert_eq!(g, Assignment::new().bind(0, 1));
            }
            _ => unreachable!(),
        }

        let t = parse("K (x0 | x1) -> (K x0 | K x1)").unwrap();
        let out = find_countermodel(&t, LogicId::El5, &b);
        let (m, g) = out.found.expect("refutable");
        assert!(!m.satisfies(&g, &t).unwrap());
        match &m {
            EnumeratedModel::El(m) => {
                // five-element carrier with incomparable atoms joining to a
                // middle element: belief is the non-prime filter above it
                assert_eq!(m.algebra.size, 5);
                assert_eq!(m.true_set, Filter { generator: 1 });
                assert_eq!(m.bel, vec![3, 4]);
                assert_eq!(g, Assignment::new().bind(0, 1).bind(1, 2));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn knowledge_reflection_fails_in_some_iel_minus_model() {
        let t = parse("K x0 -> x0").unwrap();
        let out = find_countermodel(&t, LogicId::IelMinus, &small_budget());
        let (m, g) = out.found.expect("reflection is not derivable");
        assert!(!m.satisfies(&g, &t).unwrap());
    }

    #[test]
    fn theorems_are_not_refuted_and_budget_end_is_flagged() {
        let t = parse("box x0 -> x0").unwrap();
        let out = find_countermodel(&t, LogicId::El5, &small_budget());
        assert!(out.found.is_none());
        assert!(!out.budget_exhausted);

        let tiny = SearchBudget {
            max_op_tables: 3,
            ..SearchBudget::default()
        };
        let out = find_countermodel(&t, LogicId::El5, &tiny);
        assert!(out.budget_exhausted);
    }

    #[test]
    fn model_cap_truncates_the_stream() {
        let capped = SearchBudget {
            max_models: 5,
            ..SearchBudget::default()
        };
        let e = enumerate_models(LogicId::El5, &capped);
        assert_eq!(e.models.len(), 5);
        assert!(e.budget_exhausted);
    }
}

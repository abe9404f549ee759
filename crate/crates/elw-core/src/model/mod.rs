//! Algebraic models for the epistemic logics: a Heyting algebra carrying a
//! designated ultrafilter of classically true elements, a set of believed
//! elements, and unary operation tables for the two modalities. The
//! knowledge-over-intuitionistic-truth family (EL) designates truth by
//! ultrafilter membership; the intuitionistic-knowledge family (IEL) has no
//! box operation and designates truth as being top.
//!
//! Validation checks every defining condition exhaustively and names the
//! first one violated; evaluation is structural recursion over the tables.

pub mod embed;
pub mod enumerate;
pub mod file;

use crate::heyting::{Filter, HeytingAlgebra};
use crate::kernel::LogicId;
use crate::syntax::Formula;
use crate::verdict::Verdict;
use std::collections::BTreeMap;

pub use embed::{
    embedding_crosscheck, kripke_to_el5, restricted_dp_check, DpReport, EmbedError, EmbedReport,
};
pub use enumerate::{
    enumerate_models, enumerate_models_with, find_countermodel, EnumeratedModel, Enumeration,
    SearchBudget, SearchOutcome,
};
pub use file::{model_from_json, model_to_json, ModelFileError};

/// Model for EL3-, EL3, EL4 or EL5 (the `class` field says which conditions
/// apply). `bel` is a sorted list of element indices; `box_table` and `know`
/// are total unary maps on element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElModel {
    pub algebra: HeytingAlgebra,
    pub true_set: Filter,
    pub bel: Vec<usize>,
    pub box_table: Vec<usize>,
    pub know: Vec<usize>,
    pub class: LogicId,
}

/// Model for IEL- or IEL: no box table, no designated ultrafilter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IelModel {
    pub algebra: HeytingAlgebra,
    pub bel: Vec<usize>,
    pub know: Vec<usize>,
    pub class: LogicId,
}

/// Map from variable index to element index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(pub BTreeMap<u32, usize>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn bind(mut self, var: u32, element: usize) -> Self {
        self.0.insert(var, element);
        self
    }

    pub fn get(&self, var: u32) -> Option<usize> {
        self.0.get(&var).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no element assigned to variable x{0}")]
    UnboundVariable(u32),
    #[error("box does not exist in models of the intuitionistic-knowledge family")]
    BoxInIelModel,
}

/// Every assignment of the given variables into a carrier of `size`
/// elements, in ascending lexicographic order (last variable fastest).
pub fn assignments(vars: &[u32], size: usize) -> impl Iterator<Item = Assignment> + '_ {
    let k = vars.len();
    let mut digits = vec![0usize; k];
    let mut done = size == 0 && k > 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = Assignment(vars.iter().copied().zip(digits.iter().copied()).collect());
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < size {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    })
}

impl ElModel {
    fn in_bel(&self, m: usize) -> bool {
        self.bel.contains(&m)
    }

    fn in_true(&self, m: usize) -> bool {
        self.algebra.filter_contains(self.true_set, m)
    }

    pub fn eval(&self, g: &Assignment, f: &Formula) -> Result<usize, EvalError> {
        let a = &self.algebra;
        Ok(match f {
            Formula::Var(v) => g.get(*v).ok_or(EvalError::UnboundVariable(*v))?,
            Formula::Bottom => a.bot,
            Formula::And(p, q) => a.meet[self.eval(g, p)?][self.eval(g, q)?],
            Formula::Or(p, q) => a.join[self.eval(g, p)?][self.eval(g, q)?],
            Formula::Imp(p, q) => a.imp[self.eval(g, p)?][self.eval(g, q)?],
            Formula::Box(p) => self.box_table[self.eval(g, p)?],
            Formula::Know(p) => self.know[self.eval(g, p)?],
        })
    }

    /// Truth is membership in the designated ultrafilter.
    pub fn satisfies(&self, g: &Assignment, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.in_true(self.eval(g, f)?))
    }

    /// Satisfied under every assignment of the formula's variables.
    pub fn valid(&self, f: &Formula) -> Result<bool, EvalError> {
        for g in assignments(&f.vars(), self.algebra.size) {
            if !self.satisfies(&g, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl IelModel {
    fn in_bel(&self, m: usize) -> bool {
        self.bel.contains(&m)
    }

    pub fn eval(&self, g: &Assignment, f: &Formula) -> Result<usize, EvalError> {
        let a = &self.algebra;
        Ok(match f {
            Formula::Var(v) => g.get(*v).ok_or(EvalError::UnboundVariable(*v))?,
            Formula::Bottom => a.bot,
            Formula::And(p, q) => a.meet[self.eval(g, p)?][self.eval(g, q)?],
            Formula::Or(p, q) => a.join[self.eval(g, p)?][self.eval(g, q)?],
            Formula::Imp(p, q) => a.imp[self.eval(g, p)?][self.eval(g, q)?],
            Formula::Box(_) => return Err(EvalError::BoxInIelModel),
            Formula::Know(p) => self.know[self.eval(g, p)?],
        })
    }

    /// Truth is denoting top.
    pub fn satisfies(&self, g: &Assignment, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.eval(g, f)? == self.algebra.top)
    }

    pub fn valid(&self, f: &Formula) -> Result<bool, EvalError> {
        for g in assignments(&f.vars(), self.algebra.size) {
            if !self.satisfies(&g, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Validation switches. `enforce_viii` guards the intuitionistic-reflection
/// condition (know m below double negation) for EL3 and above, together
/// with its consequence that believed elements are classically true;
/// disabling it exists for mutation testing only.
#[derive(Debug, Clone)]
pub struct ValidationOptions {
    pub enforce_viii: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { enforce_viii: true }
    }
}

fn structural(algebra: &HeytingAlgebra, tables: &[&Vec<usize>], bel: &[usize]) -> Option<Verdict> {
    match algebra.verify() {
        Verdict::Accepted => {}
        Verdict::Rejected { condition, .. } => {
            return Some(Verdict::rejected("algebra").with_witness(condition));
        }
    }
    let n = algebra.size;
    for t in tables {
        if t.len() != n || t.iter().any(|&x| x >= n) {
            return Some(
                Verdict::rejected("shape").with_witness(format!("unary table is not {n} -> {n}")),
            );
        }
    }
    if bel.iter().any(|&x| x >= n) || bel.windows(2).any(|w| w[0] >= w[1]) {
        return Some(
            Verdict::rejected("shape")
                .with_witness("bel must be a strictly increasing list of element indices"),
        );
    }
    None
}

pub fn validate_el_model(m: &ElModel) -> Verdict {
    validate_el_model_with(m, &ValidationOptions::default())
}

pub fn validate_el_model_with(m: &ElModel, opts: &ValidationOptions) -> Verdict {
    use LogicId::*;
    if !matches!(m.class, El3Minus | El3 | El4 | El5) {
        return Verdict::rejected("class").with_witness(m.class.to_string());
    }
    if let Some(v) = structural(&m.algebra, &[&m.box_table, &m.know], &m.bel) {
        return v;
    }
    let a = &m.algebra;
    let n = a.size;
    if m.true_set.generator >= n || !a.is_ultrafilter(m.true_set) {
        return Verdict::rejected("true-not-ultrafilter")
            .with_witness(format!("generator {}", m.true_set.generator));
    }
    // asserted consequence of (i) and (iv): the carrier must have DP
    if !a.has_dp() {
        return Verdict::rejected("derived-dp");
    }

    for x in 0..n {
        for y in 0..n {
            if !a.le(m.box_table[a.join[x][y]], a.join[m.box_table[x]][m.box_table[y]]) {
                return Verdict::rejected("el.i").with_witness(format!("m={x} m'={y}"));
            }
        }
    }
    for x in 0..n {
        if !a.le(m.box_table[x], x) {
            return Verdict::rejected("el.ii").with_witness(format!("m={x}"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = m.box_table[a.imp[x][y]];
            let rhs = m.box_table[a.imp[m.box_table[x]][m.box_table[y]]];
            if !a.le(lhs, rhs) {
                return Verdict::rejected("el.iii").with_witness(format!("m={x} m'={y}"));
            }
        }
    }
    for x in 0..n {
        if m.in_true(m.box_table[x]) != (x == a.top) {
            return Verdict::rejected("el.iv").with_witness(format!("m={x}"));
        }
    }
    for x in 0..n {
        if m.in_true(m.know[x]) != m.in_bel(x) {
            return Verdict::rejected("el.v").with_witness(format!("m={x}"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !a.le(m.know[a.imp[x][y]], a.imp[m.know[x]][m.know[y]]) {
                return Verdict::rejected("el.vi").with_witness(format!("m={x} m'={y}"));
            }
        }
    }
    for x in 0..n {
        if !a.le(m.box_table[x], m.box_table[m.know[x]]) {
            return Verdict::rejected("el.vii").with_witness(format!("m={x}"));
        }
    }

    let el3_plus = matches!(m.class, El3 | El4 | El5);
    if el3_plus && opts.enforce_viii {
        for x in 0..n {
            if !a.le(m.know[x], a.neg[a.neg[x]]) {
                return Verdict::rejected("el.viii").with_witness(format!("m={x}"));
            }
        }
    }
    if matches!(m.class, El4 | El5) {
        for x in 0..n {
            if !a.le(m.box_table[x], m.box_table[m.box_table[x]]) {
                return Verdict::rejected("el.box-idem").with_witness(format!("m={x}"));
            }
        }
    }
    if m.class == El5 {
        for x in 0..n {
            let want = if x == a.top { a.top } else { a.bot };
            if m.box_table[x] != want {
                return Verdict::rejected("el.box-collapse").with_witness(format!("m={x}"));
            }
        }
    }
    // asserted consequence of (v) and (viii): believed elements are true
    if el3_plus && opts.enforce_viii {
        for &b in &m.bel {
            if !m.in_true(b) {
                return Verdict::rejected("derived-bel-in-true").with_witness(format!("m={b}"));
            }
        }
    }
    Verdict::Accepted
}

pub fn validate_iel_model(m: &IelModel) -> Verdict {
    use LogicId::*;
    if !matches!(m.class, IelMinus | Iel) {
        return Verdict::rejected("class").with_witness(m.class.to_string());
    }
    if let Some(v) = structural(&m.algebra, &[&m.know], &m.bel) {
        return v;
    }
    let a = &m.algebra;
    let n = a.size;
    if !m.in_bel(a.top) {
        return Verdict::rejected("iel.i");
    }
    for x in 0..n {
        if (m.know[x] == a.top) != m.in_bel(x) {
            return Verdict::rejected("iel.ii").with_witness(format!("m={x}"));
        }
    }
    for x in 0..n {
        if !a.le(x, m.know[x]) {
            return Verdict::rejected("iel.iii").with_witness(format!("m={x}"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !a.le(m.know[a.imp[x][y]], a.imp[m.know[x]][m.know[y]]) {
                return Verdict::rejected("iel.iv").with_witness(format!("m={x} m'={y}"));
            }
        }
    }
    if !a.has_dp() {
        return Verdict::rejected("iel.v");
    }
    if m.class == Iel {
        for x in 0..n {
            if !a.le(m.know[x], a.neg[a.neg[x]]) {
                return Verdict::rejected("iel.vi").with_witness(format!("m={x}"));
            }
        }
    }
    Verdict::Accepted
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::heyting::downset_lattice;
    use crate::syntax::parse;

    pub(crate) fn chain_algebra(elements: usize) -> HeytingAlgebra {
        let k = elements - 1;
        let mut rel = vec![vec![false; k]; k];
        for u in 0..k {
            for v in u + 1..k {
                rel[u][v] = true;
            }
        }
        downset_lattice(&rel)
    }

    pub(crate) fn collapse(a: &HeytingAlgebra) -> Vec<usize> {
        (0..a.size)
            .map(|x| if x == a.top { a.top } else { a.bot })
            .collect()
    }

    pub(crate) fn indicator(a: &HeytingAlgebra, bel: &[usize]) -> Vec<usize> {
        (0..a.size)
            .map(|x| if bel.contains(&x) { a.top } else { a.bot })
            .collect()
    }

    /// 3-chain, TRUE and BEL from the middle element up, collapse box,
    /// indicator knowledge: the reference EL5 model.
    pub(crate) fn chain3_el5() -> ElModel {
        let algebra = chain_algebra(3);
        let box_table = collapse(&algebra);
        let know = indicator(&algebra, &[1, 2]);
        ElModel {
            algebra,
            true_set: Filter { generator: 1 },
            bel: vec![1, 2],
            box_table,
            know,
            class: LogicId::El5,
        }
    }

    #[test]
    fn reference_el5_model_validates() {
        let m = chain3_el5();
        assert!(validate_el_model(&m).is_accepted());
        assert_eq!(m.box_table, vec![0, 0, 2]);
        assert_eq!(m.know, vec![0, 2, 2]);
    }

    #[test]
    fn knowing_an_unbelieved_element_is_rejected_at_v() {
        let mut m = chain3_el5();
        m.bel = vec![2];
        // know(b) stays top although b is no longer believed
        let v = validate_el_model(&m);
        assert_eq!(v.condition(), Some("el.v"));
    }

    #[test]
    fn carrier_without_dp_is_rejected() {
        // diamond: bot 0, two incomparable atoms 1 2, top 3
        let algebra = downset_lattice(&vec![vec![false; 2]; 2]);
        assert_eq!(algebra.size, 4);
        let box_table = collapse(&algebra);
        let know = indicator(&algebra, &[3]);
        let m = ElModel {
            algebra,
            true_set: Filter { generator: 1 },
            bel: vec![3],
            box_table,
            know,
            class: LogicId::El5,
        };
        assert_eq!(validate_el_model(&m).condition(), Some("derived-dp"));
    }

    #[test]
    fn el3_requires_intuitionistic_reflection_unless_disabled() {
        // 2-element algebra believing bot: fine for EL3-, an el.viii
        // violation for EL3 unless the mutation switch is thrown
        let algebra = chain_algebra(2);
        let m = ElModel {
            algebra: algebra.clone(),
            true_set: Filter { generator: 1 },
            bel: vec![0, 1],
            box_table: vec![0, 1],
            know: vec![1, 1],
            class: LogicId::El3Minus,
        };
        assert!(validate_el_model(&m).is_accepted());

        let el3 = ElModel {
            class: LogicId::El3,
            ..m.clone()
        };
        assert_eq!(validate_el_model(&el3).condition(), Some("el.viii"));
        let lax = ValidationOptions {
            enforce_viii: false,
        };
        assert!(validate_el_model_with(&el3, &lax).is_accepted());
    }

    #[test]
    fn class_and_structure_are_screened_first() {
        let m = chain3_el5();
        let bad_class = ElModel {
            class: LogicId::Iel,
            ..m.clone()
        };
        assert_eq!(validate_el_model(&bad_class).condition(), Some("class"));

        let mut bad_table = m.clone();
        bad_table.know = vec![0, 2];
        assert_eq!(validate_el_model(&bad_table).condition(), Some("shape"));

        let mut bad_true = m.clone();
        bad_true.true_set = Filter { generator: 2 };
        assert_eq!(
            validate_el_model(&bad_true).condition(),
            Some("true-not-ultrafilter")
        );

        let mut bad_algebra = m;
        bad_algebra.algebra.imp[1][0] = 2;
        assert_eq!(validate_el_model(&bad_algebra).condition(), Some("algebra"));
    }

    #[test]
    fn iel_reference_and_forced_rejections() {
        let algebra = chain_algebra(3);
        let identity = IelModel {
            algebra: algebra.clone(),
            bel: vec![2],
            know: vec![0, 1, 2],
            class: LogicId::IelMinus,
        };
        assert!(validate_iel_model(&identity).is_accepted());

        let missing_top = IelModel {
            bel: vec![1],
            ..identity.clone()
        };
        assert_eq!(validate_iel_model(&missing_top).condition(), Some("iel.i"));

        // indicator knowledge sends the unbelieved middle element to bot,
        // violating m <= know m
        let ind = IelModel {
            know: indicator(&algebra, &[2]),
            ..identity
        };
        assert_eq!(validate_iel_model(&ind).condition(), Some("iel.iii"));
    }

    #[test]
    fn iel_extension_rejects_knowledge_of_refutable_elements() {
        // believing everything makes know constantly top, which breaks
        // know m <= neg neg m at m = bot in class IEL
        let algebra = chain_algebra(2);
        let m = IelModel {
            algebra,
            bel: vec![0, 1],
            know: vec![1, 1],
            class: LogicId::Iel,
        };
        let weaker = IelModel {
            class: LogicId::IelMinus,
            ..m.clone()
        };
        assert!(validate_iel_model(&weaker).is_accepted());
        assert_eq!(validate_iel_model(&m).condition(), Some("iel.vi"));
    }

    #[test]
    fn evaluation_matches_the_reference_witness() {
        let m = chain3_el5();
        let g = Assignment::new().bind(0, 1);
        let box_know = parse("box K x0").unwrap();
        let box_x = parse("box x0").unwrap();
        assert_eq!(m.eval(&g, &box_know).unwrap(), 2);
        assert_eq!(m.eval(&g, &box_x).unwrap(), 0);

        // material equivalence with the double negation holds, strict
        // equivalence fails: the non-Fregean witness
        let material = parse("x0 <-> ~~x0").unwrap();
        let strict = parse("x0 == ~~x0").unwrap();
        assert!(m.satisfies(&g, &material).unwrap());
        assert_eq!(m.eval(&g, &strict).unwrap(), 0);
        assert!(!m.satisfies(&g, &strict).unwrap());

        assert_eq!(m.eval(&g, &parse("true").unwrap()).unwrap(), m.algebra.top);
    }

    #[test]
    fn validity_quantifies_over_all_assignments() {
        let m = chain3_el5();
        assert!(m.valid(&parse("x0 | ~x0").unwrap()).unwrap());
        assert!(!m.valid(&parse("box K x0 -> box x0").unwrap()).unwrap());
        assert!(m.valid(&parse("true").unwrap()).unwrap());
    }

    #[test]
    fn evaluation_errors_are_reported() {
        let m = chain3_el5();
        let unbound = m.eval(&Assignment::new(), &parse("x1").unwrap());
        assert_eq!(unbound, Err(EvalError::UnboundVariable(1)));

        let iel = IelModel {
            algebra: chain_algebra(2),
            bel: vec![1],
            know: vec![0, 1],
            class: LogicId::IelMinus,
        };
        let boxed = iel.eval(&Assignment::new().bind(0, 1), &parse("box x0").unwrap());
        assert_eq!(boxed, Err(EvalError::BoxInIelModel));
    }

    #[test]
    fn assignment_stream_is_lexicographic_and_total() {
        let vars = [0u32, 3];
        let all: Vec<Assignment> = assignments(&vars, 3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], Assignment::new().bind(0, 0).bind(3, 0));
        assert_eq!(all[1], Assignment::new().bind(0, 0).bind(3, 1));
        assert_eq!(all[3], Assignment::new().bind(0, 1).bind(3, 0));
        assert_eq!(all[8], Assignment::new().bind(0, 2).bind(3, 2));

        let none: Vec<Assignment> = assignments(&[], 3).collect();
        assert_eq!(none, vec![Assignment::new()]);
    }
}

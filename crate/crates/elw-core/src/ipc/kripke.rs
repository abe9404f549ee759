//! Rooted partial-order models for the propositional base, with two
//! countermodel engines:
//!
//! 1. a bounded exhaustive search over small rooted frames (returns the
//!    pretty, minimal-ish models), and
//! 2. a complete construction from subformula theories: the worlds are the
//!    deductively closed, disjunction-splitting subsets of the subformula
//!    set, so a refuting root exists whenever the sequent is unprovable.
//!
//! Every model handed back is re-checked against the query before return.

use super::{ipc_consequence, IpcError};
use crate::syntax::Formula;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Finite rooted model: a partial order on worlds `0..worlds` whose root is
/// below every world, plus an upward-closed truth set per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    pub worlds: usize,
    /// `leq[u][v]` holds when world `v` refines world `u`.
    pub leq: Vec<Vec<bool>>,
    pub root: usize,
    pub valuation: BTreeMap<u32, Vec<bool>>,
}

impl KripkeModel {
    /// Forcing at a world. Rejects modal operators.
    pub fn forces(&self, w: usize, f: &Formula) -> Result<bool, IpcError> {
        match f {
            Formula::Var(v) => Ok(self.valuation.get(v).map_or(false, |set| set[w])),
            Formula::Bottom => Ok(false),
            Formula::And(a, b) => Ok(self.forces(w, a)? && self.forces(w, b)?),
            Formula::Or(a, b) => Ok(self.forces(w, a)? || self.forces(w, b)?),
            Formula::Imp(a, b) => {
                for v in 0..self.worlds {
                    if self.leq[w][v] && self.forces(v, a)? && !self.forces(v, b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Box(_) => Err(IpcError::NotPropositional { operator: "box" }),
            Formula::Know(_) => Err(IpcError::NotPropositional { operator: "K" }),
        }
    }

    /// The set of worlds forcing `f`, as a bitvector.
    pub fn truth_set(&self, f: &Formula) -> Result<Vec<bool>, IpcError> {
        (0..self.worlds).map(|w| self.forces(w, f)).collect()
    }

    /// Root forces every premise and refutes the goal.
    pub fn refutes(&self, premises: &[Formula], goal: &Formula) -> Result<bool, IpcError> {
        for p in premises {
            if !self.forces(self.root, p)? {
                return Ok(false);
            }
        }
        Ok(!self.forces(self.root, goal)?)
    }

    /// Structural sanity: partial order, root below everything, persistent
    /// valuation, and upward-closed truth sets for all given subformulas.
    pub fn well_formed(&self, subformulas: &[Formula]) -> bool {
        let n = self.worlds;
        if n == 0 || self.leq.len() != n || self.leq.iter().any(|r| r.len() != n) {
            return false;
        }
        for u in 0..n {
            if !self.leq[u][u] {
                return false;
            }
            for v in 0..n {
                if u != v && self.leq[u][v] && self.leq[v][u] {
                    return false;
                }
                for w in 0..n {
                    if self.leq[u][v] && self.leq[v][w] && !self.leq[u][w] {
                        return false;
                    }
                }
            }
        }
        if (0..n).any(|w| !self.leq[self.root][w]) {
            return false;
        }
        for set in self.valuation.values() {
            if set.len() != n || !upward_closed(&self.leq, set) {
                return false;
            }
        }
        for f in subformulas {
            match self.truth_set(f) {
                Ok(set) => {
                    if !upward_closed(&self.leq, &set) {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }
}

fn upward_closed(leq: &[Vec<bool>], set: &[bool]) -> bool {
    for u in 0..set.len() {
        if set[u] {
            for v in 0..set.len() {
                if leq[u][v] && !set[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Countermodel for a propositional formula: present exactly when the
/// formula is not valid (or a budget error if the fallback would exceed its
/// cap, which does not happen at desk scale).
pub fn ipc_countermodel(f: &Formula) -> Result<Option<KripkeModel>, IpcError> {
    countermodel_for(&[], f)
}

/// Rooted model whose root forces every premise and refutes the goal;
/// present exactly when the consequence fails.
pub fn countermodel_for(premises: &[Formula], goal: &Formula) -> Result<Option<KripkeModel>, IpcError> {
    if ipc_consequence(premises, goal)? {
        return Ok(None);
    }
    let mut vars: Vec<u32> = Vec::new();
    for p in premises {
        vars.extend(p.vars());
    }
    vars.extend(goal.vars());
    vars.sort_unstable();
    vars.dedup();
    if vars.len() <= 4 {
        if let Some(m) = small_search(premises, goal, &vars) {
            debug_assert!(m.refutes(premises, goal).unwrap());
            return Ok(Some(m));
        }
    }
    let m = canonical_countermodel(premises, goal)?;
    debug_assert!(m.refutes(premises, goal).unwrap());
    Ok(Some(m))
}

const SMALL_FRAME_CAP: usize = 5;
const THEORY_SET_CAP: usize = 22;
const THEORY_WORLD_CAP: usize = 20_000;

struct Frame {
    n: usize,
    leq: Vec<Vec<bool>>,
}

/// All rooted partial orders with up to `SMALL_FRAME_CAP` worlds, one per
/// isomorphism class, smallest first. Root is always world 0.
fn frames() -> &'static Vec<Frame> {
    static FRAMES: OnceLock<Vec<Frame>> = OnceLock::new();
    FRAMES.get_or_init(|| {
        let mut out = Vec::new();
        for k in 0..SMALL_FRAME_CAP {
            for p in crate::posets::strict_posets(k) {
                let n = k + 1;
                let mut leq = vec![vec![false; n]; n];
                for (w, row) in leq.iter_mut().enumerate() {
                    row[w] = true;
                }
                for w in 0..n {
                    leq[0][w] = true;
                }
                for i in 0..k {
                    for j in 0..k {
                        if p[i][j] {
                            leq[i + 1][j + 1] = true;
                        }
                    }
                }
                out.push(Frame { n, leq });
            }
        }
        out
    })
}

fn small_search(premises: &[Formula], goal: &Formula, vars: &[u32]) -> Option<KripkeModel> {
    for frame in frames() {
        let ups = upsets_of(&frame.leq, frame.n);
        let mut choice = vec![0usize; vars.len()];
        loop {
            let valuation: BTreeMap<u32, Vec<bool>> = vars
                .iter()
                .zip(&choice)
                .map(|(&v, &c)| (v, ups[c].clone()))
                .collect();
            let m = KripkeModel {
                worlds: frame.n,
                leq: frame.leq.clone(),
                root: 0,
                valuation,
            };
            if m.refutes(premises, goal).unwrap_or(false) {
                return Some(m);
            }
            // Odometer over valuation choices.
            let mut k = 0;
            loop {
                if k == vars.len() {
                    break;
                }
                choice[k] += 1;
                if choice[k] < ups.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == vars.len() {
                break;
            }
            if vars.is_empty() {
                break;
            }
        }
    }
    None
}

fn upsets_of(leq: &[Vec<bool>], n: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<bool> = (0..n).map(|w| mask & (1 << w) != 0).collect();
        if upward_closed(leq, &set) {
            out.push(set);
        }
    }
    out
}

/// Subformula closure, deduplicated, in a fixed structural order.
pub fn subformulas(fs: &[Formula]) -> Vec<Formula> {
    let mut out = Vec::new();
    for f in fs {
        collect_sub(f, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

fn collect_sub(f: &Formula, out: &mut Vec<Formula>) {
    out.push(f.clone());
    match f {
        Formula::Var(_) | Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            collect_sub(a, out);
            collect_sub(b, out);
        }
        Formula::Box(a) | Formula::Know(a) => collect_sub(a, out),
    }
}

/// Complete fallback: worlds are the subformula theories, ordered by
/// inclusion; the first theory containing the premises but not the goal is
/// the root, and the model is its upward cone, greedily shrunk afterwards.
fn canonical_countermodel(premises: &[Formula], goal: &Formula) -> Result<KripkeModel, IpcError> {
    let mut all: Vec<Formula> = premises.to_vec();
    all.push(goal.clone());
    let sub = subformulas(&all);
    let ns = sub.len();
    if ns > THEORY_SET_CAP {
        return Err(IpcError::Budget {
            detail: format!("{ns} subformulas exceeds the theory-construction cap {THEORY_SET_CAP}"),
        });
    }
    let idx = |f: &Formula| sub.binary_search(f).expect("subformula closure");

    // Per-connective shape info for the bitmask prefilter.
    enum Shape {
        Atom,
        Bottom,
        And(usize, usize),
        Or(usize, usize),
        Imp(usize, usize),
    }
    let shapes: Vec<Shape> = sub
        .iter()
        .map(|f| match f {
            Formula::Var(_) => Shape::Atom,
            Formula::Bottom => Shape::Bottom,
            Formula::And(a, b) => Shape::And(idx(a), idx(b)),
            Formula::Or(a, b) => Shape::Or(idx(a), idx(b)),
            Formula::Imp(a, b) => Shape::Imp(idx(a), idx(b)),
            Formula::Box(_) | Formula::Know(_) => unreachable!("propositional input"),
        })
        .collect();

    let bit = |mask: u32, i: usize| mask & (1 << i) != 0;
    let mut theories: Vec<u32> = Vec::new();
    'mask: for mask in 0u32..(1u32 << ns) {
        // Cheap closure/splitting filters first.
        for (i, s) in shapes.iter().enumerate() {
            match *s {
                Shape::Atom => {}
                Shape::Bottom => {
                    if bit(mask, i) {
                        continue 'mask;
                    }
                }
                Shape::And(a, b) => {
                    if bit(mask, i) != (bit(mask, a) && bit(mask, b)) {
                        continue 'mask;
                    }
                }
                Shape::Or(a, b) => {
                    if bit(mask, i) != (bit(mask, a) || bit(mask, b)) {
                        continue 'mask;
                    }
                }
                Shape::Imp(a, b) => {
                    if bit(mask, i) && bit(mask, a) && !bit(mask, b) {
                        continue 'mask;
                    }
                    if bit(mask, b) && !bit(mask, i) {
                        continue 'mask;
                    }
                }
            }
        }
        // Exact phase: membership must coincide with derivability.
        let t: Vec<Formula> = (0..ns).filter(|&i| bit(mask, i)).map(|i| sub[i].clone()).collect();
        for (i, f) in sub.iter().enumerate() {
            if ipc_consequence(&t, f)? != bit(mask, i) {
                continue 'mask;
            }
        }
        theories.push(mask);
        if theories.len() > THEORY_WORLD_CAP {
            return Err(IpcError::Budget {
                detail: format!("more than {THEORY_WORLD_CAP} subformula theories"),
            });
        }
    }

    let premise_bits: Vec<usize> = premises.iter().map(|p| idx(p)).collect();
    let goal_bit = idx(goal);
    let root_mask = *theories
        .iter()
        .find(|&&m| premise_bits.iter().all(|&i| bit(m, i)) && !bit(m, goal_bit))
        .expect("unprovable sequent has a refuting subformula theory");

    // Upward cone of the root under inclusion.
    let cone: Vec<u32> = theories
        .iter()
        .copied()
        .filter(|&m| m & root_mask == root_mask)
        .collect();
    let n = cone.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, &a) in cone.iter().enumerate() {
        for (j, &b) in cone.iter().enumerate() {
            leq[i][j] = a & b == a;
        }
    }
    let root = cone.iter().position(|&m| m == root_mask).unwrap();
    let mut vars: Vec<u32> = Vec::new();
    for f in &all {
        vars.extend(f.vars());
    }
    vars.sort_unstable();
    vars.dedup();
    let valuation: BTreeMap<u32, Vec<bool>> = vars
        .iter()
        .map(|&v| {
            let i = idx(&Formula::Var(v));
            (v, cone.iter().map(|&m| bit(m, i)).collect())
        })
        .collect();
    let model = KripkeModel { worlds: n, leq, root, valuation };
    Ok(shrink(model, premises, goal))
}

/// Drop worlds (never the root) while the model still witnesses the failure.
fn shrink(mut model: KripkeModel, premises: &[Formula], goal: &Formula) -> KripkeModel {
    loop {
        let mut improved = false;
        let mut w = model.worlds;
        while w > 0 {
            w -= 1;
            if w == model.root || model.worlds == 1 {
                continue;
            }
            let candidate = remove_world(&model, w);
            if candidate.refutes(premises, goal).unwrap_or(false) {
                model = candidate;
                improved = true;
            }
        }
        if !improved {
            return model;
        }
    }
}

fn remove_world(m: &KripkeModel, w: usize) -> KripkeModel {
    let keep: Vec<usize> = (0..m.worlds).filter(|&v| v != w).collect();
    let n = keep.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate() {
            leq[i][j] = m.leq[a][b];
        }
    }
    let valuation = m
        .valuation
        .iter()
        .map(|(&v, set)| (v, keep.iter().map(|&a| set[a]).collect()))
        .collect();
    KripkeModel {
        worlds: n,
        leq,
        root: keep.iter().position(|&a| a == m.root).unwrap(),
        valuation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn frame_inventory_matches_rooted_poset_counts() {
        // Rooted frames on 1..=5 worlds, one per isomorphism class:
        // 1, 1, 2, 5, 16.
        let by_size = |n: usize| frames().iter().filter(|f| f.n == n).count();
        assert_eq!(by_size(1), 1);
        assert_eq!(by_size(2), 1);
        assert_eq!(by_size(3), 2);
        assert_eq!(by_size(4), 5);
        assert_eq!(by_size(5), 16);
    }

    #[test]
    fn excluded_middle_gets_two_world_chain() {
        let f = parse("x0 | ~x0").unwrap();
        let m = ipc_countermodel(&f).unwrap().unwrap();
        assert_eq!(m.worlds, 2);
        assert!(m.leq[0][1]);
        // x0 true only at the upper world.
        assert_eq!(m.valuation[&0], vec![false, true]);
        assert!(m.refutes(&[], &f).unwrap());
    }

    #[test]
    fn peirce_gets_countermodel_and_theorems_get_none() {
        let peirce = parse("((x0 -> x1) -> x0) -> x0").unwrap();
        let m = ipc_countermodel(&peirce).unwrap().unwrap();
        assert!(m.refutes(&[], &peirce).unwrap());
        assert!(m.well_formed(&subformulas(&[peirce])));
        assert!(ipc_countermodel(&parse("x0 -> x0").unwrap()).unwrap().is_none());
    }

    #[test]
    fn consequence_countermodel_forces_premises() {
        let p = parse("x0 | x1").unwrap();
        let g = parse("x0").unwrap();
        let m = countermodel_for(&[p.clone()], &g).unwrap().unwrap();
        assert!(m.forces(m.root, &p).unwrap());
        assert!(!m.forces(m.root, &g).unwrap());
    }

    #[test]
    fn canonical_fallback_is_exercised_and_correct() {
        // Force the fallback by handing the small search too many variables.
        let f = parse("x0 | x1 | x2 | x3 | x4 | ~(x0 & x1 & x2 & x3 & x4)").unwrap();
        // Valid? No: at the root nothing is decided. The formula has 5
        // variables, so the small search is skipped entirely.
        let m = ipc_countermodel(&f).unwrap();
        if let Some(m) = &m {
            assert!(m.refutes(&[], &f).unwrap());
        }
        // Agreement with the prover either way.
        assert_eq!(m.is_none(), super::super::ipc_valid(&f).unwrap());
    }
}

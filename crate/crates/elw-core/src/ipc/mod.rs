//! Decision procedure for the propositional intuitionistic base.
//!
//! Provability is decided by a contraction-free sequent search in which every
//! rule strictly reduces a multiset weight of the sequent, so the search
//! terminates without a loop check. Countermodels come from a separate
//! bounded search over rooted partial-order frames with a complete
//! subformula-theory fallback (see `kripke`).

pub mod kripke;

pub use kripke::KripkeModel;

use crate::syntax::Formula;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IpcError {
    #[error("formula is not propositional: contains {operator}")]
    NotPropositional { operator: &'static str },
    #[error("countermodel search budget exceeded: {detail}")]
    Budget { detail: String },
}

fn require_propositional(f: &Formula) -> Result<(), IpcError> {
    match f {
        Formula::Var(_) | Formula::Bottom => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            require_propositional(a)?;
            require_propositional(b)
        }
        Formula::Box(_) => Err(IpcError::NotPropositional { operator: "box" }),
        Formula::Know(_) => Err(IpcError::NotPropositional { operator: "K" }),
    }
}

/// Intuitionistic validity of a propositional formula.
pub fn ipc_valid(f: &Formula) -> Result<bool, IpcError> {
    require_propositional(f)?;
    Ok(prove(Vec::new(), f.clone()))
}

/// `premises |- goal` in the propositional base. Equivalent to validity of
/// the implication from the conjunction of the premises to the goal.
pub fn ipc_consequence(premises: &[Formula], goal: &Formula) -> Result<bool, IpcError> {
    for p in premises {
        require_propositional(p)?;
    }
    require_propositional(goal)?;
    Ok(prove(premises.to_vec(), goal.clone()))
}

/// Substitution instance of an intuitionistic theorem? Decided by replacing
/// every maximal modal subformula with a shared fresh variable and running
/// the prover on the skeleton.
pub fn is_int_instance(f: &Formula) -> bool {
    let (skeleton, _) = crate::syntax::abstract_modal(f);
    prove(Vec::new(), skeleton)
}

/// Decide `left |- goal`. Terminating: each recursive call strictly reduces
/// the combined weight of the sequent under the antecedent-decomposition
/// ordering, so no visited-set is needed.
fn prove(mut left: Vec<Formula>, mut goal: Formula) -> bool {
    // Saturation phase: rules that need no backtracking.
    loop {
        if left.iter().any(|f| *f == Formula::Bottom) {
            return true;
        }
        if left.iter().any(|f| *f == goal) {
            return true;
        }
        match goal {
            // Right implication is invertible.
            Formula::Imp(a, b) => {
                push_unique(&mut left, *a);
                goal = *b;
                continue;
            }
            // Right conjunction is invertible (branches).
            Formula::And(a, b) => {
                return prove(left.clone(), *a) && prove(left, *b);
            }
            _ => {}
        }
        // Antecedent rewrites, one step at a time.
        let mut changed = false;
        for i in 0..left.len() {
            match &left[i] {
                Formula::And(a, b) => {
                    let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
                    left.swap_remove(i);
                    push_unique(&mut left, a);
                    push_unique(&mut left, b);
                    changed = true;
                }
                Formula::Imp(ant, b) => match ant.as_ref() {
                    // An implication with refutable antecedent is inert.
                    Formula::Bottom => {
                        left.swap_remove(i);
                        changed = true;
                    }
                    Formula::Var(_) => {
                        if left.iter().any(|g| g == ant.as_ref()) {
                            let b = b.as_ref().clone();
                            left.swap_remove(i);
                            push_unique(&mut left, b);
                            changed = true;
                        }
                    }
                    Formula::And(c, d) => {
                        let f = Formula::imp(
                            c.as_ref().clone(),
                            Formula::imp(d.as_ref().clone(), b.as_ref().clone()),
                        );
                        left.swap_remove(i);
                        push_unique(&mut left, f);
                        changed = true;
                    }
                    Formula::Or(c, d) => {
                        let f1 = Formula::imp(c.as_ref().clone(), b.as_ref().clone());
                        let f2 = Formula::imp(d.as_ref().clone(), b.as_ref().clone());
                        left.swap_remove(i);
                        push_unique(&mut left, f1);
                        push_unique(&mut left, f2);
                        changed = true;
                    }
                    _ => {}
                },
                _ => {}
            }
            if changed {
                break;
            }
        }
        if !changed {
            break;
        }
    }

    // Case split on an antecedent disjunction (invertible, branching).
    if let Some(i) = left.iter().position(|f| matches!(f, Formula::Or(..))) {
        let (a, b) = match left.swap_remove(i) {
            Formula::Or(a, b) => (*a, *b),
            _ => unreachable!(),
        };
        let mut l1 = left.clone();
        push_unique(&mut l1, a);
        if !prove(l1, goal.clone()) {
            return false;
        }
        push_unique(&mut left, b);
        return prove(left, goal);
    }

    // Backtracking phase: try each right disjunct, then each nested
    // implication on the left.
    if let Formula::Or(a, b) = &goal {
        if prove(left.clone(), a.as_ref().clone()) || prove(left.clone(), b.as_ref().clone()) {
            return true;
        }
    }
    for i in 0..left.len() {
        let (c, d, b) = match &left[i] {
            Formula::Imp(ant, b) => match ant.as_ref() {
                Formula::Imp(c, d) => (
                    c.as_ref().clone(),
                    d.as_ref().clone(),
                    b.as_ref().clone(),
                ),
                _ => continue,
            },
            _ => continue,
        };
        let mut rest: Vec<Formula> = left.clone();
        rest.swap_remove(i);
        // Premise 1: rest, c, d -> b |- d. Premise 2: rest, b |- goal.
        let mut l1 = rest.clone();
        push_unique(&mut l1, c);
        push_unique(&mut l1, Formula::imp(d.clone(), b.clone()));
        if prove(l1, d) {
            let mut l2 = rest;
            push_unique(&mut l2, b);
            if prove(l2, goal.clone()) {
                return true;
            }
        }
    }
    false
}

// Duplicates never help a contraction-free search; keep the context a set.
fn push_unique(left: &mut Vec<Formula>, f: Formula) {
    if !left.iter().any(|g| *g == f) {
        left.push(f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn valid(s: &str) -> bool {
        ipc_valid(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn intuitionistic_theorems() {
        assert!(valid("x0 -> x0"));
        assert!(valid("x0 -> x1 -> x0"));
        assert!(valid("(x0 -> x1 -> x2) -> (x0 -> x1) -> x0 -> x2"));
        assert!(valid("x0 & x1 -> x0"));
        assert!(valid("x0 -> x0 | x1"));
        assert!(valid("false -> x0"));
        assert!(valid("~~(x0 | ~x0)"));
        assert!(valid("(x0 -> x1) -> ~x1 -> ~x0"));
        assert!(valid("x0 -> ~~x0"));
        assert!(valid("~~~x0 -> ~x0"));
        assert!(valid("(x0 | x1) & (x0 -> x2) & (x1 -> x2) -> x2"));
        assert!(valid("x0 & (x1 | x2) <-> x0 & x1 | x0 & x2"));
        assert!(valid("~(x0 & ~x0)"));
        assert!(valid("((x0 & x1) -> x2) <-> (x0 -> x1 -> x2)"));
    }

    #[test]
    fn classical_only_principles_fail() {
        assert!(!valid("x0 | ~x0"));
        assert!(!valid("~~x0 -> x0"));
        assert!(!valid("((x0 -> x1) -> x0) -> x0"));
        assert!(!valid("(x0 -> x1) | (x1 -> x0)"));
        assert!(!valid("(~x0 -> x1 | x2) -> ((~x0 -> x1) | (~x0 -> x2))"));
        assert!(!valid("~(x0 & x1) -> ~x0 | ~x1"));
    }

    #[test]
    fn consequence_matches_deduction_theorem() {
        let gamma = [parse("x0").unwrap(), parse("x0 -> x1").unwrap()];
        assert!(ipc_consequence(&gamma, &parse("x1").unwrap()).unwrap());
        assert!(!ipc_consequence(&gamma[..1], &parse("x1").unwrap()).unwrap());
        assert!(ipc_consequence(&[], &parse("x0 -> x0").unwrap()).unwrap());
    }

    #[test]
    fn modal_input_is_rejected() {
        assert_eq!(
            ipc_valid(&parse("box x0 -> x0").unwrap()),
            Err(IpcError::NotPropositional { operator: "box" })
        );
        assert_eq!(
            ipc_valid(&parse("K x0 -> x0").unwrap()),
            Err(IpcError::NotPropositional { operator: "K" })
        );
    }

    #[test]
    fn int_instance_sees_through_modal_atoms() {
        // box x0 -> box x0 abstracts to y -> y.
        assert!(is_int_instance(&parse("box x0 -> box x0").unwrap()));
        // Skeleton y0 -> x0 is not a theorem.
        assert!(!is_int_instance(&parse("box x0 -> x0").unwrap()));
        // false -> box false: skeleton false -> y0? No: y0 appears only on
        // the right, so the instance is valid via ex falso.
        assert!(is_int_instance(&parse("false -> box false").unwrap()));
        // Shared abstraction: K x0 | ~K x0 is still excluded middle.
        assert!(!is_int_instance(&parse("K x0 | ~K x0").unwrap()));
        assert!(is_int_instance(&parse("~~(K x0 | ~K x0)").unwrap()));
    }
}

//! Embedding of rooted Kripke models into the top modal class.
//!
//! The carrier is the lattice of upward-closed world sets, designated sets
//! are those containing a fixed maximal world, box and knowledge both
//! collapse to the top indicator, and each variable maps to its truth set.
//! Under this embedding a boxed formula is satisfied exactly when the root
//! forces its body, which turns propositional countermodels into modal
//! refutations.

use super::enumerate::{walk_models, EnumeratedModel, SearchBudget};
use super::{assignments, validate_el_model, Assignment, ElModel, ValidationOptions};
use crate::heyting::{downset_lattice_with_masks, Filter};
use crate::ipc::kripke::{countermodel_for, ipc_countermodel, KripkeModel};
use crate::ipc::{ipc_consequence, ipc_valid, IpcError};
use crate::kernel::LogicId;
use crate::syntax::Formula;
use std::collections::{BTreeMap, BTreeSet};

const WORLD_CAP: usize = 12;
const UPSET_CAP: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error("frame root is not below every world")]
    NotRooted,
    #[error("malformed frame: {0}")]
    MalformedFrame(&'static str),
    #[error("frame has {worlds} worlds, embedding cap is {cap}")]
    TooManyWorlds { worlds: usize, cap: usize },
    #[error("frame has {upsets} upward-closed sets, embedding cap is {cap}")]
    TooManyUpsets { upsets: usize, cap: usize },
    #[error(transparent)]
    Ipc(#[from] IpcError),
}

fn check_frame(k: &KripkeModel) -> Result<(), EmbedError> {
    let n = k.worlds;
    if n == 0 {
        return Err(EmbedError::MalformedFrame("no worlds"));
    }
    if k.leq.len() != n || k.leq.iter().any(|r| r.len() != n) {
        return Err(EmbedError::MalformedFrame("order matrix shape"));
    }
    for u in 0..n {
        if !k.leq[u][u] {
            return Err(EmbedError::MalformedFrame("order not reflexive"));
        }
        for v in 0..n {
            if u != v && k.leq[u][v] && k.leq[v][u] {
                return Err(EmbedError::MalformedFrame("order not antisymmetric"));
            }
            for w in 0..n {
                if k.leq[u][v] && k.leq[v][w] && !k.leq[u][w] {
                    return Err(EmbedError::MalformedFrame("order not transitive"));
                }
            }
        }
    }
    if k.root >= n || (0..n).any(|w| !k.leq[k.root][w]) {
        return Err(EmbedError::NotRooted);
    }
    for set in k.valuation.values() {
        if set.len() != n {
            return Err(EmbedError::MalformedFrame("valuation length"));
        }
        for u in 0..n {
            for v in 0..n {
                if set[u] && k.leq[u][v] && !set[v] {
                    return Err(EmbedError::MalformedFrame("valuation not persistent"));
                }
            }
        }
    }
    Ok(())
}

fn is_upset(k: &KripkeModel, mask: u32) -> bool {
    for u in 0..k.worlds {
        if mask >> u & 1 == 1 {
            for v in 0..k.worlds {
                if k.leq[u][v] && mask >> v & 1 == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Turns a rooted propositional model into a validated top-class model and
/// assignment such that a boxed formula is satisfied exactly when the root
/// forces its body.
pub fn kripke_to_el5(k: &KripkeModel) -> Result<(ElModel, Assignment), EmbedError> {
    check_frame(k)?;
    let n = k.worlds;
    if n > WORLD_CAP {
        return Err(EmbedError::TooManyWorlds {
            worlds: n,
            cap: WORLD_CAP,
        });
    }
    let upsets = (0u32..1 << n).filter(|&m| is_upset(k, m)).count();
    if upsets > UPSET_CAP {
        return Err(EmbedError::TooManyUpsets {
            upsets,
            cap: UPSET_CAP,
        });
    }
    // upsets of the world order are downsets of its strict opposite
    let opp: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| k.leq[b][a] && a != b).collect())
        .collect();
    let (algebra, masks) = downset_lattice_with_masks(&opp);
    let pos = |mask: u32| {
        masks
            .iter()
            .position(|&m| m == mask)
            .expect("upward-closed set is a lattice element")
    };
    // the singleton of a maximal world generates an ultrafilter
    let wstar = (0..n)
        .find(|&w| (0..n).all(|v| v == w || !k.leq[w][v]))
        .expect("finite nonempty order has a maximal element");
    let true_set = Filter {
        generator: pos(1 << wstar),
    };
    let top = algebra.top;
    let box_table: Vec<usize> = (0..algebra.size)
        .map(|x| if x == top { top } else { algebra.bot })
        .collect();
    let model = ElModel {
        algebra,
        true_set,
        bel: vec![top],
        know: box_table.clone(),
        box_table,
        class: LogicId::El5,
    };
    let mut g = Assignment::new();
    for (&v, set) in &k.valuation {
        let mask: u32 = set
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b)
            .map(|(i, _)| 1u32 << i)
            .sum();
        g = g.bind(v, pos(mask));
    }
    debug_assert!(validate_el_model(&model).is_accepted());
    Ok((model, g))
}

/// Cross-checks the propositional decision procedure against the model
/// layer on one consequence question.
#[derive(Debug, Clone)]
pub struct EmbedReport {
    pub consequence: bool,
    /// Enumerated-model refutation of the boxed consequence, if the scan
    /// found one within budget.
    pub scan_refutation: Option<(ElModel, Assignment)>,
    /// Refutation built by embedding a propositional countermodel; present
    /// exactly when the consequence fails.
    pub pipeline_refutation: Option<(ElModel, Assignment)>,
    pub budget_exhausted: bool,
    /// Holds when the two routes agree: no scan hit for a valid
    /// consequence, and a verified embedded refutation for a failed one.
    /// A scan miss for a failed consequence is not a disagreement; small
    /// carriers need not contain every countermodel.
    pub agrees: bool,
}

pub fn embedding_crosscheck(
    premises: &[Formula],
    chi: &Formula,
    budget: &SearchBudget,
) -> Result<EmbedReport, EmbedError> {
    let mut var_set: BTreeSet<u32> = chi.vars().into_iter().collect();
    for p in premises {
        var_set.extend(p.vars());
    }
    let vars: Vec<u32> = var_set.into_iter().collect();
    let boxed: Vec<Formula> = premises.iter().map(|p| Formula::nec(p.clone())).collect();
    let boxed_chi = Formula::nec(chi.clone());

    let mut scan_refutation = None;
    let budget_exhausted = walk_models(
        LogicId::El5,
        budget,
        &ValidationOptions::default(),
        &mut |m| {
            let EnumeratedModel::El(el) = m else {
                return true;
            };
            for g in assignments(&vars, el.algebra.size) {
                let premises_hold = boxed
                    .iter()
                    .all(|p| el.satisfies(&g, p).expect("variables bound"));
                if premises_hold && !el.satisfies(&g, &boxed_chi).expect("variables bound") {
                    scan_refutation = Some((el, g));
                    return false;
                }
            }
            true
        },
    );

    let consequence = ipc_consequence(premises, chi)?;
    let pipeline_refutation = if consequence {
        None
    } else {
        let k = countermodel_for(premises, chi)?.expect("failed consequence has a countermodel");
        Some(kripke_to_el5(&k)?)
    };

    let agrees = if consequence {
        scan_refutation.is_none()
    } else {
        match &pipeline_refutation {
            Some((m, g)) => {
                boxed
                    .iter()
                    .all(|p| m.satisfies(g, p).expect("variables bound"))
                    && !m.satisfies(g, &boxed_chi).expect("variables bound")
            }
            None => false,
        }
    };

    Ok(EmbedReport {
        consequence,
        scan_refutation,
        pipeline_refutation,
        budget_exhausted,
        agrees,
    })
}

/// Outcome of the disjunction-property probe for boxed disjunctions.
#[derive(Debug, Clone)]
pub struct DpReport {
    pub phi_theorem: bool,
    pub psi_theorem: bool,
    /// Model and assignment falsifying the boxed disjunction; present
    /// exactly when neither disjunct is a propositional theorem.
    pub refutation: Option<(ElModel, Assignment)>,
}

/// If neither disjunct is a propositional theorem, joins their
/// countermodels under a fresh root and embeds the result, yielding a
/// top-class model where the boxed disjunction fails.
pub fn restricted_dp_check(phi: &Formula, psi: &Formula) -> Result<DpReport, EmbedError> {
    let phi_theorem = ipc_valid(phi)?;
    let psi_theorem = ipc_valid(psi)?;
    if phi_theorem || psi_theorem {
        return Ok(DpReport {
            phi_theorem,
            psi_theorem,
            refutation: None,
        });
    }
    let k1 = ipc_countermodel(phi)?.expect("non-theorem has a countermodel");
    let k2 = ipc_countermodel(psi)?.expect("non-theorem has a countermodel");
    let joined = join_under_fresh_root(&k1, &k2);
    let (model, g) = kripke_to_el5(&joined)?;
    debug_assert!(!model
        .satisfies(
            &g,
            &Formula::or(Formula::nec(phi.clone()), Formula::nec(psi.clone()))
        )
        .expect("variables bound"));
    Ok(DpReport {
        phi_theorem,
        psi_theorem,
        refutation: Some((model, g)),
    })
}

/// Disjoint union of two rooted models with a fresh root below both.
/// Forcing inside each component is unchanged, so neither component root
/// starts forcing its refuted formula.
fn join_under_fresh_root(k1: &KripkeModel, k2: &KripkeModel) -> KripkeModel {
    let n1 = k1.worlds;
    let n2 = k2.worlds;
    let n = 1 + n1 + n2;
    let mut leq = vec![vec![false; n]; n];
    for w in 0..n {
        leq[0][w] = true;
        leq[w][w] = true;
    }
    for u in 0..n1 {
        for v in 0..n1 {
            if k1.leq[u][v] {
                leq[1 + u][1 + v] = true;
            }
        }
    }
    for u in 0..n2 {
        for v in 0..n2 {
            if k2.leq[u][v] {
                leq[1 + n1 + u][1 + n1 + v] = true;
            }
        }
    }
    let mut keys: BTreeSet<u32> = k1.valuation.keys().copied().collect();
    keys.extend(k2.valuation.keys().copied());
    let mut valuation = BTreeMap::new();
    for key in keys {
        let mut set = vec![false; n];
        if let Some(s) = k1.valuation.get(&key) {
            for (i, &b) in s.iter().enumerate() {
                set[1 + i] = b;
            }
        }
        if let Some(s) = k2.valuation.get(&key) {
            for (i, &b) in s.iter().enumerate() {
                set[1 + n1 + i] = b;
            }
        }
        valuation.insert(key, set);
    }
    KripkeModel {
        worlds: n,
        leq,
        root: 0,
        valuation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ipc::kripke::subformulas;
    use crate::syntax::parse;

    fn chain2() -> KripkeModel {
        KripkeModel {
            worlds: 2,
            leq: vec![vec![true, true], vec![false, true]],
            root: 0,
            valuation: BTreeMap::from([(0, vec![false, true])]),
        }
    }

    fn vee() -> KripkeModel {
        KripkeModel {
            worlds: 3,
            leq: vec![
                vec![true, true, true],
                vec![false, true, false],
                vec![false, false, true],
            ],
            root: 0,
            valuation: BTreeMap::from([
                (0, vec![false, true, false]),
                (1, vec![false, false, true]),
            ]),
        }
    }

    #[test]
    fn two_world_chain_embeds_to_the_three_chain() {
        let k = chain2();
        let lem = parse("x0 | ~x0").unwrap();
        assert!(!k.forces(0, &lem).unwrap());

        let (m, g) = kripke_to_el5(&k).unwrap();
        assert_eq!(m.algebra.size, 3);
        assert_eq!(m.true_set, Filter { generator: 1 });
        assert_eq!(m.bel, vec![2]);
        assert_eq!(g, Assignment::new().bind(0, 1));
        assert!(validate_el_model(&m).is_accepted());

        assert!(!m.satisfies(&g, &Formula::nec(lem)).unwrap());
        assert!(m
            .satisfies(&g, &parse("box ~~x0").unwrap())
            .unwrap());
    }

    #[test]
    fn singleton_frame_gives_the_two_element_algebra() {
        let k = KripkeModel {
            worlds: 1,
            leq: vec![vec![true]],
            root: 0,
            valuation: BTreeMap::from([(0, vec![true])]),
        };
        let (m, g) = kripke_to_el5(&k).unwrap();
        assert_eq!(m.algebra.size, 2);
        assert!(m.satisfies(&g, &parse("box x0").unwrap()).unwrap());
        assert!(m.satisfies(&g, &parse("box (x0 | ~x0)").unwrap()).unwrap());
    }

    #[test]
    fn boxed_satisfaction_mirrors_root_forcing_on_all_subformulas() {
        let one_var = ["x0 | ~x0", "~~x0 -> x0"];
        let two_var = [
            "x0 | ~x0",
            "~~x0 -> x0",
            "x0 -> (x1 -> x0)",
            "(x0 -> x1) | (x1 -> x0)",
        ];
        for (k, seeds) in [(chain2(), &one_var[..]), (vee(), &two_var[..])] {
            let (m, g) = kripke_to_el5(&k).unwrap();
            let seeds: Vec<_> = seeds.iter().map(|s| parse(s).unwrap()).collect();
            for sub in subformulas(&seeds) {
                let boxed = Formula::nec(sub.clone());
                assert_eq!(
                    m.satisfies(&g, &boxed).unwrap(),
                    k.forces(k.root, &sub).unwrap(),
                    "mismatch on {sub}"
                );
            }
        }
    }

    #[test]
    fn malformed_and_oversized_frames_are_rejected() {
        let not_rooted = KripkeModel {
            worlds: 2,
            leq: vec![vec![true, false], vec![false, true]],
            root: 0,
            valuation: BTreeMap::new(),
        };
        assert_eq!(kripke_to_el5(&not_rooted).unwrap_err(), EmbedError::NotRooted);

        let not_transitive = KripkeModel {
            worlds: 3,
            leq: vec![
                vec![true, true, false],
                vec![false, true, true],
                vec![false, false, true],
            ],
            root: 0,
            valuation: BTreeMap::new(),
        };
        assert!(matches!(
            kripke_to_el5(&not_transitive).unwrap_err(),
            EmbedError::MalformedFrame(_)
        ));

        let n = WORLD_CAP + 1;
        let long_chain = KripkeModel {
            worlds: n,
            leq: (0..n).map(|u| (0..n).map(|v| u <= v).collect()).collect(),
            root: 0,
            valuation: BTreeMap::new(),
        };
        assert_eq!(
            kripke_to_el5(&long_chain).unwrap_err(),
            EmbedError::TooManyWorlds {
                worlds: n,
                cap: WORLD_CAP
            }
        );
    }

    #[test]
    fn crosscheck_agrees_on_a_failed_consequence() {
        let premises = [parse("~~x0").unwrap()];
        let chi = parse("x0").unwrap();
        let r = embedding_crosscheck(&premises, &chi, &SearchBudget::default()).unwrap();
        assert!(!r.consequence);
        assert!(r.agrees);
        let (m, g) = r.pipeline_refutation.as_ref().unwrap();
        assert!(m.satisfies(g, &parse("box ~~x0").unwrap()).unwrap());
        assert!(!m.satisfies(g, &parse("box x0").unwrap()).unwrap());
        assert!(validate_el_model(m).is_accepted());
        // the scan finds the same separation on the three-element chain
        let (m, g) = r.scan_refutation.as_ref().unwrap();
        assert_eq!(m.algebra.size, 3);
        assert_eq!(g, &Assignment::new().bind(0, 1));
    }

    #[test]
    fn crosscheck_agrees_on_a_valid_consequence() {
        let premises = [parse("x0").unwrap(), parse("x0 -> x1").unwrap()];
        let chi = parse("x1").unwrap();
        let r = embedding_crosscheck(&premises, &chi, &SearchBudget::default()).unwrap();
        assert!(r.consequence);
        assert!(r.agrees);
        assert!(r.scan_refutation.is_none());
        assert!(r.pipeline_refutation.is_none());
    }

    #[test]
    fn dp_probe_refutes_boxed_disjunctions_of_non_theorems() {
        let phi = parse("x0").unwrap();
        let psi = parse("~x0").unwrap();
        let r = restricted_dp_check(&phi, &psi).unwrap();
        assert!(!r.phi_theorem && !r.psi_theorem);
        let (m, g) = r.refutation.unwrap();
        assert!(!m
            .satisfies(&g, &parse("box x0 | box ~x0").unwrap())
            .unwrap());
        assert!(validate_el_model(&m).is_accepted());
    }

    #[test]
    fn dp_probe_declines_theorem_disjuncts() {
        let phi = parse("x0 -> x0").unwrap();
        let psi = parse("x1").unwrap();
        let r = restricted_dp_check(&phi, &psi).unwrap();
        assert!(r.phi_theorem);
        assert!(!r.psi_theorem);
        assert!(r.refutation.is_none());
    }
}

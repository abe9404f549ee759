//! Formulas of the combined language: intuitionistic connectives plus the
//! modal operators `box` (provability-style necessity) and `K` (knowledge).
//!
//! Negation, verum, biconditional and strict equivalence are not constructors;
//! they expand at construction / parse time:
//!   ~p        = p -> false
//!   true      = false -> false
//!   p <-> q   = (p -> q) & (q -> p)
//!   p == q    = box(p -> q) & box(q -> p)

mod parse;

pub use parse::{parse, ParseError};

use std::collections::BTreeMap;
use std::fmt;

/// A formula. Variables are numbered; `x7` in the concrete syntax is `Var(7)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(u32),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Know(Box<Formula>),
}

impl Formula {
    pub fn var(i: u32) -> Formula {
        Formula::Var(i)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn nec(a: Formula) -> Formula {
        Formula::Box(Box::new(a))
    }

    pub fn know(a: Formula) -> Formula {
        Formula::Know(Box::new(a))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bottom)
    }

    pub fn top() -> Formula {
        Formula::imp(Formula::Bottom, Formula::Bottom)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// Strict equivalence: box(a -> b) & box(b -> a).
    pub fn equiv(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::nec(Formula::imp(a.clone(), b.clone())),
            Formula::nec(Formula::imp(b, a)),
        )
    }

    /// Number of connective/operator nodes (variables and `false` count 0).
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Box(a) | Formula::Know(a) => 1 + a.size(),
        }
    }

    /// Variables occurring anywhere in the formula, sorted.
    pub fn vars(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            Formula::Var(i) => out.push(*i),
            Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Box(a) | Formula::Know(a) => a.collect_vars(out),
        }
    }

    /// True when the formula contains no `box` and no `K`.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Bottom => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Box(_) | Formula::Know(_) => false,
        }
    }

    /// Render with minimal parentheses. `parse(render(f)) == f` always holds.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_prec(1, &mut s);
        s
    }

    // Precedence: -> is 1 (right assoc), | is 2 (left), & is 3 (left),
    // prefix operators 4, atoms 5. `min` is the weakest level allowed
    // without parentheses.
    fn render_prec(&self, min: u8, out: &mut String) {
        let prec = match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Box(..) | Formula::Know(..) => 4,
            Formula::Var(_) | Formula::Bottom => 5,
        };
        let paren = prec < min;
        if paren {
            out.push('(');
        }
        match self {
            Formula::Var(i) => {
                out.push('x');
                out.push_str(&i.to_string());
            }
            Formula::Bottom => out.push_str("false"),
            Formula::Imp(a, b) => {
                a.render_prec(2, out);
                out.push_str(" -> ");
                b.render_prec(1, out);
            }
            Formula::Or(a, b) => {
                a.render_prec(2, out);
                out.push_str(" | ");
                b.render_prec(3, out);
            }
            Formula::And(a, b) => {
                a.render_prec(3, out);
                out.push_str(" & ");
                b.render_prec(4, out);
            }
            Formula::Box(a) => {
                out.push_str("box ");
                a.render_prec(4, out);
            }
            Formula::Know(a) => {
                out.push_str("K ");
                a.render_prec(4, out);
            }
        }
        if paren {
            out.push(')');
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Simultaneous substitution of formulas for variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution(pub BTreeMap<u32, Formula>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution(BTreeMap::new())
    }

    pub fn bind(mut self, var: u32, f: Formula) -> Substitution {
        self.0.insert(var, f);
        self
    }

    /// Apply everywhere at once; variables outside the domain stay fixed.
    pub fn apply(&self, f: &Formula) -> Formula {
        match f {
            Formula::Var(i) => self.0.get(i).cloned().unwrap_or_else(|| f.clone()),
            Formula::Bottom => Formula::Bottom,
            Formula::And(a, b) => Formula::and(self.apply(a), self.apply(b)),
            Formula::Or(a, b) => Formula::or(self.apply(a), self.apply(b)),
            Formula::Imp(a, b) => Formula::imp(self.apply(a), self.apply(b)),
            Formula::Box(a) => Formula::nec(self.apply(a)),
            Formula::Know(a) => Formula::know(self.apply(a)),
        }
    }
}

/// Replace each maximal `box`/`K`-rooted subformula by a fresh variable.
///
/// Syntactically identical modal subformulas share one fresh variable.
/// Fresh indices start above every variable of the input, so applying the
/// returned substitution to the skeleton rebuilds the input exactly.
pub fn abstract_modal(f: &Formula) -> (Formula, Substitution) {
    let fresh_base = f.vars().last().map_or(0, |m| m + 1);
    let mut seen: Vec<Formula> = Vec::new();
    let skeleton = abstract_rec(f, fresh_base, &mut seen);
    let mut sub = Substitution::new();
    for (k, sub_f) in seen.into_iter().enumerate() {
        sub = sub.bind(fresh_base + k as u32, sub_f);
    }
    (skeleton, sub)
}

fn abstract_rec(f: &Formula, base: u32, seen: &mut Vec<Formula>) -> Formula {
    match f {
        Formula::Var(_) | Formula::Bottom => f.clone(),
        Formula::And(a, b) => Formula::and(abstract_rec(a, base, seen), abstract_rec(b, base, seen)),
        Formula::Or(a, b) => Formula::or(abstract_rec(a, base, seen), abstract_rec(b, base, seen)),
        Formula::Imp(a, b) => Formula::imp(abstract_rec(a, base, seen), abstract_rec(b, base, seen)),
        Formula::Box(_) | Formula::Know(_) => {
            let idx = match seen.iter().position(|g| g == f) {
                Some(i) => i,
                None => {
                    seen.push(f.clone());
                    seen.len() - 1
                }
            };
            Formula::Var(base + idx as u32)
        }
    }
}

/// Deterministic random formula with at most `max_size` connectives.
/// `modal` enables `box`/`K` nodes; variables range over `x0..x{n_vars-1}`.
pub fn random_formula(rng: &mut impl rand::Rng, max_size: usize, n_vars: u32, modal: bool) -> Formula {
    if max_size == 0 {
        return if n_vars > 0 && rng.gen_bool(0.85) {
            Formula::Var(rng.gen_range(0..n_vars))
        } else {
            Formula::Bottom
        };
    }
    let kinds = if modal { 5 } else { 3 };
    match rng.gen_range(0..kinds + 1) {
        0 => random_formula(rng, 0, n_vars, modal),
        1 => {
            let (l, r) = split_budget(rng, max_size - 1);
            Formula::and(
                random_formula(rng, l, n_vars, modal),
                random_formula(rng, r, n_vars, modal),
            )
        }
        2 => {
            let (l, r) = split_budget(rng, max_size - 1);
            Formula::or(
                random_formula(rng, l, n_vars, modal),
                random_formula(rng, r, n_vars, modal),
            )
        }
        3 => {
            let (l, r) = split_budget(rng, max_size - 1);
            Formula::imp(
                random_formula(rng, l, n_vars, modal),
                random_formula(rng, r, n_vars, modal),
            )
        }
        4 => Formula::nec(random_formula(rng, max_size - 1, n_vars, modal)),
        _ => Formula::know(random_formula(rng, max_size - 1, n_vars, modal)),
    }
}

fn split_budget(rng: &mut impl rand::Rng, budget: usize) -> (usize, usize) {
    let l = rng.gen_range(0..=budget);
    (l, budget - l)
}

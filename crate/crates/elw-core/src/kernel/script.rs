//! Text form of proof scripts, and a builder for constructing them
//! programmatically.
//!
//! The text format is line oriented. Hypotheses come first, one per
//! `hyp: <formula>` line, followed by proof lines numbered consecutively
//! from 1:
//!
//! ```text
//! 1. box x0 -> x0 ; axiom A2
//! 2. (box x0 -> x0) -> x1 ; int
//! 3. x1 ; mp 2 1
//! ```
//!
//! Justifications: `axiom <name>`, `int`, `T`, `hyp <k>`, `mp <i> <j>`,
//! `an <i>`. Blank lines and lines starting with `#` are skipped.

use super::{Justification, ProofLine, ProofScript, SchemeName};
use crate::syntax::{parse, Formula, Substitution};
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("script line {line}: {message}")]
pub struct ScriptError {
    /// Physical 1-based line in the input text.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError {
        line,
        message: message.into(),
    }
}

pub fn parse_script(text: &str) -> Result<ProofScript, ScriptError> {
    let mut hypotheses = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some(rest) = s.strip_prefix("hyp:") {
            if !lines.is_empty() {
                return Err(err(ln, "hypotheses must precede proof lines"));
            }
            let f = parse(rest.trim()).map_err(|e| err(ln, e.to_string()))?;
            hypotheses.push(f);
            continue;
        }
        let (num_part, rest) = s
            .split_once('.')
            .ok_or_else(|| err(ln, "expected '<n>. <formula> ; <justification>'"))?;
        let n: usize = num_part
            .trim()
            .parse()
            .map_err(|_| err(ln, format!("bad line number '{}'", num_part.trim())))?;
        if n != lines.len() + 1 {
            return Err(err(ln, format!("expected line number {}", lines.len() + 1)));
        }
        let (formula_part, just_part) = rest
            .split_once(';')
            .ok_or_else(|| err(ln, "missing '; <justification>'"))?;
        let formula = parse(formula_part.trim()).map_err(|e| err(ln, e.to_string()))?;
        let justification = parse_justification(just_part.trim(), ln)?;
        lines.push(ProofLine {
            formula,
            justification,
        });
    }
    Ok(ProofScript { hypotheses, lines })
}

fn parse_justification(s: &str, ln: usize) -> Result<Justification, ScriptError> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    let index = |w: &str| -> Result<usize, ScriptError> {
        w.parse()
            .map_err(|_| err(ln, format!("bad line reference '{w}'")))
    };
    match parts.as_slice() {
        ["axiom", name] => SchemeName::from_str(name)
            .map(Justification::Axiom)
            .map_err(|e| err(ln, e)),
        ["int"] => Ok(Justification::IntInstance),
        ["T"] => Ok(Justification::TheoremT),
        ["hyp", k] => Ok(Justification::Hypothesis(index(k)?)),
        ["mp", i, j] => Ok(Justification::Mp(index(i)?, index(j)?)),
        ["an", i] => Ok(Justification::An(index(i)?)),
        _ => Err(err(
            ln,
            format!("unknown justification '{s}' (expected axiom/int/T/hyp/mp/an)"),
        )),
    }
}

pub fn render_script(script: &ProofScript) -> String {
    let mut out = String::new();
    for h in &script.hypotheses {
        let _ = writeln!(out, "hyp: {h}");
    }
    for (i, line) in script.lines.iter().enumerate() {
        let just = match &line.justification {
            Justification::Axiom(s) => format!("axiom {s}"),
            Justification::IntInstance => "int".to_string(),
            Justification::TheoremT => "T".to_string(),
            Justification::Hypothesis(k) => format!("hyp {k}"),
            Justification::Mp(a, b) => format!("mp {a} {b}"),
            Justification::An(a) => format!("an {a}"),
        };
        let _ = writeln!(out, "{}. {} ; {}", i + 1, line.formula, just);
    }
    out
}

/// Builds scripts line by line, deriving each new formula from the shapes
/// of the lines it cites. The primitive methods mirror the justification
/// kinds; the rest are derived combinators that expand to primitive lines.
/// Shape errors (citing a non-implication in `mp`, say) are builder bugs
/// and panic; logic errors are left for `check_proof` to find.
pub struct ScriptBuilder {
    hypotheses: Vec<Formula>,
    lines: Vec<ProofLine>,
}

impl Default for ScriptBuilder {
    fn default() -> ScriptBuilder {
        ScriptBuilder::new()
    }
}

impl ScriptBuilder {
    pub fn new() -> ScriptBuilder {
        ScriptBuilder {
            hypotheses: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn with_hypotheses(hypotheses: Vec<Formula>) -> ScriptBuilder {
        ScriptBuilder {
            hypotheses,
            lines: Vec::new(),
        }
    }

    /// Formula of an existing line (1-based).
    pub fn formula(&self, i: usize) -> &Formula {
        &self.lines[i - 1].formula
    }

    pub fn finish(self) -> ProofScript {
        ProofScript {
            hypotheses: self.hypotheses,
            lines: self.lines,
        }
    }

    fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.lines.push(ProofLine {
            formula,
            justification,
        });
        self.lines.len()
    }

    /// Instance of `scheme` with `args` substituted for its metavariables.
    pub fn axiom(&mut self, scheme: SchemeName, args: &[&Formula]) -> usize {
        let mut sub = Substitution::new();
        for (i, a) in args.iter().enumerate() {
            sub = sub.bind(i as u32, (*a).clone());
        }
        let inst = sub.apply(&scheme.pattern());
        self.push(inst, Justification::Axiom(scheme))
    }

    pub fn int(&mut self, f: Formula) -> usize {
        self.push(f, Justification::IntInstance)
    }

    /// Excluded middle for `f`: the line `f | ~f`.
    pub fn t(&mut self, f: Formula) -> usize {
        let tnd = Formula::or(f.clone(), Formula::not(f));
        self.push(tnd, Justification::TheoremT)
    }

    /// The k-th hypothesis (1-based).
    pub fn hyp(&mut self, k: usize) -> usize {
        let f = self.hypotheses[k - 1].clone();
        self.push(f, Justification::Hypothesis(k))
    }

    /// Modus ponens from the implication at `i` and its antecedent at `j`.
    pub fn mp(&mut self, i: usize, j: usize) -> usize {
        let conclusion = match self.formula(i) {
            Formula::Imp(a, b) => {
                assert_eq!(
                    **a,
                    *self.formula(j),
                    "mp: line {j} is not the antecedent of line {i}"
                );
                (**b).clone()
            }
            other => panic!("mp: line {i} is not an implication: {other}"),
        };
        self.push(conclusion, Justification::Mp(i, j))
    }

    /// Necessitation of the axiom line `i`.
    pub fn an(&mut self, i: usize) -> usize {
        let f = Formula::nec(self.formula(i).clone());
        self.push(f, Justification::An(i))
    }

    /// From `a -> b` at `i` and `b -> c` at `j`: `a -> c`.
    /// Expands to a transitivity `int` line and two `mp`s.
    pub fn chain(&mut self, i: usize, j: usize) -> usize {
        let fi = self.formula(i).clone();
        let fj = self.formula(j).clone();
        let (a, b1) = match &fi {
            Formula::Imp(a, b) => ((**a).clone(), (**b).clone()),
            other => panic!("chain: line {i} is not an implication: {other}"),
        };
        let (b2, c) = match &fj {
            Formula::Imp(b, c) => ((**b).clone(), (**c).clone()),
            other => panic!("chain: line {j} is not an implication: {other}"),
        };
        assert_eq!(b1, b2, "chain: lines {i} and {j} do not compose");
        let goal = Formula::imp(a, c);
        let trans = self.int(Formula::imp(fi, Formula::imp(fj, goal)));
        let step = self.mp(trans, i);
        self.mp(step, j)
    }

    /// From `box (a -> b)` at `i`: `box a -> box b`, by distributing the
    /// box (an A3 instance unboxed through A2).
    pub fn box_mono(&mut self, i: usize) -> usize {
        let (a, b) = match self.formula(i) {
            Formula::Box(inner) => match &**inner {
                Formula::Imp(a, b) => ((**a).clone(), (**b).clone()),
                other => panic!("box_mono: line {i} does not box an implication: {other}"),
            },
            other => panic!("box_mono: line {i} is not boxed: {other}"),
        };
        let a3 = self.axiom(SchemeName::A3, &[&a, &b]);
        let step = self.mp(a3, i);
        let boxed_imp = Formula::imp(Formula::nec(a), Formula::nec(b));
        let a2 = self.axiom(SchemeName::A2, &[&boxed_imp]);
        self.mp(a2, step)
    }

    /// From `f` at `i`: `antecedent -> f`, for any `antecedent`.
    pub fn weaken(&mut self, i: usize, antecedent: &Formula) -> usize {
        let f = self.formula(i).clone();
        let w = self.int(Formula::imp(
            f.clone(),
            Formula::imp(antecedent.clone(), f),
        ));
        self.mp(w, i)
    }

    /// From `e -> (a -> b)` at `i` and `e -> a` at `j`: `e -> b`
    /// (implication distributes over a shared antecedent).
    pub fn under(&mut self, i: usize, j: usize) -> usize {
        let fi = self.formula(i).clone();
        let fj = self.formula(j).clone();
        let (e1, ab) = match &fi {
            Formula::Imp(e, ab) => ((**e).clone(), (**ab).clone()),
            other => panic!("under: line {i} is not an implication: {other}"),
        };
        let (a1, b) = match &ab {
            Formula::Imp(a, b) => ((**a).clone(), (**b).clone()),
            other => panic!("under: line {i} does not nest an implication: {other}"),
        };
        match &fj {
            Formula::Imp(e2, a2) => {
                assert_eq!(e1, **e2, "under: antecedents of {i} and {j} differ");
                assert_eq!(a1, **a2, "under: line {j} does not supply the argument of {i}");
            }
            other => panic!("under: line {j} is not an implication: {other}"),
        }
        let goal = Formula::imp(e1, b);
        let glue = self.int(Formula::imp(fi, Formula::imp(fj, goal)));
        let step = self.mp(glue, i);
        self.mp(step, j)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{check_proof, CheckOptions, LogicId};
    use super::*;

    #[test]
    fn text_round_trips() {
        let text = "\
# tiny derivation with one hypothesis
hyp: box x0

1. box x0 ; hyp 1
2. box x0 -> x0 ; axiom A2
3. x0 ; mp 2 1
";
        let script = parse_script(text).unwrap();
        assert_eq!(script.hypotheses.len(), 1);
        assert_eq!(script.lines.len(), 3);
        assert!(check_proof(LogicId::L3, &script, &CheckOptions::default()).is_accepted());

        let rendered = render_script(&script);
        let reparsed = parse_script(&rendered).unwrap();
        assert_eq!(reparsed, script);
    }

    #[test]
    fn rejects_misnumbered_and_malformed_lines() {
        let e = parse_script("2. x0 ; int").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("expected line number 1"));

        let e = parse_script("1. x0 int").unwrap_err();
        assert!(e.message.contains("missing ';"));

        let e = parse_script("1. x0 ; axiom A9").unwrap_err();
        assert!(e.message.contains("unknown axiom scheme"));

        let e = parse_script("1. x0 ; mp one 2").unwrap_err();
        assert!(e.message.contains("bad line reference"));

        let e = parse_script("1. x0 ; int\nhyp: x1").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("precede"));
    }

    #[test]
    fn builder_combinators_expand_to_checkable_lines() {
        let p = Formula::var(0);
        let q = Formula::var(1);
        let r = Formula::var(2);

        let mut b = ScriptBuilder::new();
        let i1 = b.int(Formula::imp(p.clone(), q.clone()));
        let i2 = b.int(Formula::imp(q.clone(), Formula::or(q.clone(), r.clone())));
        let c = b.chain(i1, i2);
        assert_eq!(
            b.formula(c),
            &Formula::imp(p.clone(), Formula::or(q.clone(), r.clone()))
        );

        let n = b.int(Formula::imp(p.clone(), p.clone()));
        let an = b.an(n);
        let m = b.box_mono(an);
        assert_eq!(
            b.formula(m),
            &Formula::imp(Formula::nec(p.clone()), Formula::nec(p.clone()))
        );

        let w = b.weaken(m, &q);
        assert_eq!(
            b.formula(w),
            &Formula::imp(
                q.clone(),
                Formula::imp(Formula::nec(p.clone()), Formula::nec(p.clone()))
            )
        );

        let supply = b.int(Formula::imp(q.clone(), Formula::nec(p.clone())));
        // q -> box p is not an int instance; use it only to exercise the
        // combinator's shape handling, not to produce a checkable script
        let u = b.under(w, supply);
        assert_eq!(
            b.formula(u),
            &Formula::imp(q.clone(), Formula::nec(p.clone()))
        );

        // the chain/box_mono prefix alone is a sound L3 derivation
        let mut b2 = ScriptBuilder::new();
        let i1 = b2.int(Formula::imp(Formula::and(p.clone(), q.clone()), q.clone()));
        let i2 = b2.int(Formula::imp(q.clone(), Formula::or(q.clone(), r.clone())));
        b2.chain(i1, i2);
        let n = b2.int(Formula::imp(p.clone(), p.clone()));
        let an = b2.an(n);
        b2.box_mono(an);
        assert!(
            check_proof(LogicId::L3, &b2.finish(), &CheckOptions::default()).is_accepted()
        );
    }
}

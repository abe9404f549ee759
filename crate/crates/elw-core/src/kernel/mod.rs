//! Hilbert-style derivation checking.
//!
//! Two families share the kernel. The box family (L3 and its epistemic
//! extensions) has modus ponens, necessitation restricted to axiom lines
//! (AN), and excluded middle as a theorem scheme; the intuitionistic
//! knowledge family (IEL-, IEL) has modus ponens only. Intuitionistic
//! instances count as axioms everywhere: a line is an `int` axiom when its
//! modal abstraction is IPC-valid.

mod library;
mod script;

pub use library::{sp_script, theorem_library, LibraryEntry};
pub use script::{parse_script, render_script, ScriptBuilder, ScriptError};

use crate::ipc::is_int_instance;
use crate::syntax::{Formula, Substitution};
use crate::verdict::Verdict;
use std::fmt;
use std::str::FromStr;

/// The checkable logics, weakest first within each family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogicId {
    L3,
    El3Minus,
    El3,
    El4,
    El5,
    IelMinus,
    Iel,
}

impl LogicId {
    pub const ALL: [LogicId; 7] = [
        LogicId::L3,
        LogicId::El3Minus,
        LogicId::El3,
        LogicId::El4,
        LogicId::El5,
        LogicId::IelMinus,
        LogicId::Iel,
    ];

    /// Named axiom schemes available in this logic (`int` instances are
    /// available everywhere and are not listed).
    pub fn schemes(self) -> &'static [SchemeName] {
        use SchemeName::*;
        match self {
            LogicId::L3 => &[A1, A2, A3],
            LogicId::El3Minus => &[A1, A2, A3, A6, A7],
            LogicId::El3 => &[A1, A2, A3, A6, A7, A8],
            LogicId::El4 => &[A1, A2, A3, A4, A6, A7, A8],
            LogicId::El5 => &[A1, A2, A3, A4, A5, A6, A7, A8],
            LogicId::IelMinus => &[A6, Co],
            LogicId::Iel => &[A6, Co, A8],
        }
    }

    /// Whether necessitation of axioms is a rule of this logic.
    pub fn allows_an(self) -> bool {
        matches!(
            self,
            LogicId::L3 | LogicId::El3Minus | LogicId::El3 | LogicId::El4 | LogicId::El5
        )
    }

    /// Whether excluded middle is admitted as a theorem scheme. It is never
    /// an AN target even where admitted.
    pub fn allows_t(self) -> bool {
        self.allows_an()
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogicId::L3 => "L3",
            LogicId::El3Minus => "EL3-",
            LogicId::El3 => "EL3",
            LogicId::El4 => "EL4",
            LogicId::El5 => "EL5",
            LogicId::IelMinus => "IEL-",
            LogicId::Iel => "IEL",
        })
    }
}

impl FromStr for LogicId {
    type Err = String;

    fn from_str(s: &str) -> Result<LogicId, String> {
        match s {
            "L3" => Ok(LogicId::L3),
            "EL3-" => Ok(LogicId::El3Minus),
            "EL3" => Ok(LogicId::El3),
            "EL4" => Ok(LogicId::El4),
            "EL5" => Ok(LogicId::El5),
            "IEL-" => Ok(LogicId::IelMinus),
            "IEL" => Ok(LogicId::Iel),
            _ => Err(format!(
                "unknown logic '{s}' (expected L3, EL3-, EL3, EL4, EL5, IEL-, IEL)"
            )),
        }
    }
}

/// Named axiom schemes. `Co` is the intuitionistic co-reflection axiom of
/// the knowledge family; the box family uses `A7` in its place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeName {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    Co,
}

impl SchemeName {
    /// Defining pattern; `x0` and `x1` are the scheme's metavariables.
    pub fn pattern(self) -> Formula {
        let p = Formula::var(0);
        let q = Formula::var(1);
        match self {
            SchemeName::A1 => Formula::imp(
                Formula::nec(Formula::or(p.clone(), q.clone())),
                Formula::or(Formula::nec(p), Formula::nec(q)),
            ),
            SchemeName::A2 => Formula::imp(Formula::nec(p.clone()), p),
            SchemeName::A3 => Formula::imp(
                Formula::nec(Formula::imp(p.clone(), q.clone())),
                Formula::nec(Formula::imp(Formula::nec(p), Formula::nec(q))),
            ),
            SchemeName::A4 => Formula::imp(
                Formula::nec(p.clone()),
                Formula::nec(Formula::nec(p)),
            ),
            SchemeName::A5 => Formula::imp(
                Formula::not(Formula::nec(p.clone())),
                Formula::nec(Formula::not(Formula::nec(p))),
            ),
            SchemeName::A6 => Formula::imp(
                Formula::know(Formula::imp(p.clone(), q.clone())),
                Formula::imp(Formula::know(p), Formula::know(q)),
            ),
            SchemeName::A7 => Formula::imp(
                Formula::nec(p.clone()),
                Formula::nec(Formula::know(p)),
            ),
            SchemeName::A8 => Formula::imp(
                Formula::know(p.clone()),
                Formula::not(Formula::not(p)),
            ),
            SchemeName::Co => Formula::imp(p.clone(), Formula::know(p)),
        }
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeName::A1 => "A1",
            SchemeName::A2 => "A2",
            SchemeName::A3 => "A3",
            SchemeName::A4 => "A4",
            SchemeName::A5 => "A5",
            SchemeName::A6 => "A6",
            SchemeName::A7 => "A7",
            SchemeName::A8 => "A8",
            SchemeName::Co => "CO",
        })
    }
}

impl FromStr for SchemeName {
    type Err = String;

    fn from_str(s: &str) -> Result<SchemeName, String> {
        match s {
            "A1" => Ok(SchemeName::A1),
            "A2" => Ok(SchemeName::A2),
            "A3" => Ok(SchemeName::A3),
            "A4" => Ok(SchemeName::A4),
            "A5" => Ok(SchemeName::A5),
            "A6" => Ok(SchemeName::A6),
            "A7" => Ok(SchemeName::A7),
            "A8" => Ok(SchemeName::A8),
            "CO" => Ok(SchemeName::Co),
            _ => Err(format!("unknown axiom scheme '{s}'")),
        }
    }
}

/// Does `f` arise from `pattern` by substituting formulas for the
/// pattern's variables (consistently across repeats)?
pub fn is_instance(pattern: &Formula, f: &Formula) -> bool {
    fn go(p: &Formula, f: &Formula, binding: &mut Substitution) -> bool {
        match (p, f) {
            (Formula::Var(i), _) => match binding.0.get(i) {
                Some(bound) => bound == f,
                None => {
                    binding.0.insert(*i, f.clone());
                    true
                }
            },
            (Formula::Bottom, Formula::Bottom) => true,
            (Formula::And(a1, b1), Formula::And(a2, b2))
            | (Formula::Or(a1, b1), Formula::Or(a2, b2))
            | (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) => {
                go(a1, a2, binding) && go(b1, b2, binding)
            }
            (Formula::Box(a1), Formula::Box(a2)) | (Formula::Know(a1), Formula::Know(a2)) => {
                go(a1, a2, binding)
            }
            _ => false,
        }
    }
    go(pattern, f, &mut Substitution::new())
}

/// First scheme of `logic` (in declaration order) that `f` instantiates.
pub fn match_axiom(f: &Formula, logic: LogicId) -> Option<SchemeName> {
    logic
        .schemes()
        .iter()
        .copied()
        .find(|s| is_instance(&s.pattern(), f))
}

/// How one proof line is licensed. Line and hypothesis references are
/// 1-based, matching the text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Instance of a named axiom scheme of the logic.
    Axiom(SchemeName),
    /// Modal abstraction is IPC-valid; available in every logic.
    IntInstance,
    /// Excluded middle `f | ~f`, admitted as a theorem scheme in the box
    /// family only. Never a legal AN target.
    TheoremT,
    /// The k-th hypothesis, verbatim.
    Hypothesis(usize),
    /// Modus ponens: line `i` is `a -> b`, line `j` is `a`, this line is `b`.
    Mp(usize, usize),
    /// Axiom necessitation: this line is `box a` where line `i` is the
    /// axiom `a` (named scheme or `int` instance).
    An(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProofScript {
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

impl ProofScript {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

/// Kernel switches. Defaults give the sound kernel; the non-default
/// settings exist so the self-test suite can prove the checks are not
/// vacuous.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// When set (the default), AN only applies to lines justified as
    /// axioms. Unset, AN applies to any earlier line, which is unsound.
    pub an_axioms_only: bool,
    /// Schemes treated as absent from every logic.
    pub dropped_schemes: Vec<SchemeName>,
}

impl Default for CheckOptions {
    fn default() -> CheckOptions {
        CheckOptions {
            an_axioms_only: true,
            dropped_schemes: Vec::new(),
        }
    }
}

/// Checks a script line by line. Accepted means every line is licensed in
/// `logic`; the conclusion is then derivable from the hypotheses.
pub fn check_proof(logic: LogicId, script: &ProofScript, opts: &CheckOptions) -> Verdict {
    if script.lines.is_empty() {
        return Verdict::rejected("empty-script");
    }
    for idx in 0..script.lines.len() {
        let v = check_line(logic, script, idx, opts);
        if !v.is_accepted() {
            return v.with_line(idx + 1);
        }
    }
    Verdict::Accepted
}

fn check_line(logic: LogicId, script: &ProofScript, idx: usize, opts: &CheckOptions) -> Verdict {
    let line = &script.lines[idx];
    match &line.justification {
        Justification::Axiom(s) => {
            if !logic.schemes().contains(s) || opts.dropped_schemes.contains(s) {
                return Verdict::rejected("axiom-not-in-logic").with_witness(s.to_string());
            }
            if !is_instance(&s.pattern(), &line.formula) {
                return Verdict::rejected("axiom-shape")
                    .with_witness(format!("not an instance of {s}"));
            }
            Verdict::Accepted
        }
        Justification::IntInstance => {
            if is_int_instance(&line.formula) {
                Verdict::Accepted
            } else {
                Verdict::rejected("int-instance")
                    .with_witness("modal abstraction is not IPC-valid")
            }
        }
        Justification::TheoremT => {
            if !logic.allows_t() {
                return Verdict::rejected("t-not-in-logic");
            }
            let ok = match &line.formula {
                Formula::Or(a, rest) => match &**rest {
                    Formula::Imp(b, bot) => **bot == Formula::Bottom && a == b,
                    _ => false,
                },
                _ => false,
            };
            if ok {
                Verdict::Accepted
            } else {
                Verdict::rejected("t-shape").with_witness("expected the form f | ~f")
            }
        }
        Justification::Hypothesis(k) => {
            if *k == 0 || *k > script.hypotheses.len() {
                return Verdict::rejected("hyp-range").with_witness(format!("hyp {k}"));
            }
            if line.formula != script.hypotheses[*k - 1] {
                return Verdict::rejected("hyp-mismatch").with_witness(format!("hyp {k}"));
            }
            Verdict::Accepted
        }
        Justification::Mp(i, j) => {
            if *i == 0 || *i > idx || *j == 0 || *j > idx {
                return Verdict::rejected("mp-range").with_witness(format!("mp {i} {j}"));
            }
            let fi = &script.lines[*i - 1].formula;
            let fj = &script.lines[*j - 1].formula;
            match fi {
                Formula::Imp(a, b) if **a == *fj && **b == line.formula => Verdict::Accepted,
                _ => Verdict::rejected("mp-shape").with_witness(format!("from lines {i} and {j}")),
            }
        }
        Justification::An(i) => {
            if !logic.allows_an() {
                return Verdict::rejected("an-not-in-logic");
            }
            if *i == 0 || *i > idx {
                return Verdict::rejected("an-range").with_witness(format!("an {i}"));
            }
            let src = &script.lines[*i - 1];
            let src_is_axiom = matches!(
                src.justification,
                Justification::Axiom(_) | Justification::IntInstance
            );
            if opts.an_axioms_only && !src_is_axiom {
                return Verdict::rejected("an-restriction")
                    .with_witness(format!("line {i} is not an axiom line"));
            }
            if line.formula != Formula::nec(src.formula.clone()) {
                return Verdict::rejected("an-shape").with_witness(format!("an {i}"));
            }
            Verdict::Accepted
        }
    }
}

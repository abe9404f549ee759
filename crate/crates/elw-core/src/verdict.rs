//! Shared check-result type: accepted, or rejected with the violated
//! condition plus a witness a human can act on.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    Rejected {
        /// Stable identifier of the violated condition, e.g. "residuation",
        /// "el.iv", "mp-shape".
        condition: String,
        /// Proof line (1-based) when the check walks a script.
        #[serde(skip_serializing_if = "Option::is_none")]
        line: Option<usize>,
        /// Violating elements / assignment / shape, rendered for humans.
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
}

impl Verdict {
    pub fn rejected(condition: impl Into<String>) -> Verdict {
        Verdict::Rejected {
            condition: condition.into(),
            line: None,
            witness: None,
        }
    }

    pub fn with_line(self, n: usize) -> Verdict {
        match self {
            Verdict::Rejected { condition, witness, .. } => Verdict::Rejected {
                condition,
                line: Some(n),
                witness,
            },
            v => v,
        }
    }

    pub fn with_witness(self, w: impl Into<String>) -> Verdict {
        match self {
            Verdict::Rejected { condition, line, .. } => Verdict::Rejected {
                condition,
                line,
                witness: Some(w.into()),
            },
            v => v,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn condition(&self) -> Option<&str> {
        match self {
            Verdict::Accepted => None,
            Verdict::Rejected { condition, .. } => Some(condition),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => write!(f, "accepted"),
            Verdict::Rejected { condition, line, witness } => {
                write!(f, "rejected: {condition}")?;
                if let Some(n) = line {
                    write!(f, " at line {n}")?;
                }
                if let Some(w) = witness {
                    write!(f, " ({w})")?;
                }
                Ok(())
            }
        }
    }
}

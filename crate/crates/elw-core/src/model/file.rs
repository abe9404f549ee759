//! JSON persistence for models.
//!
//! An algebra is stored as its size and the full order relation (every
//! pair, reflexive pairs included); operation tables are derived data and
//! are only written on request, but when present in a file they are
//! recomputed and cross-checked rather than trusted. Model files carry
//! `true_gen` and `box` only for the classical-box classes.

use super::enumerate::EnumeratedModel;
use super::{ElModel, IelModel};
use crate::heyting::{from_leq, Filter, HeytingAlgebra};
use crate::kernel::LogicId;
use serde::{Deserialize, Serialize};

const MAX_FILE_ALGEBRA: usize = 128;

#[derive(Debug, Serialize, Deserialize)]
struct TablesFile {
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
    neg: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraFile {
    size: usize,
    leq: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tables: Option<TablesFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelFile {
    algebra: AlgebraFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    true_gen: Option<usize>,
    bel: Vec<usize>,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    box_table: Option<Vec<usize>>,
    know: Vec<usize>,
    class: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ModelFileError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Structure(String),
    #[error("algebra: {0}")]
    Algebra(String),
}

fn algebra_from_file(af: &AlgebraFile) -> Result<HeytingAlgebra, ModelFileError> {
    if af.size < 2 || af.size > MAX_FILE_ALGEBRA {
        return Err(ModelFileError::Structure(format!(
            "algebra size {} out of range 2..={MAX_FILE_ALGEBRA}",
            af.size
        )));
    }
    let mut leq = vec![vec![false; af.size]; af.size];
    for &(i, j) in &af.leq {
        if i >= af.size || j >= af.size {
            return Err(ModelFileError::Structure(format!(
                "order pair ({i}, {j}) out of range for size {}",
                af.size
            )));
        }
        leq[i][j] = true;
    }
    let algebra = from_leq(leq).map_err(|v| ModelFileError::Algebra(v.to_string()))?;
    if let Some(t) = &af.tables {
        if t.meet != algebra.meet || t.join != algebra.join || t.imp != algebra.imp
            || t.neg != algebra.neg
        {
            return Err(ModelFileError::Algebra(
                "stored tables do not match the order relation".into(),
            ));
        }
    }
    Ok(algebra)
}

fn algebra_to_file(a: &HeytingAlgebra, with_tables: bool) -> AlgebraFile {
    let mut pairs = Vec::new();
    for i in 0..a.size {
        for j in 0..a.size {
            if a.le(i, j) {
                pairs.push((i, j));
            }
        }
    }
    AlgebraFile {
        size: a.size,
        leq: pairs,
        tables: with_tables.then(|| TablesFile {
            meet: a.meet.clone(),
            join: a.join.clone(),
            imp: a.imp.clone(),
            neg: a.neg.clone(),
        }),
    }
}

fn check_element(name: &str, x: usize, size: usize) -> Result<(), ModelFileError> {
    if x >= size {
        return Err(ModelFileError::Structure(format!(
            "{name} element {x} out of range for size {size}"
        )));
    }
    Ok(())
}

fn check_table(name: &str, t: &[usize], size: usize) -> Result<(), ModelFileError> {
    if t.len() != size {
        return Err(ModelFileError::Structure(format!(
            "{name} table has {} entries for size {size}",
            t.len()
        )));
    }
    for &x in t {
        check_element(name, x, size)?;
    }
    Ok(())
}

/// Parses a model file. Structural checks only; run validation on the
/// result to certify the model conditions.
pub fn model_from_json(text: &str) -> Result<EnumeratedModel, ModelFileError> {
    let mf: ModelFile = serde_json::from_str(text)?;
    let class: LogicId = mf
        .class
        .parse()
        .map_err(|e: String| ModelFileError::Structure(e))?;
    let algebra = algebra_from_file(&mf.algebra)?;
    let n = algebra.size;
    for &b in &mf.bel {
        check_element("bel", b, n)?;
    }
    check_table("know", &mf.know, n)?;
    match class {
        LogicId::El3Minus | LogicId::El3 | LogicId::El4 | LogicId::El5 => {
            let generator = mf.true_gen.ok_or_else(|| {
                ModelFileError::Structure(format!("class {class} requires true_gen"))
            })?;
            check_element("true_gen", generator, n)?;
            let box_table = mf.box_table.ok_or_else(|| {
                ModelFileError::Structure(format!("class {class} requires a box table"))
            })?;
            check_table("box", &box_table, n)?;
            Ok(EnumeratedModel::El(ElModel {
                algebra,
                true_set: Filter { generator },
                bel: mf.bel,
                box_table,
                know: mf.know,
                class,
            }))
        }
        LogicId::IelMinus | LogicId::Iel => {
            if mf.true_gen.is_some() || mf.box_table.is_some() {
                return Err(ModelFileError::Structure(format!(
                    "class {class} takes neither true_gen nor a box table"
                )));
            }
            Ok(EnumeratedModel::Iel(IelModel {
                algebra,
                bel: mf.bel,
                know: mf.know,
                class,
            }))
        }
        LogicId::L3 => Err(ModelFileError::Structure(
            "class L3 has no model semantics".into(),
        )),
    }
}

/// Canonical rendering: pretty JSON, no derived tables, trailing newline.
/// Loading and re-rendering a canonical file reproduces it byte for byte.
pub fn model_to_json(m: &EnumeratedModel) -> String {
    let mf = match m {
        EnumeratedModel::El(m) => ModelFile {
            algebra: algebra_to_file(&m.algebra, false),
            true_gen: Some(m.true_set.generator),
            bel: m.bel.clone(),
            box_table: Some(m.box_table.clone()),
            know: m.know.clone(),
            class: m.class.to_string(),
        },
        EnumeratedModel::Iel(m) => ModelFile {
            algebra: algebra_to_file(&m.algebra, false),
            true_gen: None,
            bel: m.bel.clone(),
            box_table: None,
            know: m.know.clone(),
            class: m.class.to_string(),
        },
    };
    let mut s = serde_json::to_string_pretty(&mf).expect("model serializes");
    s.push('\n');
    s
}

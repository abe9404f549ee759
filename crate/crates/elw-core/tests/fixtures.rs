//! The shipped fixture files are generated artifacts: reference models and
//! library derivations rendered canonically. These tests pin them byte for
//! byte. Run with REGEN_FIXTURES=1 to rewrite them after an intentional
//! format change.

use elw_core::heyting::{from_leq, Filter};
use elw_core::kernel::{parse_script, render_script, theorem_library, LogicId};
use elw_core::model::{model_from_json, model_to_json, validate_el_model, ElModel, EnumeratedModel};
use std::fs;
use std::path::PathBuf;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

fn regen() -> bool {
    std::env::var_os("REGEN_FIXTURES").is_some_and(|v| v == "1")
}

fn pin(path: &PathBuf, canonical: &str) {
    if regen() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, canonical).unwrap();
        return;
    }
    let on_disk = fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("{}: {e} (REGEN_FIXTURES=1 to create)", path.display()));
    assert_eq!(on_disk, canonical, "stale fixture: {}", path.display());
}

fn chain_leq(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect()
}

/// Diamond-free five-element carrier: bottom, two atoms, their join, top.
fn vee_leq() -> Vec<Vec<bool>> {
    let below: [&[usize]; 5] = [&[0, 1, 2, 3, 4], &[1, 3, 4], &[2, 3, 4], &[3, 4], &[4]];
    (0..5)
        .map(|i| (0..5).map(|j| below[i].contains(&j)).collect())
        .collect()
}

fn reference_models() -> Vec<(&'static str, ElModel)> {
    let chain3 = from_leq(chain_leq(3)).unwrap();
    let chain4 = from_leq(chain_leq(4)).unwrap();
    let vee5 = from_leq(vee_leq()).unwrap();
    vec![
        (
            "chain3_el5.json",
            ElModel {
                algebra: chain3,
                true_set: Filter { generator: 1 },
                bel: vec![1, 2],
                box_table: vec![0, 0, 2],
                know: vec![0, 2, 2],
                class: LogicId::El5,
            },
        ),
        (
            "chain4_el5.json",
            ElModel {
                algebra: chain4,
                true_set: Filter { generator: 1 },
                bel: vec![2, 3],
                box_table: vec![0, 0, 0, 3],
                know: vec![0, 0, 3, 3],
                class: LogicId::El5,
            },
        ),
        (
            "vee5_el5.json",
            ElModel {
                algebra: vee5,
                true_set: Filter { generator: 1 },
                bel: vec![3, 4],
                box_table: vec![0, 0, 0, 0, 4],
                know: vec![0, 0, 0, 4, 4],
                class: LogicId::El5,
            },
        ),
    ]
}

#[test]
fn model_fixtures_match_their_reference_models() {
    for (name, model) in reference_models() {
        assert!(
            validate_el_model(&model).is_accepted(),
            "reference model {name} does not validate"
        );
        let wrapped = EnumeratedModel::El(model);
        let canonical = model_to_json(&wrapped);
        let path = fixtures_dir().join("models").join(name);
        pin(&path, &canonical);
        // and the file parses back to the same model
        let reread = model_from_json(&canonical).unwrap();
        assert_eq!(model_to_json(&reread), canonical);
    }
}

#[test]
fn proof_fixtures_match_the_library() {
    for entry in theorem_library() {
        let canonical = render_script(&entry.script);
        let path = fixtures_dir()
            .join("proofs")
            .join(format!("{}.prf", entry.key));
        pin(&path, &canonical);
        let reparsed = parse_script(&canonical).unwrap();
        assert_eq!(reparsed, entry.script, "round trip for {}", entry.key);
    }
}

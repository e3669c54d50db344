//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain strings and numbers and returns a JSON string.
//! The `*_json` functions hold the logic and are tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use semicomm::fixtures;
use semicomm::semigroup::{rees_matrix, ReesSpec};
use semicomm::structure::{self, rees_decompose};
use semicomm::words::{self, free_rho_classes};
use semicomm::{classify_definitional, classify_structural, tc_commutator, Congruence, Limits, Semigroup};

/// Tighter than the library default so a page never hangs for long.
pub const TUPLE_CAP: usize = 1_000_000;
pub const WORD_CAP: usize = 200_000;

fn table(source: &str) -> Result<Semigroup, String> {
    let trimmed = source.trim();
    if let Some(s) = fixtures::by_name(trimmed) {
        return Ok(s);
    }
    Semigroup::parse(trimmed).map_err(|e| e.to_string())
}

/// Table text for a fixture name such as `sl2` or `rb2x2`.
pub fn fixture_text(name: &str) -> Result<String, String> {
    fixtures::by_name(name.trim())
        .map(|s| s.to_text())
        .ok_or_else(|| format!("unknown fixture {name:?}"))
}

/// `[1,1]` and both classifications of a table or fixture name.
pub fn classify_json(source: &str, arity_cap: usize) -> Result<String, String> {
    let s = table(source)?;
    let limits = Limits {
        arity_cap,
        tuple_cap: TUPLE_CAP,
    };
    let one = Congruence::total(s.order());
    let err = |e: semicomm::Error| e.to_string();
    let out = json!({
        "order": s.order(),
        "commutator": tc_commutator(&s, &[one.clone(), one], &limits).map_err(err)?,
        "kernel": structure::kernel(&s),
        "definitional": classify_definitional(&s, &limits).map_err(err)?,
        "structural": classify_structural(&s).map_err(err)?,
    });
    Ok(out.to_string())
}

/// Builds `M(G; I, Λ; P)` and decomposes it again.
pub fn rees_json(group: &str, i_size: usize, lambda_size: usize, sandwich: &str) -> Result<String, String> {
    let group = table(group)?;
    let sandwich: Vec<Vec<usize>> = serde_json::from_str(sandwich).map_err(|e| format!("sandwich: {e}"))?;
    let spec = ReesSpec {
        group,
        i_size,
        lambda_size,
        sandwich,
    };
    let r = rees_matrix(&spec, 64).map_err(|e| e.to_string())?;
    let all: Vec<usize> = r.semigroup.elements().collect();
    let d = rees_decompose(&r.semigroup, &all).map_err(|e| e.to_string())?;
    let report = classify_structural(&r.semigroup).map_err(|e| e.to_string())?;
    let out = json!({
        "table": r.semigroup.to_text(),
        "coords": r.coords,
        "decomposition": d,
        "group_table": d.group.rows(),
        "structural": report,
    });
    Ok(out.to_string())
}

fn shown(w: &[u8]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        words::word_to_string(w)
    }
}

/// `ρ_n` classes of the free monoid on `alphabet` letters, with the class
/// of `word` if one is given.
pub fn free_classes_json(alphabet: usize, n: usize, max_len: usize, word: &str) -> Result<String, String> {
    let classes = free_rho_classes(alphabet, n, max_len, WORD_CAP).map_err(|e| e.to_string())?;
    let strata: Vec<Value> = classes
        .strata
        .iter()
        .map(|st| {
            let forms: Vec<String> = st
                .classes
                .iter()
                .map(|c| shown(classes.normal_form(&c[0]).filter(|_| alphabet == 2 && n == 2).unwrap_or(&c[0])))
                .collect();
            json!({ "length": st.length, "class_count": st.classes.len(), "normal_forms": forms })
        })
        .collect();
    let query = match word.trim() {
        "" => Value::Null,
        w => {
            let w = words::parse_word(w).map_err(|e| e.to_string())?;
            let class = classes
                .class_of(&w)
                .ok_or_else(|| format!("word longer than {max_len} or outside the alphabet"))?;
            json!({
                "word": shown(&w),
                "class": class.iter().map(|v| shown(v)).collect::<Vec<_>>(),
                "lallement": words::lallement_shape(&w),
            })
        }
    };
    let out = json!({
        "class_count": classes.class_count(),
        "strata": strata,
        "invariants_separate_classes": classes.invariants_separate_classes(),
        "query": query,
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn fixture(name: &str) -> Result<String, JsValue> {
    fixture_text(name).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(source: &str, arity_cap: usize) -> Result<String, JsValue> {
    classify_json(source, arity_cap).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn rees(group: &str, i_size: usize, lambda_size: usize, sandwich: &str) -> Result<String, JsValue> {
    rees_json(group, i_size, lambda_size, sandwich).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn free_classes(alphabet: usize, n: usize, max_len: usize, word: &str) -> Result<String, JsValue> {
    free_classes_json(alphabet, n, max_len, word).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn semilattice_is_not_solvable() {
        let v = parse(&classify_json("2\n0 0\n0 1\n", 3).unwrap());
        assert_eq!(v["commutator"], json!([[0, 1]]));
        assert_eq!(v["definitional"]["solvable"], false);
        assert_eq!(v["structural"]["supernilpotent"], "no");
    }

    #[test]
    fn fixture_names_and_text_agree() {
        let text = fixture_text("rb2x2").unwrap();
        let a = parse(&classify_json(&text, 3).unwrap());
        let b = parse(&classify_json("rb2x2", 3).unwrap());
        assert_eq!(a, b);
        assert_eq!(a["definitional"]["abelian"], true);
        assert!(fixture_text("nope").is_err());
    }

    #[test]
    fn bad_tables_are_errors() {
        assert!(classify_json("2\n1 0\n0 0\n", 3).unwrap_err().contains("associative"));
    }

    #[test]
    fn rees_round_trip() {
        let v = parse(&rees_json("z2", 2, 2, "[[0,0],[0,1]]").unwrap());
        assert_eq!(v["decomposition"]["i_count"], 2);
        assert_eq!(v["decomposition"]["lambda_count"], 2);
        assert_eq!(v["group_table"].as_array().unwrap().len(), 2);
        assert_eq!(v["structural"]["supernilpotent"], "yes");
        assert!(rees_json("z2", 2, 2, "[[0,0]]").is_err());
    }

    #[test]
    fn free_classes_with_query() {
        let v = parse(&free_classes_json(2, 2, 6, "xyxyx").unwrap());
        assert_eq!(v["strata"][0]["normal_forms"], json!(["1"]));
        assert_eq!(v["query"]["lallement"]["shape"], "split");
        let class: Vec<String> = serde_json::from_value(v["query"]["class"].clone()).unwrap();
        assert!(class.contains(&"xyxyx".to_string()));
        let v = parse(&free_classes_json(2, 1, 3, "").unwrap());
        assert_eq!(v["strata"][3]["class_count"], 4);
        assert!(free_classes_json(2, 2, 3, "xyxy").is_err());
    }
}

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use semicomm::harness::VerificationReport;
use semicomm::words::{self, FreeRhoClasses};
use semicomm::{Class, ClassReport};

use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    /// Only for tabular outputs: `enumerate`, `verify`, `words rho --free`.
    Tsv,
}

pub fn emit<T: Serialize + ?Sized>(
    fmt: Format,
    value: &T,
    text: impl FnOnce() -> String,
    tsv: Option<String>,
) -> Result<(), CliError> {
    match fmt {
        Format::Json => {
            let s = serde_json::to_string(value).map_err(|e| CliError::Input(e.to_string()))?;
            println!("{s}");
        }
        Format::Text => println!("{}", text()),
        Format::Tsv => match tsv {
            Some(t) => print!("{t}"),
            None => return Err(CliError::Input("tsv output is not available for this command".into())),
        },
    }
    Ok(())
}

/// Top-level fields of a JSON object, one per line.
pub fn key_values(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}\t{v}"))
            .collect::<Vec<_>>()
            .join("\n"),
        v => v.to_string(),
    }
}

fn class(c: &Class) -> String {
    match c {
        Class::Exact(d) => d.to_string(),
        Class::Within { lower, upper } if lower == upper => lower.to_string(),
        Class::Within { lower, upper } => format!("{lower}..{upper}"),
        Class::Never => "-".into(),
        Class::Unknown { checked_arity } => format!("? (no vanishing term up to arity {checked_arity})"),
    }
}

pub fn report(r: &ClassReport) -> String {
    let row = |name: &str, c: &Class| format!("{name:<16}{:<9}{}", c.verdict_str(), class(c));
    let abelian = match r.abelian {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    let mut lines = vec![
        format!("{:?} classification, order {}", r.method, r.order).to_lowercase(),
        row("solvable", &r.solvable_class),
        row("left nilpotent", &r.left_nilpotent_class),
        row("right nilpotent", &r.right_nilpotent_class),
        row("supernilpotent", &r.supernilpotent_class),
        format!("{:<16}{abelian}", "abelian"),
    ];
    lines.extend(r.notes.iter().map(|n| format!("note: {n}")));
    lines.join("\n")
}

pub fn verification(r: &VerificationReport) -> String {
    let mut out = r.to_tsv();
    for s in &r.suites {
        for n in &s.notes {
            out.push_str(&format!("{}: {n}\n", s.suite));
        }
        for c in &s.counterexamples {
            out.push_str(&format!("{}: FAIL {}\n", s.suite, c.detail));
            if let Some(t) = &c.table {
                out.push_str(t);
            }
        }
    }
    out.push_str(&format!(
        "total checked {}, failed {}, {} ms",
        r.total_checked, r.total_failed, r.runtime_ms
    ));
    out
}

/// Normal form of a class: the unique Lallement word for two letters and
/// `n = 2`, else the least word.
fn representative(classes: &FreeRhoClasses, class: &[Vec<u8>]) -> String {
    let w = if classes.sigma == 2 && classes.n == 2 {
        classes.normal_form(&class[0]).unwrap_or(&class[0])
    } else {
        &class[0]
    };
    shown(w)
}

fn shown(w: &[u8]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        words::word_to_string(w)
    }
}

pub fn free_classes(classes: &FreeRhoClasses, full: bool) -> (Value, String, String) {
    let mut strata = Vec::new();
    let mut text = String::new();
    let mut tsv = String::from("length\tclasses\tnormal_forms\n");
    for st in &classes.strata {
        let forms: Vec<String> = st.classes.iter().map(|c| representative(classes, c)).collect();
        let mut entry = json!({
            "length": st.length,
            "class_count": st.classes.len(),
            "normal_forms": forms,
        });
        if full {
            let members: Vec<Vec<String>> = st.classes.iter().map(|c| c.iter().map(|w| shown(w)).collect()).collect();
            entry["classes"] = json!(members);
        }
        strata.push(entry);
        text.push_str(&format!("length {}: {} classes\n  {}\n", st.length, st.classes.len(), forms.join(" ")));
        tsv.push_str(&format!("{}\t{}\t{}\n", st.length, st.classes.len(), forms.join(",")));
    }
    let mut json = json!({
        "sigma": classes.sigma,
        "n": classes.n,
        "max_len": classes.max_len,
        "class_count": classes.class_count(),
        "strata": strata,
        "invariant_violations": classes.invariant_violations().len(),
        "invariants_separate_classes": classes.invariants_separate_classes(),
    });
    if classes.sigma == 2 && classes.n == 2 {
        json["lallement_violations"] = json!(classes.lallement_violations().len());
    }
    text.push_str(&format!("total {} classes", classes.class_count()));
    (json, text, tsv)
}

use std::io::Read;
use std::path::Path;

use semicomm::fixtures;
use semicomm::{Congruence, Partition, Semigroup};

use crate::CliError;

/// Reads a table from a file, a fixture name, or stdin (`-` or absent).
pub fn load_table(source: Option<&str>) -> Result<Semigroup, CliError> {
    let text = match source {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            buf
        }
        Some(name) if Path::new(name).exists() => {
            std::fs::read_to_string(name).map_err(|e| CliError::Input(format!("{name}: {e}")))?
        }
        Some(name) => {
            return fixtures::by_name(name)
                .ok_or_else(|| CliError::Input(format!("{name}: no such file or fixture")));
        }
    };
    Ok(Semigroup::parse(&text)?)
}

/// Splits on commas outside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// `0`, `1`, or a partition such as `[[0,1],[2]]`, comma-separated.
pub fn parse_congruences(s: &Semigroup, spec: &str) -> Result<Vec<Congruence>, CliError> {
    split_top_level(spec)
        .into_iter()
        .map(|tok| match tok {
            "0" => Ok(Congruence::identity(s.order())),
            "1" => Ok(Congruence::total(s.order())),
            t if t.starts_with('[') => {
                let p = Partition::parse(t)?;
                Ok(Congruence::from_partition(s, p.classes())?)
            }
            t => Err(CliError::Input(format!("bad congruence {t:?}: expected 0, 1 or a partition"))),
        })
        .collect()
}

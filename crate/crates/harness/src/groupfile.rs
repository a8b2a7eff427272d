//! Plain-text group definitions.
//!
//! ```text
//! # the symmetric group on four points
//! name S4
//! degree 4
//! gen (1 2)
//! gen (1 2 3 4)
//! [normal A4]
//! gen (1 2 3)
//! gen (2 3 4)
//! ```

use std::path::Path;

use charvan_core::{PermGroup, Permutation};

use crate::catalog::{builtin_group, NamedGroup};
use crate::error::{HarnessError, Result};

fn line_error(line: usize, msg: impl std::fmt::Display) -> HarnessError {
    HarnessError::input(format!("line {line}: {msg}"))
}

/// Parses a group definition. Normal subgroup blocks are checked for
/// normality.
pub fn parse_group_file(text: &str) -> Result<NamedGroup> {
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut ambient: Vec<(usize, String)> = Vec::new();
    let mut blocks: Vec<(String, Vec<(usize, String)>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| line_error(line_no, "unterminated block header"))?;
            let mut words = inner.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some("normal"), Some(id), None) => {
                    if blocks.iter().any(|(b, _)| b == id) {
                        return Err(line_error(
                            line_no,
                            format!("duplicate normal subgroup {id}"),
                        ));
                    }
                    blocks.push((id.to_string(), Vec::new()));
                }
                _ => return Err(line_error(line_no, format!("bad block header [{inner}]"))),
            }
            continue;
        }
        let (key, value) = match line.split_once(char::is_whitespace) {
            Some((k, v)) => (k, v.trim()),
            None => (line, ""),
        };
        match key {
            "name" if blocks.is_empty() => {
                if value.is_empty() || value.contains(char::is_whitespace) {
                    return Err(line_error(line_no, "name must be a single word"));
                }
                name = Some(value.to_string());
            }
            "degree" if blocks.is_empty() => {
                let d: usize = value
                    .parse()
                    .map_err(|_| line_error(line_no, format!("bad degree {value:?}")))?;
                if d == 0 {
                    return Err(line_error(line_no, "degree must be positive"));
                }
                degree = Some(d);
            }
            "gen" => match blocks.last_mut() {
                Some((_, gens)) => gens.push((line_no, value.to_string())),
                None => ambient.push((line_no, value.to_string())),
            },
            _ => return Err(line_error(line_no, format!("unexpected {key:?}"))),
        }
    }

    let degree = degree.ok_or_else(|| HarnessError::input("missing degree line"))?;
    let name = name.unwrap_or_else(|| "G".to_string());
    let parse = |gens: &[(usize, String)]| -> Result<Vec<Permutation>> {
        gens.iter()
            .map(|(line, text)| Permutation::parse(text, degree).map_err(|e| line_error(*line, e)))
            .collect()
    };
    let gens = parse(&ambient)?;
    if gens.is_empty() {
        return Err(HarnessError::input("no generators for the group"));
    }
    let group = PermGroup::from_generators(&gens, Default::default())?;
    let mut normals = Vec::new();
    for (id, block) in &blocks {
        let sub_gens = parse(block)?;
        let sub = if sub_gens.is_empty() {
            PermGroup::trivial(degree, group.limits())
        } else {
            for (g, (line, _)) in sub_gens.iter().zip(block) {
                if !group.contains(g) {
                    return Err(line_error(
                        *line,
                        format!("generator of {id} is not in {name}"),
                    ));
                }
            }
            group.generate(&sub_gens)?
        };
        normals.push((id.clone(), sub));
    }
    NamedGroup::new(&name, group, normals)
}

/// Writes a group definition that [`parse_group_file`] reads back.
pub fn format_group_file(g: &NamedGroup) -> String {
    let gens = |out: &mut String, group: &PermGroup| {
        if group.generators().is_empty() {
            out.push_str("gen ()\n");
        }
        for p in group.generators() {
            out.push_str(&format!("gen {p}\n"));
        }
    };
    let mut out = format!("name {}\ndegree {}\n", g.name, g.group.degree());
    gens(&mut out, &g.group);
    for (id, n) in &g.normals {
        out.push_str(&format!("[normal {id}]\n"));
        gens(&mut out, n);
    }
    out
}

/// Loads a group from a file, or from the catalog for `builtin:NAME`.
pub fn load_group(arg: &str) -> Result<NamedGroup> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtin_group(name);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: arg.to_string(),
        source,
    })?;
    parse_group_file(&text)
}

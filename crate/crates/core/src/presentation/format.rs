//! Section-based presentation files.
//!
//! ```text
//! [presentation]
//! v = x1 x2
//! V = X1
//! order = default            # or: weights 1 2 ...
//! mode = int                 # or: rat
//! G0: x2*x1
//! C:  X1*x1 - x2*X1;
//!     X1*x2 - x1*X1
//! H:
//! [module]
//! rank = 1
//! [ideal]
//! F: x1*X1
//! ```
//!
//! Lists are `;`-separated and may continue on following lines; each
//! polynomial sits on a single line.

use super::Presentation;
use crate::coeff::Domain;
use crate::error::{Error, Result};
use crate::freering::{parse_poly_at, Alphabet, NcPoly, TermOrder};

/// A parsed presentation file.
#[derive(Debug, Clone)]
pub struct PresentationFile {
    pub presentation: Presentation,
    /// Generators listed under `[ideal] F:`.
    pub ideal: Vec<NcPoly>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum List {
    G0,
    C,
    H,
    F,
}

struct Entry {
    list: List,
    text: String,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

fn split_entries(list: List, body: &str, line: usize, col0: usize, out: &mut Vec<Entry>) {
    let mut start = 0;
    let chars: Vec<char> = body.chars().collect();
    for i in 0..=chars.len() {
        if i == chars.len() || chars[i] == ';' {
            let piece: String = chars[start..i].iter().collect();
            let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
            if !piece.trim().is_empty() {
                out.push(Entry { list, text: piece.trim().to_string(), line, col: col0 + start + lead });
            }
            start = i + 1;
        }
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

fn is_marker(s: &str) -> bool {
    s.strip_prefix('e').is_some_and(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
}

pub fn parse_file(src: &str) -> Result<PresentationFile> {
    let mut section = String::new();
    let mut current: Option<List> = None;
    let mut entries = Vec::new();
    let (mut v, mut big): (Option<Vec<String>>, Option<Vec<String>>) = (None, None);
    let mut order_spec: Option<(usize, String)> = None;
    let mut domain = Domain::Int;
    let mut rank = 1u32;
    let mut seen_presentation = false;

    for (n, raw) in src.lines().enumerate() {
        let line = n + 1;
        let text = raw.split('#').next().unwrap_or("");
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = text.chars().take_while(|c| c.is_whitespace()).count();
        if trimmed.starts_with('[') {
            if !trimmed.ends_with(']') {
                return Err(syntax(line, indent + 1, "unterminated section header"));
            }
            section = trimmed[1..trimmed.len() - 1].trim().to_string();
            if !matches!(section.as_str(), "presentation" | "module" | "ideal") {
                return Err(syntax(line, indent + 1, format!("unknown section `{section}`")));
            }
            seen_presentation |= section == "presentation";
            current = None;
            continue;
        }
        let head: String = trimmed.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
        let rest = trimmed[head.len()..].trim_start();
        let list = match (section.as_str(), head.as_str()) {
            ("presentation", "G0") => Some(List::G0),
            ("presentation", "C") => Some(List::C),
            ("presentation", "H") => Some(List::H),
            ("ideal", "F") => Some(List::F),
            _ => None,
        };
        if let (Some(l), Some(body)) = (list, rest.strip_prefix(':')) {
            current = Some(l);
            let off = text.len() - body.len();
            split_entries(l, body, line, text[..off].chars().count() + 1, &mut entries);
            continue;
        }
        if let Some(value) = rest.strip_prefix('=') {
            current = None;
            let value = value.trim();
            let words = || value.split_whitespace().map(str::to_string).collect::<Vec<_>>();
            match (section.as_str(), head.as_str()) {
                ("presentation", "v") => v = Some(words()),
                ("presentation", "V") => big = Some(words()),
                ("presentation", "order") => order_spec = Some((line, value.to_string())),
                ("presentation", "mode") => {
                    domain = match value {
                        "int" => Domain::Int,
                        "rat" => Domain::Rat,
                        _ => return Err(syntax(line, indent + 1, format!("unknown mode `{value}`"))),
                    }
                }
                ("module", "rank") => {
                    rank = value
                        .parse()
                        .ok()
                        .filter(|&r: &u32| r >= 1)
                        .ok_or_else(|| syntax(line, indent + 1, format!("invalid rank `{value}`")))?;
                }
                _ => return Err(syntax(line, indent + 1, format!("unexpected key `{head}`"))),
            }
            continue;
        }
        match current {
            Some(l) => split_entries(l, text, line, 1, &mut entries),
            None => return Err(syntax(line, indent + 1, "expected `key = value`, `List:` or a section header")),
        }
    }

    if !seen_presentation {
        return Err(Error::Invalid("missing [presentation] section".into()));
    }
    let v = v.unwrap_or_default();
    let big = big.unwrap_or_default();
    if v.is_empty() && big.is_empty() {
        return Err(Error::Invalid("empty alphabet".into()));
    }
    for (k, s) in v.iter().chain(big.iter()).enumerate() {
        if !is_ident(s) || is_marker(s) {
            return Err(Error::Invalid(format!("invalid letter `{s}`")));
        }
        if v.iter().chain(big.iter()).skip(k + 1).any(|t| t == s) {
            return Err(Error::Invalid(format!("letter `{s}` declared twice")));
        }
    }
    let nbig = big.len();
    let alphabet = Alphabet::new(v, big);
    let order = match order_spec {
        None => TermOrder::default_for(alphabet.nv(), nbig),
        Some((_, s)) if s == "default" => TermOrder::default_for(alphabet.nv(), nbig),
        Some((line, s)) => {
            let mut it = s.split_whitespace();
            if it.next() != Some("weights") {
                return Err(syntax(line, 1, format!("unknown order `{s}`")));
            }
            let w: Vec<u64> = it
                .map(|x| x.parse().map_err(|_| syntax(line, 1, format!("invalid weight `{x}`"))))
                .collect::<Result<_>>()?;
            if w.len() != nbig {
                return Err(syntax(line, 1, format!("expected {nbig} weights, found {}", w.len())));
            }
            TermOrder::weighted(alphabet.nv(), w)
        }
    };

    let (mut g0, mut c, mut h, mut f) = (vec![], vec![], vec![], vec![]);
    for e in entries {
        let r = if e.list == List::F { rank } else { 1 };
        let p = parse_poly_at(&e.text, e.line, e.col, &alphabet, &order, domain, r)?;
        match e.list {
            List::G0 => g0.push(p),
            List::C => c.push(p),
            List::H => h.push(p),
            List::F => f.push(p),
        }
    }
    let presentation = Presentation::new(alphabet, order, domain, g0, c, h).with_rank(rank);
    Ok(PresentationFile { presentation, ideal: f })
}

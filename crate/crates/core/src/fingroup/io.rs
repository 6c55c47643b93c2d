//! Text Cayley-table files.
//!
//! ```text
//! # comment
//! order 2
//! names e t
//! generators 1
//! 0 1
//! 1 0
//! presentation
//! gens 1
//! relator g1^2
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{FiniteGroup, Presentation};
use crate::error::{Error, ParseError, Result};
use crate::nil2::Nil2Params;
use crate::word::Word;

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// `(column, token)` pairs, columns 1-based.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_cayley(text: &str) -> Result<FiniteGroup> {
    let mut order: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut generators: Option<Vec<usize>> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut in_presentation = false;
    let mut gen_count: Option<usize> = None;
    let mut relators: Vec<Word> = Vec::new();
    let mut params: Option<Nil2Params> = None;
    let mut last_line = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let ln = lineno + 1;
        last_line = ln;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokens(raw);
        let (col, head) = toks[0];
        let parse_usize = |(c, t): (usize, &str)| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| perr(ln, c, format!("expected a nonnegative integer, found {t:?}")))
        };
        match head {
            "order" => {
                if toks.len() != 2 {
                    return Err(perr(ln, col, "expected `order <n>`"));
                }
                let n = parse_usize(toks[1])?;
                if n == 0 {
                    return Err(perr(ln, toks[1].0, "order must be positive"));
                }
                order = Some(n);
            }
            "names" => names = Some(toks[1..].iter().map(|(_, t)| t.to_string()).collect()),
            "generators" => {
                generators = Some(toks[1..].iter().map(|&t| parse_usize(t)).collect::<Result<_>>()?);
            }
            "presentation" => in_presentation = true,
            "gens" if in_presentation => {
                if toks.len() != 2 {
                    return Err(perr(ln, col, "expected `gens <k>`"));
                }
                gen_count = Some(parse_usize(toks[1])?);
            }
            "relator" if in_presentation => {
                let offset = raw.find("relator").expect("head token") + "relator".len();
                let w = Word::parse(&raw[offset..]).map_err(|e| perr(ln, offset + e.column, e.message))?;
                relators.push(w);
            }
            "params" if in_presentation => {
                let offset = raw.find("params").expect("head token") + "params".len();
                let p = Nil2Params::parse(raw[offset..].trim())
                    .map_err(|e| perr(ln, offset + 1 + e.column, e.message))?;
                params = Some(p);
            }
            t if t.as_bytes()[0].is_ascii_digit() => {
                let n = order.ok_or_else(|| perr(ln, col, "table row before `order`"))?;
                if rows.len() == n {
                    return Err(perr(ln, col, format!("more than {n} table rows")));
                }
                if toks.len() != n {
                    return Err(perr(ln, col, format!("expected {n} entries, found {}", toks.len())));
                }
                let row = toks
                    .iter()
                    .map(|&(c, t)| {
                        let v = parse_usize((c, t))?;
                        if v >= n {
                            Err(perr(ln, c, format!("entry {v} out of range for order {n}")))
                        } else {
                            Ok(v)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
            other => return Err(perr(ln, col, format!("unknown directive {other:?}"))),
        }
    }

    let n = order.ok_or_else(|| perr(last_line.max(1), 1, "missing `order` line"))?;
    if rows.len() != n {
        return Err(perr(last_line.max(1), 1, format!("expected {n} table rows, found {}", rows.len())));
    }
    let mut g = super::validate_group(&rows)?;
    if let Some(names) = names {
        g = g.with_names(names)?;
    }
    if let Some(gens) = generators {
        g = g.with_generators(gens)?;
    }
    if in_presentation {
        let k = gen_count.ok_or_else(|| perr(last_line.max(1), 1, "presentation without `gens`"))?;
        let p = Presentation::new(k, relators, params)?;
        g = g.with_presentation(p)?;
        g.check_relators()?;
    }
    Ok(g)
}

pub fn read_cayley(path: impl AsRef<Path>) -> Result<FiniteGroup> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_cayley(&text).map_err(|e| match e {
        Error::Parse(source) => Error::File {
            path: path.display().to_string(),
            source,
        },
        other => other,
    })
}

pub fn write_cayley(g: &FiniteGroup) -> String {
    let mut out = String::new();
    writeln!(out, "order {}", g.order()).unwrap();
    if let Some(names) = g.names() {
        writeln!(out, "names {}", names.join(" ")).unwrap();
    }
    if let Some(gens) = g.generators() {
        let gs: Vec<String> = gens.iter().map(|a| a.to_string()).collect();
        writeln!(out, "generators {}", gs.join(" ")).unwrap();
    }
    for a in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|b| g.mul(a, b).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    if let Some(p) = g.presentation() {
        writeln!(out, "presentation").unwrap();
        writeln!(out, "gens {}", p.gen_count).unwrap();
        if let Some(params) = &p.params {
            writeln!(out, "params {params}").unwrap();
        }
        for r in &p.relators {
            writeln!(out, "relator {r}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = "# cyclic of order 2\norder 2\nnames e t\ngenerators 1\n0 1\n1 0\npresentation\ngens 1\nrelator g1^2\n";

    #[test]
    fn parse_and_write() {
        let g = parse_cayley(C2).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.name(1), "t");
        assert_eq!(g.presentation().unwrap().relators.len(), 1);
        let again = parse_cayley(&write_cayley(&g)).unwrap();
        assert_eq!(again, g);
        assert_eq!(write_cayley(&again), write_cayley(&g));
    }

    #[test]
    fn errors_cite_line_and_column() {
        let e = parse_cayley("order 2\n0 1\n1 5\n").unwrap_err();
        match e {
            Error::Parse(p) => assert_eq!((p.line, p.column), (3, 3)),
            other => panic!("unexpected {other}"),
        }
        let e = parse_cayley("order 2\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse(_)));
        let e = parse_cayley("order 2\nnonsense\n").unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { line: 2, column: 1, .. })));
        let e = parse_cayley("order 2\n1 0\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::IdentityAxiom(_)));
        let e = parse_cayley("order 2\ngenerators 1\n0 1\n1 0\npresentation\ngens 1\nrelator g1^3\n").unwrap_err();
        assert!(matches!(e, Error::NotHomomorphism(_)));
        let e = parse_cayley("order 2\ngenerators 1\n0 1\n1 0\npresentation\ngens 1\nrelator g1^ \n").unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { line: 7, .. })));
    }
}

//! GSLD v1, the line-based text format for Gauss diagrams.
//!
//! ```text
//! gsld 1
//! strands 2
//! chord 1 +
//! comp s1: T1
//! comp s2: H1
//! comp c: T2 H2      # closed components, listed from their basepoint
//! ```
//!
//! `#` starts a comment. Serialization is canonical: chords in ascending id,
//! strands in order, closed components at their least rotation and sorted.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::diagram::{ChordId, Component, Endpoint, GaussDiagram, Role, Sign};
use crate::error::{ParseError, Result};

/// Canonical text of a diagram, without validation.
pub(crate) fn write_canonical(d: &GaussDiagram) -> String {
    let mut out = String::new();
    out.push_str("gsld 1\n");
    let _ = writeln!(out, "strands {}", d.strands());
    for (id, s) in d.chords() {
        let _ = writeln!(out, "chord {id} {s}");
    }
    for c in d.components() {
        match c.kind {
            crate::diagram::ComponentKind::Open(i) => {
                let _ = write!(out, "comp s{i}:");
            }
            crate::diagram::ComponentKind::Closed => out.push_str("comp c:"),
        }
        for e in &c.endpoints {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

/// Canonical GSLD text; rejects invalid diagrams.
pub fn serialize_diagram(d: &GaussDiagram) -> Result<String> {
    d.ensure_valid()?;
    Ok(write_canonical(d))
}

fn parse_token(tok: &str, line: usize) -> std::result::Result<Endpoint, ParseError> {
    let role = match tok.chars().next() {
        Some('T') => Role::Tail,
        Some('H') => Role::Head,
        _ => {
            return Err(ParseError::syntax(
                line,
                format!("bad endpoint token `{tok}`"),
            ))
        }
    };
    let id: u32 = tok[1..]
        .parse()
        .map_err(|_| ParseError::syntax(line, format!("bad chord id in `{tok}`")))?;
    if id == 0 {
        return Err(ParseError::syntax(line, "chord ids start at 1"));
    }
    Ok(Endpoint {
        chord: ChordId(id),
        role,
    })
}

pub fn parse_diagram(text: &str) -> Result<GaussDiagram> {
    #[derive(PartialEq, PartialOrd)]
    enum Stage {
        Header,
        Strands,
        Chords,
        Strand(usize),
        Closed,
    }

    let mut stage = Stage::Header;
    let mut strands = 0usize;
    let mut chords = BTreeMap::<ChordId, Sign>::new();
    let mut declared_at = BTreeMap::<ChordId, usize>::new();
    let mut seen = BTreeMap::<Endpoint, usize>::new();
    let mut components = Vec::new();
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        match stage {
            Stage::Header => {
                if words != ["gsld", "1"] {
                    return Err(ParseError::syntax(line, "expected `gsld 1`").into());
                }
                stage = Stage::Strands;
            }
            Stage::Strands => {
                strands = match words.as_slice() {
                    ["strands", n] => n
                        .parse()
                        .map_err(|_| ParseError::syntax(line, format!("bad strand count `{n}`")))?,
                    _ => return Err(ParseError::syntax(line, "expected `strands <n>`").into()),
                };
                stage = Stage::Chords;
            }
            _ if words[0] == "chord" => {
                if stage != Stage::Chords {
                    return Err(ParseError::syntax(
                        line,
                        "chord lines must precede component lines",
                    )
                    .into());
                }
                let (id, sign) = match words.as_slice() {
                    ["chord", id, sign] => (*id, *sign),
                    _ => return Err(ParseError::syntax(line, "expected `chord <id> <+|->`").into()),
                };
                let id: u32 = id
                    .parse()
                    .map_err(|_| ParseError::syntax(line, format!("bad chord id `{id}`")))?;
                if id == 0 {
                    return Err(ParseError::syntax(line, "chord ids start at 1").into());
                }
                let sign: Sign = sign
                    .parse()
                    .map_err(|_| ParseError::syntax(line, format!("bad sign `{sign}`")))?;
                if chords.insert(ChordId(id), sign).is_some() {
                    return Err(
                        ParseError::semantic(line, format!("chord {id} declared twice")).into(),
                    );
                }
                declared_at.insert(ChordId(id), line);
            }
            _ if words[0] == "comp" => {
                let rest = body["comp".len()..].trim_start();
                let (label, toks) = rest
                    .split_once(':')
                    .ok_or_else(|| ParseError::syntax(line, "expected `comp <label>: ...`"))?;
                let label = label.trim();
                let mut endpoints = Vec::new();
                for tok in toks.split_whitespace() {
                    let e = parse_token(tok, line)?;
                    if !chords.contains_key(&e.chord) {
                        return Err(ParseError::semantic(
                            line,
                            format!(
                                "dangling reference {tok}: chord {} is not declared",
                                e.chord
                            ),
                        )
                        .into());
                    }
                    if let Some(prev) = seen.insert(e, line) {
                        return Err(ParseError::semantic(
                            line,
                            format!("duplicate endpoint {tok} (first on line {prev})"),
                        )
                        .into());
                    }
                    endpoints.push(e);
                }
                let expected = match stage {
                    Stage::Chords => 1,
                    Stage::Strand(i) => i + 1,
                    _ => strands + 1,
                };
                if label == "c" {
                    if expected <= strands {
                        return Err(ParseError::syntax(
                            line,
                            format!("expected `comp s{expected}` before closed components"),
                        )
                        .into());
                    }
                    stage = Stage::Closed;
                    components.push(Component::closed(endpoints));
                } else if let Some(i) = label
                    .strip_prefix('s')
                    .and_then(|n| n.parse::<usize>().ok())
                {
                    if stage == Stage::Closed || i != expected || i > strands {
                        return Err(ParseError::syntax(
                            line,
                            format!("unexpected strand label `{label}`"),
                        )
                        .into());
                    }
                    stage = Stage::Strand(i);
                    components.push(Component::open(i, endpoints));
                } else {
                    return Err(
                        ParseError::syntax(line, format!("bad component label `{label}`")).into(),
                    );
                }
            }
            _ => {
                return Err(
                    ParseError::syntax(line, format!("unknown directive `{}`", words[0])).into(),
                )
            }
        }
    }

    match stage {
        Stage::Header => {
            return Err(ParseError::syntax(last_line.max(1), "missing `gsld 1`").into())
        }
        Stage::Strands => {
            return Err(ParseError::syntax(last_line.max(1), "missing `strands <n>`").into())
        }
        _ => {}
    }
    let done = match stage {
        Stage::Chords => 0,
        Stage::Strand(i) => i,
        _ => strands,
    };
    if done < strands {
        return Err(ParseError::syntax(last_line, format!("missing `comp s{}`", done + 1)).into());
    }
    for (id, line) in &declared_at {
        for role in [Role::Tail, Role::Head] {
            if !seen.contains_key(&Endpoint { chord: *id, role }) {
                let tok = Endpoint { chord: *id, role };
                return Err(
                    ParseError::semantic(*line, format!("chord {id} has no {tok} token")).into(),
                );
            }
        }
    }
    GaussDiagram::try_from_parts(strands, components, chords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::{Error, ParseErrorKind};

    const ONE_CHORD: &str = "gsld 1\nstrands 2\nchord 1 +\ncomp s1: T1\ncomp s2: H1\n";

    #[test]
    fn single_chord() {
        let d = parse_diagram(ONE_CHORD).unwrap();
        assert_eq!(d.strands(), 2);
        assert_eq!(d.chord_count(), 1);
        assert_eq!(serialize_diagram(&d).unwrap(), ONE_CHORD);
    }

    #[test]
    fn missing_head_is_semantic() {
        let err = parse_diagram("gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1\n").unwrap_err();
        match err {
            Error::Parse(p) => {
                assert_eq!(p.kind, ParseErrorKind::Semantic);
                assert_eq!(p.line, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let cases = [
            ("gsld 2\n", 1),
            ("gsld 1\nstrands x\n", 2),
            ("gsld 1\nstrands 1\nchord 1 *\n", 3),
            ("gsld 1\nstrands 1\ncomp s1: X1\n", 3),
            ("gsld 1\nstrands 2\ncomp s2:\ncomp s1:\n", 3),
            ("gsld 1\nstrands 1\ncomp s1:\nchord 1 +\n", 4),
        ];
        for (text, line) in cases {
            match parse_diagram(text) {
                Err(Error::Parse(p)) => {
                    assert_eq!(p.kind, ParseErrorKind::Syntax, "{text}");
                    assert_eq!(p.line, line, "{text}");
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn duplicate_and_dangling() {
        let dup = "gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1 H1 T1\n";
        assert!(
            matches!(parse_diagram(dup), Err(Error::Parse(p)) if p.kind == ParseErrorKind::Semantic)
        );
        let dangling = "gsld 1\nstrands 1\ncomp s1: T1 H1\n";
        assert!(
            matches!(parse_diagram(dangling), Err(Error::Parse(p)) if p.kind == ParseErrorKind::Semantic)
        );
    }

    #[test]
    fn empty_two_strands() {
        let d = GaussDiagram::empty(2);
        assert_eq!(
            serialize_diagram(&d).unwrap(),
            "gsld 1\nstrands 2\ncomp s1:\ncomp s2:\n"
        );
    }

    #[test]
    fn closed_basepoint_does_not_matter() {
        let a = "gsld 1\nstrands 1\nchord 1 +\nchord 2 -\ncomp s1:\ncomp c: H1 T2 T1 H2\n";
        let b =
            "gsld 1\nstrands 1\nchord 1 +\nchord 2 -\ncomp s1:\ncomp c: T1 H2 H1 T2 # rotated\n";
        let (da, db) = (parse_diagram(a).unwrap(), parse_diagram(b).unwrap());
        assert_eq!(
            serialize_diagram(&da).unwrap(),
            serialize_diagram(&db).unwrap()
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a diagram\ngsld 1\n\nstrands 1   # one strand\nchord 3 -\ncomp s1: H3 T3\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.sign(ChordId(3)), Some(Sign::Minus));
    }
}

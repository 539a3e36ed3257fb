//! Text format for matroids.
//!
//! ```text
//! # comment
//! matroid fan
//! graph 4
//! edge a 0 1
//! edge b 1 2
//! edge c 0 2
//! edge d 2 3
//! edge e 0 3
//! dualize
//! minor contract=a delete=
//! end
//! ```
//!
//! A block starts with `matroid <name>` and a body of one of
//! `uniform <r> <n> [labels ..]`, `graph <vertices>` + `edge` lines,
//! `linear gf<p> [rows]` + `col` lines, `bases <r>` + optional `ground` +
//! `basis` lines. Any number of `dualize` and `minor contract=.. delete=..`
//! directives follow, applied in order, and `end` closes the block.

use std::fmt::Write as _;

use crate::error::{Error, Pos, Result};
use crate::field::PrimeField;
use crate::matroid::{default_labels, Backend, Matroid};
use crate::set::ElemSet;

/// A whitespace-separated token with its position.
#[derive(Clone, Debug)]
pub struct Token<'a> {
    pub text: &'a str,
    pub pos: Pos,
}

/// Splits `text` into non-empty lines of tokens, dropping `#` comments.
pub fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (j, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    toks.push(Token {
                        text: &line[s..j],
                        pos: Pos {
                            line: i + 1,
                            column: line[..s].chars().count() + 1,
                        },
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !toks.is_empty() {
            out.push(toks);
        }
    }
    out
}

pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

pub(crate) fn semantic(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Semantic {
        pos,
        msg: msg.into(),
    }
}

fn number(tok: &Token<'_>) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| syntax(tok.pos, format!("expected a number, found `{}`", tok.text)))
}

fn arity(line: &[Token<'_>], min: usize, max: usize) -> Result<()> {
    let got = line.len() - 1;
    if got < min || got > max {
        let want = if min == max {
            format!("{min}")
        } else {
            format!("{min} to {max}")
        };
        return Err(syntax(
            line[0].pos,
            format!("`{}` takes {want} arguments, found {got}", line[0].text),
        ));
    }
    Ok(())
}

/// A named matroid with the position of its header.
#[derive(Clone, Debug)]
pub struct Definition {
    pub name: String,
    pub matroid: Matroid,
    pub pos: Pos,
}

/// Parses every block in `text`.
pub fn parse_matroid_file(text: &str) -> Result<Vec<(String, Matroid)>> {
    Ok(parse_definitions(text)?
        .into_iter()
        .map(|d| (d.name, d.matroid))
        .collect())
}

pub fn parse_definitions(text: &str) -> Result<Vec<Definition>> {
    let lines = tokenize(text);
    let mut out: Vec<Definition> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = &lines[i];
        if line[0].text != "matroid" {
            return Err(syntax(
                line[0].pos,
                format!("expected `matroid <name>`, found `{}`", line[0].text),
            ));
        }
        let (def, next) = parse_block(&lines, i)?;
        if out.iter().any(|d| d.name == def.name) {
            return Err(semantic(def.pos, format!("matroid `{}` defined twice", def.name)));
        }
        out.push(def);
        i = next;
    }
    Ok(out)
}

/// Parses one `matroid .. end` block starting at `lines[start]`; returns the
/// definition and the index of the line after `end`.
pub fn parse_block(lines: &[Vec<Token<'_>>], start: usize) -> Result<(Definition, usize)> {
    let header = &lines[start];
    arity(header, 1, 1)?;
    let name = header[1].text.to_string();
    let pos = header[0].pos;
    let body = lines
        .get(start + 1)
        .ok_or_else(|| syntax(pos, format!("matroid `{name}` has no body")))?;
    let mut i = start + 2;
    let rows_following = |i: &mut usize, kw: &str| {
        let from = *i;
        while *i < lines.len() && lines[*i][0].text == kw {
            *i += 1;
        }
        &lines[from..*i]
    };
    let kind = body[0].text;
    let mut m = match kind {
        "uniform" => {
            arity(body, 2, 2)?;
            let (r, n) = (number(&body[1])?, number(&body[2])?);
            let labels = match rows_following(&mut i, "labels") {
                [] => default_labels(n).iter().map(|l| l.to_string()).collect(),
                [l] => {
                    let v: Vec<String> = l[1..].iter().map(|t| t.text.to_string()).collect();
                    if v.len() != n {
                        return Err(semantic(
                            l[0].pos,
                            format!("`labels` lists {} elements, expected {n}", v.len()),
                        ));
                    }
                    v
                }
                more => return Err(syntax(more[1][0].pos, "repeated `labels` line")),
            };
            Matroid::uniform_labeled(r, &labels).map_err(|e| semantic(body[0].pos, e.to_string()))?
        }
        "graph" => {
            arity(body, 1, 1)?;
            let nv = number(&body[1])?;
            let mut edges = Vec::new();
            for l in rows_following(&mut i, "edge") {
                arity(l, 3, 3)?;
                let (u, v) = (number(&l[2])?, number(&l[3])?);
                if u >= nv || v >= nv {
                    return Err(semantic(
                        l[0].pos,
                        format!("edge `{}` has an endpoint outside 0..{nv}", l[1].text),
                    ));
                }
                edges.push((l[1].text, u, v));
            }
            Matroid::graphic(nv, edges).map_err(|e| semantic(body[0].pos, e.to_string()))?
        }
        "linear" => {
            arity(body, 1, 2)?;
            let p = body[1]
                .text
                .strip_prefix("gf")
                .and_then(|s| s.parse::<u8>().ok())
                .ok_or_else(|| syntax(body[1].pos, format!("expected `gf<p>`, found `{}`", body[1].text)))?;
            let field = PrimeField::new(p).map_err(|e| semantic(body[1].pos, e.to_string()))?;
            let declared = body.get(2).map(number).transpose()?;
            let cols = rows_following(&mut i, "col");
            let rows = declared.unwrap_or_else(|| cols.first().map_or(0, |c| c.len() - 2));
            let mut columns = Vec::new();
            for l in cols {
                if l.len() < 2 {
                    return Err(syntax(l[0].pos, "`col` needs a label"));
                }
                let entries = l[2..]
                    .iter()
                    .map(|t| number(t).map(|v| (v % p as usize) as u8))
                    .collect::<Result<Vec<u8>>>()?;
                if entries.len() != rows {
                    return Err(semantic(
                        l[0].pos,
                        format!(
                            "column `{}` has {} entries, expected {rows}",
                            l[1].text,
                            entries.len()
                        ),
                    ));
                }
                columns.push((l[1].text, entries));
            }
            Matroid::linear_with_rows(field, rows, columns)
                .map_err(|e| semantic(body[0].pos, e.to_string()))?
        }
        "bases" => {
            arity(body, 1, 1)?;
            let r = number(&body[1])?;
            let mut labels: Vec<String> = Vec::new();
            let ground = rows_following(&mut i, "ground");
            let fixed_ground = match ground {
                [] => false,
                [g] => {
                    labels = g[1..].iter().map(|t| t.text.to_string()).collect();
                    true
                }
                more => return Err(syntax(more[1][0].pos, "repeated `ground` line")),
            };
            let basis_lines = rows_following(&mut i, "basis");
            let mut bases = Vec::new();
            for l in basis_lines {
                let mut b = ElemSet::EMPTY;
                for t in &l[1..] {
                    let idx = match labels.iter().position(|x| x == t.text) {
                        Some(k) => k,
                        None if fixed_ground => {
                            return Err(semantic(t.pos, format!("`{}` is not in the ground set", t.text)))
                        }
                        None => {
                            labels.push(t.text.to_string());
                            labels.len() - 1
                        }
                    };
                    if idx >= crate::set::MAX_ELEMENTS {
                        return Err(semantic(t.pos, "too many elements"));
                    }
                    b.insert(idx);
                }
                if b.len() != r {
                    return Err(semantic(
                        l[0].pos,
                        format!("basis has {} distinct elements, expected {r}", b.len()),
                    ));
                }
                bases.push(b);
            }
            Matroid::from_bases(&labels, r, bases).map_err(|e| semantic(body[0].pos, e.to_string()))?
        }
        other => {
            return Err(syntax(
                body[0].pos,
                format!("unknown matroid kind `{other}`; expected uniform, graph, linear or bases"),
            ))
        }
    };
    loop {
        let line = lines
            .get(i)
            .ok_or_else(|| syntax(pos, format!("matroid `{name}` is missing `end`")))?;
        i += 1;
        match line[0].text {
            "end" => {
                arity(line, 0, 0)?;
                break;
            }
            "dualize" => {
                arity(line, 0, 0)?;
                m = m.dual();
            }
            "minor" => {
                arity(line, 0, 2)?;
                let mut contract = ElemSet::EMPTY;
                let mut delete = ElemSet::EMPTY;
                for t in &line[1..] {
                    let (key, list) = t
                        .text
                        .split_once('=')
                        .ok_or_else(|| syntax(t.pos, "expected `contract=..` or `delete=..`"))?;
                    let mut set = ElemSet::EMPTY;
                    for l in list.split(',').filter(|s| !s.is_empty()) {
                        set.insert(
                            m.index_of(l)
                                .map_err(|_| semantic(t.pos, format!("unknown element `{l}`")))?,
                        );
                    }
                    match key {
                        "contract" => contract = set,
                        "delete" => delete = set,
                        _ => return Err(syntax(t.pos, format!("unknown minor key `{key}`"))),
                    }
                }
                m = m
                    .minor(contract, delete)
                    .map_err(|e| semantic(line[0].pos, e.to_string()))?;
            }
            other => {
                return Err(syntax(
                    line[0].pos,
                    format!("unexpected `{other}` in matroid `{name}`"),
                ))
            }
        }
    }
    Ok((Definition { name, matroid: m, pos }, i))
}

/// Renders one block. Re-parsing the output gives the same matroid, and
/// serializing that again gives identical text.
pub fn serialize(name: &str, m: &Matroid) -> String {
    let mut out = format!("matroid {name}\n");
    body(&mut out, m);
    out.push_str("end\n");
    out
}

/// Renders several blocks separated by blank lines.
pub fn serialize_all<'a>(items: impl IntoIterator<Item = (&'a str, &'a Matroid)>) -> String {
    items
        .into_iter()
        .map(|(n, m)| serialize(n, m))
        .collect::<Vec<_>>()
        .join("\n")
}

fn list(m: &Matroid, x: ElemSet) -> String {
    m.labels_of(x).join(",")
}

fn body(out: &mut String, m: &Matroid) {
    match m.backend() {
        Backend::Uniform { rank } => {
            let _ = writeln!(out, "uniform {rank} {}", m.len());
            let defaults = default_labels(m.len());
            if m.labels() != defaults.as_slice() {
                let _ = writeln!(out, "labels {}", m.labels_of(m.ground()).join(" "));
            }
        }
        Backend::Graphic(g) => {
            let _ = writeln!(out, "graph {}", g.vertices);
            for (i, (u, v)) in g.edges.iter().enumerate() {
                let _ = writeln!(out, "edge {} {u} {v}", m.label(i));
            }
        }
        Backend::Linear(rep) => {
            let _ = writeln!(out, "linear gf{} {}", rep.field.order(), rep.rows);
            for (i, c) in rep.columns.iter().enumerate() {
                let entries: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                let _ = write!(out, "col {}", m.label(i));
                for e in entries {
                    let _ = write!(out, " {e}");
                }
                out.push('\n');
            }
        }
        Backend::Bases(f) => {
            let _ = writeln!(out, "bases {}", f.rank);
            let _ = writeln!(out, "ground {}", m.labels_of(m.ground()).join(" "));
            for b in &f.bases {
                let _ = write!(out, "basis");
                for l in m.labels_of(*b) {
                    let _ = write!(out, " {l}");
                }
                out.push('\n');
            }
        }
        Backend::Dual(inner) => {
            body(out, inner);
            out.push_str("dualize\n");
        }
        Backend::Minor(rep) => {
            body(out, &rep.inner);
            let _ = writeln!(
                out,
                "minor contract={} delete={}",
                list(&rep.inner, rep.contracted),
                list(&rep.inner, rep.deleted())
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_uniform() {
        let v = parse_matroid_file("matroid u24\nuniform 2 4\nend\n").unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].0, "u24");
        assert_eq!((v[0].1.len(), v[0].1.full_rank()), (4, 2));
    }

    #[test]
    fn column_arity_error_names_the_column() {
        let text = "matroid m\nlinear gf3 2\ncol a 1 0\ncol b 1\nend\n";
        match parse_matroid_file(text) {
            Err(Error::Semantic { pos, msg }) => {
                assert_eq!(pos.line, 4);
                assert!(msg.contains("`b`"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_matroid_file("matroid m\nuniform two 4\nend\n") {
            Err(Error::Syntax { pos, .. }) => assert_eq!((pos.line, pos.column), (2, 9)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_matroid_file("matroid m\nuniform 2 4\n"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn basis_axiom_failure_is_semantic() {
        let text = "matroid m\nbases 2\nbasis a b\nbasis c d\nend\n";
        match parse_matroid_file(text) {
            Err(Error::Semantic { msg, .. }) => assert!(msg.contains("{a,b}") || msg.contains("{c,d}"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip_with_directives() {
        let text = "matroid fan # comment\ngraph 4\nedge a 0 1\nedge b 1 2\nedge c 0 2\nedge d 2 3\nedge e 0 3\ndualize\nminor contract=a delete=\nend\n";
        let v = parse_matroid_file(text).unwrap();
        let s1 = serialize("fan", &v[0].1);
        let again = parse_matroid_file(&s1).unwrap();
        assert!(again[0].1.same_rank_function(&v[0].1));
        assert_eq!(serialize("fan", &again[0].1), s1);
    }
}

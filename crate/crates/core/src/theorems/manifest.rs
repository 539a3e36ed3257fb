//! Pair manifests.
//!
//! ```text
//! # comment
//! load wheels.mat
//! matroid tiny
//! uniform 2 4
//! end
//! pair wheel5 k4 T1 Cw32
//! pair tiny u1_2
//! ```
//!
//! `load` paths are relative to the manifest. Names resolve against the
//! loaded and inline definitions first, then the catalog. A pair without a
//! statement list runs every statement.

use std::path::{Path, PathBuf};

use crate::catalog;
use crate::error::{Error, Pos, Result};
use crate::format::{parse_block, parse_definitions, semantic, syntax, tokenize, Definition};
use crate::matroid::Matroid;

use super::statements::{lookup, Statement, STATEMENTS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpec {
    pub m: String,
    pub n: String,
    /// Statement tokens as written; empty means all.
    pub statements: Vec<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub library: Vec<Definition>,
    pub pairs: Vec<PairSpec>,
}

/// A pair with both matroids built and its statements selected.
#[derive(Clone, Debug)]
pub struct ResolvedPair {
    pub label: String,
    pub m: Matroid,
    pub n: Matroid,
    pub statements: Vec<&'static Statement>,
}

fn in_file(path: &Path, e: Error) -> Error {
    let f = path.display();
    match e {
        Error::Syntax { pos, msg } => Error::Syntax {
            pos,
            msg: format!("in {f}: {msg}"),
        },
        Error::Semantic { pos, msg } => Error::Semantic {
            pos,
            msg: format!("in {f}: {msg}"),
        },
        other => other,
    }
}

/// Reads a matroid file.
pub fn load_library(path: &Path) -> Result<Vec<Definition>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_definitions(&text).map_err(|e| in_file(path, e))
}

pub fn parse_manifest(text: &str, base: Option<&Path>) -> Result<Manifest> {
    let lines = tokenize(text);
    let mut out = Manifest::default();
    let add = |out: &mut Manifest, d: Definition| -> Result<()> {
        if out.library.iter().any(|o| o.name == d.name) {
            return Err(semantic(d.pos, format!("matroid `{}` defined twice", d.name)));
        }
        out.library.push(d);
        Ok(())
    };
    let mut i = 0;
    while i < lines.len() {
        let line = &lines[i];
        let head = &line[0];
        match head.text {
            "load" => {
                if line.len() != 2 {
                    return Err(syntax(head.pos, "`load` takes one path"));
                }
                let path: PathBuf = match base {
                    Some(b) => b.join(line[1].text),
                    None => PathBuf::from(line[1].text),
                };
                for mut d in load_library(&path)? {
                    d.pos = head.pos;
                    add(&mut out, d)?;
                }
                i += 1;
            }
            "matroid" => {
                let (d, next) = parse_block(&lines, i)?;
                add(&mut out, d)?;
                i = next;
            }
            "pair" => {
                if line.len() < 3 {
                    return Err(syntax(head.pos, "`pair` needs two matroid names"));
                }
                for t in &line[3..] {
                    if lookup(t.text).is_empty() {
                        let known: Vec<&str> = STATEMENTS.iter().map(|s| s.base).collect();
                        let mut known = known;
                        known.dedup();
                        return Err(semantic(
                            t.pos,
                            format!("unknown statement `{}` (known: {})", t.text, known.join(", ")),
                        ));
                    }
                }
                out.pairs.push(PairSpec {
                    m: line[1].text.to_string(),
                    n: line[2].text.to_string(),
                    statements: line[3..].iter().map(|t| t.text.to_string()).collect(),
                    pos: head.pos,
                });
                i += 1;
            }
            other => {
                return Err(syntax(
                    head.pos,
                    format!("expected `load`, `matroid` or `pair`, found `{other}`"),
                ))
            }
        }
    }
    Ok(out)
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_manifest(&text, path.parent()).map_err(|e| in_file(path, e))
}

impl Manifest {
    /// A defined matroid, or a catalog reference.
    pub fn resolve(&self, name: &str) -> Result<Matroid> {
        if let Some(d) = self.library.iter().find(|d| d.name == name) {
            return Ok(d.matroid.clone());
        }
        catalog::resolve(name).map_err(|e| match e {
            Error::Resolution { name, known } => {
                let defined: Vec<&str> = self.library.iter().map(|d| d.name.as_str()).collect();
                let known = if defined.is_empty() {
                    known
                } else {
                    format!("{}; catalog: {known}", defined.join(", "))
                };
                Error::Resolution { name, known }
            }
            other => other,
        })
    }

    pub fn resolve_pairs(&self) -> Result<Vec<ResolvedPair>> {
        self.pairs
            .iter()
            .map(|p| {
                let statements = if p.statements.is_empty() {
                    STATEMENTS.iter().filter(|s| !s.explicit).collect()
                } else {
                    let mut v: Vec<&'static Statement> = Vec::new();
                    for s in STATEMENTS {
                        if p.statements.iter().any(|t| lookup(t).iter().any(|l| l.id == s.id)) {
                            v.push(s);
                        }
                    }
                    v
                };
                Ok(ResolvedPair {
                    label: format!("{}/{}", p.m, p.n),
                    m: self.resolve(&p.m)?,
                    n: self.resolve(&p.n)?,
                    statements,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_definitions_and_pairs() {
        let text = "matroid t\nuniform 2 4\nend\npair t u1_2 T1 w36\npair wheel4 k4\n";
        let m = parse_manifest(text, None).unwrap();
        assert_eq!(m.library.len(), 1);
        let pairs = m.resolve_pairs().unwrap();
        assert_eq!(pairs[0].label, "t/u1_2");
        let ids: Vec<&str> = pairs[0].statements.iter().map(|s| s.id).collect();
        assert_eq!(ids, ["T1(k=1)", "T1(k=2)", "T1(k=3)", "w36"]);
        assert_eq!(pairs[1].statements.len(), STATEMENTS.len() - 1);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_manifest("pair a b T7\n", None) {
            Err(Error::Semantic { pos, .. }) => assert_eq!((pos.line, pos.column), (1, 10)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_manifest("frobnicate\n", None), Err(Error::Syntax { .. })));
        let m = parse_manifest("pair nosuch k4\n", None).unwrap();
        assert!(matches!(m.resolve_pairs(), Err(Error::Resolution { .. })));
    }
}

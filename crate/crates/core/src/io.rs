//! Text formats.
//!
//! Matrix file: a `q r n` header, then `r` rows of `n` field indices.
//! Graph file: a `graph V E` header, then `E` lines `u v` (0-indexed).
//! Decomposition file: `tree ℓ`, then `ℓ − 1` edge lines `u v`, then `tau`,
//! then one `element vertex` line per element.
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfq::FieldSpec;
use crate::matroid::Matroid;
use crate::treedecomp::{Tree, TreeDecomposition};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| {
                Error::Parse(format!(
                    "line {lineno}: {t:?} is not a non-negative integer"
                ))
            })
        })
        .collect()
}

fn expect_len(v: &[usize], len: usize, lineno: usize) -> Result<()> {
    if v.len() != len {
        return Err(Error::Parse(format!(
            "line {lineno}: expected {len} numbers, found {}",
            v.len()
        )));
    }
    Ok(())
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matroid file".into()))?;
    if let Some(rest) = header.strip_prefix("graph") {
        let h = numbers(rest, lineno)?;
        expect_len(&h, 2, lineno)?;
        let (vertices, count) = (h[0], h[1]);
        let mut edges = Vec::with_capacity(count);
        for _ in 0..count {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {count} edges")))?;
            let e = numbers(line, lineno)?;
            expect_len(&e, 2, lineno)?;
            edges.push((e[0], e[1]));
        }
        if let Some((lineno, _)) = lines.next() {
            return Err(Error::Parse(format!("line {lineno}: trailing content")));
        }
        return Matroid::graphic(vertices, edges);
    }
    let h = numbers(header, lineno)?;
    expect_len(&h, 3, lineno)?;
    let (q, r, n) = (h[0], h[1], h[2]);
    let field = Arc::new(FieldSpec::gf(
        u32::try_from(q).map_err(|_| Error::OrderTooLarge(q as u64))?,
    )?);
    let mut columns = vec![Vec::with_capacity(r); n];
    for _ in 0..r {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {r} matrix rows")))?;
        let row = numbers(line, lineno)?;
        expect_len(&row, n, lineno)?;
        for (j, &x) in row.iter().enumerate() {
            if x >= q {
                return Err(Error::Parse(format!(
                    "line {lineno}: entry {x} outside GF({q})"
                )));
            }
            columns[j].push(x as u8);
        }
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(Error::Parse(format!("line {lineno}: trailing content")));
    }
    Matroid::from_columns(field, r, columns)
}

/// Matrix or graph text for a linear or graphic matroid.
pub fn write_matroid(m: &Matroid) -> Result<String> {
    let mut out = String::new();
    if let Some(rep) = m.linear_rep() {
        writeln!(out, "{} {} {}", rep.field().order(), rep.rows(), m.size()).unwrap();
        for row in rep.matrix() {
            let cells: Vec<String> = row.iter().map(|x| x.index().to_string()).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
    } else if let Some((vertices, edges)) = m.graph() {
        writeln!(out, "graph {vertices} {}", edges.len()).unwrap();
        for (u, v) in edges {
            writeln!(out, "{u} {v}").unwrap();
        }
    } else {
        return Err(Error::NotLinear);
    }
    Ok(out)
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut lines = content_lines(text).peekable();
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty decomposition file".into()))?;
    let rest = header
        .strip_prefix("tree")
        .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `tree <vertices>`")))?;
    let h = numbers(rest, lineno)?;
    expect_len(&h, 1, lineno)?;
    let vertices = h[0];
    let mut edges = Vec::new();
    for _ in 1..vertices {
        let (lineno, line) = lines.next().ok_or_else(|| {
            Error::Parse(format!(
                "expected {} tree edges",
                vertices.saturating_sub(1)
            ))
        })?;
        let e = numbers(line, lineno)?;
        expect_len(&e, 2, lineno)?;
        edges.push((e[0], e[1]));
    }
    match lines.next() {
        Some((_, "tau")) => {}
        Some((lineno, _)) => return Err(Error::Parse(format!("line {lineno}: expected `tau`"))),
        None => return Err(Error::Parse("missing `tau` section".into())),
    }
    let mut pairs = Vec::new();
    for (lineno, line) in lines {
        let p = numbers(line, lineno)?;
        expect_len(&p, 2, lineno)?;
        pairs.push((p[0], p[1]));
    }
    let mut tau = vec![usize::MAX; pairs.len()];
    for (e, v) in pairs {
        if e >= tau.len() {
            return Err(Error::ElementOutOfRange(e));
        }
        if tau[e] != usize::MAX {
            return Err(Error::Parse(format!("element {e} assigned twice")));
        }
        tau[e] = v;
    }
    TreeDecomposition::new(Tree::new(vertices, edges)?, tau)
}

pub fn write_decomposition(dec: &TreeDecomposition) -> String {
    let mut out = String::new();
    writeln!(out, "tree {}", dec.tree().vertex_count()).unwrap();
    for (u, v) in dec.tree().edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out.push_str("tau\n");
    for (e, v) in dec.assignment().iter().enumerate() {
        writeln!(out, "{e} {v}").unwrap();
    }
    out
}

pub fn read_matroid_file(path: &Path) -> Result<Matroid> {
    parse_matroid(&std::fs::read_to_string(path)?)
}

pub fn read_decomposition_file(path: &Path) -> Result<TreeDecomposition> {
    parse_decomposition(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::tests::fano;
    use crate::matroid::RankFn;
    use crate::treedecomp::sample_decomposition_u11_16;

    #[test]
    fn matrix_round_trip() {
        let f = fano();
        let text = write_matroid(&f).unwrap();
        assert!(text.starts_with("2 3 7\n"));
        let back = parse_matroid(&text).unwrap();
        for s in 0..128 {
            assert_eq!(back.rank(s), f.rank(s));
        }
    }

    #[test]
    fn graph_round_trip() {
        let text = "# K4\ngraph 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
        let m = parse_matroid(text).unwrap();
        assert_eq!((m.size(), m.full_rank()), (6, 3));
        assert_eq!(write_matroid(&m).unwrap(), &text[5..]);
    }

    #[test]
    fn matrix_errors() {
        assert!(parse_matroid("").is_err());
        assert!(parse_matroid("2 2 2\n1 0\n").is_err());
        assert!(parse_matroid("2 1 2\n1 2\n").is_err());
        assert!(parse_matroid("6 1 1\n1\n").is_err());
        assert!(parse_matroid("2 1 2\n1 0\n1 1\n").is_err());
        assert!(parse_matroid("graph 2 1\n0 2\n").is_err());
        assert!(write_matroid(&Matroid::uniform(2, 3).unwrap()).is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let (_, d) = sample_decomposition_u11_16();
        let text = write_decomposition(&d);
        assert_eq!(parse_decomposition(&text).unwrap(), d);
        let single = parse_decomposition("tree 1\ntau\n0 0\n1 0\n").unwrap();
        assert_eq!(single, TreeDecomposition::single_vertex(2));
    }

    #[test]
    fn decomposition_errors() {
        assert!(parse_decomposition("tree 2\ntau\n0 0\n").is_err());
        assert!(parse_decomposition("tree 2\n0 1\n0 0\n").is_err());
        assert!(parse_decomposition("tree 2\n0 1\ntau\n0 0\n0 1\n").is_err());
        assert!(parse_decomposition("tree 2\n0 1\ntau\n0 2\n").is_err());
        assert!(parse_decomposition("tree 2\n0 1\ntau\n3 0\n").is_err());
    }
}

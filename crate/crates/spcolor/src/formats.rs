//! Text formats for multigraphs and edge colorings.
//!
//! A graph file holds optional `c` comment lines, one `p spm <n> <m>` header,
//! and exactly `m` lines `e <u> <v> <mult>` with 1-based vertex ids. A
//! coloring file holds a `s YES k=<k>` line followed by one line per edge
//! class, `e <u> <v> <mult> c <c1> ... <c_mult>`, listing the distinct colors
//! assigned to the parallel edges of that class. Writers emit a canonical
//! form: classes sorted by endpoints, colors ascending, so equal values
//! serialize to identical bytes.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::colorer::Coloring;
use crate::multigraph::{Multigraph, VertexId};

/// A syntax or consistency error in a graph or coloring file, tagged with the
/// 1-based line it was found on.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Non-comment, non-blank lines paired with their 1-based line numbers.
fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !(*l == "c" || l.starts_with("c ")))
}

fn parse_number<T: std::str::FromStr>(
    token: &str,
    what: &str,
    line: usize,
) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{token}`")))
}

/// Checks a 1-based vertex id against the header count and converts it to the
/// 0-based internal id.
fn check_vertex(id: u64, n: usize, line: usize) -> Result<VertexId, ParseError> {
    if id == 0 || id > n as u64 {
        return Err(ParseError::new(
            line,
            format!("vertex id {id} out of range 1..={n}"),
        ));
    }
    Ok((id - 1) as VertexId)
}

/// Parses a graph file.
pub fn parse_graph(text: &str) -> Result<Multigraph, ParseError> {
    let mut lines = meaningful_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `p spm <n> <m>` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "p" || fields[1] != "spm" {
        return Err(ParseError::new(
            header_line,
            format!("expected `p spm <n> <m>` header, found `{header}`"),
        ));
    }
    let n: usize = parse_number(fields[2], "vertex count", header_line)?;
    let m: usize = parse_number(fields[3], "class count", header_line)?;

    let mut classes: Vec<(VertexId, VertexId, u64)> = Vec::with_capacity(m);
    let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "e" {
            return Err(ParseError::new(
                line,
                format!("expected `e <u> <v> <mult>`, found `{content}`"),
            ));
        }
        if classes.len() == m {
            return Err(ParseError::new(
                line,
                format!("more than {m} edge lines"),
            ));
        }
        let u = check_vertex(parse_number(fields[1], "vertex id", line)?, n, line)?;
        let v = check_vertex(parse_number(fields[2], "vertex id", line)?, n, line)?;
        let mult: u64 = parse_number(fields[3], "multiplicity", line)?;
        if u == v {
            return Err(ParseError::new(line, format!("loop at vertex {}", u + 1)));
        }
        if mult == 0 {
            return Err(ParseError::new(line, "multiplicity must be at least 1"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(
                line,
                format!("duplicate edge class {} {}", u.min(v) + 1, u.max(v) + 1),
            ));
        }
        classes.push((u, v, mult));
    }
    if classes.len() != m {
        return Err(ParseError::new(
            last_line + 1,
            format!("expected {m} edge lines, found {}", classes.len()),
        ));
    }
    Ok(Multigraph::build(n, classes).expect("validated while parsing"))
}

/// Writes a graph file in canonical form.
pub fn write_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    writeln!(out, "p spm {} {}", g.vertex_count(), g.class_count()).unwrap();
    for class in g.classes() {
        writeln!(out, "e {} {} {}", class.u + 1, class.v + 1, class.mult).unwrap();
    }
    out
}

/// Parses a coloring file.
pub fn parse_coloring(text: &str) -> Result<Coloring, ParseError> {
    let mut lines = meaningful_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `s YES k=<k>` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let k = match fields.as_slice() {
        ["s", "YES", field] if field.starts_with("k=") => {
            parse_number::<u64>(&field[2..], "palette size", header_line)?
        }
        _ => {
            return Err(ParseError::new(
                header_line,
                format!("expected `s YES k=<k>` header, found `{header}`"),
            ))
        }
    };

    let mut classes: BTreeMap<(VertexId, VertexId), Vec<u64>> = BTreeMap::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() < 5 || fields[0] != "e" || fields.get(4) != Some(&"c") {
            return Err(ParseError::new(
                line,
                format!("expected `e <u> <v> <mult> c <colors...>`, found `{content}`"),
            ));
        }
        let u: u64 = parse_number(fields[1], "vertex id", line)?;
        let v: u64 = parse_number(fields[2], "vertex id", line)?;
        if u == 0 || v == 0 {
            return Err(ParseError::new(line, "vertex ids are 1-based"));
        }
        if u == v {
            return Err(ParseError::new(line, format!("loop at vertex {u}")));
        }
        let (u, v) = ((u - 1) as VertexId, (v - 1) as VertexId);
        let mult: u64 = parse_number(fields[3], "multiplicity", line)?;
        if mult == 0 {
            return Err(ParseError::new(line, "multiplicity must be at least 1"));
        }
        if fields.len() as u64 - 5 != mult {
            return Err(ParseError::new(
                line,
                format!(
                    "expected {mult} colors, found {}",
                    fields.len() - 5
                ),
            ));
        }
        let mut colors = Vec::with_capacity(mult as usize);
        for token in &fields[5..] {
            let color: u64 = parse_number(token, "color", line)?;
            if color == 0 || color > k {
                return Err(ParseError::new(
                    line,
                    format!("color {color} out of range 1..={k}"),
                ));
            }
            if colors.contains(&color) {
                return Err(ParseError::new(
                    line,
                    format!("color {color} repeated within the class"),
                ));
            }
            colors.push(color);
        }
        colors.sort_unstable();
        if classes.insert((u.min(v), u.max(v)), colors).is_some() {
            return Err(ParseError::new(
                line,
                format!("duplicate edge class {} {}", u.min(v) + 1, u.max(v) + 1),
            ));
        }
    }
    Ok(Coloring { k, classes })
}

/// Writes a coloring file in canonical form.
pub fn write_coloring(coloring: &Coloring) -> String {
    let mut out = String::new();
    writeln!(out, "s YES k={}", coloring.k).unwrap();
    for (&(u, v), colors) in &coloring.classes {
        let mut sorted = colors.clone();
        sorted.sort_unstable();
        write!(out, "e {} {} {} c", u + 1, v + 1, sorted.len()).unwrap();
        for color in &sorted {
            write!(out, " {color}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorer::find_coloring;

    #[test]
    fn graph_round_trip_is_identity() {
        let g = Multigraph::build(4, [(0, 1, 2), (1, 2, 1), (2, 3, 5), (0, 3, 1)]).unwrap();
        let text = write_graph(&g);
        assert_eq!(
            text,
            "p spm 4 4\ne 1 2 2\ne 1 4 1\ne 2 3 1\ne 3 4 5\n"
        );
        let parsed = parse_graph(&text).unwrap();
        assert_eq!(parsed.classes(), g.classes());
        assert_eq!(write_graph(&parsed), text);
    }

    #[test]
    fn graph_parse_accepts_comments_and_blank_lines() {
        let text = "c generated for a smoke test\n\np spm 3 2\nc mid-file note\ne 1 2 1\ne 2 3 4\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.multiplicity(1, 2), 4);
    }

    #[test]
    fn graph_parse_errors_name_the_line() {
        let cases = [
            ("", 1, "missing `p spm <n> <m>` header"),
            ("p graph 3 1\ne 1 2 1\n", 1, "expected `p spm <n> <m>` header"),
            ("p spm 3 2\ne 1 2 1\n", 3, "expected 2 edge lines, found 1"),
            ("p spm 3 1\ne 1 2 1\ne 2 3 1\n", 3, "more than 1 edge lines"),
            ("p spm 3 1\ne 1 4 1\n", 2, "vertex id 4 out of range 1..=3"),
            ("p spm 3 1\ne 2 2 1\n", 2, "loop at vertex 2"),
            ("p spm 3 1\ne 1 2 0\n", 2, "multiplicity must be at least 1"),
            ("p spm 3 2\ne 1 2 1\ne 2 1 3\n", 3, "duplicate edge class 1 2"),
            ("p spm 3 1\ne 1 two 1\n", 2, "invalid vertex id `two`"),
        ];
        for (text, line, fragment) in cases {
            let err = parse_graph(text).unwrap_err();
            assert_eq!(err.line, line, "wrong line for {text:?}: {err}");
            assert!(
                err.message.contains(fragment),
                "missing `{fragment}` in `{err}`"
            );
        }
    }

    #[test]
    fn coloring_round_trip_is_identity() {
        let g = Multigraph::build(3, [(0, 1, 2), (0, 2, 1), (1, 2, 1)]).unwrap();
        let coloring = find_coloring(&g, 4).unwrap().unwrap();
        let text = write_coloring(&coloring);
        let parsed = parse_coloring(&text).unwrap();
        assert_eq!(parsed.k, coloring.k);
        assert_eq!(parsed.classes, coloring.classes);
        assert_eq!(write_coloring(&parsed), text);
    }

    #[test]
    fn coloring_parse_errors_name_the_line() {
        let cases = [
            ("s NO k=3\n", 1, "expected `s YES k=<k>` header"),
            ("s YES k=3\ne 1 2 2 c 1\n", 2, "expected 2 colors, found 1"),
            ("s YES k=3\ne 1 2 1 c 4\n", 2, "color 4 out of range 1..=3"),
            ("s YES k=3\ne 1 2 2 c 1 1\n", 2, "color 1 repeated"),
            ("s YES k=3\ne 1 2 1 c 1\ne 2 1 1 c 2\n", 3, "duplicate edge class 1 2"),
            ("s YES k=3\ne 1 2 1 2\n", 2, "expected `e <u> <v> <mult> c <colors...>`"),
        ];
        for (text, line, fragment) in cases {
            let err = parse_coloring(text).unwrap_err();
            assert_eq!(err.line, line, "wrong line for {text:?}: {err}");
            assert!(
                err.message.contains(fragment),
                "missing `{fragment}` in `{err}`"
            );
        }
    }

    #[test]
    fn coloring_writer_sorts_classes_and_colors() {
        let mut classes = BTreeMap::new();
        classes.insert((1, 2), vec![5, 1, 3]);
        classes.insert((0, 2), vec![2]);
        let coloring = Coloring { k: 5, classes };
        assert_eq!(
            write_coloring(&coloring),
            "s YES k=5\ne 1 3 1 c 2\ne 2 3 3 c 1 3 5\n"
        );
    }
}

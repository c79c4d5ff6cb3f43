//! PACE 2017 `.gr` and `.td` formats. External ids are 1-based; internal
//! vertex `v` is external `v + 1`, and bag `i` is external bag `i + 1`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::TreeDecomposition;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {}: {}", line, msg.into()))
}

fn numbers(line_no: usize, toks: &[&str]) -> Result<Vec<usize>> {
    toks.iter()
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(line_no, format!("expected a number, got `{t}`"))))
        .collect()
}

/// Content lines with their 1-based line numbers, comments and blanks skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            None
        } else {
            Some((i + 1, toks))
        }
    })
}

pub fn parse_gr(text: &str) -> Result<Graph> {
    parse_gr_with_warnings(text).map(|(g, _)| g)
}

/// Parses a `.gr` file. Duplicate edges are dropped and reported as warnings.
pub fn parse_gr_with_warnings(text: &str) -> Result<(Graph, Vec<String>)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::Parse("missing `p tw` header".into()))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "tw" {
        return Err(parse_err(hl, "malformed header, expected `p tw <n> <m>`"));
    }
    let nm = numbers(hl, &header[2..])?;
    let (n, m) = (nm[0], nm[1]);
    let mut g = Graph::new(n);
    let mut warnings = Vec::new();
    let mut count = 0;
    for (ln, toks) in lines {
        if toks.len() != 2 {
            return Err(parse_err(ln, "expected an edge `<u> <v>`"));
        }
        let uv = numbers(ln, &toks)?;
        let (u, v) = (uv[0], uv[1]);
        if u == 0 || v == 0 || u > n || v > n {
            return Err(parse_err(ln, format!("vertex out of range 1..={n}")));
        }
        if u == v {
            return Err(parse_err(ln, format!("self-loop at {u}")));
        }
        count += 1;
        if !g.add_edge(u - 1, v - 1) {
            warnings.push(format!("line {ln}: duplicate edge {u} {v} ignored"));
        }
    }
    if count != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {count}")));
    }
    Ok((g, warnings))
}

/// Parses a `.td` file. The tree must be connected with `bags - 1` edges.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::Parse("missing `s td` header".into()))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(parse_err(hl, "malformed header, expected `s td <bags> <width+1> <n>`"));
    }
    let h = numbers(hl, &header[2..])?;
    let (nb, max_bag, n) = (h[0], h[1], h[2]);
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nb];
    let mut edges = Vec::new();
    for (ln, toks) in lines {
        if toks[0] == "b" {
            if toks.len() < 2 {
                return Err(parse_err(ln, "bag line without id"));
            }
            let nums = numbers(ln, &toks[1..])?;
            let id = nums[0];
            if id == 0 || id > nb {
                return Err(parse_err(ln, format!("bag id {id} out of range 1..={nb}")));
            }
            if bags[id - 1].is_some() {
                return Err(parse_err(ln, format!("bag {id} defined twice")));
            }
            let mut bag = Vec::with_capacity(nums.len() - 1);
            for &v in &nums[1..] {
                if v == 0 || v > n {
                    return Err(parse_err(ln, format!("vertex {v} out of range 1..={n}")));
                }
                bag.push(v - 1);
            }
            bags[id - 1] = Some(bag);
        } else {
            if toks.len() != 2 {
                return Err(parse_err(ln, "expected a tree edge `<i> <j>`"));
            }
            let ij = numbers(ln, &toks)?;
            if ij.iter().any(|&x| x == 0 || x > nb) {
                return Err(parse_err(ln, format!("tree edge endpoint out of range 1..={nb}")));
            }
            edges.push((ij[0] - 1, ij[1] - 1));
        }
    }
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Parse(format!("bag {} is missing", i + 1))))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition::new(n, bags, edges);
    if td.bags.iter().any(|b| b.len() > max_bag) {
        return Err(Error::Parse(format!("a bag exceeds the announced size {max_bag}")));
    }
    if !td.is_tree() {
        return Err(Error::Validation("decomposition tree is not a connected tree".into()));
    }
    Ok(td)
}

pub fn emit_gr(g: &Graph) -> String {
    let mut s = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    s
}

pub fn emit_td(td: &TreeDecomposition) -> String {
    let max_bag = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut s = format!("s td {} {} {}\n", td.bags.len(), max_bag, td.n);
    for (i, b) in td.bags.iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for v in b {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    for &(a, b) in &td.edges {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedecomp::validate_td;

    #[test]
    fn path_three() {
        let g = parse_gr("c a path\np tw 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn single_bag_width_zero() {
        let g = parse_gr("p tw 1 0\n").unwrap();
        let td = parse_td("s td 1 1 1\nb 1 1\n").unwrap();
        assert_eq!(td.width(), 0);
        validate_td(&g, &td).unwrap();
    }

    #[test]
    fn missing_coverage_names_edge() {
        let g = parse_gr("p tw 3 3\n1 2\n2 3\n1 3\n").unwrap();
        let td = parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap();
        let err = validate_td(&g, &td).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("{1, 3}"));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_gr("p td 3 2\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_gr("p tw 2 1\n1 3\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_gr("p tw 2 2\n1 2\n"), Err(Error::Parse(_))));
        let (g, w) = parse_gr_with_warnings("p tw 2 2\n1 2\n2 1\n").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(w.len(), 1);
        assert!(matches!(parse_td("s td 2 1 2\nb 1 1\nb 2 2\n"), Err(Error::Validation(_))));
        assert!(matches!(parse_td("s td 1 1 1\nb 1 2\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn round_trip_is_bit_stable() {
        let gr = "p tw 4 3\n1 2\n2 3\n3 4\n";
        assert_eq!(emit_gr(&parse_gr(gr).unwrap()), gr);
        let td = "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n";
        assert_eq!(emit_td(&parse_td(td).unwrap()), td);
    }
}

use anyhow::{bail, Result};
use meg_core::Graph;

/// Parses `0,1,2`, `{a',b',d}` or `(0,0),(1,2)` against a graph. Labels win
/// over indices; indices are 0-based.
pub fn parse_vertex_set(g: &Graph, text: &str) -> Result<Vec<usize>> {
    let body = text.trim();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .or_else(|| body.strip_prefix('[').and_then(|b| b.strip_suffix(']')))
        .unwrap_or(body);
    let mut out = Vec::new();
    for token in split_top_level(body) {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let v = match g.vertex_by_label(token) {
            Some(v) => v,
            None => match token.parse::<usize>() {
                Ok(v) if v < g.order() => v,
                Ok(v) => bail!("vertex {v} out of range (graph has {} vertices)", g.order()),
                Err(_) => bail!("unknown vertex `{token}`"),
            },
        };
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use meg_core::families::pendant_cycle_example;
    use meg_core::{cartesian, families::path};

    #[test]
    fn indices_and_braces() {
        let g = path(4);
        assert_eq!(parse_vertex_set(&g, "0,3").unwrap(), vec![0, 3]);
        assert_eq!(parse_vertex_set(&g, "{2, 0,2}").unwrap(), vec![0, 2]);
        assert_eq!(parse_vertex_set(&g, "").unwrap(), Vec::<usize>::new());
        assert!(parse_vertex_set(&g, "4").is_err());
        assert!(parse_vertex_set(&g, "x").is_err());
    }

    #[test]
    fn labels_with_commas() {
        let p = cartesian(&path(2), &path(2)).unwrap().graph;
        assert_eq!(parse_vertex_set(&p, "(0,0),(1,1)").unwrap(), vec![0, 3]);
        let g = pendant_cycle_example();
        assert_eq!(parse_vertex_set(&g, "a',b',d").unwrap(), vec![3, 5, 6]);
    }
}

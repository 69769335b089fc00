use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

/// Parses whitespace-separated `u v` lines. An optional first line `n <count>`
/// fixes the vertex count; otherwise it is one more than the largest label.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if !seen_content && tokens.first() == Some(&"n") {
            seen_content = true;
            if tokens.len() != 2 {
                return Err(parse_err(line_no, "expected `n <count>`"));
            }
            declared = Some(parse_label(tokens[1], line_no)?);
            continue;
        }
        seen_content = true;
        if tokens.len() != 2 {
            return Err(parse_err(
                line_no,
                format!("expected two vertex labels, found {}", tokens.len()),
            ));
        }
        let u = parse_label(tokens[0], line_no)?;
        let v = parse_label(tokens[1], line_no)?;
        if u == v {
            return Err(Error::validation(format!("self-loop {u} {u} on line {line_no}")));
        }
        edges.push((u, v, line_no));
    }

    let n = match declared {
        Some(n) => {
            if let Some(&(u, v, line_no)) = edges.iter().find(|&&(u, v, _)| u.max(v) >= n) {
                return Err(Error::validation(format!(
                    "edge {u} {v} on line {line_no} exceeds declared vertex count {n}"
                )));
            }
            n
        }
        None => edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0),
    };
    if n > MAX_VERTICES {
        return Err(Error::validation(format!(
            "{n} vertices exceeds the limit of {MAX_VERTICES}"
        )));
    }
    let mut g = Graph::empty(n)?;
    for (u, v, _) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

fn parse_label(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("`{token}` is not a nonnegative integer")))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Decodes a graph6 string (short size form only, n ≤ 62).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    let Some((&head, body)) = bytes.split_first() else {
        return Err(Error::Format("empty input".into()));
    };
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Format(format!("byte {b} at offset {pos} outside [63, 126]")));
        }
    }
    if head == 126 {
        return Err(Error::Format("long size form (n > 62) is not supported".into()));
    }
    let n = (head - 63) as usize;
    let bit_count = n * n.saturating_sub(1) / 2;
    let needed = bit_count.div_ceil(6);
    if body.len() < needed {
        return Err(Error::Format(format!(
            "truncated: {n} vertices need {needed} data bytes, found {}",
            body.len()
        )));
    }
    if body.len() > needed {
        return Err(Error::Format(format!(
            "{} trailing bytes after the adjacency data",
            body.len() - needed
        )));
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes a graph in graph6 (short size form).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_examples() {
        let k3 = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        assert_eq!(k3, Graph::complete(3));

        let g = parse_edge_list("n 4\n0 1").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(2) + g.degree(3), 0);

        assert!(matches!(parse_edge_list("0 0"), Err(Error::Validation(_))));
    }

    #[test]
    fn edge_list_comments_duplicates_and_errors() {
        let g = parse_edge_list("# triangle\n\n0 1\n1 0\n  0 1  \n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(parse_edge_list("0 1\n1 x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("n 3\n0 3"), Err(Error::Validation(_))));
        assert!(matches!(parse_edge_list("-1 2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("0 70"), Err(Error::Validation(_))));
    }

    #[test]
    fn graph6_examples() {
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6("A?").unwrap(), Graph::empty(2).unwrap());
        assert_eq!(parse_graph6("Bw\n").unwrap(), Graph::complete(3));
        // petgraph reference string for a 5-vertex graph
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
        assert_eq!(encode_graph6(&Graph::petersen()).len(), 1 + 45usize.div_ceil(6));
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(parse_graph6(""), Err(Error::Format(_))));
        assert!(matches!(parse_graph6("B"), Err(Error::Format(_))));
        assert!(matches!(parse_graph6("Bww"), Err(Error::Format(_))));
        assert!(matches!(parse_graph6("B\x7f"), Err(Error::Format(_))));
        assert!(matches!(parse_graph6("B w"), Err(Error::Format(_))));
        assert!(matches!(parse_graph6("~?@A"), Err(Error::Format(_))));
    }
}

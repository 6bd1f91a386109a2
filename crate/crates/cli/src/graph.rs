//! Edge lists and clique numbers.

use crate::io::ParseError;

/// Parses one `i j` pair per line, 1-indexed. Blank lines and `#` comments are skipped.
/// The vertex count is the largest index unless `vertices` is given.
pub fn parse_edge_list(text: &str, vertices: Option<usize>) -> Result<Vec<Vec<u8>>, ParseError> {
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = || ParseError(format!("line {}: expected two positive integers, got {line:?}", lineno + 1));
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(err());
        }
        let i: usize = parts[0].parse().map_err(|_| err())?;
        let j: usize = parts[1].parse().map_err(|_| err())?;
        if i == 0 || j == 0 {
            return Err(err());
        }
        if i == j {
            return Err(ParseError(format!("line {}: self-loop at vertex {i}", lineno + 1)));
        }
        edges.push((i - 1, j - 1));
    }
    if edges.is_empty() {
        return Err(ParseError("edge list is empty".into()));
    }
    let max = edges.iter().map(|&(i, j)| i.max(j) + 1).max().unwrap_or(0);
    let n = vertices.unwrap_or(max);
    if n < max {
        return Err(ParseError(format!("vertex index {max} exceeds --vertices {n}")));
    }
    let mut adj = vec![vec![0u8; n]; n];
    for (i, j) in edges {
        adj[i][j] = 1;
        adj[j][i] = 1;
    }
    Ok(adj)
}

/// Clique number implied by a Motzkin-Straus norm value.
pub fn implied_clique_number(norm: f64) -> usize {
    (1.0 / (1.0 - norm)).round() as usize
}

/// Largest clique by exhaustive subset search.
pub fn clique_number_brute_force(adj: &[Vec<u8>]) -> usize {
    let n = adj.len();
    assert!(n <= 24, "brute force limited to 24 vertices");
    let mut best = if n > 0 { 1 } else { 0 };
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.iter().enumerate().all(|(a, &i)| members[a + 1..].iter().all(|&j| adj[i][j] == 1)) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let adj = parse_edge_list("1 2\n2 3\n# comment\n3 1\n", None).unwrap();
        assert_eq!(adj.len(), 3);
        assert_eq!(clique_number_brute_force(&adj), 3);
        assert_eq!(parse_edge_list("1 2\n", Some(4)).unwrap().len(), 4);
    }

    #[test]
    fn malformed() {
        for bad in ["1\n", "0 1\n", "a b\n", "1 1\n", "", "1 2 3\n"] {
            assert!(parse_edge_list(bad, None).is_err(), "{bad:?}");
        }
        assert!(parse_edge_list("1 5\n", Some(3)).is_err());
    }

    #[test]
    fn implied() {
        assert_eq!(implied_clique_number(2.0 / 3.0), 3);
        assert_eq!(implied_clique_number(0.5), 2);
        assert_eq!(implied_clique_number(0.8), 5);
    }
}

//! Immutable undirected simple graphs in compressed adjacency form.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// An undirected simple graph with vertex ids `0..n`.
///
/// Adjacency is stored in compressed sparse row form: `targets[offsets[v]..offsets[v + 1]]`
/// is the strictly ascending neighbor list of `v`. The structure is immutable after
/// construction, so it can be read concurrently from any number of threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an arbitrary edge list.
    ///
    /// Duplicate edges and reversed orientations collapse into a single undirected
    /// edge. Self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if b as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut degrees = vec![0usize; n];
        for &(a, b) in &pairs {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for v in 0..n {
            offsets.push(offsets[v] + degrees[v]);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; 2 * pairs.len()];
        for &(a, b) in &pairs {
            targets[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            targets[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        // Sorted pairs emit each neighbor list in ascending order already for the
        // low endpoint; the high endpoint side needs a final sort.
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok(Graph { offsets, targets })
    }

    /// Parses a whitespace-separated edge list (`u v` per line, `#` comments allowed).
    ///
    /// The vertex count is `1 + max id` unless `n_override` is given, which allows
    /// trailing isolated vertices. Lines with more than two columns are rejected;
    /// this loader handles unweighted graphs only.
    pub fn load_edge_list<R: BufRead>(reader: R, n_override: Option<usize>) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_id: Option<u32> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let mut tokens = text.split_whitespace();
            let u = parse_vertex(tokens.next(), line_no, text)?;
            let v = parse_vertex(tokens.next(), line_no, text)?;
            if tokens.next().is_some() {
                return Err(Error::ExtraColumns { line: line_no });
            }
            if u == v {
                return Err(Error::SelfLoop { line: line_no, vertex: u });
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u, v));
        }
        let n = match (n_override, max_id) {
            (Some(n), _) => n,
            (None, Some(max)) => max as usize + 1,
            (None, None) => return Err(Error::EmptyEdgeList),
        };
        Self::from_edges(n, &edges)
    }

    /// Writes the graph back out as an edge list, one `u v` pair per line with u < v.
    pub fn write_edge_list<W: Write>(&self, mut writer: W) -> Result<()> {
        for u in 0..self.vertex_count() {
            for &v in self.neighbors(u) {
                if (u as u32) < v {
                    writeln!(writer, "{} {}", u, v)?;
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Neighbors of `v` in strictly ascending order; empty for isolated vertices.
    ///
    /// Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        assert!(v < self.vertex_count(), "vertex {} out of range for n={}", v, self.vertex_count());
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }
}

fn parse_vertex(token: Option<&str>, line: usize, text: &str) -> Result<u32> {
    let token = token.ok_or_else(|| Error::Parse { line, token: text.to_string() })?;
    token.parse::<u32>().map_err(|_| Error::Parse { line, token: token.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Cursor;

    fn load(text: &str) -> Result<Graph> {
        Graph::load_edge_list(Cursor::new(text), None)
    }

    #[test]
    fn loads_path_of_three() {
        let g = load("0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn collapses_duplicates_and_orientations() {
        let g = load("0 1\n1 0\n0 1").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_self_loop() {
        match load("0 0") {
            Err(Error::SelfLoop { line: 1, vertex: 0 }) => {}
            other => panic!("expected self-loop error, got {:?}", other.map(|g| g.vertex_count())),
        }
    }

    #[test]
    fn rejects_weighted_rows() {
        assert!(matches!(load("0 1 2.5"), Err(Error::ExtraColumns { line: 1 })));
    }

    #[test]
    fn rejects_garbage_with_line_number() {
        match load("0 1\nx 2") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other.map(|g| g.vertex_count())),
        }
    }

    #[test]
    fn empty_input_needs_explicit_n() {
        assert!(matches!(load(""), Err(Error::EmptyEdgeList)));
        let g = Graph::load_edge_list(Cursor::new("# only comments\n"), Some(4)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn n_override_allows_trailing_isolated_vertices() {
        let g = Graph::load_edge_list(Cursor::new("0 1"), Some(4)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.neighbors(3), &[] as &[u32]);
    }

    #[test]
    fn skips_comments_and_crlf() {
        let g = load("# header\r\n0 1\r\n\r\n1 2\r\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn neighbors_bounds_checked() {
        let g = load("0 1").unwrap();
        let _ = g.neighbors(2);
    }

    proptest! {
        #[test]
        fn round_trip_and_invariants(raw in prop::collection::vec((0u32..30, 0u32..30), 0..120)) {
            let edges: Vec<(u32, u32)> = raw.into_iter().filter(|(u, v)| u != v).collect();
            let g = Graph::from_edges(30, &edges).unwrap();

            // symmetry and degree-sum invariants
            let mut half_edges = 0usize;
            for u in 0..g.vertex_count() {
                let neigh = g.neighbors(u);
                half_edges += neigh.len();
                for w in neigh.windows(2) {
                    prop_assert!(w[0] < w[1]);
                }
                for &v in neigh {
                    prop_assert!(g.neighbors(v as usize).binary_search(&(u as u32)).is_ok());
                    prop_assert_ne!(v as usize, u);
                }
            }
            prop_assert_eq!(half_edges, 2 * g.edge_count());

            // save -> load is the identity
            let mut buf = Vec::new();
            g.write_edge_list(&mut buf).unwrap();
            let reloaded =
                Graph::load_edge_list(Cursor::new(buf), Some(g.vertex_count())).unwrap();
            prop_assert_eq!(reloaded, g);
        }
    }
}

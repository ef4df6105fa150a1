//! Partitions of a vertex set and ensembles of them.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// A complete assignment of `n` vertices to clusters.
///
/// Labels are kept in canonical form: renumbered `0..b` in order of first
/// appearance, so two label vectors describe the same partition exactly when
/// their canonical forms are equal. Label values never carry meaning across
/// files.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<u32>,
    clusters: usize,
}

impl Partition {
    /// Canonicalizes an arbitrary label vector.
    pub fn from_labels(raw: impl IntoIterator<Item = u32>) -> Self {
        let raw: Vec<u32> = raw.into_iter().collect();
        let mut rename: Vec<(u32, u32)> = Vec::new();
        let mut labels = Vec::with_capacity(raw.len());
        let mut next = 0u32;
        for value in raw {
            let canon = match rename.iter().find(|(from, _)| *from == value) {
                Some(&(_, to)) => to,
                None => {
                    let to = next;
                    rename.push((value, to));
                    next += 1;
                    to
                }
            };
            labels.push(canon);
        }
        Partition { labels, clusters: next as usize }
    }

    /// Reads one label per line, skipping blank lines and `#` comments.
    ///
    /// When `expected` is given the file must hold exactly that many labels.
    pub fn read<R: BufRead>(reader: R, expected: Option<usize>) -> Result<Self> {
        let mut raw = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let label: u32 = text
                .parse()
                .map_err(|_| Error::Parse { line: idx + 1, token: text.to_string() })?;
            raw.push(label);
        }
        if let Some(n) = expected {
            if raw.len() != n {
                return Err(Error::Coverage { expected: n, found: raw.len() });
            }
        }
        Ok(Self::from_labels(raw))
    }

    /// Writes one label per line; round-trips with [`Partition::read`].
    pub fn write<W: Write>(&self, mut writer: W) -> Result<()> {
        for label in &self.labels {
            writeln!(writer, "{}", label)?;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label_of(&self, v: usize) -> u32 {
        self.labels[v]
    }

    /// Sizes of clusters `0..b`.
    pub fn cluster_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.clusters];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }
}

/// Cluster memberships of every vertex across an ensemble of `k` partitions.
///
/// Row `u` lists the cluster of vertex `u` in each input partition, so the
/// co-clustering distance of two vertices is the Hamming distance between
/// their rows. Storage is the `n x k` table itself; pairwise distances are
/// computed on demand rather than materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipMatrix {
    n: usize,
    k: usize,
    rows: Vec<u32>,
}

impl MembershipMatrix {
    pub fn from_partitions(parts: &[Partition]) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptyEnsemble)?;
        let n = first.vertex_count();
        for p in parts {
            if p.vertex_count() != n {
                return Err(Error::DimensionMismatch { left: n, right: p.vertex_count() });
            }
        }
        let k = parts.len();
        let mut rows = vec![0u32; n * k];
        for (j, p) in parts.iter().enumerate() {
            for (u, &label) in p.labels().iter().enumerate() {
                rows[u * k + j] = label;
            }
        }
        Ok(MembershipMatrix { n, k, rows })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn partition_count(&self) -> usize {
        self.k
    }

    /// Membership vector of vertex `u`. Panics if out of range.
    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        assert!(u < self.n, "vertex {} out of range for n={}", u, self.n);
        &self.rows[u * self.k..(u + 1) * self.k]
    }

    /// Number of input partitions in which `u` and `v` are separated.
    ///
    /// Ranges over `[0, k]`; panics on out-of-range ids.
    #[inline]
    pub fn coclustering_distance(&self, u: usize, v: usize) -> u32 {
        hamming(self.row(u), self.row(v))
    }
}

#[inline]
pub(crate) fn hamming(a: &[u32], b: &[u32]) -> u32 {
    debug_assert_eq!(a.len(), b.len());
    let mut d = 0u32;
    for (x, y) in a.iter().zip(b) {
        d += (x != y) as u32;
    }
    d
}

/// Reads an ensemble from a TSV stream: one row per vertex, one column per
/// partition, labels separated by tabs or spaces. A single-column file is the
/// plain partition format.
pub fn read_ensemble_tsv<R: BufRead>(reader: R) -> Result<Vec<Partition>> {
    let mut columns: Vec<Vec<u32>> = Vec::new();
    let mut rows_seen = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if columns.is_empty() {
            columns = vec![Vec::new(); fields.len()];
        } else if fields.len() != columns.len() {
            return Err(Error::Parse { line: idx + 1, token: text.to_string() });
        }
        for (j, field) in fields.iter().enumerate() {
            let label: u32 = field
                .parse()
                .map_err(|_| Error::Parse { line: idx + 1, token: (*field).to_string() })?;
            columns[j].push(label);
        }
        rows_seen += 1;
    }
    if rows_seen == 0 || columns.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    Ok(columns.into_iter().map(Partition::from_labels).collect())
}

/// Writes an ensemble as TSV, one row per vertex.
pub fn write_ensemble_tsv<W: Write>(parts: &[Partition], mut writer: W) -> Result<()> {
    let first = parts.first().ok_or(Error::EmptyEnsemble)?;
    let n = first.vertex_count();
    for p in parts {
        if p.vertex_count() != n {
            return Err(Error::DimensionMismatch { left: n, right: p.vertex_count() });
        }
    }
    for u in 0..n {
        let row: Vec<String> = parts.iter().map(|p| p.label_of(u).to_string()).collect();
        writeln!(writer, "{}", row.join("\t"))?;
    }
    Ok(())
}

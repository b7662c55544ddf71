//! Tournaments stored as one out-neighbour word per vertex.

use std::fmt;

use crate::bits::{bits, full_mask, VertexSet, MAX_ORDER};
use crate::error::{Error, Result};

/// A complete orientation of `K_n`, `1 <= n <= 62`.
///
/// Bit `j` of row `i` is set iff the arc `i -> j` is present. Values are
/// immutable once built; every transformation returns a new tournament.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tournament {
    rows: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from raw out-rows, checking the orientation invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let all = full_mask(n);
        for (i, &row) in rows.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::NotATournament(format!(
                    "row {i} has bits beyond order {n}"
                )));
            }
            if row >> i & 1 == 1 {
                return Err(Error::NotATournament(format!("self-loop at {i}")));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let a = rows[i] >> j & 1;
                let b = rows[j] >> i & 1;
                if a + b != 1 {
                    return Err(Error::NotATournament(format!(
                        "pair ({i},{j}) carries {} arcs",
                        a + b
                    )));
                }
            }
        }
        Ok(Tournament { rows })
    }

    /// Builds a tournament of order `n` where `i -> j` (for `i < j`) iff `forward(i, j)`.
    pub fn from_pairs(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_order(n)?;
        let mut rows = vec![0u64; n];
        for i in 0..n {
            for j in i + 1..n {
                if forward(i, j) {
                    rows[i] |= 1 << j;
                } else {
                    rows[j] |= 1 << i;
                }
            }
        }
        Ok(Tournament { rows })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Out-neighbourhood of `v` as a mask.
    #[inline]
    pub fn out_mask(&self, v: usize) -> u64 {
        self.rows[v]
    }

    /// In-neighbourhood of `v` as a mask.
    #[inline]
    pub fn in_mask(&self, v: usize) -> u64 {
        full_mask(self.order()) & !self.rows[v] & !(1u64 << v)
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.out_mask(v))
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.in_mask(v))
    }

    #[inline]
    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.rows[from] >> to & 1 == 1
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones() as usize).collect()
    }

    /// Out-degrees sorted ascending.
    pub fn score_sequence(&self) -> Vec<usize> {
        let mut s = self.out_degrees();
        s.sort_unstable();
        s
    }

    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// All arcs `(from, to)` in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| bits(r).map(move |j| (i, j)))
    }

    /// The tournament with every arc reversed.
    pub fn converse(&self) -> Tournament {
        let n = self.order();
        let rows = (0..n).map(|v| self.in_mask(v)).collect();
        Tournament { rows }
    }

    /// Subtournament induced by `set`, vertices renumbered in ascending order.
    pub fn induced(&self, set: VertexSet) -> Result<Tournament> {
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let n = self.order();
        if set.mask() & !full_mask(n) != 0 {
            let bad = set.iter().find(|&v| v >= n).unwrap_or(n);
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        Ok(self.induced_mask(set.mask()))
    }

    /// Unchecked variant of [`Tournament::induced`] for a non-empty in-range mask.
    pub(crate) fn induced_mask(&self, mask: u64) -> Tournament {
        let verts: Vec<usize> = bits(mask).collect();
        let rows = verts
            .iter()
            .map(|&v| {
                let r = self.rows[v];
                let mut out = 0u64;
                for (k, &u) in verts.iter().enumerate() {
                    out |= (r >> u & 1) << k;
                }
                out
            })
            .collect();
        Tournament { rows }
    }

    /// `T - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Tournament> {
        let n = self.order();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        self.induced(VertexSet(full_mask(n) & !(1 << v)))
    }

    /// Reverses the orientation of the pair `{i, j}`.
    pub fn flip_arc(&self, i: usize, j: usize) -> Result<Tournament> {
        let n = self.order();
        for v in [i, j] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if i == j {
            return Err(Error::SameVertex(i));
        }
        let mut rows = self.rows.clone();
        rows[i] ^= 1 << j;
        rows[j] ^= 1 << i;
        Ok(Tournament { rows })
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tournament> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::InvalidParameters(format!(
                "permutation of length {} for order {n}",
                perm.len()
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= n || seen >> p & 1 == 1 {
                return Err(Error::InvalidParameters("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let mut rows = vec![0u64; n];
        for v in 0..n {
            for u in bits(self.rows[v]) {
                rows[perm[v]] |= 1 << perm[u];
            }
        }
        Ok(Tournament { rows })
    }

    /// Places vertex `order[k]` at position `k`.
    pub(crate) fn arrange(&self, order: &[usize]) -> Tournament {
        let n = self.order();
        let mut pos = vec![0usize; n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let rows = order
            .iter()
            .map(|&v| bits(self.rows[v]).fold(0u64, |acc, u| acc | 1 << pos[u]))
            .collect();
        Tournament { rows }
    }

    /// Adds a vertex `n` with the given out-neighbourhood among `0..n`.
    pub fn extend(&self, out: u64) -> Result<Tournament> {
        let n = self.order();
        check_order(n + 1)?;
        if out & !full_mask(n) != 0 {
            return Err(Error::InvalidParameters("extension mask out of range".into()));
        }
        Ok(self.extend_unchecked(out))
    }

    pub(crate) fn extend_unchecked(&self, out: u64) -> Tournament {
        let n = self.order();
        let mut rows = Vec::with_capacity(n + 1);
        for (v, &r) in self.rows.iter().enumerate() {
            rows.push(r | ((!out >> v & 1) << n));
        }
        rows.push(out);
        Tournament { rows }
    }

    /// The composition `self(parts[0], ..., parts[n-1])`.
    ///
    /// Block `i` dominates block `j` iff `i -> j` in `self`; blocks are laid
    /// out consecutively in the vertex order of `self`.
    pub fn compose(&self, parts: &[Tournament]) -> Result<Tournament> {
        if parts.len() != self.order() {
            return Err(Error::PartCountMismatch {
                expected: self.order(),
                found: parts.len(),
            });
        }
        let total: usize = parts.iter().map(Tournament::order).sum();
        check_order(total)?;
        let mut offsets = Vec::with_capacity(parts.len());
        let mut block_masks = Vec::with_capacity(parts.len());
        let mut off = 0;
        for p in parts {
            offsets.push(off);
            block_masks.push(full_mask(p.order()) << off);
            off += p.order();
        }
        let mut rows = Vec::with_capacity(total);
        for (b, p) in parts.iter().enumerate() {
            let dominated = bits(self.rows[b]).fold(0u64, |acc, c| acc | block_masks[c]);
            for &r in &p.rows {
                rows.push((r << offsets[b]) | dominated);
            }
        }
        Ok(Tournament { rows })
    }

    /// Checks the structural invariants by a pairwise scan.
    pub fn validate(&self) -> Result<()> {
        Tournament::from_rows(self.rows.clone()).map(|_| ())
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament({}; ", self.order())?;
        for i in 0..self.order() {
            for j in i + 1..self.order() {
                f.write_str(if self.has_arc(i, j) { "1" } else { "0" })?;
            }
        }
        f.write_str(")")
    }
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Display names attached to constructed tournaments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabeling {
    names: Vec<String>,
}

impl VertexLabeling {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidParameters("vertex labels must be unique".into()));
        }
        Ok(VertexLabeling { names })
    }

    /// `prefix{start}, prefix{start+1}, ...`
    pub fn indexed(prefix: &str, start: usize, count: usize) -> Self {
        VertexLabeling {
            names: (start..start + count).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    /// Concatenation of two labelings; fails on duplicate names.
    pub fn concat(self, other: VertexLabeling) -> Result<Self> {
        let mut names = self.names;
        names.extend(other.names);
        VertexLabeling::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Checks that the labeling fits a tournament.
    pub fn fits(&self, t: &Tournament) -> bool {
        self.names.len() == t.order()
    }
}

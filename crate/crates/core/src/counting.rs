//! Exact circuit counts by subset dynamic programming.
//!
//! For an anchor `a`, `paths[S][v]` counts directed paths that start at `a`,
//! visit exactly the vertex set `S` (excluding `a`) and end at `v`. A path
//! closes into a circuit when `v -> a`. Anchoring at the minimum vertex of
//! each circuit counts every circuit once.

use serde::Serialize;

use crate::analysis::is_strong_within;
use crate::bits::{bits, full_mask};
use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Largest order accepted by the circuit-counting DP (`2^(n-1) * (n-1)` cells).
pub const MAX_CYCLE_ORDER: usize = 22;
/// Largest order for the strong-subtournament subset scan.
pub const MAX_SUBSET_ORDER: usize = 32;
/// Largest order for Hamiltonian path counting.
pub const MAX_HAM_PATH_ORDER: usize = 24;

/// Per-length counts, indexed by length; entries below 3 are always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleCensus {
    pub n: usize,
    /// `c[l]` = number of circuits of length `l`, `0 <= l <= n`.
    pub c: Vec<u64>,
    /// `s[l]` = number of `l`-subsets inducing a strong subtournament.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u64>>,
}

impl CycleCensus {
    #[inline]
    pub fn c(&self, len: usize) -> u64 {
        self.c.get(len).copied().unwrap_or(0)
    }

    pub fn s(&self, len: usize) -> Option<u64> {
        self.s.as_ref().map(|s| s.get(len).copied().unwrap_or(0))
    }

    pub fn is_acyclic(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> Option<u64> {
        self.c.iter().try_fold(0u64, |acc, &x| acc.checked_add(x))
    }
}

fn guard(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::TooLarge { what, n, max })
    } else {
        Ok(())
    }
}

/// Adds into `out[len]` the number of circuits through `anchor` whose other
/// vertices all lie in `free` (a mask not containing `anchor`).
fn count_anchored(t: &Tournament, anchor: usize, free: u64, out: &mut [u64]) -> Result<()> {
    let verts: Vec<usize> = bits(free).collect();
    let f = verts.len();
    if f < 2 {
        return Ok(());
    }
    // Adjacency re-indexed onto the free vertices.
    let mut succ = vec![0u32; f];
    let mut closes = 0u32;
    let mut starts = 0u32;
    for (i, &v) in verts.iter().enumerate() {
        let row = t.out_mask(v);
        let mut m = 0u32;
        for (j, &u) in verts.iter().enumerate() {
            m |= ((row >> u & 1) as u32) << j;
        }
        succ[i] = m;
        closes |= ((row >> anchor & 1) as u32) << i;
        starts |= ((t.out_mask(anchor) >> v & 1) as u32) << i;
    }
    let mut paths = vec![0u64; (1usize << f) * f];
    for i in bits(starts as u64) {
        paths[(1usize << i) * f + i] = 1;
    }
    for mask in 1usize..(1 << f) {
        let len = mask.count_ones() as usize + 1;
        let base = mask * f;
        for end in bits(mask as u64) {
            let cnt = paths[base + end];
            if cnt == 0 {
                continue;
            }
            if closes >> end & 1 == 1 && len >= 3 {
                out[len] = out[len]
                    .checked_add(cnt)
                    .ok_or(Error::Overflow("circuit counts"))?;
            }
            let ext = succ[end] & !(mask as u32);
            for nxt in bits(ext as u64) {
                let idx = (mask | 1 << nxt) * f + nxt;
                paths[idx] = paths[idx]
                    .checked_add(cnt)
                    .ok_or(Error::Overflow("path counts"))?;
            }
        }
    }
    Ok(())
}

/// `c_l(T)` for every `l`.
pub fn cycle_counts(t: &Tournament) -> Result<CycleCensus> {
    let n = t.order();
    guard("circuit counting", n, MAX_CYCLE_ORDER)?;
    let mut c = vec![0u64; n + 1];
    let all = full_mask(n);
    for a in 0..n.saturating_sub(2) {
        let higher = all & !full_mask(a + 1);
        count_anchored(t, a, higher, &mut c)?;
    }
    Ok(CycleCensus { n, c, s: None })
}

/// `c_l(T, w)`: circuits of each length through `w`, indexed by length.
pub fn cycle_counts_through(t: &Tournament, w: usize) -> Result<Vec<u64>> {
    let n = t.order();
    if w >= n {
        return Err(Error::VertexOutOfRange { vertex: w, n });
    }
    guard("circuit counting", n, MAX_CYCLE_ORDER)?;
    let mut out = vec![0u64; n + 1];
    count_anchored(t, w, full_mask(n) & !(1 << w), &mut out)?;
    Ok(out)
}

/// `s_l(T)`: number of `l`-subsets inducing a strong subtournament (`l >= 3`).
pub fn strong_sub_counts(t: &Tournament) -> Result<Vec<u64>> {
    let n = t.order();
    guard("strong-subtournament scan", n, MAX_SUBSET_ORDER)?;
    let mut s = vec![0u64; n + 1];
    for mask in 1u64..(1u64 << n) {
        let k = mask.count_ones() as usize;
        if k >= 3 && is_strong_within(t, mask) {
            s[k] += 1;
        }
    }
    Ok(s)
}

/// Circuit counts together with strong-subtournament counts.
pub fn census_with_strong(t: &Tournament) -> Result<CycleCensus> {
    let mut census = cycle_counts(t)?;
    census.s = Some(strong_sub_counts(t)?);
    Ok(census)
}

/// Number of Hamiltonian paths.
pub fn hamiltonian_path_count(t: &Tournament) -> Result<u64> {
    let n = t.order();
    guard("Hamiltonian path counting", n, MAX_HAM_PATH_ORDER)?;
    if n == 1 {
        return Ok(1);
    }
    let full = (1usize << n) - 1;
    let mut paths = vec![0u64; (1usize << n) * n];
    for v in 0..n {
        paths[(1 << v) * n + v] = 1;
    }
    for mask in 1usize..=full {
        let base = mask * n;
        for end in bits(mask as u64) {
            let cnt = paths[base + end];
            if cnt == 0 {
                continue;
            }
            let ext = t.out_mask(end) & !(mask as u64);
            for nxt in bits(ext) {
                let idx = (mask | 1 << nxt) * n + nxt;
                paths[idx] = paths[idx]
                    .checked_add(cnt)
                    .ok_or(Error::Overflow("Hamiltonian paths"))?;
            }
        }
    }
    paths[full * n..]
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or(Error::Overflow("Hamiltonian paths"))
}

/// Whether every vertex lies on a circuit of every length `3..=n`.
pub fn is_vertex_pancyclic(t: &Tournament) -> Result<bool> {
    let n = t.order();
    if n < 3 || !crate::analysis::is_strong(t) {
        return Err(Error::NotStrong("vertex pancyclicity"));
    }
    for w in 0..n {
        let through = cycle_counts_through(t, w)?;
        if through[3..=n].contains(&0) {
            return Ok(false);
        }
    }
    Ok(true)
}

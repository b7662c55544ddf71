//! Strong connectivity, distances, and critical-vertex structure.

use serde::{Serialize, Serializer};

use crate::bits::{bits, full_mask, VertexSet};
use crate::tournament::Tournament;

/// A shortest-path length, or the unreachable marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Unreachable => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub strong: bool,
    pub dist: Vec<Vec<Distance>>,
    /// `None` unless the tournament is strong.
    pub diameter: Option<usize>,
    pub non_critical: VertexSet,
    pub critical: VertexSet,
    /// Strong components of the non-critical subtournament, dominating
    /// components first. Vertex indices refer to the input tournament.
    pub ncr_components: Vec<VertexSet>,
}

/// Vertices of `mask` reachable from `src` inside the subtournament on `mask`.
#[inline]
fn reach_within(t: &Tournament, mask: u64, src: usize, forward: bool) -> u64 {
    let mut seen = 1u64 << src;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in bits(frontier) {
            next |= if forward { t.out_mask(v) } else { t.in_mask(v) };
        }
        next &= mask & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Whether the subtournament induced by a non-empty `mask` is strong.
#[inline]
pub fn is_strong_within(t: &Tournament, mask: u64) -> bool {
    debug_assert!(mask != 0);
    let src = mask.trailing_zeros() as usize;
    reach_within(t, mask, src, true) == mask && reach_within(t, mask, src, false) == mask
}

pub fn is_strong(t: &Tournament) -> bool {
    is_strong_within(t, full_mask(t.order()))
}

/// Breadth-first distance along out-arcs.
pub fn distance(t: &Tournament, x: usize, y: usize) -> Distance {
    distances_from(t, x)[y]
}

fn distances_from(t: &Tournament, src: usize) -> Vec<Distance> {
    let n = t.order();
    let mut dist = vec![Distance::Unreachable; n];
    dist[src] = Distance::Finite(0);
    let mut seen = 1u64 << src;
    let mut frontier = seen;
    let mut level = 0;
    while frontier != 0 {
        level += 1;
        let mut next = 0u64;
        for v in bits(frontier) {
            next |= t.out_mask(v);
        }
        next &= !seen;
        for v in bits(next) {
            dist[v] = Distance::Finite(level);
        }
        seen |= next;
        frontier = next;
    }
    dist
}

/// Diameter of a strong tournament, `None` otherwise.
pub fn diameter(t: &Tournament) -> Option<usize> {
    diameter_within(t, full_mask(t.order()))
}

/// Diameter of the subtournament induced by `mask`, `None` if it is not strong.
pub fn diameter_within(t: &Tournament, mask: u64) -> Option<usize> {
    let mut worst = 0;
    for src in bits(mask) {
        let mut seen = 1u64 << src;
        let mut frontier = seen;
        let mut level = 0;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= t.out_mask(v);
            }
            next &= mask & !seen;
            if next == 0 {
                break;
            }
            level += 1;
            seen |= next;
            frontier = next;
        }
        if seen != mask {
            return None;
        }
        worst = worst.max(level);
    }
    Some(worst)
}

/// Strong components of the subtournament on `mask`, dominating first.
pub fn strong_components_within(t: &Tournament, mask: u64) -> Vec<VertexSet> {
    let mut comps: Vec<(u32, u64)> = Vec::new();
    let mut left = mask;
    while left != 0 {
        let v = left.trailing_zeros() as usize;
        let fwd = reach_within(t, mask, v, true);
        let bwd = reach_within(t, mask, v, false);
        let comp = fwd & bwd;
        comps.push((fwd.count_ones(), comp));
        left &= !comp;
    }
    // The condensation of a tournament is transitive, so a component that
    // reaches more vertices comes earlier.
    comps.sort_by_key(|c| std::cmp::Reverse(c.0));
    comps.into_iter().map(|(_, c)| VertexSet(c)).collect()
}

pub fn strong_components(t: &Tournament) -> Vec<VertexSet> {
    strong_components_within(t, full_mask(t.order()))
}

/// Non-critical vertices: `w` with `T - w` strong. Empty for `n = 1`.
pub fn non_critical(t: &Tournament) -> VertexSet {
    let n = t.order();
    if n < 2 {
        return VertexSet::EMPTY;
    }
    let all = full_mask(n);
    VertexSet(
        (0..n)
            .filter(|&w| is_strong_within(t, all & !(1 << w)))
            .fold(0u64, |acc, w| acc | 1 << w),
    )
}

pub fn analyze(t: &Tournament) -> StructureReport {
    let n = t.order();
    let dist: Vec<Vec<Distance>> = (0..n).map(|s| distances_from(t, s)).collect();
    let strong = dist
        .iter()
        .all(|row| row.iter().all(|d| *d != Distance::Unreachable));
    let diameter = strong.then(|| {
        dist.iter()
            .flat_map(|row| row.iter().filter_map(|d| d.finite()))
            .max()
            .unwrap_or(0)
    });
    let non_critical = non_critical(t);
    let critical = VertexSet::all(n).difference(non_critical);
    let ncr_components = if non_critical.is_empty() {
        Vec::new()
    } else {
        strong_components_within(t, non_critical.mask())
    };
    StructureReport {
        n,
        strong,
        dist,
        diameter,
        non_critical,
        critical,
        ncr_components,
    }
}

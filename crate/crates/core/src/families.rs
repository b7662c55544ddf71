//! Named tournament families.
//!
//! * `TT_n`: transitive, `z_i -> z_j` iff `i < j`.
//! * `T_{n-1,n}`: Hamiltonian path `z_0 .. z_{n-1}` plus every back arc that
//!   skips at least one vertex.
//! * `T_{d,n}` / `T_{d,n}^-`: the spine `T_{d,d+1}` with its end vertices blown
//!   up into transitive blocks of nearly equal size.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tournament::{check_order, Tournament, VertexLabeling};

/// The transitive tournament `TT_n(z_0, ..., z_{n-1})`.
pub fn build_transitive(n: usize) -> Result<Tournament> {
    Tournament::from_pairs(n, |_, _| true)
}

/// The cyclic triple `z_0 -> z_1 -> z_2 -> z_0`.
pub fn cyclic_triple() -> Tournament {
    build_path_extremal(3).expect("order 3 is in range")
}

/// `T_{n-1,n}(z_0, ..., z_{n-1})`; for `n <= 2` this is `TT_n`.
pub fn build_path_extremal(n: usize) -> Result<Tournament> {
    Tournament::from_pairs(n, |i, j| j == i + 1)
}

fn check_extremal_params(d: usize, n: usize) -> Result<()> {
    check_order(n)?;
    if d < 3 || n <= d {
        return Err(Error::InvalidParameters(format!(
            "extremal family needs n > d >= 3, got d={d}, n={n}"
        )));
    }
    Ok(())
}

/// Spine `T_{d,d+1}` with its first vertex replaced by `TT_first` and its last
/// by `TT_last`.
fn spine_with_ends(d: usize, first: usize, last: usize) -> Result<Tournament> {
    let spine = build_path_extremal(d + 1)?;
    let one = build_transitive(1)?;
    let mut parts = Vec::with_capacity(d + 1);
    parts.push(build_transitive(first)?);
    parts.extend(std::iter::repeat_n(one, d - 1));
    parts.push(build_transitive(last)?);
    spine.compose(&parts)
}

/// `T_{d,n} = T_{d,d+1}(TT_{floor(m/2)}, v_1, ..., v_{d-1}, TT_{ceil(m/2)})`, `m = n-d+1`.
pub fn build_extremal(d: usize, n: usize) -> Result<Tournament> {
    check_extremal_params(d, n)?;
    let m = n - d + 1;
    spine_with_ends(d, m / 2, m.div_ceil(2))
}

/// `T_{d,n}^-`: as [`build_extremal`] with the end blocks swapped.
pub fn build_extremal_minus(d: usize, n: usize) -> Result<Tournament> {
    check_extremal_params(d, n)?;
    let m = n - d + 1;
    spine_with_ends(d, m.div_ceil(2), m / 2)
}

/// Which arcs of `T_{n-1,n}` to reverse in [`build_hatted`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HatKind {
    /// Reverse `(z_{n-1}, z_{n-3})`.
    Right,
    /// Reverse `(z_2, z_0)`.
    Left,
    /// Reverse both.
    Both,
}

/// `T_{n-1,n}` with the back arcs at one or both ends reversed, which makes
/// the corresponding end triple transitive.
pub fn build_hatted(kind: HatKind, n: usize) -> Result<Tournament> {
    let min = if kind == HatKind::Both { 6 } else { 5 };
    if n < min {
        return Err(Error::OrderOutOfRange {
            n,
            min,
            max: crate::bits::MAX_ORDER,
        });
    }
    let mut t = build_path_extremal(n)?;
    if matches!(kind, HatKind::Right | HatKind::Both) {
        t = t.flip_arc(n - 1, n - 3)?;
    }
    if matches!(kind, HatKind::Left | HatKind::Both) {
        t = t.flip_arc(2, 0)?;
    }
    Ok(t)
}

/// Labels `z_0 .. z_{n-1}` as used by the path-type families.
pub fn path_labels(n: usize) -> VertexLabeling {
    VertexLabeling::indexed("z_", 0, n)
}

/// Labels for [`build_extremal`]-shaped tournaments: first block `a_*`,
/// spine `v_1 .. v_{d-1}`, last block `b_*`.
pub fn extremal_labels(d: usize, first: usize, last: usize) -> VertexLabeling {
    VertexLabeling::indexed("a_", 1, first)
        .concat(VertexLabeling::indexed("v_", 1, d - 1))
        .and_then(|l| l.concat(VertexLabeling::indexed("b_", 1, last)))
        .expect("prefixes are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_out_degrees() {
        assert_eq!(build_transitive(1).unwrap().arc_count(), 0);
        assert_eq!(build_transitive(4).unwrap().out_degrees(), vec![3, 2, 1, 0]);
        assert!(build_transitive(0).is_err());
        assert!(build_transitive(63).is_err());
        assert!(build_transitive(62).is_ok());
    }

    #[test]
    fn path_extremal_shapes() {
        assert_eq!(build_path_extremal(2).unwrap(), build_transitive(2).unwrap());
        assert_eq!(build_path_extremal(1).unwrap(), build_transitive(1).unwrap());
        let t = build_path_extremal(3).unwrap();
        assert!(t.has_arc(0, 1) && t.has_arc(1, 2) && t.has_arc(2, 0));
        assert_eq!(build_path_extremal(6).unwrap().out_degrees(), vec![1, 1, 2, 3, 4, 4]);
        let t = build_path_extremal(7).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                if j > i + 1 {
                    assert!(t.has_arc(j, i));
                }
            }
        }
    }

    #[test]
    fn extremal_parameter_checks() {
        assert!(build_extremal(2, 5).is_err());
        assert!(build_extremal(5, 5).is_err());
        assert!(build_extremal_minus(3, 3).is_err());
        assert_eq!(build_extremal(6, 9).unwrap().order(), 9);
    }

    #[test]
    fn extremal_at_full_diameter_is_path_extremal() {
        for n in 4..10 {
            assert_eq!(build_extremal(n - 1, n).unwrap(), build_path_extremal(n).unwrap());
        }
    }

    #[test]
    fn even_block_total_makes_both_variants_equal() {
        // n - d + 1 = 4
        assert_eq!(build_extremal(6, 9).unwrap(), build_extremal_minus(6, 9).unwrap());
        assert_ne!(build_extremal(5, 9).unwrap(), build_extremal_minus(5, 9).unwrap());
    }

    #[test]
    fn hatted_flips_the_named_arcs() {
        let base = build_path_extremal(7).unwrap();
        let right = build_hatted(HatKind::Right, 7).unwrap();
        assert!(base.has_arc(6, 4) && right.has_arc(4, 6));
        let left = build_hatted(HatKind::Left, 7).unwrap();
        assert!(base.has_arc(2, 0) && left.has_arc(0, 2));
        let both = build_hatted(HatKind::Both, 7).unwrap();
        assert!(both.has_arc(4, 6) && both.has_arc(0, 2));
        assert_eq!(base.flip_arc(6, 4).unwrap(), right);
        assert!(build_hatted(HatKind::Right, 4).is_err());
        assert!(build_hatted(HatKind::Both, 5).is_err());
        assert!(build_hatted(HatKind::Left, 5).is_ok());
    }

    #[test]
    fn labels_match_order() {
        let t = build_extremal(4, 8).unwrap();
        let l = extremal_labels(4, 2, 3);
        assert!(l.fits(&t));
        assert_eq!(l.name(2), "v_1");
        assert_eq!(path_labels(3).names(), ["z_0", "z_1", "z_2"]);
    }
}

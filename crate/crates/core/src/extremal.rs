//! Closed-form circuit counts for `T_{d,n}` and the Douglas-parameter class
//! `H_{d,n}` (strong, diameter `d`, one Hamiltonian circuit, `n - d + 1`
//! non-critical vertices).

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::build_path_extremal;
use crate::iso::{canonical_form, MAX_CANON_ORDER};
use crate::tournament::Tournament;

/// Result of evaluating a closed form outside or inside its stated range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaValue {
    Covered(u64),
    NotCovered,
}

fn check_dn(d: usize, n: usize) -> Result<()> {
    if d < 3 || n <= d || n > crate::bits::MAX_ORDER {
        return Err(Error::InvalidParameters(format!(
            "need n > d >= 3 (and n <= {}), got d={d}, n={n}",
            crate::bits::MAX_ORDER
        )));
    }
    Ok(())
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `d - l + 2^ceil(m/2) + 2^floor(m/2) - 2` for `2d >= n+3`, `n-d+3 <= l <= d`.
pub fn formula_mid_range(d: usize, n: usize, len: usize) -> Option<u64> {
    let m = n - d + 1;
    if 2 * d >= n + 3 && n - d + 3 <= len && len <= d {
        Some((d - len) as u64 + (1u64 << m.div_ceil(2)) + (1u64 << (m / 2)) - 2)
    } else {
        None
    }
}

/// `C(n-d+1, n-l)` for `n + d - 1 <= 2l`.
pub fn formula_long_range(d: usize, n: usize, len: usize) -> Option<u64> {
    if n + d - 1 <= 2 * len && len <= n {
        Some(binomial((n - d + 1) as u64, (n - len) as u64))
    } else {
        None
    }
}

/// `c_l(T_{d,n})` where one of the two closed forms applies.
pub fn formula_c(d: usize, n: usize, len: usize) -> Result<FormulaValue> {
    check_dn(d, n)?;
    if !(3..=n).contains(&len) {
        return Err(Error::InvalidParameters(format!(
            "length {len} outside 3..={n}"
        )));
    }
    Ok(formula_mid_range(d, n, len)
        .or_else(|| formula_long_range(d, n, len))
        .map_or(FormulaValue::NotCovered, FormulaValue::Covered))
}

/// `c_l(T_{d,n}^-, w) = 2^(ceil(m/2) - 1)` for `w` in the leading block.
pub fn formula_c_through(d: usize, n: usize) -> Result<u64> {
    check_dn(d, n)?;
    let m = n - d + 1;
    Ok(1u64 << (m.div_ceil(2) - 1))
}

/// `(n^2 - 7n + 8) / 2`, the number of classes in `H_{n-3,n}`.
pub fn h_family_size_nminus3(n: usize) -> Result<u64> {
    if n < 7 {
        return Err(Error::OrderOutOfRange {
            n,
            min: 7,
            max: crate::bits::MAX_ORDER,
        });
    }
    let n = n as u64;
    Ok((n * n + 8 - 7 * n) / 2)
}

/// Douglas parameters `h_1 .. h_{n-d+1}` of a member of `H_{d,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DouglasParams {
    pub d: usize,
    pub n: usize,
    pub h: Vec<usize>,
}

impl DouglasParams {
    pub fn new(d: usize, n: usize, h: Vec<usize>) -> Result<Self> {
        let p = DouglasParams { d, n, h };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (d, n, h) = (self.d, self.n, &self.h);
        check_dn(d, n)?;
        let m = n - d + 1;
        let fail = |condition, detail: String| Err(Error::Douglas { condition, detail });
        if h.len() != m {
            return fail("length", format!("expected {m} entries, found {}", h.len()));
        }
        if h[0] != d - 2 {
            return fail("(2a)", format!("h_1 = {} but must equal d-2 = {}", h[0], d - 2));
        }
        if h[m - 1] != 1 {
            return fail("(2a)", format!("h_{m} = {} but must equal 1", h[m - 1]));
        }
        for (i, &x) in h.iter().enumerate() {
            if !(1..=d - 2).contains(&x) {
                return fail("(2a)", format!("h_{} = {x} outside 1..={}", i + 1, d - 2));
            }
        }
        for r in 0..m {
            for s in r..m {
                if h[s] > h[r] + 1 {
                    return fail(
                        "(2b)",
                        format!("h_{} = {} exceeds h_{} + 1 = {}", s + 1, h[s], r + 1, h[r] + 1),
                    );
                }
            }
        }
        Ok(())
    }
}

/// Tournament on `W = w_1..w_m` (vertices `0..m`) and `V = v_1..v_{d-1}`
/// (vertices `m..n`) with `T(V) = T_{d-2,d-1}`, `T(W) = TT_m` and
/// `{v_{h_i+1}..v_{d-1}} => w_i => {v_1..v_{h_i}}`. No parameter checks.
pub(crate) fn assemble_douglas(d: usize, h: &[usize]) -> Result<Tournament> {
    let m = h.len();
    let n = m + d - 1;
    let spine = build_path_extremal(d - 1)?;
    Tournament::from_pairs(n, |i, j| {
        // i < j throughout
        if j < m {
            true
        } else if i >= m {
            spine.has_arc(i - m, j - m)
        } else {
            // w_{i+1} dominates v_k (k = j - m + 1) iff k <= h_i
            j - m < h[i]
        }
    })
}

/// The member of `H_{d,n}` with the given parameters.
pub fn build_douglas(p: &DouglasParams) -> Result<Tournament> {
    p.validate()?;
    assemble_douglas(p.d, &p.h)
}

/// All parameter vectors satisfying (2a) and (2b), lexicographically.
pub fn douglas_vectors(d: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    check_dn(d, n)?;
    let m = n - d + 1;
    let mut out = Vec::new();
    let mut cur = vec![d - 2];
    fn rec(d: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let cap = cur.iter().min().copied().unwrap_or(d - 2) + 1;
        let (lo, hi) = if cur.len() == m - 1 { (1, 1) } else { (1, d - 2) };
        for x in lo..=hi.min(cap) {
            cur.push(x);
            rec(d, m, cur, out);
            cur.pop();
        }
    }
    rec(d, m, &mut cur, &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMember {
    pub params: DouglasParams,
    pub tournament: Tournament,
}

/// Members of `H_{d,n}`, one per isomorphism class, keyed by the first
/// parameter vector (in lexicographic order) that produces the class.
pub fn enumerate_h_family(d: usize, n: usize) -> Result<Vec<HMember>> {
    check_dn(d, n)?;
    if n > MAX_CANON_ORDER {
        return Err(Error::TooLarge {
            what: "H-family enumeration",
            n,
            max: MAX_CANON_ORDER,
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for h in douglas_vectors(d, n)? {
        let t = assemble_douglas(d, &h)?;
        if seen.insert(canonical_form(&t)?) {
            out.push(HMember {
                params: DouglasParams { d, n, h },
                tournament: t,
            });
        }
    }
    Ok(out)
}

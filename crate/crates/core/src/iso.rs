//! Canonical forms, isomorphism tests, and isomorph-free generation.
//!
//! The canonical form of a tournament is the lexicographically smallest TRN
//! pair-bit string over all relabelings. Row `k` of that string lists how the
//! vertex at position `k` meets every later position, so the minimum is found
//! position by position: the unplaced vertices form an ordered partition whose
//! cells share their relation to every placed vertex, the next vertex is drawn
//! from the first cell, and each later cell splits into in-neighbours
//! (bit `0`) followed by out-neighbours (bit `1`). Only candidates producing
//! the smallest row survive, and branches whose prefix exceeds the best leaf
//! seen so far are cut.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::analysis::{diameter, is_strong};
use crate::bits::{bits, full_mask};
use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Largest order accepted by [`canonical_form`] (`C(16,2) = 120` code bits).
pub const MAX_CANON_ORDER: usize = 16;
/// Largest order accepted by the exhaustive generator.
pub const MAX_ENUM_ORDER: usize = 10;
/// Orders up to this bound are kept in memory once generated.
const MAX_MEMO_ORDER: usize = 9;

/// Lexicographically minimal pair-bit string, stored most significant first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    n: u8,
    code: u128,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn code(&self) -> u128 {
        self.code
    }

    /// The code as a TRN v1 pair-bit line.
    pub fn bit_string(&self) -> String {
        let n = self.order();
        let len = n * (n - 1) / 2;
        (0..len)
            .map(|k| {
                if self.code >> (len - 1 - k) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    /// The canonical representative.
    pub fn tournament(&self) -> Tournament {
        let n = self.order();
        let len = n * (n - 1) / 2;
        let mut k = 0;
        Tournament::from_pairs(n, |_, _| {
            let one = self.code >> (len - 1 - k) & 1 == 1;
            k += 1;
            one
        })
        .expect("canonical orders are in range")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bit_string())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.bit_string())
    }
}

struct Search<'a> {
    t: &'a Tournament,
    n: usize,
    ins: Vec<u64>,
    cur_rows: Vec<u64>,
    order: Vec<usize>,
    best_rows: Vec<u64>,
    best_order: Vec<usize>,
    found: bool,
}

impl Search<'_> {
    /// Compares `cur_rows[..=k]` to the best leaf's prefix.
    fn prefix_cmp(&self, k: usize) -> std::cmp::Ordering {
        if !self.found {
            return std::cmp::Ordering::Less;
        }
        self.cur_rows[..=k].cmp(&self.best_rows[..=k])
    }

    fn descend(&mut self, k: usize, cells: &[u64]) {
        if k == self.n {
            if !self.found || self.cur_rows < self.best_rows {
                self.best_rows.clone_from(&self.cur_rows);
                self.best_order.clone_from(&self.order);
                self.found = true;
            }
            return;
        }
        let first = cells[0];
        let mut min_row = u64::MAX;
        let mut winners = 0u64;
        for v in bits(first) {
            let row = self.row_for(v, cells);
            if row < min_row {
                min_row = row;
                winners = 1 << v;
            } else if row == min_row {
                winners |= 1 << v;
            }
        }
        self.cur_rows[k] = min_row;
        for v in bits(winners) {
            // An earlier sibling may have lowered the bound.
            if self.prefix_cmp(k) == std::cmp::Ordering::Greater {
                return;
            }
            let refined = self.refine(v, cells);
            self.order[k] = v;
            self.descend(k + 1, &refined);
            self.cur_rows[k] = min_row;
        }
    }

    #[inline]
    fn row_for(&self, v: usize, cells: &[u64]) -> u64 {
        let out = self.t.out_mask(v);
        let mut row = 0u64;
        for (idx, &c) in cells.iter().enumerate() {
            let c = if idx == 0 { c & !(1 << v) } else { c };
            let size = c.count_ones();
            let ones = (c & out).count_ones();
            row = (row << size) | ((1u64 << ones) - 1);
        }
        row
    }

    fn refine(&self, v: usize, cells: &[u64]) -> Vec<u64> {
        let out = self.t.out_mask(v);
        let inn = self.ins[v];
        let mut next = Vec::with_capacity(cells.len() + 2);
        for (idx, &c) in cells.iter().enumerate() {
            let c = if idx == 0 { c & !(1 << v) } else { c };
            let a = c & inn;
            let b = c & out;
            if a != 0 {
                next.push(a);
            }
            if b != 0 {
                next.push(b);
            }
        }
        next
    }
}

fn check_canon_order(n: usize) -> Result<()> {
    if n > MAX_CANON_ORDER {
        Err(Error::TooLarge {
            what: "canonical labeling",
            n,
            max: MAX_CANON_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Canonical form and a labeling realising it: `order[k]` is the vertex
/// placed at position `k`.
pub fn canonical_labeling(t: &Tournament) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = t.order();
    check_canon_order(n)?;
    let mut search = Search {
        t,
        n,
        ins: (0..n).map(|v| t.in_mask(v)).collect(),
        cur_rows: vec![0; n],
        order: vec![0; n],
        best_rows: vec![0; n],
        best_order: Vec::new(),
        found: false,
    };
    search.descend(0, &[full_mask(n)]);
    let mut code = 0u128;
    for (k, &row) in search.best_rows.iter().enumerate() {
        let width = (n - 1 - k) as u32;
        code = if width == 0 { code } else { (code << width) | row as u128 };
    }
    Ok((
        CanonicalForm { n: n as u8, code },
        search.best_order,
    ))
}

pub fn canonical_form(t: &Tournament) -> Result<CanonicalForm> {
    canonical_labeling(t).map(|(c, _)| c)
}

/// The canonical representative of the isomorphism class of `t`.
pub fn canonical_tournament(t: &Tournament) -> Result<Tournament> {
    let (_, order) = canonical_labeling(t)?;
    Ok(t.arrange(&order))
}

pub fn are_isomorphic(a: &Tournament, b: &Tournament) -> Result<bool> {
    check_canon_order(a.order())?;
    check_canon_order(b.order())?;
    if a.order() != b.order() || a.score_sequence() != b.score_sequence() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Restriction applied to enumerated classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    All,
    Strong,
    /// Strong with diameter at most `d`.
    DiameterAtMost(usize),
    /// Strong with diameter exactly `d`.
    DiameterExactly(usize),
}

impl Filter {
    pub fn accepts(&self, t: &Tournament) -> bool {
        match *self {
            Filter::All => true,
            Filter::Strong => is_strong(t),
            Filter::DiameterAtMost(d) => diameter(t).is_some_and(|x| x <= d),
            Filter::DiameterExactly(d) => diameter(t) == Some(d),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::All => f.write_str("all"),
            Filter::Strong => f.write_str("strong"),
            Filter::DiameterAtMost(d) => write!(f, "diam-le:{d}"),
            Filter::DiameterExactly(d) => write!(f, "diam-eq:{d}"),
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("unknown filter `{s}`"));
        match s {
            "all" => Ok(Filter::All),
            "strong" => Ok(Filter::Strong),
            _ => {
                let (kind, d) = s.split_once(':').ok_or_else(bad)?;
                let d: usize = d.parse().map_err(|_| bad())?;
                match kind {
                    "diam-le" => Ok(Filter::DiameterAtMost(d)),
                    "diam-eq" => Ok(Filter::DiameterExactly(d)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// One isomorphism class: its code and the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub form: CanonicalForm,
    pub tournament: Tournament,
}

fn check_enum_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUM_ORDER {
        Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: MAX_ENUM_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Children of `parent` kept by the canonical-parent rule: deleting the last
/// vertex of the child's canonical labeling must give back `parent`'s class.
fn children_of(parent: &Class, mut emit: impl FnMut(Class)) {
    let p = &parent.tournament;
    let m = p.order();
    let parent_scores = p.score_sequence();
    let mut seen: HashSet<u128> = HashSet::new();
    for out in 0u64..(1u64 << m) {
        let child = p.extend_unchecked(out);
        let (form, order) = canonical_labeling(&child).expect("order checked by caller");
        if seen.contains(&form.code) {
            continue;
        }
        let last = order[m];
        let keep = if last == m {
            true
        } else {
            let rest = full_mask(m + 1) & !(1 << last);
            let q = child.induced_mask(rest);
            q.score_sequence() == parent_scores
                && canonical_form(&q).expect("order checked by caller") == parent.form
        };
        if keep {
            seen.insert(form.code);
            emit(Class {
                form,
                tournament: child.arrange(&order),
            });
        }
    }
}

type Level = Arc<Vec<Class>>;

fn memo() -> &'static Mutex<Vec<Option<Level>>> {
    static MEMO: OnceLock<Mutex<Vec<Option<Level>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(vec![None; MAX_MEMO_ORDER + 1]))
}

fn generate_level(parents: &[Class]) -> Vec<Class> {
    let mut out: Vec<Class> = parents
        .par_iter()
        .flat_map_iter(|p| {
            let mut kids = Vec::new();
            children_of(p, |c| kids.push(c));
            kids
        })
        .collect();
    out.par_sort_unstable_by_key(|c| c.form);
    out
}

/// All isomorphism classes of order `n <= 9`, sorted by canonical code; the
/// result is computed once per process.
pub fn classes(n: usize) -> Result<Level> {
    check_enum_order(n)?;
    if n > MAX_MEMO_ORDER {
        return Err(Error::TooLarge {
            what: "in-memory class table",
            n,
            max: MAX_MEMO_ORDER,
        });
    }
    if let Some(level) = memo().lock().expect("memo lock").get(n).cloned().flatten() {
        return Ok(level);
    }
    let level = if n == 1 {
        let t = Tournament::from_rows(vec![0]).expect("single vertex");
        vec![Class {
            form: canonical_form(&t)?,
            tournament: t,
        }]
    } else {
        let parents = classes(n - 1)?;
        generate_level(&parents)
    };
    let level = Arc::new(level);
    memo().lock().expect("memo lock")[n] = Some(level.clone());
    Ok(level)
}

/// Visits one representative per class satisfying `filter`, in no particular
/// order; work is spread over the current rayon pool.
pub fn for_each_class<F>(n: usize, filter: Filter, f: F) -> Result<()>
where
    F: Fn(&Class) + Sync + Send,
{
    check_enum_order(n)?;
    if n <= MAX_MEMO_ORDER {
        classes(n)?
            .par_iter()
            .filter(|c| filter.accepts(&c.tournament))
            .for_each(f);
    } else {
        classes(n - 1)?.par_iter().for_each(|p| {
            children_of(p, |c| {
                if filter.accepts(&c.tournament) {
                    f(&c)
                }
            })
        });
    }
    Ok(())
}

/// Parallel fold over every class of order `n`. `fold` sees classes in no
/// particular order and partial results are combined with `reduce`, so the
/// result is deterministic only when `reduce` is order-independent.
pub fn fold_classes<A, ID, F, R>(n: usize, identity: ID, fold: F, reduce: R) -> Result<A>
where
    A: Send,
    ID: Fn() -> A + Sync + Send,
    F: Fn(A, &Class) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    check_enum_order(n)?;
    if n <= MAX_MEMO_ORDER {
        return Ok(classes(n)?
            .par_iter()
            .fold(&identity, &fold)
            .reduce(&identity, &reduce));
    }
    Ok(classes(n - 1)?
        .par_iter()
        .fold(&identity, |acc, p| {
            let mut acc = Some(acc);
            children_of(p, |c| acc = Some(fold(acc.take().expect("accumulator"), &c)));
            acc.expect("accumulator")
        })
        .reduce(&identity, &reduce))
}

/// Canonical representatives of every class of order `n` passing `filter`,
/// sorted by canonical code.
pub fn enumerate_tournaments(n: usize, filter: Filter) -> Result<Vec<Tournament>> {
    check_enum_order(n)?;
    if n <= MAX_MEMO_ORDER {
        return Ok(classes(n)?
            .iter()
            .filter(|c| filter.accepts(&c.tournament))
            .map(|c| c.tournament.clone())
            .collect());
    }
    let parents = classes(n - 1)?;
    let mut out: Vec<Class> = parents
        .par_iter()
        .flat_map_iter(|p| {
            let mut kids = Vec::new();
            children_of(p, |c| {
                if filter.accepts(&c.tournament) {
                    kids.push(c)
                }
            });
            kids
        })
        .collect();
    out.par_sort_unstable_by_key(|c| c.form);
    Ok(out.into_iter().map(|c| c.tournament).collect())
}

/// Number of isomorphism classes of order `n`.
pub fn count_classes(n: usize) -> Result<u64> {
    check_enum_order(n)?;
    if n <= MAX_MEMO_ORDER {
        return Ok(classes(n)?.len() as u64);
    }
    let parents = classes(n - 1)?;
    Ok(parents
        .par_iter()
        .map(|p| {
            let mut k = 0u64;
            children_of(p, |_| k += 1);
            k
        })
        .sum())
}

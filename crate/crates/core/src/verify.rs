//! Registry of exhaustive checks.
//!
//! Each check names a universe of tournaments of order `n` (a hypothesis on
//! strength, diameter, critical structure, ...) and a clause that every member
//! must satisfy. All clauses are per-tournament predicates, so a refutation
//! always comes with a concrete tournament that can be replayed on its own.
//! Minimum claims are expressed the same way: a member below the bound, or a
//! member attaining the bound outside the predicted extremal classes, or a
//! predicted extremal class missing the bound, each violate the clause.
//!
//! Classes are visited in parallel; every reduction (counts, minima, the
//! smallest-code counterexample, sorted witness lists) is order-independent,
//! so reports do not depend on the size of the thread pool.

use std::cell::OnceCell;
use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{diameter, diameter_within, is_strong, is_strong_within, non_critical, strong_components_within};
use crate::bits::{bits, full_mask, VertexSet};
use crate::counting::{cycle_counts, cycle_counts_through, hamiltonian_path_count, strong_sub_counts};
use crate::error::{Error, Result};
use crate::extremal::{assemble_douglas, binomial, enumerate_h_family, h_family_size_nminus3};
use crate::families::{
    build_extremal, build_extremal_minus, build_path_extremal, build_transitive, cyclic_triple,
};
use crate::iso::{canonical_form, canonical_tournament, fold_classes, CanonicalForm, MAX_ENUM_ORDER};
use crate::tournament::Tournament;
use crate::trn::to_trn;

/// Largest order for checks whose universe is a constructed family.
pub const MAX_FAMILY_CHECK_ORDER: usize = 12;
/// Witness lists keep the smallest codes up to this many entries.
pub const WITNESS_LIMIT: usize = 64;
/// The `c_5(T_{n-3,n}) = n-2` census clause rests on the length-5 bound for
/// `T_{n-3,n-1}`, which needs `n-1 >= 7`; at `n = 7` the count is `C(4,2) = 6`.
pub const CENSUS_C5_MIN_ORDER: usize = 8;
/// Random compositions tried per outer tournament in `lem2`.
pub const COMPOSITION_TRIALS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Verified,
    VerifiedVacuous,
    Refuted,
}

/// Parameters of one check instance; unused axes stay `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CheckParams {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
}

impl CheckParams {
    pub fn new(n: usize) -> Self {
        CheckParams {
            n,
            ..Default::default()
        }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn with_h(mut self, h: usize) -> Self {
        self.h = Some(h);
        self
    }

    /// Whether `self` (a requested selection) admits the fully expanded `case`.
    fn selects(&self, case: &CheckParams) -> bool {
        let ok = |want: Option<usize>, got: Option<usize>| want.is_none() || want == got;
        self.n == case.n && ok(self.d, case.d) && ok(self.ell, case.ell) && ok(self.h, case.h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The violated clause, reproduced verbatim by [`replay`].
    pub clause: String,
    /// TRN v1 record of the canonical representative; absent for clauses about
    /// the universe as a whole (such as a class count).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tournament: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub params: CheckParams,
    /// Classes satisfying the hypothesis.
    pub universe_size: u64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal_value: Option<u64>,
    /// Canonical codes attaining `extremal_value`, smallest first, at most
    /// [`WITNESS_LIMIT`] of them.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extremal_witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal_witness_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_id: &'static str,
    pub params: CheckParams,
    /// Classes of order `n` visited (0 when nothing had to be scanned).
    pub universe_size: u64,
    pub outcome: Outcome,
    /// First counterexample over the cases, in case order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub cases: Vec<CaseReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    ThmI,
    ThmII,
    ThmIII,
    ThmIV,
    CorI,
    ThmV,
    Lem1,
    Lem2,
    Thm1,
    Prop1,
    Prop2,
    Cor1,
    Thm2,
    Thm2Ell4,
    Thm3,
    Thm3Ell5,
    Lem3,
    Lem4,
    Thm4,
    Conj1,
    Conj2,
    Conj3,
    HCensus,
}

/// Registry entry: identifier, hypothesis range on `n`, and parameter axes.
#[derive(Clone, Copy, Debug)]
pub struct CheckInfo {
    pub id: &'static str,
    pub min_n: usize,
    pub max_n: usize,
    pub axes: &'static [&'static str],
    pub statement: &'static str,
    kind: Kind,
}

const fn info(
    id: &'static str,
    kind: Kind,
    min_n: usize,
    max_n: usize,
    axes: &'static [&'static str],
    statement: &'static str,
) -> CheckInfo {
    CheckInfo {
        id,
        min_n,
        max_n,
        axes,
        statement,
        kind,
    }
}

const E: usize = MAX_ENUM_ORDER;

pub static REGISTRY: &[CheckInfo] = &[
    info("thmI", Kind::ThmI, 1, E, &[], "every tournament has an odd number of Hamiltonian paths; exactly one iff it is transitive"),
    info("thmII", Kind::ThmII, 3, E, &["ell"], "strong T, 3 <= l <= n: c_l >= n-l+1 and s_l >= n-l+1"),
    info("thmIII", Kind::ThmIII, 5, E, &["ell"], "strong T, 4 <= l <= n-1: c_l = n-l+1 implies T ~ T_{n-1,n}"),
    info("thmIV", Kind::ThmIV, 3, E, &[], "strong T: every vertex lies on a circuit of every length 3..n"),
    info("corI", Kind::CorI, 4, E, &[], "strong T, n >= 4: at least two non-critical vertices"),
    info("thmV", Kind::ThmV, 4, E, &[], "strong T, n >= 4: exactly two non-critical vertices iff T ~ T_{n-1,n}"),
    info("lem1", Kind::Lem1, 4, E, &[], "strong T: if T_ncr is strong then T = T_ncr or T ~ D(v1,v2,T_ncr); otherwise no proper strong subtournament contains T_ncr"),
    info("lem2", Kind::Lem2, 2, E, &[], "composition T(T_1..T_n) is strong iff T is; then its non-critical vertices are the blocks of order >= 2 and the singleton blocks at non-critical vertices of T"),
    info("thm1", Kind::Thm1, 5, E, &["ell"], "strong T, 4 <= l <= n-1: c_l(T,w) = 1 for every non-critical w implies T ~ T_{n-1,n}"),
    info("prop1", Kind::Prop1, 3, E, &[], "strong T of diameter 2: at most 3 critical vertices; for 1 <= c <= 3, exactly c critical iff T = D(X1,X2,X3) with 3-c blocks strong of order >= 3 and diameter 2, the rest singletons"),
    info("prop2", Kind::Prop2, 4, E, &["d"], "strong T of diameter d >= 3: at least n-d+1 non-critical vertices; equality implies T_cr ~ T_{d-2,d-1}"),
    info("cor1", Kind::Cor1, 4, E, &["d"], "diameter d >= 3, n-d+1 non-critical vertices and T_ncr = TT_2(T_1,T_2): T ~ T_{d,d+1}(T_2,v_1..v_{d-1},T_1)"),
    info("thm2", Kind::Thm2, 7, E, &["ell"], "strong T, diameter <= n-2, 5 <= l <= n-2: c_l >= n-l+2 with equality iff T ~ T_{n-2,n} or T_{n-2,n}^-"),
    info("thm2_ell4", Kind::Thm2Ell4, 7, E, &[], "strong T, diameter <= n-2: c_4 >= n-2 with equality iff T is in H_{n-2,n}, a class of n-4 tournaments"),
    info("thm3", Kind::Thm3, 9, E, &["ell"], "strong T, diameter <= n-3, 6 <= l <= n-3: c_l >= n-l+3 with equality iff T ~ T_{n-3,n}"),
    info("thm3_ell5", Kind::Thm3Ell5, 9, E, &[], "strong T, diameter <= n-3: c_5 >= n-2 with equality iff T ~ T_{n-3,n}"),
    info("lem3", Kind::Lem3, 9, E, &[], "strong T with at most one non-critical w such that T-w ~ T_{n-2,n-1}: |T_ncr| >= 4 implies s_{n-2} >= 6, |T_ncr| >= 5 implies s_{n-2} >= 7"),
    info("lem4", Kind::Lem4, 9, E, &[], "strong T with two non-critical w such that T-w has diameter n-2: diameter of T >= n-2 or s_{n-2} >= 7"),
    info("thm4", Kind::Thm4, 9, E, &[], "strong T, diameter <= n-3: c_{n-2} >= 6 with equality iff T ~ T_{n-3,n}"),
    info("conj1", Kind::Conj1, 4, E, &["d", "ell"], "strong T, diameter <= d: c_l >= c_l(T_{d,n}); for 2d >= n+3 and n-d+3 <= l <= d equality implies T ~ T_{d,n} or T_{d,n}^-"),
    info("conj2", Kind::Conj2, 4, E, &["d", "ell"], "strong T, diameter <= d, 2d >= n+3, n-d+3 <= l <= d: some non-critical w has diam(T-w) <= d and c_l(T,w) >= 2^(ceil((n-d+1)/2)-1)"),
    info("conj3", Kind::Conj3, 4, E, &["d", "h"], "strong T of diameter d, 2h <= n-d+1: c_{n-h} >= C(n-d+1,h); the equality characterization is reported, not asserted"),
    info("h_census", Kind::HCensus, 7, MAX_FAMILY_CHECK_ORDER, &[], "H_{n-3,n} has (n^2-7n+8)/2 classes, each with c_{n-1} = 4 and c_n = 1; h_3 <= h_2 gives c_3 = n-2, h_3 <= h_2-1 gives c_4 = n-1; c_5(T_{n-3,n}) = n-2"),
];

pub fn lookup(id: &str) -> Result<&'static CheckInfo> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Every parameter combination in the hypothesis range of `info` at order `n`.
pub fn expand(info: &CheckInfo, n: usize) -> Vec<CheckParams> {
    let base = CheckParams::new(n);
    if n < info.min_n || n > info.max_n {
        return Vec::new();
    }
    let ells = |lo: usize, hi: usize| -> Vec<CheckParams> {
        (lo..=hi).map(|l| base.with_ell(l)).collect()
    };
    match info.kind {
        Kind::ThmII => ells(3, n),
        Kind::ThmIII | Kind::Thm1 => ells(4, n - 1),
        Kind::Thm2 => ells(5, n - 2),
        Kind::Thm3 => ells(6, n - 3),
        Kind::Prop2 | Kind::Cor1 => (3..n).map(|d| base.with_d(d)).collect(),
        Kind::Conj1 => (3..n)
            .flat_map(|d| (3..=n).map(move |l| base.with_d(d).with_ell(l)))
            .collect(),
        Kind::Conj2 => (3..n)
            .filter(|&d| 2 * d >= n + 3)
            .flat_map(|d| (n - d + 3..=d).map(move |l| base.with_d(d).with_ell(l)))
            .collect(),
        Kind::Conj3 => (3..n)
            .flat_map(|d| (0..=(n - d).div_ceil(2)).map(move |h| base.with_d(d).with_h(h)))
            .collect(),
        _ => vec![base],
    }
}

// ---------------------------------------------------------------------------
// Per-class data, computed lazily and shared by every case at the same order.

struct Profile<'a> {
    t: &'a Tournament,
    form: CanonicalForm,
    n: usize,
    diameter: Option<usize>,
    ncr: u64,
    c: OnceCell<Vec<u64>>,
    s: OnceCell<Vec<u64>>,
    ham: OnceCell<u64>,
    through: OnceCell<Vec<Option<Vec<u64>>>>,
    del_diam: OnceCell<Vec<Option<usize>>>,
}

const GUARDED: &str = "orders are validated before scanning";

impl<'a> Profile<'a> {
    fn new(t: &'a Tournament, form: CanonicalForm) -> Self {
        Profile {
            t,
            form,
            n: t.order(),
            diameter: diameter(t),
            ncr: non_critical(t).mask(),
            c: OnceCell::new(),
            s: OnceCell::new(),
            ham: OnceCell::new(),
            through: OnceCell::new(),
            del_diam: OnceCell::new(),
        }
    }

    fn strong(&self) -> bool {
        self.diameter.is_some()
    }

    fn diam_le(&self, d: usize) -> bool {
        self.diameter.is_some_and(|x| x <= d)
    }

    fn ncr_count(&self) -> usize {
        self.ncr.count_ones() as usize
    }

    fn c(&self, l: usize) -> u64 {
        self.c.get_or_init(|| cycle_counts(self.t).expect(GUARDED).c)[l]
    }

    fn s(&self, l: usize) -> u64 {
        self.s.get_or_init(|| strong_sub_counts(self.t).expect(GUARDED))[l]
    }

    fn ham(&self) -> u64 {
        *self.ham.get_or_init(|| hamiltonian_path_count(self.t).expect(GUARDED))
    }

    /// `c_l(T,w)` for a non-critical `w`.
    fn through(&self, w: usize, l: usize) -> u64 {
        let table = self.through.get_or_init(|| {
            (0..self.n)
                .map(|v| {
                    (self.ncr >> v & 1 == 1).then(|| cycle_counts_through(self.t, v).expect(GUARDED))
                })
                .collect()
        });
        table[w].as_ref().expect("non-critical vertex")[l]
    }

    /// Diameter of `T - w` for a non-critical `w`.
    fn del_diam(&self, w: usize) -> Option<usize> {
        self.del_diam.get_or_init(|| {
            let all = full_mask(self.n);
            (0..self.n)
                .map(|v| {
                    if self.ncr >> v & 1 == 1 {
                        diameter_within(self.t, all & !(1 << v))
                    } else {
                        None
                    }
                })
                .collect()
        })[w]
    }
}

// ---------------------------------------------------------------------------
// Case context: the expected extremal classes and bounds for one parameter set.

struct Case {
    kind: Kind,
    p: CheckParams,
    /// Classes predicted to attain the bound (sorted).
    expected: Vec<CanonicalForm>,
    bound: u64,
    /// The equality clause applies (conj1 only).
    unique_clause: bool,
    /// Reference class used by isomorphism clauses.
    target: Option<CanonicalForm>,
    /// Condition family (conj3) or `H_{n-2,n}` (thm2_ell4), sorted.
    family: Vec<CanonicalForm>,
}

fn form_of(t: &Tournament) -> CanonicalForm {
    canonical_form(t).expect(GUARDED)
}

fn sorted_forms(ts: impl IntoIterator<Item = Tournament>) -> Vec<CanonicalForm> {
    let set: BTreeSet<CanonicalForm> = ts.into_iter().map(|t| form_of(&t)).collect();
    set.into_iter().collect()
}

/// Parameter vectors for the equality conditions of the third conjecture:
/// `h` leading entries `d-2`, `h` trailing entries `1`, middle entries in
/// `1..=d-2` with `h_s <= h_r + 1` for middle `r <= s`.
fn conj3_vectors(d: usize, n: usize, h: usize) -> Vec<Vec<usize>> {
    let m = n - d + 1;
    let mut out = Vec::new();
    fn rec(d: usize, m: usize, h: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == m {
            out.push(cur.clone());
            return;
        }
        let choices: Vec<usize> = if i < h {
            vec![d - 2]
        } else if i >= m - h {
            vec![1]
        } else {
            let cap = cur[h..].iter().min().map_or(d - 2, |&x| (x + 1).min(d - 2));
            (1..=cap).collect()
        };
        for x in choices {
            cur.push(x);
            rec(d, m, h, cur, out);
            cur.pop();
        }
    }
    rec(d, m, h, &mut Vec::new(), &mut out);
    out
}

fn build_case(kind: Kind, p: CheckParams) -> Result<Case> {
    let n = p.n;
    let mut case = Case {
        kind,
        p,
        expected: Vec::new(),
        bound: 0,
        unique_clause: false,
        target: None,
        family: Vec::new(),
    };
    let req = |x: Option<usize>, name| x.ok_or(Error::MissingParameter(name));
    match kind {
        Kind::ThmI => case.target = Some(form_of(&build_transitive(n)?)),
        Kind::ThmIII | Kind::ThmV | Kind::Thm1 => case.target = Some(form_of(&build_path_extremal(n)?)),
        Kind::Thm2 => {
            case.expected = sorted_forms([build_extremal(n - 2, n)?, build_extremal_minus(n - 2, n)?]);
            case.bound = (n - req(p.ell, "ell")? + 2) as u64;
        }
        Kind::Thm2Ell4 => {
            case.family = sorted_forms(enumerate_h_family(n - 2, n)?.into_iter().map(|m| m.tournament));
            case.bound = (n - 2) as u64;
        }
        Kind::Thm3 => {
            case.target = Some(form_of(&build_extremal(n - 3, n)?));
            case.bound = (n - req(p.ell, "ell")? + 3) as u64;
        }
        Kind::Thm3Ell5 => {
            case.target = Some(form_of(&build_extremal(n - 3, n)?));
            case.bound = (n - 2) as u64;
        }
        Kind::Thm4 => {
            case.target = Some(form_of(&build_extremal(n - 3, n)?));
            case.bound = 6;
        }
        Kind::Lem3 | Kind::Lem4 => case.target = Some(form_of(&build_path_extremal(n - 1)?)),
        Kind::Prop2 => case.target = Some(form_of(&build_path_extremal(req(p.d, "d")? - 1)?)),
        Kind::Conj1 => {
            let (d, l) = (req(p.d, "d")?, req(p.ell, "ell")?);
            let t = build_extremal(d, n)?;
            case.bound = cycle_counts(&t)?.c(l);
            case.unique_clause = 2 * d >= n + 3 && n - d + 3 <= l && l <= d;
            case.expected = sorted_forms([t, build_extremal_minus(d, n)?]);
        }
        Kind::Conj2 => {
            let d = req(p.d, "d")?;
            case.bound = 1u64 << ((n - d + 1).div_ceil(2) - 1);
        }
        Kind::Conj3 => {
            let (d, h) = (req(p.d, "d")?, req(p.h, "h")?);
            case.bound = binomial((n - d + 1) as u64, h as u64);
            let members = conj3_vectors(d, n, h)
                .into_iter()
                .map(|v| assemble_douglas(d, &v))
                .collect::<Result<Vec<_>>>()?;
            case.family = sorted_forms(members);
        }
        _ => {}
    }
    Ok(case)
}

// ---------------------------------------------------------------------------
// Clause evaluation.

fn in_universe(case: &Case, p: &Profile) -> bool {
    let n = p.n;
    match case.kind {
        Kind::ThmI | Kind::Lem2 => true,
        Kind::Prop1 => p.diameter == Some(2),
        Kind::Prop2 => p.diameter == case.p.d,
        Kind::Cor1 => {
            let d = case.p.d.unwrap_or(0);
            p.diameter == Some(d)
                && p.ncr_count() == n - d + 1
                && strong_components_within(p.t, p.ncr).len() == 2
        }
        Kind::Thm2 | Kind::Thm2Ell4 => p.diam_le(n - 2),
        Kind::Thm3 | Kind::Thm3Ell5 | Kind::Thm4 => p.diam_le(n - 3),
        Kind::Lem3 => p.strong() && deletions_of_max_diameter(case, p, true) <= 1,
        Kind::Lem4 => p.strong() && deletions_of_max_diameter(case, p, false) >= 2,
        Kind::Conj1 | Kind::Conj2 => p.diam_le(case.p.d.unwrap_or(0)),
        Kind::Conj3 => p.diameter == case.p.d,
        _ => p.strong(),
    }
}

/// Non-critical `w` with `diam(T-w) = n-2`; with `iso` each is also confirmed
/// to be isomorphic to `T_{n-2,n-1}`.
fn deletions_of_max_diameter(case: &Case, p: &Profile, iso: bool) -> usize {
    bits(p.ncr)
        .filter(|&w| p.del_diam(w) == Some(p.n - 2))
        .filter(|&w| {
            !iso || Some(form_of(&p.t.delete_vertex(w).expect(GUARDED))) == case.target
        })
        .count()
}

/// The quantity whose minimum over the universe is reported.
fn metric(case: &Case, p: &Profile) -> Option<u64> {
    let n = p.n;
    let ell = case.p.ell;
    match case.kind {
        Kind::ThmI => Some(p.ham()),
        Kind::ThmII | Kind::ThmIII | Kind::Thm2 | Kind::Thm3 | Kind::Conj1 => ell.map(|l| p.c(l)),
        Kind::Thm2Ell4 => Some(p.c(4)),
        Kind::Thm3Ell5 => Some(p.c(5)),
        Kind::Thm4 => Some(p.c(n - 2)),
        Kind::CorI | Kind::Prop2 => Some(p.ncr_count() as u64),
        Kind::Conj2 => Some(conj2_best(case, p)),
        Kind::Conj3 => Some(p.c(n - case.p.h.unwrap_or(0))),
        _ => None,
    }
}

fn conj2_best(case: &Case, p: &Profile) -> u64 {
    let d = case.p.d.unwrap_or(0);
    let l = case.p.ell.unwrap_or(0);
    bits(p.ncr)
        .filter(|&w| p.del_diam(w).is_some_and(|x| x <= d))
        .map(|w| p.through(w, l))
        .max()
        .unwrap_or(0)
}

fn is_target(case: &Case, p: &Profile) -> bool {
    case.target == Some(p.form)
}

/// Clause for "`value >= bound`, equality exactly on `members`".
fn bound_with_equality(name: &str, value: u64, bound: u64, member: bool, what: &str) -> Option<String> {
    if value < bound {
        Some(format!("{name} = {value} is below the bound {bound}"))
    } else if value == bound && !member {
        Some(format!("{name} = {bound} attained outside {what}"))
    } else if value != bound && member {
        Some(format!("{what} has {name} = {value}, not the bound {bound}"))
    } else {
        None
    }
}

fn violation(case: &Case, p: &Profile) -> Option<String> {
    let n = p.n;
    let ell = case.p.ell.unwrap_or(0);
    match case.kind {
        Kind::ThmI => {
            let h = p.ham();
            if h.is_multiple_of(2) {
                Some(format!("Hamiltonian path count {h} is even"))
            } else if (h == 1) != is_target(case, p) {
                Some(format!("Hamiltonian path count {h} disagrees with transitivity"))
            } else {
                None
            }
        }
        Kind::ThmII => {
            let b = (n - ell + 1) as u64;
            let (c, s) = (p.c(ell), p.s(ell));
            if c < b {
                Some(format!("c_{ell} = {c} < n-l+1 = {b}"))
            } else if s < b {
                Some(format!("s_{ell} = {s} < n-l+1 = {b}"))
            } else {
                None
            }
        }
        Kind::ThmIII => (p.c(ell) == (n - ell + 1) as u64 && !is_target(case, p))
            .then(|| format!("c_{ell} = n-l+1 but T is not T_{{n-1,n}}")),
        Kind::ThmIV => {
            for w in 0..n {
                let through = cycle_counts_through(p.t, w).expect(GUARDED);
                if let Some(l) = (3..=n).find(|&l| through[l] == 0) {
                    return Some(format!("some vertex lies on no circuit of length {l}"));
                }
            }
            None
        }
        Kind::CorI => (p.ncr_count() < 2).then(|| format!("only {} non-critical vertices", p.ncr_count())),
        Kind::ThmV => ((p.ncr_count() == 2) != is_target(case, p)).then(|| {
            format!(
                "{} non-critical vertices but T is {}T_{{n-1,n}}",
                p.ncr_count(),
                if is_target(case, p) { "" } else { "not " }
            )
        }),
        Kind::Lem1 => lemma1_violation(p),
        Kind::Lem2 => lemma2_violation(p),
        Kind::Thm1 => {
            let all_one = bits(p.ncr).all(|w| p.through(w, ell) == 1);
            (all_one && !is_target(case, p))
                .then(|| format!("c_{ell}(T,w) = 1 for every non-critical w but T is not T_{{n-1,n}}"))
        }
        Kind::Prop1 => prop1_violation(p),
        Kind::Prop2 => {
            let d = case.p.d.unwrap_or(0);
            let k = p.ncr_count();
            if k < n - d + 1 {
                Some(format!("{k} non-critical vertices < n-d+1 = {}", n - d + 1))
            } else if k == n - d + 1 {
                let cr = full_mask(n) & !p.ncr;
                let core = p.t.induced(VertexSet(cr)).expect(GUARDED);
                (Some(form_of(&core)) != case.target).then(|| "T_cr is not T_{d-2,d-1}".to_string())
            } else {
                None
            }
        }
        Kind::Cor1 => {
            let d = case.p.d.unwrap_or(0);
            let comps = strong_components_within(p.t, p.ncr);
            let one = build_transitive(1).expect(GUARDED);
            let mut parts = vec![p.t.induced(comps[1]).expect(GUARDED)];
            parts.extend(std::iter::repeat_n(one, d - 1));
            parts.push(p.t.induced(comps[0]).expect(GUARDED));
            let shape = build_path_extremal(d + 1)
                .and_then(|s| s.compose(&parts))
                .expect(GUARDED);
            (form_of(&shape) != p.form).then(|| "T is not T_{d,d+1}(T_2,v_1..v_{d-1},T_1)".to_string())
        }
        Kind::Thm2 => {
            let member = case.expected.binary_search(&p.form).is_ok();
            bound_with_equality(&format!("c_{ell}"), p.c(ell), case.bound, member, "{T_{n-2,n}, T_{n-2,n}^-}")
        }
        Kind::Thm2Ell4 => {
            let member = case.family.binary_search(&p.form).is_ok();
            bound_with_equality("c_4", p.c(4), case.bound, member, "H_{n-2,n}")
        }
        Kind::Thm3 => bound_with_equality(&format!("c_{ell}"), p.c(ell), case.bound, is_target(case, p), "T_{n-3,n}"),
        Kind::Thm3Ell5 => bound_with_equality("c_5", p.c(5), case.bound, is_target(case, p), "T_{n-3,n}"),
        Kind::Thm4 => bound_with_equality("c_{n-2}", p.c(n - 2), case.bound, is_target(case, p), "T_{n-3,n}"),
        Kind::Lem3 => {
            let (k, s) = (p.ncr_count(), p.s(n - 2));
            if k >= 5 && s < 7 {
                Some(format!("{k} non-critical vertices but s_{{n-2}} = {s} < 7"))
            } else if k >= 4 && s < 6 {
                Some(format!("{k} non-critical vertices but s_{{n-2}} = {s} < 6"))
            } else {
                None
            }
        }
        Kind::Lem4 => {
            let s = p.s(n - 2);
            (p.diameter.unwrap_or(0) < n - 2 && s < 7)
                .then(|| format!("diameter {} < n-2 and s_{{n-2}} = {s} < 7", p.diameter.unwrap_or(0)))
        }
        Kind::Conj1 => {
            let c = p.c(ell);
            if c < case.bound {
                Some(format!("c_{ell} = {c} < c_{ell}(T_{{d,n}}) = {}", case.bound))
            } else if case.unique_clause && c == case.bound && case.expected.binary_search(&p.form).is_err() {
                Some(format!("c_{ell} = c_{ell}(T_{{d,n}}) = {c} outside {{T_{{d,n}}, T_{{d,n}}^-}}"))
            } else {
                None
            }
        }
        Kind::Conj2 => {
            let best = conj2_best(case, p);
            (best < case.bound).then(|| {
                format!(
                    "best non-critical w with diam(T-w) <= d has c_{ell}(T,w) = {best} < {}",
                    case.bound
                )
            })
        }
        Kind::Conj3 => {
            let h = case.p.h.unwrap_or(0);
            let c = p.c(n - h);
            (c < case.bound).then(|| format!("c_{{n-{h}}} = {c} < C(n-d+1,{h}) = {}", case.bound))
        }
        Kind::HCensus => None,
    }
}

fn lemma1_violation(p: &Profile) -> Option<String> {
    let n = p.n;
    let all = full_mask(n);
    if p.ncr != 0 && is_strong_within(p.t, p.ncr) {
        if p.ncr == all {
            return None;
        }
        let core = p.t.induced(VertexSet(p.ncr)).expect(GUARDED);
        let one = build_transitive(1).expect(GUARDED);
        let shape = cyclic_triple().compose(&[one.clone(), one, core]);
        match shape {
            Ok(s) if s.order() == n && form_of(&s) == p.form => None,
            _ => Some("T_ncr is strong but T is neither T_ncr nor D(v1,v2,T_ncr)".to_string()),
        }
    } else {
        let cr = all & !p.ncr;
        let mut sub = 0u64;
        // Proper supersets of the non-critical set: every proper subset of cr.
        loop {
            if sub != cr && (p.ncr | sub) != 0 && is_strong_within(p.t, p.ncr | sub) {
                return Some("T_ncr is not strong but lies in a proper strong subtournament".to_string());
            }
            if sub == cr {
                break;
            }
            sub = (sub.wrapping_sub(cr)) & cr;
        }
        None
    }
}

fn composition_seed(form: &CanonicalForm) -> u64 {
    let code = form.code();
    (code as u64) ^ ((code >> 64) as u64).rotate_left(29) ^ (form.order() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn random_tournament(rng: &mut ChaCha8Rng, k: usize) -> Tournament {
    Tournament::from_pairs(k, |_, _| rng.gen()).expect(GUARDED)
}

fn lemma2_violation(p: &Profile) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(composition_seed(&p.form));
    for _ in 0..COMPOSITION_TRIALS {
        let parts: Vec<Tournament> = (0..p.n)
            .map(|_| {
                let k = rng.gen_range(1..=3);
                random_tournament(&mut rng, k)
            })
            .collect();
        let comp = p.t.compose(&parts).expect(GUARDED);
        let strong = is_strong(&comp);
        if strong != p.strong() {
            return Some("composition strength differs from the outer tournament".to_string());
        }
        if strong {
            let mut expected = 0u64;
            let mut off = 0;
            for (r, part) in parts.iter().enumerate() {
                let k = part.order();
                if k >= 2 || p.ncr >> r & 1 == 1 {
                    expected |= full_mask(k) << off;
                }
                off += k;
            }
            if non_critical(&comp).mask() != expected {
                return Some("non-critical set of a composition differs from its block description".to_string());
            }
        }
    }
    None
}

/// Bitmask over `c` of the singleton counts realised by decompositions
/// `T = D(A,B,C)` into blocks that are singletons or strong of order >= 3 with
/// diameter 2.
fn delta_singleton_counts(t: &Tournament) -> u8 {
    let n = t.order();
    let all = full_mask(n);
    let valid = |x: u64| {
        let k = x.count_ones();
        k == 1 || (k >= 3 && diameter_within(t, x) == Some(2))
    };
    let mut seen = 0u8;
    for rest in 0u64..(1u64 << (n - 1)) {
        let a = 1 | rest << 1;
        if a == all {
            continue;
        }
        let (mut b, mut c) = (0u64, 0u64);
        let mut ok = true;
        for v in bits(all & !a) {
            if t.in_mask(v) & a == a {
                b |= 1 << v;
            } else if t.out_mask(v) & a == a {
                c |= 1 << v;
            } else {
                ok = false;
                break;
            }
        }
        if !ok || b == 0 || c == 0 || bits(b).any(|v| t.out_mask(v) & c != c) {
            continue;
        }
        if valid(a) && valid(b) && valid(c) {
            let singles = [a, b, c].iter().filter(|x| x.count_ones() == 1).count();
            seen |= 1 << singles;
        }
    }
    seen
}

fn prop1_violation(p: &Profile) -> Option<String> {
    let critical = p.n - p.ncr_count();
    if critical > 3 {
        return Some(format!("{critical} critical vertices > 3"));
    }
    let counts = delta_singleton_counts(p.t);
    for c in 1..=3usize {
        let has = counts >> c & 1 == 1;
        if (critical == c) != has {
            return Some(format!(
                "{critical} critical vertices but a decomposition with {c} singleton blocks {}",
                if has { "exists" } else { "is missing" }
            ));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Accumulation.

#[derive(Clone, Debug, Default)]
struct Acc {
    size: u64,
    min: Option<u64>,
    witnesses: Vec<CanonicalForm>,
    witness_count: u64,
    cex: Option<(CanonicalForm, String)>,
    /// Universe members attaining `bound`.
    eq_count: u64,
    /// ... of which belong to the case family.
    eq_in_family: u64,
    /// Family members met in the universe, and those attaining `bound`.
    family_seen: BTreeSet<CanonicalForm>,
}

impl Acc {
    fn add(&mut self, case: &Case, p: &Profile) {
        if !in_universe(case, p) {
            return;
        }
        self.size += 1;
        if let Some(v) = metric(case, p) {
            match self.min {
                Some(m) if v > m => {}
                Some(m) if v == m => {
                    self.witness_count += 1;
                    push_witness(&mut self.witnesses, p.form);
                }
                _ => {
                    self.min = Some(v);
                    self.witness_count = 1;
                    self.witnesses = vec![p.form];
                }
            }
            if matches!(case.kind, Kind::Conj3 | Kind::Thm2Ell4) {
                let member = case.family.binary_search(&p.form).is_ok();
                if member {
                    self.family_seen.insert(p.form);
                }
                if v == case.bound {
                    self.eq_count += 1;
                    self.eq_in_family += member as u64;
                }
            }
        }
        if self.cex.as_ref().is_none_or(|(f, _)| p.form < *f) {
            if let Some(clause) = violation(case, p) {
                self.cex = Some((p.form, clause));
            }
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.size += other.size;
        match (self.min, other.min) {
            (_, None) => {}
            (None, Some(_)) => {
                self.min = other.min;
                self.witnesses = other.witnesses;
                self.witness_count = other.witness_count;
            }
            (Some(a), Some(b)) if b < a => {
                self.min = other.min;
                self.witnesses = other.witnesses;
                self.witness_count = other.witness_count;
            }
            (Some(a), Some(b)) if a == b => {
                self.witness_count += other.witness_count;
                for w in other.witnesses {
                    push_witness(&mut self.witnesses, w);
                }
            }
            _ => {}
        }
        self.cex = match (self.cex, other.cex) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        self.eq_count += other.eq_count;
        self.eq_in_family += other.eq_in_family;
        self.family_seen.extend(other.family_seen);
        self
    }
}

fn push_witness(list: &mut Vec<CanonicalForm>, f: CanonicalForm) {
    let pos = list.binary_search(&f).unwrap_or_else(|e| e);
    if pos < WITNESS_LIMIT && list.get(pos) != Some(&f) {
        list.insert(pos, f);
        list.truncate(WITNESS_LIMIT);
    }
}

/// Whether a conjecture case is inside the band settled by proven statements.
fn covered_by_theorems(case: &Case) -> bool {
    let n = case.p.n;
    match (case.kind, case.p.d, case.p.ell) {
        (Kind::Conj1, Some(d), Some(l)) => {
            d == n - 1 || (d == n - 2 && n >= 7 && (4..=n - 2).contains(&l)) || (d == n - 3 && n >= 9 && l == n - 2)
        }
        _ => false,
    }
}

fn finish(case: &Case, acc: Acc) -> CaseReport {
    let n = case.p.n;
    let mut notes = Vec::new();
    let mut counterexample = acc.cex.map(|(form, clause)| Counterexample {
        clause,
        tournament: Some(to_trn(&form.tournament())),
    });
    if counterexample.is_none() && case.kind == Kind::Thm2Ell4 {
        let want = (n - 4) as u64;
        let clause = if case.family.len() as u64 != want {
            Some(format!("H_{{n-2,n}} has {} classes, expected n-4 = {want}", case.family.len()))
        } else if acc.eq_count != want {
            Some(format!("{} classes attain c_4 = n-2, expected n-4 = {want}", acc.eq_count))
        } else {
            None
        };
        counterexample = clause.map(|clause| Counterexample {
            clause,
            tournament: None,
        });
    }
    if case.kind == Kind::Conj3 {
        let family_in_universe = acc.family_seen.len() as u64;
        let eq_family = acc.eq_in_family;
        let holds = acc.eq_count == eq_family && eq_family == family_in_universe;
        notes.push(format!(
            "equality clause (informational): {} classes attain the bound, {} of them satisfy the structural conditions, {} classes satisfy the conditions; characterization {} at n={n}",
            acc.eq_count,
            eq_family,
            family_in_universe,
            if holds { "holds" } else { "fails" }
        ));
    }
    let outcome = if counterexample.is_some() {
        if covered_by_theorems(case) {
            notes.push("refuted inside a proven band: this indicates an implementation defect".to_string());
        }
        Outcome::Refuted
    } else if acc.size == 0 {
        notes.push("no class satisfies the hypothesis".to_string());
        Outcome::VerifiedVacuous
    } else {
        Outcome::Verified
    };
    let has_metric = acc.min.is_some();
    CaseReport {
        params: case.p,
        universe_size: acc.size,
        outcome,
        extremal_value: acc.min,
        extremal_witnesses: acc.witnesses.iter().map(|f| f.bit_string()).collect(),
        extremal_witness_count: has_metric.then_some(acc.witness_count),
        counterexample,
        notes,
    }
}

/// Runs every case at order `n` in a single pass over the classes.
fn scan(n: usize, cases: &[Case]) -> Result<(u64, Vec<CaseReport>)> {
    let (visited, accs) = fold_classes(
        n,
        || (0u64, vec![Acc::default(); cases.len()]),
        |(count, mut accs), class| {
            let p = Profile::new(&class.tournament, class.form);
            for (acc, case) in accs.iter_mut().zip(cases) {
                acc.add(case, &p);
            }
            (count + 1, accs)
        },
        |(c1, a1), (c2, a2)| (c1 + c2, a1.into_iter().zip(a2).map(|(x, y)| x.merge(y)).collect()),
    )?;
    Ok((visited, cases.iter().zip(accs).map(|(c, a)| finish(c, a)).collect()))
}

// ---------------------------------------------------------------------------
// The constructed-family census.

fn census_violation(n: usize, h: &[usize], t: &Tournament, is_extremal: bool) -> Option<String> {
    let c = cycle_counts(t).expect(GUARDED);
    let (h2, h3) = (h[1], h[2]);
    if c.c(n - 1) != 4 {
        Some(format!("c_{{n-1}} = {} != 4", c.c(n - 1)))
    } else if c.c(n) != 1 {
        Some(format!("c_n = {} != 1", c.c(n)))
    } else if h3 <= h2 && c.c(3) != (n - 2) as u64 {
        Some(format!("h_3 <= h_2 but c_3 = {} != n-2", c.c(3)))
    } else if h3 < h2 && c.c(4) != (n - 1) as u64 {
        Some(format!("h_3 <= h_2-1 but c_4 = {} != n-1", c.c(4)))
    } else if is_extremal && n >= CENSUS_C5_MIN_ORDER && c.c(5) != (n - 2) as u64 {
        Some(format!("c_5(T_{{n-3,n}}) = {} != n-2", c.c(5)))
    } else {
        None
    }
}

fn census(n: usize) -> Result<CaseReport> {
    let members = enumerate_h_family(n - 3, n)?;
    let extremal = form_of(&build_extremal(n - 3, n)?);
    let mut found: Vec<(CanonicalForm, String)> = Vec::new();
    for m in &members {
        let form = form_of(&m.tournament);
        if let Some(clause) = census_violation(n, &m.params.h, &m.tournament, form == extremal) {
            found.push((form, clause));
        }
    }
    found.sort();
    let want = h_family_size_nminus3(n)?;
    let counterexample = match found.into_iter().next() {
        Some((form, clause)) => Some(Counterexample {
            clause,
            tournament: Some(to_trn(&form.tournament())),
        }),
        None if members.len() as u64 != want => Some(Counterexample {
            clause: format!("H_{{n-3,n}} has {} classes, expected (n^2-7n+8)/2 = {want}", members.len()),
            tournament: None,
        }),
        None => None,
    };
    Ok(CaseReport {
        params: CheckParams::new(n),
        universe_size: members.len() as u64,
        outcome: if counterexample.is_some() {
            Outcome::Refuted
        } else {
            Outcome::Verified
        },
        extremal_value: None,
        extremal_witnesses: Vec::new(),
        extremal_witness_count: None,
        counterexample,
        notes: Vec::new(),
    })
}

// ---------------------------------------------------------------------------
// Public entry points.

fn validate(info: &CheckInfo, params: &CheckParams) -> Result<()> {
    if params.n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if params.n > info.max_n {
        return Err(Error::TooLarge {
            what: if info.kind == Kind::HCensus {
                "family census"
            } else {
                "exhaustive check"
            },
            n: params.n,
            max: info.max_n,
        });
    }
    for (name, given) in [("d", params.d), ("ell", params.ell), ("h", params.h)] {
        if given.is_some() && !info.axes.contains(&name) {
            return Err(Error::InvalidParameters(format!(
                "check `{}` takes no parameter `{name}`",
                info.id
            )));
        }
    }
    Ok(())
}

fn vacuous(info: &CheckInfo, params: CheckParams) -> CheckReport {
    let note = if params.n < info.min_n {
        format!("hypothesis requires n >= {}", info.min_n)
    } else {
        "no parameter values in the hypothesis range".to_string()
    };
    CheckReport {
        check_id: info.id,
        params,
        universe_size: 0,
        outcome: Outcome::VerifiedVacuous,
        counterexample: None,
        cases: Vec::new(),
        notes: vec![note],
    }
}

fn assemble(info: &CheckInfo, params: CheckParams, visited: u64, cases: Vec<CaseReport>) -> CheckReport {
    let counterexample = cases.iter().find_map(|c| c.counterexample.clone());
    let outcome = if counterexample.is_some() {
        Outcome::Refuted
    } else if cases.iter().all(|c| c.outcome == Outcome::VerifiedVacuous) {
        Outcome::VerifiedVacuous
    } else {
        Outcome::Verified
    };
    CheckReport {
        check_id: info.id,
        params,
        universe_size: visited,
        outcome,
        counterexample,
        cases,
        notes: Vec::new(),
    }
}

/// Runs one registry entry. Unspecified axes are expanded over the whole
/// hypothesis range; specified axes select a single value.
pub fn check(id: &str, params: &CheckParams) -> Result<CheckReport> {
    let info = lookup(id)?;
    validate(info, params)?;
    let selected: Vec<CheckParams> = expand(info, params.n)
        .into_iter()
        .filter(|c| params.selects(c))
        .collect();
    if selected.is_empty() {
        return Ok(vacuous(info, *params));
    }
    if info.kind == Kind::HCensus {
        let report = census(params.n)?;
        let size = report.universe_size;
        return Ok(assemble(info, *params, size, vec![report]));
    }
    let cases = selected
        .into_iter()
        .map(|p| build_case(info.kind, p))
        .collect::<Result<Vec<_>>>()?;
    let (visited, reports) = scan(params.n, &cases)?;
    Ok(assemble(info, *params, visited, reports))
}

/// Every registry entry at every order `1..=n_max`, one report per
/// (check, order), ordered by order and then by registry position. Entries
/// whose hypothesis excludes an order are reported as vacuous there.
pub fn check_all(n_max: usize) -> Result<Vec<CheckReport>> {
    if n_max == 0 || n_max > MAX_ENUM_ORDER {
        return Err(Error::OrderOutOfRange {
            n: n_max,
            min: 1,
            max: MAX_ENUM_ORDER,
        });
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        let mut cases = Vec::new();
        let mut owners = Vec::new();
        for (idx, info) in REGISTRY.iter().enumerate() {
            if info.kind == Kind::HCensus {
                continue;
            }
            for p in expand(info, n) {
                cases.push(build_case(info.kind, p)?);
                owners.push(idx);
            }
        }
        let (visited, mut reports) = if cases.is_empty() {
            (0, Vec::new())
        } else {
            scan(n, &cases)?
        };
        let mut grouped: Vec<Vec<CaseReport>> = vec![Vec::new(); REGISTRY.len()];
        for (owner, report) in owners.iter().zip(reports.drain(..)) {
            grouped[*owner].push(report);
        }
        for (idx, info) in REGISTRY.iter().enumerate() {
            let params = CheckParams::new(n);
            if info.kind == Kind::HCensus {
                if expand(info, n).is_empty() {
                    out.push(vacuous(info, params));
                } else {
                    let report = census(n)?;
                    let size = report.universe_size;
                    out.push(assemble(info, params, size, vec![report]));
                }
            } else if grouped[idx].is_empty() {
                out.push(vacuous(info, params));
            } else {
                let cases = std::mem::take(&mut grouped[idx]);
                out.push(assemble(info, params, visited, cases));
            }
        }
    }
    Ok(out)
}

/// Re-evaluates one fully specified case on a single tournament and returns
/// the violated clause, or `None` when the tournament is outside the
/// hypothesis or satisfies the clause.
pub fn replay(id: &str, params: &CheckParams, t: &Tournament) -> Result<Option<String>> {
    let info = lookup(id)?;
    validate(info, params)?;
    if t.order() != params.n {
        return Err(Error::InvalidParameters(format!(
            "tournament has order {}, parameters say n={}",
            t.order(),
            params.n
        )));
    }
    let selected: Vec<CheckParams> = expand(info, params.n)
        .into_iter()
        .filter(|c| params.selects(c))
        .collect();
    let case_params = match selected.as_slice() {
        [] => return Ok(None),
        [one] => *one,
        _ => {
            return Err(Error::InvalidParameters(format!(
                "replay of `{id}` needs every parameter of {:?}",
                info.axes
            )))
        }
    };
    let canon = canonical_tournament(t)?;
    let form = canonical_form(&canon)?;
    if info.kind == Kind::HCensus {
        let n = params.n;
        let extremal = form_of(&build_extremal(n - 3, n)?);
        for m in enumerate_h_family(n - 3, n)? {
            if form_of(&m.tournament) == form {
                return Ok(census_violation(n, &m.params.h, &m.tournament, form == extremal));
            }
        }
        return Ok(None);
    }
    let case = build_case(info.kind, case_params)?;
    let p = Profile::new(&canon, form);
    Ok(if in_universe(&case, &p) {
        violation(&case, &p)
    } else {
        None
    })
}

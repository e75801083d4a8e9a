//! Checks of the classification results for groups with `m(G) - d(G) ≤ 1`.
//!
//! Each verifier first decides whether the hypotheses hold (`applicable`)
//! and then tests the predicted structure. An applicable group whose
//! structure does not match is a red flag (`ok == false`).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::genset::{self, Engine};
use crate::group::{big_omega, prime_factors, PermGroup};
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::structure::{minimal_normal_subgroups_table, modules_isomorphic, section_module, Analysis};
use crate::table::{GroupTable, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "MD_EQUAL")]
    MdEqual,
    #[serde(rename = "NONSOLUBLE_MONOLITHIC")]
    NonsolubleMonolithic,
    #[serde(rename = "SOLUBLE_CASES")]
    SolubleCases,
}

impl Theorem {
    pub fn tag(self) -> &'static str {
        match self {
            Theorem::MdEqual => "MD_EQUAL",
            Theorem::NonsolubleMonolithic => "NONSOLUBLE_MONOLITHIC",
            Theorem::SolubleCases => "SOLUBLE_CASES",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: Theorem,
    /// The hypotheses hold.
    pub applicable: bool,
    /// Matched branch: the bullet for `MD_EQUAL`, the case for
    /// `SOLUBLE_CASES` (cases 2, 1, 3 in that order of precedence).
    pub case: Option<u8>,
    /// Every branch whose structure matched.
    pub cases: Vec<u8>,
    /// False only for an applicable group with mismatching structure.
    pub ok: bool,
    pub reason: Option<String>,
    pub evidence: BTreeMap<String, Value>,
}

impl TheoremVerdict {
    fn new(theorem: Theorem) -> Self {
        TheoremVerdict {
            theorem,
            applicable: false,
            case: None,
            cases: Vec::new(),
            ok: true,
            reason: None,
            evidence: BTreeMap::new(),
        }
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    fn note(&mut self, key: &str, value: Value) {
        self.evidence.insert(key.to_string(), value);
    }

    pub fn red_flag(&self) -> bool {
        self.applicable && !self.ok
    }
}

/// Frattini triviality, solubility, `d` and `m` of one group.
struct Hypotheses {
    frattini_trivial: bool,
    soluble: bool,
    d: usize,
    m: usize,
}

impl Hypotheses {
    fn of(a: &Analysis, d: usize, m: usize) -> Result<Self> {
        Ok(Hypotheses {
            frattini_trivial: a.frattini()?.order() == 1,
            soluble: a.table().is_soluble(),
            d,
            m,
        })
    }

    fn gap_reason(&self, want: usize) -> Option<String> {
        if self.d == 0 {
            Some("group is trivial".into())
        } else if !self.frattini_trivial {
            Some("Frattini subgroup is not trivial".into())
        } else if self.m != self.d + want {
            Some(format!("m - d = {}", self.m as i64 - self.d as i64))
        } else {
            None
        }
    }
}

fn invariants(g: &PermGroup, limits: &Limits) -> Result<(Analysis, usize, usize)> {
    let a = Analysis::new(g, limits)?;
    let d = genset::d(g, limits)?;
    let m = genset::m(g, limits)?.len();
    Ok((a, d, m))
}

pub fn verify_md_equal(g: &PermGroup, limits: &Limits) -> Result<TheoremVerdict> {
    let (a, d, m) = invariants(g, limits)?;
    md_equal_in(&a, d, m)
}

pub fn verify_nonsoluble(g: &PermGroup, limits: &Limits) -> Result<TheoremVerdict> {
    let (a, d, m) = invariants(g, limits)?;
    nonsoluble_in(&a, d, m)
}

pub fn verify_soluble_cases(g: &PermGroup, limits: &Limits) -> Result<TheoremVerdict> {
    let (a, d, m) = invariants(g, limits)?;
    soluble_in(&a, d, m)
}

/// All three verdicts for known `d` and `m`.
pub fn verify_all(a: &Analysis, d: usize, m: usize) -> Result<Vec<TheoremVerdict>> {
    Ok(vec![md_equal_in(a, d, m)?, nonsoluble_in(a, d, m)?, soluble_in(a, d, m)?])
}

pub fn md_equal_in(a: &Analysis, d: usize, m: usize) -> Result<TheoremVerdict> {
    let v = TheoremVerdict::new(Theorem::MdEqual);
    let h = Hypotheses::of(a, d, m)?;
    if let Some(r) = h.gap_reason(0) {
        return Ok(v.skip(r));
    }
    let mut v = v;
    v.applicable = true;
    let t = a.table();
    v.note("soluble", json!(h.soluble));
    if !h.soluble {
        v.ok = false;
        v.reason = Some("group is not soluble".into());
        return Ok(v);
    }
    if let Some(p) = elementary_abelian_prime(t, &t.whole()) {
        v.cases.push(1);
        v.note("prime", json!(p));
        v.note("rank", json!(big_omega(t.order() as u128)));
    } else if let Some(ev) = md_bullet_two(a, m)? {
        v.cases.push(2);
        v.evidence.extend(ev);
    }
    v.case = v.cases.first().copied();
    v.ok = v.case.is_some();
    if !v.ok {
        v.reason = Some("neither an elementary abelian group nor P⋊Q of the predicted shape".into());
    }
    Ok(v)
}

/// `G = P ⋊ Q` with `P` the socle, a sum of `m - 1` equivalent non-trivial
/// modules, and `Q` a cyclic `q`-group acting faithfully.
fn md_bullet_two(a: &Analysis, m: usize) -> Result<Option<BTreeMap<String, Value>>> {
    let t = a.table();
    let soc = a.socle();
    let Some((p, dim, copies)) = homogeneous(t, &soc) else {
        return Ok(None);
    };
    let (q, _) = t.quotient(&soc);
    let Some(qp) = cyclic_prime_power(&q) else {
        return Ok(None);
    };
    if qp == p || q.order() == 1 || copies + 1 != m {
        return Ok(None);
    }
    let module = section_module(t, &minimal_normal_subgroups_table(t)[0], &t.trivial());
    if module.matrices.iter().all(|x| x.is_identity()) {
        return Ok(None);
    }
    let faithful = t.centralizer_of_section(&soc, &t.trivial()).bits == soc.bits;
    if !faithful {
        return Ok(None);
    }
    let mut ev = BTreeMap::new();
    ev.insert("p".into(), json!(p));
    ev.insert("q".into(), json!(qp));
    ev.insert("P_order".into(), json!(soc.order()));
    ev.insert("Q_order".into(), json!(q.order()));
    ev.insert("module_dim".into(), json!(dim));
    ev.insert("copies".into(), json!(copies));
    Ok(Some(ev))
}

pub fn nonsoluble_in(a: &Analysis, d: usize, m: usize) -> Result<TheoremVerdict> {
    let v = TheoremVerdict::new(Theorem::NonsolubleMonolithic);
    let h = Hypotheses::of(a, d, m)?;
    if let Some(r) = h.gap_reason(1) {
        return Ok(v.skip(r));
    }
    if h.soluble {
        return Ok(v.skip("group is soluble"));
    }
    let mut v = v;
    v.applicable = true;
    let t = a.table();
    let soc = a.socle();
    let monolithic = a.is_monolithic_primitive()?;
    let (q, _) = t.quotient(&soc);
    let top = cyclic_prime_power(&q);
    v.note("d", json!(d));
    v.note("monolithic_primitive", json!(monolithic));
    v.note("socle_order", json!(soc.order()));
    v.note("top_order", json!(q.order()));
    v.note("top_cyclic_prime_power", json!(top.is_some()));
    v.ok = d == 2 && monolithic && top.is_some();
    if !v.ok {
        v.reason = Some("predicted structure not found".into());
    }
    Ok(v)
}

pub fn soluble_in(a: &Analysis, d: usize, m: usize) -> Result<TheoremVerdict> {
    let v = TheoremVerdict::new(Theorem::SolubleCases);
    let h = Hypotheses::of(a, d, m)?;
    if !h.soluble {
        return Ok(v.skip("group is not soluble"));
    }
    if m != d + 1 {
        return Ok(v.skip(format!("m - d = {}", m as i64 - d as i64)));
    }
    let mut v = v;
    let matches = soluble_case_matches(a, d)?;
    for (case, ev) in &matches {
        v.cases.push(*case);
        v.note(&format!("case{case}"), Value::Object(ev.clone().into_iter().collect()));
    }
    if !h.frattini_trivial {
        return Ok(v.skip("Frattini subgroup is not trivial"));
    }
    v.applicable = true;
    v.case = [2, 1, 3].into_iter().find(|c| v.cases.contains(c));
    v.ok = v.case.is_some();
    if !v.ok {
        v.reason = Some("no case of the classification matches".into());
    }
    Ok(v)
}

/// Evaluates the three structural cases for a soluble group with the given
/// `d`, without checking the Frattini hypothesis.
pub fn soluble_case_matches(a: &Analysis, d: usize) -> Result<Vec<(u8, BTreeMap<String, Value>)>> {
    let t = a.table();
    let limits = a.limits();
    let lattice = a.lattice()?;
    let mut out = Vec::new();
    if let Some(ev) = case_one(t, lattice, d, limits)? {
        out.push((1, ev));
    }
    if let Some(ev) = case_two(t, lattice, &a.socle(), d, limits)? {
        out.push((2, ev));
    }
    if let Some(ev) = case_three(t, d, limits)? {
        out.push((3, ev));
    }
    Ok(out)
}

/// `V ⋊ P`, `P` a non-cyclic `p`-group, `V` irreducible of order prime to `p`.
fn case_one(
    t: &GroupTable,
    lattice: &SubgroupLattice,
    d: usize,
    limits: &Limits,
) -> Result<Option<BTreeMap<String, Value>>> {
    for v in minimal_normal_subgroups_table(t) {
        let Some(r) = elementary_abelian_prime(t, &v) else { continue };
        let (q, _) = t.quotient(&v);
        let pf = prime_factors(q.order() as u128);
        if pf.len() != 1 || pf[0].0 as u32 == r || cyclic_prime_power(&q).is_some() {
            continue;
        }
        if complement(lattice, &v, t.order()).is_none() {
            continue;
        }
        let dp = Engine::new(&q, limits).d(limits.seed)?;
        if dp != d {
            continue;
        }
        let mut ev = BTreeMap::new();
        ev.insert("V_order".into(), json!(v.order()));
        ev.insert("P_order".into(), json!(q.order()));
        ev.insert("p".into(), json!(pf[0].0));
        ev.insert("d_P".into(), json!(dp));
        return Ok(Some(ev));
    }
    Ok(None)
}

/// `V^t ⋊ H` with `m(H) = 2` and `t = 1` or `H` abelian, `d = t + 1`.
fn case_two(
    t: &GroupTable,
    lattice: &SubgroupLattice,
    soc: &Subgroup,
    d: usize,
    limits: &Limits,
) -> Result<Option<BTreeMap<String, Value>>> {
    // Prefer a faithful action, then an abelian complement.
    let mut best: Option<((bool, bool), BTreeMap<String, Value>)> = None;
    for n in &lattice.subgroups {
        if n.order() == 1 || !n.is_subgroup_of(soc) || !t.is_normal(n) {
            continue;
        }
        let Some((p, dim, copies)) = homogeneous(t, n) else { continue };
        if d != copies + 1 {
            continue;
        }
        let Some(h) = complement(lattice, n, t.order()) else { continue };
        let (q, _) = t.quotient(n);
        let abelian = q.is_abelian_subgroup(&q.whole());
        if copies != 1 && !abelian {
            continue;
        }
        let mh = Engine::new(&q, limits)
            .max_independent(big_omega(q.order() as u128) as usize)?
            .len();
        if mh != 2 {
            continue;
        }
        let faithful = t.centralizer_of_section(n, &t.trivial()).bits == n.bits;
        let mut ev = BTreeMap::new();
        ev.insert("p".into(), json!(p));
        ev.insert("V_dim".into(), json!(dim));
        ev.insert("t".into(), json!(copies));
        ev.insert("H_order".into(), json!(h.order()));
        ev.insert("H_abelian".into(), json!(abelian));
        ev.insert("m_H".into(), json!(mh));
        ev.insert("faithful".into(), json!(faithful));
        let rank = (faithful, abelian);
        if best.as_ref().is_none_or(|(r, _)| rank > *r) {
            best = Some((rank, ev));
        }
    }
    Ok(best.map(|(_, ev)| ev))
}

/// `1 < N1 ≤ N2` with `N1` abelian minimal normal, `N2/N1 ≤ Frat(G/N1)` and
/// `G/N2 ≅ V^t ⋊ H`, `H` non-trivial cyclic of prime power order, `d = t + 1`.
fn case_three(t: &GroupTable, d: usize, limits: &Limits) -> Result<Option<BTreeMap<String, Value>>> {
    for n1 in minimal_normal_subgroups_table(t) {
        if !t.is_abelian_subgroup(&n1) {
            continue;
        }
        let (q1, _) = t.quotient(&n1);
        let l1 = SubgroupLattice::build(&q1, limits.lattice_cap)?;
        let frat = l1.frattini(&q1);
        for k in &l1.subgroups {
            if !k.is_subgroup_of(&frat) || !q1.is_normal(k) {
                continue;
            }
            let (q2, _) = q1.quotient(k);
            let l2 = SubgroupLattice::build(&q2, limits.lattice_cap)?;
            for n in &l2.subgroups {
                if !q2.is_normal(n) {
                    continue;
                }
                let copies = if n.order() == 1 {
                    0
                } else {
                    match homogeneous(&q2, n) {
                        Some((_, _, c)) => c,
                        None => continue,
                    }
                };
                if d != copies + 1 {
                    continue;
                }
                let (h, _) = q2.quotient(n);
                if h.order() == 1 || cyclic_prime_power(&h).is_none() {
                    continue;
                }
                if complement(&l2, n, q2.order()).is_none() {
                    continue;
                }
                let mut ev = BTreeMap::new();
                ev.insert("N1_order".into(), json!(n1.order()));
                ev.insert("N2_order".into(), json!(n1.order() * k.order()));
                ev.insert("V_power_order".into(), json!(n.order()));
                ev.insert("t".into(), json!(copies));
                ev.insert("H_order".into(), json!(h.order()));
                return Ok(Some(ev));
            }
        }
    }
    Ok(None)
}

/// The prime `p` when `h` is a non-trivial elementary abelian `p`-group.
fn elementary_abelian_prime(t: &GroupTable, h: &Subgroup) -> Option<u32> {
    let pf = prime_factors(h.order() as u128);
    if pf.len() != 1 || !t.is_abelian_subgroup(h) {
        return None;
    }
    let p = pf[0].0 as u32;
    h.elements[1..]
        .iter()
        .all(|&x| t.element_order(x) == p)
        .then_some(p)
}

/// The prime when the table group is cyclic of prime power order; the
/// trivial group counts, with prime 1.
fn cyclic_prime_power(q: &GroupTable) -> Option<u32> {
    let n = q.order();
    if n == 1 {
        return Some(1);
    }
    let pf = prime_factors(n as u128);
    let cyclic = (0..n as u32).any(|x| q.element_order(x) as usize == n);
    (pf.len() == 1 && cyclic).then_some(pf[0].0 as u32)
}

/// `(p, dim, copies)` when the normal subgroup `n` is a product of pairwise
/// isomorphic abelian minimal normal subgroups.
fn homogeneous(t: &GroupTable, n: &Subgroup) -> Option<(u32, usize, usize)> {
    if n.order() == 1 {
        return None;
    }
    let mins: Vec<Subgroup> = minimal_normal_subgroups_table(t)
        .into_iter()
        .filter(|x| x.is_subgroup_of(n))
        .collect();
    if mins.iter().any(|x| !t.is_abelian_subgroup(x)) {
        return None;
    }
    let mut product = t.trivial();
    for x in &mins {
        product = t.product(&product, x);
    }
    if product.bits != n.bits {
        return None;
    }
    let trivial = t.trivial();
    let first = section_module(t, &mins[0], &trivial);
    if !mins[1..]
        .iter()
        .all(|x| modules_isomorphic(&first, &section_module(t, x, &trivial)))
    {
        return None;
    }
    let rank = prime_factors(n.order() as u128)[0].1 as usize;
    Some((first.prime, first.dim, rank / first.dim))
}

fn complement<'l>(lattice: &'l SubgroupLattice, n: &Subgroup, order: usize) -> Option<&'l Subgroup> {
    lattice.subgroups.iter().find(|u| {
        u.order() * n.order() == order && {
            let mut meet = u.bits.clone();
            meet.intersect_with(&n.bits);
            meet.count_ones(..) == 1
        }
    })
}

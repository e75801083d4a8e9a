//! Normal structure: minimal normal subgroups, socle, Frattini subgroup,
//! chief series, complements and equivalence of abelian chief factors.

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::{self, Matrix};
use crate::group::{self, prime_factors, PermGroup};
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::{element_key, Permutation};
use crate::table::{GroupTable, Subgroup};

/// Module data of an elementary abelian chief factor `X/Y ≅ GF(p)^dim`.
#[derive(Debug, Clone, Serialize)]
pub struct AbelianData {
    pub prime: u32,
    pub dim: usize,
    /// Action of each group generator on row vectors, `v ↦ v·M`.
    pub matrices: Vec<Matrix>,
    /// Elements of `X` (table indices) whose cosets form the basis.
    pub basis: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub enum FactorKind {
    Abelian(AbelianData),
    NonAbelian { simple_order: u128, copies: u32 },
}

/// A chief factor `X/Y` of a group given by its Cayley table.
#[derive(Debug, Clone)]
pub struct ChiefFactor {
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub lower_group: PermGroup,
    pub upper_group: PermGroup,
    pub kind: FactorKind,
    /// `X/Y ≤ Frat(G/Y)`.
    pub frattini: bool,
    /// `C_G(X/Y)`.
    pub centralizer: Subgroup,
    pub centralizer_group: PermGroup,
}

impl ChiefFactor {
    pub fn order(&self) -> usize {
        self.upper.order() / self.lower.order()
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, FactorKind::Abelian(_))
    }

    pub fn abelian(&self) -> Option<&AbelianData> {
        match &self.kind {
            FactorKind::Abelian(a) => Some(a),
            FactorKind::NonAbelian { .. } => None,
        }
    }

    pub fn prime(&self) -> Option<u32> {
        self.abelian().map(|a| a.prime)
    }

    pub fn dim(&self) -> Option<usize> {
        self.abelian().map(|a| a.dim)
    }

    /// True when the group acts trivially on the factor.
    pub fn is_central(&self) -> bool {
        self.abelian()
            .is_some_and(|a| a.matrices.iter().all(Matrix::is_identity))
    }
}

/// Which minimal normal subgroup to take at each step of a chief series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Lexicographically least pulled-back element list.
    #[default]
    Least,
    Greatest,
}

/// Chief series from the bottom up.
#[derive(Debug, Clone)]
pub struct ChiefSeries {
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    /// Builds a chief series of the group behind `t` by repeatedly pulling
    /// back a minimal normal subgroup of the current quotient.
    pub fn build(t: &GroupTable, lattice_cap: usize, tie: TieBreak) -> Result<Self> {
        if !t.has_perms() {
            return Err(Error::Unsupported(
                "chief series needs a table built from permutations".into(),
            ));
        }
        let mut factors = Vec::new();
        let mut y = t.trivial();
        while y.order() < t.order() {
            let (q, proj) = t.quotient(&y);
            let mut candidates: Vec<(Subgroup, Subgroup)> = minimal_normal_subgroups_table(&q)
                .into_iter()
                .map(|m| (preimage(t, &proj, &m), m))
                .collect();
            candidates.sort_by(|a, b| a.0.elements.cmp(&b.0.elements));
            let (x, m) = match tie {
                TieBreak::Least => candidates.swap_remove(0),
                TieBreak::Greatest => candidates.pop().expect("nontrivial quotient"),
            };
            let abelian = q.is_abelian_subgroup(&m);
            let kind = if abelian {
                FactorKind::Abelian(abelian_data(t, &q, &proj, &x, &m))
            } else {
                let (mt, _) = q.restrict(&m);
                let simple = minimal_normal_subgroups_table(&mt)[0].order() as u128;
                let copies = (m.order() as f64).log(simple as f64).round() as u32;
                FactorKind::NonAbelian {
                    simple_order: simple,
                    copies,
                }
            };
            // Frattini subgroups are nilpotent, so only abelian factors can lie inside.
            let frattini = if abelian {
                let lattice = SubgroupLattice::build(&q, lattice_cap)?;
                m.is_subgroup_of(&lattice.frattini(&q))
            } else {
                false
            };
            let centralizer = t.centralizer_of_section(&x, &y);
            factors.push(ChiefFactor {
                lower_group: t.to_perm_group(&y).expect("table has permutations"),
                upper_group: t.to_perm_group(&x).expect("table has permutations"),
                lower: y,
                upper: x.clone(),
                kind,
                frattini,
                centralizer_group: t.to_perm_group(&centralizer).expect("table has permutations"),
                centralizer,
            });
            y = x;
        }
        Ok(ChiefSeries { factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of non-Frattini factors.
    pub fn a(&self) -> usize {
        self.factors.iter().filter(|f| !f.frattini).count()
    }

    /// Number of non-abelian factors.
    pub fn b(&self) -> usize {
        self.factors.iter().filter(|f| !f.is_abelian()).count()
    }

    /// Non-Frattini factors `G`-equivalent to abelian factor `i`.
    pub fn delta(&self, i: usize) -> Result<usize> {
        let f = &self.factors[i];
        let mut count = 0;
        for g in self.factors.iter().filter(|g| !g.frattini && g.is_abelian()) {
            if gequivalent_abelian(f, g)? {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Classes of `G`-equivalent non-Frattini abelian factors, as factor
    /// indices in series order.
    pub fn abelian_classes(&self) -> Result<Vec<Vec<usize>>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            if f.frattini || !f.is_abelian() {
                continue;
            }
            let mut placed = false;
            for class in classes.iter_mut() {
                if gequivalent_abelian(&self.factors[class[0]], f)? {
                    class.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![i]);
            }
        }
        Ok(classes)
    }
}

fn preimage(t: &GroupTable, proj: &[u32], m: &Subgroup) -> Subgroup {
    let mut bits = t.empty_bits();
    for (g, &c) in proj.iter().enumerate() {
        if m.contains(c) {
            bits.insert(g);
        }
    }
    t.subgroup_from_bits(&bits)
}

fn abelian_data(
    t: &GroupTable,
    q: &GroupTable,
    proj: &[u32],
    x: &Subgroup,
    m: &Subgroup,
) -> AbelianData {
    let prime = prime_factors(m.order() as u128)[0].0 as u32;
    let mut basis = Vec::new();
    let mut qbasis = Vec::new();
    let mut span = q.trivial();
    for &g in &x.elements {
        let c = proj[g as usize];
        if !span.contains(c) {
            basis.push(g);
            qbasis.push(c);
            span = q.join(&span, c);
        }
    }
    let dim = qbasis.len();
    let mut coords: Vec<Option<Vec<u32>>> = vec![None; q.order()];
    coords[0] = Some(vec![0; dim]);
    for v in gfp::nonzero_combinations(prime, dim) {
        let mut e = 0;
        for (&b, &c) in qbasis.iter().zip(&v) {
            e = q.mul(e, q.pow(b, c));
        }
        coords[e as usize] = Some(v);
    }
    let matrices = t
        .gens()
        .iter()
        .map(|&g| {
            let gq = proj[g as usize];
            let rows: Vec<Vec<u32>> = qbasis
                .iter()
                .map(|&b| coords[q.conj(b, gq) as usize].clone().expect("m is normal"))
                .collect();
            Matrix::from_rows(prime, &rows)
        })
        .collect();
    AbelianData {
        prime,
        dim,
        matrices,
        basis,
    }
}

/// Module data of the abelian section `X/Y` of a table group, `Y ≤ X` both
/// normal and `X/Y` elementary abelian.
pub fn section_module(t: &GroupTable, x: &Subgroup, y: &Subgroup) -> AbelianData {
    let (q, proj) = t.quotient(y);
    let image: Vec<u32> = x.gens.iter().map(|&g| proj[g as usize]).collect();
    let m = q.closure(&image);
    abelian_data(t, &q, &proj, x, &m)
}

/// Whether two modules for the same generators are isomorphic.
pub fn modules_isomorphic(a: &AbelianData, b: &AbelianData) -> bool {
    if a.prime != b.prime || a.dim != b.dim {
        return false;
    }
    let space = gfp::intertwiners(a.prime, &a.matrices, &b.matrices);
    gfp::find_invertible(a.prime, &space, 1 << 20).is_some()
}

/// Minimal normal subgroups of a table group, ordered by element list.
pub fn minimal_normal_subgroups_table(t: &GroupTable) -> Vec<Subgroup> {
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    let mut cands: Vec<Subgroup> = Vec::new();
    for class in t.conjugacy_classes().iter().skip(1) {
        let n = t.normal_closure(&class[..1]);
        if seen.insert(n.bits.clone(), ()).is_none() {
            cands.push(n);
        }
    }
    let mut out: Vec<Subgroup> = cands
        .iter()
        .filter(|n| {
            !cands
                .iter()
                .any(|k| k.order() < n.order() && k.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    out
}

/// Product of all minimal normal subgroups.
pub fn socle_table(t: &GroupTable) -> Subgroup {
    let mut s = t.trivial();
    for n in minimal_normal_subgroups_table(t) {
        s = t.product(&s, &n);
    }
    s
}

/// Whether `X/Y` has a complement in `G/Y`.
pub fn has_complement_table(
    t: &GroupTable,
    x: &Subgroup,
    y: &Subgroup,
    lattice_cap: usize,
) -> Result<bool> {
    let (q, proj) = t.quotient(y);
    let image: Vec<u32> = x.gens.iter().map(|&g| proj[g as usize]).collect();
    let a = q.closure(&image);
    let lattice = SubgroupLattice::build(&q, lattice_cap)?;
    Ok(lattice.subgroups.iter().any(|u| {
        u.order() * a.order() == q.order() && {
            let mut meet = u.bits.clone();
            meet.intersect_with(&a.bits);
            meet.count_ones(..) == 1
        }
    }))
}

/// `G`-isomorphism of two abelian chief factors of the same group.
pub fn gequivalent_abelian(f1: &ChiefFactor, f2: &ChiefFactor) -> Result<bool> {
    let (a, b) = match (f1.abelian(), f2.abelian()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::InvalidArgument(
                "G-equivalence test needs abelian factors".into(),
            ))
        }
    };
    if a.prime != b.prime || a.dim != b.dim || f1.centralizer.bits != f2.centralizer.bits {
        return Ok(false);
    }
    let space = gfp::intertwiners(a.prime, &a.matrices, &b.matrices);
    Ok(gfp::find_invertible(a.prime, &space, 1 << 20).is_some())
}

/// Structural data of one permutation group, computed lazily and cached.
#[derive(Debug)]
pub struct Analysis {
    group: PermGroup,
    limits: Limits,
    table: GroupTable,
    lattice: OnceLock<Result<SubgroupLattice>>,
    chief: OnceLock<Result<ChiefSeries>>,
}

impl Analysis {
    pub fn new(g: &PermGroup, limits: &Limits) -> Result<Self> {
        Ok(Analysis {
            table: GroupTable::from_group(g, limits.table_cap)?,
            group: g.clone(),
            limits: limits.clone(),
            lattice: OnceLock::new(),
            chief: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        self.lattice
            .get_or_init(|| SubgroupLattice::build(&self.table, self.limits.lattice_cap))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn chief_series(&self) -> Result<&ChiefSeries> {
        self.chief
            .get_or_init(|| {
                ChiefSeries::build(&self.table, self.limits.lattice_cap, TieBreak::Least)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn frattini(&self) -> Result<Subgroup> {
        Ok(self.lattice()?.frattini(&self.table))
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        minimal_normal_subgroups_table(&self.table)
    }

    pub fn socle(&self) -> Subgroup {
        socle_table(&self.table)
    }

    pub fn to_group(&self, h: &Subgroup) -> PermGroup {
        self.table.to_perm_group(h).expect("table built from permutations")
    }

    /// Subgroup of the table for a permutation subgroup.
    pub fn subgroup(&self, h: &PermGroup) -> Result<Subgroup> {
        self.table.subgroup_of(h).ok_or(Error::NotMember)
    }

    pub fn is_monolithic_primitive(&self) -> Result<bool> {
        Ok(self.minimal_normal_subgroups().len() == 1 && self.frattini()?.order() == 1)
    }
}

/// All subgroups, ordered by order and then by element list.
pub fn all_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    let a = Analysis::new(g, limits)?;
    let lattice = a.lattice()?;
    Ok(lattice.subgroups.iter().map(|h| a.to_group(h)).collect())
}

pub fn frattini(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let a = Analysis::new(g, limits)?;
    Ok(a.to_group(&a.frattini()?))
}

/// Minimal normal subgroups. Groups above the table cap are handled by a
/// sweep over conjugacy classes of the full element set.
pub fn minimal_normal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    if g.order() <= limits.table_cap as u128 {
        let a = Analysis::new(g, limits)?;
        return Ok(a
            .minimal_normal_subgroups()
            .iter()
            .map(|h| a.to_group(h))
            .collect());
    }
    minimal_normal_by_sweep(g, limits.element_cap)
}

fn minimal_normal_by_sweep(g: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    let mut elements = g.elements(cap)?;
    elements.sort_by(|a, b| element_key(a).cmp(&element_key(b)));
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut seen = vec![false; elements.len()];
    let mut reps = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        reps.push(start);
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for s in g.generators() {
                let j = index[&s.conjugate(&elements[i])];
                if !seen[j] {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
    }
    let mut cands: Vec<PermGroup> = Vec::new();
    for &r in reps.iter().skip(1) {
        let n = group::normal_closure_unchecked(g, &[elements[r].clone()]);
        if !cands.iter().any(|k| k.same_group(&n)) {
            cands.push(n);
        }
    }
    let mut out: Vec<(Vec<Permutation>, PermGroup)> = Vec::new();
    for n in &cands {
        let minimal = !cands
            .iter()
            .any(|k| k.order() < n.order() && n.contains_group(k));
        if minimal {
            let mut elems = n.elements(cap)?;
            elems.sort();
            out.push((elems, n.clone()));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, n)| n).collect())
}

pub fn socle(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let gens: Vec<Permutation> = minimal_normal_subgroups(g, limits)?
        .iter()
        .flat_map(|n| n.generators().to_vec())
        .collect();
    PermGroup::new(g.degree(), gens)
}

pub fn chief_series(g: &PermGroup, limits: &Limits) -> Result<ChiefSeries> {
    let t = GroupTable::from_group(g, limits.table_cap)?;
    ChiefSeries::build(&t, limits.lattice_cap, TieBreak::Least)
}

/// Whether `X/Y` has a complement in `G/Y`; `Y ≤ X` both normal in `G`.
pub fn has_complement(
    g: &PermGroup,
    x: &PermGroup,
    y: &PermGroup,
    limits: &Limits,
) -> Result<bool> {
    if !x.contains_group(y) || !g.normalizes(x) || !g.normalizes(y) || !g.contains_group(x) {
        return Err(Error::NotNormal);
    }
    let a = Analysis::new(g, limits)?;
    has_complement_table(&a.table, &a.subgroup(x)?, &a.subgroup(y)?, limits.lattice_cap)
}

pub fn monolithic_primitive(g: &PermGroup, limits: &Limits) -> Result<bool> {
    Analysis::new(g, limits)?.is_monolithic_primitive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])]).unwrap()
    }

    fn cyclic(n: usize) -> PermGroup {
        PermGroup::new(n, vec![perm(n, &[&(0..n).collect::<Vec<_>>()])]).unwrap()
    }

    #[test]
    fn s4_series() {
        let cs = chief_series(&s4(), &Limits::default()).unwrap();
        let orders: Vec<usize> = cs.factors.iter().map(|f| f.order()).collect();
        assert_eq!(orders, vec![4, 3, 2]);
        assert!(cs.factors.iter().all(|f| !f.frattini && f.is_abelian()));
        assert_eq!((cs.a(), cs.b()), (3, 0));
        assert_eq!(cs.delta(0).unwrap(), 1);
    }

    #[test]
    fn c4_series_has_frattini_bottom() {
        let cs = chief_series(&cyclic(4), &Limits::default()).unwrap();
        let flags: Vec<bool> = cs.factors.iter().map(|f| f.frattini).collect();
        assert_eq!(flags, vec![true, false]);
    }

    #[test]
    fn minimal_normals_and_socle() {
        let l = Limits::default();
        let mins = minimal_normal_subgroups(&s4(), &l).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
        assert_eq!(socle(&cyclic(6), &l).unwrap().order(), 6);
        assert!(monolithic_primitive(&s4(), &l).unwrap());
        assert!(!monolithic_primitive(&cyclic(6), &l).unwrap());
    }

    #[test]
    fn complement_of_klein() {
        let l = Limits::default();
        let g = s4();
        let k = PermGroup::new(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])])
            .unwrap();
        assert!(has_complement(&g, &k, &PermGroup::trivial(4), &l).unwrap());
        let c4 = cyclic(4);
        let c2 = PermGroup::new(4, vec![perm(4, &[&[0, 2], &[1, 3]])]).unwrap();
        assert!(!has_complement(&c4, &c2, &PermGroup::trivial(4), &l).unwrap());
    }

    #[test]
    fn sweep_matches_table() {
        let l = Limits {
            table_cap: 1,
            ..Limits::default()
        };
        let mins = minimal_normal_subgroups(&s4(), &l).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
    }
}

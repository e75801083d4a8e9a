//! Crown-based powers, the monolithic primitive group attached to a chief
//! factor, Eulerian functions and automorphism counts.

use crate::error::{Error, Result};
use crate::genset::Engine;
use crate::group::{self, PermGroup};
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::structure::{self, Analysis, ChiefFactor, FactorKind};
use crate::table::GroupTable;

/// `L_G(A)` for a non-Frattini chief factor `A` of `g`: the affine group
/// `A ⋊ G/C_G(A)` on `p^n` points when `A` is abelian, `G/C_G(A)` otherwise.
pub fn monolithic_of(g: &PermGroup, f: &ChiefFactor, limits: &Limits) -> Result<PermGroup> {
    if f.frattini {
        return Err(Error::InvalidArgument(
            "Frattini chief factors have no monolithic primitive group".into(),
        ));
    }
    let centralizer_order = f.centralizer.order() as u128;
    let (l, expected) = match &f.kind {
        FactorKind::Abelian(data) => {
            let p = data.prime as usize;
            let n = data.dim;
            let size = p.pow(n as u32);
            let index = |v: &[u32]| v.iter().rev().fold(0usize, |acc, &x| acc * p + x as usize);
            let vectors: Vec<Vec<u32>> = (0..size)
                .map(|mut i| {
                    (0..n)
                        .map(|_| {
                            let x = (i % p) as u32;
                            i /= p;
                            x
                        })
                        .collect()
                })
                .collect();
            let mut gens = Vec::new();
            for k in 0..n {
                let images = vectors
                    .iter()
                    .map(|v| {
                        let mut w = v.clone();
                        w[k] = (w[k] + 1) % data.prime;
                        index(&w) as u32
                    })
                    .collect();
                gens.push(Permutation::from_images(images)?);
            }
            for m in &data.matrices {
                let images = vectors.iter().map(|v| index(&m.apply_row(v)) as u32).collect();
                gens.push(Permutation::from_images(images)?);
            }
            let l = PermGroup::new(size, gens)?;
            (l, size as u128 * (g.order() / centralizer_order))
        }
        FactorKind::NonAbelian { .. } => {
            let (l, _) = group::quotient(g, &f.centralizer_group, limits.element_cap)?;
            (l, g.order() / centralizer_order)
        }
    };
    if l.order() != expected {
        return Err(Error::InvalidArgument(format!(
            "monolithic group has order {}, expected {expected}",
            l.order()
        )));
    }
    Ok(l)
}

/// Crown-based power `L_k`: tuples of `L^k` congruent modulo the socle `A`.
pub fn crown_power(l: &PermGroup, a: &PermGroup, k: usize, limits: &Limits) -> Result<PermGroup> {
    if k == 0 {
        return Err(Error::InvalidArgument("crown power needs k ≥ 1".into()));
    }
    let soc = structure::socle(l, limits)?;
    if !soc.same_group(a) {
        return Err(Error::InvalidArgument("A is not the socle of L".into()));
    }
    let n = l.degree();
    let total = n * k;
    let projected = l.order() * a.order().pow(k as u32 - 1);
    if projected > limits.max_order {
        return Err(Error::cap("crown power order", projected, limits.max_order));
    }
    let mut gens = Vec::new();
    for x in l.generators() {
        let mut d = Permutation::identity(total);
        for i in 0..k {
            d = d.mul(&x.shifted(i * n, total));
        }
        gens.push(d);
    }
    for i in 0..k - 1 {
        for y in a.generators() {
            gens.push(y.shifted(i * n, total));
        }
    }
    let lk = PermGroup::new(total, gens)?;
    if lk.order() != projected {
        return Err(Error::InvalidArgument(format!(
            "crown power has order {}, expected {projected}",
            lk.order()
        )));
    }
    Ok(lk)
}

/// Number of generating `m`-tuples, `Σ_H μ(H)·|H|^m` over the subgroup lattice.
pub fn eulerian(x: &PermGroup, m: u32, limits: &Limits) -> Result<i128> {
    let t = GroupTable::from_group(x, limits.table_cap)?;
    Ok(SubgroupLattice::build(&t, limits.lattice_cap)?.eulerian(m))
}

/// Number of generating `m`-tuples by enumerating all `|X|^m` tuples.
pub fn eulerian_brute(x: &PermGroup, m: u32, cap: u128) -> Result<i128> {
    let n = x.order();
    let total = n.checked_pow(m).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::cap("tuple enumeration", total, cap));
    }
    let t = GroupTable::from_group(x, n as usize)?;
    let n = n as u32;
    let mut count = 0i128;
    let mut tuple = vec![0u32; m as usize];
    loop {
        if t.closure(&tuple).order() == n as usize {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == tuple.len() {
                return Ok(count);
            }
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// `|Aut S|`, by trying every image of a fixed minimal generating tuple.
pub fn aut_order(s: &PermGroup, limits: &Limits) -> Result<u128> {
    const CAP: usize = 500;
    if s.order() > CAP as u128 {
        return Err(Error::cap("automorphism search", s.order(), CAP as u128));
    }
    let t = GroupTable::from_group(s, CAP)?;
    let n = t.order();
    if n == 1 {
        return Ok(1);
    }
    let mut engine = Engine::new(&t, limits);
    let d = engine.d(limits.seed)?;
    let tuple: Vec<u32> = engine
        .independent_of_size(d)?
        .expect("a minimal generating set is independent")
        .into_iter()
        .map(|c| engine.element(c))
        .collect();
    let candidates: Vec<Vec<u32>> = tuple
        .iter()
        .map(|&x| {
            (0..n as u32)
                .filter(|&y| t.element_order(y) == t.element_order(x))
                .collect()
        })
        .collect();
    let mut count = 0u128;
    let mut choice = vec![0usize; d];
    loop {
        let images: Vec<u32> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_to_hom(&t, &tuple, &images) {
            if is_automorphism(&t, &map) {
                count += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(count);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Extends `gens[i] ↦ images[i]` along the Cayley graph; `None` if the
/// assignment is inconsistent.
pub(crate) fn extend_to_hom(t: &GroupTable, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let n = t.order();
    let mut map = vec![u32::MAX; n];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = t.mul(x, g);
            let fy = t.mul(map[x as usize], h);
            if map[y as usize] == u32::MAX {
                map[y as usize] = fy;
                queue.push(y);
            } else if map[y as usize] != fy {
                return None;
            }
        }
    }
    Some(map)
}

pub(crate) fn is_automorphism(t: &GroupTable, map: &[u32]) -> bool {
    let n = t.order();
    let mut hit = vec![false; n];
    for &y in map {
        if std::mem::replace(&mut hit[y as usize], true) {
            return false;
        }
    }
    (0..n as u32).all(|a| {
        (0..n as u32).all(|b| map[t.mul(a, b) as usize] == t.mul(map[a as usize], map[b as usize]))
    })
}

/// Data of the generation criterion for `A^k` with `A` simple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    pub phi: i128,
    pub aut: u128,
    /// Largest `k` with `d(A^k) ≤ m`.
    pub k_max: u128,
}

pub fn crown_threshold(a: &PermGroup, m: u32, limits: &Limits) -> Result<Threshold> {
    if a.order() > 500 {
        return Err(Error::cap("crown criterion", a.order(), 500u128));
    }
    let analysis = Analysis::new(a, limits)?;
    let mins = analysis.minimal_normal_subgroups();
    if a.is_trivial() || mins.len() != 1 || mins[0].order() != analysis.table().order() {
        return Err(Error::Unsupported(
            "crown criterion is implemented for simple groups only".into(),
        ));
    }
    let phi = eulerian(a, m, limits)?;
    let aut = aut_order(a, limits)?;
    Ok(Threshold {
        phi,
        aut,
        k_max: (phi.max(0) as u128) / aut,
    })
}

/// Predicts whether `d(L_k) ≤ m` for `L = A` simple.
pub fn crown_generation_check(
    l: &PermGroup,
    a: &PermGroup,
    m: u32,
    k: u128,
    limits: &Limits,
) -> Result<bool> {
    if !l.same_group(a) {
        return Err(Error::Unsupported(
            "crown criterion is implemented for L = A only".into(),
        ));
    }
    Ok(k <= crown_threshold(a, m, limits)?.k_max)
}

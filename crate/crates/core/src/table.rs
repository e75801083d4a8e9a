//! Finite groups as Cayley tables, with subgroups as bitsets.
//!
//! Groups built from permutations number their elements by the fixed total
//! order (element order, then image list), so the identity is element 0.
//! Quotient tables number cosets by their least member.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{element_key, Permutation};

pub type Bits = FixedBitSet;

/// A subgroup of a [`GroupTable`]: element set, sorted member list and a
/// generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub bits: Bits,
    pub elements: Vec<u32>,
    pub gens: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

#[derive(Debug, Clone)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    gens: Vec<u32>,
    perms: Option<Vec<Permutation>>,
    degree: usize,
}

impl GroupTable {
    /// Cayley table of a permutation group; refuses groups above `cap`.
    pub fn from_group(g: &PermGroup, cap: usize) -> Result<Self> {
        let order = g.order();
        if order > cap as u128 {
            return Err(Error::cap("Cayley table", order, cap as u128));
        }
        let mut perms = g.elements(cap)?;
        perms.sort_by(|a, b| element_key(a).cmp(&element_key(b)));
        let index: HashMap<&Permutation, u32> =
            perms.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let gens: Vec<u32> = g.generators().iter().map(|s| index[s]).collect();
        let n = perms.len();
        let right: Vec<Vec<u32>> = g
            .generators()
            .iter()
            .map(|s| perms.iter().map(|p| index[&p.mul(s)]).collect())
            .collect();
        let orders = perms.iter().map(|p| p.order() as u32).collect();
        let mul = fill_table(n, &right);
        let inv = inverses(n, &mul);
        drop(index);
        Ok(GroupTable {
            n,
            mul,
            inv,
            orders,
            gens,
            degree: g.degree(),
            perms: Some(perms),
        })
    }

    fn from_parts(n: usize, mul: Vec<u32>, gens: Vec<u32>) -> Self {
        let inv = inverses(n, &mul);
        let mut orders = vec![0u32; n];
        for (x, o) in orders.iter_mut().enumerate() {
            let mut k = 1;
            let mut y = x as u32;
            while y != 0 {
                y = mul[y as usize * n + x];
                k += 1;
            }
            *o = k;
        }
        GroupTable {
            n,
            mul,
            inv,
            orders,
            gens,
            perms: None,
            degree: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Generator indices, one per generator of the source group (may repeat
    /// or be the identity in quotients).
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: u32, e: u32) -> u32 {
        (0..e).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn perm(&self, x: u32) -> Option<&Permutation> {
        self.perms.as_ref().map(|p| &p[x as usize])
    }

    pub fn has_perms(&self) -> bool {
        self.perms.is_some()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        let perms = self.perms.as_ref()?;
        // Perms are sorted by (order, images).
        perms
            .binary_search_by(|q| element_key(q).cmp(&element_key(p)))
            .ok()
            .map(|i| i as u32)
    }

    pub fn empty_bits(&self) -> Bits {
        FixedBitSet::with_capacity(self.n)
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = self.empty_bits();
        bits.insert_range(..);
        Subgroup {
            bits,
            elements: (0..self.n as u32).collect(),
            gens: self.gens.iter().copied().filter(|&g| g != 0).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = self.empty_bits();
        bits.insert(0);
        Subgroup {
            bits,
            elements: vec![0],
            gens: vec![],
        }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut h = self.trivial();
        for &g in gens {
            if !h.contains(g) {
                h = self.join(&h, g);
            }
        }
        h
    }

    /// `<H, x>` by adding right cosets of `H` until closed.
    pub fn join(&self, h: &Subgroup, x: u32) -> Subgroup {
        if h.contains(x) {
            return h.clone();
        }
        let mut gens = h.gens.clone();
        gens.push(x);
        let mut bits = h.bits.clone();
        let mut elements = h.elements.clone();
        let mut reps = vec![0u32];
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            head += 1;
            for &s in &gens {
                let y = self.mul(r, s);
                if bits.contains(y as usize) {
                    continue;
                }
                for &hh in &h.elements {
                    let z = self.mul(hh, y);
                    bits.insert(z as usize);
                    elements.push(z);
                }
                reps.push(y);
            }
        }
        elements.sort_unstable();
        Subgroup {
            bits,
            elements,
            gens,
        }
    }

    /// Subgroup from an element set known to be closed; picks generators
    /// greedily in index order.
    pub fn subgroup_from_bits(&self, bits: &Bits) -> Subgroup {
        let mut h = self.trivial();
        for x in bits.ones() {
            if !h.contains(x as u32) {
                h = self.join(&h, x as u32);
            }
            if h.order() == bits.count_ones(..) {
                break;
            }
        }
        debug_assert_eq!(&h.bits, bits);
        h
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut bits = a.bits.clone();
        bits.intersect_with(&b.bits);
        self.subgroup_from_bits(&bits)
    }

    /// Product `AB` of two subgroups, one of them normal.
    pub fn product(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut h = a.clone();
        for &g in &b.gens {
            h = self.join(&h, g);
        }
        h
    }

    /// Conjugacy classes; each class sorted, classes ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut class = vec![start];
            let mut head = 0;
            while head < class.len() {
                let x = class[head];
                head += 1;
                for &g in &self.gens {
                    let y = self.conj(x, g);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        class.push(y);
                    }
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    /// Conjugate subgroup `H^g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: u32) -> Subgroup {
        let mut bits = self.empty_bits();
        let mut elements: Vec<u32> = h.elements.iter().map(|&x| self.conj(x, g)).collect();
        for &x in &elements {
            bits.insert(x as usize);
        }
        elements.sort_unstable();
        Subgroup {
            bits,
            elements,
            gens: h.gens.iter().map(|&x| self.conj(x, g)).collect(),
        }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.gens
            .iter()
            .all(|&g| h.gens.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[u32]) -> Subgroup {
        let mut h = self.trivial();
        let mut queue: Vec<u32> = set.to_vec();
        while let Some(x) = queue.pop() {
            if h.contains(x) {
                continue;
            }
            h = self.join(&h, x);
            for &g in &self.gens {
                queue.push(self.conj(x, g));
            }
        }
        h
    }

    /// Derived subgroup of a subgroup `h`.
    pub fn derived(&self, h: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        for (i, &a) in h.gens.iter().enumerate() {
            for &b in &h.gens[i + 1..] {
                comms.push(self.commutator(a, b));
            }
        }
        // Normal closure inside h.
        let mut d = self.trivial();
        let mut queue = comms;
        while let Some(x) = queue.pop() {
            if d.contains(x) {
                continue;
            }
            d = self.join(&d, x);
            for &g in &h.gens {
                queue.push(self.conj(x, g));
            }
        }
        d
    }

    pub fn is_soluble(&self) -> bool {
        let mut h = self.whole();
        loop {
            let d = self.derived(&h);
            if d.order() == 1 {
                return true;
            }
            if d.order() == h.order() {
                return false;
            }
            h = d;
        }
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        h.gens.iter().enumerate().all(|(i, &a)| {
            h.gens[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// `C_G(X/Y)`: elements acting trivially by conjugation on `X/Y`.
    pub fn centralizer_of_section(&self, x: &Subgroup, y: &Subgroup) -> Subgroup {
        let mut bits = self.empty_bits();
        for g in 0..self.n as u32 {
            let ok = x.gens.iter().all(|&a| {
                let c = self.conj(a, g);
                // c ≡ a mod Y  <=>  a^-1 c ∈ Y
                y.contains(self.mul(self.inv(a), c))
            });
            if ok {
                bits.insert(g as usize);
            }
        }
        self.subgroup_from_bits(&bits)
    }

    /// `G/N` with the projection; cosets numbered by their least member.
    pub fn quotient(&self, normal: &Subgroup) -> (GroupTable, Vec<u32>) {
        let mut proj = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n as u32 {
            if proj[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            for &m in &normal.elements {
                proj[self.mul(m, x) as usize] = c;
            }
            reps.push(x);
        }
        let q = reps.len();
        let mut mul = vec![0u32; q * q];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                mul[a * q + b] = proj[self.mul(ra, rb) as usize];
            }
        }
        let gens = self.gens.iter().map(|&g| proj[g as usize]).collect();
        (GroupTable::from_parts(q, mul, gens), proj)
    }

    /// Restricts the table to a subgroup, renumbering its elements in
    /// increasing order. Generators become `h.gens`.
    pub fn restrict(&self, h: &Subgroup) -> (GroupTable, Vec<u32>) {
        let m = h.order();
        let mut local = vec![u32::MAX; self.n];
        for (i, &x) in h.elements.iter().enumerate() {
            local[x as usize] = i as u32;
        }
        let mut mul = vec![0u32; m * m];
        for (i, &a) in h.elements.iter().enumerate() {
            for (j, &b) in h.elements.iter().enumerate() {
                mul[i * m + j] = local[self.mul(a, b) as usize];
            }
        }
        let gens = h.gens.iter().map(|&g| local[g as usize]).collect();
        let mut t = GroupTable::from_parts(m, mul, gens);
        if let Some(perms) = &self.perms {
            t.perms = Some(h.elements.iter().map(|&x| perms[x as usize].clone()).collect());
            t.degree = self.degree;
        }
        (t, h.elements.clone())
    }

    /// Permutation group for a subgroup of a table built from permutations.
    pub fn to_perm_group(&self, h: &Subgroup) -> Option<PermGroup> {
        let perms = self.perms.as_ref()?;
        PermGroup::new(
            self.degree,
            h.gens.iter().map(|&g| perms[g as usize].clone()).collect(),
        )
        .ok()
    }

    /// Converts a permutation subgroup of the source group into a bitset subgroup.
    pub fn subgroup_of(&self, h: &PermGroup) -> Option<Subgroup> {
        let gens: Option<Vec<u32>> = h.generators().iter().map(|p| self.index_of(p)).collect();
        Some(self.closure(&gens?))
    }

    /// Right regular representation as a permutation group of degree |G|.
    pub fn regular_representation(&self) -> PermGroup {
        let gens = self
            .gens
            .iter()
            .map(|&g| {
                Permutation::from_images_unchecked(
                    (0..self.n as u32).map(|x| self.mul(x, g)).collect(),
                )
            })
            .collect();
        PermGroup::new(self.n, gens).expect("degrees agree")
    }
}

fn fill_table(n: usize, right: &[Vec<u32>]) -> Vec<u32> {
    // Spanning tree from the identity (element 0) under right multiplication.
    let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
    let mut order = vec![0u32];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for (k, r) in right.iter().enumerate() {
            let y = r[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                parent[y as usize] = Some((x, k));
                order.push(y);
            }
        }
    }
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        mul[i * n] = i as u32;
    }
    for &j in &order[1..] {
        let (p, k) = parent[j as usize].unwrap();
        let r = &right[k];
        for i in 0..n {
            mul[i * n + j as usize] = r[mul[i * n + p as usize] as usize];
        }
    }
    mul
}

fn inverses(n: usize, mul: &[u32]) -> Vec<u32> {
    (0..n)
        .map(|i| {
            (0..n)
                .find(|&j| mul[i * n + j] == 0)
                .expect("every element has an inverse") as u32
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn s4() -> GroupTable {
        let g = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])]).unwrap();
        GroupTable::from_group(&g, 100).unwrap()
    }

    #[test]
    fn table_matches_permutation_products() {
        let t = s4();
        assert_eq!(t.order(), 24);
        assert!(t.perm(0).unwrap().is_identity());
        for a in 0..24u32 {
            for b in 0..24u32 {
                let p = t.perm(a).unwrap().mul(t.perm(b).unwrap());
                assert_eq!(t.index_of(&p), Some(t.mul(a, b)));
            }
            assert_eq!(t.mul(a, t.inv(a)), 0);
            assert_eq!(t.element_order(a) as u64, t.perm(a).unwrap().order());
        }
    }

    #[test]
    fn classes_and_normal_subgroups() {
        let t = s4();
        let sizes: Vec<usize> = t.conjugacy_classes().iter().map(|c| c.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 3, 6, 6, 8]);
        let dt = t.index_of(&cyc(4, &[&[0, 1], &[2, 3]])).unwrap();
        let k = t.normal_closure(&[dt]);
        assert_eq!(k.order(), 4);
        assert!(t.is_normal(&k));
        let (q, proj) = t.quotient(&k);
        assert_eq!(q.order(), 6);
        assert_eq!(proj[0], 0);
        assert!(!q.is_soluble() || q.order() == 6);
        assert!(t.is_soluble());
    }

    #[test]
    fn derived_and_centralizer() {
        let t = s4();
        let g = t.whole();
        let d1 = t.derived(&g);
        assert_eq!(d1.order(), 12);
        let d2 = t.derived(&d1);
        assert_eq!(d2.order(), 4);
        let c = t.centralizer_of_section(&d2, &t.trivial());
        assert_eq!(c.order(), 4);
    }
}

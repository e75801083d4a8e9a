//! Generating sets: `d(G)`, `m(G)`, independent generating sets and the
//! spectrum of their sizes.
//!
//! Searches work on the Cayley table. An independent set is determined up
//! to independence by the cyclic subgroups its elements generate, so the
//! candidates are cyclic subgroups, each represented by its least element.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{big_omega, closure, prime_factors, seeded_rng, PermGroup};
use crate::lattice::cyclic_subgroups;
use crate::limits::{Deadline, Limits};
use crate::perm::Permutation;
use crate::structure::Analysis;
use crate::table::{Bits, GroupTable, Subgroup};

/// An independent generating set with, for each element `s`, the order of
/// `⟨S∖{s}⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentSet {
    pub elements: Vec<Permutation>,
    pub witness: Vec<u128>,
}

impl IndependentSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GenProfile {
    pub d: usize,
    pub m: usize,
    pub spectrum: BTreeMap<usize, IndependentSet>,
    pub a: usize,
    pub b: usize,
    pub soluble: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub a: usize,
    pub b: usize,
    pub lower: usize,
    pub upper: usize,
}

/// Returns the set with its witnesses when `s` generates `g` and no element
/// is redundant.
pub fn is_independent_generating(g: &PermGroup, s: &[Permutation]) -> Result<Option<IndependentSet>> {
    for x in s {
        if !crate::group::contains(g, x)? {
            return Err(Error::NotMember);
        }
    }
    let order = g.order();
    if closure(g.degree(), s)?.order() != order {
        return Ok(None);
    }
    let mut witness = Vec::with_capacity(s.len());
    for i in 0..s.len() {
        let rest: Vec<Permutation> = s
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x.clone())
            .collect();
        let o = closure(g.degree(), &rest)?.order();
        if o == order {
            return Ok(None);
        }
        witness.push(o);
    }
    Ok(Some(IndependentSet {
        elements: s.to_vec(),
        witness,
    }))
}

/// Search state over one group table: a registry of subgroups reached by
/// joins with cyclic subgroups.
pub(crate) struct Engine<'a> {
    t: &'a GroupTable,
    cyclic: Vec<Subgroup>,
    gen_of: Vec<u32>,
    /// Candidates allowed as the first element: one per conjugacy class.
    first: Vec<usize>,
    /// Candidates for the m-search (all, or prime-power order only).
    m_candidates: Vec<usize>,
    subs: Vec<Bits>,
    orders: Vec<usize>,
    ids: HashMap<Bits, usize>,
    memo: HashMap<(usize, usize), usize>,
    cyc_id: Vec<usize>,
    top: usize,
    deadline: Deadline,
    nodes: u64,
}

enum Goal {
    Max { upper: usize },
    Exact(usize),
}

impl<'a> Engine<'a> {
    pub(crate) fn new(t: &'a GroupTable, limits: &Limits) -> Self {
        let cyclic = cyclic_subgroups(t);
        let gen_of: Vec<u32> = cyclic
            .iter()
            .map(|c| least_generator(t, c).unwrap_or(0))
            .collect();
        let mut engine = Engine {
            t,
            first: Vec::new(),
            m_candidates: Vec::new(),
            subs: Vec::new(),
            orders: Vec::new(),
            ids: HashMap::new(),
            memo: HashMap::new(),
            cyc_id: Vec::new(),
            top: 0,
            deadline: Deadline::new(limits.time_budget, "generating-set search"),
            nodes: 0,
            cyclic: Vec::new(),
            gen_of: Vec::new(),
        };
        engine.register(t.trivial().bits);
        engine.top = engine.register(t.whole().bits);
        // Drop the trivial subgroup from the candidates.
        let (cyclic, gen_of): (Vec<Subgroup>, Vec<u32>) = cyclic
            .into_iter()
            .zip(gen_of)
            .filter(|(c, _)| c.order() > 1)
            .unzip();
        engine.cyc_id = cyclic.iter().map(|c| engine.register(c.bits.clone())).collect();
        let mut class_of: HashMap<Bits, usize> = HashMap::new();
        for (i, c) in cyclic.iter().enumerate() {
            if class_of.contains_key(&c.bits) {
                continue;
            }
            engine.first.push(i);
            let mut orbit = vec![c.clone()];
            class_of.insert(c.bits.clone(), i);
            while let Some(h) = orbit.pop() {
                for &g in t.gens() {
                    let k = t.conjugate_subgroup(&h, g);
                    if !class_of.contains_key(&k.bits) {
                        class_of.insert(k.bits.clone(), i);
                        orbit.push(k);
                    }
                }
            }
        }
        engine.m_candidates = (0..cyclic.len())
            .filter(|&i| !limits.prime_power_only || prime_factors(cyclic[i].order() as u128).len() == 1)
            .collect();
        engine.cyclic = cyclic;
        engine.gen_of = gen_of;
        engine
    }

    fn register(&mut self, bits: Bits) -> usize {
        if let Some(&id) = self.ids.get(&bits) {
            return id;
        }
        let id = self.subs.len();
        self.orders.push(bits.count_ones(..));
        self.subs.push(bits.clone());
        self.ids.insert(bits, id);
        id
    }

    fn contains(&self, h: usize, c: usize) -> bool {
        self.subs[h].contains(self.gen_of[c] as usize)
    }

    fn join(&mut self, h: usize, c: usize) -> usize {
        if let Some(&j) = self.memo.get(&(h, c)) {
            return j;
        }
        let j = if self.contains(h, c) {
            h
        } else if h == 0 {
            self.cyc_id[c]
        } else {
            let sub = self.t.subgroup_from_bits(&self.subs[h]);
            let joined = self.t.join(&sub, self.gen_of[c]);
            self.register(joined.bits)
        };
        self.memo.insert((h, c), j);
        j
    }

    fn omega_index(&self, h: usize) -> usize {
        big_omega((self.t.order() / self.orders[h]) as u128) as usize
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            self.deadline.check()?;
        }
        Ok(())
    }

    /// Lower bound for `d`: largest rank of an elementary abelian quotient,
    /// and 2 for non-cyclic groups.
    pub(crate) fn d_lower_bound(&self) -> usize {
        let t = self.t;
        let n = t.order();
        if n == 1 {
            return 0;
        }
        let derived = t.derived(&t.whole());
        let mut lb = 1;
        for (p, _) in prime_factors(n as u128) {
            let p = p as u32;
            let mut gens = derived.gens.clone();
            gens.extend((0..n as u32).map(|x| t.pow(x, p)));
            gens.sort_unstable();
            gens.dedup();
            let k = t.closure(&gens);
            let index = (n / k.order()) as u128;
            let rank = prime_factors(index).first().map_or(0, |&(_, e)| e as usize);
            lb = lb.max(rank);
        }
        if !(0..n as u32).any(|x| t.element_order(x) as usize == n) {
            lb = lb.max(2);
        }
        lb
    }

    /// Smallest `k` such that some `k` elements generate the group.
    pub(crate) fn d(&mut self, seed: u64) -> Result<usize> {
        let n = self.t.order();
        if n == 1 {
            return Ok(0);
        }
        let lb = self.d_lower_bound();
        let mut rng = seeded_rng(seed);
        let mut ub = usize::MAX;
        'probe: for k in lb..=lb + 2 {
            for _ in 0..64 {
                let tuple: Vec<u32> = (0..k).map(|_| rng.random_range(0..n as u32)).collect();
                if self.t.closure(&tuple).order() == n {
                    ub = k;
                    break 'probe;
                }
            }
        }
        if ub == lb {
            return Ok(lb);
        }
        // Exhaustive: level j holds every subgroup generated by j elements
        // whose first element is a class representative.
        let mut level: HashSet<usize> = self.first.iter().map(|&c| self.cyc_id[c]).collect();
        let mut j = 1;
        while !level.contains(&self.top) {
            if j + 1 >= ub {
                return Ok(ub);
            }
            let mut next = HashSet::new();
            let mut hs: Vec<usize> = level.into_iter().collect();
            hs.sort_unstable();
            for h in hs {
                self.tick()?;
                for c in 0..self.cyclic.len() {
                    if !self.contains(h, c) {
                        next.insert(self.join(h, c));
                    }
                }
            }
            level = next;
            j += 1;
        }
        Ok(j)
    }

    /// Largest independent generating set, as candidate indices.
    pub(crate) fn max_independent(&mut self, upper: usize) -> Result<Vec<usize>> {
        let mut best = Vec::new();
        self.search(Goal::Max { upper }, &mut best)?;
        Ok(best)
    }

    /// Some independent generating set of exactly `k` elements.
    pub(crate) fn independent_of_size(&mut self, k: usize) -> Result<Option<Vec<usize>>> {
        let mut found = Vec::new();
        self.search(Goal::Exact(k), &mut found)?;
        Ok(if found.len() == k && (k > 0 || self.top == 0) {
            Some(found)
        } else {
            None
        })
    }

    fn search(&mut self, goal: Goal, best: &mut Vec<usize>) -> Result<()> {
        if self.top == 0 {
            return Ok(());
        }
        let firsts = self.first.clone();
        for c in firsts {
            if !self.m_candidates.contains(&c) {
                continue;
            }
            let h = self.cyc_id[c];
            let mut chosen = vec![c];
            let hs = vec![0usize];
            if self.step(&goal, &mut chosen, h, &hs, 0, best)? {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Records `chosen` if it generates; otherwise extends it. Returns true
    /// when the search is finished.
    fn step(
        &mut self,
        goal: &Goal,
        chosen: &mut Vec<usize>,
        h: usize,
        hs: &[usize],
        start: usize,
        best: &mut Vec<usize>,
    ) -> Result<bool> {
        self.tick()?;
        let size = chosen.len();
        if h == self.top {
            return Ok(match goal {
                Goal::Max { upper } => {
                    if size > best.len() {
                        *best = chosen.clone();
                    }
                    best.len() >= *upper
                }
                Goal::Exact(k) => {
                    if size == *k {
                        *best = chosen.clone();
                        true
                    } else {
                        false
                    }
                }
            });
        }
        let reach = size + self.omega_index(h);
        let worth = match goal {
            Goal::Max { .. } => reach > best.len(),
            Goal::Exact(k) => size < *k && reach >= *k,
        };
        if !worth {
            return Ok(false);
        }
        let candidates = self.m_candidates.clone();
        let from = candidates.partition_point(|&c| c < start);
        for &c in &candidates[from..] {
            if self.contains(h, c) {
                continue;
            }
            let h2 = self.join(h, c);
            let mut next_hs = Vec::with_capacity(hs.len() + 1);
            let mut ok = true;
            for &hi in hs.iter() {
                let hi2 = self.join(hi, c);
                if hi2 == h2 {
                    ok = false;
                    break;
                }
                next_hs.push(hi2);
            }
            if !ok {
                continue;
            }
            next_hs.push(h);
            chosen.push(c);
            let done = self.step(goal, chosen, h2, &next_hs, c + 1, best)?;
            chosen.pop();
            if done {
                return Ok(true);
            }
            if let Goal::Max { .. } = goal {
                // A better set may have raised the bar for this node.
                if size + self.omega_index(h) <= best.len() {
                    return Ok(false);
                }
            }
        }
        Ok(false)
    }

    pub(crate) fn element(&self, c: usize) -> u32 {
        self.gen_of[c]
    }
}

fn least_generator(t: &GroupTable, c: &Subgroup) -> Option<u32> {
    let n = c.order() as u32;
    c.elements.iter().copied().find(|&x| t.element_order(x) == n)
}

fn to_set(g: &PermGroup, t: &GroupTable, engine: &Engine, idx: &[usize]) -> Result<IndependentSet> {
    let elements: Vec<Permutation> = idx
        .iter()
        .map(|&c| t.perm(engine.element(c)).expect("table has permutations").clone())
        .collect();
    is_independent_generating(g, &elements)?.ok_or_else(|| {
        Error::Unsupported("search produced a dependent set".into())
    })
}

fn order_cap(g: &PermGroup, limits: &Limits) -> Result<()> {
    if g.order() > limits.table_cap as u128 {
        return Err(Error::cap("generating-set search", g.order(), limits.table_cap as u128));
    }
    Ok(())
}

/// Minimal number of generators.
pub fn d(g: &PermGroup, limits: &Limits) -> Result<usize> {
    if g.order() > limits.table_cap as u128 {
        return d_by_sweep(g, limits);
    }
    let t = GroupTable::from_group(g, limits.table_cap)?;
    Engine::new(&t, limits).d(limits.seed)
}

/// `d` for groups above the table cap: only the values 1 and 2 can be
/// certified, by an element sweep and a random probe.
fn d_by_sweep(g: &PermGroup, limits: &Limits) -> Result<usize> {
    let order = g.order();
    let mut cyclic = false;
    g.for_each_element(limits.element_cap, |x| {
        if x.order() as u128 == order {
            cyclic = true;
        }
    })?;
    if cyclic {
        return Ok(1);
    }
    let mut rng = seeded_rng(limits.seed);
    for _ in 0..256 {
        let pair = [g.random_element(&mut rng), g.random_element(&mut rng)];
        if closure(g.degree(), &pair)?.order() == order {
            return Ok(2);
        }
    }
    Err(Error::cap("generating-set search", order, limits.table_cap as u128))
}

/// Largest independent generating set, by exhaustive search.
pub fn m_search(g: &PermGroup, limits: &Limits) -> Result<IndependentSet> {
    order_cap(g, limits)?;
    let t = GroupTable::from_group(g, limits.table_cap)?;
    let mut engine = Engine::new(&t, limits);
    let upper = big_omega(g.order()) as usize;
    let best = engine.max_independent(upper)?;
    to_set(g, &t, &engine, &best)
}

/// `m(G)` with a witness. Soluble groups take the chief-series value `a`
/// and only search for a witness of that size.
pub fn m(g: &PermGroup, limits: &Limits) -> Result<IndependentSet> {
    order_cap(g, limits)?;
    let analysis = Analysis::new(g, limits)?;
    if analysis.table().is_soluble() {
        let a = analysis.chief_series()?.a();
        let mut engine = Engine::new(analysis.table(), limits);
        let found = engine.independent_of_size(a)?.ok_or_else(|| {
            Error::Unsupported(format!("no independent generating set of size {a}"))
        })?;
        return to_set(g, analysis.table(), &engine, &found);
    }
    m_search(g, limits)
}

/// Independent generating set of exactly `k` elements, if one exists.
pub fn independent_set_of_size(g: &PermGroup, k: usize, limits: &Limits) -> Result<Option<IndependentSet>> {
    order_cap(g, limits)?;
    let t = GroupTable::from_group(g, limits.table_cap)?;
    let mut engine = Engine::new(&t, limits);
    match engine.independent_of_size(k)? {
        Some(idx) => Ok(Some(to_set(g, &t, &engine, &idx)?)),
        None => Ok(None),
    }
}

/// `d`, `m`, chief-series counts and a witness for every size in `[d, m]`.
pub fn spectrum(g: &PermGroup, limits: &Limits) -> Result<GenProfile> {
    order_cap(g, limits)?;
    let analysis = Analysis::new(g, limits)?;
    let t = analysis.table();
    let series = analysis.chief_series()?;
    let soluble = t.is_soluble();
    let mut engine = Engine::new(t, limits);
    let d = engine.d(limits.seed)?;
    let top = if soluble {
        let found = engine.independent_of_size(series.a())?.ok_or_else(|| {
            Error::Unsupported(format!("no independent generating set of size {}", series.a()))
        })?;
        to_set(g, t, &engine, &found)?
    } else {
        let best = engine.max_independent(big_omega(g.order()) as usize)?;
        to_set(g, t, &engine, &best)?
    };
    let m = top.len();
    let mut spectrum = BTreeMap::new();
    for k in d..m {
        let idx = engine.independent_of_size(k)?.ok_or_else(|| {
            Error::Unsupported(format!("no independent generating set of size {k}"))
        })?;
        spectrum.insert(k, to_set(g, t, &engine, &idx)?);
    }
    spectrum.insert(m, top);
    Ok(GenProfile {
        d,
        m,
        spectrum,
        a: series.a(),
        b: series.b(),
        soluble,
    })
}

/// Chief-series lower bound `a + b` and the prime-count upper bound for `m`.
pub fn bounds(g: &PermGroup, limits: &Limits) -> Result<Bounds> {
    let analysis = Analysis::new(g, limits)?;
    let series = analysis.chief_series()?;
    let (a, b) = (series.a(), series.b());
    Ok(Bounds {
        a,
        b,
        lower: a + b,
        upper: big_omega(g.order()) as usize,
    })
}

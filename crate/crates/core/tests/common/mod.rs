//! Brute-force oracles that share no code with the library beyond the
//! permutation images of generators.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use permgen::builder::build;
use permgen::report::is_slow;
use permgen::{Limits, PermGroup};

pub type Images = Vec<u32>;

/// `a` then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Images {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn identity(n: usize) -> Images {
    (0..n as u32).collect()
}

/// All elements, by breadth-first search over right multiplication.
pub fn elements(degree: usize, gens: &[Images]) -> Vec<Images> {
    let id = identity(degree);
    let mut seen: HashSet<Images> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out.sort();
    out
}

pub fn gens_of(g: &PermGroup) -> Vec<Images> {
    g.generators().iter().map(|x| x.images().to_vec()).collect()
}

/// Multiplication table over `elements` (sorted), identity at the index of
/// the identity permutation.
pub struct Brute {
    pub elems: Vec<Images>,
    pub mul: Vec<Vec<usize>>,
    pub id: usize,
    pub gens: Vec<usize>,
}

impl Brute {
    pub fn new(g: &PermGroup) -> Self {
        let gens = gens_of(g);
        let elems = elements(g.degree(), &gens);
        let index: HashMap<&Images, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mul = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let id = index[&identity(g.degree())];
        let gens = gens.iter().map(|x| index[x]).collect();
        Brute { elems, mul, id, gens }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Subgroup generated by `xs`, as a sorted index list.
    pub fn closure(&self, xs: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.id] = true;
        let mut stack = vec![self.id];
        let mut out = vec![self.id];
        while let Some(a) = stack.pop() {
            for &x in xs {
                let b = self.mul[a][x];
                if !seen[b] {
                    seen[b] = true;
                    out.push(b);
                    stack.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn generates(&self, xs: &[usize]) -> bool {
        self.closure(xs).len() == self.order()
    }

    /// Every subgroup, found by joining elements to known subgroups until
    /// nothing new appears.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let trivial = vec![self.id];
        seen.insert(trivial.clone());
        let mut queue = vec![trivial];
        while let Some(h) = queue.pop() {
            let inside: HashSet<usize> = h.iter().copied().collect();
            for x in 0..self.order() {
                if inside.contains(&x) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let k = self.closure(&gens);
                if seen.insert(k.clone()) {
                    queue.push(k);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Intersection of the maximal subgroups.
    pub fn frattini(&self) -> Vec<usize> {
        let subs = self.subgroups();
        let n = self.order();
        let proper: Vec<&Vec<usize>> = subs.iter().filter(|h| h.len() < n).collect();
        let is_sub = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|x| b.binary_search(x).is_ok());
        let maximal: Vec<&Vec<usize>> = proper
            .iter()
            .filter(|h| !proper.iter().any(|k| k.len() > h.len() && is_sub(h, k)))
            .copied()
            .collect();
        (0..n)
            .filter(|x| maximal.iter().all(|h| h.binary_search(x).is_ok()))
            .collect()
    }

    /// Least `k` such that some `k` elements generate.
    pub fn d(&self) -> usize {
        if self.order() == 1 {
            return 0;
        }
        let n = self.order();
        (1..=n).find(|&k| any_subset(n, k, &mut |s| self.generates(s))).unwrap()
    }

    /// Whether `s` generates and no element can be dropped.
    pub fn independent_generating(&self, s: &[usize]) -> bool {
        if !self.generates(s) {
            return false;
        }
        (0..s.len()).all(|i| {
            let rest: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            !self.generates(&rest)
        })
    }

    /// Whether no element of `s` lies in the subgroup generated by the rest.
    pub fn irredundant(&self, s: &[usize]) -> bool {
        (0..s.len()).all(|i| {
            let rest: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            self.closure(&rest).binary_search(&s[i]).is_err()
        })
    }

    /// Largest independent generating set. Subsets of irredundant sets are
    /// irredundant, so a depth-first search over increasing indices reaches
    /// every such set.
    pub fn m(&self) -> usize {
        fn go(b: &Brute, start: usize, cur: &mut Vec<usize>, best: &mut usize) {
            if cur.len() > *best && b.generates(cur) {
                *best = cur.len();
            }
            for x in start..b.order() {
                if x == b.id {
                    continue;
                }
                cur.push(x);
                if b.irredundant(cur) {
                    go(b, x + 1, cur, best);
                }
                cur.pop();
            }
        }
        let mut best = 0;
        go(self, 0, &mut Vec::new(), &mut best);
        best
    }

    /// Ordered pairs, triples, ... generating the group.
    pub fn eulerian(&self, m: u32) -> u128 {
        let n = self.order();
        let mut count = 0u128;
        let mut tuple = vec![0usize; m as usize];
        loop {
            if self.generates(&tuple) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == tuple.len() {
                    return count;
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
}

/// Calls `f` on every `k`-subset of `0..n` until it returns true.
pub fn any_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            if go(x + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, n, k, &mut Vec::new(), f)
}

/// `dim H¹(G, M)` by counting cocycles over all generator assignments.
/// `mats[i]` acts on row vectors for generator `i`.
pub fn h1_brute(b: &Brute, p: u32, dim: usize, mats: &[Vec<Vec<u32>>]) -> usize {
    let vmul = |v: &[u32], m: &[Vec<u32>]| -> Vec<u32> {
        (0..dim)
            .map(|j| (0..dim).map(|i| v[i] * m[i][j]).sum::<u32>() % p)
            .collect()
    };
    let add = |a: &[u32], c: &[u32]| -> Vec<u32> { a.iter().zip(c).map(|(x, y)| (x + y) % p).collect() };
    let vectors: Vec<Vec<u32>> = (0..(p as usize).pow(dim as u32))
        .map(|mut x| {
            (0..dim)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        })
        .collect();
    let ng = b.gens.len();
    let mut z1 = 0usize;
    let total = vectors.len().pow(ng as u32);
    for code in 0..total {
        let mut c = code;
        let assign: Vec<&Vec<u32>> = (0..ng)
            .map(|_| {
                let v = &vectors[c % vectors.len()];
                c /= vectors.len();
                v
            })
            .collect();
        let mut delta: Vec<Option<Vec<u32>>> = vec![None; b.order()];
        delta[b.id] = Some(vec![0; dim]);
        let mut queue = VecDeque::from([b.id]);
        let mut ok = true;
        'bfs: while let Some(x) = queue.pop_front() {
            let dx = delta[x].clone().unwrap();
            for (i, &g) in b.gens.iter().enumerate() {
                let y = b.mul[x][g];
                let dy = add(&vmul(&dx, &mats[i]), assign[i]);
                match &delta[y] {
                    None => {
                        delta[y] = Some(dy);
                        queue.push_back(y);
                    }
                    Some(old) if *old != dy => {
                        ok = false;
                        break 'bfs;
                    }
                    Some(_) => {}
                }
            }
        }
        if ok {
            z1 += 1;
        }
    }
    // Coboundaries g ↦ v·g - v, determined by their values on generators.
    let mut b1: HashSet<Vec<Vec<u32>>> = HashSet::new();
    for v in &vectors {
        let neg: Vec<u32> = v.iter().map(|&x| (p - x) % p).collect();
        b1.insert((0..ng).map(|i| add(&vmul(v, &mats[i]), &neg)).collect());
    }
    let ratio = z1 / b1.len();
    let mut k = 0;
    let mut r = 1;
    while r < ratio {
        r *= p as usize;
        k += 1;
    }
    assert_eq!(r, ratio, "|Z¹|/|B¹| is a power of p");
    k
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Corpus expressions, sorted by file name; files with the slow marker only
/// when `slow` is set.
pub fn corpus_files(slow: bool) -> Vec<(String, PermGroup)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    files.sort();
    files
        .into_iter()
        .filter_map(|f| {
            let text = std::fs::read_to_string(&f).unwrap();
            (slow || !is_slow(&text)).then(|| {
                let g = build(&text, &Limits::default()).unwrap();
                let id = text.lines().filter(|l| !l.starts_with('#')).collect::<String>();
                (id.trim().to_string(), g)
            })
        })
        .collect()
}

pub fn corpus() -> Vec<(String, PermGroup)> {
    corpus_files(false)
}

/// Corpus groups plus extra small groups, all of order at most `cap`.
pub fn small_groups(cap: u128) -> Vec<(String, PermGroup)> {
    let extra = [
        "C1", "C5", "C9", "D(C2, C4)", "D(C4, C4)", "Dih6", "Dih7", "Q(S4; (1,2)(3,4))",
        "SUB(S4; (1,2,3,4), (1,3))", "D(S3, S3)", "D(A4, C2)", "W(C3, 2)", "W(S3, 2)",
        "SD(C5, C4, [g1 -> [g1^2]])", "PGL2(5)", "PSL2(11)", "A6",
    ];
    let l = Limits::default();
    let mut out: Vec<(String, PermGroup)> = corpus();
    out.extend(extra.iter().map(|e| (e.to_string(), build(e, &l).unwrap())));
    out.retain(|(_, g)| g.order() <= cap);
    out
}

//! Modules over GF(p), first cohomology and the generator-count invariants
//! `r`, `s`, `t`, `δ` and `h` of an irreducible module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{self, Matrix};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::structure::{Analysis, ChiefFactor};
use crate::table::{GroupTable, Subgroup};

/// Module file contents: one action matrix per group generator, acting on
/// row vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub prime: u32,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<u32>>>,
}

/// A `G`-module `GF(p)^n` whose generator matrices are known to define a
/// representation.
#[derive(Debug, Clone)]
pub struct GfpModule {
    pub prime: u32,
    pub dim: usize,
    pub matrices: Vec<Matrix>,
    /// `C_G(M)`, the kernel of the action.
    pub kernel: PermGroup,
    kernel_sub: Subgroup,
}

impl GfpModule {
    /// Checks dimensions, invertibility and that the matrices respect every
    /// relation of `g`.
    pub fn new(g: &PermGroup, prime: u32, matrices: Vec<Matrix>, limits: &Limits) -> Result<Self> {
        let t = GroupTable::from_group(g, limits.table_cap)?;
        Self::on_table(&t, prime, matrices)
    }

    pub fn from_spec(g: &PermGroup, spec: &ModuleSpec, limits: &Limits) -> Result<Self> {
        if crate::group::prime_factors(spec.prime as u128) != vec![(spec.prime as u128, 1)] {
            return Err(Error::InvalidArgument(format!("{} is not prime", spec.prime)));
        }
        let matrices = spec
            .matrices
            .iter()
            .map(|rows| {
                if rows.len() != spec.dim || rows.iter().any(|r| r.len() != spec.dim) {
                    return Err(Error::InvalidArgument("matrix shape does not match dim".into()));
                }
                Ok(Matrix::from_rows(spec.prime, rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, spec.prime, matrices, limits)
    }

    /// Module of an abelian chief factor of the group behind `t`.
    pub fn from_factor(t: &GroupTable, f: &ChiefFactor) -> Result<Self> {
        let data = f.abelian().ok_or_else(|| {
            Error::InvalidArgument("module of a non-abelian chief factor".into())
        })?;
        Self::on_table(t, data.prime, data.matrices.clone())
    }

    fn on_table(t: &GroupTable, prime: u32, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != t.gens().len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} matrices, got {}",
                t.gens().len(),
                matrices.len()
            )));
        }
        let dim = matrices.first().map_or(0, Matrix::rows);
        for m in &matrices {
            if m.prime() != prime || m.rows() != dim || m.cols() != dim || !m.is_invertible() {
                return Err(Error::InvalidArgument(
                    "module matrices must be invertible and of equal size".into(),
                ));
            }
        }
        let images = representation(t, &matrices).ok_or_else(|| {
            Error::InvalidArgument("matrices do not satisfy the group relations".into())
        })?;
        let mut bits = t.empty_bits();
        for (x, m) in images.iter().enumerate() {
            if m.is_identity() {
                bits.insert(x);
            }
        }
        let kernel_sub = t.subgroup_from_bits(&bits);
        let kernel = t
            .to_perm_group(&kernel_sub)
            .ok_or_else(|| Error::Unsupported("module over a table without permutations".into()))?;
        Ok(GfpModule {
            prime,
            dim,
            matrices,
            kernel,
            kernel_sub,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(Matrix::is_identity)
    }

    /// No proper nonzero invariant subspace: every nonzero vector spins up
    /// to the whole space.
    pub fn is_irreducible(&self) -> bool {
        let p = self.prime;
        gfp::nonzero_combinations(p, self.dim)
            .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
            .all(|v| spin(p, self.dim, &self.matrices, v).len() == self.dim)
    }

    /// Dimension of `End_G(M)` over GF(p).
    pub fn end_dim(&self) -> usize {
        gfp::intertwiners(self.prime, &self.matrices, &self.matrices).len()
    }
}

/// Matrix of every element, extended along the Cayley graph; `None` if the
/// generator matrices violate a relation.
fn representation(t: &GroupTable, matrices: &[Matrix]) -> Option<Vec<Matrix>> {
    let n = t.order();
    let p = matrices.first().map_or(2, Matrix::prime);
    let dim = matrices.first().map_or(0, Matrix::rows);
    let mut images: Vec<Option<Matrix>> = vec![None; n];
    images[0] = Some(Matrix::identity(p, dim));
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let mx = images[x as usize].clone().expect("visited");
        for (&g, mg) in t.gens().iter().zip(matrices) {
            let y = t.mul(x, g);
            let my = mx.mul(mg);
            match &images[y as usize] {
                None => {
                    images[y as usize] = Some(my);
                    queue.push(y);
                }
                Some(existing) if *existing != my => return None,
                Some(_) => {}
            }
        }
    }
    images.into_iter().collect()
}

fn spin(p: u32, dim: usize, matrices: &[Matrix], v: Vec<u32>) -> Vec<Vec<u32>> {
    let mut basis = gfp::span_basis(p, dim, &[v]);
    loop {
        let mut vectors = basis.clone();
        for b in &basis {
            for m in matrices {
                vectors.push(m.apply_row(b));
            }
        }
        let next = gfp::span_basis(p, dim, &vectors);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

/// `dim H¹(G, M)` for the group of table `t` acting through `matrices`
/// (one per table generator).
pub fn h1_table(t: &GroupTable, prime: u32, matrices: &[Matrix]) -> usize {
    let n = matrices.first().map_or(0, Matrix::rows);
    let k = matrices.len();
    let unknowns = n * k;
    if n == 0 {
        return 0;
    }
    // δ(x) = u·C_x for the unknown vector u = (δ(g_1), …, δ(g_k)).
    let mut c: Vec<Option<Matrix>> = vec![None; t.order()];
    c[0] = Some(Matrix::zero(prime, unknowns, n));
    let block = |i: usize| {
        let mut e = Matrix::zero(prime, unknowns, n);
        for j in 0..n {
            e.set(i * n + j, j, 1);
        }
        e
    };
    let blocks: Vec<Matrix> = (0..k).map(block).collect();
    let mut equations: Vec<Vec<u32>> = Vec::new();
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let cx = c[x as usize].clone().expect("visited");
        for (i, &g) in t.gens().iter().enumerate() {
            let y = t.mul(x, g);
            // δ(xg) = δ(x)·ρ(g) + δ(g)
            let cy = cx.mul(&matrices[i]).add(&blocks[i]);
            match &c[y as usize] {
                None => {
                    c[y as usize] = Some(cy);
                    queue.push(y);
                }
                Some(existing) => {
                    let diff = cy.sub(existing);
                    for col in 0..n {
                        let eq: Vec<u32> = (0..unknowns).map(|r| diff.get(r, col)).collect();
                        if eq.iter().any(|&v| v != 0) {
                            equations.push(eq);
                        }
                    }
                }
            }
        }
    }
    let rank = if equations.is_empty() {
        0
    } else {
        gfp::span_basis(prime, unknowns, &equations).len()
    };
    let z1 = unknowns - rank;
    z1 - coboundary_dim(prime, n, matrices)
}

/// `dim B¹ = n − dim M^G`.
fn coboundary_dim(p: u32, n: usize, matrices: &[Matrix]) -> usize {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for m in matrices {
        let d = m.sub(&Matrix::identity(p, n));
        // v·(ρ − 1) = 0: one equation per column.
        for col in 0..n {
            rows.push((0..n).map(|r| d.get(r, col)).collect());
        }
    }
    if rows.is_empty() {
        return 0;
    }
    gfp::span_basis(p, n, &rows).len()
}

/// `dim H¹(G, M)`.
pub fn h1_dimension(g: &PermGroup, m: &GfpModule, limits: &Limits) -> Result<usize> {
    if g.order() > limits.cohomology_cap as u128 {
        return Err(Error::cap("cohomology", g.order(), limits.cohomology_cap as u128));
    }
    let t = GroupTable::from_group(g, limits.cohomology_cap)?;
    Ok(h1_table(&t, m.prime, &m.matrices))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInvariants {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub delta: usize,
    pub h: i64,
    pub end_dim: usize,
}

/// `r`, `s`, `t`, `δ` and `h` of an irreducible module.
pub fn module_invariants(g: &PermGroup, m: &GfpModule, limits: &Limits) -> Result<ModuleInvariants> {
    if g.order() > limits.cohomology_cap as u128 {
        return Err(Error::cap("cohomology", g.order(), limits.cohomology_cap as u128));
    }
    let analysis = Analysis::new(g, limits)?;
    invariants_in(&analysis, m)
}

pub(crate) fn invariants_in(analysis: &Analysis, m: &GfpModule) -> Result<ModuleInvariants> {
    if !m.is_irreducible() {
        return Err(Error::InvalidArgument("module is not irreducible".into()));
    }
    let p = m.prime;
    let ends = gfp::intertwiners(p, &m.matrices, &m.matrices);
    // Schur: End_G(M) is a field, so a basis has no singular member.
    if ends.iter().any(|e| !e.is_invertible()) {
        return Err(Error::InvalidArgument("endomorphism ring is not a field".into()));
    }
    let end_dim = ends.len();
    let t = analysis.table();
    let h1 = h1_table(t, p, &m.matrices);
    let (q, _) = t.quotient(&m.kernel_sub);
    let h1_faithful = h1_table(&q, p, &m.matrices);
    let series = analysis.chief_series()?;
    let mut delta = 0;
    for f in series.factors.iter().filter(|f| !f.frattini) {
        let Some(data) = f.abelian() else { continue };
        if data.prime != p || data.dim != m.dim || f.centralizer.bits != m.kernel_sub.bits {
            continue;
        }
        let space = gfp::intertwiners(p, &m.matrices, &data.matrices);
        if gfp::find_invertible(p, &space, 1 << 20).is_some() {
            delta += 1;
        }
    }
    let r = m.dim / end_dim;
    let s = h1 / end_dim;
    let tt = h1_faithful / end_dim;
    let h = if m.is_trivial() {
        delta as i64
    } else {
        (s as i64 - 1).div_euclid(r as i64) + 2
    };
    Ok(ModuleInvariants {
        r,
        s,
        t: tt,
        delta,
        h,
        end_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn cyclic(n: usize) -> PermGroup {
        let images = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        PermGroup::new(n, vec![Permutation::from_images(images).unwrap()]).unwrap()
    }

    #[test]
    fn h1_of_small_cyclic_modules() {
        let l = Limits::default();
        let c2 = cyclic(2);
        let inv3 = GfpModule::new(&c2, 3, vec![Matrix::from_rows(3, &[vec![2]])], &l).unwrap();
        assert_eq!(h1_dimension(&c2, &inv3, &l).unwrap(), 0);
        let triv2 = GfpModule::new(&c2, 2, vec![Matrix::identity(2, 1)], &l).unwrap();
        assert_eq!(h1_dimension(&c2, &triv2, &l).unwrap(), 1);
        let c3 = cyclic(3);
        let triv = GfpModule::new(&c3, 2, vec![Matrix::identity(2, 1)], &l).unwrap();
        assert_eq!(h1_dimension(&c3, &triv, &l).unwrap(), 0);
    }

    #[test]
    fn relation_violation_rejected() {
        let l = Limits::default();
        // A generator of order 3 cannot act by -1 on GF(5).
        let bad = GfpModule::new(&cyclic(3), 5, vec![Matrix::from_rows(5, &[vec![4]])], &l);
        assert!(bad.is_err());
    }
}

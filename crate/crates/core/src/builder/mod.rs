//! A small language for building permutation groups.
//!
//! ```text
//! expr   := ATOM | D(expr, …) | W(expr, n) | SD(expr, expr, action)
//!         | Q(expr; words) | SUB(expr; words) | CROWN(expr, k) | FAMILY(t)
//! ATOM   := Cn | Sn | An | Dihn | K4 | PSL2(q) | PGL2(q)
//! action := [g1 -> [word, …]; …]
//! ```
//!
//! Words multiply generators `g1, g2, …` of the group they refer to and
//! cycle literals with 1-based points, e.g. `g1^-1*g2*(1,2,3)`.
//!
//! Degrees: direct products add degrees, `W(X, n)` has degree `n·deg X`,
//! semidirect products have degree `deg N + deg H` when every automorphism
//! is induced by a point permutation and `|N| + deg H` otherwise,
//! quotients act on cosets and crown powers have degree `k·deg L`.

pub mod ast;
pub mod atoms;
pub mod families;
mod parser;
pub mod semidirect;

pub use ast::{ActionMap, Atom, Ex3Action, Family, GroupExpr, Letter, Word};
pub use parser::parse;

use crate::crowns;
use crate::error::{Error, Result};
use crate::group::{self, PermGroup};
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::structure;

/// Parses and evaluates `text`.
pub fn build(text: &str, limits: &Limits) -> Result<PermGroup> {
    evaluate(&parse(text)?, limits)
}

/// Evaluates an expression. Evaluation is deterministic.
pub fn evaluate(e: &GroupExpr, limits: &Limits) -> Result<PermGroup> {
    let g = match e {
        GroupExpr::Atom(a) => match *a {
            Atom::Cyclic(n) => atoms::cyclic(n)?,
            Atom::Symmetric(n) => atoms::symmetric(n)?,
            Atom::Alternating(n) => atoms::alternating(n)?,
            Atom::Dihedral(n) => atoms::dihedral(n)?,
            Atom::Klein => atoms::klein(),
            Atom::Psl2(q) => atoms::psl2(q)?,
            Atom::Pgl2(q) => atoms::pgl2(q)?,
        },
        GroupExpr::DirectProduct(xs) => {
            let factors = xs
                .iter()
                .map(|x| evaluate(x, limits))
                .collect::<Result<Vec<_>>>()?;
            let order: Option<u128> = factors.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.order()));
            check_projected(order, limits)?;
            direct_product(&factors)?
        }
        GroupExpr::WreathCyclic(x, n) => {
            let x = evaluate(x, limits)?;
            wreath_cyclic(&x, *n, limits)?
        }
        GroupExpr::Semidirect(n, h, action) => {
            let n = evaluate(n, limits)?;
            let h = evaluate(h, limits)?;
            check_projected(n.order().checked_mul(h.order()), limits)?;
            let autos = action_images(&n, &h, action)?;
            semidirect::semidirect(&n, &h, &autos, limits)?.0
        }
        GroupExpr::Quotient(x, words) => {
            let x = evaluate(x, limits)?;
            let elems = eval_words(&x, words)?;
            let normal = group::normal_closure(&x, &elems)?;
            group::quotient(&x, &normal, limits.element_cap)?.0
        }
        GroupExpr::Subgroup(x, words) => {
            let x = evaluate(x, limits)?;
            let elems = eval_words(&x, words)?;
            for y in &elems {
                if !x.contains(y) {
                    return Err(Error::NotMember);
                }
            }
            group::closure(x.degree(), &elems)?
        }
        GroupExpr::CrownPower(x, k) => {
            let l = evaluate(x, limits)?;
            let a = structure::socle(&l, limits)?;
            crowns::crown_power(&l, &a, *k, limits)?
        }
        GroupExpr::Family(f, t) => match f {
            Family::Ex1 => families::ex1(*t)?,
            Family::Ex2a => families::ex2a()?,
            Family::Ex2b => families::ex2b(*t)?,
            Family::Ex3(action) => families::ex3(*t, *action, limits)?,
            Family::Wreath => families::wreath(*t, limits)?,
        },
    };
    if g.order() > limits.max_order {
        return Err(Error::cap("group order", g.order(), limits.max_order));
    }
    Ok(g)
}

fn check_projected(order: Option<u128>, limits: &Limits) -> Result<()> {
    match order {
        Some(o) if o <= limits.max_order => Ok(()),
        _ => Err(Error::cap("group order", order.unwrap_or(u128::MAX), limits.max_order)),
    }
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(factors: &[PermGroup]) -> Result<PermGroup> {
    let total: usize = factors.iter().map(PermGroup::degree).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        gens.extend(f.generators().iter().map(|x| x.shifted(offset, total)));
        offset += f.degree();
    }
    PermGroup::new(total.max(1), if total == 0 { Vec::new() } else { gens })
}

/// `X ≀ C_n` on `n` blocks: `X` on the first block and the block rotation.
pub fn wreath_cyclic(x: &PermGroup, n: usize, limits: &Limits) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("W(X, n) needs n ≥ 1".into()));
    }
    let projected = x
        .order()
        .checked_pow(n as u32)
        .and_then(|o| o.checked_mul(n as u128));
    check_projected(projected, limits)?;
    let d = x.degree();
    let total = d * n;
    let mut gens: Vec<Permutation> = x.generators().iter().map(|g| g.shifted(0, total)).collect();
    if n > 1 {
        gens.push(Permutation::from_images(
            (0..total as u32).map(|p| (p + d as u32) % total as u32).collect(),
        )?);
    }
    let w = PermGroup::new(total, gens)?;
    debug_assert_eq!(Some(w.order()), projected);
    Ok(w)
}

/// Evaluates a word over the generators of `g`.
pub fn eval_word(g: &PermGroup, w: &Word) -> Result<Permutation> {
    let degree = g.degree();
    let mut acc = Permutation::identity(degree);
    for letter in &w.0 {
        let (base, power) = match letter {
            Letter::Gen { index, power } => {
                let x = g.generators().get(*index).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "generator g{} does not exist (the group has {})",
                        index + 1,
                        g.generators().len()
                    ))
                })?;
                (x.clone(), *power)
            }
            Letter::Cycles { cycles, power } => (Permutation::from_cycles(degree, cycles)?, *power),
            Letter::Group { word, power } => (eval_word(g, word)?, *power),
        };
        acc = acc.mul(&base.pow(power));
    }
    Ok(acc)
}

fn eval_words(g: &PermGroup, words: &[Word]) -> Result<Vec<Permutation>> {
    words.iter().map(|w| eval_word(g, w)).collect()
}

fn action_images(n: &PermGroup, h: &PermGroup, action: &ActionMap) -> Result<Vec<Vec<Permutation>>> {
    let mut autos: Vec<Option<Vec<Permutation>>> = vec![None; h.generators().len()];
    for (g, words) in &action.images {
        let slot = autos.get_mut(*g).ok_or_else(|| {
            Error::InvalidAction(format!("acting group has no generator g{}", g + 1))
        })?;
        if slot.is_some() {
            return Err(Error::InvalidAction(format!("g{} is mapped twice", g + 1)));
        }
        *slot = Some(eval_words(n, words)?);
    }
    Ok(autos
        .into_iter()
        .map(|a| a.unwrap_or_else(|| n.generators().to_vec()))
        .collect())
}

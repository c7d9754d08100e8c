//! Buchberger's algorithm with reduced Gröbner bases, over the rationals
//! and over the parameter fraction field k(ā), together with the ideal
//! operations the discussion needs: elimination of the variable block,
//! intersection, quotient, radical membership via the Rabinowitsch trick,
//! quasi-radical closure and radical containment.
//!
//! Pair selection follows the normal strategy (smallest lcm of leading
//! power products under the ambient order), with Buchberger's coprimality
//! and chain criteria; ties break on the index pair.  The result is fully
//! deterministic.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::gcd::{self, content_x, gcd as poly_gcd, squarefree_part};
use crate::poly::{Context, Monomial, Poly, Rat};

/// An ideal given by generators; an empty list denotes the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(gens: Vec<Poly>) -> Ideal {
        Ideal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when the generators visibly include a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, "]")
    }
}

/// Multivariate division under the ambient order.  Returns the remainder
/// and, when requested, cofactors with `f = Σ cofactor_i · g_i + rem`.
pub fn normal_form(f: &Poly, basis: &[Poly], track: bool) -> (Poly, Option<Vec<Poly>>) {
    let ctx = f.ctx().clone();
    let mut cofs = if track {
        Some(vec![Poly::zero(&ctx); basis.len()])
    } else {
        None
    };
    let mut rem_terms: Vec<(Monomial, Rat)> = Vec::new();
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let lm = work.leading_monomial().clone();
        let lc = work.leading_coeff().clone();
        for (k, g) in basis.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if g.leading_monomial().divides(&lm) {
                let m = lm.div(g.leading_monomial());
                let c = &lc / g.leading_coeff();
                work = work.sub(&g.mul_term(&m, &c));
                if let Some(cofs) = cofs.as_mut() {
                    cofs[k] = cofs[k].add(&Poly::from_terms(&ctx, vec![(m, c)]));
                }
                continue 'outer;
            }
        }
        // irreducible leading term: move it to the remainder
        rem_terms.push((lm.clone(), lc.clone()));
        work = work.sub(&Poly::from_terms(&ctx, vec![(lm, lc)]));
    }
    (Poly::from_terms(&ctx, rem_terms), cofs)
}

/// Standard S-polynomial under the ambient order.
pub fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    assert!(!f.is_zero() && !g.is_zero());
    let lcm = f.leading_monomial().lcm(g.leading_monomial());
    let mf = lcm.div(f.leading_monomial());
    let mg = lcm.div(g.leading_monomial());
    let cf = Rat::one() / f.leading_coeff().clone();
    let cg = Rat::one() / g.leading_coeff().clone();
    f.mul_term(&mf, &cf).sub(&g.mul_term(&mg, &cg))
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Reduced Gröbner basis over the rationals wrt the ambient order of the
/// generators' context.  Elements come out monic, sorted ascending by
/// leading monomial.  The zero ideal yields an empty list, the unit ideal
/// `[1]`.
pub fn reduced_gb(gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let ctx = first.ctx().clone();
    if basis.iter().any(|p| p.is_constant()) {
        return vec![Poly::one(&ctx)];
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }

    while !pending.is_empty() {
        // normal selection strategy
        let mut best = 0;
        let mut best_lcm = {
            let (i, j) = pending[0];
            basis[i].leading_monomial().lcm(basis[j].leading_monomial())
        };
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let lcm = basis[i].leading_monomial().lcm(basis[j].leading_monomial());
            if ctx.cmp_mono(&lcm.0, &best_lcm.0) == std::cmp::Ordering::Less {
                best = k;
                best_lcm = lcm;
            }
        }
        let (i, j) = pending.remove(best);
        let (lmi, lmj) = (basis[i].leading_monomial(), basis[j].leading_monomial());
        if lmi.coprime(lmj) {
            continue;
        }
        // chain criterion
        let lcm = best_lcm;
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().divides(&lcm)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let (r, _) = normal_form(&s, &basis, false);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Poly::one(&ctx)];
        }
        let new = basis.len();
        basis.push(r.monic());
        for k in 0..new {
            pending.push((k, new));
        }
        if std::env::var("GROBSYS_GB_TRACE").is_ok() {
            let max_terms = basis.iter().map(|p| p.terms().len()).max().unwrap();
            eprintln!("gb: basis {} pending {} max-terms {}", basis.len(), pending.len(), max_terms);
        }
    }

    interreduce(basis, &ctx)
}

fn interreduce(basis: Vec<Poly>, ctx: &Arc<Context>) -> Vec<Poly> {
    // minimalize: drop elements whose lpp is divisible by another's
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        ctx.cmp_mono(&basis[a].leading_monomial().0, &basis[b].leading_monomial().0)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<Poly> = Vec::new();
    for idx in order {
        let lm = basis[idx].leading_monomial();
        if !kept.iter().any(|k| k.leading_monomial().divides(lm)) {
            kept.push(basis[idx].clone());
        }
    }
    // tail-reduce each element against the others
    let reduced: Vec<Poly> = (0..kept.len())
        .map(|i| {
            let others: Vec<Poly> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&kept[i], &others, false).0.monic()
        })
        .collect();
    reduced
}

/// Reduced Gröbner basis with a transformation matrix: `gb[k] = Σ
/// rows[k][j] · gens[j]` exactly.
pub fn reduced_gb_with_transform(gens: &[Poly]) -> (Vec<Poly>, Vec<Vec<Poly>>) {
    let nonzero: Vec<(usize, &Poly)> = gens
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let Some((_, first)) = nonzero.first() else {
        return (Vec::new(), Vec::new());
    };
    let ctx = first.ctx().clone();
    let zero_row = || vec![Poly::zero(&ctx); gens.len()];

    let mut basis: Vec<Poly> = Vec::new();
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for (orig, p) in &nonzero {
        let inv = Rat::one() / p.leading_coeff().clone();
        basis.push(p.monic());
        let mut row = zero_row();
        row[*orig] = Poly::constant(&ctx, inv);
        rows.push(row);
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }

    while !pending.is_empty() {
        let mut best = 0;
        let mut best_lcm = {
            let (i, j) = pending[0];
            basis[i].leading_monomial().lcm(basis[j].leading_monomial())
        };
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let lcm = basis[i].leading_monomial().lcm(basis[j].leading_monomial());
            if ctx.cmp_mono(&lcm.0, &best_lcm.0) == std::cmp::Ordering::Less {
                best = k;
                best_lcm = lcm;
            }
        }
        let (i, j) = pending.remove(best);
        if basis[i]
            .leading_monomial()
            .coprime(basis[j].leading_monomial())
        {
            continue;
        }
        let lcm = best_lcm;
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().divides(&lcm)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chained {
            continue;
        }
        let mi = lcm.div(basis[i].leading_monomial());
        let mj = lcm.div(basis[j].leading_monomial());
        let s = basis[i]
            .mul_term(&mi, &Rat::one())
            .sub(&basis[j].mul_term(&mj, &Rat::one()));
        let mut row: Vec<Poly> = rows[i]
            .iter()
            .zip(rows[j].iter())
            .map(|(a, b)| a.mul_term(&mi, &Rat::one()).sub(&b.mul_term(&mj, &Rat::one())))
            .collect();
        let (r, cofs) = normal_form(&s, &basis, true);
        let cofs = cofs.unwrap();
        for (k, c) in cofs.iter().enumerate() {
            if !c.is_zero() {
                for (slot, rk) in row.iter_mut().zip(rows[k].iter()) {
                    *slot = slot.sub(&c.mul(rk));
                }
            }
        }
        if r.is_zero() {
            continue;
        }
        let inv = Rat::one() / r.leading_coeff().clone();
        basis.push(r.monic());
        rows.push(row.into_iter().map(|p| p.scale(&inv)).collect());
        let new = basis.len() - 1;
        for k in 0..new {
            pending.push((k, new));
        }
    }

    // minimalize + tail-reduce, updating rows
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        ctx.cmp_mono(&basis[a].leading_monomial().0, &basis[b].leading_monomial().0)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for idx in order {
        let lm = basis[idx].leading_monomial();
        if !kept
            .iter()
            .any(|&k| basis[k].leading_monomial().divides(lm))
        {
            kept.push(idx);
        }
    }
    let mut out_polys = Vec::with_capacity(kept.len());
    let mut out_rows = Vec::with_capacity(kept.len());
    for &i in &kept {
        let others: Vec<Poly> = kept
            .iter()
            .filter(|&&k| k != i)
            .map(|&k| basis[k].clone())
            .collect();
        let other_rows: Vec<&Vec<Poly>> = kept
            .iter()
            .filter(|&&k| k != i)
            .map(|&k| &rows[k])
            .collect();
        let (r, cofs) = normal_form(&basis[i], &others, true);
        let cofs = cofs.unwrap();
        let mut row = rows[i].clone();
        for (k, c) in cofs.iter().enumerate() {
            if !c.is_zero() {
                for (slot, rk) in row.iter_mut().zip(other_rows[k].iter()) {
                    *slot = slot.sub(&c.mul(rk));
                }
            }
        }
        out_polys.push(r);
        out_rows.push(row);
    }
    (out_polys, out_rows)
}

/// Membership in the ideal spanned by `gens` (normal form against its
/// reduced Gröbner basis vanishes).
pub fn ideal_member(f: &Poly, gens: &[Poly]) -> bool {
    if f.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let gb = reduced_gb(gens);
    normal_form(f, &gb, false).0.is_zero()
}

const AUX: &str = "#t";

fn lift_all(ext: &Arc<Context>, polys: &[Poly]) -> Vec<Poly> {
    polys.iter().map(|p| p.lift_front(ext)).collect()
}

/// Generators of `I ∩ J` via the auxiliary-variable construction
/// `t·I + (1−t)·J` with `t` eliminated.
pub fn intersect(a: &[Poly], b: &[Poly], ctx: &Arc<Context>) -> Vec<Poly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ext = ctx.extend_front(AUX);
    let t = Poly::var(&ext, AUX);
    let one_minus_t = Poly::one(&ext).sub(&t);
    let mut gens: Vec<Poly> = Vec::new();
    for p in lift_all(&ext, a) {
        gens.push(t.mul(&p));
    }
    for p in lift_all(&ext, b) {
        gens.push(one_minus_t.mul(&p));
    }
    let gb = reduced_gb(&gens);
    gb.into_iter()
        .filter(|p| p.degree_of(0) == 0)
        .map(|p| p.drop_front(ctx))
        .collect()
}

/// Ideal quotient `I : f`, computed as `intersect(I, ⟨f⟩)` followed by
/// exact division of each generator by `f`.
pub fn quotient(a: &[Poly], f: &Poly, ctx: &Arc<Context>) -> Vec<Poly> {
    assert!(!f.is_zero(), "quotient by zero");
    if a.is_empty() {
        return Vec::new();
    }
    if f.is_constant() {
        return reduced_gb(a);
    }
    let inter = intersect(a, std::slice::from_ref(f), ctx);
    let quots: Vec<Poly> = inter
        .iter()
        .map(|g| g.exact_div(f).expect("intersection elements divisible"))
        .collect();
    reduced_gb(&quots)
}

/// Generators of `I ∩ k[ā]`: the parameter-only elements of the reduced
/// Gröbner basis under the product order (the x-block dominates).
pub fn eliminate_x(gens: &[Poly]) -> Vec<Poly> {
    let gb = reduced_gb(gens);
    gb.into_iter().filter(|p| p.is_param_only()).collect()
}

/// Elimination of an arbitrary set of variables, for callers that do not
/// eliminate a leading block: the kept names move to the back of a fresh
/// lex/lex context.
pub fn eliminate(gens: &[Poly], drop: &[&str], ctx: &Arc<Context>) -> Vec<Poly> {
    let keep: Vec<&str> = ctx
        .xvars()
        .iter()
        .chain(ctx.avars().iter())
        .map(|s| s.as_str())
        .filter(|n| !drop.contains(n))
        .collect();
    let perm = Context::new(drop, &keep, crate::order::OrderKind::Lex, crate::order::OrderKind::Lex);
    let moved: Vec<Poly> = gens.iter().map(|p| rehome(p, &perm)).collect();
    let gb = reduced_gb(&moved);
    gb.into_iter()
        .filter(|p| p.is_param_only())
        .map(|p| rehome(&p, ctx))
        .collect()
}

/// Maps a polynomial into another context by variable name.
pub fn rehome(p: &Poly, target: &Arc<Context>) -> Poly {
    let src = p.ctx();
    let map: Vec<Option<usize>> = (0..src.num_vars())
        .map(|i| target.index_of(src.name(i)))
        .collect();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut exps = vec![0u32; target.num_vars()];
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let j = map[i].unwrap_or_else(|| {
                        panic!("variable `{}` missing in target context", src.name(i))
                    });
                    exps[j] = e;
                }
            }
            (Monomial(exps), c.clone())
        })
        .collect();
    Poly::from_terms(target, terms)
}

/// Exact radical membership `f ∈ √⟨gens⟩` via the Rabinowitsch trick:
/// `1 ∈ ⟨gens⟩ + ⟨1 − t·f⟩`.
pub fn saturation_membership(f: &Poly, gens: &[Poly], ctx: &Arc<Context>) -> bool {
    if f.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let ext = ctx.extend_front(AUX);
    let t = Poly::var(&ext, AUX);
    let mut all = lift_all(&ext, gens);
    all.push(Poly::one(&ext).sub(&t.mul(&f.lift_front(&ext))));
    let gb = reduced_gb(&all);
    gb.len() == 1 && gb[0].is_constant()
}

/// Quasi-radical closure: fixpoint of replacing every reduced-GB generator
/// by its squarefree part.  Same variety as the radical; generators come
/// out squarefree, primitive and positive-led.
pub fn quasi_radical(gens: &[Poly]) -> Vec<Poly> {
    let mut gb: Vec<Poly> = reduced_gb(gens)
        .iter()
        .map(|p| p.normalized_primitive())
        .collect();
    loop {
        let sq: Vec<Poly> = gb.iter().map(squarefree_part).collect();
        if sq == gb {
            return gb;
        }
        gb = reduced_gb(&sq)
            .iter()
            .map(|p| p.normalized_primitive())
            .collect();
    }
}

/// `J ⊆ √I`: every generator of `J` is a radical member of `I`.
pub fn ideal_contains(i_gens: &[Poly], j_gens: &[Poly], ctx: &Arc<Context>) -> bool {
    j_gens
        .iter()
        .all(|g| saturation_membership(g, i_gens, ctx))
}

/// Mutual radical containment.
pub fn equal_up_to_radical(a: &[Poly], b: &[Poly], ctx: &Arc<Context>) -> bool {
    ideal_contains(a, b, ctx) && ideal_contains(b, a, ctx)
}

// ---------------------------------------------------------------------------
// Gröbner bases over K = k(ā), fraction-free.
//
// A polynomial over K is represented by any S-polynomial in the same
// K-line; the representative is kept primitive: integer coefficients,
// content 1, parametric content 1, positive leading coefficient.  S-pairs
// and reduction steps cross-multiply by the parametric leading coefficients
// (nonzero in K by definition), so no rational functions ever appear.
// ---------------------------------------------------------------------------

/// Normalizes a K-representative: removes the parametric content of the
/// x-coefficients and the rational content.
pub fn k_normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_x(p);
    let q = if c.is_constant() {
        p.clone()
    } else {
        p.exact_div(&c).expect("content divides")
    };
    q.normalized_primitive()
}

fn k_spoly(p: &Poly, q: &Poly) -> Poly {
    let (up, uq) = (p.lpp_x(), q.lpp_x());
    let u = up.lcm(&uq);
    let (cp, cq) = (p.lc_x(), q.lc_x());
    let d = poly_gcd(&cp, &cq);
    let fp = cq.exact_div(&d).expect("gcd divides");
    let fq = cp.exact_div(&d).expect("gcd divides");
    let left = p.mul(&fp).mul_term(&u.div(&up), &Rat::one());
    let right = q.mul(&fq).mul_term(&u.div(&uq), &Rat::one());
    left.sub(&right)
}

/// Full normal form of a K-representative against a list of
/// K-representatives; reduction wrt the x-block leading power products.
pub fn k_normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let ctx = f.ctx().clone();
    let mut rem = Poly::zero(&ctx);
    let mut work = f.clone();
    while !work.is_zero() {
        let u = work.lpp_x();
        let mut reduced = false;
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let ug = g.lpp_x();
            if ug.divides(&u) {
                let cg = g.lc_x();
                let cw = work.lc_x();
                let d = poly_gcd(&cg, &cw);
                let mult = cg.exact_div(&d).expect("gcd divides");
                let sub = cw.exact_div(&d).expect("gcd divides");
                work = work
                    .mul(&mult)
                    .sub(&g.mul(&sub).mul_term(&u.div(&ug), &Rat::one()));
                rem = rem.mul(&mult);
                // joint content removal keeps the pair coherent
                if !work.is_zero() {
                    let c = poly_gcd(&content_x(&rem), &content_x(&work));
                    if !c.is_constant() && !c.is_zero() {
                        rem = rem.exact_div(&c).expect("content divides");
                        work = work.exact_div(&c).expect("content divides");
                    }
                }
                reduced = true;
                break;
            }
        }
        if !reduced {
            let group = work.leading_x_group();
            rem = rem.add(&group);
            work = work.sub(&group);
        }
    }
    k_normalize(&rem)
}

/// Reduced Gröbner basis of `⟨gens⟩` over `K = k(ā)` wrt the x-block order,
/// returned as primitive S-representatives of the monic elements (i.e. the
/// sub-lifted basis `{d_g·g}`), sorted ascending by leading power product.
pub fn reduced_gb_k(gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = gens
        .iter()
        .map(|p| k_normalize(p))
        .filter(|p| !p.is_zero())
        .collect();
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let ctx = first.ctx().clone();
    // an element without x-variables is a nonzero K-constant
    if basis.iter().any(|p| p.lpp_x().is_one()) {
        return vec![Poly::one(&ctx)];
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }

    while !pending.is_empty() {
        let mut best = 0;
        let mut best_lcm = {
            let (i, j) = pending[0];
            basis[i].lpp_x().lcm(&basis[j].lpp_x())
        };
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let lcm = basis[i].lpp_x().lcm(&basis[j].lpp_x());
            if ctx.cmp_mono(&lcm.0, &best_lcm.0) == std::cmp::Ordering::Less {
                best = k;
                best_lcm = lcm;
            }
        }
        let (i, j) = pending.remove(best);
        if basis[i].lpp_x().coprime(&basis[j].lpp_x()) {
            continue;
        }
        let lcm = best_lcm;
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lpp_x().divides(&lcm)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chained {
            continue;
        }
        let s = k_spoly(&basis[i], &basis[j]);
        let r = k_normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.lpp_x().is_one() {
            return vec![Poly::one(&ctx)];
        }
        let new = basis.len();
        basis.push(r);
        for k in 0..new {
            pending.push((k, new));
        }
    }

    // minimalize
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        ctx.cmp_mono(&basis[a].lpp_x().0, &basis[b].lpp_x().0)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<Poly> = Vec::new();
    for idx in order {
        let u = basis[idx].lpp_x();
        if !kept.iter().any(|k| k.lpp_x().divides(&u)) {
            kept.push(basis[idx].clone());
        }
    }
    // tail-reduce
    let out: Vec<Poly> = (0..kept.len())
        .map(|i| {
            let others: Vec<Poly> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            k_normal_form(&kept[i], &others)
        })
        .collect();
    out
}

/// gcd-based lcm of a list of parameter polynomials.
pub fn poly_lcm_many<'a>(polys: impl IntoIterator<Item = &'a Poly>, ctx: &Arc<Context>) -> Poly {
    let mut acc = Poly::one(ctx);
    for p in polys {
        acc = gcd::lcm(&acc, p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::Context;

    fn polys(ctx: &Arc<Context>, texts: &[&str]) -> Vec<Poly> {
        texts.iter().map(|t| parse_poly(ctx, t).unwrap()).collect()
    }

    #[test]
    fn normal_form_division() {
        // coefficients in k(a): x^2 + a*x reduced by x + y leaves y^2 - a*y
        let ctx = Context::lex(&["x", "y"], &["a"]);
        let f = parse_poly(&ctx, "x^2 + a*x").unwrap();
        let g = parse_poly(&ctx, "x + y").unwrap();
        let (r, cofs) = normal_form(&f, &[g.clone()], true);
        assert_eq!(r, parse_poly(&ctx, "y^2 - a*y").unwrap());
        // exact cofactor identity
        let recomposed = cofs.unwrap()[0].mul(&g).add(&r);
        assert_eq!(recomposed, f);

        assert!(normal_form(&f, &[f.clone()], false).0.is_zero());
        assert!(normal_form(&Poly::zero(&ctx), &[g], false).0.is_zero());
    }

    #[test]
    fn s_polynomial_examples() {
        let ctx = Context::lex(&["x", "y"], &["a"]);
        let f = parse_poly(&ctx, "x + y").unwrap();
        let g = parse_poly(&ctx, "x^2 + a*x").unwrap();
        assert_eq!(
            s_polynomial(&f, &g),
            parse_poly(&ctx, "x*y - a*x").unwrap()
        );
        assert!(s_polynomial(&f, &f).is_zero());
        let x = parse_poly(&ctx, "x").unwrap();
        let y = parse_poly(&ctx, "y").unwrap();
        assert!(s_polynomial(&x, &y).is_zero());
    }

    #[test]
    fn reduced_gb_small_cases() {
        let ctx = Context::lex(&["x", "y"], &[]);
        assert_eq!(
            reduced_gb(&polys(&ctx, &["x"])),
            polys(&ctx, &["x"])
        );
        assert_eq!(
            reduced_gb(&polys(&ctx, &["x + y", "x - y"])),
            polys(&ctx, &["y", "x"])
        );
    }

    #[test]
    fn elimination_via_product_order() {
        let ctx = Context::lex(&["x"], &["a", "b"]);
        let gens = polys(&ctx, &["x - a", "x^2 - b"]);
        let eliminated = eliminate_x(&gens);
        assert_eq!(eliminated, polys(&ctx, &["a^2 - b"]));

        assert!(eliminate_x(&polys(&ctx, &["x"])).is_empty());
        assert_eq!(eliminate_x(&polys(&ctx, &["a"])), polys(&ctx, &["a"]));
    }

    #[test]
    fn intersection_examples() {
        let ctx = Context::lex(&["x", "y"], &[]);
        let i = polys(&ctx, &["x"]);
        let j = polys(&ctx, &["y"]);
        assert_eq!(intersect(&i, &j, &ctx), polys(&ctx, &["x*y"]));

        let ctx = Context::lex(&[], &["a"]);
        let a = polys(&ctx, &["a"]);
        assert_eq!(intersect(&a, &a, &ctx), a);
        let p = polys(&ctx, &["a + 2"]);
        let q = polys(&ctx, &["a - 1"]);
        assert_eq!(
            intersect(&p, &q, &ctx),
            polys(&ctx, &["a^2 + a - 2"]) // (a+2)(a-1)
        );
    }

    #[test]
    fn quotient_examples() {
        let ctx = Context::lex(&["x", "y"], &[]);
        let xy = polys(&ctx, &["x*y"]);
        let x = parse_poly(&ctx, "x").unwrap();
        assert_eq!(quotient(&xy, &x, &ctx), polys(&ctx, &["y"]));
        assert_eq!(
            quotient(&xy, &Poly::one(&ctx), &ctx),
            polys(&ctx, &["x*y"])
        );
    }

    #[test]
    fn radical_membership() {
        let ctx = Context::lex(&[], &["a"]);
        let i = polys(&ctx, &["a^2*(a+2)"]);
        let f = parse_poly(&ctx, "a*(a+2)").unwrap();
        assert!(saturation_membership(&f, &i, &ctx));
        let g = parse_poly(&ctx, "a - 1").unwrap();
        assert!(!saturation_membership(&g, &polys(&ctx, &["a^2"]), &ctx));
    }

    #[test]
    fn quasi_radical_examples() {
        let ctx = Context::lex(&[], &["a"]);
        assert_eq!(
            quasi_radical(&polys(&ctx, &["a^2"])),
            polys(&ctx, &["a"])
        );
        assert_eq!(
            quasi_radical(&polys(&ctx, &["a^2 - 1"])),
            polys(&ctx, &["a^2 - 1"])
        );
        let ctx = Context::lex(&[], &["x", "y"]);
        assert_eq!(
            quasi_radical(&polys(&ctx, &["x^2", "x*y", "y^2"])),
            polys(&ctx, &["y", "x"])
        );
    }

    #[test]
    fn containment_up_to_radical() {
        let ctx = Context::lex(&[], &["a", "b"]);
        let a = polys(&ctx, &["a"]);
        let a2 = polys(&ctx, &["a^2"]);
        let b = polys(&ctx, &["b"]);
        assert!(ideal_contains(&a, &a2, &ctx));
        assert!(!ideal_contains(&a, &b, &ctx));
    }

    #[test]
    fn k_basis_of_symmetric_linear_system() {
        // typo-corrected worked example: three symmetric linear equations
        let ctx = Context::lex(&["x", "y", "z"], &["a", "b"]);
        let gens = polys(
            &ctx,
            &["a*x + y + z + b", "x + a*y + z + b", "x + y + a*z + b"],
        );
        let gb = reduced_gb_k(&gens);
        assert_eq!(
            gb,
            polys(&ctx, &["(a+2)*z + b", "(a+2)*y + b", "(a+2)*x + b"])
        );
    }

    #[test]
    fn k_basis_collapses_unit_ideal() {
        let ctx = Context::lex(&["x"], &["a"]);
        let gens = polys(&ctx, &["a*x", "x + 1", "x^2"]);
        // x ∈ ideal and x+1 ∈ ideal over K, so the ideal is K[x]
        assert_eq!(reduced_gb_k(&gens), vec![Poly::one(&ctx)]);
    }

    #[test]
    fn transform_rows_reproduce_basis() {
        let ctx = Context::lex(&["x", "y"], &["a"]);
        let gens = polys(&ctx, &["x*y - 1", "a*y^2 - x", "x^2 + y"]);
        let (gb, rows) = reduced_gb_with_transform(&gens);
        assert!(!gb.is_empty());
        for (g, row) in gb.iter().zip(rows.iter()) {
            let mut acc = Poly::zero(&ctx);
            for (c, src) in row.iter().zip(gens.iter()) {
                acc = acc.add(&c.mul(src));
            }
            assert_eq!(&acc, g, "transform row must recompose the element");
        }
        // and the transform-tracked basis spans the same ideal
        assert_eq!(gb, reduced_gb(&gens));
    }
}

//! Multivariate gcd over the rationals via a primitive pseudo-remainder
//! sequence on a recursive univariate view, plus the derived operations:
//! squarefree parts, lcm, and gcd-free (coprime squarefree) factor bases.
//!
//! Irreducible factorization is deliberately absent; everywhere a factor
//! basis is needed, pairwise-coprime squarefree polynomials stand in for
//! the irreducible factors.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::poly::{Monomial, Poly, Rat};

/// Greatest common divisor, normalized primitive with positive leading
/// coefficient.  `gcd(p, 0)` is the normalization of `p`.
pub fn gcd(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.normalized_primitive();
    }
    if q.is_zero() {
        return p.normalized_primitive();
    }
    let p = p.normalized_primitive();
    let q = q.normalized_primitive();
    if p.is_constant() || q.is_constant() {
        return Poly::one(p.ctx());
    }
    gcd_inner(&p, &q).normalized_primitive()
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Poly>, ctx: &std::sync::Arc<crate::poly::Context>) -> Poly {
    let mut acc = Poly::zero(ctx);
    for p in polys {
        acc = gcd(&acc, p);
        if acc.is_constant() && !acc.is_zero() {
            return acc;
        }
    }
    acc
}

pub fn lcm(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() || q.is_zero() {
        return Poly::zero(p.ctx());
    }
    let g = gcd(p, q);
    p.mul(q)
        .exact_div(&g)
        .expect("gcd divides product")
        .normalized_primitive()
}

fn gcd_inner(p: &Poly, q: &Poly) -> Poly {
    debug_assert!(!p.is_zero() && !q.is_zero());
    if p.is_constant() || q.is_constant() {
        return Poly::one(p.ctx());
    }
    // Main variable: the last context variable occurring in either operand.
    let n = p.ctx().num_vars();
    let v = (0..n)
        .rev()
        .find(|&v| p.degree_of(v) > 0 || q.degree_of(v) > 0)
        .expect("nonconstant polynomial has a variable");
    let (dp, dq) = (p.degree_of(v), q.degree_of(v));
    if dp == 0 {
        // v occurs only in q: common divisors are free of v
        return gcd_inner(p, &content_in(q, v));
    }
    if dq == 0 {
        return gcd_inner(&content_in(p, v), q);
    }
    let cont_p = content_in(p, v);
    let cont_q = content_in(q, v);
    let pp_p = p.exact_div(&cont_p).expect("content divides");
    let pp_q = q.exact_div(&cont_q).expect("content divides");
    let cont_gcd = gcd(&cont_p, &cont_q);

    // Primitive PRS on the v-primitive parts.
    let (mut r0, mut r1) = if dp >= dq { (pp_p, pp_q) } else { (pp_q, pp_p) };
    while !r1.is_zero() {
        let r = pseudo_rem(&r0, &r1, v);
        r0 = r1;
        r1 = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, v);
            r.exact_div(&c).expect("content divides").normalized_primitive()
        };
    }
    if r0.degree_of(v) == 0 {
        return cont_gcd;
    }
    let c = content_in(&r0, v);
    let g = r0.exact_div(&c).expect("content divides");
    cont_gcd.mul(&g)
}

/// Pseudo-remainder of `f` by `g` viewed as univariate in variable `v`.
fn pseudo_rem(f: &Poly, g: &Poly, v: usize) -> Poly {
    let dg = g.degree_of(v);
    let lg = coeff_of_power(g, v, dg);
    let mut rem = f.clone();
    while !rem.is_zero() {
        let dr = rem.degree_of(v);
        if dr < dg {
            break;
        }
        let lr = coeff_of_power(&rem, v, dr);
        let mut shift = vec![0u32; rem.ctx().num_vars()];
        shift[v] = dr - dg;
        rem = rem
            .mul(&lg)
            .sub(&g.mul(&lr).mul_term(&Monomial(shift), &Rat::from_integer(1.into())));
    }
    rem
}

/// Coefficient of `v^k` in `f` (a polynomial free of `v`).
fn coeff_of_power(f: &Poly, v: usize, k: u32) -> Poly {
    let terms = f
        .terms()
        .iter()
        .filter(|(m, _)| m.0[v] == k)
        .map(|(m, c)| {
            let mut exps = m.0.clone();
            exps[v] = 0;
            (Monomial(exps), c.clone())
        })
        .collect();
    Poly::from_terms(f.ctx(), terms)
}

/// Content of `f` wrt variable `v`: gcd of the coefficients of the powers
/// of `v`.
fn content_in(f: &Poly, v: usize) -> Poly {
    let d = f.degree_of(v);
    let mut acc = Poly::zero(f.ctx());
    for k in 0..=d {
        let c = coeff_of_power(f, v, k);
        if !c.is_zero() {
            acc = gcd(&acc, &c);
            if acc.is_constant() {
                break;
            }
        }
    }
    acc
}

/// Content of `f` wrt the whole x-block: gcd of the parametric coefficients
/// of the x-power-products.
pub fn content_x(f: &Poly) -> Poly {
    let nx = f.ctx().n_x();
    let mut acc = Poly::zero(f.ctx());
    let mut i = 0;
    let terms = f.terms();
    while i < terms.len() {
        let head = terms[i].0 .0[..nx].to_vec();
        let mut group: Vec<(Monomial, Rat)> = Vec::new();
        while i < terms.len() && terms[i].0 .0[..nx] == head[..] {
            let mut exps = vec![0u32; f.ctx().num_vars()];
            exps[nx..].copy_from_slice(&terms[i].0 .0[nx..]);
            group.push((Monomial(exps), terms[i].1.clone()));
            i += 1;
        }
        acc = gcd(&acc, &Poly::from_terms(f.ctx(), group));
        if acc.is_constant() && !acc.is_zero() {
            return acc;
        }
    }
    acc
}

/// Product of the distinct factors of `p`, each to multiplicity one:
/// `p / gcd(p, ∂p/∂v over all v)`.
pub fn squarefree_part(p: &Poly) -> Poly {
    assert!(!p.is_zero(), "squarefree part of zero");
    let p = p.normalized_primitive();
    if p.is_constant() {
        return Poly::one(p.ctx());
    }
    let mut g = p.clone();
    for v in 0..p.ctx().num_vars() {
        if p.degree_of(v) > 0 {
            g = gcd(&g, &p.derivative(v));
            if g.is_constant() {
                return p;
            }
        }
    }
    p.exact_div(&g)
        .expect("gcd with derivatives divides")
        .normalized_primitive()
}

/// Deterministic total order on polynomials: by leading monomial under the
/// ambient order, then term count, then term-wise comparison.
pub fn cmp_polys(a: &Poly, b: &Poly) -> Ordering {
    if a.is_zero() || b.is_zero() {
        return a.terms().len().cmp(&b.terms().len());
    }
    let ctx = a.ctx();
    for ((ma, ca), (mb, cb)) in a.terms().iter().zip(b.terms().iter()) {
        let c = ctx.cmp_mono(&ma.0, &mb.0);
        if c != Ordering::Equal {
            return c;
        }
        let c = ca.cmp(cb);
        if c != Ordering::Equal {
            return c;
        }
    }
    a.terms().len().cmp(&b.terms().len())
}

/// Gcd-free basis: pairwise-coprime squarefree non-constant polynomials
/// such that every input is a unit times a product of powers of outputs.
pub fn coprime_factor_basis<'a>(inputs: impl IntoIterator<Item = &'a Poly>) -> Vec<Poly> {
    let mut queue: VecDeque<Poly> = inputs.into_iter().cloned().collect();
    let mut basis: Vec<Poly> = Vec::new();
    while let Some(p) = queue.pop_front() {
        if p.is_zero() {
            continue;
        }
        let p = p.normalized_primitive();
        if p.is_constant() {
            continue;
        }
        let s = squarefree_part(&p);
        if s != p {
            // split multiplicity structure before refining
            queue.push_back(p.exact_div(&s).expect("squarefree part divides"));
            queue.push_back(s);
            continue;
        }
        let mut placed = true;
        for i in 0..basis.len() {
            let g = gcd(&p, &basis[i]);
            if !g.is_constant() {
                let b = basis.remove(i);
                queue.push_back(b.exact_div(&g).expect("gcd divides"));
                queue.push_back(p.exact_div(&g).expect("gcd divides"));
                queue.push_back(g);
                placed = false;
                break;
            }
        }
        if placed {
            basis.push(p);
        }
    }
    basis.sort_by(cmp_polys);
    basis
}

/// Divides out of `p` every factor it shares with some element of `ws`,
/// to full multiplicity.
pub fn drop_shared_factors(p: &Poly, ws: &[Poly]) -> Poly {
    let mut p = p.clone();
    for w in ws {
        loop {
            if p.is_constant() {
                return p;
            }
            // A factor shared with a parameter-only polynomial divides the
            // parametric content, so the gcd runs in the parameter ring.
            let g = if w.is_param_only() && !p.is_param_only() {
                let c = content_x(&p);
                if c.is_constant() {
                    break;
                }
                gcd(&c, w)
            } else {
                gcd(&p, w)
            };
            if g.is_constant() {
                break;
            }
            p = p.exact_div(&g).expect("gcd divides");
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::Context;

    #[test]
    fn gcd_basic_cases() {
        let ctx = Context::lex(&[], &["a"]);
        let p = parse_poly(&ctx, "a^2 - 1").unwrap();
        let q = parse_poly(&ctx, "a - 1").unwrap();
        assert_eq!(gcd(&p, &q), q);
        assert_eq!(gcd(&p, &Poly::zero(&ctx)), p);
        let p = parse_poly(&ctx, "(a+2)^2*(a-1)").unwrap();
        let q = parse_poly(&ctx, "(a+2)*(a-1)^2").unwrap();
        assert_eq!(gcd(&p, &q), parse_poly(&ctx, "(a+2)*(a-1)").unwrap());
    }

    #[test]
    fn gcd_multivariate() {
        let ctx = Context::lex(&[], &["r", "z", "l"]);
        let p = parse_poly(&ctx, "l^2*(z^2+r^2)").unwrap();
        let q = parse_poly(&ctx, "l*(z^2+r^2)^2").unwrap();
        assert_eq!(gcd(&p, &q), parse_poly(&ctx, "l*(z^2+r^2)").unwrap());
    }

    #[test]
    fn squarefree_parts() {
        let ctx = Context::lex(&[], &["r", "z", "l"]);
        let a = parse_poly(&ctx, "l").unwrap();
        assert_eq!(squarefree_part(&a), a);
        let p = parse_poly(&ctx, "l^2*(z^2+r^2)^3").unwrap();
        assert_eq!(
            squarefree_part(&p),
            parse_poly(&ctx, "l*(z^2+r^2)").unwrap()
        );
        let ctx = Context::lex(&[], &["a"]);
        let p = parse_poly(&ctx, "(a+2)^2*(a-1)").unwrap();
        assert_eq!(
            squarefree_part(&p),
            parse_poly(&ctx, "(a+2)*(a-1)").unwrap()
        );
    }

    #[test]
    fn coprime_basis_splits_shared_factors() {
        let ctx = Context::lex(&[], &["a", "b"]);
        let p = parse_poly(&ctx, "a^2 - 1").unwrap();
        let q = parse_poly(&ctx, "a - 1").unwrap();
        let basis = coprime_factor_basis([&p, &q]);
        assert_eq!(
            basis,
            vec![
                parse_poly(&ctx, "a - 1").unwrap(),
                parse_poly(&ctx, "a + 1").unwrap(),
            ]
        );

        let a = parse_poly(&ctx, "a").unwrap();
        let b = parse_poly(&ctx, "b").unwrap();
        assert_eq!(coprime_factor_basis([&a, &b]), vec![b.clone(), a.clone()]);

        let six_a2 = parse_poly(&ctx, "6*a^2").unwrap();
        assert_eq!(coprime_factor_basis([&six_a2]), vec![a.clone()]);
    }

    #[test]
    fn coprime_basis_respects_multiplicity_structure() {
        // {a^2*(a+1), a*(a+1)} must split into {a, a+1}: neither input is a
        // unit times a power of a*(a+1).
        let ctx = Context::lex(&[], &["a"]);
        let p = parse_poly(&ctx, "a^2*(a+1)").unwrap();
        let q = parse_poly(&ctx, "a*(a+1)").unwrap();
        let basis = coprime_factor_basis([&p, &q]);
        assert_eq!(
            basis,
            vec![
                parse_poly(&ctx, "a").unwrap(),
                parse_poly(&ctx, "a + 1").unwrap(),
            ]
        );
    }

    #[test]
    fn drop_shared_factors_divides_fully() {
        let ctx = Context::lex(&[], &["r", "z", "l"]);
        let p = parse_poly(&ctx, "l^2*(z^2+r^2)").unwrap();
        let w = vec![parse_poly(&ctx, "l").unwrap()];
        assert_eq!(
            drop_shared_factors(&p, &w),
            parse_poly(&ctx, "z^2+r^2").unwrap()
        );
        // partial overlap with a composite w element
        let p = parse_poly(&ctx, "l*z").unwrap();
        let w = vec![parse_poly(&ctx, "l*(z^2+r^2)").unwrap()];
        assert_eq!(drop_shared_factors(&p, &w), parse_poly(&ctx, "z").unwrap());
    }
}

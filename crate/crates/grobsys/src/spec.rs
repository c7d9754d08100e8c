//! Semi-canonical specifications of specializations Σ = (N, W): the null
//! conditions form an ideal in the parameter ring, the non-null conditions
//! a coprime squarefree set.  [`canspec`] reduces a raw condition pair to
//! this form or reports incompatibility; [`pnormalform`] reduces a
//! polynomial modulo a specification.

use std::fmt;
use std::sync::Arc;

use crate::gcd::{cmp_polys, coprime_factor_basis, drop_shared_factors};
use crate::ideal::{normal_form, quasi_radical, saturation_membership};
use crate::poly::{Context, Poly, Rat};

/// A reduced specification of specializations.
///
/// `null_gb` is the quasi-radical reduced Gröbner basis (wrt the parameter
/// order) of the assumed null conditions; `non_null` is a coprime
/// squarefree set of assumed non-null conditions, reduced modulo the null
/// ideal and sharing no factor with its generators.
///
/// `generic_disjunction` marks the one vertex produced by the tree rewrite
/// whose meaning is "at least one element of W is non-null" instead of the
/// usual conjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specification {
    ctx: Arc<Context>,
    null_gb: Vec<Poly>,
    non_null: Vec<Poly>,
    generic_disjunction: bool,
}

/// Rational values for every parameter, aligned with the context's a-block.
pub type ParamPoint = Vec<Rat>;

impl Specification {
    pub fn empty(ctx: &Arc<Context>) -> Specification {
        Specification {
            ctx: ctx.clone(),
            null_gb: Vec::new(),
            non_null: Vec::new(),
            generic_disjunction: false,
        }
    }

    pub fn from_parts(
        ctx: &Arc<Context>,
        null_gb: Vec<Poly>,
        non_null: Vec<Poly>,
        generic_disjunction: bool,
    ) -> Specification {
        Specification {
            ctx: ctx.clone(),
            null_gb,
            non_null,
            generic_disjunction,
        }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn null_gens(&self) -> &[Poly] {
        &self.null_gb
    }

    pub fn non_null(&self) -> &[Poly] {
        &self.non_null
    }

    pub fn is_generic_disjunction(&self) -> bool {
        self.generic_disjunction
    }

    pub fn is_empty_conditions(&self) -> bool {
        self.null_gb.is_empty() && self.non_null.is_empty()
    }

    /// σ(N) = 0 and σ(w) ≠ 0 for all w ∈ W (or for some w, at the rewritten
    /// generic vertex).
    pub fn point_satisfies(&self, point: &ParamPoint) -> bool {
        let vanishes = |p: &Poly| {
            p.eval_params(point)
                .as_constant()
                .expect("condition polynomial must be parameter-only")
                == Rat::from_integer(0.into())
        };
        if !self.null_gb.iter().all(|g| vanishes(g)) {
            return false;
        }
        if self.generic_disjunction {
            self.non_null.iter().any(|w| !vanishes(w))
        } else {
            self.non_null.iter().all(|w| !vanishes(w))
        }
    }
}

impl fmt::Display for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N = [")?;
        for (i, g) in self.null_gb.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, "], W = {{")?;
        for (i, w) in self.non_null.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", w)?;
        }
        write!(f, "}})")
    }
}

const CANSPEC_CAP: usize = 64;

/// Reduces the condition pair (N, W) to a semi-canonical specification, or
/// returns `None` when the conditions are incompatible (some non-null
/// condition vanishes on the null variety, or some null condition is a
/// product of non-null factors).
pub fn canspec(n_gens: &[Poly], w_set: &[Poly], ctx: &Arc<Context>) -> Option<Specification> {
    if w_set.iter().any(|w| w.is_zero()) {
        return None;
    }
    let mut n_gb = quasi_radical(n_gens);
    if n_gb.len() == 1 && n_gb[0].is_constant() {
        return None;
    }
    let mut w: Vec<Poly> = coprime_factor_basis(w_set.iter());

    for _ in 0..CANSPEC_CAP {
        // W step: coprime squarefree basis, reduced modulo N; reductions to
        // a nonzero constant are vacuously true and dropped, reductions to
        // zero (exactly or up to radical) are incompatible.
        let mut reduced: Vec<Poly> = Vec::new();
        for q in coprime_factor_basis(w.iter()) {
            let r = normal_form(&q, &n_gb, false).0.normalized_primitive();
            if r.is_zero() {
                return None;
            }
            if r.is_constant() {
                continue;
            }
            if !n_gb.is_empty() && saturation_membership(&r, &n_gb, ctx) {
                return None;
            }
            reduced.push(r);
        }
        let mut w_new = coprime_factor_basis(reduced.iter());
        w_new.sort_by(cmp_polys);

        // N step: drop from every generator the factors it shares with W.
        let mut n_new: Vec<Poly> = Vec::new();
        for p in &n_gb {
            let p2 = drop_shared_factors(p, &w_new);
            if p2.is_constant() {
                // p is a nonzero product of non-null factors, yet must vanish
                return None;
            }
            n_new.push(p2);
        }
        let n_new_gb = quasi_radical(&n_new);
        if n_new_gb.len() == 1 && n_new_gb[0].is_constant() {
            return None;
        }

        if n_new_gb == n_gb && w_new == w {
            return Some(Specification {
                ctx: ctx.clone(),
                null_gb: n_gb,
                non_null: w,
                generic_disjunction: false,
            });
        }
        n_gb = n_new_gb;
        w = w_new;
    }
    panic!("canspec did not reach a fixpoint within {} rounds", CANSPEC_CAP);
}

const PNF_CAP: usize = 64;

/// Reduction of `f` wrt a specification: normal form modulo the null ideal,
/// removal of every factor shared with a non-null condition, primitive
/// normalization.  Returns zero iff the image of `f` reduces to zero.
pub fn pnormalform(f: &Poly, sigma: &Specification) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    let mut r = normal_form(f, &sigma.null_gb, false).0.normalized_primitive();
    for _ in 0..PNF_CAP {
        if r.is_zero() {
            return r;
        }
        let d = drop_shared_factors(&r, &sigma.non_null).normalized_primitive();
        if d == r {
            return r;
        }
        r = normal_form(&d, &sigma.null_gb, false).0.normalized_primitive();
    }
    panic!("pnormalform did not stabilize within {} rounds", PNF_CAP);
}

/// Equivalence of two pnormalform-reduced polynomials wrt Σ: equal leading
/// power products and `lc(g)·f − lc(f)·g` reduces to zero.
pub fn equivalent_reduced(f: &Poly, g: &Poly, sigma: &Specification) -> bool {
    if f == g {
        return true;
    }
    if f.is_zero() || g.is_zero() {
        return false;
    }
    if f.lpp_x() != g.lpp_x() {
        return false;
    }
    let cross = f.mul(&g.lc_x()).sub(&g.mul(&f.lc_x()));
    pnormalform(&cross, sigma).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::{rat, ratio, Context};

    fn apolys(ctx: &Arc<Context>, texts: &[&str]) -> Vec<Poly> {
        texts.iter().map(|t| parse_poly(ctx, t).unwrap()).collect()
    }

    #[test]
    fn canspec_keeps_redundant_nonnull() {
        // a ≠ 0 is compatible with a^2 - 1 = 0, merely redundant
        let ctx = Context::lex(&["x"], &["a"]);
        let n = apolys(&ctx, &["a^2 - 1"]);
        let w = apolys(&ctx, &["a"]);
        let sigma = canspec(&n, &w, &ctx).unwrap();
        assert_eq!(sigma.null_gens(), &apolys(&ctx, &["a^2 - 1"])[..]);
        assert_eq!(sigma.non_null(), &apolys(&ctx, &["a"])[..]);
    }

    #[test]
    fn canspec_detects_contradiction() {
        let ctx = Context::lex(&["x"], &["a"]);
        let n = apolys(&ctx, &["a"]);
        let w = apolys(&ctx, &["a"]);
        assert!(canspec(&n, &w, &ctx).is_none());
    }

    #[test]
    fn canspec_drops_nonnull_factor_from_null_generator() {
        let ctx = Context::lex(&["x"], &["a"]);
        let n = apolys(&ctx, &["a^2*(a+2)"]);
        let w = apolys(&ctx, &["a+2"]);
        let sigma = canspec(&n, &w, &ctx).unwrap();
        assert_eq!(sigma.null_gens(), &apolys(&ctx, &["a"])[..]);
        // a+2 evaluates to 2 on V(a): the condition is vacuous and dropped
        assert!(sigma.non_null().is_empty());
    }

    #[test]
    fn canspec_is_idempotent() {
        let ctx = Context::lex(&["x"], &["a", "b"]);
        let n = apolys(&ctx, &["a^2*b - b", "a^3 - a"]);
        let w = apolys(&ctx, &["a - 2", "b^2"]);
        let sigma = canspec(&n, &w, &ctx).unwrap();
        let again = canspec(sigma.null_gens(), sigma.non_null(), &ctx).unwrap();
        assert_eq!(sigma, again);
    }

    #[test]
    fn pnormalform_examples() {
        let ctx = Context::lex(&["x", "y"], &["a"]);
        let sigma = canspec(&apolys(&ctx, &["a - 1"]), &[], &ctx).unwrap();
        let f = parse_poly(&ctx, "(a^2-1)*x + a*y").unwrap();
        assert_eq!(pnormalform(&f, &sigma), parse_poly(&ctx, "y").unwrap());

        let sigma = canspec(&[], &apolys(&ctx, &["a"]), &ctx).unwrap();
        let f = parse_poly(&ctx, "a^2*x").unwrap();
        assert_eq!(pnormalform(&f, &sigma), parse_poly(&ctx, "x").unwrap());

        let sigma = Specification::empty(&ctx);
        let f = parse_poly(&ctx, "2*x + 4*y").unwrap();
        assert_eq!(
            pnormalform(&f, &sigma),
            parse_poly(&ctx, "x + 2*y").unwrap()
        );
    }

    #[test]
    fn equivalence_of_reduced_forms() {
        // classic parametric example: a*x + c^2 and c*x + c^2*b agree on Σ
        let ctx = Context::new(
            &["x"],
            &["a", "b", "c"],
            crate::order::OrderKind::Lex,
            crate::order::OrderKind::Lex,
        );
        let n = apolys(&ctx, &["a*b - c", "a*c - b", "b^2 - c^2"]);
        let sigma = canspec(&n, &[], &ctx).unwrap();
        let f = parse_poly(&ctx, "a*x + c^2").unwrap();
        let g = parse_poly(&ctx, "c*x + c^2*b").unwrap();
        assert!(equivalent_reduced(&f, &g, &sigma));

        let x = parse_poly(&ctx, "x").unwrap();
        assert!(equivalent_reduced(&x, &x, &sigma));
        let y = parse_poly(&ctx, "c^2").unwrap();
        assert!(!equivalent_reduced(&x, &y, &sigma));
    }

    #[test]
    fn point_membership() {
        // robot-arm style case: l = 0, r^2 + z^2 = 1
        let ctx = Context::lex(&["s1"], &["r", "z", "l"]);
        let sigma = canspec(&apolys(&ctx, &["l", "r^2 + z^2 - 1"]), &[], &ctx).unwrap();
        let on_circle = vec![ratio(3, 5), ratio(4, 5), rat(0)];
        assert!(sigma.point_satisfies(&on_circle));
        let off = vec![rat(1), rat(1), rat(1)];
        assert!(!sigma.point_satisfies(&off));
        assert!(Specification::empty(&ctx).point_satisfies(&off));
    }
}

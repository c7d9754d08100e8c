//! Generic basis and liftings, the Weispfenning discriminant ideal,
//! comprehensive-basis verification, faithful pre-images and the CGB
//! construction loop.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::gcd::squarefree_part;
use crate::ideal::{
    eliminate_x, equal_up_to_radical, ideal_contains, intersect, normal_form, poly_lcm_many,
    quasi_radical, quotient, reduced_gb, reduced_gb_k, reduced_gb_with_transform,
};
use crate::poly::{Context, Monomial, Poly, Rat};
use crate::ratfun::RatFun;
use crate::spec::{equivalent_reduced, pnormalform, Specification};
use crate::tree::{lpp_set, GroebnerSystem, VertexLabel};

/// Polynomial in the x-block with rational-function coefficients, the
/// presentation of a monic basis element over k(ā).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPoly {
    ctx: Arc<Context>,
    pub terms: Vec<(Monomial, RatFun)>,
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono = Poly::format_x_monomial(&self.ctx, m);
            if c.is_one() {
                write!(f, "{}", mono)?;
            } else if m.is_one() {
                write!(f, "{}", c)?;
            } else {
                let plain = c.den().as_constant().map_or(false, |d| d.is_one())
                    && c.num().terms().len() == 1;
                if plain {
                    write!(f, "{}*{}", c, mono)?;
                } else if c.den().as_constant().map_or(false, |d| d.is_one()) {
                    write!(f, "({})*{}", c, mono)?;
                } else {
                    write!(f, "{}*{}", c, mono)?;
                }
            }
        }
        Ok(())
    }
}

/// Reduced Gröbner basis over k(ā) in monic form, the per-element
/// denominators, and the sub-lifted polynomials `{d_g·g} ⊂ S`.
#[derive(Debug, Clone)]
pub struct GenericBasis {
    pub monic: Vec<KPoly>,
    pub denominators: Vec<Poly>,
    pub lifted: Vec<Poly>,
}

impl GenericBasis {
    pub fn lpp(&self, ctx: &Arc<Context>) -> Vec<Monomial> {
        lpp_set(&self.lifted, ctx)
    }
}

/// Computes the generic Gröbner basis of the ideal over k(ā): the reduced
/// monic basis, the lcm of each element's coefficient denominators, and the
/// sub-lifting into S.
pub fn generic_basis(gens: &[Poly], ctx: &Arc<Context>) -> GenericBasis {
    let reps = reduced_gb_k(gens);
    let mut monic = Vec::with_capacity(reps.len());
    let mut denominators = Vec::with_capacity(reps.len());
    let mut lifted = Vec::with_capacity(reps.len());
    for p in reps {
        let lc = p.lc_x();
        let mut terms: Vec<(Monomial, RatFun)> = Vec::new();
        let nx = ctx.n_x();
        let mut i = 0;
        let pt = p.terms();
        while i < pt.len() {
            let head = pt[i].0 .0[..nx].to_vec();
            let mut group: Vec<(Monomial, Rat)> = Vec::new();
            while i < pt.len() && pt[i].0 .0[..nx] == head[..] {
                let mut exps = vec![0u32; ctx.num_vars()];
                exps[nx..].copy_from_slice(&pt[i].0 .0[nx..]);
                group.push((Monomial(exps), pt[i].1.clone()));
                i += 1;
            }
            let coeff = RatFun::new(Poly::from_terms(ctx, group), lc.clone());
            let mut mono = vec![0u32; ctx.num_vars()];
            mono[..nx].copy_from_slice(&head);
            terms.push((Monomial(mono), coeff));
        }
        // d_g: lcm of the coefficient denominators of the monic element
        let d = poly_lcm_many(terms.iter().map(|(_, c)| c.den()), ctx);
        monic.push(KPoly {
            ctx: ctx.clone(),
            terms,
        });
        denominators.push(d);
        lifted.push(p);
    }
    GenericBasis {
        monic,
        denominators,
        lifted,
    }
}

/// Weispfenning's discriminant ideal `J = √(⋂_g d_g·(I : d_g g) ∩ R)`,
/// presented quasi-radical.
pub fn weispfenning_discriminant(
    gens: &[Poly],
    gb: &GenericBasis,
    ctx: &Arc<Context>,
) -> Vec<Poly> {
    if ctx.n_a() == 0 {
        return vec![Poly::one(ctx)];
    }
    let mut acc: Option<Vec<Poly>> = None;
    for (p, d) in gb.lifted.iter().zip(gb.denominators.iter()) {
        let quot = quotient(gens, p, ctx);
        let in_r = eliminate_x(&quot);
        let jg: Vec<Poly> = in_r
            .iter()
            .map(|h| h.mul(d).normalized_primitive())
            .collect();
        acc = Some(match acc {
            None => jg,
            Some(a) => intersect(&a, &jg, ctx),
        });
    }
    quasi_radical(&acc.unwrap_or_default())
}

/// Tests whether the discriminant ideal is principal.  The squarefree lcm
/// of the generic-basis denominators is tried first (it generates J
/// whenever the ideal is prime); failing that, a singleton reduced-basis
/// presentation still witnesses principality.
pub fn principality_check_with(
    j: &[Poly],
    gb: &GenericBasis,
    ctx: &Arc<Context>,
) -> (bool, Option<Poly>) {
    let candidate = denominator_candidate(gb, ctx);
    if equal_up_to_radical(std::slice::from_ref(&candidate), j, ctx) {
        return (true, Some(candidate));
    }
    if j.len() == 1 {
        return (true, Some(j[0].clone()));
    }
    (false, None)
}

/// Squarefree part of the lcm of all generic-basis denominators — the
/// generator of J when the ideal is prime.
pub fn denominator_candidate(gb: &GenericBasis, ctx: &Arc<Context>) -> Poly {
    let lcm = poly_lcm_many(gb.denominators.iter(), ctx);
    if lcm.is_constant() {
        Poly::one(ctx)
    } else {
        squarefree_part(&lcm)
    }
}

pub fn principality_check(
    gens: &[Poly],
    gb: &GenericBasis,
    ctx: &Arc<Context>,
) -> (bool, Option<Poly>) {
    let j = weispfenning_discriminant(gens, gb, ctx);
    principality_check_with(&j, gb, ctx)
}

/// `J ⊆ N` (a theorem — must always hold) and `N ⊆ J` (conjectured),
/// both up to radical.
pub fn conjecture_report(j: &[Poly], n: &[Poly], ctx: &Arc<Context>) -> (bool, bool) {
    (ideal_contains(n, j, ctx), ideal_contains(j, n, ctx))
}

#[derive(Debug, Clone)]
pub struct CaseVerdict {
    pub label: VertexLabel,
    pub specialized_lpp: Vec<Monomial>,
    pub case_lpp: Vec<Monomial>,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct CgbReport {
    pub is_cgb: bool,
    pub per_case: Vec<CaseVerdict>,
}

impl CgbReport {
    pub fn failing_labels(&self) -> Vec<VertexLabel> {
        self.per_case
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.label.clone())
            .collect()
    }
}

/// Checks whether a basis specializes to a Gröbner basis in every terminal
/// case: the lpp set of the specialized basis must contain the case's lpp
/// set.
pub fn is_cgb(candidate: &[Poly], system: &GroebnerSystem) -> CgbReport {
    let ctx = &system.ctx;
    let mut per_case = Vec::with_capacity(system.cases.len());
    for case in &system.cases {
        let specialized: Vec<Poly> = candidate
            .iter()
            .map(|b| pnormalform(b, &case.sigma))
            .filter(|p| !p.is_zero())
            .collect();
        let slpp = lpp_set(&specialized, ctx);
        let ok = case.lpp.iter().all(|m| slpp.contains(m));
        per_case.push(CaseVerdict {
            label: case.label.clone(),
            specialized_lpp: slpp,
            case_lpp: case.lpp.clone(),
            ok,
        });
    }
    CgbReport {
        is_cgb: per_case.iter().all(|c| c.ok),
        per_case,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CgbError {
    #[error("case element has no pre-image: {0} is not in the lifted ideal")]
    NotExpressible(String),
    #[error("CGB loop did not close after {0} rounds")]
    IterationCap(usize),
}

/// Faithful pre-image: an element of the original ideal that specializes,
/// under Σ, to the given case-basis element.
pub fn preimage(
    g: &Poly,
    sigma: &Specification,
    i_gens: &[Poly],
    ctx: &Arc<Context>,
) -> Result<Poly, CgbError> {
    let i_gb = reduced_gb(i_gens);
    preimage_with(g, sigma, i_gens, &i_gb, ctx)
}

fn preimage_with(
    g: &Poly,
    sigma: &Specification,
    i_gens: &[Poly],
    i_gb: &[Poly],
    ctx: &Arc<Context>,
) -> Result<Poly, CgbError> {
    let trace = std::env::var("GROBSYS_TRACE").is_ok();
    // membership short-circuit: g already faithful and reduced
    if normal_form(g, i_gb, false).0.is_zero() && &pnormalform(g, sigma) == g {
        return Ok(g.clone());
    }
    if trace { eprintln!("preimage: past short-circuit"); }
    // H_g: basis of I ∩ ⟨g, N⟩ (every element has the shape q·g + n)
    let mut gn: Vec<Poly> = vec![g.clone()];
    gn.extend_from_slice(sigma.null_gens());
    let h_g = intersect(i_gens, &gn, ctx);
    if trace { eprintln!("preimage: intersection {} gens", h_g.len()); }
    // images modulo N, keeping the pairing with the faithful originals
    let mut originals: Vec<Poly> = Vec::new();
    let mut images: Vec<Poly> = Vec::new();
    for f in &h_g {
        let fi = normal_form(f, sigma.null_gens(), false).0;
        if !fi.is_zero() {
            originals.push(f.clone());
            images.push(fi);
        }
    }
    // express g = Σ α_i·f'_i modulo N via a transform-tracked basis
    let mut span = images.clone();
    span.extend_from_slice(sigma.null_gens());
    if trace { eprintln!("preimage: span {} gens", span.len()); }
    let (span_gb, rows) = reduced_gb_with_transform(&span);
    if trace { eprintln!("preimage: span gb {} elements", span_gb.len()); }
    let (r, cofs) = normal_form(g, &span_gb, true);
    if !r.is_zero() {
        return Err(CgbError::NotExpressible(g.to_string()));
    }
    if trace { eprintln!("preimage: expressed"); }
    let cofs = cofs.expect("tracked");
    let mut h = Poly::zero(ctx);
    for i in 0..images.len() {
        let mut alpha = Poly::zero(ctx);
        for (k, c) in cofs.iter().enumerate() {
            if !c.is_zero() && !rows[k][i].is_zero() {
                alpha = alpha.add(&c.mul(&rows[k][i]));
            }
        }
        if alpha.is_zero() {
            continue;
        }
        let alpha = normal_form(&alpha, sigma.null_gens(), false).0;
        h = h.add(&alpha.mul(&originals[i]));
    }
    if h.is_zero() {
        return Err(CgbError::NotExpressible(g.to_string()));
    }
    if trace { eprintln!("preimage: h has {} terms", h.terms().len()); }
    debug_assert!(normal_form(&h, i_gb, false).0.is_zero(), "pre-image in I");
    debug_assert!(
        equivalent_reduced(&pnormalform(&h, sigma), &pnormalform(g, sigma), sigma),
        "pre-image specializes to g"
    );
    Ok(h.normalized_primitive())
}

/// The comprehensive-basis construction loop: starting from the reduced
/// basis under the product order, adjoin pre-images of every element of the
/// first failing case until the candidate passes [`is_cgb`].
pub fn cgb(
    b0: &[Poly],
    system: &GroebnerSystem,
    i_gens: &[Poly],
    ctx: &Arc<Context>,
) -> Result<Vec<Poly>, CgbError> {
    let i_gb = reduced_gb(i_gens);
    let mut basis = b0.to_vec();
    let cap = system.cases.len() + 1;
    for _ in 0..cap {
        let report = is_cgb(&basis, system);
        if report.is_cgb {
            return Ok(basis);
        }
        let failing = report
            .per_case
            .iter()
            .find(|c| !c.ok)
            .expect("failing case exists");
        let case = system
            .cases
            .iter()
            .find(|c| c.label == failing.label)
            .expect("case present");
        for g in &case.basis {
            let h = preimage_with(g, &case.sigma, i_gens, &i_gb, ctx)?;
            if !basis.contains(&h) {
                basis.push(h);
            }
        }
    }
    Err(CgbError::IterationCap(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::tree::dispgb;

    fn polys(ctx: &Arc<Context>, texts: &[&str]) -> Vec<Poly> {
        texts.iter().map(|t| parse_poly(ctx, t).unwrap()).collect()
    }

    #[test]
    fn generic_basis_of_symmetric_system() {
        let ctx = Context::lex(&["x", "y", "z"], &["a", "b"]);
        let gens = polys(
            &ctx,
            &["a*x + y + z + b", "x + a*y + z + b", "x + y + a*z + b"],
        );
        let gb = generic_basis(&gens, &ctx);
        let a_plus_2 = parse_poly(&ctx, "a + 2").unwrap();
        assert_eq!(gb.denominators, vec![a_plus_2.clone(); 3]);
        assert_eq!(
            gb.lifted,
            polys(&ctx, &["(a+2)*z + b", "(a+2)*y + b", "(a+2)*x + b"])
        );
        assert_eq!(gb.monic[0].to_string(), "z + b/(a + 2)");
        assert_eq!(gb.monic[2].to_string(), "x + b/(a + 2)");
    }

    #[test]
    fn weispfenning_discriminant_of_symmetric_system() {
        let ctx = Context::lex(&["x", "y", "z"], &["a", "b"]);
        let gens = polys(
            &ctx,
            &["a*x + y + z + b", "x + a*y + z + b", "x + y + a*z + b"],
        );
        let gb = generic_basis(&gens, &ctx);
        let j = weispfenning_discriminant(&gens, &gb, &ctx);
        // (a+2)(a-1)
        assert_eq!(j, polys(&ctx, &["a^2 + a - 2"]));
        let (principal, generator) = principality_check_with(&j, &gb, &ctx);
        assert!(principal);
        assert_eq!(generator.unwrap(), parse_poly(&ctx, "a^2 + a - 2").unwrap());
    }

    #[test]
    fn no_parameter_ideal_has_unit_discriminant() {
        let ctx = Context::lex(&["x", "y"], &[]);
        let gens = polys(&ctx, &["x^2 - 1", "y - x"]);
        let gb = generic_basis(&gens, &ctx);
        assert!(gb.denominators.iter().all(|d| d.is_constant()));
        let j = weispfenning_discriminant(&gens, &gb, &ctx);
        assert_eq!(j, vec![Poly::one(&ctx)]);
    }

    #[test]
    fn iscgb_accepts_own_reduced_basis_without_parameters() {
        let ctx = Context::lex(&["x", "y"], &[]);
        let gens = polys(&ctx, &["x + y", "x - y"]);
        let system = dispgb(&gens, &ctx).unwrap();
        let b0 = reduced_gb(&gens);
        let report = is_cgb(&b0, &system);
        assert!(report.is_cgb);
        assert_eq!(report.per_case.len(), 1);
    }

    #[test]
    fn preimage_short_circuit_and_toy_lift() {
        // I = ⟨a*x - 1⟩: the singular case a = 0 has basis [1], and the
        // generic case basis a*x - 1 is its own pre-image.
        let ctx = Context::lex(&["x"], &["a"]);
        let gens = polys(&ctx, &["a*x - 1"]);
        let system = dispgb(&gens, &ctx).unwrap();
        let generic = system.generic_case();
        let g = &generic.basis[0];
        let h = preimage(g, &generic.sigma, &gens, &ctx).unwrap();
        assert_eq!(&h, g);
    }

    #[test]
    fn cgb_loop_on_single_equation() {
        let ctx = Context::lex(&["x"], &["a"]);
        let gens = polys(&ctx, &["a*x - 1"]);
        let system = dispgb(&gens, &ctx).unwrap();
        let b0 = reduced_gb(&gens);
        let result = cgb(&b0, &system, &gens, &ctx).unwrap();
        assert!(is_cgb(&result, &system).is_cgb);
    }
}

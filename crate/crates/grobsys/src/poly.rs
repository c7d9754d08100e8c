//! Exact multivariate polynomials over the rationals, with the variables
//! split into an x-block (unknowns) and an a-block (parameters).
//!
//! Every polynomial carries a shared [`Context`] naming its variables and
//! fixing the ambient block order.  Terms are stored sorted strictly
//! descending under that order, so the leading term is always `terms[0]`
//! and the leading x-power-product with its parametric coefficient fall
//! out of a prefix scan.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::order::OrderKind;

pub type Rat = BigRational;

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Variable context: x-block names, a-block names and the block orders.
#[derive(Debug, PartialEq, Eq)]
pub struct Context {
    names: Vec<String>,
    n_x: usize,
    pub order_x: OrderKind,
    pub order_a: OrderKind,
}

impl Context {
    pub fn new(
        xvars: &[&str],
        avars: &[&str],
        order_x: OrderKind,
        order_a: OrderKind,
    ) -> Arc<Context> {
        let mut names: Vec<String> = Vec::with_capacity(xvars.len() + avars.len());
        names.extend(xvars.iter().map(|s| s.to_string()));
        names.extend(avars.iter().map(|s| s.to_string()));
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable name `{}` in context",
                n
            );
        }
        Arc::new(Context {
            names,
            n_x: xvars.len(),
            order_x,
            order_a,
        })
    }

    pub fn lex(xvars: &[&str], avars: &[&str]) -> Arc<Context> {
        Context::new(xvars, avars, OrderKind::Lex, OrderKind::Lex)
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_a(&self) -> usize {
        self.names.len() - self.n_x
    }

    pub fn xvars(&self) -> &[String] {
        &self.names[..self.n_x]
    }

    pub fn avars(&self) -> &[String] {
        &self.names[self.n_x..]
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Product order: x-part first, a-part as tie-break.
    pub fn cmp_mono(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.order_x
            .cmp_exps(&a[..self.n_x], &b[..self.n_x])
            .then_with(|| self.order_a.cmp_exps(&a[self.n_x..], &b[self.n_x..]))
    }

    /// Context with one auxiliary variable prepended to the x-block,
    /// dominating every other variable.  Used for elimination tricks.
    pub fn extend_front(self: &Arc<Self>, aux: &str) -> Arc<Context> {
        assert!(self.index_of(aux).is_none(), "auxiliary name collides");
        let mut names = Vec::with_capacity(self.names.len() + 1);
        names.push(aux.to_string());
        names.extend(self.names.iter().cloned());
        Arc::new(Context {
            names,
            n_x: self.n_x + 1,
            // The auxiliary variable must dominate: a lex-compared front
            // block keeps the elimination property for any inner orders.
            order_x: self.order_x,
            order_a: self.order_a,
        })
    }

    pub fn compatible(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

/// Exponent vector over the full context (x-block then a-block).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Multivariate polynomial in canonical form: terms sorted strictly
/// descending under the context's product order, no zero coefficients.
#[derive(Debug, Clone)]
pub struct Poly {
    ctx: Arc<Context>,
    terms: Vec<(Monomial, Rat)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ctx: &Arc<Context>) -> Poly {
        Poly {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ctx: &Arc<Context>, c: Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(ctx);
        }
        Poly {
            ctx: ctx.clone(),
            terms: vec![(Monomial::one(ctx.num_vars()), c)],
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Poly {
        Poly::constant(ctx, Rat::one())
    }

    pub fn var(ctx: &Arc<Context>, name: &str) -> Poly {
        let idx = ctx
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable `{}`", name));
        let mut exps = vec![0u32; ctx.num_vars()];
        exps[idx] = 1;
        Poly {
            ctx: ctx.clone(),
            terms: vec![(Monomial(exps), Rat::one())],
        }
    }

    pub fn from_terms(ctx: &Arc<Context>, terms: Vec<(Monomial, Rat)>) -> Poly {
        let mut p = Poly {
            ctx: ctx.clone(),
            terms,
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let ctx = self.ctx.clone();
        self.terms
            .sort_by(|(ma, _), (mb, _)| ctx.cmp_mono(&mb.0, &ma.0));
        let mut merged: Vec<(Monomial, Rat)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    continue;
                }
            }
            merged.push((m, c));
        }
        merged.retain(|(_, c)| !c.is_zero());
        self.terms = merged;
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// True when no x-block variable occurs (the polynomial lies in the
    /// parameter ring R).
    pub fn is_param_only(&self) -> bool {
        let nx = self.ctx.n_x();
        self.terms.iter().all(|(m, _)| m.0[..nx].iter().all(|&e| e == 0))
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn leading_coeff(&self) -> &Rat {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_of(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Leading power product wrt the x-block only (exponents of the
    /// parameters zeroed).  The terms being sorted under the product order,
    /// this is the x-part of the leading monomial.
    pub fn lpp_x(&self) -> Monomial {
        assert!(!self.is_zero(), "lpp of zero polynomial");
        let nx = self.ctx.n_x();
        let mut exps = vec![0u32; self.ctx.num_vars()];
        exps[..nx].copy_from_slice(&self.terms[0].0 .0[..nx]);
        Monomial(exps)
    }

    /// Leading coefficient wrt the x-block: the parameter polynomial
    /// multiplying `lpp_x`.
    pub fn lc_x(&self) -> Poly {
        assert!(!self.is_zero(), "lc of zero polynomial");
        let nx = self.ctx.n_x();
        let head = &self.terms[0].0 .0[..nx];
        let mut out: Vec<(Monomial, Rat)> = Vec::new();
        for (m, c) in &self.terms {
            if &m.0[..nx] == head {
                let mut exps = vec![0u32; self.ctx.num_vars()];
                exps[nx..].copy_from_slice(&m.0[nx..]);
                out.push((Monomial(exps), c.clone()));
            } else {
                break;
            }
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    /// All terms whose x-part equals the leading x-part, as a polynomial.
    pub fn leading_x_group(&self) -> Poly {
        assert!(!self.is_zero());
        let nx = self.ctx.n_x();
        let head = self.terms[0].0 .0[..nx].to_vec();
        let terms = self
            .terms
            .iter()
            .take_while(|(m, _)| m.0[..nx] == head[..])
            .cloned()
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.ctx.compatible(&other.ctx), "context mismatch");
        let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.ctx.cmp_mono(&self.terms[i].0 .0, &other.terms[j].0 .0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul_term(&self, mono: &Monomial, coeff: &Rat) -> Poly {
        if coeff.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    pub fn scale(&self, coeff: &Rat) -> Poly {
        if coeff.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * coeff))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.ctx.compatible(&other.ctx), "context mismatch");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                acc.push((m.mul(n), c * d));
            }
        }
        Poly::from_terms(&self.ctx, acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(&self.ctx);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut exps = m.0.clone();
                let e = exps[var];
                exps[var] -= 1;
                (Monomial(exps), c * Rat::from_integer(BigInt::from(e)))
            })
            .collect();
        Poly::from_terms(&self.ctx, terms)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rat)> = Vec::new();
        let dm = divisor.leading_monomial();
        let dc = divisor.leading_coeff();
        while !rem.is_zero() {
            let rm = rem.leading_monomial();
            if !dm.divides(rm) {
                return None;
            }
            let m = rm.div(dm);
            let c = rem.leading_coeff() / dc;
            rem = rem.sub(&divisor.mul_term(&m, &c));
            quot.push((m, c));
        }
        Some(Poly::from_terms(&self.ctx, quot))
    }

    /// Scales to integer coefficients, content 1, positive leading
    /// coefficient.  Zero stays zero.
    pub fn normalized_primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut factor = Rat::new(den_lcm, num_gcd);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Monic under the ambient order (leading coefficient 1).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Rat::one() / self.leading_coeff().clone();
        self.scale(&inv)
    }

    /// Substitutes rational values for every parameter; the result lives in
    /// the same context with all parameter exponents zero.
    pub fn eval_params(&self, point: &[Rat]) -> Poly {
        let nx = self.ctx.n_x();
        assert_eq!(point.len(), self.ctx.n_a(), "missing parameter assignment");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut coeff = c.clone();
                for (k, v) in point.iter().enumerate() {
                    for _ in 0..m.0[nx + k] {
                        coeff *= v;
                    }
                }
                let mut exps = vec![0u32; self.ctx.num_vars()];
                exps[..nx].copy_from_slice(&m.0[..nx]);
                (Monomial(exps), coeff)
            })
            .collect();
        Poly::from_terms(&self.ctx, terms)
    }

    /// Re-homes the polynomial in a context with one extra front variable.
    pub fn lift_front(&self, ext: &Arc<Context>) -> Poly {
        debug_assert_eq!(ext.num_vars(), self.ctx.num_vars() + 1);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = Vec::with_capacity(m.0.len() + 1);
                exps.push(0);
                exps.extend_from_slice(&m.0);
                (Monomial(exps), c.clone())
            })
            .collect();
        Poly::from_terms(ext, terms)
    }

    /// Inverse of [`lift_front`]; panics if the front variable occurs.
    pub fn drop_front(&self, base: &Arc<Context>) -> Poly {
        debug_assert_eq!(base.num_vars() + 1, self.ctx.num_vars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert_eq!(m.0[0], 0, "front variable still present");
                (Monomial(m.0[1..].to_vec()), c.clone())
            })
            .collect();
        Poly::from_terms(base, terms)
    }

    /// Formats the x-part of a monomial (used for lpp sets).
    pub fn format_x_monomial(ctx: &Context, m: &Monomial) -> String {
        let nx = ctx.n_x();
        let mut parts: Vec<String> = Vec::new();
        for (i, &e) in m.0[..nx].iter().enumerate() {
            if e == 1 {
                parts.push(ctx.name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", ctx.name(i), e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.ctx.name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ctx.name(i), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ctx() -> Arc<Context> {
        Context::lex(&["x", "y"], &["a", "b"])
    }

    #[test]
    fn cancellation_and_absorbing_zero() {
        let c = ctx();
        let p = parse_poly(&c, "x + y").unwrap();
        let q = parse_poly(&c, "x - y").unwrap();
        assert_eq!(p.add(&q), parse_poly(&c, "2*x").unwrap());
        assert_eq!(p.mul(&Poly::zero(&c)), Poly::zero(&c));
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx();
        let p = parse_poly(&c, "x + a").unwrap();
        let q = parse_poly(&c, "x - a").unwrap();
        assert_eq!(p.mul(&q), parse_poly(&c, "x^2 - a^2").unwrap());
    }

    #[test]
    fn leading_data_under_product_order() {
        let c = ctx();
        // a*x dominates y^2 because the x-block is compared first
        let p = parse_poly(&c, "a*x + y^2").unwrap();
        assert_eq!(Poly::format_x_monomial(&c, &p.lpp_x()), "x");
        assert_eq!(p.lc_x(), parse_poly(&c, "a").unwrap());

        let q = parse_poly(&c, "3*a*x*y + b*x*y - x").unwrap();
        assert_eq!(Poly::format_x_monomial(&c, &q.lpp_x()), "x*y");
        assert_eq!(q.lc_x(), parse_poly(&c, "3*a + b").unwrap());
    }

    #[test]
    fn primitive_normalization() {
        let c = ctx();
        let p = parse_poly(&c, "-2/3*x - 4/3*y").unwrap();
        assert_eq!(
            p.normalized_primitive(),
            parse_poly(&c, "x + 2*y").unwrap()
        );
        assert_eq!(Poly::zero(&c).normalized_primitive(), Poly::zero(&c));
    }

    #[test]
    fn eval_params_substitutes() {
        let c = ctx();
        let p = parse_poly(&c, "a*x + b").unwrap();
        let v = p.eval_params(&[rat(2), rat(3)]);
        assert_eq!(v, parse_poly(&c, "2*x + 3").unwrap());
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let p = parse_poly(&c, "x^2 - a^2").unwrap();
        let d = parse_poly(&c, "x - a").unwrap();
        assert_eq!(p.exact_div(&d).unwrap(), parse_poly(&c, "x + a").unwrap());
        assert!(parse_poly(&c, "x^2 + 1")
            .unwrap()
            .exact_div(&d)
            .is_none());
    }

    #[test]
    fn display_is_canonical() {
        let c = ctx();
        let p = parse_poly(&c, "y - 3/4*a*x^2 + 1 - b").unwrap();
        assert_eq!(p.to_string(), "-3/4*x^2*a + y - b + 1");
    }

    #[test]
    #[should_panic(expected = "context mismatch")]
    fn context_mismatch_panics() {
        let c1 = ctx();
        let c2 = Context::lex(&["u"], &[]);
        let _ = parse_poly(&c1, "x").unwrap().add(&parse_poly(&c2, "u").unwrap());
    }
}

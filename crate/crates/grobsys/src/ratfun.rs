//! Rational functions in the parameters: quotients of parameter-only
//! polynomials kept in lowest terms, with the denominator primitive and
//! positive-led.  These appear as the coefficients of monic Gröbner basis
//! elements over the fraction field k(ā).

use std::fmt;

use num_traits::One;

use crate::gcd::gcd;
use crate::poly::{Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun {
                den: Poly::one(num.ctx()),
                num,
            };
        }
        let g = gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        // den primitive with positive leading coefficient; the rational
        // scale moves into the numerator.
        let den_norm = den.normalized_primitive();
        let scale = den.leading_coeff() / den_norm.leading_coeff();
        den = den_norm;
        num = num.scale(&(Rat::one() / scale));
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        let one = Poly::one(p.ctx());
        RatFun::new(p, one)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        RatFun::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFun) -> RatFun {
        assert!(!other.is_zero(), "division by zero");
        RatFun::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map_or(false, |c| c.is_one()) {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.terms().len() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = if self.den.terms().len() > 1 {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{}/{}", num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::Context;

    #[test]
    fn reduces_to_lowest_terms() {
        let ctx = Context::lex(&[], &["a", "b"]);
        let num = parse_poly(&ctx, "a^2 - 1").unwrap();
        let den = parse_poly(&ctx, "a - 1").unwrap();
        let r = RatFun::new(num, den);
        assert_eq!(r.num(), &parse_poly(&ctx, "a + 1").unwrap());
        assert_eq!(r.den(), &Poly::one(&ctx));
    }

    #[test]
    fn denominator_normalized_positive_primitive() {
        let ctx = Context::lex(&[], &["a", "b"]);
        let num = parse_poly(&ctx, "b").unwrap();
        let den = parse_poly(&ctx, "-2*a - 4").unwrap();
        let r = RatFun::new(num, den);
        assert_eq!(r.den(), &parse_poly(&ctx, "a + 2").unwrap());
        assert_eq!(r.num(), &parse_poly(&ctx, "-1/2*b").unwrap());
    }

    #[test]
    fn field_arithmetic() {
        let ctx = Context::lex(&[], &["a"]);
        let x = RatFun::new(
            Poly::one(&ctx),
            parse_poly(&ctx, "a + 2").unwrap(),
        );
        let s = x.add(&x);
        assert_eq!(s.num(), &parse_poly(&ctx, "2").unwrap());
        assert_eq!(s.den(), &parse_poly(&ctx, "a + 2").unwrap());
        assert!(x.div(&x).is_one());
        assert!(x.sub(&x).is_zero());
    }
}

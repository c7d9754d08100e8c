//! Monomial orders: lex, graded lex, graded reverse lex, and the block
//! (product) order that compares the variable block before the parameter
//! block.

use std::cmp::Ordering;
use std::fmt;

/// Order used within a single block of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrLex,
    GrevLex,
}

impl OrderKind {
    pub fn parse(text: &str) -> Option<OrderKind> {
        match text.trim() {
            "lex" => Some(OrderKind::Lex),
            "grlex" => Some(OrderKind::GrLex),
            "grevlex" => Some(OrderKind::GrevLex),
            _ => None,
        }
    }

    /// Compares two exponent slices of equal length; `Greater` means the
    /// first monomial is larger in the order.
    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            OrderKind::Lex => cmp_lex(a, b),
            OrderKind::GrLex => cmp_degree(a, b).then_with(|| cmp_lex(a, b)),
            OrderKind::GrevLex => cmp_degree(a, b).then_with(|| cmp_revlex(a, b)),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::GrLex => write!(f, "grlex"),
            OrderKind::GrevLex => write!(f, "grevlex"),
        }
    }
}

fn cmp_degree(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db)
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

/// Reverse lex tie-break: the monomial with the *smaller* exponent in the
/// last differing position is the larger one.
fn cmp_revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_extremes() {
        // x^2 > x*y > y^3 under lex(x, y)
        assert_eq!(OrderKind::Lex.cmp_exps(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(OrderKind::Lex.cmp_exps(&[1, 1], &[0, 3]), Ordering::Greater);
        assert_eq!(OrderKind::Lex.cmp_exps(&[0, 0], &[0, 1]), Ordering::Less);
    }

    #[test]
    fn graded_orders_use_degree_first() {
        // y^3 > x^2 under grlex
        assert_eq!(
            OrderKind::GrLex.cmp_exps(&[0, 3], &[2, 0]),
            Ordering::Greater
        );
        // x*z > y^2 under grevlex(x, y, z): same degree, revlex tie-break
        assert_eq!(
            OrderKind::GrevLex.cmp_exps(&[1, 0, 1], &[0, 2, 0]),
            Ordering::Less
        );
        // x^2 y > x z^2 under grevlex
        assert_eq!(
            OrderKind::GrevLex.cmp_exps(&[2, 1, 0], &[1, 0, 2]),
            Ordering::Greater
        );
    }

    #[test]
    fn unit_monomial_is_minimal() {
        for kind in [OrderKind::Lex, OrderKind::GrLex, OrderKind::GrevLex] {
            assert_eq!(kind.cmp_exps(&[0, 0, 0], &[0, 1, 0]), Ordering::Less);
        }
    }
}

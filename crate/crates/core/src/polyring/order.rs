use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

/// Total, multiplicative, well-founded order on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: total degree first, ties broken by the
    /// last variable, where the smaller exponent wins.
    #[default]
    GrevLex,
    /// Pure lexicographic with `x₁ > x₂ > …`.
    Lex,
    /// Grevlex on the first `split` variables, then grevlex on the rest.
    BlockElimination { split: usize },
}

#[inline]
fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.compare_exponents(a.exponents(), b.exponents())
    }

    pub(crate) fn compare_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::BlockElimination { split } => {
                grevlex(&a[..split], &b[..split]).then_with(|| grevlex(&a[split..], &b[split..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::BlockElimination { split } => format!("block({split})"),
        }
    }
}

/// Compares two monomials of the same length under `order`.
pub fn monomial_compare(u: &Monomial, v: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(order.compare(u, v))
}

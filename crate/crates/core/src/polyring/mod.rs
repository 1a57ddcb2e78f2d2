//! Exact sparse multivariate polynomials over ℚ.

mod monomial;
mod order;
pub(crate) mod parse;
mod poly;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use monomial::Monomial;
pub use order::{monomial_compare, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use poly::{format_rational, poly_add, poly_mul, Coeff, Polynomial};

/// A polynomial ring `ℚ[x₁, …, x_n]` with a fixed monomial order.
///
/// Cheap to clone; two specs compare equal when they have the same variables
/// in the same order and the same monomial order.
#[derive(Clone)]
pub struct RingSpec(Arc<RingData>);

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    variables: Vec<String>,
    order: MonomialOrder,
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(variables: &[S], order: MonomialOrder) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::InvalidRing(
                "at least one variable is required".into(),
            ));
        }
        let mut names: Vec<String> = Vec::with_capacity(variables.len());
        for v in variables {
            let v = v.as_ref().trim();
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not an identifier")));
            }
            if is_basis_shorthand(v) {
                return Err(Error::InvalidRing(format!(
                    "`{v}` collides with the exterior basis shorthand e<N>"
                )));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
            names.push(v.to_string());
        }
        if let MonomialOrder::BlockElimination { split } = order {
            if split == 0 || split >= names.len() {
                return Err(Error::InvalidRing(format!(
                    "block split {split} must lie strictly between 0 and {}",
                    names.len()
                )));
            }
        }
        Ok(RingSpec(Arc::new(RingData {
            variables: names,
            order,
        })))
    }

    /// Graded reverse lexicographic ring, the default.
    pub fn grevlex<S: AsRef<str>>(variables: &[S]) -> Result<Self> {
        Self::new(variables, MonomialOrder::GrevLex)
    }

    pub fn variables(&self) -> &[String] {
        &self.0.variables
    }

    pub fn nvars(&self) -> usize {
        self.0.variables.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.variables.iter().position(|v| v == name)
    }

    /// Same variables under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        if order == self.order() {
            return Ok(self.clone());
        }
        Self::new(&self.0.variables, order)
    }

    pub(crate) fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for RingSpec {}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingSpec({} ; {:?})",
            self.0.variables.join(","),
            self.0.order
        )
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_basis_shorthand(s: &str) -> bool {
    s.len() > 1 && s.starts_with('e') && s[1..].chars().all(|c| c.is_ascii_digit())
}

//! Gröbner-basis machinery over `R` and free modules `R^q`.
//!
//! Everything is exact; every membership claim can be backed by a
//! [`LiftCertificate`] that re-expands to the target.

mod engine;
mod ideal;
mod module;

pub use ideal::{
    buchberger, ideal_member_with_lift, ideal_quotient, krull_dim, normal_form, GroebnerBasis,
    Ideal,
};
pub use module::{
    module_groebner, module_lift, module_syzygies, FreeModule, Lifter, ModuleGroebnerBasis,
    ModuleVector,
};

use crate::polyring::Polynomial;

/// Witness for `target = Σ cofactors[i]·generators[i] + residual`.
///
/// The residual is the normal form of the target, so it is zero exactly when
/// the target lies in the ideal (or submodule).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCertificate<T> {
    pub cofactors: Vec<Polynomial>,
    pub residual: T,
}

impl<T> LiftCertificate<T> {
    pub fn residual(&self) -> &T {
        &self.residual
    }
}

impl LiftCertificate<Polynomial> {
    pub fn is_member(&self) -> bool {
        self.residual.is_zero()
    }

    /// Re-expands the certificate against `generators` and compares with `target`.
    pub fn verify(&self, target: &Polynomial, generators: &[Polynomial]) -> bool {
        if self.cofactors.len() != generators.len() {
            return false;
        }
        let mut acc = self.residual.clone();
        for (c, g) in self.cofactors.iter().zip(generators) {
            acc = &acc + &(c * g);
        }
        acc == *target
    }
}

impl LiftCertificate<ModuleVector> {
    pub fn is_member(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn verify(&self, target: &ModuleVector, generators: &[ModuleVector]) -> bool {
        if self.cofactors.len() != generators.len() {
            return false;
        }
        let mut acc = self.residual.clone();
        for (c, g) in self.cofactors.iter().zip(generators) {
            match acc.add(&g.scale(c)) {
                Ok(v) => acc = v,
                Err(_) => return false,
            }
        }
        acc == *target
    }
}

//! `Ker B` and the exactness test `im A = Ker B` in one degree.

use std::fmt;

use super::{DivisionResult, ImageOfA};
use crate::depth::{depth, DepthReport, QuotientContext};
use crate::error::{Error, Result};
use crate::exterior::{basis_sets, flat_module, flatten, omega_of, unflatten, wedge, ExteriorForm};
use crate::groebner::{module_syzygies, ModuleVector};
use crate::parallel::Parallelism;

/// Generators of `{η ∈ ∧ᵖ : Ω∧η ≡ 0 (mod J)}`, from the syzygies of the columns
/// of `B` together with `J`-multiples of the target basis. When `p + k > m`
/// every `p`-form is in the kernel and the basis is returned.
pub fn kernel_generators(
    omegas: &[ExteriorForm],
    p: usize,
    ctx: &QuotientContext,
) -> Result<Vec<ExteriorForm>> {
    let rank = omegas
        .first()
        .map(|w| w.rank())
        .ok_or_else(|| Error::InvalidArgument("kernel_generators needs at least one ω".into()))?;
    if p > rank {
        return Err(Error::InvalidArgument(format!(
            "degree {p} exceeds rank {rank}"
        )));
    }
    let ring = ctx.ring();
    let pkg = omega_of(ring, rank, omegas)?;
    let k = omegas.len();
    let sources = basis_sets(rank, p);
    if p + k > rank {
        return Ok(sources
            .into_iter()
            .map(|s| ExteriorForm::basis(ring, rank, s))
            .collect());
    }
    let target = flat_module(ring, rank, p + k);
    let mut cols: Vec<ModuleVector> = Vec::with_capacity(sources.len());
    for s in &sources {
        cols.push(flatten(&wedge(
            &pkg.omega,
            &ExteriorForm::basis(ring, rank, *s),
        )?));
    }
    for g in ctx.ideal().groebner().polys() {
        for t in 0..target.rank() {
            cols.push(target.basis_vector(t, g));
        }
    }
    let syz = module_syzygies(&target, &cols)?;
    let mut out: Vec<ExteriorForm> = Vec::new();
    for v in syz {
        let head = ModuleVector::new(
            ring,
            v.into_components()
                .into_iter()
                .take(sources.len())
                .collect(),
        );
        let form = unflatten(&head, rank, p)?.reduce_mod(ctx.ideal());
        if !form.is_zero() && !out.contains(&form) {
            out.push(form);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExactnessVerdict {
    Exact,
    /// First kernel generator (by index) outside the image.
    NotExact {
        index: usize,
        witness: ExteriorForm,
        obstruction: ModuleVector,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessReport {
    pub p: usize,
    pub kernel: Vec<ExteriorForm>,
    /// One division result per kernel generator, in order.
    pub certificates: Vec<DivisionResult>,
    pub verdict: ExactnessVerdict,
    pub depth: DepthReport,
    /// Whether `p < depth I(Ω)` held.
    pub condition_holds: bool,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.verdict == ExactnessVerdict::Exact
    }

    /// Re-checks every kernel generator against `B` and every certificate
    /// against `A`.
    pub fn verify(&self, omegas: &[ExteriorForm], ctx: &QuotientContext) -> bool {
        let Some(w) = omegas.first() else {
            return false;
        };
        let Ok(pkg) = omega_of(ctx.ring(), w.rank(), omegas) else {
            return false;
        };
        let in_kernel = |eta: &ExteriorForm| {
            wedge(&pkg.omega, eta)
                .map(|f| f.is_zero_mod(ctx.ideal()))
                .unwrap_or(false)
        };
        if self.kernel.len() != self.certificates.len() || !self.kernel.iter().all(in_kernel) {
            return false;
        }
        let certs_ok = self
            .kernel
            .iter()
            .zip(&self.certificates)
            .all(|(eta, c)| c.verify(omegas, eta, ctx));
        let verdict_ok = match &self.verdict {
            ExactnessVerdict::Exact => self.certificates.iter().all(DivisionResult::is_solved),
            ExactnessVerdict::NotExact {
                index,
                witness,
                obstruction,
            } => {
                self.kernel.get(*index) == Some(witness)
                    && !obstruction.is_zero()
                    && !self.certificates[*index].is_solved()
            }
        };
        certs_ok && verdict_ok
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.condition_holds { ">" } else { "<=" };
        let tail = format!("(depth I(Ω) = {} {rel} p = {})", self.depth.value, self.p);
        match &self.verdict {
            ExactnessVerdict::Exact => write!(f, "EXACT {tail}"),
            ExactnessVerdict::NotExact { .. } => write!(f, "NOT EXACT {tail}"),
        }
    }
}

/// [`check_exactness_with`] using the default parallelism.
pub fn check_exactness(
    omegas: &[ExteriorForm],
    p: usize,
    ctx: &QuotientContext,
) -> Result<ExactnessReport> {
    check_exactness_with(omegas, p, ctx, Parallelism::default())
}

/// Decides `im A = Ker B` in degree `p` by dividing every kernel generator.
/// Divisions run through `parallelism`; the report does not depend on it.
pub fn check_exactness_with(
    omegas: &[ExteriorForm],
    p: usize,
    ctx: &QuotientContext,
    parallelism: Parallelism,
) -> Result<ExactnessReport> {
    let rank = omegas.first().map(|w| w.rank()).unwrap_or(0);
    if p == 0 || p > rank {
        return Err(Error::InvalidArgument(format!("p must lie in 1..={rank}")));
    }
    let kernel = kernel_generators(omegas, p, ctx)?;
    let pkg = omega_of(ctx.ring(), rank, omegas)?;
    let certificates = if kernel.is_empty() {
        Vec::new()
    } else {
        let image = ImageOfA::new(omegas, p, ctx)?;
        parallelism
            .map(&kernel, |eta| image.lift(eta))
            .into_iter()
            .collect::<Result<Vec<_>>>()?
    };
    let verdict = certificates
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_solved())
        .map(|(index, c)| ExactnessVerdict::NotExact {
            index,
            witness: kernel[index].clone(),
            obstruction: c
                .obstruction
                .clone()
                .expect("unsolved lift carries its residual"),
        })
        .unwrap_or(ExactnessVerdict::Exact);
    let depth = depth(&pkg.coeff_ideal, ctx);
    let condition_holds = depth.value.exceeds(p);
    Ok(ExactnessReport {
        p,
        kernel,
        certificates,
        verdict,
        depth,
        condition_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::DepthValue;
    use crate::exterior::parse_form;
    use crate::polyring::{parse_polynomial, RingSpec};

    fn ring() -> RingSpec {
        RingSpec::grevlex(&["x", "y", "z"]).unwrap()
    }

    fn f(s: &str, rank: usize) -> ExteriorForm {
        parse_form(s, &ring(), rank).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let ctx = QuotientContext::polynomial_ring(&ring());
        let w = vec![f("x*e1 + y*e2", 2)];
        let ker = kernel_generators(&w, 1, &ctx).unwrap();
        assert_eq!(ker.len(), 1);
        assert!(ker[0] == w[0] || ker[0] == w[0].neg());

        let ker = kernel_generators(&[f("x*e1", 2)], 1, &ctx).unwrap();
        assert!(ker.contains(&f("e1", 2)));

        let full = kernel_generators(&[f("e1", 2), f("e2", 2)], 1, &ctx).unwrap();
        assert_eq!(full, vec![f("e1", 2), f("e2", 2)]);
    }

    #[test]
    fn exactness_examples() {
        let ctx = QuotientContext::polynomial_ring(&ring());
        let w = vec![f("x*e1 + y*e2 + z*e3", 3)];
        for p in [1, 2] {
            let rep = check_exactness(&w, p, &ctx).unwrap();
            assert!(rep.is_exact() && rep.condition_holds);
            assert_eq!(rep.depth.value, DepthValue::Finite(3));
            assert!(rep.verify(&w, &ctx));
        }
        assert_eq!(
            check_exactness(&w, 1, &ctx).unwrap().to_string(),
            "EXACT (depth I(Ω) = 3 > p = 1)"
        );

        let w = vec![f("x*e1", 2)];
        let rep = check_exactness(&w, 1, &ctx).unwrap();
        assert!(!rep.is_exact() && !rep.condition_holds);
        assert!(rep.verify(&w, &ctx));
        let ExactnessVerdict::NotExact { witness, .. } = &rep.verdict else {
            unreachable!()
        };
        assert_eq!(witness, &f("e1", 2));
    }

    #[test]
    fn exactness_in_quotient() {
        let r = ring();
        let ctx = QuotientContext::new(&r, vec![parse_polynomial("z", &r).unwrap()]).unwrap();
        let w = vec![f("x*e1 + y*e2 + z*e3", 3)];
        let rep = check_exactness(&w, 1, &ctx).unwrap();
        assert!(rep.verify(&w, &ctx));
        assert_eq!(rep.depth.value, DepthValue::Finite(2));
    }
}

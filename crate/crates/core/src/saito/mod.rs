//! Division by `ω₁, …, ω_k`: decide whether `η` with `Ω∧η ≡ 0 (mod J)` can be
//! written as `η = Σ ω_j∧γ_j`, and certify the answer either way.
//!
//! [`divide`] is a single module-membership lift. [`divide_inductive`] follows
//! the double induction on `(p, k)` through localization at `a₁` and descent
//! to `R/(J + a₁ⁿ)`, and records every intermediate relation in a trace.

mod exactness;
mod inductive;
mod localize;

use std::fmt;

pub use exactness::{
    check_exactness, check_exactness_with, kernel_generators, ExactnessReport, ExactnessVerdict,
};
pub use inductive::{
    divide_inductive, divide_inductive_with, InductiveTrace, StepRecord, TraceNode,
};
pub use localize::{
    basis_completion, localize_divide, BasisCompletion, Localization, LocalizeOutcome,
    DEFAULT_N_CAP,
};

use crate::depth::QuotientContext;
use crate::error::{Error, Result};
use crate::exterior::{
    apply_a, apply_b, basis_sets, flat_module, flatten, omega_of, unflatten, wedge,
};
use crate::exterior::{ExteriorForm, IndexSet, OmegaPackage};
use crate::groebner::{Lifter, ModuleVector};
use crate::parallel::Parallelism;
use crate::polyring::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisionStatus {
    Solved,
    NoSolution,
    InconclusiveBudget,
}

impl fmt::Display for DivisionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisionStatus::Solved => "solved",
            DivisionStatus::NoSolution => "no-solution",
            DivisionStatus::InconclusiveBudget => "inconclusive-budget",
        })
    }
}

/// Outcome of a division attempt.
///
/// When solved, `gammas` holds `k` forms of degree `p − 1` (none when `p = 0`
/// or `k = 0`). When no solution exists, `obstruction` is the nonzero normal
/// form of `flatten(η)` modulo the image of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisionResult {
    pub status: DivisionStatus,
    pub gammas: Vec<ExteriorForm>,
    pub obstruction: Option<ModuleVector>,
    pub trace: Option<InductiveTrace>,
    rank: usize,
    degree: usize,
}

impl DivisionResult {
    fn solved(gammas: Vec<ExteriorForm>, rank: usize, degree: usize) -> Self {
        DivisionResult {
            status: DivisionStatus::Solved,
            gammas,
            obstruction: None,
            trace: None,
            rank,
            degree,
        }
    }

    fn no_solution(obstruction: ModuleVector, rank: usize, degree: usize) -> Self {
        DivisionResult {
            status: DivisionStatus::NoSolution,
            gammas: Vec::new(),
            obstruction: Some(obstruction),
            trace: None,
            rank,
            degree,
        }
    }

    fn budget(rank: usize, degree: usize) -> Self {
        DivisionResult {
            status: DivisionStatus::InconclusiveBudget,
            gammas: Vec::new(),
            obstruction: None,
            trace: None,
            rank,
            degree,
        }
    }

    pub fn is_solved(&self) -> bool {
        self.status == DivisionStatus::Solved
    }

    /// The obstruction as a `p`-form.
    pub fn obstruction_form(&self) -> Option<ExteriorForm> {
        self.obstruction.as_ref().map(|v| {
            unflatten(v, self.rank, self.degree).expect("obstruction has the flattened rank")
        })
    }

    /// Re-checks the certificate: `A(γ) ≡ η (mod J)` when solved, a nonzero
    /// obstruction congruent to `η` modulo the image otherwise. Trace relations
    /// are re-verified as well.
    pub fn verify(
        &self,
        omegas: &[ExteriorForm],
        eta: &ExteriorForm,
        ctx: &QuotientContext,
    ) -> bool {
        match self.status {
            DivisionStatus::Solved => {
                let recon = reconstruct(omegas, &self.gammas, eta);
                let ok = match recon {
                    Some(r) => r
                        .sub(eta)
                        .map(|d| d.is_zero_mod(ctx.ideal()))
                        .unwrap_or(false),
                    None => false,
                };
                ok && self.trace.as_ref().is_none_or(|t| t.verify())
            }
            DivisionStatus::NoSolution => match &self.obstruction {
                Some(v) if !v.is_zero() => ImageOfA::new(omegas, eta.degree(), ctx)
                    .and_then(|img| img.lifter_contains_difference(eta, v))
                    .unwrap_or(false),
                _ => false,
            },
            DivisionStatus::InconclusiveBudget => true,
        }
    }
}

/// `Σ ω_j∧γ_j` as a form of `eta`'s degree; the empty sum is zero.
pub(crate) fn reconstruct(
    omegas: &[ExteriorForm],
    gammas: &[ExteriorForm],
    eta: &ExteriorForm,
) -> Option<ExteriorForm> {
    if gammas.is_empty() {
        return (omegas.is_empty() || eta.degree() == 0)
            .then(|| ExteriorForm::zero(eta.ring(), eta.rank(), eta.degree()));
    }
    apply_a(omegas, gammas).ok()
}

/// Checks the shape of the data and the kernel condition `Ω∧η ≡ 0 (mod J)`.
pub(crate) fn validate(
    omegas: &[ExteriorForm],
    eta: &ExteriorForm,
    ctx: &QuotientContext,
) -> Result<OmegaPackage> {
    ctx.ring().check_same(eta.ring())?;
    let pkg = omega_of(eta.ring(), eta.rank(), omegas)?;
    let product = apply_b(&pkg.omega, eta)?.reduce_mod(ctx.ideal());
    if !product.is_zero() {
        return Err(Error::NotInKernel {
            product: product.to_string(),
        });
    }
    Ok(pkg)
}

/// The submodule `im A + J·∧ᵖ` of `∧ᵖ ≅ R^{C(m,p)}` with a reusable lifter.
///
/// Generator order: `ω_j∧e_S` for `j = 1..k` and `S` in colex order, then
/// `g·e_T` for `g` in the Gröbner basis of `J`.
#[derive(Debug, Clone)]
pub struct ImageOfA {
    omegas: Vec<ExteriorForm>,
    ctx: QuotientContext,
    rank: usize,
    degree: usize,
    lifter: Lifter,
}

impl ImageOfA {
    pub fn new(omegas: &[ExteriorForm], degree: usize, ctx: &QuotientContext) -> Result<Self> {
        let first = omegas.first();
        let rank = match first {
            Some(w) => w.rank(),
            None => {
                return Err(Error::InvalidArgument(
                    "the image of A needs at least one ω".into(),
                ))
            }
        };
        // validates ring, rank and degrees of the ω
        omega_of(ctx.ring(), rank, omegas)?;
        let ring = ctx.ring();
        let module = flat_module(ring, rank, degree);
        let mut gens = Vec::new();
        if degree >= 1 {
            for w in omegas {
                for s in basis_sets(rank, degree - 1) {
                    gens.push(flatten(&wedge(w, &ExteriorForm::basis(ring, rank, s))?));
                }
            }
        }
        for g in ctx.ideal().groebner().polys() {
            for t in 0..module.rank() {
                gens.push(module.basis_vector(t, g));
            }
        }
        let lifter = Lifter::new(&module, &gens)?;
        Ok(ImageOfA {
            omegas: omegas.to_vec(),
            ctx: ctx.clone(),
            rank,
            degree,
            lifter,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Lifts `eta` through `A` modulo `J`; no kernel check is made here.
    pub fn lift(&self, eta: &ExteriorForm) -> Result<DivisionResult> {
        if eta.degree() != self.degree || eta.rank() != self.rank {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: eta.degree(),
            });
        }
        let target = flatten(&eta.reduce_mod(self.ctx.ideal()));
        let cert = self.lifter.lift(&target)?;
        if !cert.is_member() {
            return Ok(DivisionResult::no_solution(
                cert.residual,
                self.rank,
                self.degree,
            ));
        }
        if self.degree == 0 {
            return Ok(DivisionResult::solved(Vec::new(), self.rank, 0));
        }
        let sets = basis_sets(self.rank, self.degree - 1);
        let ring = self.ctx.ring();
        let gammas: Vec<ExteriorForm> = (0..self.omegas.len())
            .map(|j| {
                let terms = sets
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (*s, cert.cofactors[j * sets.len() + i].clone()));
                ExteriorForm::from_terms(ring, self.rank, self.degree - 1, terms)
                    .expect("cofactors share the ring")
                    .reduce_mod(self.ctx.ideal())
            })
            .collect();
        Ok(DivisionResult::solved(gammas, self.rank, self.degree))
    }

    fn lifter_contains_difference(
        &self,
        eta: &ExteriorForm,
        residual: &ModuleVector,
    ) -> Result<bool> {
        let diff = flatten(eta).add(&residual.scale(&-Polynomial::one(self.ctx.ring())))?;
        self.lifter.contains(&diff)
    }
}

/// Decides `η ∈ im A (mod J)` by a module lift. The hypothesis `p < depth I(Ω)`
/// is not required; when it holds the answer is always positive.
pub fn divide(
    omegas: &[ExteriorForm],
    eta: &ExteriorForm,
    ctx: &QuotientContext,
) -> Result<DivisionResult> {
    validate(omegas, eta, ctx)?;
    divide_unchecked(omegas, eta, ctx)
}

fn divide_unchecked(
    omegas: &[ExteriorForm],
    eta: &ExteriorForm,
    ctx: &QuotientContext,
) -> Result<DivisionResult> {
    if omegas.is_empty() {
        // Ω = 1, so the kernel condition already forced η ≡ 0.
        return Ok(DivisionResult::solved(Vec::new(), eta.rank(), eta.degree()));
    }
    ImageOfA::new(omegas, eta.degree(), ctx)?.lift(eta)
}

/// Divides several forms of one degree against a shared Gröbner basis.
pub fn divide_batch(
    omegas: &[ExteriorForm],
    etas: &[ExteriorForm],
    ctx: &QuotientContext,
    parallelism: Parallelism,
) -> Result<Vec<DivisionResult>> {
    for eta in etas {
        validate(omegas, eta, ctx)?;
    }
    let Some(first) = etas.first() else {
        return Ok(Vec::new());
    };
    if omegas.is_empty() {
        return Ok(etas
            .iter()
            .map(|e| DivisionResult::solved(Vec::new(), e.rank(), e.degree()))
            .collect());
    }
    let image = ImageOfA::new(omegas, first.degree(), ctx)?;
    parallelism
        .map(etas, |e| image.lift(e))
        .into_iter()
        .collect()
}

/// `k×k` minor of the coefficient matrix of the `ω` on the rows `rows`
/// (1-based basis indices), as a matrix `W[t][j] = coefficient of e_{rows[t]} in ω_j`.
pub(crate) fn minor_matrix(omegas: &[ExteriorForm], rows: IndexSet) -> Vec<Vec<Polynomial>> {
    rows.indices()
        .into_iter()
        .map(|i| {
            omegas
                .iter()
                .map(|w| w.coefficient(IndexSet::singleton(i)))
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Polynomial>]) -> Option<Polynomial> {
    let n = m.len();
    if n == 0 {
        return None;
    }
    let ring = m[0][0].ring().clone();
    fn rec(
        m: &[Vec<Polynomial>],
        rows: &[usize],
        cols: &[usize],
        ring: &crate::polyring::RingSpec,
    ) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one(ring);
        }
        let r = rows[0];
        let mut acc = Polynomial::zero(ring);
        for (t, &c) in cols.iter().enumerate() {
            if m[r][c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &m[r][c] * &rec(m, &rows[1..], &rest, ring);
            acc = if t % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }
    let rows: Vec<usize> = (0..n).collect();
    Some(rec(m, &rows, &rows, &ring))
}

/// Adjugate: `adj[j][t] = (−1)^{j+t} det(m without row t and column j)`, so
/// that `m·adj = det(m)·Id`.
pub fn adjugate(m: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    if n == 1 {
        return vec![vec![Polynomial::one(&ring)]];
    }
    let mut adj = vec![vec![Polynomial::zero(&ring); n]; n];
    for t in 0..n {
        for j in 0..n {
            let sub: Vec<Vec<Polynomial>> = (0..n)
                .filter(|&r| r != t)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let d = determinant(&sub).expect("nonempty");
            adj[j][t] = if (j + t) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::parse_form;
    use crate::polyring::{parse_polynomial, RingSpec};

    fn ring3() -> RingSpec {
        RingSpec::grevlex(&["x", "y", "z"]).unwrap()
    }

    fn f(s: &str, rank: usize) -> ExteriorForm {
        parse_form(s, &ring3(), rank).unwrap()
    }

    #[test]
    fn divide_examples() {
        let ctx = QuotientContext::polynomial_ring(&ring3());
        let w = vec![f("x*e1 + y*e2 + z*e3", 3)];
        let eta = w[0].clone();
        let r = divide(&w, &eta, &ctx).unwrap();
        assert!(r.is_solved() && r.verify(&w, &eta, &ctx));

        let eta = f("-y*e{1,2} - z*e{1,3}", 3);
        let r = divide(&w, &eta, &ctx).unwrap();
        assert!(r.is_solved() && r.verify(&w, &eta, &ctx));

        let w = vec![f("x*e1", 2)];
        let eta = f("e1", 2);
        let r = divide(&w, &eta, &ctx).unwrap();
        assert_eq!(r.status, DivisionStatus::NoSolution);
        assert_eq!(r.obstruction_form().unwrap().to_string(), "e{1}");
        assert!(r.verify(&w, &eta, &ctx));
    }

    #[test]
    fn divide_rejects_non_kernel() {
        let ctx = QuotientContext::polynomial_ring(&ring3());
        let err = divide(&[f("x*e1", 2)], &f("e2", 2), &ctx).unwrap_err();
        assert_eq!(
            err,
            Error::NotInKernel {
                product: "x*e{1,2}".into()
            }
        );
    }

    #[test]
    fn determinant_and_adjugate() {
        let r = ring3();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let m = vec![vec![p("x"), p("y")], vec![p("z"), p("1")]];
        assert_eq!(determinant(&m).unwrap(), p("x - y*z"));
        let adj = adjugate(&m);
        for i in 0..2 {
            for j in 0..2 {
                let s = &(&m[i][0] * &adj[0][j]) + &(&m[i][1] * &adj[1][j]);
                let expect = if i == j { p("x - y*z") } else { p("0") };
                assert_eq!(s, expect);
            }
        }
    }
}

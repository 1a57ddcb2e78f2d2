//! `aⁿη ∈ im A (mod J)` for `a ∈ I(Ω)`: the search over `n`, and the
//! fraction-free basis completion when `a` is a maximal minor of the `ω`.

use super::{adjugate, determinant, minor_matrix, validate, ImageOfA};
use crate::depth::QuotientContext;
use crate::error::{Error, Result};
use crate::exterior::{apply_a, wedge, ExteriorForm, IndexSet};
use crate::polyring::{Coeff, Polynomial};

pub const DEFAULT_N_CAP: u32 = 32;

/// Fraction-free basis completion over the minor `W_I` with determinant `d`:
/// `d·e_{i_t} = Σ_j adj_{jt} ω_j + v_t` where each `v_t` avoids the rows in
/// `I`. Expanding `d^{n₁}η` splits it into `A(γ)` plus a remainder `ρ` in the
/// span of the complementary basis, and `d^{n₂}ρ ≡ 0 (mod J)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisCompletion {
    pub minor: IndexSet,
    pub n1: u32,
    pub n2: u32,
    /// Satisfies `aⁿ¹⁺ⁿ²·η ≡ A(γ) (mod J)` for the element `a` it was built for.
    pub gammas: Vec<ExteriorForm>,
}

impl BasisCompletion {
    pub fn n(&self) -> u32 {
        self.n1 + self.n2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Localization {
    /// Smallest `n` with `aⁿη ∈ im A (mod J)`.
    pub n: u32,
    pub gammas: Vec<ExteriorForm>,
    pub construction: Option<BasisCompletion>,
}

impl Localization {
    /// Re-expands `aⁿη − A(γ)` modulo `J`.
    pub fn verify(
        &self,
        a: &Polynomial,
        omegas: &[ExteriorForm],
        eta: &ExteriorForm,
        ctx: &QuotientContext,
    ) -> bool {
        let check = |n: u32, gammas: &[ExteriorForm]| {
            let lhs = eta.scale(&a.pow(n));
            match super::reconstruct(omegas, gammas, eta) {
                Some(rhs) => lhs
                    .sub(&rhs)
                    .map(|d| d.is_zero_mod(ctx.ideal()))
                    .unwrap_or(false),
                None => false,
            }
        };
        check(self.n, &self.gammas)
            && self
                .construction
                .as_ref()
                .is_none_or(|c| check(c.n(), &c.gammas))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocalizeOutcome {
    Found(Localization),
    BudgetExhausted { cap: u32 },
}

impl LocalizeOutcome {
    pub fn found(&self) -> Option<&Localization> {
        match self {
            LocalizeOutcome::Found(l) => Some(l),
            LocalizeOutcome::BudgetExhausted { .. } => None,
        }
    }
}

/// Finds the least `n ≤ n_cap` with `aⁿη = Σ ω_j∧γ_j (mod J)`.
///
/// `a` must lie in `I(Ω) + J`. When `a` is congruent to a nonzero multiple of a
/// coefficient of `Ω`, the basis completion on that minor is also carried out
/// and reported.
pub fn localize_divide(
    a: &Polynomial,
    omegas: &[ExteriorForm],
    eta: &ExteriorForm,
    ctx: &QuotientContext,
    n_cap: u32,
) -> Result<LocalizeOutcome> {
    let pkg = validate(omegas, eta, ctx)?;
    ctx.ring().check_same(a.ring())?;
    if omegas.is_empty() {
        return Err(Error::InvalidArgument(
            "localization needs at least one ω".into(),
        ));
    }
    if !ctx.extended(pkg.coeff_ideal.generators()).contains(a) {
        return Err(Error::Hypothesis(format!("{a} does not lie in I(Ω) + J")));
    }
    let image = ImageOfA::new(omegas, eta.degree(), ctx)?;
    localize_in(&image, &pkg.omega, omegas, a, eta, ctx, n_cap)
}

/// Exponent search against a prepared image, plus the basis completion when
/// `a` matches a coefficient of `omega`.
pub(crate) fn localize_in(
    image: &ImageOfA,
    omega: &ExteriorForm,
    omegas: &[ExteriorForm],
    a: &Polynomial,
    eta: &ExteriorForm,
    ctx: &QuotientContext,
    n_cap: u32,
) -> Result<LocalizeOutcome> {
    let outcome = search_exponent(image, a, eta, ctx, n_cap)?;
    let LocalizeOutcome::Found(mut loc) = outcome else {
        return Ok(outcome);
    };
    let ra = ctx.reduce(a);
    if !ra.is_zero() {
        for (set, c) in omega.terms() {
            let Some(lambda) = proportionality(&ra, &ctx.reduce(c)) else {
                continue;
            };
            if let Some(mut bc) = basis_completion(omegas, *set, eta, ctx, n_cap)? {
                // a ≡ λ·d, hence aⁿ ≡ λⁿ·dⁿ
                let scale = Polynomial::constant(ctx.ring(), num_traits::Pow::pow(&lambda, bc.n()));
                bc.gammas = bc
                    .gammas
                    .iter()
                    .map(|g| g.scale(&scale).reduce_mod(ctx.ideal()))
                    .collect();
                loc.construction = Some(bc);
                break;
            }
        }
    }
    Ok(LocalizeOutcome::Found(loc))
}

/// `λ` with `a = λ·c`, if any.
fn proportionality(a: &Polynomial, c: &Polynomial) -> Option<Coeff> {
    let (la, lc) = (a.leading_coeff()?, c.leading_coeff()?);
    let lambda = la / lc;
    (c.scale(&lambda) == *a).then_some(lambda)
}

fn search_exponent(
    image: &ImageOfA,
    a: &Polynomial,
    eta: &ExteriorForm,
    ctx: &QuotientContext,
    n_cap: u32,
) -> Result<LocalizeOutcome> {
    let a = ctx.reduce(a);
    let mut current = eta.reduce_mod(ctx.ideal());
    for n in 0..=n_cap {
        let r = image.lift(&current)?;
        if r.is_solved() {
            return Ok(LocalizeOutcome::Found(Localization {
                n,
                gammas: r.gammas,
                construction: None,
            }));
        }
        current = current.scale(&a).reduce_mod(ctx.ideal());
    }
    Ok(LocalizeOutcome::BudgetExhausted { cap: n_cap })
}

/// One factor of `d^q·e_S`: either a basis vector outside the minor, or
/// `d·e_i = Σ_j c_j ω_j + v` for a row `i` of the minor.
enum Factor {
    Plain(ExteriorForm),
    Split {
        coeffs: Vec<Polynomial>,
        v: ExteriorForm,
        full: ExteriorForm,
    },
}

/// Runs the basis completion for the minor on `rows` (a `k`-subset of
/// `1..=m`). Returns `None` when `d^{n₂}ρ` does not vanish modulo `J` for any
/// `n₂ ≤ n_cap`.
pub fn basis_completion(
    omegas: &[ExteriorForm],
    rows: IndexSet,
    eta: &ExteriorForm,
    ctx: &QuotientContext,
    n_cap: u32,
) -> Result<Option<BasisCompletion>> {
    let k = omegas.len();
    if k == 0 || rows.len() != k || rows.max_index() > eta.rank() {
        return Err(Error::InvalidArgument(format!(
            "{rows} is not a {k}-row minor"
        )));
    }
    let ring = ctx.ring();
    let rank = eta.rank();
    let p = eta.degree();
    let w = minor_matrix(omegas, rows);
    let d = determinant(&w).expect("k ≥ 1");
    let adj = adjugate(&w);
    let row_list = rows.indices();

    let factor = |s: usize| -> Factor {
        let e = ExteriorForm::basis(ring, rank, IndexSet::singleton(s));
        match row_list.iter().position(|&i| i == s) {
            None => Factor::Plain(e),
            Some(t) => {
                let coeffs: Vec<Polynomial> = (0..k).map(|j| adj[j][t].clone()).collect();
                let mut v = e.scale(&d);
                for (j, c) in coeffs.iter().enumerate() {
                    v = v.sub(&omegas[j].scale(c)).expect("same shape");
                }
                Factor::Split {
                    coeffs,
                    v,
                    full: e.scale(&d),
                }
            }
        }
    };

    let n1 = eta
        .terms()
        .iter()
        .map(|(s, _)| (s.mask() & rows.mask()).count_ones())
        .max()
        .unwrap_or(0);
    let mut gammas: Vec<ExteriorForm> = if p == 0 {
        Vec::new()
    } else {
        vec![ExteriorForm::zero(ring, rank, p - 1); k]
    };
    let mut rho = ExteriorForm::zero(ring, rank, p);
    for (s, c) in eta.terms() {
        let q = (s.mask() & rows.mask()).count_ones();
        let mult = c * &d.pow(n1 - q);
        // invariant: product so far = Σ ω_j∧g_j + no_u
        let mut g: Vec<Option<ExteriorForm>> = vec![None; k];
        let mut no_u = ExteriorForm::scalar(rank, &Polynomial::one(ring));
        for idx in s.indices() {
            match factor(idx) {
                Factor::Plain(e) => {
                    for gj in g.iter_mut().flatten() {
                        *gj = wedge(gj, &e)?;
                    }
                    no_u = wedge(&no_u, &e)?;
                }
                Factor::Split { coeffs, v, full } => {
                    let sign_neg = no_u.degree() % 2 == 1;
                    for (j, gj) in g.iter_mut().enumerate() {
                        let extra = no_u.scale(&coeffs[j]);
                        let extra = if sign_neg { extra.neg() } else { extra };
                        *gj = Some(match gj.take() {
                            Some(old) => wedge(&old, &full)?.add(&extra)?,
                            None => extra,
                        });
                    }
                    no_u = wedge(&no_u, &v)?;
                }
            }
        }
        for (j, gj) in g.into_iter().enumerate() {
            if let Some(gj) = gj {
                gammas[j] = gammas[j].add(&gj.scale(&mult))?;
            }
        }
        rho = rho.add(&no_u.scale(&mult))?;
    }
    if k > 0 && p > 0 {
        let lhs = eta.scale(&d.pow(n1));
        debug_assert_eq!(lhs, apply_a(omegas, &gammas)?.add(&rho)?);
    }
    let dr = ctx.reduce(&d);
    let mut rem = rho.reduce_mod(ctx.ideal());
    let mut n2 = 0;
    while !rem.is_zero() {
        if n2 == n_cap {
            return Ok(None);
        }
        n2 += 1;
        rem = rem.scale(&dr).reduce_mod(ctx.ideal());
    }
    let lift = d.pow(n2);
    let gammas = gammas
        .iter()
        .map(|g| g.scale(&lift).reduce_mod(ctx.ideal()))
        .collect();
    Ok(Some(BasisCompletion {
        minor: rows,
        n1,
        n2,
        gammas,
    }))
}

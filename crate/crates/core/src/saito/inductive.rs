//! The constructive proof as an algorithm: double induction on `(p, k)`.
//!
//! With `a = a₁` the first element of a regular sequence in `I(Ω)`:
//!
//! 1. `aⁿη = Σ ω_j∧γ_j` by localization (`n ≥ 1`);
//! 2. over `R/(J + aⁿ)` each `γ_j` lies in the kernel in degree `p − 1`, and
//!    `a₂, …, a_r` stays regular there, so `γ_j ≡ Σ_i ω_i∧ξ_{ji}`;
//! 3. `γ_j − Σ_i ω_i∧ξ_{ji} = aⁿ·ζ_j (mod J)`, whence
//!    `aⁿ(η − Σ ω_j∧ζ_j) = Σ ω_j∧ω_i∧ξ_{ji}`;
//! 4. since `aⁿ` is a non-zero-divisor, `η' = η − Σ ω_j∧ζ_j` is killed by
//!    `ω₂∧…∧ω_k`, and the case `(p, k − 1)` gives `η' = Σ_{i≥2} ω_i∧θ_i`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use super::localize::{localize_in, LocalizeOutcome, DEFAULT_N_CAP};
use super::{reconstruct, validate, DivisionResult, ImageOfA};
use crate::depth::{is_regular_sequence, QuotientContext, RegularityVerdict};
use crate::error::{Error, Result};
use crate::exterior::{apply_a, wedge, wedge_all, ExteriorForm};
use crate::groebner::{ideal_member_with_lift, Ideal};
use crate::polyring::Polynomial;

/// Record of one separation step; see the module documentation for the
/// meaning of each field.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub a: Polynomial,
    /// Least exponent found by the lift search.
    pub minimal_n: u32,
    /// Exponent used: `n₁ + n₂` from the basis completion when `a` is a
    /// coefficient of `Ω`, otherwise `max(minimal_n, 1)`.
    pub n: u32,
    /// `(n₁, n₂)` when the basis completion supplied the `γ_j`.
    pub completion: Option<(u32, u32)>,
    /// `aⁿ` reduced modulo `J`.
    pub power: Polynomial,
    /// The `γ_j` with `aⁿη ≡ Σ ω_j∧γ_j`.
    pub localized: Vec<ExteriorForm>,
    /// `ξ_{ji}`; empty rows when `p = 1`.
    pub xi: Vec<Vec<ExteriorForm>>,
    pub zeta: Vec<ExteriorForm>,
    pub eta_prime: ExteriorForm,
    /// `θ_i` for `i = 2..k`; empty when `k = 1`.
    pub theta: Vec<ExteriorForm>,
    /// One subproblem over `R/(J + aⁿ)` per `j`, present when `p ≥ 2`.
    pub quotient_children: Vec<TraceNode>,
    /// The `(p, k − 1)` subproblem, present when `k ≥ 2`.
    pub drop_child: Option<TraceNode>,
}

/// A subproblem `η = Σ ω_j∧γ_j` modulo `J = (quotient)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceNode {
    pub p: usize,
    pub k: usize,
    pub omegas: Vec<ExteriorForm>,
    pub eta: ExteriorForm,
    pub quotient: Vec<Polynomial>,
    pub gammas: Vec<ExteriorForm>,
    /// `None` for a base case, where `η ≡ 0 (mod J)`.
    pub step: Option<Box<StepRecord>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InductiveTrace {
    pub root: TraceNode,
}

fn congruent(a: &ExteriorForm, b: &ExteriorForm, j: &Ideal) -> bool {
    a.sub(b).map(|d| d.is_zero_mod(j)).unwrap_or(false)
}

impl TraceNode {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.eta.ring(), self.quotient.clone()).expect("shared ring")
    }

    /// Re-expands every relation recorded at this node and below, each modulo
    /// its own `J`.
    pub fn verify(&self) -> bool {
        let j = self.ideal();
        let Some(recon) = reconstruct(&self.omegas, &self.gammas, &self.eta) else {
            return false;
        };
        if !congruent(&recon, &self.eta, &j) {
            return false;
        }
        let Some(step) = &self.step else {
            return self.eta.is_zero_mod(&j);
        };
        let zero_lower = || ExteriorForm::zero(self.eta.ring(), self.eta.rank(), self.p - 1);
        let a_n = step.a.pow(step.n);
        if !j.contains(&(&a_n - &step.power)) {
            return false;
        }
        // aⁿη ≡ Σ ω_j∧γ_j
        let Ok(loc) = apply_a(&self.omegas, &step.localized) else {
            return false;
        };
        if !congruent(&self.eta.scale(&a_n), &loc, &j) {
            return false;
        }
        // γ_j ≡ Σ_i ω_i∧ξ_{ji} + aⁿζ_j
        let mut double = ExteriorForm::zero(self.eta.ring(), self.eta.rank(), self.p);
        for (jdx, g) in step.localized.iter().enumerate() {
            let lower = if step.xi[jdx].is_empty() {
                zero_lower()
            } else {
                match apply_a(&self.omegas, &step.xi[jdx]) {
                    Ok(f) => f,
                    Err(_) => return false,
                }
            };
            let rhs = lower.add(&step.zeta[jdx].scale(&step.power)).unwrap();
            if !congruent(g, &rhs, &j) {
                return false;
            }
            if self.p >= 2 {
                double = double
                    .add(&wedge(&self.omegas[jdx], &lower).unwrap())
                    .unwrap();
            }
        }
        // aⁿ(η − Σ ω_j∧ζ_j) ≡ Σ ω_j∧ω_i∧ξ_{ji}, and η' is that difference
        let Ok(az) = apply_a(&self.omegas, &step.zeta) else {
            return false;
        };
        let diff = self.eta.sub(&az).unwrap();
        if !congruent(&diff, &step.eta_prime, &j)
            || !congruent(&diff.scale(&step.power), &double, &j)
        {
            return false;
        }
        let tail_ok = if self.k == 1 {
            step.eta_prime.is_zero_mod(&j)
        } else {
            match apply_a(&self.omegas[1..], &step.theta) {
                Ok(t) => congruent(&step.eta_prime, &t, &j),
                Err(_) => false,
            }
        };
        if !tail_ok {
            return false;
        }
        let jq = {
            let mut g = self.quotient.clone();
            g.push(step.power.clone());
            Ideal::new(self.eta.ring(), g).unwrap()
        };
        let children_ok = step.quotient_children.iter().enumerate().all(|(jdx, c)| {
            c.ideal().same_ideal(&jq)
                && c.gammas == step.xi[jdx]
                && congruent(&c.eta, &step.localized[jdx], &jq)
                && c.verify()
        });
        let drop_ok = step.drop_child.as_ref().map_or(self.k == 1, |c| {
            c.ideal().same_ideal(&j)
                && c.gammas == step.theta
                && congruent(&c.eta, &step.eta_prime, &j)
                && c.verify()
        });
        children_ok && drop_ok
    }

    pub fn node_count(&self) -> usize {
        1 + self.step.as_ref().map_or(0, |s| {
            s.quotient_children
                .iter()
                .map(TraceNode::node_count)
                .sum::<usize>()
                + s.drop_child.as_ref().map_or(0, TraceNode::node_count)
        })
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        let pad = "  ".repeat(indent);
        let q = if self.quotient.is_empty() {
            "0".to_string()
        } else {
            self.quotient
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(f, "{pad}node p = {}, k = {}, J = ({q})", self.p, self.k)?;
        writeln!(f, "{pad}  eta = {}", self.eta)?;
        let Some(s) = &self.step else {
            return writeln!(f, "{pad}  base case: eta = 0 mod J");
        };
        write!(f, "{pad}  a = {}, n = {} (least {})", s.a, s.n, s.minimal_n)?;
        if let Some((n1, n2)) = s.completion {
            write!(f, ", completion n1 = {n1}, n2 = {n2}")?;
        }
        writeln!(f)?;
        writeln!(f, "{pad}  a^n = {}", s.power)?;
        for (j, g) in s.localized.iter().enumerate() {
            writeln!(f, "{pad}  gamma[{}] = {g}", j + 1)?;
        }
        for (j, row) in s.xi.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                writeln!(f, "{pad}  xi[{},{}] = {x}", j + 1, i + 1)?;
            }
        }
        for (j, z) in s.zeta.iter().enumerate() {
            writeln!(f, "{pad}  zeta[{}] = {z}", j + 1)?;
        }
        writeln!(f, "{pad}  eta' = {}", s.eta_prime)?;
        for (i, t) in s.theta.iter().enumerate() {
            writeln!(f, "{pad}  theta[{}] = {t}", i + 2)?;
        }
        for c in &s.quotient_children {
            c.write(f, indent + 1)?;
        }
        if let Some(c) = &s.drop_child {
            c.write(f, indent + 1)?;
        }
        for (j, g) in self.gammas.iter().enumerate() {
            writeln!(f, "{pad}  result[{}] = {g}", j + 1)?;
        }
        Ok(())
    }
}

impl InductiveTrace {
    pub fn verify(&self) -> bool {
        self.root.verify()
    }

    pub fn a(&self) -> Option<&Polynomial> {
        self.root.step.as_ref().map(|s| &s.a)
    }

    pub fn n(&self) -> Option<u32> {
        self.root.step.as_ref().map(|s| s.n)
    }

    /// `J ⊂ J + a₁ⁿ ⊂ …` along the first quotient descent, as generator lists.
    pub fn quotient_chain(&self) -> Vec<Vec<Polynomial>> {
        let mut out = vec![self.root.quotient.clone()];
        let mut node = &self.root;
        while let Some(c) = node.step.as_ref().and_then(|s| s.quotient_children.first()) {
            out.push(c.quotient.clone());
            node = c;
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.root.node_count()
    }
}

impl fmt::Display for InductiveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.write(f, 0)
    }
}

type CacheKey = (usize, usize, String);

struct Solver<'a> {
    omegas: &'a [ExteriorForm],
    n_cap: u32,
    images: RefCell<HashMap<CacheKey, Rc<ImageOfA>>>,
}

fn internal(msg: &str) -> Error {
    Error::Hypothesis(format!("inductive step failed: {msg}"))
}

impl Solver<'_> {
    fn image(&self, offset: usize, p: usize, ctx: &QuotientContext) -> Result<Rc<ImageOfA>> {
        let key_j: Vec<String> = ctx
            .ideal()
            .groebner()
            .polys()
            .iter()
            .map(|g| g.to_string())
            .collect();
        let key = (offset, p, key_j.join(";"));
        if let Some(img) = self.images.borrow().get(&key) {
            return Ok(img.clone());
        }
        let img = Rc::new(ImageOfA::new(&self.omegas[offset..], p, ctx)?);
        self.images.borrow_mut().insert(key, img.clone());
        Ok(img)
    }

    /// `None` when an exponent search ran out of budget.
    fn solve(
        &self,
        offset: usize,
        eta: &ExteriorForm,
        seq: &[Polynomial],
        ctx: &QuotientContext,
    ) -> Result<Option<TraceNode>> {
        let omegas = &self.omegas[offset..];
        let (k, p) = (omegas.len(), eta.degree());
        let ring = ctx.ring();
        let eta = eta.reduce_mod(ctx.ideal());
        let quotient = ctx.ideal().groebner().polys().to_vec();
        let base = |eta: ExteriorForm| {
            let gammas = if p == 0 {
                Vec::new()
            } else {
                vec![ExteriorForm::zero(ring, eta.rank(), p - 1); k]
            };
            TraceNode {
                p,
                k,
                omegas: omegas.to_vec(),
                eta,
                quotient: quotient.clone(),
                gammas,
                step: None,
            }
        };
        if eta.is_zero() {
            return Ok(Some(base(eta)));
        }
        if p == 0 {
            return Err(internal("a nonzero scalar is annihilated by Ω"));
        }
        let a = seq
            .first()
            .ok_or_else(|| internal("regular sequence exhausted"))?;
        let omega = wedge_all(ring, eta.rank(), omegas)?;
        let image = self.image(offset, p, ctx)?;
        let loc = match localize_in(&image, &omega, omegas, a, &eta, ctx, self.n_cap)? {
            LocalizeOutcome::Found(l) => l,
            LocalizeOutcome::BudgetExhausted { .. } => return Ok(None),
        };
        // The basis completion is the constructive route; the lift search is
        // the fallback when `a` is not a coefficient of Ω.
        let (n, localized, completion) = match &loc.construction {
            Some(c) if c.n() >= 1 => (c.n(), c.gammas.clone(), Some((c.n1, c.n2))),
            _ if loc.n == 0 => {
                let r = image.lift(&eta.scale(a))?;
                if !r.is_solved() {
                    return Err(internal("a multiple of a divisible form does not lift"));
                }
                (1, r.gammas, None)
            }
            _ => (loc.n, loc.gammas.clone(), None),
        };
        let power = ctx.reduce(&a.pow(n));
        let jq = ctx.extended(std::slice::from_ref(&power));
        let ctx_q = QuotientContext::from_ideal(jq.clone());
        let mut lift_gens = vec![power.clone()];
        lift_gens.extend(quotient.iter().cloned());
        let lift_ideal = Ideal::new(ring, lift_gens)?;

        let mut xi = Vec::with_capacity(k);
        let mut zeta = Vec::with_capacity(k);
        let mut quotient_children = Vec::new();
        for g in &localized {
            let (row, rest) = if p == 1 {
                (Vec::new(), g.clone())
            } else {
                let Some(child) = self.solve(offset, &g.reduce_mod(&jq), &seq[1..], &ctx_q)? else {
                    return Ok(None);
                };
                let rest = g.sub(&apply_a(omegas, &child.gammas)?)?;
                let row = child.gammas.clone();
                quotient_children.push(child);
                (row, rest)
            };
            let mut terms = Vec::with_capacity(rest.terms().len());
            for (s, c) in rest.terms() {
                let cert = ideal_member_with_lift(c, &lift_ideal)?;
                if !cert.is_member() {
                    return Err(internal("quotient solution does not lift"));
                }
                terms.push((*s, cert.cofactors[0].clone()));
            }
            zeta.push(
                ExteriorForm::from_terms(ring, eta.rank(), p - 1, terms)?.reduce_mod(ctx.ideal()),
            );
            xi.push(row);
        }
        let eta_prime = eta.sub(&apply_a(omegas, &zeta)?)?.reduce_mod(ctx.ideal());
        let (theta, drop_child) = if k == 1 {
            if !eta_prime.is_zero() {
                return Err(internal("remainder survives a non-zero-divisor"));
            }
            (Vec::new(), None)
        } else {
            let Some(child) = self.solve(offset + 1, &eta_prime, seq, ctx)? else {
                return Ok(None);
            };
            (child.gammas.clone(), Some(child))
        };
        let mut gammas = zeta.clone();
        for (i, t) in theta.iter().enumerate() {
            gammas[i + 1] = gammas[i + 1].add(t)?;
        }
        let gammas = gammas.iter().map(|g| g.reduce_mod(ctx.ideal())).collect();
        let step = StepRecord {
            a: a.clone(),
            minimal_n: loc.n,
            n,
            completion,
            power,
            localized,
            xi,
            zeta,
            eta_prime,
            theta,
            quotient_children,
            drop_child,
        };
        Ok(Some(TraceNode {
            p,
            k,
            omegas: omegas.to_vec(),
            eta,
            quotient,
            gammas,
            step: Some(Box::new(step)),
        }))
    }
}

/// [`divide_inductive_with`] with the default exponent cap.
pub fn divide_inductive(
    omegas: &[ExteriorForm],
    eta: &ExteriorForm,
    regseq: &[Polynomial],
    ctx: &QuotientContext,
) -> Result<DivisionResult> {
    divide_inductive_with(omegas, eta, regseq, ctx, DEFAULT_N_CAP)
}

/// Solves `η = Σ ω_j∧γ_j` by the inductive construction.
///
/// `regseq` must be a regular sequence on `R/J` inside `I(Ω) + J` of length
/// greater than `p`; this is checked before any work is done.
pub fn divide_inductive_with(
    omegas: &[ExteriorForm],
    eta: &ExteriorForm,
    regseq: &[Polynomial],
    ctx: &QuotientContext,
    n_cap: u32,
) -> Result<DivisionResult> {
    let pkg = validate(omegas, eta, ctx)?;
    let p = eta.degree();
    let solver = Solver {
        omegas,
        n_cap,
        images: RefCell::new(HashMap::new()),
    };
    if !omegas.is_empty() {
        if regseq.len() <= p {
            return Err(Error::Hypothesis(format!(
                "a regular sequence of length > {p} is required, got {}",
                regseq.len()
            )));
        }
        let coeffs = ctx.extended(pkg.coeff_ideal.generators());
        if let Some(a) = regseq.iter().find(|a| !coeffs.contains(a)) {
            return Err(Error::Hypothesis(format!("{a} does not lie in I(Ω) + J")));
        }
        match is_regular_sequence(regseq, ctx) {
            RegularityVerdict::Regular => {}
            RegularityVerdict::NotProper => {
                return Err(Error::Hypothesis(
                    "the sequence generates the unit ideal modulo J".into(),
                ))
            }
            RegularityVerdict::ZeroDivisor { index } => {
                return Err(Error::Hypothesis(format!(
                    "element {index} of the sequence is a zero divisor"
                )))
            }
        }
    }
    let Some(root) = solver.solve(0, eta, regseq, ctx)? else {
        return Ok(DivisionResult::budget(eta.rank(), p));
    };
    let mut result = DivisionResult::solved(root.gammas.clone(), eta.rank(), p);
    result.trace = Some(InductiveTrace { root });
    Ok(result)
}

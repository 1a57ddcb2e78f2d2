//! Depth (grade) of ideals in `R` and in quotients `R/J`.
//!
//! Two independent routes are kept side by side: over the polynomial ring
//! depth equals codimension, `n − dim R/I`; in general the grade is read off
//! the Koszul complex of a generating set, `r − max{j : H_j ≠ 0}`. Regular
//! sequences serve as witnesses for both.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{basis_sets, binomial, IndexSet};
use crate::groebner::{
    ideal_quotient, krull_dim, module_syzygies, FreeModule, Ideal, Lifter, ModuleVector,
};
use crate::parallel::Parallelism;
use crate::polyring::{MonomialOrder, Polynomial, RingSpec};

/// Depth value; `Infinite` is the convention for the unit ideal and compares
/// above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DepthValue {
    Finite(usize),
    Infinite,
}

impl DepthValue {
    /// `p < self`.
    pub fn exceeds(self, p: usize) -> bool {
        match self {
            DepthValue::Finite(d) => p < d,
            DepthValue::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            DepthValue::Finite(d) => Some(d),
            DepthValue::Infinite => None,
        }
    }
}

impl fmt::Display for DepthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthValue::Finite(d) => write!(f, "{d}"),
            DepthValue::Infinite => f.write_str("∞"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthMethod {
    DimensionFormula,
    KoszulGrade,
    SequenceSearch,
}

impl DepthMethod {
    pub fn name(self) -> &'static str {
        match self {
            DepthMethod::DimensionFormula => "dimension-formula",
            DepthMethod::KoszulGrade => "koszul-grade",
            DepthMethod::SequenceSearch => "sequence-search",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DepthReport {
    pub value: DepthValue,
    /// A regular sequence in the ideal of length `value` (finite, positive case).
    pub witness: Option<Vec<Polynomial>>,
    pub method: DepthMethod,
}

/// Computation in `R/J`; `J = 0` is the polynomial ring itself.
#[derive(Debug, Clone)]
pub struct QuotientContext {
    ring: RingSpec,
    j: Ideal,
}

impl QuotientContext {
    pub fn polynomial_ring(ring: &RingSpec) -> Self {
        QuotientContext {
            ring: ring.clone(),
            j: Ideal::zero(ring),
        }
    }

    /// `R/(generators)`; the unit ideal is rejected.
    pub fn new(ring: &RingSpec, generators: Vec<Polynomial>) -> Result<Self> {
        let j = Ideal::new(ring, generators)?;
        if j.is_unit() {
            return Err(Error::InvalidArgument(
                "the quotient ideal must be proper".into(),
            ));
        }
        Ok(QuotientContext {
            ring: ring.clone(),
            j,
        })
    }

    /// Internal variant used by recursive constructions; `J` may become large
    /// but is proper whenever the regular-sequence hypotheses hold.
    pub(crate) fn from_ideal(j: Ideal) -> Self {
        QuotientContext {
            ring: j.ring().clone(),
            j,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.j
    }

    /// Whether `J = 0`.
    pub fn is_polynomial_ring(&self) -> bool {
        self.j.is_zero()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.is_polynomial_ring() {
            f.clone()
        } else {
            self.j.normal_form(f)
        }
    }

    /// `J + (extra)`, Gröbner basis generators first.
    pub fn extended(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.j.groebner().polys().to_vec();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens).expect("same ring")
    }
}

/// Whether `f` is a non-zero-divisor on `R/I`, i.e. `(I : f) = I`.
pub fn is_nonzerodivisor(f: &Polynomial, ideal: &Ideal) -> bool {
    if ideal.is_unit() {
        return true;
    }
    let f = ideal.normal_form(f);
    if f.is_zero() {
        return false;
    }
    match ideal_quotient(ideal, &f) {
        Ok(q) => q.same_ideal(ideal),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityVerdict {
    Regular,
    /// `J + (a₁, …, a_r)` is the unit ideal.
    NotProper,
    /// 1-based index of the first element that is a zero divisor modulo its
    /// predecessors.
    ZeroDivisor {
        index: usize,
    },
}

impl RegularityVerdict {
    pub fn is_regular(self) -> bool {
        self == RegularityVerdict::Regular
    }
}

/// Checks that `seq` is a regular sequence on `R/J`.
pub fn is_regular_sequence(seq: &[Polynomial], ctx: &QuotientContext) -> RegularityVerdict {
    if ctx.extended(seq).is_unit() {
        return RegularityVerdict::NotProper;
    }
    for i in 0..seq.len() {
        let prefix = ctx.extended(&seq[..i]);
        if !is_nonzerodivisor(&seq[i], &prefix) {
            return RegularityVerdict::ZeroDivisor { index: i + 1 };
        }
    }
    RegularityVerdict::Regular
}

/// Knobs for [`find_regular_sequence`].
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub seed: u64,
    pub attempts_per_level: usize,
    pub parallelism: Parallelism,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 12345,
            attempts_per_level: 200,
            parallelism: Parallelism::default(),
        }
    }
}

/// Nonzero elements ordered by total degree, then by leading monomial,
/// lexicographically smallest first. Duplicates are dropped.
pub fn preferred_order(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut v: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    v.sort_by(|a, b| {
        a.total_degree().cmp(&b.total_degree()).then_with(|| {
            MonomialOrder::Lex.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        })
    });
    v.dedup();
    v
}

fn random_combination(gens: &[Polynomial], rng: &mut ChaCha8Rng) -> Option<Polynomial> {
    let ring = gens[0].ring();
    let mut acc = Polynomial::zero(ring);
    for g in gens {
        let c: i64 = rng.gen_range(-2..=2);
        if c != 0 {
            acc = &acc + &g.scale(&crate::polyring::Coeff::from_integer(c.into()));
        }
    }
    (!acc.is_zero()).then_some(acc)
}

/// Greedy search for a regular sequence of length `target_len` inside `ideal`
/// on `R/J`: at each level the generators are tried first, in the given order, then random
/// combinations with coefficients in `{−2, …, 2}`. `None` means the budget
/// ran out; it is not a proof that no such sequence exists.
pub fn find_regular_sequence(
    ideal: &Ideal,
    ctx: &QuotientContext,
    target_len: usize,
    options: &SearchOptions,
) -> Option<Vec<Polynomial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut gens: Vec<Polynomial> = Vec::new();
    for g in ideal.generators() {
        if !ctx.ideal().contains(g) && !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    let mut seq: Vec<Polynomial> = Vec::new();
    if target_len == 0 {
        return Some(seq);
    }
    if gens.is_empty() {
        return None;
    }
    while seq.len() < target_len {
        let current = ctx.extended(&seq);
        let mut candidates: Vec<Polynomial> = gens
            .iter()
            .filter(|g| !current.contains(g))
            .cloned()
            .collect();
        while candidates.len() < options.attempts_per_level {
            // bounded number of draws even when most combinations vanish
            let mut drawn = None;
            for _ in 0..8 {
                if let Some(c) = random_combination(&gens, &mut rng) {
                    drawn = Some(c);
                    break;
                }
            }
            match drawn {
                Some(c) => candidates.push(c),
                None => break,
            }
        }
        candidates.truncate(options.attempts_per_level.max(1));
        let accept = |c: &Polynomial| {
            is_nonzerodivisor(c, &current) && current.extended(std::slice::from_ref(c)).is_proper()
        };
        let c = options.parallelism.find_first(&candidates, accept)?;
        seq.push(c.clone());
    }
    Some(seq)
}

fn witness_for(ideal: &Ideal, ctx: &QuotientContext, value: DepthValue) -> Option<Vec<Polynomial>> {
    match value {
        DepthValue::Finite(d) if d > 0 => {
            find_regular_sequence(ideal, ctx, d, &SearchOptions::default())
        }
        _ => None,
    }
}

/// Depth over the polynomial ring as `n − dim R/I`, with the conventions
/// `depth(0) = 0` and `depth(R) = ∞`.
pub fn depth_via_dim(ideal: &Ideal) -> DepthReport {
    let value = if ideal.is_zero() {
        DepthValue::Finite(0)
    } else if ideal.is_unit() {
        DepthValue::Infinite
    } else {
        let dim = krull_dim(ideal).expect("proper ideal");
        DepthValue::Finite(ideal.ring().nvars() - dim)
    };
    let ctx = QuotientContext::polynomial_ring(ideal.ring());
    DepthReport {
        value,
        witness: witness_for(ideal, &ctx, value),
        method: DepthMethod::DimensionFormula,
    }
}

/// Koszul differential `d_j : ∧^j R^r → ∧^{j−1} R^r`,
/// `e_S ↦ Σ_t (−1)^t f_{s_t} e_{S∖s_t}`, as one column per basis element.
fn koszul_columns(gens: &[Polynomial], j: usize) -> Vec<ModuleVector> {
    let r = gens.len();
    let ring = gens[0].ring();
    let targets = binomial(r, j - 1);
    basis_sets(r, j)
        .into_iter()
        .map(|s| {
            let mut comps = vec![Polynomial::zero(ring); targets];
            for (t, idx) in s.indices().into_iter().enumerate() {
                let face: IndexSet = s.without(idx);
                let c = &gens[idx - 1];
                let slot = &mut comps[face.colex_rank()];
                *slot = if t % 2 == 0 { &*slot + c } else { &*slot - c };
            }
            ModuleVector::new(ring, comps)
        })
        .collect()
}

fn j_multiples(ctx: &QuotientContext, rank: usize) -> Vec<ModuleVector> {
    let fm = FreeModule::new(ctx.ring(), rank);
    let mut out = Vec::new();
    for g in ctx.ideal().groebner().polys() {
        for t in 0..rank {
            out.push(fm.basis_vector(t, g));
        }
    }
    out
}

/// `H_j(f; R/J) ≠ 0` for `1 ≤ j ≤ r`.
fn koszul_homology_nonzero(gens: &[Polynomial], ctx: &QuotientContext, j: usize) -> bool {
    let r = gens.len();
    let ring = ctx.ring();
    let src = binomial(r, j);
    let dst = binomial(r, j - 1);
    let mut cols = koszul_columns(gens, j);
    cols.extend(j_multiples(ctx, dst));
    let syz = module_syzygies(&FreeModule::new(ring, dst), &cols).expect("uniform rank");
    let kernel: Vec<ModuleVector> = syz
        .into_iter()
        .map(|s| {
            ModuleVector::new(
                ring,
                s.into_components()
                    .into_iter()
                    .take(src)
                    .map(|c| ctx.reduce(&c))
                    .collect(),
            )
        })
        .filter(|v| !v.is_zero())
        .collect();
    if kernel.is_empty() {
        return false;
    }
    let mut image = if j < r {
        koszul_columns(gens, j + 1)
    } else {
        Vec::new()
    };
    image.extend(j_multiples(ctx, src));
    let lifter = Lifter::new(&FreeModule::new(ring, src), &image).expect("uniform rank");
    kernel
        .iter()
        .any(|v| !lifter.contains(v).expect("uniform rank"))
}

/// Drops generators that vanish modulo `J` or lie in the ideal of the others.
fn trim_generators(ideal: &Ideal, ctx: &QuotientContext) -> Vec<Polynomial> {
    let mut gens: Vec<Polynomial> = preferred_order(ideal.generators())
        .into_iter()
        .map(|g| ctx.reduce(&g))
        .filter(|g| !g.is_zero())
        .collect();
    gens.dedup();
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        let others: Vec<Polynomial> = gens
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        if ctx.extended(&others).contains(&gens[i]) {
            gens.remove(i);
        }
    }
    gens
}

/// Grade of `I` on `R/J` from Koszul homology of a generating set.
pub fn grade_via_koszul(ideal: &Ideal, ctx: &QuotientContext) -> DepthReport {
    let report = |value| DepthReport {
        value,
        witness: witness_for(ideal, ctx, value),
        method: DepthMethod::KoszulGrade,
    };
    if ctx.extended(ideal.generators()).is_unit() {
        return report(DepthValue::Infinite);
    }
    let gens = trim_generators(ideal, ctx);
    let r = gens.len();
    if r == 0 {
        return report(DepthValue::Finite(0));
    }
    for j in (1..=r).rev() {
        if koszul_homology_nonzero(&gens, ctx, j) {
            return report(DepthValue::Finite(r - j));
        }
    }
    report(DepthValue::Finite(r))
}

/// Depth by the best available method: the dimension formula over the
/// polynomial ring, Koszul grade in proper quotients.
pub fn depth(ideal: &Ideal, ctx: &QuotientContext) -> DepthReport {
    if ctx.is_polynomial_ring() {
        depth_via_dim(ideal)
    } else {
        grade_via_koszul(ideal, ctx)
    }
}

/// Lower bound for the depth by sequence search alone: the longest regular
/// sequence found, up to `limit`.
pub fn depth_via_search(
    ideal: &Ideal,
    ctx: &QuotientContext,
    limit: usize,
    options: &SearchOptions,
) -> DepthReport {
    let mut best: Option<Vec<Polynomial>> = None;
    for len in 1..=limit {
        match find_regular_sequence(ideal, ctx, len, options) {
            Some(s) => best = Some(s),
            None => break,
        }
    }
    let value = DepthValue::Finite(best.as_ref().map(|s| s.len()).unwrap_or(0));
    DepthReport {
        value,
        witness: best,
        method: DepthMethod::SequenceSearch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial_list;

    fn ring3() -> RingSpec {
        RingSpec::grevlex(&["x", "y", "z"]).unwrap()
    }

    fn ideal(r: &RingSpec, s: &str) -> Ideal {
        Ideal::new(r, parse_polynomial_list(s, r).unwrap()).unwrap()
    }

    fn seq(r: &RingSpec, s: &str) -> Vec<Polynomial> {
        parse_polynomial_list(s, r).unwrap()
    }

    #[test]
    fn regular_sequence_examples() {
        let r = ring3();
        let ctx = QuotientContext::polynomial_ring(&r);
        assert_eq!(
            is_regular_sequence(&seq(&r, "x, y, z"), &ctx),
            RegularityVerdict::Regular
        );
        assert_eq!(
            is_regular_sequence(&seq(&r, "x, x*y"), &ctx),
            RegularityVerdict::ZeroDivisor { index: 2 }
        );
        let r1 = RingSpec::grevlex(&["x"]).unwrap();
        let ctx1 = QuotientContext::polynomial_ring(&r1);
        assert_eq!(
            is_regular_sequence(&seq(&r1, "x - 1, x"), &ctx1),
            RegularityVerdict::NotProper
        );
    }

    #[test]
    fn dim_examples() {
        let r = ring3();
        assert_eq!(
            depth_via_dim(&ideal(&r, "x, y, z")).value,
            DepthValue::Finite(3)
        );
        assert_eq!(
            depth_via_dim(&ideal(&r, "x*y, x*z")).value,
            DepthValue::Finite(1)
        );
        assert_eq!(
            depth_via_dim(&ideal(&r, "x, x - 1")).value,
            DepthValue::Infinite
        );
        assert_eq!(depth_via_dim(&Ideal::zero(&r)).value, DepthValue::Finite(0));
    }

    #[test]
    fn koszul_examples() {
        let r2 = RingSpec::grevlex(&["x", "y"]).unwrap();
        let ctx = QuotientContext::polynomial_ring(&r2);
        assert_eq!(
            grade_via_koszul(&ideal(&r2, "x, y"), &ctx).value,
            DepthValue::Finite(2)
        );
        let q = QuotientContext::new(&r2, seq(&r2, "x*y")).unwrap();
        let rep = grade_via_koszul(&ideal(&r2, "x, y"), &q);
        assert_eq!(rep.value, DepthValue::Finite(1));
        let w = rep.witness.unwrap();
        assert!(is_regular_sequence(&w, &q).is_regular());
        assert_eq!(
            grade_via_koszul(&ideal(&r2, "x, 1 + x"), &ctx).value,
            DepthValue::Infinite
        );
        // image of the ideal is zero in the quotient
        let qx = QuotientContext::new(&r2, seq(&r2, "x")).unwrap();
        assert_eq!(
            grade_via_koszul(&ideal(&r2, "x^2"), &qx).value,
            DepthValue::Finite(0)
        );
    }

    #[test]
    fn search_examples() {
        let r = ring3();
        let ctx = QuotientContext::polynomial_ring(&r);
        let opts = SearchOptions::default();
        let s = find_regular_sequence(&ideal(&r, "x, y, z"), &ctx, 3, &opts).unwrap();
        assert_eq!(s, seq(&r, "x, y, z"));
        let i = ideal(&r, "x*y, x*z, y*z");
        let s = find_regular_sequence(&i, &ctx, 2, &opts).unwrap();
        assert_eq!(s.len(), 2);
        assert!(is_regular_sequence(&s, &ctx).is_regular());
        assert!(s.iter().all(|a| i.contains(a)));
        assert!(find_regular_sequence(&ideal(&r, "x"), &ctx, 2, &opts).is_none());
    }

    #[test]
    fn quotient_context_rejects_unit() {
        let r = ring3();
        assert!(QuotientContext::new(&r, seq(&r, "x, x + 1")).is_err());
    }
}

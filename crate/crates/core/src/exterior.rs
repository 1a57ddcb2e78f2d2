//! The exterior algebra `∧•M` of a free module `M = R^m` with polynomial
//! coefficients.
//!
//! Basis `p`-vectors `e_{i₁}∧…∧e_{i_p}` are stored with strictly increasing
//! indices, encoded as a bitmask. Sorting masks numerically enumerates the
//! `p`-subsets in colexicographic order, which is also the coordinate order used
//! by [`flatten`]: `{1,2} < {1,3} < {2,3} < {1,4} < …`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{FreeModule, Ideal, ModuleVector};
use crate::polyring::parse::{tokenize, ExprAlgebra, Parser};
use crate::polyring::{Coeff, Polynomial, RingSpec};

/// Largest supported rank of `M`.
pub const MAX_RANK: usize = 31;

/// A strictly increasing index tuple `i₁ < … < i_p` in `1..=m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// From 1-based indices, which must be strictly increasing.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > MAX_RANK || i <= last {
                return Err(Error::InvalidArgument(format!(
                    "index tuple {indices:?} must be strictly increasing within 1..={MAX_RANK}"
                )));
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        Ok(IndexSet(mask))
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&i));
        IndexSet(1 << (i - 1))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 & (1 << (i - 1)) != 0
    }

    /// Sign of `e_self ∧ e_other` relative to `e_{self ∪ other}`, or `None`
    /// when the tuples share an index.
    pub fn wedge_sign(self, other: IndexSet) -> Option<bool> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let t = rest.trailing_zeros();
            rest &= rest - 1;
            let above = if t >= 31 {
                0
            } else {
                self.0 & !((1u32 << (t + 1)) - 1)
            };
            inversions += above.count_ones();
        }
        Some(inversions % 2 == 1)
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> IndexSet {
        IndexSet(self.0 & !(1 << (i - 1)))
    }

    /// Position among the `p`-subsets in colexicographic order.
    pub fn colex_rank(self) -> usize {
        let mut rank = 0;
        for (t, i) in self.indices().into_iter().enumerate() {
            rank += binomial(i - 1, t + 1);
        }
        rank
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "e{{{}}}", parts.join(","))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All `p`-subsets of `1..=m` in colex order.
pub fn basis_sets(m: usize, p: usize) -> Vec<IndexSet> {
    assert!(m <= MAX_RANK);
    if p > m {
        return Vec::new();
    }
    if p == 0 {
        return vec![IndexSet::EMPTY];
    }
    let mut out = Vec::with_capacity(binomial(m, p));
    let limit: u64 = 1u64 << m;
    let mut v: u64 = (1u64 << p) - 1;
    while v < limit {
        out.push(IndexSet(v as u32));
        // Gosper's hack: next mask with the same popcount
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// A homogeneous element of `∧^p(R^m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorForm {
    ring: RingSpec,
    rank: usize,
    degree: usize,
    terms: Vec<(IndexSet, Polynomial)>,
}

impl ExteriorForm {
    pub fn zero(ring: &RingSpec, rank: usize, degree: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank exceeds {MAX_RANK}");
        ExteriorForm {
            ring: ring.clone(),
            rank,
            degree,
            terms: Vec::new(),
        }
    }

    /// A degree-0 form, i.e. an element of `∧⁰M = R`.
    pub fn scalar(rank: usize, c: &Polynomial) -> Self {
        let mut f = Self::zero(c.ring(), rank, 0);
        if !c.is_zero() {
            f.terms.push((IndexSet::EMPTY, c.clone()));
        }
        f
    }

    /// `c·e_set`.
    pub fn monomial(rank: usize, set: IndexSet, c: &Polynomial) -> Self {
        assert!(set.max_index() <= rank, "index beyond rank");
        let mut f = Self::zero(c.ring(), rank, set.len());
        if !c.is_zero() {
            f.terms.push((set, c.clone()));
        }
        f
    }

    /// `e_set` with coefficient one.
    pub fn basis(ring: &RingSpec, rank: usize, set: IndexSet) -> Self {
        Self::monomial(rank, set, &Polynomial::one(ring))
    }

    /// The 1-form `Σ coeffs[i]·e_{i+1}`.
    pub fn one_form(rank: usize, coeffs: &[Polynomial]) -> Result<Self> {
        let ring = coeffs.first().map(|c| c.ring().clone()).ok_or_else(|| {
            Error::InvalidArgument("a 1-form needs at least one coefficient".into())
        })?;
        if coeffs.len() != rank {
            return Err(Error::LengthMismatch {
                expected: rank,
                found: coeffs.len(),
            });
        }
        Self::from_terms(
            &ring,
            rank,
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (IndexSet::singleton(i + 1), c.clone())),
        )
    }

    pub fn from_terms<I>(ring: &RingSpec, rank: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IndexSet, Polynomial)>,
    {
        let mut acc: BTreeMap<IndexSet, Polynomial> = BTreeMap::new();
        for (s, c) in terms {
            ring.check_same(c.ring())?;
            if s.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: s.len(),
                });
            }
            if s.max_index() > rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: s.max_index(),
                });
            }
            let e = acc.entry(s).or_insert_with(|| Polynomial::zero(ring));
            *e = &*e + &c;
        }
        let mut f = Self::zero(ring, rank, degree);
        f.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(f)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(IndexSet, Polynomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, set: IndexSet) -> Polynomial {
        self.terms
            .iter()
            .find(|(s, _)| *s == set)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// Nonzero coefficients in colex order.
    pub fn coefficients(&self) -> Vec<Polynomial> {
        self.terms.iter().map(|(_, c)| c.clone()).collect()
    }

    /// Largest total degree among the coefficients.
    pub fn coeff_degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .filter_map(|(_, c)| c.total_degree())
            .max()
    }

    fn check_compatible(&self, other: &ExteriorForm) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    fn combine(&self, other: &ExteriorForm, negate: bool) -> Result<ExteriorForm> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut acc: BTreeMap<IndexSet, Polynomial> = self.terms.iter().cloned().collect();
        for (s, c) in &other.terms {
            let e = acc
                .entry(*s)
                .or_insert_with(|| Polynomial::zero(&self.ring));
            *e = if negate { &*e - c } else { &*e + c };
        }
        let mut f = ExteriorForm::zero(&self.ring, self.rank, self.degree);
        f.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(f)
    }

    pub fn add(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> ExteriorForm {
        self.map_coefficients(|c| -c)
    }

    pub fn scale(&self, c: &Polynomial) -> ExteriorForm {
        self.map_coefficients(|x| x * c)
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coefficients<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> ExteriorForm {
        let mut out = ExteriorForm::zero(&self.ring, self.rank, self.degree);
        out.terms = self
            .terms
            .iter()
            .map(|(s, c)| (*s, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        out
    }

    /// Coefficients reduced to normal form modulo `j`.
    pub fn reduce_mod(&self, j: &Ideal) -> ExteriorForm {
        if j.groebner().is_empty() {
            return self.clone();
        }
        self.map_coefficients(|c| j.normal_form(c))
    }

    pub fn is_zero_mod(&self, j: &Ideal) -> bool {
        self.terms.iter().all(|(_, c)| j.contains(c))
    }
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.terms[0].1);
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let term = if c.is_one() {
                s.to_string()
            } else if (-c).is_one() {
                format!("-{s}")
            } else if c.len() > 1 {
                format!("({c})*{s}")
            } else {
                format!("{c}*{s}")
            };
            if i == 0 {
                f.write_str(&term)?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExteriorForm[m={}, p={}]({self})",
            self.rank, self.degree
        )
    }
}

/// Exterior product; bilinear, graded-antisymmetric, zero above degree `m`.
pub fn wedge(a: &ExteriorForm, b: &ExteriorForm) -> Result<ExteriorForm> {
    a.check_compatible(b)?;
    let degree = a.degree + b.degree;
    let mut acc: BTreeMap<IndexSet, Polynomial> = BTreeMap::new();
    if degree <= a.rank {
        for (sa, ca) in &a.terms {
            for (sb, cb) in &b.terms {
                if let Some(negative) = sa.wedge_sign(*sb) {
                    let prod = ca * cb;
                    let e = acc
                        .entry(sa.union(*sb))
                        .or_insert_with(|| Polynomial::zero(&a.ring));
                    *e = if negative { &*e - &prod } else { &*e + &prod };
                }
            }
        }
    }
    let mut f = ExteriorForm::zero(&a.ring, a.rank, degree);
    f.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(f)
}

/// Iterated wedge `f₁∧…∧f_r`; the empty product is the scalar 1.
pub fn wedge_all(ring: &RingSpec, rank: usize, forms: &[ExteriorForm]) -> Result<ExteriorForm> {
    let mut acc = ExteriorForm::scalar(rank, &Polynomial::one(ring));
    for f in forms {
        acc = wedge(&acc, f)?;
    }
    Ok(acc)
}

/// `ω₁, …, ω_k`, their product `Ω` and the coefficient ideal `I(Ω)`.
#[derive(Debug, Clone)]
pub struct OmegaPackage {
    pub ring: RingSpec,
    pub rank: usize,
    pub omegas: Vec<ExteriorForm>,
    pub omega: ExteriorForm,
    pub coeff_ideal: Ideal,
}

impl OmegaPackage {
    pub fn k(&self) -> usize {
        self.omegas.len()
    }
}

/// Builds `Ω = ω₁∧…∧ω_k` (the scalar 1 when `k = 0`) and `I(Ω)`.
pub fn omega_of(ring: &RingSpec, rank: usize, omegas: &[ExteriorForm]) -> Result<OmegaPackage> {
    for w in omegas {
        ring.check_same(w.ring())?;
        if w.rank != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: w.rank,
            });
        }
        if w.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: w.degree,
            });
        }
    }
    let omega = wedge_all(ring, rank, omegas)?;
    let coeff_ideal = coeff_ideal(&omega);
    Ok(OmegaPackage {
        ring: ring.clone(),
        rank,
        omegas: omegas.to_vec(),
        omega,
        coeff_ideal,
    })
}

/// The ideal generated by all coefficients of `form`.
pub fn coeff_ideal(form: &ExteriorForm) -> Ideal {
    Ideal::new(&form.ring, form.coefficients()).expect("coefficients share the form's ring")
}

/// `A(γ₁, …, γ_k) = Σ ω_j∧γ_j`.
pub fn apply_a(omegas: &[ExteriorForm], gammas: &[ExteriorForm]) -> Result<ExteriorForm> {
    if omegas.len() != gammas.len() {
        return Err(Error::LengthMismatch {
            expected: omegas.len(),
            found: gammas.len(),
        });
    }
    let first = omegas
        .first()
        .ok_or_else(|| Error::InvalidArgument("A needs at least one ω".into()))?;
    let gdeg = gammas[0].degree;
    let mut acc = ExteriorForm::zero(&first.ring, first.rank, gdeg + 1);
    for (w, g) in omegas.iter().zip(gammas) {
        if w.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: w.degree,
            });
        }
        if g.degree != gdeg {
            return Err(Error::DegreeMismatch {
                expected: gdeg,
                found: g.degree,
            });
        }
        acc = acc.add(&wedge(w, g)?)?;
    }
    Ok(acc)
}

/// `Bη = Ω∧η`.
pub fn apply_b(omega: &ExteriorForm, eta: &ExteriorForm) -> Result<ExteriorForm> {
    wedge(omega, eta)
}

/// Coordinates of `f` in `R^{C(m,p)}`, indexed by colex rank.
pub fn flatten(f: &ExteriorForm) -> ModuleVector {
    let n = binomial(f.rank, f.degree);
    let mut comps = vec![Polynomial::zero(&f.ring); n];
    for (s, c) in &f.terms {
        comps[s.colex_rank()] = c.clone();
    }
    ModuleVector::new(&f.ring, comps)
}

/// Inverse of [`flatten`].
pub fn unflatten(v: &ModuleVector, rank: usize, degree: usize) -> Result<ExteriorForm> {
    let sets = basis_sets(rank, degree);
    if v.rank() != sets.len() {
        return Err(Error::RankMismatch {
            expected: sets.len(),
            found: v.rank(),
        });
    }
    ExteriorForm::from_terms(
        v.ring(),
        rank,
        degree,
        sets.into_iter().zip(v.components().iter().cloned()),
    )
}

/// The free module `∧^p(R^m) ≅ R^{C(m,p)}`.
pub fn flat_module(ring: &RingSpec, rank: usize, degree: usize) -> FreeModule {
    FreeModule::new(ring, binomial(rank, degree))
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Clone)]
struct Mixed(BTreeMap<IndexSet, Polynomial>);

struct FormAlgebra<'r> {
    ring: &'r RingSpec,
    rank: usize,
}

impl FormAlgebra<'_> {
    fn clean(&self, mut m: BTreeMap<IndexSet, Polynomial>) -> Mixed {
        m.retain(|_, c| !c.is_zero());
        Mixed(m)
    }
}

impl ExprAlgebra for FormAlgebra<'_> {
    type Value = Mixed;

    fn rational(&self, c: Coeff) -> Mixed {
        self.clean(BTreeMap::from([(
            IndexSet::EMPTY,
            Polynomial::constant(self.ring, c),
        )]))
    }

    fn variable(&self, name: &str, pos: usize) -> Result<Mixed> {
        match self.ring.var_index(name) {
            Some(i) => Ok(Mixed(BTreeMap::from([(
                IndexSet::EMPTY,
                Polynomial::variable(self.ring, i),
            )]))),
            None => Err(Error::UnknownVariable {
                name: name.to_string(),
                pos,
            }),
        }
    }

    fn basis(&self, indices: &[usize], pos: usize) -> Result<Mixed> {
        let mut set = IndexSet::EMPTY;
        let mut negative = false;
        for &i in indices {
            if i == 0 || i > self.rank {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("basis index {i} outside 1..={}", self.rank),
                });
            }
            match set.wedge_sign(IndexSet::singleton(i)) {
                Some(neg) => {
                    negative ^= neg;
                    set = set.union(IndexSet::singleton(i));
                }
                None => return Ok(Mixed(BTreeMap::new())),
            }
        }
        let c = if negative {
            -Polynomial::one(self.ring)
        } else {
            Polynomial::one(self.ring)
        };
        Ok(Mixed(BTreeMap::from([(set, c)])))
    }

    fn add(&self, a: Mixed, b: Mixed, _pos: usize) -> Result<Mixed> {
        let mut m = a.0;
        for (s, c) in b.0 {
            let e = m.entry(s).or_insert_with(|| Polynomial::zero(self.ring));
            *e = &*e + &c;
        }
        Ok(self.clean(m))
    }

    fn neg(&self, a: Mixed) -> Mixed {
        Mixed(a.0.into_iter().map(|(s, c)| (s, -c)).collect())
    }

    fn mul(&self, a: Mixed, b: Mixed, _pos: usize) -> Result<Mixed> {
        let mut m: BTreeMap<IndexSet, Polynomial> = BTreeMap::new();
        for (sa, ca) in &a.0 {
            for (sb, cb) in &b.0 {
                if let Some(negative) = sa.wedge_sign(*sb) {
                    let prod = ca * cb;
                    let e = m
                        .entry(sa.union(*sb))
                        .or_insert_with(|| Polynomial::zero(self.ring));
                    *e = if negative { &*e - &prod } else { &*e + &prod };
                }
            }
        }
        Ok(self.clean(m))
    }

    fn pow(&self, a: Mixed, n: u32, pos: usize) -> Result<Mixed> {
        if a.0.keys().any(|s| !s.is_empty()) {
            return Err(Error::Syntax {
                pos,
                msg: "only scalars can be raised to a power".into(),
            });
        }
        let c =
            a.0.get(&IndexSet::EMPTY)
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(self.ring));
        Ok(self.clean(BTreeMap::from([(IndexSet::EMPTY, c.pow(n))])))
    }
}

fn mixed_to_form(
    m: Mixed,
    ring: &RingSpec,
    rank: usize,
    degree: Option<usize>,
) -> Result<ExteriorForm> {
    let degrees: std::collections::BTreeSet<usize> = m.0.keys().map(|s| s.len()).collect();
    let deg = match (degrees.len(), degree) {
        (0, d) => d.unwrap_or(0),
        (1, d) => {
            let found = *degrees.iter().next().unwrap();
            if let Some(d) = d {
                if d != found {
                    return Err(Error::DegreeMismatch { expected: d, found });
                }
            }
            found
        }
        _ => {
            return Err(Error::Syntax {
                pos: 1,
                msg: format!("form mixes degrees {degrees:?}"),
            })
        }
    };
    ExteriorForm::from_terms(ring, rank, deg, m.0)
}

/// Parses a form such as `-y*e{1,2} - z*e{1,3}`. A form without basis tokens is
/// a scalar; the zero form gets degree 0 (see [`parse_form_of_degree`]).
pub fn parse_form(text: &str, ring: &RingSpec, rank: usize) -> Result<ExteriorForm> {
    parse_form_impl(text, ring, rank, None)
}

/// Like [`parse_form`], but requires (and for `0`, assigns) the given degree.
pub fn parse_form_of_degree(
    text: &str,
    ring: &RingSpec,
    rank: usize,
    degree: usize,
) -> Result<ExteriorForm> {
    parse_form_impl(text, ring, rank, Some(degree))
}

fn parse_form_impl(
    text: &str,
    ring: &RingSpec,
    rank: usize,
    degree: Option<usize>,
) -> Result<ExteriorForm> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::InvalidArgument(format!(
            "rank must lie in 1..={MAX_RANK}"
        )));
    }
    let alg = FormAlgebra { ring, rank };
    let mut parser = Parser::new(tokenize(text, true)?, &alg);
    let m = parser.expr()?;
    parser.expect_end()?;
    mixed_to_form(m, ring, rank, degree)
}

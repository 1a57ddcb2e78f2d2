use std::sync::OnceLock;

use super::engine::{self, Elem, MPoly};
use super::module::{syzygies_raw, FreeModule, ModuleVector};
use super::LiftCertificate;
use crate::error::{Error, Result};
use crate::polyring::{MonomialOrder, Polynomial, RingSpec};

pub(crate) fn to_mpoly(p: &Polynomial) -> MPoly {
    MPoly(
        p.terms()
            .iter()
            .map(|(m, c)| (0, m.clone(), c.clone()))
            .collect(),
    )
}

pub(crate) fn from_mpoly(ring: &RingSpec, p: &MPoly) -> Polynomial {
    Polynomial::from_sorted(
        ring,
        p.0.iter().map(|(_, m, c)| (m.clone(), c.clone())).collect(),
    )
}

/// Splits a representation (positions = generator indices) into cofactors.
pub(crate) fn rep_to_cofactors(ring: &RingSpec, rep: &MPoly, count: usize) -> Vec<Polynomial> {
    let mut buckets: Vec<Vec<_>> = vec![Vec::new(); count];
    for (p, m, c) in &rep.0 {
        buckets[*p as usize].push((m.clone(), c.clone()));
    }
    buckets
        .into_iter()
        .map(|ts| Polynomial::from_terms(ring, ts))
        .collect()
}

/// A reduced Gröbner basis; unique for the ring's order, so equality of
/// bases is equality of ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingSpec,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True iff the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).map(|r| r.is_zero()).unwrap_or(false)
    }

    fn elems(&self) -> Vec<Elem> {
        self.polys
            .iter()
            .map(|p| Elem {
                poly: to_mpoly(p),
                rep: None,
            })
            .collect()
    }
}

fn compute_gb(ring: &RingSpec, gens: &[Polynomial], track: bool) -> Vec<Elem> {
    let m: Vec<MPoly> = gens.iter().map(to_mpoly).collect();
    engine::groebner(&ring.order(), ring.nvars(), &m, track, true)
}

/// Reduced Gröbner basis of `gens` under `order`. The result lives in the ring
/// with the same variables and the requested order.
pub fn buchberger(
    ring: &RingSpec,
    gens: &[Polynomial],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.ring().variables() != ring.variables() {
            return Err(Error::RingMismatch);
        }
    }
    let target = ring.with_order(order)?;
    let gens: Vec<Polynomial> = gens.iter().map(|g| g.with_ring(&target)).collect();
    let elems = compute_gb(&target, &gens, false);
    let polys = elems.iter().map(|e| from_mpoly(&target, &e.poly)).collect();
    Ok(GroebnerBasis {
        ring: target,
        polys,
    })
}

/// Remainder of multivariate division by a Gröbner basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    f.ring().check_same(&gb.ring)?;
    let elems = gb.elems();
    let refs: Vec<&Elem> = elems.iter().collect();
    let (r, _) = engine::reduce(&gb.ring.order(), &to_mpoly(f), None, &refs);
    Ok(from_mpoly(&gb.ring, &r))
}

#[derive(Debug, Clone)]
struct TrackedBasis {
    elems: Vec<Elem>,
}

/// An ideal given by generators, with its reduced Gröbner basis computed at
/// most once on demand.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingSpec,
    generators: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
    tracked: OnceLock<TrackedBasis>,
}

impl Ideal {
    pub fn new(ring: &RingSpec, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check_same(g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            gb: OnceLock::new(),
            tracked: OnceLock::new(),
        })
    }

    pub fn zero(ring: &RingSpec) -> Self {
        Ideal::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: &RingSpec) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let elems = compute_gb(&self.ring, &self.generators, false);
            let polys = elems
                .iter()
                .map(|e| from_mpoly(&self.ring, &e.poly))
                .collect();
            GroebnerBasis {
                ring: self.ring.clone(),
                polys,
            }
        })
    }

    fn tracked(&self) -> &TrackedBasis {
        self.tracked.get_or_init(|| TrackedBasis {
            elems: compute_gb(&self.ring, &self.generators, true),
        })
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.groebner().reduce(f).expect("same ring")
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// `I ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.groebner().polys().iter().all(|g| self.contains(g))
    }

    /// Equality as ideals (reduced Gröbner bases coincide).
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.groebner() == other.groebner()
    }

    /// `self + (extra)`.
    pub fn extended(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// The ideal with the reduced basis as its generators.
    pub fn minimalized(&self) -> Ideal {
        Ideal::new(&self.ring, self.groebner().polys().to_vec()).expect("same ring")
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.same_ideal(other)
    }
}

/// Decides `f ∈ I` and returns cofactors with respect to `I`'s generators.
pub fn ideal_member_with_lift(
    f: &Polynomial,
    ideal: &Ideal,
) -> Result<LiftCertificate<Polynomial>> {
    ideal.ring.check_same(f.ring())?;
    let tracked = ideal.tracked();
    let refs: Vec<&Elem> = tracked.elems.iter().collect();
    let zero_rep = Some(MPoly::default());
    let (r, rep) = engine::reduce(&ideal.ring.order(), &to_mpoly(f), zero_rep, &refs);
    // rep = −Σ qₖ·repₖ, so the cofactors are its negation.
    let rep = rep
        .expect("tracked")
        .scale(&(-num_rational::BigRational::from_integer(1.into())));
    Ok(LiftCertificate {
        cofactors: rep_to_cofactors(&ideal.ring, &rep, ideal.generators.len()),
        residual: from_mpoly(&ideal.ring, &r),
    })
}

/// `(I : f) = {g : g·f ∈ I}`, read off the syzygies of `(f, g₁, …, g_s)`.
pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    ideal.ring.check_same(f.ring())?;
    if f.is_zero() {
        return Err(Error::QuotientByZero);
    }
    let ring = &ideal.ring;
    let mut gens = vec![ModuleVector::new(ring, vec![f.clone()])];
    gens.extend(
        ideal
            .groebner()
            .polys()
            .iter()
            .map(|g| ModuleVector::new(ring, vec![g.clone()])),
    );
    let fm = FreeModule::new(ring, 1);
    let syz = syzygies_raw(&fm, &gens);
    let quotient_gens: Vec<Polynomial> = syz
        .iter()
        .map(|s| s.components()[0].clone())
        .filter(|c| !c.is_zero())
        .collect();
    let q = Ideal::new(ring, quotient_gens)?;
    Ok(q.minimalized())
}

/// Krull dimension of `R/I`: the largest set of variables containing the
/// support of no leading monomial of the Gröbner basis.
pub fn krull_dim(ideal: &Ideal) -> Result<usize> {
    let gb = ideal.groebner();
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = ideal.ring.nvars();
    assert!(n < 64, "too many variables for the independent-set search");
    let supports: Vec<u64> = gb
        .polys()
        .iter()
        .map(|p| {
            p.leading_monomial()
                .unwrap()
                .support()
                .fold(0u64, |acc, v| acc | (1 << v))
        })
        .collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    // Subsets in decreasing popcount order would prune earlier; n is small.
    let mut u: u64 = 0;
    loop {
        let size = u.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !u != 0) {
            best = size;
        }
        if u == full {
            break;
        }
        u += 1;
    }
    Ok(best)
}

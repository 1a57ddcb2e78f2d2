use num_rational::BigRational;

use super::engine::{self, Elem, MPoly};
use super::ideal::rep_to_cofactors;
use super::LiftCertificate;
use crate::error::{Error, Result};
use crate::polyring::{MonomialOrder, Polynomial, RingSpec};

/// The free module `R^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: RingSpec,
    rank: usize,
}

impl FreeModule {
    pub fn new(ring: &RingSpec, rank: usize) -> Self {
        FreeModule {
            ring: ring.clone(),
            rank,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn zero(&self) -> ModuleVector {
        ModuleVector::new(&self.ring, vec![Polynomial::zero(&self.ring); self.rank])
    }

    /// `c·e_index`.
    pub fn basis_vector(&self, index: usize, c: &Polynomial) -> ModuleVector {
        let mut v = self.zero();
        v.components[index] = c.clone();
        v
    }

    fn check(&self, v: &ModuleVector) -> Result<()> {
        self.ring.check_same(&v.ring)?;
        if v.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: v.rank(),
            });
        }
        Ok(())
    }
}

/// An element of `R^q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    ring: RingSpec,
    components: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn new(ring: &RingSpec, components: Vec<Polynomial>) -> Self {
        for c in &components {
            assert_eq!(c.ring(), ring, "component in a different ring");
        }
        ModuleVector {
            ring: ring.clone(),
            components,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.ring.check_same(&other.ring)?;
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ModuleVector {
            ring: self.ring.clone(),
            components,
        })
    }

    pub fn scale(&self, c: &Polynomial) -> ModuleVector {
        ModuleVector {
            ring: self.ring.clone(),
            components: self.components.iter().map(|x| x * c).collect(),
        }
    }

    pub(crate) fn to_mpoly(&self) -> MPoly {
        let mut terms = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            terms.extend(
                c.terms()
                    .iter()
                    .map(|(m, k)| (i as u32, m.clone(), k.clone())),
            );
        }
        MPoly(terms)
    }

    pub(crate) fn from_mpoly(ring: &RingSpec, rank: usize, p: &MPoly, offset: u32) -> ModuleVector {
        let mut buckets: Vec<Vec<_>> = vec![Vec::new(); rank];
        for (pos, m, c) in &p.0 {
            buckets[(*pos - offset) as usize].push((m.clone(), c.clone()));
        }
        let components = buckets
            .into_iter()
            .map(|ts| Polynomial::from_sorted(ring, ts))
            .collect();
        ModuleVector {
            ring: ring.clone(),
            components,
        }
    }
}

impl std::fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Reduced Gröbner basis of a submodule under position-over-term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleGroebnerBasis {
    module: FreeModule,
    elements: Vec<ModuleVector>,
}

impl ModuleGroebnerBasis {
    pub fn elements(&self) -> &[ModuleVector] {
        &self.elements
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn normal_form(&self, v: &ModuleVector) -> Result<ModuleVector> {
        self.module.check(v)?;
        let elems: Vec<Elem> = self
            .elements
            .iter()
            .map(|e| Elem {
                poly: e.to_mpoly(),
                rep: None,
            })
            .collect();
        let refs: Vec<&Elem> = elems.iter().collect();
        let (r, _) = engine::reduce(&self.module.ring.order(), &v.to_mpoly(), None, &refs);
        Ok(ModuleVector::from_mpoly(
            &self.module.ring,
            self.module.rank,
            &r,
            0,
        ))
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.normal_form(v).map(|r| r.is_zero()).unwrap_or(false)
    }
}

fn check_all(module: &FreeModule, gens: &[ModuleVector]) -> Result<()> {
    gens.iter().try_for_each(|g| module.check(g))
}

/// Gröbner basis of the submodule generated by `gens`, position-over-term over
/// `order`.
pub fn module_groebner(
    module: &FreeModule,
    gens: &[ModuleVector],
    order: MonomialOrder,
) -> Result<ModuleGroebnerBasis> {
    check_all(module, gens)?;
    let ring = module.ring.with_order(order)?;
    let gens: Vec<MPoly> = gens
        .iter()
        .map(|g| {
            ModuleVector::new(
                &ring,
                g.components.iter().map(|c| c.with_ring(&ring)).collect(),
            )
            .to_mpoly()
        })
        .collect();
    let elems = engine::groebner(&order, ring.nvars(), &gens, false, module.rank == 1);
    let elements = elems
        .iter()
        .map(|e| ModuleVector::from_mpoly(&ring, module.rank, &e.poly, 0))
        .collect();
    Ok(ModuleGroebnerBasis {
        module: FreeModule::new(&ring, module.rank),
        elements,
    })
}

pub(crate) fn syzygies_raw(module: &FreeModule, gens: &[ModuleVector]) -> Vec<ModuleVector> {
    let q = module.rank as u32;
    let s = gens.len();
    let order = module.ring.order();
    let nvars = module.ring.nvars();
    let augmented: Vec<MPoly> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut p = g.to_mpoly();
            p.0.extend(MPoly::unit(q + i as u32, nvars).0);
            p
        })
        .collect();
    let elems = engine::groebner(&order, nvars, &augmented, false, false);
    elems
        .iter()
        .filter(|e| e.poly.lead().map(|(p, _)| p >= q).unwrap_or(false))
        .map(|e| ModuleVector::from_mpoly(&module.ring, s, &e.poly, q))
        .collect()
}

/// Generators of `{c : Σ cᵢ·gensᵢ = 0}` in `R^{#gens}`.
pub fn module_syzygies(module: &FreeModule, gens: &[ModuleVector]) -> Result<Vec<ModuleVector>> {
    check_all(module, gens)?;
    Ok(syzygies_raw(module, gens))
}

/// Reusable membership oracle for one submodule: the tracked Gröbner basis is
/// computed once and every [`Lifter::lift`] is a single reduction.
#[derive(Debug, Clone)]
pub struct Lifter {
    module: FreeModule,
    ngens: usize,
    elems: Vec<Elem>,
}

impl Lifter {
    pub fn new(module: &FreeModule, gens: &[ModuleVector]) -> Result<Self> {
        check_all(module, gens)?;
        let m: Vec<MPoly> = gens.iter().map(ModuleVector::to_mpoly).collect();
        let elems = engine::groebner(
            &module.ring.order(),
            module.ring.nvars(),
            &m,
            true,
            module.rank == 1,
        );
        Ok(Lifter {
            module: module.clone(),
            ngens: gens.len(),
            elems,
        })
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn lift(&self, target: &ModuleVector) -> Result<LiftCertificate<ModuleVector>> {
        self.module.check(target)?;
        let refs: Vec<&Elem> = self.elems.iter().collect();
        let (r, rep) = engine::reduce(
            &self.module.ring.order(),
            &target.to_mpoly(),
            Some(MPoly::default()),
            &refs,
        );
        let rep = rep
            .expect("tracked")
            .scale(&BigRational::from_integer((-1).into()));
        Ok(LiftCertificate {
            cofactors: rep_to_cofactors(&self.module.ring, &rep, self.ngens),
            residual: ModuleVector::from_mpoly(&self.module.ring, self.module.rank, &r, 0),
        })
    }

    pub fn normal_form(&self, target: &ModuleVector) -> Result<ModuleVector> {
        self.module.check(target)?;
        let refs: Vec<&Elem> = self.elems.iter().collect();
        let (r, _) = engine::reduce(&self.module.ring.order(), &target.to_mpoly(), None, &refs);
        Ok(ModuleVector::from_mpoly(
            &self.module.ring,
            self.module.rank,
            &r,
            0,
        ))
    }

    pub fn contains(&self, target: &ModuleVector) -> Result<bool> {
        Ok(self.normal_form(target)?.is_zero())
    }
}

/// Decides whether `target` lies in the submodule generated by `gens`.
pub fn module_lift(
    module: &FreeModule,
    target: &ModuleVector,
    gens: &[ModuleVector],
) -> Result<LiftCertificate<ModuleVector>> {
    Lifter::new(module, gens)?.lift(target)
}

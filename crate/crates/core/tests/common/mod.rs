//! Test-only oracles, independent of the Gröbner machinery: dense rational
//! elimination, degree-bounded brute-force division, Leibniz determinants,
//! a naive S-pair check, and random instance generators.

#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use saito_core::depth::{find_regular_sequence, preferred_order, QuotientContext, SearchOptions};
use saito_core::exterior::{basis_sets, omega_of, wedge, ExteriorForm, IndexSet};
use saito_core::groebner::Ideal;
use saito_core::polyring::{
    parse_polynomial_list, Coeff, Monomial, MonomialOrder, Polynomial, RingSpec,
};
use saito_core::saito::kernel_generators;

pub fn q(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}

pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == nvars {
            out.push(Monomial::from_exponents(prefix.iter().copied()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, deg, &mut Vec::new(), &mut out);
    out
}

/// Whether `A·x = b` has a rational solution; Gaussian elimination on the
/// augmented matrix, rows given sparsely as `column → value`.
pub fn consistent(rows: Vec<HashMap<usize, Coeff>>, rhs: Vec<Coeff>, ncols: usize) -> bool {
    let mut rows: Vec<(Vec<Coeff>, Coeff)> = rows
        .into_iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut dense = vec![Coeff::zero(); ncols];
            for (c, v) in r {
                dense[c] = v;
            }
            (dense, b)
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let (prow, pb) = rows[pivot_row].clone();
        let inv = Coeff::one() / &prow[col];
        for r in 0..rows.len() {
            if r == pivot_row || rows[r].0[col].is_zero() {
                continue;
            }
            let factor = &rows[r].0[col] * &inv;
            for c in col..ncols {
                if !prow[c].is_zero() {
                    let d = &factor * &prow[c];
                    rows[r].0[c] -= d;
                }
            }
            let d = &factor * &pb;
            rows[r].1 -= d;
        }
        pivot_row += 1;
    }
    rows.iter()
        .all(|(r, b)| !r.iter().all(Zero::is_zero) || b.is_zero())
}

/// Brute force: is there `γ` with coefficients of degree `≤ bound` and
/// `J`-multipliers of degree `≤ bound + max deg ω` such that
/// `η = Σ ω_j∧γ_j + Σ h·g·e_T`?
pub fn divisible_up_to(
    omegas: &[ExteriorForm],
    eta: &ExteriorForm,
    j: &[Polynomial],
    bound: u32,
) -> bool {
    let ring = eta.ring();
    let (m, p) = (eta.rank(), eta.degree());
    let wdeg = omegas
        .iter()
        .filter_map(|w| w.coeff_degree())
        .max()
        .unwrap_or(0);
    let mut columns: Vec<ExteriorForm> = Vec::new();
    if p >= 1 {
        for w in omegas {
            for s in basis_sets(m, p - 1) {
                for mu in monomials_up_to(ring.nvars(), bound) {
                    let c = Polynomial::monomial(ring, mu, q(1));
                    columns.push(wedge(w, &ExteriorForm::monomial(m, s, &c)).unwrap());
                }
            }
        }
    }
    for g in j {
        let gdeg = g.total_degree().unwrap_or(0);
        let hdeg = (bound + wdeg).saturating_sub(gdeg);
        for t in basis_sets(m, p) {
            for mu in monomials_up_to(ring.nvars(), hdeg) {
                let c = &Polynomial::monomial(ring, mu, q(1)) * g;
                columns.push(ExteriorForm::monomial(m, t, &c));
            }
        }
    }
    let mut index: HashMap<(u32, Vec<u32>), usize> = HashMap::new();
    let mut rows: Vec<HashMap<usize, Coeff>> = Vec::new();
    let mut rhs: Vec<Coeff> = Vec::new();
    let mut row_of = |s: IndexSet,
                      mono: &Monomial,
                      rows: &mut Vec<HashMap<usize, Coeff>>,
                      rhs: &mut Vec<Coeff>| {
        *index
            .entry((s.mask(), mono.exponents().to_vec()))
            .or_insert_with(|| {
                rows.push(HashMap::new());
                rhs.push(Coeff::zero());
                rows.len() - 1
            })
    };
    for (col, f) in columns.iter().enumerate() {
        for (s, c) in f.terms() {
            for (mono, v) in c.terms() {
                let r = row_of(*s, mono, &mut rows, &mut rhs);
                *rows[r].entry(col).or_insert_with(Coeff::zero) += v;
            }
        }
    }
    for (s, c) in eta.terms() {
        for (mono, v) in c.terms() {
            let r = row_of(*s, mono, &mut rows, &mut rhs);
            rhs[r] += v;
        }
    }
    consistent(rows, rhs, columns.len())
}

/// Leibniz formula over all permutations.
pub fn leibniz_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = Polynomial::zero(&ring);
    fn permutations(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permutations(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    let mut all = Vec::new();
    permutations(0, &mut perm, &mut all);
    for p in all {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = Polynomial::one(&ring);
        for (row, &col) in p.iter().enumerate() {
            term = &term * &m[row][col];
        }
        acc = if inversions % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Naive full reduction by leading terms.
pub fn naive_reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let mut f = f.clone();
    let mut rem = Polynomial::zero(ring);
    while let Some(lt) = f.leading_monomial().cloned() {
        let lc = f.leading_coeff().unwrap().clone();
        let reducer = basis
            .iter()
            .find(|g| g.leading_monomial().map_or(false, |m| m.divides(&lt)));
        match reducer {
            Some(g) => {
                let mono = g.leading_monomial().unwrap().quotient_of(&lt).unwrap();
                let c = &lc / g.leading_coeff().unwrap();
                f = &f - &g.mul_term(&mono, &c);
            }
            None => {
                let t = Polynomial::monomial(ring, lt, lc);
                rem = &rem + &t;
                f = &f - &t;
            }
        }
    }
    rem
}

/// Buchberger's criterion checked directly on every S-polynomial.
pub fn s_pairs_reduce_to_zero(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (f, g) = (&basis[i], &basis[j]);
            let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
            let l = lf.lcm(lg);
            let sf = f.mul_term(
                &lf.quotient_of(&l).unwrap(),
                &(Coeff::one() / f.leading_coeff().unwrap()),
            );
            let sg = g.mul_term(
                &lg.quotient_of(&l).unwrap(),
                &(Coeff::one() / g.leading_coeff().unwrap()),
            );
            if !naive_reduce(&(&sf - &sg), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn ring_of(nvars: usize) -> RingSpec {
    let names = ["x", "y", "z", "w"];
    RingSpec::new(&names[..nvars], MonomialOrder::GrevLex).unwrap()
}

/// Sparse random polynomial with coefficients in `{−2, …, 2} ∖ {0}`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &RingSpec,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let monos = monomials_up_to(ring.nvars(), max_deg);
    let nterms = rng.gen_range(1..=max_terms);
    let mut acc = Polynomial::zero(ring);
    for _ in 0..nterms {
        let mono = monos.choose(rng).unwrap().clone();
        let mut c: i64 = rng.gen_range(-2..=2);
        if c == 0 {
            c = 1;
        }
        acc = &acc + &Polynomial::monomial(ring, mono, q(c));
    }
    acc
}

/// Like [`random_poly`] but without constant term, so that coefficient ideals
/// stay proper more often.
pub fn random_nonconstant(
    rng: &mut ChaCha8Rng,
    ring: &RingSpec,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let f = random_poly(rng, ring, max_deg, max_terms);
        let f =
            Polynomial::from_terms(ring, f.terms().iter().filter(|(m, _)| !m.is_one()).cloned());
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_one_form(
    rng: &mut ChaCha8Rng,
    ring: &RingSpec,
    m: usize,
    max_deg: u32,
    zero_prob: f64,
) -> ExteriorForm {
    let coeffs: Vec<Polynomial> = (0..m)
        .map(|_| {
            if rng.gen_bool(zero_prob) {
                Polynomial::zero(ring)
            } else {
                random_nonconstant(rng, ring, max_deg, 2)
            }
        })
        .collect();
    ExteriorForm::one_form(m, &coeffs).unwrap()
}

pub fn random_form(
    rng: &mut ChaCha8Rng,
    ring: &RingSpec,
    m: usize,
    p: usize,
    max_deg: u32,
) -> ExteriorForm {
    let mut terms = Vec::new();
    for s in basis_sets(m, p) {
        if rng.gen_bool(0.6) {
            terms.push((s, random_poly(rng, ring, max_deg, 2)));
        }
    }
    ExteriorForm::from_terms(ring, m, p, terms).unwrap()
}

/// A division problem satisfying the depth hypothesis.
#[derive(Debug, Clone)]
pub struct SaitoInstance {
    pub omegas: Vec<ExteriorForm>,
    pub eta: ExteriorForm,
    pub regseq: Vec<Polynomial>,
    pub ctx: QuotientContext,
}

/// `η` as a random combination of kernel generators with multipliers of
/// degree `≤ mult_deg`.
pub fn kernel_combination(
    rng: &mut ChaCha8Rng,
    omegas: &[ExteriorForm],
    p: usize,
    ctx: &QuotientContext,
    mult_deg: u32,
) -> Option<ExteriorForm> {
    let ring = ctx.ring();
    let m = omegas[0].rank();
    let ker = kernel_generators(omegas, p, ctx).ok()?;
    if ker.is_empty() {
        return None;
    }
    let mut eta = ExteriorForm::zero(ring, m, p);
    let picks = rng.gen_range(1..=ker.len().min(3));
    for g in ker.choose_multiple(rng, picks) {
        let c = random_poly(rng, ring, mult_deg, 2);
        eta = eta.add(&g.scale(&c)).unwrap();
    }
    let eta = eta.reduce_mod(ctx.ideal());
    (!eta.is_zero()).then_some(eta)
}

/// Draws one instance over 2–3 variables with `m ∈ {2,3,4}`, `k ∈ {1,2}`,
/// coefficient degree `≤ 2` and a certified regular sequence of length `p + 1`
/// inside `I(Ω)`. Returns `None` for rejected draws.
pub fn saito_instance(rng: &mut ChaCha8Rng) -> Option<SaitoInstance> {
    let p = if rng.gen_bool(0.4) { 2 } else { 1 };
    let nvars = if p == 2 { 3 } else { rng.gen_range(2..=3) };
    let ring = ring_of(nvars);
    let m = rng.gen_range(p + 1..=4);
    let k = if m - p >= 2 && rng.gen_bool(0.5) {
        2
    } else {
        1
    };
    let mut omegas = Vec::new();
    for _ in 0..k {
        let deg = rng.gen_range(1..=2);
        omegas.push(random_one_form(rng, &ring, m, deg, 0.25));
    }
    let pkg = omega_of(&ring, m, &omegas).ok()?;
    if pkg.omega.is_zero() || pkg.coeff_ideal.is_unit() {
        return None;
    }
    let ctx = QuotientContext::polynomial_ring(&ring);
    let ideal = Ideal::new(&ring, preferred_order(pkg.coeff_ideal.generators())).ok()?;
    let opts = SearchOptions {
        seed: rng.gen(),
        attempts_per_level: 40,
        ..SearchOptions::default()
    };
    let regseq = find_regular_sequence(&ideal, &ctx, p + 1, &opts)?;
    let eta = kernel_combination(rng, &omegas, p, &ctx, 2)?;
    Some(SaitoInstance {
        omegas,
        eta,
        regseq,
        ctx,
    })
}

/// Largest coefficient degree of the data, the base of brute-force bounds.
pub fn relevant_degree(omegas: &[ExteriorForm], eta: &ExteriorForm) -> u32 {
    omegas
        .iter()
        .chain(std::iter::once(eta))
        .filter_map(|f| f.coeff_degree())
        .max()
        .unwrap_or(0)
}

/// `true` when every coefficient is an integer of absolute value ≤ `bound`.
pub fn small_coefficients(f: &Polynomial, bound: i64) -> bool {
    f.terms()
        .iter()
        .all(|(_, c)| c.is_integer() && c.abs() <= q(bound))
}

/// Basis of `{x : A·x = 0}` for a dense rational matrix, by reduced row echelon form.
pub fn nullspace(mut a: Vec<Vec<Coeff>>, ncols: usize) -> Vec<Vec<Coeff>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(found) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, found);
        let inv = Coeff::one() / &a[row][col];
        for c in 0..ncols {
            a[row][c] = &a[row][c] * &inv;
        }
        let prow = a[row].clone();
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..ncols {
                    let d = &f * &prow[c];
                    a[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Coeff::zero(); ncols];
            v[f] = Coeff::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// One entry of the depth corpus: variables, ideal, quotient, expected depth
/// (`None` for the unit ideal). Values are codimensions worked out by hand.
pub struct DepthCase {
    pub vars: &'static str,
    pub ideal: &'static str,
    pub quotient: &'static str,
    pub expected: Option<usize>,
}

const fn case(
    vars: &'static str,
    ideal: &'static str,
    quotient: &'static str,
    expected: Option<usize>,
) -> DepthCase {
    DepthCase {
        vars,
        ideal,
        quotient,
        expected,
    }
}

pub const DEPTH_CORPUS: &[DepthCase] = &[
    case("x,y,z", "x", "", Some(1)),
    case("x,y,z", "x, y", "", Some(2)),
    case("x,y,z", "x, y, z", "", Some(3)),
    case("x,y,z", "x*y", "", Some(1)),
    case("x,y,z", "x*y, x*z", "", Some(1)),
    case("x,y,z", "x*y, x*z, y*z", "", Some(2)),
    case("x,y,z", "x^2, y^2", "", Some(2)),
    case("x,y,z", "x^2, x*y", "", Some(1)),
    case("x,y,z", "x^2, y^3, z^4", "", Some(3)),
    case("x,y,z", "x*y*z", "", Some(1)),
    case("x,y,z", "x + y, x - y", "", Some(2)),
    case("x,y,z", "x^2 - y, z", "", Some(2)),
    case("x,y,z", "x, y^2, y*z", "", Some(2)),
    case("x,y,z", "x*y, z", "", Some(2)),
    case("x,y,z", "x^2 + y^2 + z^2", "", Some(1)),
    case("x,y,z", "x*z, y*z", "", Some(1)),
    case("x,y,z", "x, y*z", "", Some(2)),
    case("x,y,z", "x*y, y*z, x*z, x^2", "", Some(2)),
    case("x,y", "x^3, x^2*y, x*y^2, y^3", "", Some(2)),
    case("x,y,z", "x - y^2, y - z^2, z - x^2", "", Some(3)),
    case("x,y,z", "1", "", None),
    case("x,y,z", "x, 1 + x", "", None),
    case("x,y,z", "0", "", Some(0)),
    case("x,y", "x - 1, y", "", Some(2)),
    case("x,y", "x*y - 1", "", Some(1)),
    case("x,y,z", "x*y - 1, z", "", Some(2)),
    case("x,y,z", "x^2, y^2, z^2, x*y*z", "", Some(3)),
    case("x,y,z", "x*y*z, x + y + z", "", Some(2)),
    case("x,y,z,w", "x*y, z*w", "", Some(2)),
    case("x,y,z,w", "x*z, x*w, y*z, y*w", "", Some(2)),
    case("x,y,z,w", "x, y, z, w", "", Some(4)),
    case("x,y,z,w", "x*y - z*w", "", Some(1)),
    case("x,y", "x^2, y^2", "", Some(2)),
    case("x,y", "x*y", "", Some(1)),
    case("x,y,z", "x, y", "z", Some(2)),
    case("x,y,z", "x", "z", Some(1)),
    case("x,y,z", "x, y, z", "z", Some(2)),
    case("x,y", "x", "x*y", Some(0)),
    case("x,y", "x + y", "x*y", Some(1)),
    case("x,y", "x, y", "x*y", Some(1)),
    case("x,y", "x, y", "x^2", Some(1)),
    case("x,y", "y", "x^2", Some(1)),
    case("x,y", "x", "x^2", Some(0)),
    case("x,y,z", "x, y, z", "x*z, y*z", Some(1)),
    case("x,y,z", "x + z, y", "x*z, y*z", Some(1)),
];

pub fn corpus_context(c: &DepthCase) -> (QuotientContext, Ideal) {
    let vars: Vec<&str> = c.vars.split(',').map(str::trim).collect();
    let ring = RingSpec::grevlex(&vars).unwrap();
    let j = if c.quotient.is_empty() {
        vec![]
    } else {
        parse_polynomial_list(c.quotient, &ring).unwrap()
    };
    let ctx = QuotientContext::new(&ring, j).unwrap();
    let ideal = Ideal::new(&ring, parse_polynomial_list(c.ideal, &ring).unwrap()).unwrap();
    (ctx, ideal)
}

//! Buchberger's algorithm over free modules `R^q` with a position-over-term
//! order: lower position index is larger, ties broken by the ring's monomial
//! order. Ideals are the rank-one case. Basis elements can carry their
//! expression in terms of the input generators, which is how lifts and
//! cofactors are produced.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::polyring::{Coeff, Monomial, MonomialOrder};

pub(crate) type MTerm = (u32, Monomial, Coeff);

/// Sparse module element, terms sorted descending under `pot_cmp`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct MPoly(pub Vec<MTerm>);

#[inline]
pub(crate) fn pot_cmp(order: &MonomialOrder, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.compare(a.1, b.1))
}

impl MPoly {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<(u32, &Monomial)> {
        self.0.first().map(|(p, m, _)| (*p, m))
    }

    pub fn unit(pos: u32, nvars: usize) -> MPoly {
        MPoly(vec![(pos, Monomial::one(nvars), Coeff::one())])
    }

    pub fn scale(&self, c: &Coeff) -> MPoly {
        if c.is_zero() {
            return MPoly::default();
        }
        MPoly(
            self.0
                .iter()
                .map(|(p, m, k)| (*p, m.clone(), k * c))
                .collect(),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly(
            self.0
                .iter()
                .map(|(p, mm, k)| (*p, mm.mul(m), k.clone()))
                .collect(),
        )
    }

    /// `self − c·m·other`.
    pub fn sub_scaled(
        &self,
        order: &MonomialOrder,
        c: &Coeff,
        m: &Monomial,
        other: &MPoly,
    ) -> MPoly {
        MPoly(sub_scaled(order, &self.0, c, m, &other.0))
    }
}

/// `a − c·m·b` by merging sorted term lists.
pub(crate) fn sub_scaled(
    order: &MonomialOrder,
    a: &[MTerm],
    c: &Coeff,
    m: &Monomial,
    b: &[MTerm],
) -> Vec<MTerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(p, mm, k)| (*p, mm.mul(m), k * c)).peekable();
    while i < a.len() {
        let Some(next) = bi.peek() else { break };
        match pot_cmp(order, (a[i].0, &a[i].1), (next.0, &next.1)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (p, mm, k) = bi.next().unwrap();
                out.push((p, mm, -k));
            }
            Ordering::Equal => {
                let (_, _, k) = bi.next().unwrap();
                let v = &a[i].2 - k;
                if !v.is_zero() {
                    out.push((a[i].0, a[i].1.clone(), v));
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bi.map(|(p, mm, k)| (p, mm, -k)));
    out
}

#[derive(Debug, Clone)]
pub(crate) struct Elem {
    pub poly: MPoly,
    pub rep: Option<MPoly>,
}

impl Elem {
    fn lead(&self) -> (u32, &Monomial) {
        self.poly.lead().expect("basis elements are nonzero")
    }

    fn lead_coeff(&self) -> &Coeff {
        &self.poly.0[0].2
    }
}

/// Fully reduces `f` (with its running representation `rep`) modulo the
/// reducers. Returns the remainder and `rep − Σ qₖ·repₖ`, where
/// `f = Σ qₖ·gₖ + remainder`.
pub(crate) fn reduce(
    order: &MonomialOrder,
    f: &MPoly,
    mut rep: Option<MPoly>,
    reducers: &[&Elem],
) -> (MPoly, Option<MPoly>) {
    let mut rem: Vec<MTerm> = Vec::new();
    let mut p: Vec<MTerm> = f.0.clone();
    let mut start = 0;
    while start < p.len() {
        let (pos, mon, coeff) = &p[start];
        let hit = reducers.iter().find_map(|g| {
            let (gp, gm) = g.lead();
            if gp == *pos {
                gm.quotient_of(mon).map(|q| (*g, q))
            } else {
                None
            }
        });
        match hit {
            Some((g, q)) => {
                let c = coeff / g.lead_coeff();
                if let (Some(r), Some(gr)) = (rep.as_mut(), g.rep.as_ref()) {
                    *r = r.sub_scaled(order, &c, &q, gr);
                }
                p = sub_scaled(order, &p[start + 1..], &c, &q, &g.poly.0[1..]);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    (MPoly(rem), rep)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the module generated by `gens`.
///
/// With `track`, every returned element comes with its representation as a
/// combination of the inputs (an `MPoly` whose positions are input indices).
/// The product criterion is used only when `rank_one` (pure ideals); the chain
/// criterion is applied in the Gebauer–Möller form in every rank.
pub(crate) fn groebner(
    order: &MonomialOrder,
    nvars: usize,
    gens: &[MPoly],
    track: bool,
    rank_one: bool,
) -> Vec<Elem> {
    let mut elems: Vec<Elem> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |elems: &mut Vec<Elem>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Elem| {
        let hidx = elems.len();
        let (hpos, hlm) = {
            let (p, m) = h.lead();
            (p, m.clone())
        };
        // Gebauer–Möller update
        let mut c: Vec<(usize, Monomial, bool)> = (0..hidx)
            .filter(|&g| active[g] && elems[g].lead().0 == hpos)
            .map(|g| {
                let gm = elems[g].lead().1;
                (g, gm.lcm(&hlm), rank_one && gm.is_coprime(&hlm))
            })
            .collect();
        let mut d: Vec<(usize, Monomial, bool)> = Vec::new();
        while !c.is_empty() {
            let first = c.remove(0);
            let dominated = c.iter().chain(d.iter()).any(|o| o.1.divides(&first.1));
            if first.2 || !dominated {
                d.push(first);
            }
        }
        pairs.retain(|pr| {
            if pr.pos != hpos || !hlm.divides(&pr.lcm) {
                return true;
            }
            let li = elems[pr.i].lead().1.lcm(&hlm);
            let lj = elems[pr.j].lead().1.lcm(&hlm);
            li == pr.lcm || lj == pr.lcm
        });
        for (g, lcm, coprime) in d {
            if !coprime {
                pairs.push(Pair {
                    i: g,
                    j: hidx,
                    pos: hpos,
                    lcm,
                });
            }
        }
        for g in 0..hidx {
            if active[g] {
                let (gp, gm) = elems[g].lead();
                if gp == hpos && hlm.divides(gm) {
                    active[g] = false;
                }
            }
        }
        elems.push(h);
        active.push(true);
    };

    let make_monic = |poly: MPoly, rep: Option<MPoly>| -> Elem {
        let inv = poly.0[0].2.recip();
        Elem {
            poly: poly.scale(&inv),
            rep: rep.map(|r| r.scale(&inv)),
        }
    };

    for (idx, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let rep = track.then(|| MPoly::unit(idx as u32, nvars));
        let reducers: Vec<&Elem> = elems
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(e, _)| e)
            .collect();
        let (h, hrep) = reduce(order, g, rep, &reducers);
        if !h.is_zero() {
            let e = make_monic(h, hrep);
            add(&mut elems, &mut active, &mut pairs, e);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pot_cmp(order, (pa.pos, &pa.lcm), (pb.pos, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (gi, gj) = (&elems[pair.i], &elems[pair.j]);
        let mi = gi.lead().1.quotient_of(&pair.lcm).unwrap();
        let mj = gj.lead().1.quotient_of(&pair.lcm).unwrap();
        let one = Coeff::one();
        let s = gi
            .poly
            .mul_monomial(&mi)
            .sub_scaled(order, &one, &mj, &gj.poly);
        let srep = match (&gi.rep, &gj.rep) {
            (Some(ri), Some(rj)) => Some(ri.mul_monomial(&mi).sub_scaled(order, &one, &mj, rj)),
            _ => None,
        };
        let reducers: Vec<&Elem> = elems
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(e, _)| e)
            .collect();
        let (h, hrep) = reduce(order, &s, srep, &reducers);
        if !h.is_zero() {
            let e = make_monic(h, hrep);
            add(&mut elems, &mut active, &mut pairs, e);
        }
    }

    // The active elements form a minimal basis; reduce their tails.
    let mut basis: Vec<Elem> = elems
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect();
    for i in 0..basis.len() {
        let (head, tail) = {
            let e = &basis[i];
            (e.poly.0[0].clone(), MPoly(e.poly.0[1..].to_vec()))
        };
        let rep = basis[i].rep.clone();
        let others: Vec<&Elem> = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, e)| e)
            .collect();
        let (rt, rrep) = reduce(order, &tail, rep, &others);
        let mut terms = vec![head];
        terms.extend(rt.0);
        basis[i] = Elem {
            poly: MPoly(terms),
            rep: rrep,
        };
    }
    basis.sort_by(|a, b| {
        let (ap, am) = a.lead();
        let (bp, bm) = b.lead();
        pot_cmp(order, (bp, bm), (ap, am))
    });
    basis
}

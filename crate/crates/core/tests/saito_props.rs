mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use saito_core::depth::{depth_via_dim, DepthValue, QuotientContext};
use saito_core::exterior::{apply_a, apply_b, omega_of, parse_form, ExteriorForm};
use saito_core::polyring::{parse_polynomial_list, RingSpec};
use saito_core::saito::{
    check_exactness_with, divide, divide_batch, divide_inductive, kernel_generators,
    DivisionStatus, ExactnessVerdict,
};
use saito_core::Parallelism;

fn instances(seed: u64, count: usize) -> Vec<SaitoInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(inst) = saito_instance(&mut rng) {
            out.push(inst);
        }
    }
    out
}

#[test]
fn guarantee_and_agreement_on_random_instances() {
    for inst in instances(7, 25) {
        let lift = divide(&inst.omegas, &inst.eta, &inst.ctx).unwrap();
        assert!(lift.is_solved(), "lift failed on {:?}", inst);
        assert!(lift.verify(&inst.omegas, &inst.eta, &inst.ctx));
        let ind = divide_inductive(&inst.omegas, &inst.eta, &inst.regseq, &inst.ctx).unwrap();
        assert_eq!(ind.status, lift.status, "{:?}", inst);
        assert!(ind.verify(&inst.omegas, &inst.eta, &inst.ctx));
        assert!(ind.trace.as_ref().unwrap().verify());
    }
}

#[test]
fn round_trip_images_are_solved() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let ring = ring_of(3);
        let m = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=2.min(m));
        let p = rng.gen_range(1..=m);
        let omegas: Vec<ExteriorForm> = (0..k)
            .map(|_| random_one_form(&mut rng, &ring, m, 2, 0.3))
            .collect();
        let gammas: Vec<ExteriorForm> = (0..k)
            .map(|_| random_form(&mut rng, &ring, m, p - 1, 1))
            .collect();
        let eta = apply_a(&omegas, &gammas).unwrap();
        let ctx = QuotientContext::polynomial_ring(&ring);
        let r = divide(&omegas, &eta, &ctx).unwrap();
        assert!(r.is_solved() && r.verify(&omegas, &eta, &ctx));
    }
}

#[test]
fn negative_verdicts_agree_with_brute_force() {
    let ring = ring_of(2);
    let ctx = QuotientContext::polynomial_ring(&ring);
    let w = vec![parse_form("x*e1", &ring, 2).unwrap()];
    let eta = parse_form("e1", &ring, 2).unwrap();
    let r = divide(&w, &eta, &ctx).unwrap();
    assert_eq!(r.status, DivisionStatus::NoSolution);
    assert!(!divisible_up_to(&w, &eta, &[], 3));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 12 {
        let nvars = rng.gen_range(2..=3);
        let ring = ring_of(nvars);
        let m = rng.gen_range(2..=3);
        let factor = random_nonconstant(&mut rng, &ring, 1, 1);
        let w = random_one_form(&mut rng, &ring, m, 1, 0.3).scale(&factor);
        let omegas = vec![w];
        let pkg = omega_of(&ring, m, &omegas).unwrap();
        let depth = depth_via_dim(&pkg.coeff_ideal).value;
        let p = rng.gen_range(1..=m - 1);
        if pkg.omega.is_zero() || depth.exceeds(p) {
            continue;
        }
        let ctx = QuotientContext::polynomial_ring(&ring);
        let Some(eta) = kernel_combination(&mut rng, &omegas, p, &ctx, 1) else {
            continue;
        };
        let r = divide(&omegas, &eta, &ctx).unwrap();
        let bound = relevant_degree(&omegas, &eta) + 2;
        assert_eq!(
            r.is_solved(),
            divisible_up_to(&omegas, &eta, &[], bound),
            "ω = {:?}, η = {eta}",
            omegas
        );
        assert!(r.verify(&omegas, &eta, &ctx));
        checked += 1;
    }
}

#[test]
fn quotient_instances_reverify() {
    let ring = RingSpec::grevlex(&["x", "y", "z"]).unwrap();
    let j = parse_polynomial_list("z", &ring).unwrap();
    let ctx = QuotientContext::new(&ring, j.clone()).unwrap();
    let w = vec![parse_form("x*e1 + y*e2 + z*e3", &ring, 3).unwrap()];
    for p in 1..=2 {
        for eta in kernel_generators(&w, p, &ctx).unwrap() {
            assert!(apply_b(&w[0], &eta).unwrap().is_zero_mod(ctx.ideal()));
            let r = divide(&w, &eta, &ctx).unwrap();
            assert!(r.verify(&w, &eta, &ctx));
            if p == 1 {
                let seq = parse_polynomial_list("x, y", &ring).unwrap();
                let ind = divide_inductive(&w, &eta, &seq, &ctx).unwrap();
                assert_eq!(ind.status, r.status);
                assert!(ind.verify(&w, &eta, &ctx));
            }
        }
    }
}

#[test]
fn exactness_is_schedule_independent() {
    let ring = RingSpec::grevlex(&["x", "y", "z"]).unwrap();
    let ctx = QuotientContext::polynomial_ring(&ring);
    let w = vec![
        parse_form("x*e1 + y*e2 + z*e3", &ring, 4).unwrap(),
        parse_form("y*e1 + z*e2 + x*e4", &ring, 4).unwrap(),
    ];
    for p in 1..=2 {
        let seq = check_exactness_with(&w, p, &ctx, Parallelism::Sequential).unwrap();
        let par = check_exactness_with(&w, p, &ctx, Parallelism::Parallel).unwrap();
        assert_eq!(seq, par);
        assert!(seq.verify(&w, &ctx));
        assert_eq!(seq.depth.value, DepthValue::Finite(3));
        assert!(seq.is_exact());
    }
    let etas = kernel_generators(&w, 2, &ctx).unwrap();
    let a = divide_batch(&w, &etas, &ctx, Parallelism::Sequential).unwrap();
    let b = divide_batch(&w, &etas, &ctx, Parallelism::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn not_exact_witness_is_in_kernel() {
    let ring = RingSpec::grevlex(&["x", "y"]).unwrap();
    let ctx = QuotientContext::polynomial_ring(&ring);
    let w = vec![parse_form("x*e1 + x*y*e2", &ring, 2).unwrap()];
    let rep = check_exactness_with(&w, 1, &ctx, Parallelism::default()).unwrap();
    assert!(rep.verify(&w, &ctx));
    let ExactnessVerdict::NotExact {
        witness,
        obstruction,
        ..
    } = &rep.verdict
    else {
        panic!("expected NOT EXACT")
    };
    assert!(apply_b(&w[0], witness).unwrap().is_zero());
    assert!(!obstruction.is_zero());
    assert!(!rep.condition_holds);
}

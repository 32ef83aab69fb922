mod common;

use common::*;
use weitzenbock::gordan::{
    initial_set, kernel_generators, membership, tau_step_report, verify_generates, CandidateStatus, GeneratorSet,
    SearchBounds,
};
use weitzenbock::sl2::{is_semi_invariant, order_of};
use weitzenbock::transfer::lambda_map;
use weitzenbock::transvect::semi_transvectant;
use weitzenbock::Polynomial;

fn product(gens: &[Polynomial], e: &[u32]) -> Polynomial {
    gens.iter().zip(e).fold(Polynomial::one(), |acc, (g, &k)| acc * g.pow(k))
}

/// Every pruned candidate, computed anyway, lies in the algebra of the final
/// set. Within a single step this can fail: the reduction may go through
/// transvectants that only become candidates in the next step.
fn check_pruning(sig: &[u16], degree: u32) -> usize {
    let c = ctx(sig);
    let mut set = initial_set(&c, &SearchBounds::degree(degree)).unwrap();
    let mut skipped = Vec::new();
    loop {
        let gens = set.polys();
        let (next, report) = tau_step_report(&set).unwrap();
        for cand in report.candidates.iter().filter(|c| c.status == CandidateStatus::PrunedReducible) {
            let v = semi_transvectant(&Polynomial::var(cand.letter.var(0)), &product(&gens, &cand.exponents), cand.index)
                .unwrap();
            skipped.push((cand.provenance.clone(), v));
        }
        set = next;
        if report.added == 0 {
            break;
        }
    }
    let end = set.polys();
    let mut escaped_a_step = 0;
    for (name, v) in &skipped {
        assert!(v.is_zero() || membership(v, &end).is_some(), "{name} escapes");
        escaped_a_step += usize::from(!v.is_zero());
    }
    assert!(!skipped.is_empty());
    escaped_a_step
}

#[test]
fn pruning_defers_to_a_later_step() {
    // (x0, x0^2)^3 is pruned in the first step but equals -9/5 * tr,
    // which the second step reaches as (x0, dv)^1.
    let c = ctx(&[3]);
    let v = semi_transvectant(&p("x0", &c), &p("x0^2", &c), 3).unwrap();
    assert_eq!(v, p("3*x3*x0^2 + x1^3 - 3*x0*x1*x2", &c).scale(&weitzenbock::poly::rational(-9, 5)));
}

#[test]
fn pruning_is_safe_for_cubic() {
    assert!(check_pruning(&[3], 5) > 0);
}

#[test]
fn pruning_is_safe_for_two_three() {
    check_pruning(&[2, 3], 6);
}

#[test]
fn output_is_sound() {
    for sig in [&[2][..], &[3], &[4], &[1, 2], &[2, 3]] {
        let set = kernel_generators(&ctx(sig), &SearchBounds::degree(5)).unwrap();
        for g in &set.generators {
            assert!(!g.poly.is_zero() && is_semi_invariant(&g.poly), "{}", g.name);
            assert_eq!(order_of(&g.poly).unwrap(), g.order);
            assert!(g.degree() <= 5);
        }
        // Pairwise irredundant.
        let polys = set.polys();
        for (i, g) in polys.iter().enumerate() {
            let others: Vec<Polynomial> = polys.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h.clone()).collect();
            assert!(membership(g, &others).is_none());
        }
    }
}

#[test]
fn same_result_on_any_thread_count() {
    let c = ctx(&[2, 3]);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| kernel_generators(&c, &SearchBounds::degree(6)).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one.to_json_string(), run(3).to_json_string());
}

#[test]
fn raising_the_bound_only_adds() {
    let c = ctx(&[2, 3]);
    let small = kernel_generators(&c, &SearchBounds::degree(4)).unwrap();
    let large = kernel_generators(&c, &SearchBounds::degree(6)).unwrap();
    let low: Vec<Polynomial> = large.generators.iter().filter(|g| g.degree() <= 4).map(|g| g.poly.clone()).collect();
    let low = GeneratorSet::from_polys(&c, &low, &small.bounds).unwrap();
    assert!(verify_generates(&small, &low));
    assert!(large.len() >= small.len());
}

#[test]
fn quartic_invariants_appear() {
    let c = ctx(&[4]);
    let set = kernel_generators(&c, &SearchBounds::degree(6)).unwrap();
    assert_eq!(set.len(), 5);
    let invariants: Vec<_> = set.generators.iter().filter(|g| g.order == 0).map(|g| g.degree()).collect();
    assert_eq!(invariants, vec![2, 3]);
}

#[test]
fn blind_search_matches_assisted_list_for_two_three() {
    let c = ctx(&[2, 3]);
    let bounds = SearchBounds::degree(7);
    let blind = kernel_generators(&c, &bounds).unwrap();
    assert!(blind.complete_within_bounds);
    assert_eq!(blind.len(), 15);

    let lam = |e: &str, a: &str| lambda_map(&b(e).expand(), &assign(a, &c)).unwrap();
    let t = |f: &Polynomial, g: &Polynomial, r| semi_transvectant(f, g, r).unwrap();
    let (x0, y0) = (p("x0", &c), p("y0", &c));
    let delta = lam("[e,k]^2*e0*k0", "e:y,k:y");
    let q = lam("[e,k]^2*[h,e]*k0*h0^2", "e:y,k:y,h:y");
    let assisted = vec![
        x0.clone(),
        y0.clone(),
        lam("[a,b]^2", "a:x,b:x"),
        t(&x0, &y0, 2),
        delta.clone(),
        t(&x0, &y0, 1),
        t(&x0, &delta, 2),
        t(&x0.pow(2), &y0, 3),
        t(&x0, &delta, 1),
        q.clone(),
        lam("[e,k]^2*[e,h]*[k,m]*[h,m]^2", "e:y,k:y,h:y,m:y"),
        t(&x0, &q, 2),
        t(&x0.pow(3), &y0.pow(2), 6),
        t(&x0.pow(2), &q, 3),
        t(&x0.pow(3), &(&y0 * &q), 6),
    ];
    let assisted = GeneratorSet::from_polys(&c, &assisted, &bounds).unwrap();
    assert!(verify_generates(&blind, &assisted));
}

#[test]
fn index_bound_marks_incomplete() {
    let c = ctx(&[3]);
    let bounds = SearchBounds { max_total_degree: 4, max_transvection_order: Some(1) };
    let set = kernel_generators(&c, &bounds).unwrap();
    assert!(!set.complete_within_bounds);
    assert!(set.len() < 4);
}

#[test]
fn json_round_trip() {
    let set = kernel_generators(&ctx(&[3]), &SearchBounds::degree(4)).unwrap();
    let back = GeneratorSet::from_json(&serde_json::from_str(&set.to_json_string()).unwrap()).unwrap();
    assert_eq!(back, set);
}

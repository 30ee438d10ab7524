use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

use symquery::classical::d_complexity;
use symquery::polydeg::{
    check_representation, degree, degree_with_witness, feasible_by_max_z, lp_feasible,
};
use symquery::qsim::{Basis, GroverCircuit, QState, Unitary, XqueryCircuit};
use symquery::symfun::family_dj;
use symquery::{BitString, FnValue, Isomorph, Rational, SymPartialFn};

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn arb_fn(max_n: usize) -> impl Strategy<Value = SymPartialFn> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(
            prop_oneof![
                Just(FnValue::Zero),
                Just(FnValue::One),
                Just(FnValue::Undefined)
            ],
            n + 1,
        )
        .prop_map(|v| SymPartialFn::new(v).unwrap())
    })
}

fn arb_eps() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(Rational::zero()), Just(r(1, 10)), Just(r(1, 4)), Just(r(1, 3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn feasibility_is_monotone_in_degree(f in arb_fn(7), eps in arb_eps()) {
        let verdicts: Vec<bool> = (0..=f.n())
            .map(|d| lp_feasible(&f, &eps, d).unwrap().feasible)
            .collect();
        prop_assert!(verdicts[f.n()]);
        prop_assert!(verdicts.windows(2).all(|w| !w[0] || w[1]), "{verdicts:?}");
    }

    #[test]
    fn witness_represents_and_one_less_fails(f in arb_fn(8), eps in arb_eps()) {
        let (d, q) = degree_with_witness(&f, &eps).unwrap();
        prop_assert!(q.degree() <= d);
        prop_assert!(check_representation(&q, &f, &eps).unwrap());
        if d > 0 {
            prop_assert!(!lp_feasible(&f, &eps, d - 1).unwrap().feasible);
        }
    }

    #[test]
    fn witness_transforms_follow_isomorphs(f in arb_fn(8), eps in arb_eps()) {
        let n = f.n();
        let (_, q) = degree_with_witness(&f, &eps).unwrap();
        prop_assert!(check_representation(&q.reflect(n), &f.reverse(), &eps).unwrap());
        prop_assert!(check_representation(&q.complement(), &f.complement(), &eps).unwrap());
        let both = q.reflect(n).complement();
        prop_assert!(check_representation(&both, &f.transformed(Isomorph::ReverseComplement), &eps).unwrap());
    }

    #[test]
    fn restriction_never_raises_degree(f in arb_fn(8), mask in any::<u16>()) {
        let keep: Vec<usize> = f.domain_weights().into_iter().filter(|w| mask >> w & 1 == 1).collect();
        let g = f.restricted_to(&keep);
        let zero = Rational::zero();
        prop_assert!(degree(&g, &zero).unwrap() <= degree(&f, &zero).unwrap());
    }

    #[test]
    fn larger_error_never_raises_degree(f in arb_fn(8)) {
        let degrees: Vec<usize> = [Rational::zero(), r(1, 10), r(1, 4), r(1, 3), r(9, 20)]
            .iter()
            .map(|e| degree(&f, e).unwrap())
            .collect();
        prop_assert!(degrees.windows(2).all(|w| w[0] >= w[1]), "{degrees:?}");
    }

    #[test]
    fn max_z_route_agrees(f in arb_fn(7), eps in arb_eps(), d in 0usize..=7) {
        let d = d.min(f.n());
        prop_assert_eq!(lp_feasible(&f, &eps, d).unwrap().feasible, feasible_by_max_z(&f, &eps, d).unwrap());
    }

    #[test]
    fn count_recursion_matches_minimax(f in arb_fn(6)) {
        prop_assert_eq!(d_complexity(&f).unwrap(), minimax(&f));
    }

    #[test]
    fn map_then_adjoint_restores_state(m in 2usize..=6, mask in any::<u64>()) {
        let c = XqueryCircuit::new(m).unwrap();
        let x = BitString::from_mask(m, mask & ((1 << m) - 1));
        let s = c.final_state(&x).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
        let back = s.apply_map(&c.u2().adjoint()).unwrap().apply_map(c.u2()).unwrap();
        for (a, b) in back.amplitudes().iter().zip(s.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-9);
        }
    }
}

/// Optimal deterministic decision tree over explicit index choices, with
/// partial assignments as states.
fn minimax(f: &SymPartialFn) -> usize {
    fn go(f: &SymPartialFn, seen: &mut Vec<Option<bool>>, memo: &mut HashMap<Vec<Option<bool>>, usize>) -> usize {
        if let Some(&c) = memo.get(seen) {
            return c;
        }
        let n = f.n();
        let mut outputs = (0u64..1 << n)
            .filter(|&mask| (0..n).all(|i| seen[i].is_none_or(|b| b == (mask >> i & 1 == 1))))
            .filter_map(|mask| f.at(mask.count_ones() as usize).bit());
        let decided = match outputs.next() {
            None => true,
            Some(first) => outputs.all(|v| v == first),
        };
        let cost = if decided {
            0
        } else {
            let open: Vec<usize> = (0..n).filter(|&i| seen[i].is_none()).collect();
            open.into_iter()
                .map(|i| {
                    let mut worst = 0;
                    for b in [false, true] {
                        seen[i] = Some(b);
                        worst = worst.max(go(f, seen, memo));
                    }
                    seen[i] = None;
                    1 + worst
                })
                .min()
                .expect("an undecided state has an unqueried index")
        };
        memo.insert(seen.clone(), cost);
        cost
    }
    go(f, &mut vec![None; f.n()], &mut HashMap::new())
}

#[test]
fn dj_degree_is_twice_k_plus_two() {
    for n in (2..=16).step_by(2) {
        for k in 0..n / 2 {
            let f = family_dj(n, k).unwrap();
            assert_eq!(degree(&f, &Rational::zero()).unwrap(), 2 * k + 2, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn count_recursion_matches_minimax_exhaustively_at_n4() {
    let symbols = [FnValue::Zero, FnValue::One, FnValue::Undefined];
    for code in 0..3usize.pow(5) {
        let values = (0..5).map(|i| symbols[code / 3usize.pow(i) % 3]).collect();
        let f = SymPartialFn::new(values).unwrap();
        assert_eq!(d_complexity(&f).unwrap(), minimax(&f), "{f}");
    }
}

#[test]
fn oracle_is_an_involution_and_commutes_with_itself() {
    let basis = Basis::xquery(4);
    let dim = basis.dim();
    let amps: Vec<Complex64> = (0..dim)
        .map(|i| Complex64::new((i as f64 + 1.0).sqrt(), i as f64 * 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let s = QState::new(basis, amps.iter().map(|a| a / norm).collect()).unwrap();
    let x: BitString = "1011".parse().unwrap();
    let y: BitString = "0110".parse().unwrap();
    let twice = s.apply_oracle(&x).unwrap().apply_oracle(&x).unwrap();
    let xy = s.apply_oracle(&x).unwrap().apply_oracle(&y).unwrap();
    let yx = s.apply_oracle(&y).unwrap().apply_oracle(&x).unwrap();
    for i in 0..dim {
        assert!((twice.amplitudes()[i] - s.amplitudes()[i]).norm() < 1e-12);
        assert!((xy.amplitudes()[i] - yx.amplitudes()[i]).norm() < 1e-12);
    }
}

#[test]
fn complemented_input_gives_the_same_distribution() {
    for m in 1..=8 {
        let c = XqueryCircuit::new(m).unwrap();
        let g = GroverCircuit::new(m).unwrap();
        for mask in 0..1u64 << m {
            let x = BitString::from_mask(m, mask);
            let (a, b) = (c.distribution(&x).unwrap(), c.distribution(&x.complemented()).unwrap());
            for &(label, p) in &a.outcomes {
                assert!((p - b.probability(label)).abs() < 1e-9);
            }
            let (a, b) = (g.distribution(&x).unwrap(), g.distribution(&x.complemented()).unwrap());
            for ((i, p), (j, q)) in a.iter().zip(&b) {
                assert_eq!(i, j);
                assert!((p - q).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn unitary_rejects_non_unitary_input() {
    let one = Complex64::one();
    let zero = Complex64::zero();
    assert!(Unitary::new(2, vec![one, one, zero, one]).is_err());
    assert!(Unitary::new(2, vec![zero, one, one, zero]).is_ok());
}

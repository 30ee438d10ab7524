//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so that every criterion is
//! attempted and reported even when an earlier one fails.

use std::time::Instant;

use num_traits::{ToPrimitive, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use symquery::algos::{dw_route, verify_exact, Algorithm, DwRoute, ALGORITHM_IDS};
use symquery::bits::BitString;
use symquery::classical::d_complexity;
use symquery::identities::{binom_det, check_identity, helper_identity};
use symquery::polydeg::{
    check_representation, classify_deg2, degree, lp_feasible, qe_lower_bound, PolyV,
};
use symquery::qsim::{grover1_exact, xquery_exact, GroverCircuit, XqueryCircuit};
use symquery::symfun::{
    family_dj, family_dw, family_f1, family_f2, family_f3, family_f4, FamilyTag, FnValue,
    Isomorph, SymPartialFn,
};
use symquery::Rational;

type Check = Result<String, String>;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn verified(alg: &Algorithm) -> Result<symquery::algos::VerificationReport, String> {
    let f = alg.promise().map_err(err)?.expect("bit-valued algorithm");
    let rep = verify_exact(alg, &f).map_err(err)?;
    ensure(rep.all_exact, || {
        format!("{alg}: {} wrong branches, e.g. {:?}", rep.failure_count, rep.failures.first())
    })?;
    ensure(rep.max_probability_deviation <= 1e-9, || {
        format!("{alg}: probability deviation {}", rep.max_probability_deviation)
    })?;
    Ok(rep)
}

fn criterion_1() -> Check {
    let mut instances = 0;
    for n in (4..=12).step_by(2) {
        for k in 0..n / 2 {
            let alg = Algorithm::Dj { n, k };
            let rep = verified(&alg)?;
            ensure(rep.worst_case_queries == k + 1, || {
                format!("{alg}: worst case {} queries, expected {}", rep.worst_case_queries, k + 1)
            })?;
            let f = family_dj(n, k).map_err(err)?;
            let deg = degree(&f, &Rational::zero()).map_err(err)?;
            ensure(deg == 2 * k + 2, || format!("deg(DJ n={n} k={k}) = {deg}, expected {}", 2 * k + 2))?;
            let lb = qe_lower_bound(&f).map_err(err)?;
            ensure(lb == k + 1, || format!("lower bound {lb} for n={n} k={k}"))?;
            let d = d_complexity(&f).map_err(err)?;
            ensure(d == n / 2 + k + 1, || format!("D(DJ n={n} k={k}) = {d}"))?;
            instances += 1;
        }
    }
    Ok(format!("{instances} (n,k) pairs: exact, k+1 queries, degree 2k+2, D = n/2+k+1"))
}

fn criterion_2() -> Check {
    let zero = Rational::zero();
    for n in (2..=16usize).step_by(2) {
        let f = family_dj(n, 0).map_err(err)?;
        ensure(!lp_feasible(&f, &zero, 1).map_err(err)?.feasible, || {
            format!("n={n}: degree 1 feasible")
        })?;
        let res = lp_feasible(&f, &zero, 2).map_err(err)?;
        ensure(res.feasible, || format!("n={n}: degree 2 infeasible"))?;
        let nn = (n * n) as i64;
        let q = PolyV::new(vec![zero.clone(), r(4 * (n as i64 - 1), nn), r(-8, nn)]);
        ensure(check_representation(&q, &f, &zero).map_err(err)?, || {
            format!("n={n}: explicit witness {q} rejected")
        })?;
    }
    Ok("even n in 2..=16: degree 1 infeasible, degree 2 feasible, explicit witness exact".into())
}

fn criterion_3() -> Check {
    let zero = Rational::zero();
    let mut checked = 0;
    for n in 2..=15usize {
        for k in (n / 2).max(1)..n {
            let (k_, kk) = (k as i64, (k * (k + 1)) as i64);
            let q = PolyV::new(vec![zero.clone(), r(2, k_ + 1), r(-2, kk)]);
            let f = family_f2(n, k).map_err(err)?;
            ensure(check_representation(&q, &f, &zero).map_err(err)?, || {
                format!("F2 n={n} k={k}: {q} rejected")
            })?;
            checked += 1;
        }
        if n % 2 == 1 && n >= 3 {
            let n_ = n as i64;
            let q = PolyV::new(vec![zero.clone(), r(4, n_ + 1), r(-8, (n_ - 1) * (n_ + 1))]);
            for l in [n / 2, n.div_ceil(2)] {
                let f = family_f3(n, l).map_err(err)?;
                ensure(check_representation(&q, &f, &zero).map_err(err)?, || {
                    format!("F3 n={n} l={l}: {q} rejected")
                })?;
                checked += 1;
            }
            let m = (n / 2) as i64;
            let q = PolyV::new(vec![zero.clone(), r(2, m + 1), r(-2, m * (m + 1))]);
            let f = family_f4(n).map_err(err)?;
            ensure(check_representation(&q, &f, &zero).map_err(err)?, || {
                format!("F4 n={n}: {q} rejected")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (polynomial, function) pairs represent exactly"))
}

fn all_functions(n: usize) -> Vec<SymPartialFn> {
    let symbols = [FnValue::Zero, FnValue::One, FnValue::Undefined];
    let total = 3usize.pow(n as u32 + 1);
    (0..total)
        .map(|mut code| {
            let values = (0..=n)
                .map(|_| {
                    let v = symbols[code % 3];
                    code /= 3;
                    v
                })
                .collect();
            SymPartialFn::new(values).expect("n >= 1")
        })
        .collect()
}

fn criterion_4() -> Check {
    let mut counts = [0usize; 3];
    for n in 4..=6 {
        let f1nn = family_f1(n, n).map_err(err)?;
        let mismatches: Vec<String> = all_functions(n)
            .par_iter()
            .filter_map(|f| {
                let deg = degree(f, &Rational::zero()).ok()?;
                let class = classify_deg2(f).ok()?;
                let consistent = match (deg, class) {
                    (0, Some(c)) => c.family == FamilyTag::ConstantOrEmpty && f.is_constant_compatible(),
                    (1, Some(c)) => {
                        c.family == FamilyTag::Deg1F1nn && f.is_isomorphic(&f1nn).unwrap_or(false)
                    }
                    (2, Some(c)) => !matches!(c.family, FamilyTag::ConstantOrEmpty | FamilyTag::Deg1F1nn),
                    (d, None) => d > 2,
                    _ => false,
                };
                (!consistent).then(|| format!("{f}: degree {deg}, class {class:?}"))
            })
            .collect();
        ensure(mismatches.is_empty(), || {
            format!("n={n}: {} mismatches, first {}", mismatches.len(), mismatches[0])
        })?;
        counts[n - 4] = 3usize.pow(n as u32 + 1);
    }
    Ok(format!("{} functions (n=4,5,6), zero mismatches", counts.iter().sum::<usize>()))
}

fn dw_general_instances() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=30 {
        for k in 1..n {
            for l in k + 1..=n.min(k + 8) {
                if matches!(dw_route(n, k, l), Ok(DwRoute::Balanced { .. })) {
                    out.push((n, k, l));
                }
            }
        }
    }
    out
}

fn criterion_5() -> Check {
    let mut two_query = Vec::new();
    for n in [3, 5, 7, 9] {
        two_query.push(Algorithm::F1 { n });
        two_query.push(Algorithm::F3 { n });
    }
    for n in [4, 8, 12] {
        two_query.push(Algorithm::Dw1 { n });
        two_query.push(Algorithm::Dw2 { n });
    }
    let dw = dw_general_instances();
    ensure(!dw.is_empty(), || "no valid padded DW instances".into())?;
    two_query.extend(dw.iter().map(|&(n, k, l)| Algorithm::Dw { n, k, l }));
    for alg in &two_query {
        let rep = verified(alg)?;
        ensure(rep.worst_case_queries == 2, || {
            format!("{alg}: worst case {} queries", rep.worst_case_queries)
        })?;
    }
    let mut bounded = Vec::new();
    for n in [8usize, 12] {
        for k in n.div_ceil(4)..=5 {
            bounded.push((Algorithm::F2 { n, k }, 4));
        }
    }
    for n in [5, 7, 9] {
        bounded.push((Algorithm::F4 { n }, 5));
    }
    for (alg, budget) in &bounded {
        let rep = verified(alg)?;
        ensure(rep.worst_case_queries <= *budget, || {
            format!("{alg}: worst case {} queries > {budget}", rep.worst_case_queries)
        })?;
    }
    Ok(format!(
        "{} two-query instances ({} padded DW), {} f2/f4 instances within budget",
        two_query.len(),
        dw.len(),
        bounded.len()
    ))
}

fn criterion_6() -> Check {
    let zero = Rational::zero();
    let mut problems = Vec::new();
    for m in 1..=5usize {
        let f = family_f1(2 * m + 1, m).map_err(err)?;
        let res = lp_feasible(&f, &zero, 2).map_err(err)?;
        if res.feasible {
            problems.push(format!(
                "F1(n={}, k={m}) has a degree-2 representation {}",
                2 * m + 1,
                res.witness.expect("feasible")
            ));
        }
        let g = family_dw(4 * m, m, 3 * m).map_err(err)?;
        if lp_feasible(&g, &zero, 2).map_err(err)?.feasible {
            problems.push(format!("DW(n={}, {m}, {}) feasible at degree 2", 4 * m, 3 * m));
        }
    }
    if problems.is_empty() {
        Ok("degree >= 3 for F1(2m+1,m) and DW(4m; m,3m), m <= 5".into())
    } else {
        Err(format!("{} of 10 certificates fail: {}", problems.len(), problems.join("; ")))
    }
}

fn criterion_7() -> Check {
    let mut count = 0;
    for k in 1..=6 {
        for n in 2 * k + 2..=30 {
            ensure(check_identity(n, k).map_err(err)?, || format!("identity fails at n={n} k={k}"))?;
            ensure(!binom_det(n, k).map_err(err)?.is_zero(), || format!("zero determinant at n={n} k={k}"))?;
            count += 1;
        }
    }
    for p in 0..=40i64 {
        for l in -3..=p + 3 {
            ensure(helper_identity(p, l), || format!("helper identity fails at p={p} l={l}"))?;
        }
    }
    Ok(format!("{count} determinant cases, helper identity for p <= 40"))
}

fn criterion_8() -> Check {
    for m in 1..=16i64 {
        for t in 0..=m {
            let lhs = r((m - 2 * t) * (m - 2 * t), m * m) + r(4 * t * (m - t), m * m);
            ensure(lhs == r(1, 1), || format!("normalization identity fails at m={m} t={t}"))?;
        }
        let circuit = XqueryCircuit::new(m as usize).map_err(err)?;
        for t in 0..=m as usize {
            let x = BitString::new((0..m as usize).map(|i| i < t).collect());
            let total = circuit.distribution(&x).map_err(err)?.total();
            ensure((total - 1.0).abs() <= 1e-9, || format!("Xquery m={m} t={t}: total {total}"))?;
        }
    }
    let mut inputs = 0usize;
    for n in 1..=12usize {
        let xc = XqueryCircuit::new(n).map_err(err)?;
        let gc = GroverCircuit::new(n).map_err(err)?;
        let bad: Option<String> = (0..1u64 << n).into_par_iter().find_map_any(|mask| {
            let x = BitString::from_mask(n, mask);
            let sim = xc.distribution(&x).ok()?.outcomes;
            let exact = xquery_exact(&x);
            let x_ok = sim.len() == exact.len()
                && sim.iter().zip(&exact).all(|((l1, p1), (l2, p2))| {
                    l1 == l2 && (p1 - p2.to_f64().unwrap()).abs() <= 1e-9
                });
            let sim = gc.distribution(&x).ok()?;
            let exact = grover1_exact(&x);
            let g_ok = sim.len() == exact.len()
                && sim.iter().zip(&exact).all(|((i1, p1), (i2, p2))| {
                    i1 == i2 && (p1 - p2.to_f64().unwrap()).abs() <= 1e-9
                });
            (!(x_ok && g_ok)).then(|| format!("n={n} x={x}: xquery {x_ok}, grover {g_ok}"))
        });
        if let Some(msg) = bad {
            return Err(msg);
        }
        inputs += 1 << n;
    }
    // Branch probabilities of full-path runs on every promised input.
    let mut runs = 0usize;
    let mut algs: Vec<Algorithm> = Vec::new();
    for n in (2..=10).step_by(2) {
        algs.extend((0..n / 2).map(|k| Algorithm::Dj { n, k }));
    }
    for n in [3, 5, 7] {
        algs.extend([Algorithm::F1 { n }, Algorithm::F3 { n }, Algorithm::Dhw { n, k: n }]);
    }
    for n in [4, 8] {
        algs.extend([Algorithm::Dw1 { n }, Algorithm::Dw2 { n }, Algorithm::F2 { n, k: n / 2 }]);
    }
    algs.extend([Algorithm::F4 { n: 5 }, Algorithm::F4 { n: 7 }, Algorithm::Dw { n: 5, k: 1, l: 5 }]);
    for alg in &algs {
        let f = alg.promise().map_err(err)?.expect("bit-valued");
        for x in f.domain_inputs().map_err(err)? {
            let run = alg.run(&x).map_err(err)?;
            let total = run.total_probability();
            ensure((total - 1.0).abs() <= 1e-9, || format!("{alg} on {x}: total {total}"))?;
            runs += 1;
        }
    }
    Ok(format!(
        "normalization m <= 16; {inputs} inputs match closed forms; {runs} runs conserve probability"
    ))
}

fn applicable_algorithms(n: usize) -> Vec<Algorithm> {
    let mut out = Vec::new();
    for id in ALGORITHM_IDS {
        for k in 0..=n {
            for l in 0..=n {
                if let Ok(alg) = Algorithm::from_id(id, n, Some(k), Some(l)) {
                    if alg.outputs_bits() && !out.contains(&alg) {
                        out.push(alg);
                    }
                }
            }
        }
    }
    out
}

fn random_function(rng: &mut ChaCha8Rng, n: usize) -> SymPartialFn {
    let symbols = [FnValue::Zero, FnValue::One, FnValue::Undefined];
    SymPartialFn::new((0..=n).map(|_| symbols[rng.random_range(0..3)]).collect()).expect("n >= 1")
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let epsilons = [Rational::zero(), r(1, 3)];
    let mut verified_pairs = 0;
    for n in 4..=8 {
        let algs = applicable_algorithms(n);
        for _ in 0..200 {
            let f = random_function(&mut rng, n);
            for eps in &epsilons {
                let d = degree(&f, eps).map_err(err)?;
                for iso in Isomorph::ALL.into_iter().skip(1) {
                    let dg = degree(&f.transformed(iso), eps).map_err(err)?;
                    ensure(d == dg, || format!("degree of {f} ({d}) vs {iso} ({dg}) at eps {eps}"))?;
                }
            }
            let dc = d_complexity(&f).map_err(err)?;
            for iso in Isomorph::ALL {
                let dg = d_complexity(&f.transformed(iso)).map_err(err)?;
                ensure(dc == dg, || format!("D of {f} ({dc}) vs {iso} ({dg})"))?;
            }

            let alg = algs.choose(&mut rng).expect("some algorithm applies").clone();
            let promise = alg.promise().map_err(err)?.expect("bit-valued");
            let g = f.restricted_to(&promise.domain_weights());
            let base = verify_exact(&alg, &g).map_err(err)?;
            for iso in Isomorph::ALL {
                let wrapped = alg.clone().transformed(iso);
                let rep = verify_exact(&wrapped, &g.transformed(iso)).map_err(err)?;
                let same = rep.all_exact == base.all_exact
                    && rep.worst_case_queries == base.worst_case_queries
                    && rep.inputs_checked == base.inputs_checked
                    && rep.failure_count == base.failure_count;
                ensure(same, || format!("{alg} on {g} differs under {iso}"))?;
            }
            verified_pairs += 1;
        }
    }
    Ok(format!(
        "1000 random functions: degree (eps 0, 1/3), D, and {verified_pairs} verifications invariant"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("generalized Deutsch-Jozsa: exact, optimal, D(f) closed form", criterion_1),
        ("explicit degree-2 polynomial for DJ with k = 0", criterion_2),
        ("explicit degree-2 witnesses for F2, F3, F4", criterion_3),
        ("degree <= 2 classification vs LP, brute force", criterion_4),
        ("two-query and bounded-query algorithms exact", criterion_5),
        ("degree >= 3 certificates for F1(2m+1,m) and DW(4m; m,3m)", criterion_6),
        ("binomial determinant identity and helper identity", criterion_7),
        ("simulator normalization and closed forms", criterion_8),
        ("isomorphism invariance of degree, D(f), verification", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS ({secs:.2}s) {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL ({secs:.2}s) {title}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use filiform::deformation::{decompose_z, deform, deform_unchecked, is_infinitesimal, solve_subspace_c, Deformation};
use filiform::exactlin::{frac, int, span_basis};
use filiform::families::{example_poincare, example_so23_adjoint, phi1, phi13, phi13_with, phi3, psi_k, psi_t, closed_basis_c};
use filiform::filiform::{family_mu1, family_mu2, is_filiform, model, order_nilindex};
use filiform::graded::verify_jacobi;
use filiform::sl2::dim_c_by_weights;
use filiform::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_DIM_C: Duration = Duration::from_secs(10);
const BUDGET_EQUIVALENCE: Duration = Duration::from_secs(60);
const BUDGET_EXAMPLES: Duration = Duration::from_secs(30);
const SAMPLES: usize = 20;
const SEED: u64 = 0x5eed_0003;

/// Expected `dim C` for `m = 3`.
const DIM_C_M3: [(usize, usize); 6] = [(1, 2), (3, 6), (5, 8), (7, 10), (9, 10), (11, 10)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: summary }
    } else {
        let shown: Vec<_> = failures.iter().take(6).cloned().collect();
        let more = if failures.len() > shown.len() { format!(" (+{} more)", failures.len() - shown.len()) } else { String::new() };
        Outcome { pass: false, detail: format!("{summary}; failures: {}{more}", shown.join("; ")) }
    }
}

fn in_c(n: usize, psi: &Deformation) -> bool {
    is_infinitesimal(&model(n, 3, 0).unwrap(), psi).unwrap().is_ok()
}

fn c1_dim_c() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (n, want) in DIM_C_M3 {
        let w = dim_c_by_weights(n, 3).unwrap();
        let k = solve_subspace_c(n, 3).unwrap().len();
        if w != want || k != want {
            failures.push(format!("n={n}: weights={w} kernel={k} expected={want}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= BUDGET_DIM_C {
        failures.push(format!("took {elapsed:?}, budget {BUDGET_DIM_C:?}"));
    }
    outcome(failures, format!("dims {:?} in {elapsed:.2?}", DIM_C_M3.map(|d| d.1)))
}

fn c2_equivalence() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 1..=10 {
        for m in 1..=4 {
            count += 1;
            let w = dim_c_by_weights(n, m).unwrap();
            let k = solve_subspace_c(n, m).unwrap().len();
            if w != k {
                failures.push(format!("(n={n}, m={m}): weights={w} kernel={k}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= BUDGET_EQUIVALENCE {
        failures.push(format!("took {elapsed:?}, budget {BUDGET_EQUIVALENCE:?}"));
    }
    outcome(failures, format!("{count} instances agree in {elapsed:.2?}"))
}

fn c3_bases() -> Outcome {
    let mut failures = Vec::new();
    for (n, want) in DIM_C_M3.into_iter().filter(|&(n, _)| n <= 9) {
        let basis = closed_basis_c(n).unwrap();
        for b in &basis {
            if !in_c(n, &b.deformation) {
                failures.push(format!("n={n}: {} is not a cocycle", b.label()));
            }
        }
        let c = solve_subspace_c(n, 3).unwrap();
        let coords: Vec<_> = basis.iter().map(|b| c.coordinates(&b.deformation)).collect();
        let rank = span_basis(c.unknowns.len(), coords).len();
        if rank != basis.len() {
            failures.push(format!("n={n}: rank {rank} of {} maps", basis.len()));
        }
        if basis.len() != want {
            failures.push(format!("n={n}: {} maps, expected {want}", basis.len()));
        }
    }
    outcome(failures, "n in {1,3,5,7,9}: cocycles, independent, full size".into())
}

fn c4_boundary() -> Outcome {
    let n = 9;
    let mut failures = Vec::new();
    let mut pattern = (String::new(), String::new());
    for s in 1..=n {
        let one = in_c(n, &phi1(n, s).unwrap().deformation);
        let three = in_c(n, &phi3(n, s).unwrap().deformation);
        pattern.0.push(if one { '1' } else { '0' });
        pattern.1.push(if three { '1' } else { '0' });
        if one != (s >= 5) {
            failures.push(format!("phi1(9,{s}) membership {one}"));
        }
        if three != (s >= 7) {
            failures.push(format!("phi3(9,{s}) membership {three}"));
        }
    }
    outcome(failures, format!("phi1 {} phi3 {} for s=1..9", pattern.0, pattern.1))
}

fn c5_combination() -> Outcome {
    let n = 11;
    let mut failures = Vec::new();
    for (s, expect) in [(3, false), (5, true), (6, true)] {
        let got = in_c(n, &phi13(n, s).unwrap().deformation);
        if got != expect {
            failures.push(format!("phi13(11,{s}) membership {got}, expected {expect}"));
        }
    }
    let wrong = phi13_with(n, 5, &frac(1, 10)).unwrap();
    if in_c(n, &wrong) {
        failures.push("A=1/10 at s=5 passed the cocycle test".into());
    }
    outcome(failures, "s=3 rejected, s=5,6 accepted, A=1/10 rejected".into())
}

fn random_psi3(rng: &mut ChaCha8Rng, n: usize) -> Deformation {
    let mut psi = Deformation::zero(n, 3);
    for _ in 0..rng.gen_range(1..=4) {
        let mut key = [rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3)];
        key.sort_unstable();
        let s = rng.gen_range(1..=n);
        let c = rng.gen_range(-3..=3);
        psi.add_psi3_term(key, s, int(c)).unwrap();
    }
    psi
}

fn c6_round_trip() -> Outcome {
    let n = 7;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mu0 = model(n, 3, 0).unwrap();
    let basis = closed_basis_c(n).unwrap();
    let mut failures = Vec::new();
    for sample in 0..SAMPLES {
        let mut psi = Deformation::zero(n, 3);
        for b in &basis {
            psi = psi.add_scaled(&int(rng.gen_range(-3..=3)), &b.deformation).unwrap();
        }
        match deform(&mu0, &psi) {
            Ok(alg) => {
                if !verify_jacobi(&alg).is_ok() {
                    failures.push(format!("span sample {sample}: identities fail"));
                }
                if !is_filiform(&alg).map(|r| r.filiform).unwrap_or(false) {
                    failures.push(format!("span sample {sample}: not filiform"));
                }
            }
            Err(e) => failures.push(format!("span sample {sample}: refused ({e})")),
        }
    }
    let mut refused = 0;
    let mut drawn = 0;
    while refused < SAMPLES {
        drawn += 1;
        let psi = random_psi3(&mut rng, n);
        if in_c(n, &psi) {
            continue;
        }
        match deform(&mu0, &psi) {
            Err(Error::NotInfinitesimal(_)) => refused += 1,
            other => {
                failures.push(format!("non-cocycle accepted: {:?}", other.map(|_| ())));
                break;
            }
        }
    }
    outcome(failures, format!("{SAMPLES} span samples deform, {refused} non-cocycles refused ({drawn} drawn)"))
}

fn check_family(label: String, n: usize, m: usize, psi: filiform::Result<Deformation>, failures: &mut Vec<String>) {
    let psi = match psi {
        Ok(psi) => psi,
        Err(e) => {
            failures.push(format!("{label}: {e}"));
            return;
        }
    };
    let alg = deform_unchecked(&model(n, m, 0).unwrap(), &psi).unwrap();
    let report = verify_jacobi(&alg);
    if let Some(v) = report.first() {
        failures.push(format!("{label}: {v}"));
        return;
    }
    match order_nilindex(&alg) {
        Ok(nil) if (nil.p0, nil.p1) == (n, m) => {}
        other => failures.push(format!("{label}: nilindex {other:?}")),
    }
}

fn c7_families() -> Outcome {
    let mut failures = Vec::new();
    let (mut k_cases, mut k_failed) = (0, 0);
    for n in 2..=8 {
        for m in 1..=8 {
            for k in 1..=m {
                k_cases += 1;
                let before = failures.len();
                check_family(format!("psi_k(n={n},m={m},k={k})"), n, m, psi_k(n, m, k).map(|d| d.deformation), &mut failures);
                k_failed += failures.len() - before;
            }
        }
    }
    let (mut t_cases, mut t_failed, mut t_endpoint_failed) = (0, 0, 0);
    for n in 1..=8 {
        for m in 1..=n {
            for t in n - m..=n {
                t_cases += 1;
                let before = failures.len();
                check_family(format!("psi_t(n={n},m={m},t={t})"), n, m, psi_t(n, m, t).map(|d| d.deformation), &mut failures);
                let failed = failures.len() - before;
                t_failed += failed;
                if t == n - m {
                    t_endpoint_failed += failed;
                }
            }
        }
    }
    let summary = format!(
        "psi_k {}/{k_cases} pass; psi_t {}/{t_cases} pass ({t_endpoint_failed} of {t_failed} failures at t=n-m)",
        k_cases - k_failed,
        t_cases - t_failed
    );
    outcome(failures, summary)
}

fn c8_examples() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for d in 2..=5 {
        if !verify_jacobi(&example_poincare(d).unwrap()).is_ok() {
            failures.push(format!("poincare D={d}"));
        }
    }
    if !verify_jacobi(&example_so23_adjoint()).is_ok() {
        failures.push("so(2,3) adjoint".into());
    }
    let mut families = 0;
    for n in 1..=6 {
        for m in 1..=6 {
            for p in 0..=6 {
                families += 1;
                if !verify_jacobi(&family_mu1(n, m, p).unwrap()).is_ok() {
                    failures.push(format!("mu1({n},{m},{p})"));
                }
                if m >= n {
                    families += 1;
                    if !verify_jacobi(&family_mu2(n, m, p).unwrap()).is_ok() {
                        failures.push(format!("mu2({n},{m},{p})"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= BUDGET_EXAMPLES {
        failures.push(format!("took {elapsed:?}, budget {BUDGET_EXAMPLES:?}"));
    }
    outcome(failures, format!("4 Poincaré, so(2,3), {families} family members in {elapsed:.2?}"))
}

fn c9_decomposition() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=6 {
        for m in 1..=6 {
            let z = decompose_z(n, m).unwrap();
            if !z.is_direct_sum() {
                failures.push(format!(
                    "(n={n}, m={m}): full {} vs {}+{}+{}",
                    z.full_dimension,
                    z.a.len(),
                    z.b.len(),
                    z.c.len()
                ));
            }
        }
    }
    outcome(failures, format!("36 sizes, full kernel = A+B+C, {:.2?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("C1 dim C for m=3 by weights and kernel", c1_dim_c),
        ("C2 weight count equals kernel dimension", c2_equivalence),
        ("C3 closed-form bases of C", c3_bases),
        ("C4 membership boundary at n=9", c4_boundary),
        ("C5 balanced combination at n=11", c5_combination),
        ("C6 deform round trip", c6_round_trip),
        ("C7 integrable families", c7_families),
        ("C8 example algebras", c8_examples),
        ("C9 cocycle space splits", c9_decomposition),
    ];
    let mut all = true;
    for (name, check) in criteria {
        let result = check();
        all &= result.pass;
        println!("{} {name}: {}", if result.pass { "PASS" } else { "FAIL" }, result.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

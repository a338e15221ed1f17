//! Acceptance gate: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use explab::cyclotomic::Cyclo;
use explab::dmodule::{derham_pushforward, make_l, point_complex};
use explab::finite_model::{kloosterman_class, real_psi, ExpClass, ExpObject, FiniteSet};
use explab::groebner::buchberger;
use explab::rat::{q, qf, Q};
use explab::suites::{run_suite, Status, SuiteParams};
use explab::weyl::parse_weyl;

struct Outcome {
    ok: bool,
    summary: String,
}

fn suite_outcome(name: &str, params: &SuiteParams) -> Outcome {
    match run_suite(name, params) {
        Ok(report) => {
            let bad: Vec<String> = report
                .cases
                .iter()
                .filter(|c| c.status != Status::Pass)
                .map(|c| format!("{} [{}] {}", c.id, c.status.label(), c.details))
                .collect();
            let mut summary = format!("{}: {}/{} cases pass", name, report.count(Status::Pass), report.cases.len());
            if !bad.is_empty() {
                summary.push_str(&format!("; {}", bad.join("; ")));
            }
            Outcome { ok: bad.is_empty() && !report.cases.is_empty(), summary }
        }
        Err(e) => Outcome { ok: false, summary: format!("{name}: {e}") },
    }
}

fn and_check(mut o: Outcome, label: &str, check: Result<(), String>) -> Outcome {
    match check {
        Ok(()) => o.summary.push_str(&format!(", {label} ok")),
        Err(e) => {
            o.ok = false;
            o.summary.push_str(&format!(", {label} FAILED: {e}"));
        }
    }
    o
}

fn base_p_digits(mut i: usize, p: usize, r: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(r);
    for _ in 0..r {
        d.push(i % p);
        i /= p;
    }
    d
}

/// Incidence counts #{x : x.y = t} on F_5^2 by enumeration.
fn orthogonality_counts() -> Result<(), String> {
    let (p, r) = (5usize, 2usize);
    let n = p.pow(r as u32);
    let mut counts = vec![0i64; n * p];
    for y in 0..n {
        let yd = base_p_digits(y, p, r);
        for x in 0..n {
            let xd = base_p_digits(x, p, r);
            let t = xd.iter().zip(&yd).map(|(a, b)| a * b).sum::<usize>() % p;
            counts[y * p + t] += 1;
        }
    }
    for y in 1..n {
        if counts[y * p..(y + 1) * p].iter().any(|&c| c != 5) {
            return Err(format!("row {y} is not constant 5"));
        }
    }
    if counts[..p] != [25, 0, 0, 0, 0] {
        return Err(format!("zero row {:?}", &counts[..p]));
    }
    let base = FiniteSet::new(n).map_err(|e| e.to_string())?;
    let incidence = ExpObject::from_rational_fn(base, p as u64, |y, t| q(counts[y * p + t]))
        .map_err(|e| e.to_string())?;
    let target = ExpObject::from_rational_fn(base, p as u64, |y, t| if y == 0 && t == 0 { q(25) } else { q(0) })
        .map_err(|e| e.to_string())?;
    if ExpClass::new(incidence) != ExpClass::new(target) {
        return Err("class differs from 25 delta".into());
    }
    Ok(())
}

fn weyl_identities() -> Result<(), String> {
    let pairs = [("d*x", "x*d + 1"), ("d^2*x^2", "x^2*d^2 + 4*x*d + 2")];
    for (lhs, rhs) in pairs {
        let l = parse_weyl(lhs, 1).map_err(|e| e.to_string())?;
        if l.to_string() != rhs {
            return Err(format!("{lhs} = {l}"));
        }
    }
    for op in ["d + 1", "d - 2", "d + 1/2"] {
        let gens = [
            parse_weyl(op, 1).map_err(|e| e.to_string())?,
            parse_weyl("x", 1).map_err(|e| e.to_string())?,
        ];
        if !buchberger(&gens).map_err(|e| e.to_string())?.is_unit() {
            return Err(format!("({op}, x) not detected as the unit ideal"));
        }
    }
    Ok(())
}

fn exponential_module_values() -> Result<(), String> {
    let lambdas: [Q; 5] = [q(1), q(-1), q(2), q(-2), qf(1, 2)];
    for lam in &lambdas {
        let (l, _) = make_l(lam);
        let push = derham_pushforward(&l).map_err(|e| e.to_string())?;
        if push.total_dim() != 0 || push.certificate.label() != "exact-triangular" {
            return Err(format!("pushforward of L_{lam}: {}", push.to_json()));
        }
        let (m, _) = make_l(&-lam.clone());
        let pt = point_complex(&m, &q(0)).map_err(|e| e.to_string())?;
        if (pt.dim_ker, pt.dim_coker) != (0, 1) {
            return Err(format!("point complex of d + {lam} at 0: {}", pt.to_json()));
        }
    }
    Ok(())
}

/// Kloosterman sums at p = 7 against zeta powers summed directly.
fn kloosterman_direct() -> Result<(), String> {
    let p = 7i64;
    for a in 1..p {
        let h = kloosterman_class(p as u64, a).map_err(|e| e.to_string())?;
        for lam in 1..p {
            let pipeline = real_psi(&h, lam).map_err(|e| e.to_string())?.remove(0);
            let mut direct = Cyclo::zero(p as u64);
            for x in 1..p {
                let inv = (1..p).find(|y| x * y % p == 1).unwrap();
                direct.add_assign_ref(&Cyclo::zeta_pow(lam * (x + a * inv), p as u64));
            }
            if pipeline != direct {
                return Err(format!("a = {a}, lambda = {lam}: {pipeline} vs {direct}"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let params = SuiteParams { primes: vec![3, 5, 7], ranks: vec![1, 2], seed: 0, random_cases: 100 };
    type Criterion<'a> = (&'a str, u64, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            "1 finite-model identities",
            60,
            Box::new(|| {
                and_check(suite_outcome("finite-identities", &params), "F_5^2 incidence counts", orthogonality_counts())
            }),
        ),
        (
            "2 Weyl/Groebner",
            10,
            Box::new(|| and_check(suite_outcome("weyl-core", &params), "commutation and unit ideal", weyl_identities())),
        ),
        (
            "3 D-module",
            60,
            Box::new(|| {
                and_check(suite_outcome("dmod-core", &params), "L_lambda pushforward and point", exponential_module_values())
            }),
        ),
        (
            "4 cross-engine coherence",
            30,
            Box::new(|| and_check(suite_outcome("realization", &params), "Kloosterman p=7 direct", kloosterman_direct())),
        ),
    ];

    let mut all_ok = true;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let ok = outcome.ok && in_time;
        all_ok &= ok;
        println!(
            "{} criterion {name}: {}; {:.2} s (limit {limit} s{})",
            if ok { "PASS" } else { "FAIL" },
            outcome.summary,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", exceeded" }
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

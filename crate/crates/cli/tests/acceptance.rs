//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::Command;
use std::time::{Duration, Instant};

use exceptional_cli::CertificateRecord;
use exceptional_core::candidates::{
    cardinality_f, cardinality_f_plus, cardinality_search_space, enumerate_f, enumerate_f_plus, solve_pair, y_vector,
    ConstraintSystem,
};
use exceptional_core::fib::{docagne, fib, fib_int};
use exceptional_core::highprec::{
    format_sig, g_eval, h_eval, solve_s, t_schedule, BoundedReal, Decimal, PrecisionContext, Psi, ScheduleMode,
    FIGURE1_ROWS,
};
use exceptional_core::lattice::count_lattice;
use exceptional_core::verifier::{
    minimize_over_fplus, oracle_crosscheck_schedule, switch_profile, CandidateSet, PrimePairContext, Status,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:.2?}, limit {limit:?}"))
}

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_exceptional"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run the binary: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn certificate(text: &str) -> Result<CertificateRecord, String> {
    serde_json::from_str(text).map_err(|e| format!("bad certificate JSON: {e}"))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn n39_reproduction() -> Check {
    let start = Instant::now();
    let (code, out) = cli(&["verify", "--n", "39", "--schedule", "figure1"])?;
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let c = certificate(&out)?;
    ensure(c.results.len() == 38, || format!("{} results", c.results.len()))?;
    for (j, r) in c.results.iter().enumerate() {
        let i = j + 1;
        let y = y_vector(39, i, i + 1).map_err(|e| e.to_string())?;
        ensure(
            r.status == "unique" && r.argmin.entries == y.entry_strings(),
            || format!("index {i}: {} at y({},{})", r.status, r.argmin.k, r.argmin.l),
        )?;
    }
    ensure(c.verdicts.a && c.verdicts.b && c.verdicts.c, || format!("{:?}", c.verdicts))?;
    ensure(c.exceptional_points_at_least == Some(37), || {
        format!("{:?}", c.exceptional_points_at_least)
    })?;
    let concl = c.conclusion.unwrap_or_default();
    ensure(concl.starts_with("≥ 37 exceptional points"), || concl.clone())?;
    within(elapsed, Duration::from_secs(10), "verify --n 39")?;
    Ok(format!("38 argmins y_39(i,i+1), A/B/C true, >= 37 points, {elapsed:.2?}"))
}

fn n40_precision() -> Check {
    let (code, out) = cli(&["verify", "--n", "40", "--bits", "53", "--max-bits", "53"])?;
    ensure(code == 3, || format!("53-bit exit code {code}, want 3"))?;
    let low = certificate(&out)?;
    ensure(low.ambiguous_indices.contains(&38), || {
        format!("53-bit ambiguous set {:?} lacks 38", low.ambiguous_indices)
    })?;
    let (_, out) = cli(&["verify", "--n", "40", "--bits", "128", "--max-bits", "128"])?;
    let high = certificate(&out)?;
    ensure(high.results.len() == 39, || format!("{} results", high.results.len()))?;
    for r in &high.results {
        ensure(r.status == "unique", || format!("index {} {} at 128 bits", r.i, r.status))?;
        let gap = r.gap.as_ref().ok_or_else(|| format!("index {}: no gap", r.i))?;
        let v: BigRational = gap.value.parse::<Decimal>().map_err(|e| e.to_string())?.to_rational();
        let rad: BigRational = gap.radius.parse::<Decimal>().map_err(|e| e.to_string())?.to_rational();
        ensure(v > rad, || format!("index {}: gap {} +/- {}", r.i, gap.value, gap.radius))?;
    }
    Ok(format!(
        "53 bits: ambiguous at {:?}; 128 bits: 39/39 certified unique, verdicts {:?}",
        low.ambiguous_indices, high.verdicts
    ))
}

fn figure1_regression() -> Check {
    let ctx = PrecisionContext::default();
    let one = BigRational::one();
    let mut s = Vec::new();
    for (j, (tab, _)) in FIGURE1_ROWS.iter().enumerate() {
        let i = j + 1;
        let got = solve_s(i, &ctx).map_err(|e| e.to_string())?;
        let got = got.mid().to_rational() - &one;
        let want: Decimal = tab.parse().map_err(|e: exceptional_core::Error| e.to_string())?;
        let e = want.floor_log10().expect("non-zero table entry");
        // 9 significant digits: half a unit in the 9th digit
        let tol = Decimal::new(5, e - 9).to_rational();
        ensure((&got - want.to_rational()).abs() <= tol, || {
            format!("s_{i} - 1 = {} vs {tab}", format_sig(&got, 12))
        })?;
        s.push(got);
    }
    let half = (&s[36] - &s[37]) / BigRational::from_integer(2.into());
    let shown = format_sig(&half, 6);
    ensure(shown == "1.36011e-16", || format!("half-gap {shown}"))?;
    Ok(format!("38 s_i to 9 digits, (s_37 - s_38)/2 = {shown}"))
}

fn cardinalities() -> Check {
    let start = Instant::now();
    for n in 3..=30 {
        let f = enumerate_f(n).map_err(|e| e.to_string())?.len();
        let fp = enumerate_f_plus(n).map_err(|e| e.to_string())?.len();
        ensure(BigUint::from(f) == cardinality_f(n), || format!("#F_{n} = {f}"))?;
        ensure(BigUint::from(fp) == cardinality_f_plus(n), || format!("#F+_{n} = {fp}"))?;
    }
    let evals = enumerate_f_plus(39).map_err(|e| e.to_string())?.len() * 38;
    ensure(evals == 13756 && cardinality_search_space(39) == BigUint::from(13756u32), || {
        format!("search space {evals}")
    })?;
    for n in 3..=20 {
        let f = fib(n).to_string().parse::<u64>().expect("f_20 fits");
        let (c, _) = count_lattice(n, Some(f), false).map_err(|e| e.to_string())?;
        ensure(c >= f, || format!("#V_{n} = {c} < f_{n} = {f}"))?;
    }
    let exact = [
        count_lattice(3, None, false).map_err(|e| e.to_string())?,
        count_lattice(4, None, false).map_err(|e| e.to_string())?,
    ];
    ensure(exact == [(2, true), (3, true)], || format!("exact counts {exact:?}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "cardinality suite")?;
    Ok(format!("closed forms n=3..30, 13756 at n=39, #V_n >= f_n for n=3..20, {elapsed:.2?}"))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let ctx = PrecisionContext::default();
    let mut checked = 0;
    for n in 3..=12 {
        let sch = t_schedule(n, ScheduleMode::Auto, &ctx).map_err(|e| e.to_string())?;
        let reps = oracle_crosscheck_schedule(&sch, &ctx, 12).map_err(|e| e.to_string())?;
        for r in &reps {
            ensure(r.equal, || format!("n={n} i={:?}: minima differ", r.i))?;
            ensure(r.unique_match != Some(false), || format!("n={n} i={:?}: argmins differ", r.i))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "oracle")?;
    Ok(format!("{checked} (n, t_i) pairs agree, {elapsed:.2?}"))
}

fn identities() -> Check {
    for a in 0..=60 {
        for b in 0..=a {
            let mut want = fib_int(a - b);
            if b % 2 == 1 {
                want = -want;
            }
            ensure(docagne(a, b) == want, || format!("d'Ocagne a={a} b={b}"))?;
        }
    }
    let mut pairs = 0;
    for n in 3..=12 {
        let sys = ConstraintSystem::new(n);
        for k in 1..n {
            for l in (k + 1)..=n {
                let y = y_vector(n, k, l).map_err(|e| e.to_string())?;
                ensure(sys.is_solution(y.entries()), || format!("A_{n} y({k},{l}) off target"))?;
                let (xk, xl) = solve_pair(n, k, l).map_err(|e| e.to_string())?;
                ensure(xk == y.entries()[k - 1] && xl == y.entries()[l - 1], || {
                    format!("solve_pair({n},{k},{l})")
                })?;
                let predicted = (l - k) % 2 == 1 || l == n;
                ensure(y.is_nonnegative() == predicted, || format!("sign rule at ({n},{k},{l})"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("d'Ocagne for indices <= 60, {pairs} pairs for n <= 12, all exact"))
}

fn random_t(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.gen_range(1000..=2000), 1000)
}

fn soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let primes = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    let mut evals = 0;
    for _ in 0..400 {
        let n = rng.gen_range(3..=40);
        let x: Vec<BigRational> = (0..n)
            .map(|_| q(rng.gen_range(-50..=50), rng.gen_range(1..=20)))
            .collect();
        let t = random_t(&mut rng);
        let b = rng.gen_range(53..=160);
        let lo = PrecisionContext::fixed(b).map_err(|e| e.to_string())?;
        let hi = PrecisionContext::fixed(2 * b).map_err(|e| e.to_string())?;
        let v = g_eval(&x, &BoundedReal::from_rational(&t, b), &lo);
        let w = g_eval(&x, &BoundedReal::from_rational(&t, 2 * b), &hi);
        ensure(v.contains(w.mid()), || format!("g_eval n={n} t={t} bits={b}: {w} outside {v}"))?;
        evals += 1;
    }
    for _ in 0..400 {
        let n = rng.gen_range(3..=30);
        let x: Vec<BigRational> = (0..n).map(|_| q(rng.gen_range(0..=30), 1)).collect();
        let t = random_t(&mut rng);
        let b = rng.gen_range(53..=160);
        let psi = match rng.gen_range(0..4) {
            0 => Psi::Golden,
            _ => {
                let p = primes[rng.gen_range(0..primes.len())];
                let mut r = primes[rng.gen_range(0..primes.len())];
                if r == p {
                    r = if p == 2 { 3 } else { 2 };
                }
                Psi::LogRatio {
                    p: p.into(),
                    q: r.into(),
                }
            }
        };
        let lo = PrecisionContext::new(b, 4 * b).map_err(|e| e.to_string())?;
        let hi = PrecisionContext::new(2 * b, 8 * b).map_err(|e| e.to_string())?;
        let v = h_eval(&x, &psi, &BoundedReal::from_rational(&t, b), &lo).map_err(|e| e.to_string())?;
        let w = h_eval(&x, &psi, &BoundedReal::from_rational(&t, 2 * b), &hi).map_err(|e| e.to_string())?;
        ensure(v.contains(w.mid()), || format!("h_eval {psi:?} t={t} bits={b}: {w} outside {v}"))?;
        evals += 1;
    }
    for _ in 0..200 {
        let i = rng.gen_range(1..=60);
        let b = rng.gen_range(53..=200);
        let v = solve_s(i, &PrecisionContext::new(b, 2 * b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let w = solve_s(i, &PrecisionContext::new(2 * b, 4 * b).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(v.contains(w.mid()), || format!("s_{i} at {b} bits: {w} outside {v}"))?;
        evals += 1;
    }
    let mut stable = 0;
    for _ in 0..100 {
        let n = rng.gen_range(3..=40);
        let t = random_t(&mut rng);
        let b = rng.gen_range(53..=128);
        let r1 = minimize_over_fplus(n, &t, &PrecisionContext::fixed(b).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if r1.status != Status::Unique {
            continue;
        }
        let r2 = minimize_over_fplus(n, &t, &PrecisionContext::fixed(2 * b).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(r2.argmin.same_vector(&r1.argmin), || format!("argmin moved at n={n} t={t} bits={b}"))?;
        stable += 1;
    }
    Ok(format!("{evals} evaluations sound at doubled precision, {stable} unique argmins stable"))
}

fn switch_sanity() -> Check {
    let ctx = PrecisionContext::default();
    let pair = PrimePairContext::new(2u32.into(), 3u32.into(), 3).map_err(|e| e.to_string())?;
    let prof = switch_profile(&pair, CandidateSet::FPlus, &q(1, 1), &q(2, 1), 101, &ctx, 12).map_err(|e| e.to_string())?;
    ensure(prof.switches.len() == 1, || format!("{} switch intervals", prof.switches.len()))?;
    let sw = &prof.switches[0];
    let mut compared = 0;
    for n in [3, 8, 15] {
        let golden = PrimePairContext::synthetic(Psi::Golden, n).map_err(|e| e.to_string())?;
        let p = switch_profile(&golden, CandidateSet::FPlus, &q(1, 1), &q(2, 1), 101, &ctx, 12)
            .map_err(|e| e.to_string())?;
        for g in &p.points {
            let r = minimize_over_fplus(n, &g.t, &ctx).map_err(|e| e.to_string())?;
            ensure(g.status == r.status, || format!("n={n} t={}: status differs", g.t))?;
            ensure(p.candidates.vectors[g.argmin] == r.argmin.entries(), || {
                format!("n={n} t={}: {} vs {}", g.t, p.candidates.labels[g.argmin], r.argmin)
            })?;
            ensure(g.min_value.overlaps(&r.min_value), || format!("n={n} t={}: values differ", g.t))?;
            compared += 1;
        }
    }
    Ok(format!(
        "2,3: one switch in [{}, {}] ({} -> {}); psi = phi matches at {compared} grid points",
        format_sig(&sw.t_left, 4),
        format_sig(&sw.t_right, 4),
        prof.candidates.labels[sw.argmin_before],
        prof.candidates.labels[sw.argmin_after]
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("n=39 certificate", n39_reproduction),
        ("n=40 precision barrier", n40_precision),
        ("stable-point table", figure1_regression),
        ("cardinalities", cardinalities),
        ("lattice oracle", oracle_equivalence),
        ("exact identities", identities),
        ("precision soundness", soundness),
        ("switch profile", switch_sanity),
    ];
    let mut failed = 0;
    for (j, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", j + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", j + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdepth_core::bounds::{bipartite_upper, count_support_d_plus_1, floor, Rational};
use sdepth_core::clutter::random_antichain;
use sdepth_core::io::{clutter_to_json, SdepthJson};
use sdepth_core::oracle::sdepth_exhaustive_oracle;
use sdepth_core::subset;
use sdepth_core::{
    bounds_report, build_poset, complete_kpartite, decompose_dpartition, exact_sdepth,
    sdepth_at_least, validate_partition, verify_dpartition, CharacteristicPoset, Clutter,
    DPartition,
};

const SEED: u64 = 1;
const RANDOM_SAMPLES: usize = 200;
const MAX_SUM: usize = 10;
const LIMIT_K22: Duration = Duration::from_secs(1);
const LIMIT_BIPARTITE: Duration = Duration::from_secs(600);
const LIMIT_C3: Duration = Duration::from_secs(300);
const LIMIT_ORACLE: Duration = Duration::from_secs(300);

type Check = Result<String, String>;

/// One exact value seen anywhere in the suite.
struct Seen {
    what: String,
    min_degree: usize,
    n: usize,
    value: usize,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str], stdin: Option<&str>) -> Output {
    use std::io::Write;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sdepth"));
    cmd.args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    {
        let mut pipe = child.stdin.take().expect("stdin");
        // A usage error can close stdin before it is read.
        let _ = pipe.write_all(stdin.unwrap_or("").as_bytes());
    }
    child.wait_with_output().expect("binary exits")
}

/// Nondecreasing `k`-tuples with entries `>= lo` and sum `<= max`.
fn vectors(k: usize, lo: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, lo: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let mut x = lo;
        while x * (k - cur.len()) <= left {
            cur.push(x);
            rec(k, x, left - x, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(k, lo, max, &mut Vec::new(), &mut out);
    out
}

fn sdepth_checked(
    p: &CharacteristicPoset,
    what: &str,
    seen: &mut Vec<Seen>,
) -> Result<usize, String> {
    let r = exact_sdepth(p).map_err(|e| format!("{what}: {e}"))?;
    ensure(validate_partition(p, &r.certificate, r.value), || {
        format!("{what}: certificate invalid")
    })?;
    if let Some(l) = r.refutation_level {
        ensure(
            sdepth_at_least(p, l).map_err(|e| e.to_string())?.is_none(),
            || format!("{what}: level {l} not refuted"),
        )?;
    }
    seen.push(Seen {
        what: what.to_string(),
        min_degree: p.min_generator_size(),
        n: p.n(),
        value: r.value,
    });
    Ok(r.value)
}

fn complete_poset(d: usize, r: &[usize]) -> Result<(Clutter, CharacteristicPoset), String> {
    let g = complete_kpartite(d, r).map_err(|e| e.to_string())?;
    let p = build_poset(&g.clutter).map_err(|e| e.to_string())?;
    Ok((g.clutter, p))
}

fn criterion_1(seen: &mut Vec<Seen>) -> Check {
    let g = complete_kpartite(2, &[2, 2]).map_err(|e| e.to_string())?;
    let input = clutter_to_json(&g.clutter);
    let start = Instant::now();
    let out = cli(&["sdepth"], Some(&input));
    let elapsed = start.elapsed();
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}", out.status.code())
    })?;
    let j: SdepthJson = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let p = build_poset(&g.clutter).map_err(|e| e.to_string())?;
    let part = j.certificate.to_partition(4).map_err(|e| e.to_string())?;
    ensure(j.value == 3, || format!("value {}", j.value))?;
    ensure(validate_partition(&p, &part, 3), || {
        "certificate invalid".into()
    })?;
    let half = bipartite_upper(4).map_err(|e| e.to_string())?;
    ensure(half == Rational::from_integer(3), || {
        format!("(n+2)/2 = {half}")
    })?;
    ensure(elapsed < LIMIT_K22, || format!("took {elapsed:?}"))?;
    sdepth_checked(&p, "K_{2,2}", seen)?;
    Ok(format!(
        "K_2,2 sdepth 3 = (4+2)/2, certificate valid, {elapsed:.2?}"
    ))
}

fn criterion_2(seen: &mut Vec<Seen>) -> Check {
    let start = Instant::now();
    let mut rows = Vec::new();
    for r in vectors(2, 2, 9) {
        let n = r[0] + r[1];
        let (_, p) = complete_poset(2, &r)?;
        let value = sdepth_checked(&p, &format!("bipartite {r:?}"), seen)?;
        let cap = floor(bipartite_upper(n).map_err(|e| e.to_string())?);
        ensure(value as i64 <= cap, || {
            format!("{r:?}: sdepth {value} > {cap}")
        })?;
        rows.push(value);
    }
    ensure(rows.len() == 12, || format!("{} instances", rows.len()))?;

    let out = cli(
        &["verify-family", "--d", "2", "--k", "2", "--max-n", "9"],
        None,
    );
    ensure(out.status.code() == Some(0), || {
        format!("sweep exit {:?}", out.status.code())
    })?;
    let csv = String::from_utf8_lossy(&out.stdout);
    let exact: Vec<usize> = csv
        .lines()
        .skip(1)
        .map(|l| {
            l.split(',')
                .nth(8)
                .and_then(|v| v.parse().ok())
                .unwrap_or(usize::MAX)
        })
        .collect();
    ensure(exact == rows, || {
        format!("sweep column {exact:?} != {rows:?}")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < LIMIT_BIPARTITE, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "12 bipartite instances with n <= 9 within floor((n+2)/2), {elapsed:.2?}"
    ))
}

fn criterion_3(seen: &mut Vec<Seen>) -> Check {
    let start = Instant::now();
    let g = complete_kpartite(3, &[2, 2, 2]).map_err(|e| e.to_string())?;
    let rep = bounds_report(&g.clutter, &g.partition, 3).map_err(|e| e.to_string())?;
    ensure(rep.paper_upper == Rational::new(9, 2), || {
        format!("bound {}", rep.paper_upper)
    })?;
    ensure(rep.paper_upper_floor == 4, || {
        format!("floor {}", rep.paper_upper_floor)
    })?;
    let p = build_poset(&g.clutter).map_err(|e| e.to_string())?;
    let value = sdepth_checked(&p, "(3,[2,2,2])", seen)?;
    ensure((3..=4).contains(&value), || format!("sdepth {value}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < LIMIT_C3, || format!("took {elapsed:?}"))?;
    Ok(format!("bound 9/2, floor 4, sdepth {value}, {elapsed:.2?}"))
}

fn criterion_4() -> Check {
    let mut checked = 0;
    for d in [2, 3] {
        for r in vectors(d, 1, MAX_SUM) {
            let g = complete_kpartite(d, &r).map_err(|e| e.to_string())?;
            let brute = count_support_d_plus_1(&g.clutter).map_err(|e| e.to_string())?;
            let prod: u64 = r.iter().map(|&x| x as u64).product();
            let formula: u64 = r
                .iter()
                .map(|&x| {
                    let x = x as u64;
                    x * x.saturating_sub(1) / 2 * (prod / x)
                })
                .sum();
            ensure(brute == formula, || {
                format!("d={d} r={r:?}: {brute} != {formula}")
            })?;
            let rep = bounds_report(&g.clutter, &g.partition, d).map_err(|e| e.to_string())?;
            ensure(
                rep.paper_numerator == formula && !rep.count_discrepancy,
                || format!("d={d} r={r:?}: report numerator {}", rep.paper_numerator),
            )?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} complete d-partite instances, d in {{2,3}}, sum <= {MAX_SUM}"
    ))
}

fn criterion_5(seen: &mut Vec<Seen>) -> Check {
    let g = complete_kpartite(2, &[2, 2, 2]).map_err(|e| e.to_string())?;
    let rep = bounds_report(&g.clutter, &g.partition, 2).map_err(|e| e.to_string())?;
    ensure(rep.bruteforce_count == 20, || {
        format!("count {}", rep.bruteforce_count)
    })?;
    ensure(rep.paper_numerator == 12, || {
        format!("formula {}", rep.paper_numerator)
    })?;
    ensure(rep.count_discrepancy, || "discrepancy not flagged".into())?;
    ensure(rep.paper_upper_floor == 3, || {
        format!("floor {}", rep.paper_upper_floor)
    })?;
    let p = build_poset(&g.clutter).map_err(|e| e.to_string())?;
    let value = sdepth_checked(&p, "(2,[2,2,2])", seen)?;
    ensure(value <= 3, || format!("sdepth {value}"))?;
    Ok(format!(
        "count 20 vs formula 12 flagged, sdepth {value} <= 3"
    ))
}

/// Every antichain of subsets of a 4-set, built by inclusion-or-exclusion
/// over all 16 subsets.
fn antichains_of_b4() -> Vec<Vec<u32>> {
    fn rec(next: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if next == 16 {
            out.push(cur.clone());
            return;
        }
        rec(next + 1, cur, out);
        if cur.iter().all(|&a| a & next != a && a & next != next) {
            cur.push(next);
            rec(next + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, &mut Vec::new(), &mut out);
    out
}

fn criterion_6(seen: &mut Vec<Seen>) -> Check {
    let start = Instant::now();
    let all: Vec<Vec<u32>> = antichains_of_b4()
        .into_iter()
        .filter(|a| !a.is_empty())
        .collect();
    ensure(all.len() == 167, || format!("{} antichains", all.len()))?;
    let mut instances: Vec<(usize, Vec<u32>)> = all.into_iter().map(|a| (4, a)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    instances.extend((0..RANDOM_SAMPLES).map(|_| (5, random_antichain(5, &mut rng))));
    for (n, gens) in &instances {
        let p = CharacteristicPoset::from_generators(*n, gens).map_err(|e| e.to_string())?;
        let what = format!("antichain {gens:?} on {n}");
        let fast = sdepth_checked(&p, &what, seen)?;
        let slow = sdepth_exhaustive_oracle(&p).map_err(|e| e.to_string())?;
        ensure(fast == slow, || {
            format!("{what}: search {fast}, oracle {slow}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LIMIT_ORACLE, || format!("took {elapsed:?}"))?;
    Ok(format!("167 antichains of 2^[4] + {RANDOM_SAMPLES} random on n=5 (seed {SEED}) agree, {elapsed:.2?}"))
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for d in [2, 3] {
        for r in vectors(d, 1, MAX_SUM) {
            let g = complete_kpartite(d, &r).map_err(|e| e.to_string())?;
            let found = decompose_dpartition(&g.clutter)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("d={d} r={r:?}: no decomposition"))?;
            ensure(verify_dpartition(&g.clutter, &found), || {
                format!("d={d} r={r:?}: unverified")
            })?;
            let blocks = DPartition {
                parts: g.partition.blocks.clone(),
            };
            ensure(found.canonical() == blocks.canonical(), || {
                format!("d={d} r={r:?}: got {:?}", found.parts)
            })?;
            checked += 1;
        }
    }
    let m = |l: &[usize]| subset::from_indices(l.iter().map(|v| v - 1));
    let triangle =
        Clutter::new(3, [m(&[1, 2]), m(&[2, 3]), m(&[1, 3])]).map_err(|e| e.to_string())?;
    ensure(decompose_dpartition(&triangle) == Ok(None), || {
        "triangle decomposed".into()
    })?;
    let c222 = complete_kpartite(2, &[2, 2, 2]).map_err(|e| e.to_string())?;
    ensure(decompose_dpartition(&c222.clutter) == Ok(None), || {
        "(2,[2,2,2]) decomposed".into()
    })?;
    Ok(format!(
        "{checked} instances recover their blocks; triangle and (2,[2,2,2]) absent"
    ))
}

fn criterion_8(seen: &[Seen]) -> Check {
    for s in seen {
        ensure(s.min_degree <= s.value && s.value <= s.n, || {
            format!(
                "{}: {} <= {} <= {} fails",
                s.what, s.min_degree, s.value, s.n
            )
        })?;
    }
    // K22, 12 bipartite, (3,[2,2,2]), (2,[2,2,2]), 367 antichains and the
    // 66 complete instances with d <= 3 from criterion 9.
    ensure(seen.len() == 448, || {
        format!("{} exact values observed", seen.len())
    })?;
    Ok(format!(
        "min degree <= sdepth <= n on all {} exact values",
        seen.len()
    ))
}

fn criterion_9(seen: &mut Vec<Seen>) -> Check {
    let mut checked = 0;
    for d in 1..=MAX_SUM {
        for r in vectors(d, 1, MAX_SUM) {
            let (_, p) = complete_poset(d, &r)?;
            let part = sdepth_at_least(&p, d)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("d={d} r={r:?}: no partition at depth d"))?;
            ensure(validate_partition(&p, &part, d), || {
                format!("d={d} r={r:?}: invalid")
            })?;
            if d <= 3 {
                let value = sdepth_checked(&p, &format!("({d},{r:?})"), seen)?;
                ensure(value >= d, || format!("d={d} r={r:?}: sdepth {value}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "sdepth >= d on {checked} complete d-partite instances, sum <= {MAX_SUM}"
    ))
}

fn criterion_10() -> Check {
    let mut inputs = vec![complete_kpartite(2, &[2, 2]).map_err(|e| e.to_string())?];
    for r in vectors(2, 2, 9) {
        inputs.push(complete_kpartite(2, &r).map_err(|e| e.to_string())?);
    }
    inputs.push(complete_kpartite(3, &[2, 2, 2]).map_err(|e| e.to_string())?);
    for g in &inputs {
        let json = clutter_to_json(&g.clutter);
        let one = cli(&["sdepth", "--threads", "1"], Some(&json));
        let four = cli(&["sdepth", "--threads", "4"], Some(&json));
        ensure(one.status.success() && four.status.success(), || {
            format!("{json}: failed")
        })?;
        ensure(one.stdout == four.stdout, || {
            format!("{json}: outputs differ")
        })?;
    }
    let sweep = ["verify-family", "--d", "2", "--k", "2", "--max-n", "9"];
    let one = cli(&[&sweep[..], &["--threads", "1"]].concat(), None);
    let four = cli(&[&sweep[..], &["--threads", "4"]].concat(), None);
    ensure(one.stdout == four.stdout, || "sweep CSV differs".into())?;
    Ok(format!(
        "{} result JSONs and the bipartite sweep identical at 1 and 4 threads",
        inputs.len()
    ))
}

fn run(results: &mut Vec<(u32, Check)>, id: u32, f: impl FnOnce() -> Check) {
    let outcome = catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
    results.push((id, outcome));
}

fn main() {
    let mut seen = Vec::new();
    let mut results = Vec::new();
    run(&mut results, 1, || criterion_1(&mut seen));
    run(&mut results, 2, || criterion_2(&mut seen));
    run(&mut results, 3, || criterion_3(&mut seen));
    run(&mut results, 4, criterion_4);
    run(&mut results, 5, || criterion_5(&mut seen));
    run(&mut results, 6, || criterion_6(&mut seen));
    run(&mut results, 7, criterion_7);
    run(&mut results, 9, || criterion_9(&mut seen));
    run(&mut results, 8, || criterion_8(&seen));
    run(&mut results, 10, criterion_10);
    results.sort_by_key(|(id, _)| *id);

    let mut failed = 0;
    for (id, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

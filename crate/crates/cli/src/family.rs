use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sdepth_core::bounds::fmt_rational;
use sdepth_core::clutter::random_antichain;
use sdepth_core::oracle::sdepth_exhaustive_oracle;
use sdepth_core::poset::{CharacteristicPoset, SDEPTH_CAP};
use sdepth_core::{
    bounds_report, build_poset, complete_kpartite, exact_sdepth, validate_partition,
};

use crate::args::{FamilyArgs, Global};
use crate::commands::{emit, Outcome};
use crate::Failure;

pub const COLUMNS: [&str; 10] = [
    "d",
    "k",
    "r",
    "edges",
    "lower",
    "paper_upper",
    "paper_upper_floor",
    "bruteforce_count",
    "exact_sdepth",
    "status",
];

/// Nondecreasing `k`-tuples with entries at least `min_part` and sum at most
/// `max_n`, in lexicographic order.
pub fn part_vectors(k: usize, min_part: usize, max_n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, lo: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let left = k - cur.len();
        let mut x = lo;
        while x * left <= budget {
            cur.push(x);
            rec(k, x, budget - x, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, min_part.max(1), max_n, &mut Vec::new(), &mut out);
    }
    out
}

struct Row {
    cells: Vec<String>,
    flagged: bool,
}

fn run_row(d: usize, r: &[usize]) -> Result<Row, Failure> {
    let g = complete_kpartite(d, r)?;
    let report = bounds_report(&g.clutter, &g.partition, d)?;
    let poset = build_poset(&g.clutter)?;
    let exact = exact_sdepth(&poset)?;
    if !validate_partition(&poset, &exact.certificate, exact.value) {
        return Err(Failure::internal(format!(
            "certificate for r={r:?} is invalid"
        )));
    }
    let flagged = report.exceeds_paper_floor(exact.value);
    let rs: Vec<String> = r.iter().map(|x| x.to_string()).collect();
    Ok(Row {
        cells: vec![
            d.to_string(),
            r.len().to_string(),
            rs.join(";"),
            report.edge_count.to_string(),
            report.lower.to_string(),
            fmt_rational(report.paper_upper),
            report.paper_upper_floor.to_string(),
            report.bruteforce_count.to_string(),
            exact.value.to_string(),
            if flagged { "FLAG" } else { "PASS" }.to_string(),
        ],
        flagged,
    })
}

fn render_csv(rows: &[Row]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::internal(e.to_string());
    w.write_record(COLUMNS).map_err(io)?;
    for row in rows {
        w.write_record(&row.cells).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::internal(e.to_string()))
}

fn render_table(rows: &[Row]) -> String {
    let mut widths: Vec<usize> = COLUMNS.iter().map(|c| c.len()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(&row.cells) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(&mut COLUMNS.iter().copied());
    for row in rows {
        s += &line(&mut row.cells.iter().map(String::as_str));
    }
    s
}

fn oracle_check(global: &Global, samples: usize, n: usize) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
    let mut done = 0;
    while done < samples {
        let gens = random_antichain(n, &mut rng);
        if gens.is_empty() {
            continue;
        }
        let poset = CharacteristicPoset::from_generators(n, &gens)?;
        let fast = exact_sdepth(&poset)?.value;
        let slow = sdepth_exhaustive_oracle(&poset)?;
        if fast != slow {
            return Err(Failure::internal(format!(
                "search gives {fast} but oracle gives {slow} on generators {gens:?}"
            )));
        }
        done += 1;
    }
    eprintln!(
        "oracle: {samples}/{samples} random antichains on {n} vertices agree (seed {})",
        global.seed
    );
    Ok(())
}

pub fn verify_family(global: &Global, a: &FamilyArgs) -> Outcome {
    if a.d == 0 {
        return Err(Failure::usage("--d must be positive"));
    }
    if a.k < a.d {
        return Err(Failure::usage(format!(
            "--k {} is smaller than --d {}",
            a.k, a.d
        )));
    }
    if a.max_n > SDEPTH_CAP {
        return Err(Failure::usage(format!(
            "--max-n {} exceeds the search cap {SDEPTH_CAP}",
            a.max_n
        )));
    }
    if a.min_part == 0 {
        return Err(Failure::usage("--min-part must be positive"));
    }
    if a.oracle_samples > 0 {
        oracle_check(global, a.oracle_samples, a.oracle_n)?;
    }

    let vectors = part_vectors(a.k, a.min_part, a.max_n);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(global.threads as usize)
        .build()
        .map_err(|e| Failure::internal(e.to_string()))?;
    let rows: Vec<Row> = pool.install(|| {
        vectors
            .par_iter()
            .map(|r| run_row(a.d, r))
            .collect::<Result<_, _>>()
    })?;

    let flagged = rows.iter().filter(|r| r.flagged).count();
    let text = if global.pretty {
        render_table(&rows)
    } else {
        render_csv(&rows)?
    };
    emit(global, &text)?;
    eprintln!("{} instances, {flagged} flagged", rows.len());
    Ok(if flagged > 0 { 4 } else { 0 })
}

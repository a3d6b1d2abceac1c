use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use sdepth_core::bounds::{fmt_rational, rational_json, Rational};
use sdepth_core::decomposition::tightest_integral_bound;
use sdepth_core::io::{clutter_from_json, CertificateJson, GeneratedJson, SdepthJson};
use sdepth_core::subset;
use sdepth_core::{
    bounds_report, build_poset, complete_kpartite, decompose_dpartition, exact_sdepth_with,
    validate_partition, BoundsReport, Clutter, SearchConfig, VertexPartition,
};

use crate::args::{BoundsArgs, GenArgs, Global, InputArgs};
use crate::Failure;

pub type Outcome = Result<u8, Failure>;

pub fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

pub fn emit(global: &Global, text: &str) -> Result<(), Failure> {
    let mut body = text.to_owned();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &global.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("plain data serializes")
    } else {
        serde_json::to_string(value).expect("plain data serializes")
    }
}

fn labels(mask: u32) -> String {
    let inner: Vec<String> = subset::to_labels(mask)
        .iter()
        .map(|v| v.to_string())
        .collect();
    format!("{{{}}}", inner.join(","))
}

pub fn gen(global: &Global, a: &GenArgs) -> Outcome {
    let g = complete_kpartite(a.family.d, &a.family.parts)?;
    emit(global, &to_json(&GeneratedJson::from(&g), global.pretty))?;
    Ok(0)
}

pub fn sdepth(global: &Global, a: &InputArgs) -> Outcome {
    let clutter = clutter_from_json(&read_input(a.input.as_deref())?)?;
    let poset = build_poset(&clutter)?;
    let config = SearchConfig {
        threads: global.threads as usize,
    };
    let result = exact_sdepth_with(&poset, config)?;
    let json = SdepthJson::from(&result);
    let text = serde_json::to_string(&json).expect("plain data serializes");

    // The emitted bytes must parse back to a valid partition.
    let back: SdepthJson =
        serde_json::from_str(&text).map_err(|e| Failure::internal(e.to_string()))?;
    let part = back
        .certificate
        .to_partition(clutter.n())
        .map_err(|e| Failure::internal(format!("certificate does not parse: {e}")))?;
    if back.value != result.value
        || !validate_partition(&poset, &part, back.certificate.k)
        || part.depth() != Some(back.value)
    {
        return Err(Failure::internal("certificate failed re-validation"));
    }

    if global.pretty {
        emit(global, &pretty_sdepth(&back))?;
    } else {
        emit(global, &text)?;
    }
    Ok(0)
}

fn pretty_sdepth(j: &SdepthJson) -> String {
    let mut s = String::new();
    let _ = write!(s, "sdepth {}", j.value);
    match j.refutation_level {
        Some(l) => {
            let _ = writeln!(s, " (no interval partition with depth {l})");
        }
        None => s.push('\n'),
    }
    let CertificateJson { k, intervals } = &j.certificate;
    let _ = writeln!(
        s,
        "certificate: {} intervals, all tops of size >= {k}",
        intervals.len()
    );
    for iv in intervals {
        let b: Vec<String> = iv.bottom.iter().map(|v| v.to_string()).collect();
        let t: Vec<String> = iv.top.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "  [{{{}}}, {{{}}}]", b.join(","), t.join(","));
    }
    s
}

fn bounds_input(a: &BoundsArgs) -> Result<(Clutter, VertexPartition, usize), Failure> {
    if let (Some(d), Some(parts)) = (a.d, &a.parts) {
        if a.input.is_some() {
            return Err(Failure::usage("give either an input file or --d/--parts"));
        }
        let g = complete_kpartite(d, parts)?;
        return Ok((g.clutter, g.partition, d));
    }
    let text = read_input(a.input.as_deref())?;
    let j: GeneratedJson = serde_json::from_str(&text).map_err(|e| {
        Failure::usage(format!("expected generator JSON with d and partition: {e}"))
    })?;
    let clutter = Clutter::from_labels(j.n, &j.edges)?;
    let partition = j.partition.to_partition(j.n)?;
    Ok((clutter, partition, j.d))
}

#[derive(Serialize)]
struct BoundsOutput {
    #[serde(flatten)]
    report: BoundsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_sdepth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exceeds_paper_floor: Option<bool>,
}

pub fn bounds(global: &Global, a: &BoundsArgs) -> Outcome {
    let (clutter, partition, d) = bounds_input(a)?;
    let report = bounds_report(&clutter, &partition, d)?;
    let exact = if a.exact {
        let poset = build_poset(&clutter)?;
        let config = SearchConfig {
            threads: global.threads as usize,
        };
        Some(exact_sdepth_with(&poset, config)?.value)
    } else {
        None
    };
    let out = BoundsOutput {
        exceeds_paper_floor: exact.map(|e| report.exceeds_paper_floor(e)),
        exact_sdepth: exact,
        report,
    };
    if global.pretty {
        emit(global, &pretty_bounds(&out))?;
    } else {
        emit(global, &to_json(&out, false))?;
    }
    Ok(0)
}

fn pretty_bounds(o: &BoundsOutput) -> String {
    let r = &o.report;
    let sizes: Vec<String> = r.r.iter().map(|x| x.to_string()).collect();
    let mut rows: Vec<(&str, String)> = vec![
        ("d", r.d.to_string()),
        ("parts", sizes.join(",")),
        ("n", r.n.to_string()),
        ("edges", r.edge_count.to_string()),
        ("lower", r.lower.to_string()),
        ("numerator", r.paper_numerator.to_string()),
        (
            "upper",
            format!(
                "{} (floor {})",
                fmt_rational(r.paper_upper),
                r.paper_upper_floor
            ),
        ),
        ("support d+1", r.bruteforce_count.to_string()),
        ("corrected", fmt_rational(r.corrected_upper)),
    ];
    if let Some(b) = r.bipartite_upper {
        rows.push(("bipartite", fmt_rational(b)));
    }
    if r.count_discrepancy {
        rows.push(("note", "support count differs from numerator".into()));
    }
    if let Some(e) = o.exact_sdepth {
        rows.push(("sdepth", e.to_string()));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

#[derive(Serialize)]
struct PartVerdict {
    part: Vec<usize>,
    minimal_cover: bool,
    meets_every_edge_once: bool,
}

#[derive(Serialize)]
struct DecomposeOutput {
    d: usize,
    parts: Option<Vec<Vec<usize>>>,
    verdicts: Vec<PartVerdict>,
    #[serde(with = "rational_json::option")]
    integral_upper: Option<Rational>,
}

pub fn decompose(global: &Global, a: &InputArgs) -> Outcome {
    let clutter = clutter_from_json(&read_input(a.input.as_deref())?)?;
    let d = clutter
        .uniform_degree()
        .ok_or_else(|| Failure::usage("clutter is not uniform"))?;
    let found = decompose_dpartition(&clutter)?;
    let verdicts: Vec<PartVerdict> = found
        .iter()
        .flat_map(|p| p.parts.iter())
        .map(|&x| PartVerdict {
            part: subset::to_labels(x),
            minimal_cover: clutter.is_minimal_cover(x),
            meets_every_edge_once: clutter.edges().iter().all(|&e| subset::size(e & x) == 1),
        })
        .collect();
    if verdicts
        .iter()
        .any(|v| !v.minimal_cover || !v.meets_every_edge_once)
    {
        return Err(Failure::internal("decomposition part failed verification"));
    }
    let integral_upper = if found.is_some() {
        tightest_integral_bound(&clutter)?.map(|(_, b)| b)
    } else {
        None
    };
    let out = DecomposeOutput {
        d,
        parts: found
            .as_ref()
            .map(|p| p.parts.iter().map(|&x| subset::to_labels(x)).collect()),
        verdicts,
        integral_upper,
    };
    if global.pretty {
        let mut s = String::new();
        match &found {
            None => s.push_str("no decomposition into unit minimal covers\n"),
            Some(p) => {
                for (i, &x) in p.parts.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "V{} = {}  minimal cover, meets every edge once",
                        i + 1,
                        labels(x)
                    );
                }
                if let Some(b) = out.integral_upper {
                    let _ = writeln!(s, "upper bound {}", fmt_rational(b));
                }
            }
        }
        emit(global, &s)?;
    } else {
        emit(global, &to_json(&out, false))?;
    }
    Ok(0)
}

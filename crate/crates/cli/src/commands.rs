use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use detachable::connectivity::is_3connected;
use detachable::detach::{find_detachable_pairs, find_graph_detachable_pairs, PairVerdict, SearchMode};
use detachable::families::Family;
use detachable::io::{encode_graph6, write_bases, write_gfp, write_graph, write_matroid, write_report, ReportFormat};
use detachable::recognizers::{classify_graph, classify_matroid};
use detachable::structures::{maximal_fans, quads, small_dependents, triads, triangles, DepKind, Fan};
use detachable::{Mask, Matroid, Provenance};
use detachable_harness::{build_corpus, verify_theorems, CorpusConfig, RandomGraphs, Suites, Sweep, Toggles};

use crate::args::{
    AnalyzeArgs, ClassifyArgs, ConvertArgs, GenArgs, MinorArgs, Mode, ObjectFormat, PairsArgs, ReportKind, TextFormat,
    TransformArgs, VerifyArgs,
};
use crate::input::{family_spec, generate, load, load_one, Item, Object};
use crate::{CliError, CliResult};

/// What a subcommand printed, and whether it found something that counts as a failure.
pub struct Output {
    pub text: String,
    pub findings: bool,
}

impl From<String> for Output {
    fn from(text: String) -> Output {
        Output { text, findings: false }
    }
}

fn unavailable(what: &str) -> CliError {
    CliError::Usage(format!("this object has no {what} form; try --format bases"))
}

pub fn render(obj: &Object, format: ObjectFormat, cap: usize) -> CliResult<String> {
    Ok(match (obj, format) {
        (Object::Graph(g), ObjectFormat::Auto | ObjectFormat::Graph) => write_graph(g),
        (Object::Graph(g), ObjectFormat::Graph6) => encode_graph6(g)? + "\n",
        (Object::Graph(g), ObjectFormat::Bases) => write_bases(&Matroid::from_graph_capped(g, cap)?),
        (Object::Graph(_), ObjectFormat::Gfp) => return Err(unavailable("GF(p)")),
        (Object::Matroid(m), ObjectFormat::Auto) => write_matroid(m),
        (Object::Matroid(m), ObjectFormat::Bases) => write_bases(m),
        (Object::Matroid(m), f) => match (m.provenance(), f) {
            (Provenance::LinearGfp(rep), ObjectFormat::Gfp) => write_gfp(rep),
            (Provenance::Graphic(g), ObjectFormat::Graph) => write_graph(g),
            (Provenance::Graphic(g), ObjectFormat::Graph6) => encode_graph6(g)? + "\n",
            (_, ObjectFormat::Gfp) => return Err(unavailable("GF(p)")),
            _ => return Err(unavailable("graph")),
        },
    })
}

pub fn gen(a: &GenArgs, cap: usize) -> CliResult<Output> {
    let spec = family_spec(&a.family, &a.params)?;
    let obj = generate(&spec, a.fixtures.as_deref())?;
    let size = match &obj {
        Object::Graph(g) => g.edge_count(),
        Object::Matroid(m) => m.size(),
    };
    if size > cap {
        return Err(detachable::Error::CapExceeded { size, cap }.into());
    }
    Ok(render(&obj, a.format, cap)?.into())
}

pub fn convert(a: &ConvertArgs, cap: usize) -> CliResult<Output> {
    let items = load(&a.source, cap)?;
    if a.to == ObjectFormat::Graph6 {
        let mut out = String::new();
        for it in &items {
            out += &render(&it.object, a.to, cap)?;
        }
        return Ok(out.into());
    }
    if items.len() != 1 {
        return Err(CliError::Usage(format!(
            "only graph6 holds several objects; found {}",
            items.len()
        )));
    }
    Ok(render(&items[0].object, a.to, cap)?.into())
}

pub fn dual(a: &TransformArgs, cap: usize) -> CliResult<Output> {
    let m = load_one(&a.source, cap)?.matroid(cap)?;
    Ok(render(&Object::Matroid(m.dual()), a.format, cap)?.into())
}

pub fn minor(a: &MinorArgs, cap: usize) -> CliResult<Output> {
    let m = load_one(&a.source, cap)?.matroid(cap)?;
    let set = |v: &[usize]| -> CliResult<Mask> {
        match v.iter().find(|&&e| e >= m.size()) {
            Some(e) => Err(CliError::Usage(format!("element {e} is not in a ground set of {}", m.size()))),
            None => Ok(v.iter().copied().collect()),
        }
    };
    let (d, c) = (set(&a.delete)?, set(&a.contract)?);
    if !(d & c).is_empty() {
        return Err(CliError::Usage(format!("{} is both deleted and contracted", d & c)));
    }
    Ok(render(&Object::Matroid(m.minor2(d, c)?), a.format, cap)?.into())
}

#[derive(Serialize)]
struct LambdaRow {
    size: usize,
    /// `counts[k]` subsets of this size have connectivity `k`.
    counts: Vec<usize>,
}

#[derive(Serialize)]
struct Analysis {
    input: String,
    elements: usize,
    rank: usize,
    three_connected: bool,
    triangles: Vec<Vec<usize>>,
    triads: Vec<Vec<usize>>,
    quads: Vec<Vec<usize>>,
    circuits: Vec<Vec<usize>>,
    cocircuits: Vec<Vec<usize>>,
    fans: Vec<Fan>,
    lambda_profile: Vec<LambdaRow>,
}

fn lists(v: Vec<Mask>) -> Vec<Vec<usize>> {
    v.into_iter().map(Mask::to_vec).collect()
}

fn analysis(it: &Item, kmax: usize, cap: usize) -> CliResult<Analysis> {
    let m = it.matroid(cap)?;
    let n = m.size();
    let mut rows: Vec<LambdaRow> = (1..=n / 2).map(|size| LambdaRow { size, counts: Vec::new() }).collect();
    for x in m.ground().subsets() {
        let k = x.len();
        if (1..=n / 2).contains(&k) {
            let row = &mut rows[k - 1].counts;
            let l = m.lambda(x);
            if row.len() <= l {
                row.resize(l + 1, 0);
            }
            row[l] += 1;
        }
    }
    let small = |kind| -> CliResult<Vec<Vec<usize>>> {
        Ok(small_dependents(&m, kind, kmax)?.iter().map(|s| s.mask.to_vec()).collect())
    };
    Ok(Analysis {
        input: it.label.clone(),
        elements: n,
        rank: m.total_rank(),
        three_connected: is_3connected(&m),
        triangles: lists(triangles(&m)),
        triads: lists(triads(&m)),
        quads: lists(quads(&m)),
        circuits: small(DepKind::Circuit)?,
        cocircuits: small(DepKind::Cocircuit)?,
        fans: maximal_fans(&m)?,
        lambda_profile: rows,
    })
}

fn sets(v: &[Vec<usize>]) -> String {
    v.iter()
        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn by_size(v: &[Vec<usize>]) -> String {
    let mut counts = std::collections::BTreeMap::new();
    for s in v {
        *counts.entry(s.len()).or_insert(0) += 1;
    }
    counts.iter().map(|(k, c)| format!("{k}:{c}")).collect::<Vec<_>>().join(" ")
}

fn analysis_text(a: &Analysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input {}", a.input);
    let _ = writeln!(s, "elements {} rank {} 3-connected {}", a.elements, a.rank, a.three_connected);
    for (name, v) in [("triangles", &a.triangles), ("triads", &a.triads), ("quads", &a.quads)] {
        let _ = writeln!(s, "{name} {} {}", v.len(), sets(v));
    }
    let _ = writeln!(s, "circuits by size {}", by_size(&a.circuits));
    let _ = writeln!(s, "cocircuits by size {}", by_size(&a.cocircuits));
    for f in &a.fans {
        let ord: Vec<String> = f.ordering.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "fan {}{}", ord.join(" "), if f.cyclic { " cyclic" } else { "" });
    }
    for r in &a.lambda_profile {
        let counts: Vec<String> = r.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(l, c)| format!("{l}:{c}")).collect();
        let _ = writeln!(s, "lambda |X|={} {}", r.size, counts.join(" "));
    }
    s.lines().map(|l| l.trim_end().to_string() + "\n").collect()
}

pub fn analyze(a: &AnalyzeArgs, cap: usize) -> CliResult<Output> {
    let mut out = String::new();
    for (i, it) in load(&a.source, cap)?.iter().enumerate() {
        let an = analysis(it, a.kmax, cap)?;
        match a.format {
            TextFormat::Json => out += &(serde_json::to_string(&an).expect("serializable") + "\n"),
            TextFormat::Text => {
                if i > 0 {
                    out.push('\n');
                }
                out += &analysis_text(&an);
            }
        }
    }
    Ok(out.into())
}

fn verdict_text(v: &PairVerdict) -> String {
    let how = match (v.delete_ok, v.contract_ok) {
        (true, true) => "delete contract",
        (true, false) => "delete",
        _ => "contract",
    };
    format!("{} {} {how}", v.e, v.f)
}

pub fn pairs(a: &PairsArgs, cap: usize) -> CliResult<Output> {
    let mode = match a.mode {
        Mode::First => SearchMode::First,
        Mode::All => SearchMode::All,
    };
    let items = load(&a.source, cap)?;
    let many = items.len() > 1;
    let mut out = String::new();
    for it in &items {
        let found = match &it.object {
            Object::Graph(g) if g.edge_count() <= cap => find_graph_detachable_pairs(g, mode)?,
            _ => find_detachable_pairs(&it.matroid(cap)?, mode)?,
        };
        match a.format {
            TextFormat::Json => {
                let row = json!({"input": it.label, "pairs": found});
                out += &(row.to_string() + "\n");
            }
            TextFormat::Text => {
                let prefix = if many { format!("{}: ", it.label) } else { String::new() };
                if found.is_empty() {
                    let _ = writeln!(out, "{prefix}none");
                }
                for v in &found {
                    let _ = writeln!(out, "{prefix}{}", verdict_text(v));
                }
            }
        }
    }
    Ok(out.into())
}

pub fn classify(a: &ClassifyArgs, cap: usize) -> CliResult<Output> {
    let items = load(&a.source, cap)?;
    let many = items.len() > 1;
    let mut out = String::new();
    for it in &items {
        let (graph_outcome, c) = match &it.object {
            Object::Graph(g) => {
                let gc = classify_graph(g)?;
                (Some(gc.outcome), gc.matroid)
            }
            Object::Matroid(m) => (None, classify_matroid(m)?),
        };
        match a.format {
            TextFormat::Json => {
                let mut row = json!({"input": it.label, "outcome": c.outcome, "witness": c.witness});
                if let Some(g) = graph_outcome {
                    row["graph_outcome"] = json!(g);
                }
                out += &(row.to_string() + "\n");
            }
            TextFormat::Text => {
                let prefix = if many { format!("{}: ", it.label) } else { String::new() };
                let _ = writeln!(out, "{prefix}outcome {}", c.outcome);
                if let Some(g) = graph_outcome {
                    let _ = writeln!(out, "{prefix}graph_outcome {g}");
                }
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "{prefix}witness {}", serde_json::to_string(w).expect("serializable"));
                }
            }
        }
    }
    Ok(out.into())
}

fn skip_suites(names: &[String]) -> CliResult<Suites> {
    let mut s = Suites::default();
    for name in names {
        let slot = match name.as_str() {
            "rank_axioms" => &mut s.rank_axioms,
            "lambda" => &mut s.lambda,
            "lambda_cases" => &mut s.lambda_cases,
            "bixby_tutte" => &mut s.bixby_tutte,
            "fans" => &mut s.fans,
            "vertical" => &mut s.vertical,
            "intersecting_fans" => &mut s.intersecting_fans,
            "accordions" => &mut s.accordions,
            "segments_quads" => &mut s.segments_quads,
            "graph_agreement" => &mut s.graph_agreement,
            _ => return Err(CliError::Usage(format!("unknown suite {name:?}"))),
        };
        *slot = false;
    }
    Ok(s)
}

pub fn verify(a: &VerifyArgs, cap: usize) -> CliResult<Output> {
    let families: Vec<Family> = if a.no_sweeps {
        Vec::new()
    } else if a.families.is_empty() {
        Family::ALL.to_vec()
    } else {
        a.families.iter().map(|f| f.parse()).collect::<Result<_, _>>()?
    };
    let suites = skip_suites(&a.skip)?;
    let cfg = CorpusConfig {
        sweeps: families
            .into_iter()
            .map(|family| Sweep { family, elements: a.min_elements..=a.max_elements })
            .collect(),
        duals: !a.no_duals,
        random: RandomGraphs { count: a.random, edges: a.min_edges..=a.max_edges, seed: a.seed },
        catalogs: a.catalog.clone(),
        fixtures: a.fixtures.clone(),
        planted: !a.no_planted,
        suites,
        cap,
    };
    let corpus = build_corpus(&cfg)?;
    let toggles = Toggles { suites, seed: a.seed, timing: a.timing, ..Toggles::default() };
    let report = verify_theorems(&corpus, &toggles)?;
    if let Some(path) = &a.report {
        let format = match a.report_format {
            ReportKind::Json => ReportFormat::Json,
            ReportKind::Csv => ReportFormat::Csv,
        };
        std::fs::write(path, write_report(&report.records, format))?;
    }
    let mut text = serde_json::to_string_pretty(&report.summary).expect("serializable") + "\n";
    for f in &report.findings {
        let _ = writeln!(text, "finding {} {}: {}", f.instance, f.check, f.detail);
    }
    Ok(Output { text, findings: !report.findings.is_empty() })
}

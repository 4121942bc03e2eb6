//! One line per acceptance criterion, `PASS` or `FAIL`, then a non-zero exit
//! if anything failed. Runs without the libtest harness so the lines are
//! never captured.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use detachable::connectivity::is_3connected;
use detachable::detach::{find_detachable_pairs, SearchMode};
use detachable::families::{gen_graph, gen_matroid, Family, FamilySpec};
use detachable::io::{decode_graph6, encode_graph6, parse_graph, parse_matroid, write_bases, write_gfp, write_graph};
use detachable::{Graph, LinearRep, Mask, Matroid, Provenance};
use detachable_harness::corpus::sweep_specs;
use detachable_harness::{build_corpus, Expect, Instance, Object, Source, load_fixtures, verify_theorems, CorpusConfig, RandomGraphs, Report, Sweep, Toggles};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

struct Runs {
    families: Report,
    family_time: Duration,
    random: Report,
    catalog: Report,
    segments: Report,
}

impl Runs {
    fn all(&self) -> [&Report; 4] {
        [&self.families, &self.random, &self.catalog, &self.segments]
    }

    fn findings(&self, checks: &[&str]) -> Vec<String> {
        self.all()
            .iter()
            .flat_map(|r| r.findings.iter())
            .filter(|f| checks.contains(&f.check.as_str()))
            .map(|f| format!("{} {}: {}", f.instance, f.check, f.detail))
            .collect()
    }

    fn checked(&self, check: &str) -> u64 {
        self.all().iter().map(|r| r.checked(check)).sum()
    }
}

fn quiet() -> CorpusConfig {
    CorpusConfig {
        sweeps: Vec::new(),
        random: RandomGraphs { count: 0, ..CorpusConfig::default().random },
        planted: false,
        ..CorpusConfig::default()
    }
}

fn run(cfg: &CorpusConfig) -> Report {
    let corpus = build_corpus(cfg).expect("corpus builds");
    verify_theorems(&corpus, &Toggles::default()).expect("corpus is non-empty")
}

fn runs() -> Runs {
    let start = Instant::now();
    let families = run(&CorpusConfig {
        sweeps: Family::ALL.iter().map(|&family| Sweep { family, elements: 13..=18 }).collect(),
        fixtures: Some(root().join("fixtures")),
        ..quiet()
    });
    let family_time = start.elapsed();
    let random = run(&CorpusConfig {
        random: CorpusConfig::default().random,
        planted: true,
        ..quiet()
    });
    let catalog = run(&CorpusConfig {
        catalogs: vec![root().join("catalogs/dense3c.g6")],
        ..quiet()
    });
    let segments = verify_theorems(&segment_matroids(), &Toggles::default()).expect("segment set is non-empty");
    Runs { families, family_time, random, catalog, segments }
}

/// Graphs and the families never have a line of four or more points, so the
/// segment checks need inputs of their own: a long line over GF(p) plus random
/// points off it, kept when 3-connected.
fn segment_matroids() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < 12 && tries < 10_000 {
        tries += 1;
        let (p, rank) = [(5i64, 3usize), (7, 3), (3, 4), (5, 4)][tries % 4];
        let n = rng.gen_range(13..=16usize);
        let line = rng.gen_range(4..=(p as usize + 1).min(n - rank - 1));
        let mut cols: Vec<Vec<i64>> = Vec::new();
        for i in 0..line {
            let mut c = vec![0; rank];
            if i == 0 {
                c[1] = 1;
            } else {
                c[0] = 1;
                c[1] = i as i64 - 1;
            }
            cols.push(c);
        }
        while cols.len() < n {
            cols.push((0..rank).map(|_| rng.gen_range(0..p)).collect());
        }
        let Ok(rep) = LinearRep::from_columns(p as u32, rank, &cols) else { continue };
        let Ok(m) = Matroid::from_gfp(&rep) else { continue };
        if !is_3connected(&m) {
            continue;
        }
        out.push(Instance {
            id: format!("segment:{}", out.len()),
            source: Source::Planted,
            spec: None,
            expect: Expect::Open,
            graph_expect: None,
            object: Object::Matroid(m),
        });
    }
    out
}

struct Verdict {
    ok: bool,
    line: String,
    details: Vec<String>,
}

fn verdict(ok: bool, line: impl Into<String>, details: Vec<String>) -> Verdict {
    Verdict { ok, line: line.into(), details }
}

fn criterion1(r: &Runs) -> Verdict {
    let checks = [
        "build",
        "three_connected",
        "error",
        "replay",
        "no_detachable_pair",
        "expected_outcome",
        "expected_graph_outcome",
    ];
    let bad = r.findings(&checks);
    let members = r.families.checked("no_detachable_pair");
    let fixtures = r.families.records.iter().filter(|x| x.source == "fixture").count();
    let fast = r.family_time < Duration::from_secs(600);
    verdict(
        bad.is_empty() && fast && members > 0,
        format!(
            "family sweep: {members} members ({fixtures} from fixtures), {} violations, {:.1?} wall clock",
            bad.len(),
            r.family_time
        ),
        bad,
    )
}

fn criterion2(r: &Runs) -> Verdict {
    let random: Vec<_> = r.random.records.iter().filter(|x| x.source == "random").collect();
    let non_family = random.iter().filter(|x| x.outcome == "detachable_pair").count();
    let bad = r.random.findings.iter().filter(|f| f.instance.starts_with("random:")).map(|f| format!("{} {}: {}", f.instance, f.check, f.detail)).collect::<Vec<_>>();
    let planted = r.random.findings_for("detachable_pair_exists");
    let mut details = bad;
    if planted > 0 {
        details.push(format!("{planted} planted chorded wheels were not detachable_pair"));
    }
    verdict(
        random.len() >= 300 && details.is_empty(),
        format!(
            "converse sampling: {} random graphs, {non_family} detachable_pair, {} family members, {} exclusivity checks",
            random.len(),
            random.len() - non_family,
            r.random.checked("exclusivity")
        ),
        details,
    )
}

fn criterion3(r: &Runs) -> Verdict {
    let bad = r.findings(&["triangle_triad_or_spike"]);
    let n = r.checked("triangle_triad_or_spike");
    verdict(bad.is_empty() && n > 0, format!("triangle, triad or spike: {n} matroids without pairs checked"), bad)
}

/// Normalization, unit increase and submodularity over every pair of sets,
/// read straight off the table.
fn rank_axioms_exhaustive(m: &Matroid) -> bool {
    let n = m.size();
    let full = 1u32 << n;
    let r = |x: u32| m.rank(Mask(x));
    if r(0) != 0 {
        return false;
    }
    for x in 0..full {
        for e in 0..n {
            if x >> e & 1 == 0 {
                let d = r(x | 1 << e) as i64 - r(x) as i64;
                if !(0..=1).contains(&d) {
                    return false;
                }
            }
        }
    }
    if n <= 10 {
        (0..full).all(|x| (0..full).all(|y| r(x) + r(y) >= r(x | y) + r(x & y)))
    } else {
        (0..full).all(|x| {
            (0..n).all(|e| {
                (e + 1..n).all(|f| {
                    let (a, b) = (x | 1 << e, x | 1 << f);
                    x >> e & 1 == 1 || x >> f & 1 == 1 || r(a) + r(b) >= r(a | b) + r(x)
                })
            })
        })
    }
}

fn small_matroids() -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::new();
    for n in 1..=12usize {
        for _ in 0..4 {
            let p = [2u32, 3, 5, 7][rng.gen_range(0..4)];
            let rows = rng.gen_range(1..=n.min(6));
            let cols: Vec<Vec<i64>> = (0..n).map(|_| (0..rows).map(|_| rng.gen_range(0..p as i64)).collect()).collect();
            out.push(Matroid::from_gfp(&LinearRep::from_columns(p, rows, &cols).unwrap()).unwrap());
            let v = rng.gen_range(2..=7);
            let edges = (0..n).map(|_| (rng.gen_range(0..v), rng.gen_range(0..v))).collect();
            out.push(Matroid::from_graph(&Graph::new(v, edges).unwrap()).unwrap());
        }
    }
    out.extend(out.iter().map(Matroid::dual).collect::<Vec<_>>());
    out
}

fn criterion4(r: &Runs) -> Verdict {
    let suites = [
        "rank_axioms",
        "lambda_symmetry",
        "lambda_add_element",
        "lambda_contract",
        "lambda_delete",
        "bixby",
        "tutte_triangle",
        "tutte_triad",
        "fan_rank",
        "fan_ends",
        "vertical_separation",
        "intersecting_fans",
        "accordion_lemmas",
        "segment_deletable",
        "quad_deletable",
    ];
    let mut bad = r.findings(&suites);
    let small = small_matroids();
    let broken = small.iter().filter(|m| !rank_axioms_exhaustive(m)).count();
    if broken > 0 {
        bad.push(format!("{broken} small matroids break the rank axioms"));
    }
    let counts: BTreeMap<&str, u64> = suites.iter().map(|&s| (s, r.checked(s))).collect();
    let triples = counts["lambda_add_element"];
    if triples < 10_000 {
        bad.push(format!("only {triples} lambda case triples"));
    }
    let empty: Vec<&str> = counts.iter().filter(|(_, &c)| c == 0).map(|(&s, _)| s).collect();
    if !empty.is_empty() {
        bad.push(format!("suites that never ran: {empty:?}"));
    }
    let summary: Vec<String> = counts.iter().map(|(s, c)| format!("{s}={c}")).collect();
    verdict(
        bad.is_empty(),
        format!("invariant suites: {} small matroids exhaustive, {}", small.len(), summary.join(" ")),
        bad,
    )
}

fn criterion5(r: &Runs) -> Verdict {
    let bad = r.findings(&["graph_pair_agreement", "graph_outcome", "graph_matroid_outcome"]);
    let n = r.checked("graph_pair_agreement");
    let graphs = r.checked("graph_outcome");
    verdict(bad.is_empty() && n > 0, format!("graph/matroid agreement: {graphs} graphs, {n} pairs compared"), bad)
}

fn criterion6() -> Verdict {
    let mut bad = Vec::new();
    let mut lines = 0;
    for name in ["atlas.g6", "dense3c.g6"] {
        let text = std::fs::read_to_string(root().join("catalogs").join(name)).unwrap();
        for (i, line) in text.lines().enumerate() {
            lines += 1;
            let ok = decode_graph6(line)
                .and_then(|g| encode_graph6(&g).map(|s| (g, s)))
                .map(|(g, s)| s == line && decode_graph6(&s).map(|h| h.adjacency() == g.adjacency()).unwrap_or(false));
            if ok != Ok(true) {
                bad.push(format!("{name}:{}: {line} does not round-trip", i + 1));
            }
        }
    }
    let k4 = decode_graph6("C~").unwrap();
    if k4.vertex_count() != 4 || k4.edge_count() != 6 || !k4.is_simple() {
        bad.push("C~ is not K4".into());
    }
    let same = |a: &Matroid, text: &str| parse_matroid(text).map(|b| b.table() == a.table()).unwrap_or(false);
    let fixtures = load_fixtures(&root().join("fixtures")).unwrap();
    for (spec, m) in &fixtures {
        let Provenance::LinearGfp(rep) = m.provenance() else {
            bad.push(format!("fixture {spec} has no representation"));
            continue;
        };
        if !same(m, &write_gfp(rep)) || !same(m, &write_bases(m)) {
            bad.push(format!("fixture {spec} does not round-trip"));
        }
    }
    // The fixtures are not graphic, so the graph format runs over the graph sweep.
    let mut graphs = 0;
    for family in Family::ALL.into_iter().filter(|f| f.is_graph_family()) {
        for spec in sweep_specs(&Sweep { family, elements: 13..=18 }).unwrap() {
            let Ok(g) = gen_graph(&spec) else { continue };
            graphs += 1;
            let text = write_graph(&g);
            let m = Matroid::from_graph(&g).unwrap();
            let back = parse_graph(&text).map(|h| h.edges() == g.edges()).unwrap_or(false);
            if !back || !same(&m, &text) || !same(&m, &write_bases(&m)) {
                bad.push(format!("{spec} does not round-trip"));
            }
        }
    }
    verdict(
        bad.is_empty() && lines >= 1000 && !fixtures.is_empty(),
        format!("codecs: {lines} graph6 lines, {} fixtures, {graphs} graphs", fixtures.len()),
        bad,
    )
}

fn criterion7() -> Verdict {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let specs: [FamilySpec; 3] = ["wheel/n=9", "whirl/r=9", "k3m/m=6"].map(|s| s.parse().unwrap());
    let mut worst_conn = Duration::ZERO;
    let mut worst_pairs = Duration::ZERO;
    let mut bad = Vec::new();
    for spec in &specs {
        let m = gen_matroid(spec).unwrap();
        assert_eq!(m.size(), 18);
        pool.install(|| {
            let t = Instant::now();
            let ok = is_3connected(&m);
            worst_conn = worst_conn.max(t.elapsed());
            let t = Instant::now();
            let pairs = find_detachable_pairs(&m, SearchMode::All).unwrap();
            worst_pairs = worst_pairs.max(t.elapsed());
            if !ok || !pairs.is_empty() {
                bad.push(format!("{spec}: 3-connected {ok}, {} pairs", pairs.len()));
            }
        });
    }
    // Every pair minor of U_{4,18} is 3-connected, so no check exits early.
    let cols: Vec<Vec<i64>> = (0..18i64).map(|t| (0..4).map(|i| t.pow(i) % 19).collect()).collect();
    let u418 = Matroid::from_gfp(&LinearRep::from_columns(19, 4, &cols).unwrap()).unwrap();
    pool.install(|| {
        let t = Instant::now();
        let ok = is_3connected(&u418);
        worst_conn = worst_conn.max(t.elapsed());
        let t = Instant::now();
        let pairs = find_detachable_pairs(&u418, SearchMode::All).unwrap();
        worst_pairs = worst_pairs.max(t.elapsed());
        if !ok || pairs.len() != 153 || pairs.iter().any(|p| !(p.delete_ok && p.contract_ok)) {
            bad.push(format!("U_4,18: 3-connected {ok}, {} pairs", pairs.len()));
        }
    });
    if worst_conn >= Duration::from_millis(50) {
        bad.push(format!("is_3connected took {worst_conn:?}"));
    }
    if worst_pairs >= Duration::from_secs(10) {
        bad.push(format!("pair search took {worst_pairs:?}"));
    }
    verdict(
        bad.is_empty(),
        format!("kernel budget on 18 elements, one thread, worst of wheel, whirl, K_3,6 and U_4,18: is_3connected {worst_conn:.1?}, all pairs {worst_pairs:.1?}"),
        bad,
    )
}

fn main() {
    // libtest flags such as --nocapture or a filter are accepted and ignored.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let r = runs();
    let results = [
        criterion1(&r),
        criterion2(&r),
        criterion3(&r),
        criterion4(&r),
        criterion5(&r),
        criterion6(),
        criterion7(),
    ];
    let mut failed = 0;
    for (i, v) in results.iter().enumerate() {
        println!("criterion {} {}: {}", i + 1, if v.ok { "PASS" } else { "FAIL" }, v.line);
        for d in v.details.iter().take(60) {
            println!("    {d}");
        }
        failed += usize::from(!v.ok);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
}

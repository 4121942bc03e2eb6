//! Instances to verify: family sweeps and their duals, fixtures, random
//! 3-connected graphs, ingested graph6 catalogs and a few planted
//! non-members.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use detachable::families::{gen_graph, gen_matroid, Family, FamilySpec};
use detachable::io::{decode_graph6, digest, encode_graph6};
use detachable::matroid::DEFAULT_CAP;
use detachable::recognizers::{GraphOutcome, Outcome, PetalKind, MIN_CLASSIFY};
use detachable::{Error, Graph, Matroid, Result};

use crate::fixtures::load_fixtures;
use crate::sampler::sample_sweep;
use crate::verify::Suites;

/// All members of `family` whose ground set size lies in `elements`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub family: Family,
    pub elements: RangeInclusive<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomGraphs {
    pub count: usize,
    pub edges: RangeInclusive<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub sweeps: Vec<Sweep>,
    pub duals: bool,
    pub random: RandomGraphs,
    pub catalogs: Vec<PathBuf>,
    pub fixtures: Option<PathBuf>,
    /// Wheels with one extra chord, which must come out as detachable pairs.
    pub planted: bool,
    pub suites: Suites,
    pub cap: usize,
}

impl Default for CorpusConfig {
    fn default() -> CorpusConfig {
        CorpusConfig {
            sweeps: Family::ALL
                .iter()
                .map(|&family| Sweep {
                    family,
                    elements: 13..=18,
                })
                .collect(),
            duals: true,
            random: RandomGraphs {
                count: 300,
                edges: 13..=16,
                seed: 0,
            },
            catalogs: Vec::new(),
            fixtures: None,
            planted: true,
            suites: Suites::default(),
            cap: DEFAULT_CAP,
        }
    }
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<()> {
        let within = |r: &RangeInclusive<usize>| {
            MIN_CLASSIFY <= *r.start() && r.start() <= r.end() && *r.end() <= self.cap
        };
        for s in &self.sweeps {
            if !within(&s.elements) {
                return Err(Error::Parameter(format!(
                    "{}: size range {:?} is not within [{MIN_CLASSIFY}, {}]",
                    s.family, s.elements, self.cap
                )));
            }
        }
        if self.random.count > 0 && !within(&self.random.edges) {
            return Err(Error::Parameter(format!(
                "random edge range {:?} is not within [{MIN_CLASSIFY}, {}]",
                self.random.edges, self.cap
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Family,
    Fixture,
    Random,
    Catalog,
    Planted,
}

impl Source {
    pub fn tag(self) -> &'static str {
        match self {
            Source::Family => "family",
            Source::Fixture => "fixture",
            Source::Random => "random",
            Source::Catalog => "catalog",
            Source::Planted => "planted",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    /// A family member: no detachable pair, and this outcome.
    Member(Outcome),
    DetachablePair,
    /// Whatever the classification says, as long as it is consistent.
    Open,
}

#[derive(Clone, Debug)]
pub enum Object {
    Graph(Graph),
    Matroid(Matroid),
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub source: Source,
    pub spec: Option<FamilySpec>,
    pub expect: Expect,
    pub graph_expect: Option<GraphOutcome>,
    pub object: Object,
}

impl Instance {
    pub fn matroid(&self) -> Result<Matroid> {
        match &self.object {
            Object::Graph(g) => Matroid::from_graph(g),
            Object::Matroid(m) => Ok(m.clone()),
        }
    }

    pub fn graph(&self) -> Option<&Graph> {
        match &self.object {
            Object::Graph(g) => Some(g),
            Object::Matroid(_) => None,
        }
    }

    pub fn size(&self) -> usize {
        match &self.object {
            Object::Graph(g) => g.edge_count(),
            Object::Matroid(m) => m.size(),
        }
    }

    /// The family spec, or a digest of the input for anything else.
    pub fn label(&self) -> String {
        match (&self.spec, &self.object) {
            (Some(s), _) => s.to_string(),
            (None, Object::Graph(g)) => digest(&encode_graph6(g).unwrap_or_default()),
            (None, Object::Matroid(m)) => digest(&detachable::io::write_matroid(m)),
        }
    }
}

/// What a family member should classify as, in the matroid and as a graph.
pub fn expected(spec: &FamilySpec) -> Result<(Expect, Option<GraphOutcome>)> {
    use Outcome as O;
    let (o, g) = match spec.family {
        Family::Wheel => (O::Wheel, Some(GraphOutcome::Wheel)),
        Family::MutantWheel => (O::Accordion, Some(GraphOutcome::MutantWheel)),
        // With no subdivisions on one side the graph is a wheel, and wheels take precedence.
        Family::TwistedWheel if spec.get_int("j")? == Some(0) || spec.get_int("k")? == Some(0) => {
            (O::Wheel, Some(GraphOutcome::Wheel))
        }
        Family::TwistedWheel => (O::EvenFanSpikeTipCotip, Some(GraphOutcome::TwistedWheel)),
        Family::WarpedWheel => (O::EvenFanSpike, Some(GraphOutcome::WarpedWheel)),
        Family::MultiWheel => (O::EvenFanPaddle, Some(GraphOutcome::MultiWheel)),
        Family::StretchedWheel => (O::EvenFanPaddleDual, Some(GraphOutcome::StretchedWheel)),
        Family::K3m => (O::TriadPaddle, Some(GraphOutcome::K3m)),
        Family::K3mPrime => (
            O::QuasiTriadPaddle(PetalKind::CoAugmentedFan),
            Some(GraphOutcome::K3mPrime),
        ),
        Family::K3mDoubleprime => (
            O::QuasiTriadPaddle(PetalKind::AugmentedFan),
            Some(GraphOutcome::K3mDoubleprime),
        ),
        Family::Whirl => (O::Whirl, None),
        Family::FreeSpike if spec.get_flag("tipped")? => return Ok((Expect::DetachablePair, None)),
        Family::FreeSpike => (O::EvenFanSpike, None),
        Family::HingedTriadPaddle => (O::HingedTriadPaddle, None),
        Family::EvenFanSpike if spec.get_flag("tip_cotip")? => (O::EvenFanSpikeTipCotip, None),
        Family::EvenFanSpike => (O::EvenFanSpike, None),
        Family::EvenFanPaddle => (O::EvenFanPaddle, None),
        Family::QuasiTriadPaddle => (O::QuasiTriadPaddle(spec.petal_kind()?), None),
        Family::TriPaddleCopaddle => (O::TriPaddleCopaddle, None),
    };
    Ok(if spec.dualized()? {
        (Expect::Member(o.dual()), None)
    } else {
        (Expect::Member(o), g)
    })
}

/// Non-increasing lists of positive integers summing to `total` with at
/// least `min_len` parts, each part at most `max_part`.
fn partitions(total: usize, min_len: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            go(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= min_len);
    out
}

fn list(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// Candidate parameter tuples for a family, generous enough to cover
/// every member with at most `max` elements.
fn candidates(family: Family, max: usize) -> Vec<FamilySpec> {
    let base = || FamilySpec::new(family);
    let upto = |k: usize| 0..=k as i64;
    match family {
        Family::Wheel | Family::MutantWheel => upto(max / 2).map(|n| base().int("n", n)).collect(),
        Family::Whirl => upto(max / 2).map(|r| base().int("r", r)).collect(),
        Family::FreeSpike => upto(max / 2)
            .flat_map(|r| [base().int("r", r), base().int("r", r).flag("tipped", true)])
            .collect(),
        Family::TwistedWheel | Family::WarpedWheel => upto(max / 2)
            .flat_map(|j| upto(max / 2).map(move |k| base().int("j", j).int("k", k)))
            .collect(),
        Family::StretchedWheel => upto(max / 2)
            .flat_map(|n| upto(max / 2).map(move |k| base().int("n", n).int("k", k)))
            .collect(),
        Family::MultiWheel => (0..=max)
            .flat_map(|t| partitions(t, 3, max))
            .flat_map(|p| {
                // Parts shifted down by one so bare parallel edges appear too.
                let shifted: Vec<usize> = p.iter().map(|x| x - 1).collect();
                [p, shifted]
            })
            .map(|p| base().list("s", &list(&p)))
            .collect(),
        Family::K3m
        | Family::K3mPrime
        | Family::K3mDoubleprime
        | Family::HingedTriadPaddle
        | Family::EvenFanPaddle => upto(max / 3).map(|m| base().int("m", m)).collect(),
        Family::EvenFanSpike => (0..=max / 2)
            .flat_map(|t| partitions(t, 3, max))
            .flat_map(|p| {
                let legs: Vec<usize> = p.iter().map(|x| 2 * x).collect();
                let spec = base().list("legs", &list(&legs));
                // Two-element legs without a tip are the free spikes, swept separately.
                let tipless = legs.iter().any(|&l| l > 2).then(|| spec.clone());
                [tipless, Some(spec.flag("tip_cotip", true))]
            })
            .flatten()
            .collect(),
        Family::QuasiTriadPaddle => ["quad", "near_quad"]
            .into_iter()
            .flat_map(|k| upto(max / 3).map(move |m| base().text("kind", k).int("m", m)))
            .collect(),
        Family::TriPaddleCopaddle => upto(max / 3)
            .flat_map(|s| upto(max / 3).map(move |t| base().int("s", s).int("t", t)))
            .collect(),
    }
}

/// Ground set size of a spec without building the matroid, when cheap.
fn size_hint(spec: &FamilySpec) -> Result<Option<usize>> {
    let int = |k: &str| spec.get_int(k).map(|v| v.unwrap_or(0).max(0) as usize);
    Ok(Some(match spec.family {
        f if f.is_graph_family() => match gen_graph(spec) {
            Ok(g) => g.edge_count(),
            Err(Error::Parameter(_)) => return Ok(None),
            Err(e) => return Err(e),
        },
        Family::Whirl => 2 * int("r")?,
        Family::FreeSpike => 2 * int("r")? + usize::from(spec.get_flag("tipped")?),
        Family::HingedTriadPaddle | Family::EvenFanPaddle => 3 * int("m")? + 1,
        Family::EvenFanSpike => {
            let legs = spec.get_list("legs")?.unwrap_or_default();
            legs.iter().sum::<usize>() + 2 * usize::from(spec.get_flag("tip_cotip")?)
        }
        Family::QuasiTriadPaddle => 3 * int("m")? + 4,
        Family::TriPaddleCopaddle => 3 * (int("s")? + int("t")?),
        _ => return Ok(None),
    }))
}

/// The specs a sweep covers, in a stable order.
pub fn sweep_specs(sweep: &Sweep) -> Result<Vec<FamilySpec>> {
    let mut out = Vec::new();
    for spec in candidates(sweep.family, *sweep.elements.end()) {
        if let Some(n) = size_hint(&spec)? {
            if sweep.elements.contains(&n) && !out.contains(&spec) {
                out.push(spec);
            }
        }
    }
    Ok(out)
}

/// Builds a spec's instance; `Ok(None)` when its parameters are invalid or
/// need a fixture that is absent.
fn build_member(
    spec: &FamilySpec,
    fixtures: &[(FamilySpec, Matroid)],
) -> Result<Option<(Source, Object)>> {
    if spec.family.is_graph_family() && !spec.dualized()? {
        return match gen_graph(spec) {
            Ok(g) => Ok(Some((Source::Family, Object::Graph(g)))),
            Err(Error::Parameter(_)) => Ok(None),
            Err(e) => Err(e),
        };
    }
    match gen_matroid(spec) {
        Ok(m) => Ok(Some((Source::Family, Object::Matroid(m)))),
        Err(Error::Parameter(_)) => Ok(None),
        Err(Error::UnsupportedParameters(_)) => {
            let mut plain = spec.clone();
            plain.params.remove("dual");
            let found = fixtures.iter().find(|(s, _)| *s == plain).map(|(_, m)| m);
            Ok(found.map(|m| {
                let m = if spec.dualized().unwrap_or(false) {
                    m.dual()
                } else {
                    m.clone()
                };
                (Source::Fixture, Object::Matroid(m))
            }))
        }
        Err(e) => Err(e),
    }
}

/// Wheel `n` with a chord between two rim vertices two apart.
pub fn wheel_with_chord(n: usize) -> Result<Graph> {
    let mut g = gen_graph(&FamilySpec::new(Family::Wheel).int("n", n as i64))?;
    let hub = (0..g.vertex_count())
        .max_by_key(|&v| g.degree(v))
        .expect("vertices");
    let rim: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != hub).collect();
    let (u, v) = rim
        .iter()
        .flat_map(|&u| rim.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| u < v && g.find_edge(u, v).is_none())
        .ok_or_else(|| Error::Parameter(format!("wheel {n} has no rim chord to add")))?;
    g.add_edge(u, v, Some("chord"));
    Ok(g)
}

/// Simple 3-connected graphs from a graph6 file with at least the classification minimum of
/// edges. Blank lines and a `>>graph6<<` header are accepted.
pub fn ingest_catalog(path: &Path) -> Result<Vec<(usize, Graph)>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = decode_graph6(line)
            .map_err(|e| Error::Io(format!("{}:{}: {e}", path.display(), i + 1)))?;
        if g.edge_count() >= MIN_CLASSIFY && g.is_simple_3connected() {
            out.push((i + 1, g));
        }
    }
    Ok(out)
}

pub fn build_corpus(cfg: &CorpusConfig) -> Result<Vec<Instance>> {
    cfg.validate()?;
    let fixtures = match &cfg.fixtures {
        Some(dir) => load_fixtures(dir)?,
        None => Vec::new(),
    };
    let mut out = Vec::new();
    let member = |spec: FamilySpec, out: &mut Vec<Instance>| -> Result<()> {
        if let Some((source, object)) = build_member(&spec, &fixtures)? {
            let (expect, graph_expect) = expected(&spec)?;
            out.push(Instance {
                id: format!("{}:{spec}", source.tag()),
                source,
                spec: Some(spec),
                expect,
                graph_expect,
                object,
            });
        }
        Ok(())
    };
    for sweep in &cfg.sweeps {
        for spec in sweep_specs(sweep)? {
            if cfg.duals {
                member(spec.clone().flag("dual", true), &mut out)?;
            }
            member(spec, &mut out)?;
        }
    }
    // Fixtures the sweeps did not reach.
    for (spec, _) in &fixtures {
        let n = size_hint(spec)?.unwrap_or(0);
        let swept = cfg
            .sweeps
            .iter()
            .any(|s| s.family == spec.family && s.elements.contains(&n));
        if !swept && n >= MIN_CLASSIFY {
            if cfg.duals {
                member(spec.clone().flag("dual", true), &mut out)?;
            }
            member(spec.clone(), &mut out)?;
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    if cfg.planted {
        for n in 7..=9 {
            out.push(Instance {
                id: format!("planted:wheel/n={n}+chord"),
                source: Source::Planted,
                spec: None,
                expect: Expect::DetachablePair,
                graph_expect: Some(GraphOutcome::DetachablePair),
                object: Object::Graph(wheel_with_chord(n)?),
            });
        }
    }
    let r = &cfg.random;
    if r.count > 0 {
        for s in sample_sweep(r.seed, r.count, *r.edges.start(), *r.edges.end())? {
            out.push(Instance {
                id: format!(
                    "random:{}:{}v{}e",
                    s.index,
                    s.vertices,
                    s.graph.edge_count()
                ),
                source: Source::Random,
                spec: None,
                expect: Expect::Open,
                graph_expect: None,
                object: Object::Graph(s.graph),
            });
        }
    }
    for path in &cfg.catalogs {
        let name = path
            .file_name()
            .and_then(|s| s.to_str())
            .unwrap_or("catalog");
        for (line, g) in ingest_catalog(path)? {
            out.push(Instance {
                id: format!("catalog:{name}:{line}"),
                source: Source::Catalog,
                spec: None,
                expect: Expect::Open,
                graph_expect: None,
                object: Object::Graph(g),
            });
        }
    }
    Ok(out)
}

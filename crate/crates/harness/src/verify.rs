//! Runs the classification and the invariant suites over a corpus. Every
//! failed assertion becomes a [`Finding`]; nothing here aborts a run.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use detachable::connectivity::{
    is_3connected, is_3connected_minor, reduced_minor_is_3connected, three_separations_at,
    SeparationMode,
};
use detachable::detach::{find_detachable_pairs, graph_pair_status, pair_status, SearchMode};
use detachable::io::{ReportRecord, VERSION};
use detachable::recognizers::predicates::accordion_lemmas_hold;
use detachable::recognizers::{
    all_structure_outcomes, classify_graph, classify_matroid, recognize_spike, Certificate, Outcome,
};
use detachable::structures::{
    is_mk4_separator, maximal_fans_in, quads, triads, triangles, FanCatalog, FanStart,
};
use detachable::{Error, Graph, Mask, Matroid, Reduction, Result};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{Expect, Instance};
use crate::sampler::instance_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Suites {
    pub rank_axioms: bool,
    pub lambda: bool,
    pub lambda_cases: bool,
    pub bixby_tutte: bool,
    pub fans: bool,
    pub vertical: bool,
    pub intersecting_fans: bool,
    pub accordions: bool,
    pub segments_quads: bool,
    pub graph_agreement: bool,
}

impl Default for Suites {
    fn default() -> Suites {
        Suites::all(true)
    }
}

impl Suites {
    pub fn all(on: bool) -> Suites {
        Suites {
            rank_axioms: on,
            lambda: on,
            lambda_cases: on,
            bixby_tutte: on,
            fans: on,
            vertical: on,
            intersecting_fans: on,
            accordions: on,
            segments_quads: on,
            graph_agreement: on,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Toggles {
    pub suites: Suites,
    pub seed: u64,
    /// Fill in `timing_ms`; off keeps reports byte-identical across runs.
    pub timing: bool,
    /// (M, X, e) triples for the λ case tables, spread over the corpus.
    pub lambda_triples: usize,
    pub exhaustive_masks_upto: usize,
    pub sampled_masks: usize,
    /// Element-wise suites (Bixby, Tutte, vertical separations) run up to this size.
    pub element_checks_upto: usize,
    pub pairs_exhaustive_upto: usize,
    pub sampled_pairs: usize,
}

impl Default for Toggles {
    fn default() -> Toggles {
        Toggles {
            suites: Suites::default(),
            seed: 0,
            timing: false,
            lambda_triples: 10_000,
            exhaustive_masks_upto: 16,
            sampled_masks: 100_000,
            element_checks_upto: 14,
            pairs_exhaustive_upto: 15,
            sampled_pairs: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub instance: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub outcomes: BTreeMap<String, usize>,
    /// Assertions evaluated, per check.
    pub checks: BTreeMap<String, u64>,
    pub findings: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub records: Vec<ReportRecord>,
    pub findings: Vec<Finding>,
    pub summary: Summary,
}

impl Report {
    pub fn findings_for(&self, check: &str) -> usize {
        self.findings.iter().filter(|f| f.check == check).count()
    }

    pub fn checked(&self, check: &str) -> u64 {
        self.summary.checks.get(check).copied().unwrap_or(0)
    }
}

/// Findings and assertion counts for one instance.
struct Log {
    id: String,
    findings: Vec<Finding>,
    checks: BTreeMap<String, u64>,
}

impl Log {
    fn new(id: &str) -> Log {
        Log {
            id: id.to_string(),
            findings: Vec::new(),
            checks: BTreeMap::new(),
        }
    }

    /// Records one evaluation of `check`; `ok == false` is a finding.
    fn assert(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checks.entry(check.to_string()).or_default() += 1;
        if !ok {
            self.findings.push(Finding {
                instance: self.id.clone(),
                check: check.to_string(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, check: &str, e: &Error) {
        self.assert(check, false, || e.to_string());
    }
}

/// The alternative of the classification theorem an outcome belongs to.
/// Variants inside one alternative (tip and cotip or not, M or M*, the
/// petal kinds) do not exclude each other.
pub fn theorem_item(o: Outcome) -> u8 {
    use Outcome::*;
    match o {
        DetachablePair => 1,
        Wheel | Whirl => 2,
        Accordion => 3,
        EvenFanSpike | EvenFanSpikeTipCotip => 4,
        EvenFanPaddle | EvenFanPaddleDual => 5,
        TriadPaddle | TriadPaddleDual | HingedTriadPaddle | HingedTriadPaddleDual => 6,
        TriPaddleCopaddle => 7,
        QuasiTriadPaddle(_) | QuasiTriadPaddleDual(_) => 8,
        Unclassified => 0,
    }
}

pub fn verify_theorems(corpus: &[Instance], toggles: &Toggles) -> Result<Report> {
    if corpus.is_empty() {
        return Err(Error::Precondition("the corpus is empty".into()));
    }
    let triples = toggles.lambda_triples.div_ceil(corpus.len());
    let per: Vec<(ReportRecord, Log)> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, inst)| check_instance(inst, i as u64, toggles, triples))
        .collect();
    let mut summary = Summary {
        instances: corpus.len(),
        ..Summary::default()
    };
    let mut records = Vec::with_capacity(per.len());
    let mut findings = Vec::new();
    for (rec, log) in per {
        *summary.outcomes.entry(rec.outcome.clone()).or_default() += 1;
        for (k, v) in log.checks {
            *summary.checks.entry(k).or_default() += v;
        }
        findings.extend(log.findings);
        records.push(rec);
    }
    summary.findings = findings.len();
    Ok(Report {
        records,
        findings,
        summary,
    })
}

fn check_instance(inst: &Instance, index: u64, t: &Toggles, triples: usize) -> (ReportRecord, Log) {
    let mut log = Log::new(&inst.id);
    let start = Instant::now();
    let mut record = ReportRecord {
        id: inst.id.clone(),
        source: inst.source.tag().to_string(),
        spec: inst.label(),
        elements: inst.size(),
        outcome: "error".into(),
        witness: None,
        timing_ms: 0,
        version: VERSION.to_string(),
    };
    let m = match inst.matroid() {
        Ok(m) => m,
        Err(e) => {
            log.error("build", &e);
            return (record, log);
        }
    };
    log.assert("three_connected", is_3connected(&m), || {
        "instance is not 3-connected".into()
    });
    if log.findings.is_empty() {
        let mut rng = instance_rng(t.seed, index);
        if let Err(e) = classify_and_check(inst, &m, t, triples, &mut rng, &mut log, &mut record) {
            log.error("error", &e);
        }
    }
    if t.timing {
        record.timing_ms = start.elapsed().as_millis() as u64;
    }
    (record, log)
}

fn classify_and_check<R: Rng>(
    inst: &Instance,
    m: &Matroid,
    t: &Toggles,
    triples: usize,
    rng: &mut R,
    log: &mut Log,
    record: &mut ReportRecord,
) -> Result<()> {
    let c = classify_matroid(m)?;
    record.outcome = c.outcome.tag();
    record.witness = c
        .witness
        .as_ref()
        .map(|w| serde_json::to_value(w).expect("certificates serialize"));
    log.assert("replay", c.replay(m), || {
        format!("witness for {} does not replay", c.outcome)
    });

    let structures = all_structure_outcomes(m)?;
    let tags: Vec<String> = structures.iter().map(|s| s.outcome.tag()).collect();
    let mut items: Vec<u8> = structures.iter().map(|s| theorem_item(s.outcome)).collect();
    items.sort_unstable();
    items.dedup();
    let exclusive = match c.outcome {
        Outcome::DetachablePair => structures.is_empty(),
        Outcome::Unclassified => false,
        o => items == [theorem_item(o)] && structures[0].outcome == o,
    };
    log.assert("exclusivity", exclusive, || {
        format!("classified {} with structures {tags:?}", c.outcome)
    });

    match inst.expect {
        Expect::Member(o) => {
            let pairs = find_detachable_pairs(m, SearchMode::All)?;
            log.assert("no_detachable_pair", pairs.is_empty(), || {
                format!("{} detachable pairs, first {:?}", pairs.len(), pairs[0])
            });
            log.assert(
                "expected_outcome",
                theorem_item(c.outcome) == theorem_item(o),
                || format!("expected {o}, got {}", c.outcome),
            );
        }
        Expect::DetachablePair => {
            log.assert(
                "detachable_pair_exists",
                c.outcome == Outcome::DetachablePair,
                || format!("got {}", c.outcome),
            );
        }
        Expect::Open => {}
    }

    if c.outcome != Outcome::DetachablePair {
        let ok = !triangles(m).is_empty() || !triads(m).is_empty() || recognize_spike(m).is_some();
        log.assert("triangle_triad_or_spike", ok, || {
            "no triangle, no triad, not a spike".into()
        });
    }

    if let Some(g) = inst.graph() {
        let gc = classify_graph(g)?;
        log.assert(
            "graph_matroid_outcome",
            gc.matroid.outcome == c.outcome,
            || {
                format!(
                    "graph side says {}, matroid side {}",
                    gc.matroid.outcome, c.outcome
                )
            },
        );
        let family = c.outcome != Outcome::DetachablePair;
        log.assert(
            "graph_outcome",
            (gc.outcome == detachable::recognizers::GraphOutcome::DetachablePair) != family,
            || {
                format!(
                    "graph outcome {} for matroid outcome {}",
                    gc.outcome, c.outcome
                )
            },
        );
        if let Some(want) = inst.graph_expect {
            log.assert("expected_graph_outcome", gc.outcome == want, || {
                format!("expected {want}, got {}", gc.outcome)
            });
        }
        if t.suites.graph_agreement {
            graph_agreement(g, m, t, rng, log)?;
        }
    }

    let s = t.suites;
    if s.rank_axioms {
        rank_axioms(m, log);
    }
    if s.lambda {
        lambda_symmetry(m, t, rng, log);
    }
    if s.lambda_cases {
        lambda_cases(m, triples, rng, log)?;
    }
    let small = m.size() <= t.element_checks_upto;
    if s.bixby_tutte && small {
        bixby(m, log)?;
        tutte_triangle(m, log);
    }
    if s.vertical && small {
        vertical(m, log)?;
    }
    if s.fans || s.intersecting_fans {
        let cat = FanCatalog::build(m)?;
        if s.fans {
            fan_ranks(m, &cat, log);
        }
        if s.intersecting_fans {
            intersecting_fans(m, &cat, log)?;
        }
    }
    if s.segments_quads {
        segments_quads(m, log);
    }
    if s.accordions {
        if let Some(Certificate::Accordion(cert)) = &c.witness {
            log.assert("accordion_lemmas", accordion_lemmas_hold(m, cert), || {
                format!("{cert:?}")
            });
        }
    }
    Ok(())
}

fn graph_agreement<R: Rng>(
    g: &Graph,
    m: &Matroid,
    t: &Toggles,
    rng: &mut R,
    log: &mut Log,
) -> Result<()> {
    let n = g.edge_count();
    let pairs: Vec<(usize, usize)> = if n <= t.pairs_exhaustive_upto {
        (0..n)
            .flat_map(|e| (e + 1..n).map(move |f| (e, f)))
            .collect()
    } else {
        (0..t.sampled_pairs)
            .map(|_| {
                let e = rng.gen_range(0..n);
                let f = (e + rng.gen_range(1..n)) % n;
                (e.min(f), e.max(f))
            })
            .collect()
    };
    for (e, f) in pairs {
        let (a, b) = (graph_pair_status(g, e, f)?, pair_status(m, e, f)?);
        log.assert("graph_pair_agreement", a == b, || {
            format!("pair {{{e},{f}}}: graph {a:?}, matroid {b:?}")
        });
    }
    Ok(())
}

/// Normalization, unit increase and local submodularity at every set,
/// which together are equivalent to the rank axioms.
fn rank_axioms(m: &Matroid, log: &mut Log) {
    let n = m.size();
    let mut bad = None;
    'outer: for x in m.ground().subsets() {
        let rx = m.rank(x);
        for e in (m.ground() - x).iter() {
            let rxe = m.rank(x.with(e));
            if rxe < rx || rxe > rx + 1 {
                bad = Some(format!("unit increase fails at {x:?} + {e}"));
                break 'outer;
            }
            for f in (m.ground() - x).iter().filter(|&f| f > e) {
                if rxe + m.rank(x.with(f)) < m.rank(x.with(e).with(f)) + rx {
                    bad = Some(format!("submodularity fails at {x:?}, {e}, {f}"));
                    break 'outer;
                }
            }
        }
    }
    let ok = m.rank(Mask::EMPTY) == 0 && bad.is_none() && m.rank(m.ground()) <= n;
    log.assert("rank_axioms", ok, || {
        bad.unwrap_or_else(|| "r(∅) ≠ 0".into())
    });
}

fn lambda_symmetry<R: Rng>(m: &Matroid, t: &Toggles, rng: &mut R, log: &mut Log) {
    let d = m.dual();
    let e = m.ground();
    let check = |x: Mask| {
        m.lambda(x) == m.lambda(e - x)
            && m.lambda(x) == d.lambda(x)
            && m.lambda(x) == m.rank(x) + d.rank(x) - x.len()
    };
    let failed: Option<Mask> = if m.size() <= t.exhaustive_masks_upto {
        e.subsets().find(|&x| !check(x))
    } else {
        (0..t.sampled_masks)
            .map(|_| Mask(rng.gen::<u32>() & e.0))
            .find(|&x| !check(x))
    };
    log.assert("lambda_symmetry", failed.is_none(), || {
        format!("fails at {failed:?}")
    });
}

/// Index of `x ⊆ E − e` after `e` is removed and the higher elements shift down.
fn squeeze(x: Mask, e: usize) -> Mask {
    let low = (1u32 << e) - 1;
    Mask((x.0 & low) | ((x.0 >> 1) & !low))
}

fn lambda_cases<R: Rng>(m: &Matroid, count: usize, rng: &mut R, log: &mut Log) -> Result<()> {
    let n = m.size();
    let mut minors: HashMap<usize, (Matroid, Matroid)> = HashMap::new();
    for _ in 0..count {
        let e = rng.gen_range(0..n);
        let x = Mask(rng.gen::<u32>() & m.ground().without(e).0);
        let in_cl = m.closure(x, false).contains(e);
        let in_cocl = m.closure(x, true).contains(e);
        let lam = m.lambda(x) as i64;
        let want = lam + 1 - i64::from(in_cl) - i64::from(in_cocl);
        log.assert(
            "lambda_add_element",
            m.lambda(x.with(e)) as i64 == want,
            || format!("X={x:?}, e={e}"),
        );

        if !minors.contains_key(&e) {
            let s = Mask::single(e);
            minors.insert(e, (m.contract(s)?, m.delete(s)?));
        }
        let (con, del) = &minors[&e];
        let y = squeeze(x, e);
        let drop_c = in_cl && !m.is_loop(e);
        let drop_d = in_cocl && !m.is_coloop(e);
        log.assert(
            "lambda_contract",
            con.lambda(y) as i64 == lam - i64::from(drop_c),
            || format!("X={x:?}, e={e}"),
        );
        log.assert(
            "lambda_delete",
            del.lambda(y) as i64 == lam - i64::from(drop_d),
            || format!("X={x:?}, e={e}"),
        );
    }
    Ok(())
}

fn reduced_3connected(m: &Matroid, e: usize, contract: bool) -> Result<bool> {
    let s = Mask::single(e);
    let (minor, mode) = if contract {
        (m.contract(s)?, Reduction::Si)
    } else {
        (m.delete(s)?, Reduction::Co)
    };
    match minor.simplify(mode) {
        Ok(r) => Ok(is_3connected(&r)),
        Err(Error::Degenerate(_)) => Ok(true),
        Err(err) => Err(err),
    }
}

fn bixby(m: &Matroid, log: &mut Log) -> Result<()> {
    for e in 0..m.size() {
        let ok = reduced_3connected(m, e, true)? || reduced_3connected(m, e, false)?;
        log.assert("bixby", ok, || {
            format!("neither si(M/{e}) nor co(M\\{e}) is 3-connected")
        });
    }
    Ok(())
}

/// For each triangle, and dually each triad, with two non-removable
/// elements `e, f`: some triad (triangle) meets it in `e` and one other.
fn tutte_triangle(m: &Matroid, log: &mut Log) {
    for (sets, others, dual) in [
        (triangles(m), triads(m), false),
        (triads(m), triangles(m), true),
    ] {
        let removable = |e: usize| {
            let s = Mask::single(e);
            if dual {
                is_3connected_minor(m, Mask::EMPTY, s)
            } else {
                is_3connected_minor(m, s, Mask::EMPTY)
            }
        };
        for t in &sets {
            let els = t.to_vec();
            for &e in &els {
                for &f in els.iter().filter(|&&f| f != e) {
                    if removable(e) || removable(f) {
                        continue;
                    }
                    let ok = others.iter().any(|o| o.contains(e) && (*o & *t).len() == 2);
                    let check = if dual {
                        "tutte_triad"
                    } else {
                        "tutte_triangle"
                    };
                    log.assert(check, ok, || format!("{t:?} at {e}, {f}"));
                }
            }
        }
    }
}

fn vertical(m: &Matroid, log: &mut Log) -> Result<()> {
    for e in 0..m.size() {
        for (mode, contract) in [
            (SeparationMode::Vertical, true),
            (SeparationMode::Cyclic, false),
        ] {
            let has = !three_separations_at(m, e, mode)?.is_empty();
            let reduced = reduced_3connected(m, e, contract)?;
            let lib = reduced_minor_is_3connected(m, e, mode)?;
            log.assert(
                "vertical_separation",
                has != reduced && lib == reduced,
                || {
                    format!(
                        "{mode:?} at {e}: separation {has}, reduced minor 3-connected {reduced}"
                    )
                },
            );
        }
    }
    Ok(())
}

fn fan_ranks(m: &Matroid, cat: &FanCatalog, log: &mut Log) {
    let n = m.size();
    for (set, ords) in &cat.orderings {
        let k = set.len();
        if n < k + 2 {
            continue;
        }
        for (ord, start) in ords {
            let (r, rs) = match start {
                FanStart::Triangle => (k / 2 + 1, k.div_ceil(2) + 1),
                FanStart::Triad => (k.div_ceil(2) + 1, k / 2 + 1),
            };
            let ok = m.rank(*set) == r && m.corank(*set) == rs && m.lambda(*set) == 2;
            log.assert("fan_rank", ok, || {
                format!(
                    "{ord:?} from a {start:?}: r={}, r*={}, λ={}",
                    m.rank(*set),
                    m.corank(*set),
                    m.lambda(*set)
                )
            });
        }
    }
    if cat.cyclic.is_some() {
        return;
    }
    for f in maximal_fans_in(cat).iter().filter(|f| f.len() >= 4) {
        let Some(start) = f.start else { continue };
        let last_kind = if (f.len() - 3) % 2 == 0 {
            start
        } else {
            start.flip()
        };
        for (end, kind) in [(f.ordering[0], start), (f.ordering[f.len() - 1], last_kind)] {
            let ok = match kind {
                FanStart::Triad => triangles(m).iter().all(|t| !t.contains(end)),
                FanStart::Triangle => triads(m).iter().all(|t| !t.contains(end)),
            };
            log.assert("fan_ends", ok, || format!("end {end} of {:?}", f.ordering));
        }
    }
}

fn intersecting_fans(m: &Matroid, cat: &FanCatalog, log: &mut Log) -> Result<()> {
    if m.size() < 8 || cat.cyclic.is_some() {
        return Ok(());
    }
    let fans = maximal_fans_in(cat);
    let d = m.dual();
    for f1 in fans.iter().filter(|f| f.len() >= 4) {
        let ends = Mask::from_elems([f1.ordering[0], f1.ordering[f1.len() - 1]]);
        for f2 in fans
            .iter()
            .filter(|f| f.len() >= 3 && f.mask() != f1.mask())
        {
            let meet = f1.mask() & f2.mask();
            if meet.is_empty() {
                continue;
            }
            let u = f1.mask() | f2.mask();
            let separator = u.len() == 6 && (is_mk4_separator(m, u)? || is_mk4_separator(&d, u)?);
            log.assert(
                "intersecting_fans",
                meet.is_subset(ends) || separator,
                || format!("{:?} meets {:?} in {meet:?}", f1.ordering, f2.ordering),
            );
        }
    }
    Ok(())
}

fn segments_quads(m: &Matroid, log: &mut Log) {
    let deletable = |e: usize| is_3connected_minor(m, Mask::single(e), Mask::EMPTY);
    let mut lines: Vec<Mask> = Vec::new();
    for a in 0..m.size() {
        for b in a + 1..m.size() {
            let l = m.closure(Mask::from_elems([a, b]), false);
            if l.len() >= 4 && m.rank(l) == 2 && !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    for l in lines {
        for e in l.iter() {
            log.assert("segment_deletable", deletable(e), || {
                format!("{e} on the line {l:?}")
            });
        }
    }
    let tds = triads(m);
    for q in quads(m) {
        for e in q.iter().filter(|&e| tds.iter().all(|t| !t.contains(e))) {
            log.assert("quad_deletable", deletable(e), || {
                format!("{e} in the quad {q:?}")
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squeeze_drops_the_element() {
        assert_eq!(
            squeeze(Mask::from_elems([0, 2, 5]), 3),
            Mask::from_elems([0, 2, 4])
        );
        assert_eq!(
            squeeze(Mask::from_elems([1, 4]), 0),
            Mask::from_elems([0, 3])
        );
    }

    #[test]
    fn empty_corpus_is_refused() {
        assert!(matches!(
            verify_theorems(&[], &Toggles::default()),
            Err(Error::Precondition(_))
        ));
    }
}

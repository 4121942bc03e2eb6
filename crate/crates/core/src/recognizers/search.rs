//! Certificate searches. Candidate petals come from the fan catalog and the
//! small circuits and cocircuits; partitions are found by exact cover,
//! always extending at the lowest uncovered element.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mask::{k_subsets, Mask};
use crate::matroid::Matroid;
use crate::structures::{triads, triangles, FanCatalog, FanStart};

use super::predicates as p;
use super::{AccordionCert, Certificate, Classification, EndKind, Outcome, PetalKind, WheelKind};

/// Node limit for every partition search.
pub const SEARCH_CAP: u64 = 1_000_000;

/// A matroid with its fans, triangles and triads precomputed.
#[derive(Clone, Debug)]
pub struct Context {
    pub m: Matroid,
    pub cat: FanCatalog,
    pub triangles: Vec<Mask>,
    pub triads: Vec<Mask>,
}

impl Context {
    pub fn new(m: &Matroid) -> Result<Context> {
        Ok(Context {
            m: m.clone(),
            cat: FanCatalog::build(m)?,
            triangles: triangles(m),
            triads: triads(m),
        })
    }

    /// Even fan sets of length ≥ 4.
    fn even_fans(&self) -> impl Iterator<Item = Mask> + '_ {
        self.cat
            .orderings
            .keys()
            .copied()
            .filter(|k| k.len() >= 4 && k.len() % 2 == 0)
    }
}

/// Exact cover of `universe` by `cands`, extending at the lowest uncovered
/// element. `compat` prunes pairs of chosen candidates; `accept` sees each
/// complete cover and stops the search by returning true.
fn exact_cover(
    universe: Mask,
    cands: &[Mask],
    compat: &mut dyn FnMut(usize, usize) -> bool,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool> {
    let mut by_elem: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, c) in cands.iter().enumerate() {
        if c.is_subset(universe) && !c.is_empty() {
            by_elem
                .entry(c.first().expect("nonempty"))
                .or_default()
                .push(i);
        }
    }
    let mut nodes = 0u64;
    let mut chosen = Vec::new();
    cover_dfs(
        universe,
        cands,
        &by_elem,
        compat,
        accept,
        &mut chosen,
        &mut nodes,
    )
}

fn cover_dfs(
    left: Mask,
    cands: &[Mask],
    by_elem: &HashMap<usize, Vec<usize>>,
    compat: &mut dyn FnMut(usize, usize) -> bool,
    accept: &mut dyn FnMut(&[usize]) -> bool,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > SEARCH_CAP {
        return Err(Error::SearchCap(SEARCH_CAP));
    }
    let Some(e) = left.first() else {
        return Ok(accept(chosen));
    };
    let Some(list) = by_elem.get(&e) else {
        return Ok(false);
    };
    for &i in list {
        if !cands[i].is_subset(left) || !chosen.iter().all(|&j| compat(j, i)) {
            continue;
        }
        chosen.push(i);
        if cover_dfs(
            left - cands[i],
            cands,
            by_elem,
            compat,
            accept,
            chosen,
            nodes,
        )? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Candidates may contain elements below their own lowest member's turn, so
/// each is indexed by its lowest element; this wrapper keeps compat results.
fn cached(f: impl Fn(usize, usize) -> bool) -> impl FnMut(usize, usize) -> bool {
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    move |i, j| *memo.entry((i.min(j), i.max(j))).or_insert_with(|| f(i, j))
}

fn wheel_graph(r: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..r {
        edges.push((0, 1 + i));
        edges.push((1 + i, 1 + (i + 1) % r));
    }
    Graph::new(r + 1, edges).expect("valid")
}

/// Whether `order` (spoke, rim, spoke, ...) identifies `m` with M(W_r) or
/// with the whirl on the same labels.
pub fn matches_wheel(m: &Matroid, order: &[usize]) -> Option<WheelKind> {
    let n = order.len();
    if n < 6 || n % 2 == 1 || n != m.size() || p::mask_of(order) != m.ground() {
        return None;
    }
    let wheel = Matroid::from_graph(&wheel_graph(n / 2)).ok()?;
    if m.restriction_matches(&wheel, order) {
        return Some(WheelKind::Wheel);
    }
    let rim = Mask::from_elems((0..n / 2).map(|i| 2 * i + 1));
    let whirl = wheel.relax(rim).ok()?;
    m.restriction_matches(&whirl, order)
        .then_some(WheelKind::Whirl)
}

fn wheel_in(ctx: &Context) -> Option<Certificate> {
    let order = ctx.cat.cyclic.as_ref()?;
    let kind = matches_wheel(&ctx.m, order)?;
    Some(Certificate::WheelWhirl {
        order: order.clone(),
        whirl: kind == WheelKind::Whirl,
    })
}

pub fn recognize_wheel_whirl(m: &Matroid) -> Option<WheelKind> {
    match wheel_in(&Context::new(m).ok()?)? {
        Certificate::WheelWhirl { whirl, .. } => Some(if whirl {
            WheelKind::Whirl
        } else {
            WheelKind::Wheel
        }),
        _ => None,
    }
}

/// Pairs whose union with any other pair is a quad.
pub fn recognize_spike(m: &Matroid) -> Option<Vec<[usize; 2]>> {
    let n = m.size();
    if n < 8 || n % 2 == 1 {
        return None;
    }
    let quads: Vec<Mask> = k_subsets(m.ground(), 4).filter(|&q| m.is_quad(q)).collect();
    let mut pairs = Vec::new();
    let mut left = m.ground();
    while let Some(e) = left.first() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for q in quads.iter().filter(|q| q.contains(e)) {
            for f in q.without(e).iter() {
                *counts.entry(f).or_default() += 1;
            }
        }
        let best = counts
            .iter()
            .filter(|(f, _)| left.contains(**f))
            .max_by_key(|(_, c)| **c)?;
        if *best.1 < 2 {
            return None;
        }
        pairs.push([e, *best.0]);
        left = left.without(e).without(*best.0);
    }
    let ok = (0..pairs.len()).all(|i| {
        (i + 1..pairs.len()).all(|j| {
            m.is_quad(Mask::from_elems([
                pairs[i][0],
                pairs[i][1],
                pairs[j][0],
                pairs[j][1],
            ]))
        })
    });
    ok.then_some(pairs)
}

fn ordered_petals(ctx: &Context, petals: &[Mask]) -> Vec<Vec<usize>> {
    petals
        .iter()
        .map(|&q| {
            p::triad_first_orderings(&ctx.m, q)
                .into_iter()
                .next()
                .unwrap_or_else(|| q.to_vec())
        })
        .collect()
}

fn efs_nondegenerate(ctx: &Context) -> Result<Option<Certificate>> {
    let m = &ctx.m;
    let mut cands: Vec<Mask> = k_subsets(m.ground(), 2).collect();
    cands.extend(ctx.even_fans().filter(|&f| m.lambda(f) <= 2));
    let ords: Vec<Vec<Vec<usize>>> = cands
        .iter()
        .map(|&c| p::triad_first_orderings(m, c))
        .collect();
    let mut compat = cached(|i, j| {
        let (a, b) = (cands[i], cands[j]);
        m.local_conn(a, b, false) == 1
            && m.lambda(a | b) <= 2
            && ords[i].iter().any(|x| {
                ords[j].iter().any(|y| {
                    m.is_circuit(Mask::from_elems([x[0], x[1], y[0], y[1]]))
                        && m.is_cocircuit(Mask::from_elems([
                            x[x.len() - 2],
                            x[x.len() - 1],
                            y[y.len() - 2],
                            y[y.len() - 1],
                        ]))
                })
            })
    });
    let mut found = None;
    exact_cover(m.ground(), &cands, &mut compat, &mut |chosen| {
        let petals: Vec<Mask> = chosen.iter().map(|&i| cands[i]).collect();
        if petals.len() >= 3 && p::is_even_fan_spike(m, &petals) {
            found = Some(petals);
            true
        } else {
            false
        }
    })?;
    Ok(found.map(|ps| Certificate::EvenFanSpike {
        petals: ordered_petals(ctx, &ps),
    }))
}

fn efs_degenerate(ctx: &Context) -> Option<Certificate> {
    let m = &ctx.m;
    let low = m.ground().first()?;
    ctx.even_fans()
        .filter(|f| f.contains(low))
        .find(|&f| p::is_degenerate_even_fan_spike(m, f, m.ground() - f))
        .map(|f| {
            let ords = ordered_petals(ctx, &[f, m.ground() - f]);
            Certificate::DegenerateEvenFanSpike {
                p: ords[0].clone(),
                q: ords[1].clone(),
            }
        })
}

fn efs_tip_cotip(ctx: &Context) -> Result<Option<Certificate>> {
    let m = &ctx.m;
    // Wheels and whirls split into two such fans at any spoke; they keep their own outcome.
    if wheel_in(ctx).is_some() {
        return Ok(None);
    }
    // End pair -> petals it can carry.
    let mut by_ends: BTreeMap<(usize, usize), Vec<Mask>> = BTreeMap::new();
    for f in ctx.even_fans() {
        let mut ends: Vec<(usize, usize)> = ctx
            .cat
            .orderings_of(f)
            .iter()
            .map(|(o, _)| (o[0].min(o[o.len() - 1]), o[0].max(o[o.len() - 1])))
            .collect();
        ends.sort();
        ends.dedup();
        for (x, y) in ends {
            by_ends
                .entry((x, y))
                .or_default()
                .push(f.without(x).without(y));
        }
    }
    for (&(x, y), cands) in &by_ends {
        if cands.len() < 2 {
            continue;
        }
        let within = m.ground().without(x).without(y);
        let mut compat = |_: usize, _: usize| true;
        let mut found = None;
        exact_cover(within, cands, &mut compat, &mut |chosen| {
            let petals: Vec<Mask> = chosen.iter().map(|&i| cands[i]).collect();
            if !p::is_efs_tip_cotip(m, &petals, x, y) {
                return false;
            }
            let in_all =
                |e: usize, dual: bool| petals.iter().all(|&q| m.closure(q, dual).contains(e));
            let tip = if in_all(x, false) && in_all(y, true) {
                Some((x, y))
            } else if in_all(y, false) && in_all(x, true) {
                Some((y, x))
            } else {
                None
            };
            match tip {
                Some(t) => {
                    found = Some((petals, t));
                    true
                }
                None => false,
            }
        })?;
        if let Some((petals, (tip, cotip))) = found {
            let xy = Mask::from_elems([tip, cotip]);
            let petals = petals
                .iter()
                .map(|&q| {
                    // Order each petal along its fan from tip to cotip.
                    ctx.cat
                        .orderings_of(q | xy)
                        .iter()
                        .find(|(o, _)| o[0] == tip && o[o.len() - 1] == cotip)
                        .map(|(o, _)| o[1..o.len() - 1].to_vec())
                        .unwrap_or_else(|| q.to_vec())
                })
                .collect();
            return Ok(Some(Certificate::EvenFanSpikeTipCotip {
                petals,
                tip,
                cotip,
            }));
        }
    }
    Ok(None)
}

pub fn recognize_even_fan_spike(m: &Matroid) -> Result<Option<Certificate>> {
    let ctx = Context::new(m)?;
    efs_any(&ctx)
}

/// Only the tip and cotip form.
pub fn recognize_tip_cotip_spike(m: &Matroid) -> Result<Option<Certificate>> {
    efs_tip_cotip(&Context::new(m)?)
}

fn efs_any(ctx: &Context) -> Result<Option<Certificate>> {
    if let Some(c) = efs_nondegenerate(ctx)? {
        return Ok(Some(c));
    }
    if let Some(c) = efs_degenerate(ctx) {
        return Ok(Some(c));
    }
    efs_tip_cotip(ctx)
}

/// Heads (first two elements) of the orderings of `f` that end at `x`.
fn heads_at(ctx: &Context, f: Mask, x: usize) -> Vec<Mask> {
    if f.len() == 2 {
        return vec![f];
    }
    let mut h: Vec<Mask> = ctx
        .cat
        .orderings_of(f)
        .iter()
        .filter(|(o, _)| o[o.len() - 1] == x)
        .map(|(o, _)| Mask::from_elems([o[0], o[1]]))
        .collect();
    h.sort();
    h.dedup();
    h
}

fn efp(ctx: &Context) -> Result<Option<Certificate>> {
    let m = &ctx.m;
    for x in m.ground().iter() {
        // Even fans through x with x as an end.
        let fans: Vec<(Mask, Vec<Mask>)> = ctx
            .even_fans()
            .filter(|f| f.contains(x))
            .map(|f| (f, heads_at(ctx, f, x)))
            .filter(|(_, h)| !h.is_empty())
            .collect();
        if fans.len() < 2 {
            continue;
        }
        let mut lasts: Vec<(Mask, Vec<Mask>)> = fans.clone();
        lasts.extend(m.ground().without(x).iter().map(|z| {
            let pair = Mask::from_elems([x, z]);
            (pair, vec![pair])
        }));
        let cands: Vec<Mask> = fans.iter().map(|(f, _)| f.without(x)).collect();
        let heads: Vec<&Vec<Mask>> = fans.iter().map(|(_, h)| h).collect();
        let mut compat = cached(|i, j| {
            m.local_conn(cands[i], cands[j], false) == 2
                && heads[i]
                    .iter()
                    .any(|&a| heads[j].iter().any(|&b| m.is_circuit(a | b)))
        });
        for (last, last_heads) in &lasts {
            let mut found = None;
            exact_cover(m.ground() - *last, &cands, &mut compat, &mut |chosen| {
                if last.len() == 2 && chosen.len() != 2 {
                    return false;
                }
                let ok_last = chosen.iter().all(|&i| {
                    heads[i]
                        .iter()
                        .any(|&a| last_heads.iter().any(|&b| m.is_circuit(a | b)))
                });
                let mut petals: Vec<Mask> = chosen.iter().map(|&i| cands[i]).collect();
                petals.push(*last);
                if ok_last && p::is_even_fan_paddle(m, &petals, x) {
                    found = Some(petals);
                    true
                } else {
                    false
                }
            })?;
            if let Some(petals) = found {
                let ords = petals
                    .iter()
                    .map(|&q| {
                        let f = q.with(x);
                        ctx.cat
                            .orderings_of(f)
                            .iter()
                            .find(|(o, _)| o[o.len() - 1] == x)
                            .map(|(o, _)| o.clone())
                            .unwrap_or_else(|| {
                                let mut v = q.without(x).to_vec();
                                v.push(x);
                                v
                            })
                    })
                    .collect();
                return Ok(Some(Certificate::EvenFanPaddle {
                    petals: ords,
                    hinge: x,
                }));
            }
        }
    }
    Ok(None)
}

pub fn recognize_even_fan_paddle(m: &Matroid) -> Result<Option<Certificate>> {
    efp(&Context::new(m)?)
}

fn triad_paddle(ctx: &Context) -> Result<Option<Certificate>> {
    let m = &ctx.m;
    if m.size() % 3 != 0 || m.size() < 6 {
        return Ok(None);
    }
    let mut compat = cached(|i, j| m.local_conn(ctx.triads[i], ctx.triads[j], false) == 2);
    let mut found = None;
    exact_cover(m.ground(), &ctx.triads, &mut compat, &mut |chosen| {
        let petals: Vec<Mask> = chosen.iter().map(|&i| ctx.triads[i]).collect();
        found = p::triad_paddle_labelling(m, &petals);
        found.is_some()
    })?;
    Ok(found.map(|petals| Certificate::TriadPaddle { petals }))
}

pub fn recognize_triad_paddle(m: &Matroid) -> Result<Option<Certificate>> {
    triad_paddle(&Context::new(m)?)
}

fn hinged(ctx: &Context) -> Result<Option<Certificate>> {
    let m = &ctx.m;
    if m.size() % 3 != 1 || m.size() < 10 {
        return Ok(None);
    }
    for x in m.ground().iter() {
        let cands: Vec<Mask> = ctx
            .triads
            .iter()
            .copied()
            .filter(|t| !t.contains(x))
            .collect();
        let mut compat = |_: usize, _: usize| true;
        let mut found = None;
        exact_cover(m.ground().without(x), &cands, &mut compat, &mut |chosen| {
            let petals: Vec<Mask> = chosen.iter().map(|&i| cands[i]).collect();
            for last in 0..petals.len() {
                let mut order = petals.clone();
                let pm = order.remove(last);
                order.push(pm);
                if p::is_hinged_triad_paddle(m, &order, x) {
                    found = Some(order);
                    return true;
                }
            }
            false
        })?;
        if let Some(petals) = found {
            return Ok(Some(Certificate::HingedTriadPaddle {
                petals: petals.iter().map(|q| q.to_vec()).collect(),
                hinge: x,
            }));
        }
    }
    Ok(None)
}

pub fn recognize_hinged_triad_paddle(m: &Matroid) -> Result<Option<Certificate>> {
    hinged(&Context::new(m)?)
}

/// Possible last petals of a quasi-triad-paddle.
fn qtp_last_candidates(ctx: &Context) -> Vec<Mask> {
    let m = &ctx.m;
    let mut out = Vec::new();
    for (&f, ords) in &ctx.cat.orderings {
        if f.len() != 5 {
            continue;
        }
        for (e, s) in ords {
            for h in (m.ground() - f).iter() {
                let odd = Mask::from_elems([e[0], e[2], e[4], h]);
                let ok = match s {
                    FanStart::Triad => m.is_circuit(odd),
                    FanStart::Triangle => m.is_cocircuit(odd),
                };
                if ok {
                    out.push(f.with(h));
                }
            }
        }
    }
    out.extend(k_subsets(m.ground(), 4).filter(|&q| m.is_quad(q)));
    for &t in &ctx.triangles {
        for z in (m.ground() - t).iter() {
            if m.is_cocircuit(t.with(z)) {
                out.push(t.with(z));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn qtp(ctx: &Context) -> Result<Option<Certificate>> {
    let m = &ctx.m;
    for last in qtp_last_candidates(ctx) {
        let rest = m.ground() - last;
        if rest.len() % 3 != 0 || rest.len() < 6 || m.lambda(last) != 2 {
            continue;
        }
        let minor = m.delete(last)?;
        let kept = rest.to_vec();
        let lift = |q: Mask| q.iter().map(|i| kept[i]).collect::<Mask>();
        let cands: Vec<Mask> = triads(&minor).into_iter().map(lift).collect();
        let mut compat = cached(|i, j| m.local_conn(cands[i], cands[j], false) == 2);
        let mut found = None;
        exact_cover(rest, &cands, &mut compat, &mut |chosen| {
            let mut petals: Vec<Mask> = chosen.iter().map(|&i| cands[i]).collect();
            petals.push(last);
            match p::quasi_triad_paddle_kind(m, &petals) {
                Some(kind) => {
                    found = Some((kind, petals));
                    true
                }
                None => false,
            }
        })?;
        if let Some((kind, petals)) = found {
            return Ok(Some(Certificate::QuasiTriadPaddle {
                petal_kind: kind,
                petals: petals.iter().map(|q| q.to_vec()).collect(),
            }));
        }
    }
    Ok(None)
}

/// A quasi-triad-paddle certificate with its petal kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtpFound {
    pub kind: PetalKind,
    pub certificate: Certificate,
}

pub fn recognize_quasi_triad_paddle(m: &Matroid) -> Result<Option<QtpFound>> {
    Ok(qtp(&Context::new(m)?)?.map(|c| match &c {
        Certificate::QuasiTriadPaddle { petal_kind, .. } => QtpFound {
            kind: *petal_kind,
            certificate: c.clone(),
        },
        _ => unreachable!("qtp returns quasi-triad-paddle certificates"),
    }))
}

fn tpc(ctx: &Context) -> Result<Option<Certificate>> {
    let m = &ctx.m;
    // Candidates tagged triad (false) or triangle (true).
    let mut cands: Vec<Mask> = ctx.triads.clone();
    let nt = cands.len();
    cands.extend(ctx.triangles.iter().copied());
    let is_tri = |i: usize| i >= nt;
    let mut compat = cached(|i, j| match (is_tri(i), is_tri(j)) {
        (false, false) => m.local_conn(cands[i], cands[j], false) == 2,
        (true, true) => m.local_conn(cands[i], cands[j], true) == 2,
        _ => true,
    });
    let mut found = None;
    exact_cover(m.ground(), &cands, &mut compat, &mut |chosen| {
        let ps: Vec<Mask> = chosen
            .iter()
            .filter(|&&i| !is_tri(i))
            .map(|&i| cands[i])
            .collect();
        let qs: Vec<Mask> = chosen
            .iter()
            .filter(|&&i| is_tri(i))
            .map(|&i| cands[i])
            .collect();
        if p::is_tri_paddle_copaddle(m, &ps, &qs) {
            found = Some((ps, qs));
            true
        } else {
            false
        }
    })?;
    Ok(found.map(|(ps, qs)| Certificate::TriPaddleCopaddle {
        p: ps.iter().map(|q| q.to_vec()).collect(),
        q: qs.iter().map(|q| q.to_vec()).collect(),
    }))
}

pub fn recognize_tri_paddle_copaddle(m: &Matroid) -> Result<Option<Certificate>> {
    tpc(&Context::new(m)?)
}

fn accordion(ctx: &Context) -> Option<Certificate> {
    let m = &ctx.m;
    // A triangle end at a fan tip makes an even-fan-spike with tip and cotip instead.
    if efs_tip_cotip(ctx).ok().flatten().is_some() {
        return None;
    }
    for f in ctx.cat.maximal_sets() {
        if f.len() < 4 || f.len() % 2 == 1 {
            continue;
        }
        let rest = m.ground() - f;
        if !(4..=8).contains(&rest.len()) {
            continue;
        }
        for (ord, start) in ctx.cat.orderings_of(f) {
            if *start != FanStart::Triangle {
                continue;
            }
            for size in [2, 4] {
                for g in k_subsets(rest, size) {
                    let h = rest - g;
                    if h.len() != 2 && h.len() != 4 {
                        continue;
                    }
                    let lefts: &[EndKind] = if size == 2 {
                        &[EndKind::Triangle]
                    } else {
                        &[EndKind::Fan, EndKind::Quad]
                    };
                    let rights: &[EndKind] = if h.len() == 2 {
                        &[EndKind::Triad]
                    } else {
                        &[EndKind::Fan, EndKind::Quad]
                    };
                    for &lk in lefts {
                        for &rk in rights {
                            let cert = AccordionCert {
                                left: g.to_vec(),
                                left_kind: lk,
                                fan: ord.clone(),
                                right: h.to_vec(),
                                right_kind: rk,
                            };
                            if p::is_accordion_in(m, &ctx.cat, &cert) {
                                return Some(Certificate::Accordion(cert));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn recognize_accordion(m: &Matroid) -> Result<Option<AccordionCert>> {
    Ok(accordion(&Context::new(m)?).map(|c| match c {
        Certificate::Accordion(a) => a,
        _ => unreachable!("accordion returns accordion certificates"),
    }))
}

fn efs_outcome(c: &Certificate) -> Outcome {
    match c {
        Certificate::EvenFanSpikeTipCotip { .. } => Outcome::EvenFanSpikeTipCotip,
        _ => Outcome::EvenFanSpike,
    }
}

type Step = fn(&Context) -> Result<Option<Certificate>>;

/// Recognizers in classification order: (recognizer, outcome in M, also try M*).
fn steps() -> Vec<(Step, fn(&Certificate) -> Outcome, bool)> {
    fn qtp_outcome(c: &Certificate) -> Outcome {
        match c {
            Certificate::QuasiTriadPaddle { petal_kind, .. } => {
                Outcome::QuasiTriadPaddle(*petal_kind)
            }
            _ => Outcome::Unclassified,
        }
    }
    vec![
        (
            |c| Ok(wheel_in(c)),
            |c| match c {
                Certificate::WheelWhirl { whirl: true, .. } => Outcome::Whirl,
                _ => Outcome::Wheel,
            },
            false,
        ),
        (triad_paddle, |_| Outcome::TriadPaddle, true),
        (hinged, |_| Outcome::HingedTriadPaddle, true),
        (qtp, qtp_outcome, true),
        (tpc, |_| Outcome::TriPaddleCopaddle, false),
        (efs_any, efs_outcome, false),
        (efp, |_| Outcome::EvenFanPaddle, true),
        (|c| Ok(accordion(c)), |_| Outcome::Accordion, false),
    ]
}

/// The first family that holds, trying M then M* where the family is not
/// closed under duality. `dual` builds the context for M* on first use.
pub fn first_structure(
    ctx: &Context,
    dual: &mut dyn FnMut() -> Result<Context>,
) -> Result<Option<Classification>> {
    let mut dual_ctx: Option<Context> = None;
    for (step, outcome, try_dual) in steps() {
        if let Some(c) = step(ctx)? {
            return Ok(Some(Classification {
                outcome: outcome(&c),
                witness: Some(c),
            }));
        }
        if try_dual {
            if dual_ctx.is_none() {
                dual_ctx = Some(dual()?);
            }
            if let Some(c) = step(dual_ctx.as_ref().expect("built"))? {
                return Ok(Some(Classification {
                    outcome: outcome(&c).dual(),
                    witness: Some(c),
                }));
            }
        }
    }
    Ok(None)
}

/// Every family that holds, in classification order.
pub fn all_structures(ctx: &Context, dual: &Context) -> Result<Vec<Classification>> {
    let mut out = Vec::new();
    for (step, outcome, try_dual) in steps() {
        if let Some(c) = step(ctx)? {
            out.push(Classification {
                outcome: outcome(&c),
                witness: Some(c),
            });
        }
        if try_dual {
            if let Some(c) = step(dual)? {
                out.push(Classification {
                    outcome: outcome(&c).dual(),
                    witness: Some(c),
                });
            }
        }
    }
    Ok(out)
}

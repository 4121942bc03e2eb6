//! Generators for the graphs and matroids with no detachable pairs.
//!
//! Graph families come with role labels on their edges. The non-graphic
//! matroid families are built as GF(p) representations; each output is
//! checked by the matching recognizer before it is returned.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::connectivity::is_3connected;
use crate::error::{Error, Result};
use crate::gfp::{next_prime_above, LinearRep};
use crate::graph::Graph;
use crate::mask::Mask;
use crate::matroid::Matroid;
use crate::recognizers::{self, PetalKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Wheel,
    MutantWheel,
    TwistedWheel,
    WarpedWheel,
    MultiWheel,
    StretchedWheel,
    K3m,
    K3mPrime,
    K3mDoubleprime,
    Whirl,
    FreeSpike,
    HingedTriadPaddle,
    EvenFanSpike,
    EvenFanPaddle,
    QuasiTriadPaddle,
    TriPaddleCopaddle,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::Wheel,
        Family::MutantWheel,
        Family::TwistedWheel,
        Family::WarpedWheel,
        Family::MultiWheel,
        Family::StretchedWheel,
        Family::K3m,
        Family::K3mPrime,
        Family::K3mDoubleprime,
        Family::Whirl,
        Family::FreeSpike,
        Family::HingedTriadPaddle,
        Family::EvenFanSpike,
        Family::EvenFanPaddle,
        Family::QuasiTriadPaddle,
        Family::TriPaddleCopaddle,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Wheel => "wheel",
            Family::MutantWheel => "mutant_wheel",
            Family::TwistedWheel => "twisted_wheel",
            Family::WarpedWheel => "warped_wheel",
            Family::MultiWheel => "multi_wheel",
            Family::StretchedWheel => "stretched_wheel",
            Family::K3m => "k3m",
            Family::K3mPrime => "k3m_prime",
            Family::K3mDoubleprime => "k3m_doubleprime",
            Family::Whirl => "whirl",
            Family::FreeSpike => "free_spike",
            Family::HingedTriadPaddle => "hinged_triad_paddle",
            Family::EvenFanSpike => "even_fan_spike",
            Family::EvenFanPaddle => "even_fan_paddle",
            Family::QuasiTriadPaddle => "quasi_triad_paddle",
            Family::TriPaddleCopaddle => "tri_paddle_copaddle",
        }
    }

    pub fn is_graph_family(self) -> bool {
        matches!(
            self,
            Family::Wheel
                | Family::MutantWheel
                | Family::TwistedWheel
                | Family::WarpedWheel
                | Family::MultiWheel
                | Family::StretchedWheel
                | Family::K3m
                | Family::K3mPrime
                | Family::K3mDoubleprime
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Flag(bool),
    Int(i64),
    List(Vec<i64>),
    Text(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Flag(b) => write!(f, "{b}"),
            Param::Int(i) => write!(f, "{i}"),
            Param::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(":"))
            }
            Param::Text(s) => f.write_str(s),
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    /// `true`/`false`, an integer, a `:`-separated integer list, or text.
    fn from_str(s: &str) -> Result<Param> {
        if let Ok(b) = s.parse::<bool>() {
            return Ok(Param::Flag(b));
        }
        if let Ok(i) = s.parse::<i64>() {
            return Ok(Param::Int(i));
        }
        if s.contains(':') {
            if let Ok(v) = s
                .split(':')
                .map(str::parse::<i64>)
                .collect::<std::result::Result<Vec<_>, _>>()
            {
                return Ok(Param::List(v));
            }
        }
        Ok(Param::Text(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default)]
    pub params: BTreeMap<String, Param>,
}

impl fmt::Display for FamilySpec {
    /// `family/k=v,k=v` with keys sorted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kv: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}/{}", self.family, kv.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let (fam, rest) = s.split_once('/').unwrap_or((s, ""));
        let kv: Vec<&str> = rest.split(',').filter(|p| !p.is_empty()).collect();
        FamilySpec::from_args(fam, &kv)
    }
}

impl FamilySpec {
    pub fn new(family: Family) -> FamilySpec {
        FamilySpec {
            family,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Param) -> FamilySpec {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn int(self, key: &str, v: i64) -> FamilySpec {
        self.with(key, Param::Int(v))
    }

    pub fn flag(self, key: &str, v: bool) -> FamilySpec {
        self.with(key, Param::Flag(v))
    }

    pub fn list(self, key: &str, v: &[i64]) -> FamilySpec {
        self.with(key, Param::List(v.to_vec()))
    }

    pub fn text(self, key: &str, v: &str) -> FamilySpec {
        self.with(key, Param::Text(v.to_string()))
    }

    /// A family tag and `key=value` arguments.
    pub fn from_args(family: &str, kv: &[&str]) -> Result<FamilySpec> {
        let mut spec = FamilySpec::new(family.parse()?);
        for item in kv {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("expected key=value, got {item:?}")))?;
            spec.params.insert(k.trim().to_string(), v.trim().parse()?);
        }
        Ok(spec)
    }

    pub fn get_int(&self, key: &str) -> Result<Option<i64>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(Param::Int(i)) => Ok(Some(*i)),
            Some(p) => Err(Error::Parameter(format!(
                "{}: {key} must be an integer, got {p}",
                self.family
            ))),
        }
    }

    pub fn need_int(&self, key: &str) -> Result<usize> {
        let v = self
            .get_int(key)?
            .ok_or_else(|| Error::Parameter(format!("{}: missing parameter {key}", self.family)))?;
        usize::try_from(v)
            .map_err(|_| Error::Parameter(format!("{}: {key} must be non-negative", self.family)))
    }

    pub fn get_flag(&self, key: &str) -> Result<bool> {
        match self.params.get(key) {
            None => Ok(false),
            Some(Param::Flag(b)) => Ok(*b),
            Some(Param::Int(i)) => Ok(*i != 0),
            Some(p) => Err(Error::Parameter(format!(
                "{}: {key} must be a flag, got {p}",
                self.family
            ))),
        }
    }

    pub fn get_list(&self, key: &str) -> Result<Option<Vec<usize>>> {
        let v = match self.params.get(key) {
            None => return Ok(None),
            Some(Param::List(v)) => v.clone(),
            Some(Param::Int(i)) => vec![*i],
            Some(p) => {
                return Err(Error::Parameter(format!(
                    "{}: {key} must be a list, got {p}",
                    self.family
                )))
            }
        };
        v.into_iter()
            .map(|x| {
                usize::try_from(x).map_err(|_| {
                    Error::Parameter(format!("{}: {key} has a negative entry", self.family))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn get_text(&self, key: &str) -> Option<&str> {
        match self.params.get(key) {
            Some(Param::Text(s)) => Some(s),
            _ => None,
        }
    }

    pub fn dualized(&self) -> Result<bool> {
        self.get_flag("dual")
    }

    /// The petal kind of a quasi-triad-paddle spec.
    pub fn petal_kind(&self) -> Result<PetalKind> {
        let kind = self
            .get_text("kind")
            .ok_or_else(|| Error::Parameter("quasi_triad_paddle: missing parameter kind".into()))?;
        kind.parse()
    }
}

fn bad(family: Family, clause: &str) -> Error {
    Error::Parameter(format!("{family}: {clause}"))
}

/// Builds a labelled graph; labels are attached edge by edge.
struct Builder {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
}

impl Builder {
    fn new(vertices: usize) -> Builder {
        Builder {
            vertices,
            edges: Vec::new(),
            labels: Vec::new(),
        }
    }

    fn vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    fn edge(&mut self, u: usize, v: usize, label: impl Into<String>) {
        self.edges.push((u, v));
        self.labels.push(label.into());
    }

    /// A path from `a` to `b` through `k` new vertices, each also joined to
    /// `apex`. Path edges are labelled `{p}0..{p}k`, apex edges `{q}1..{q}k`.
    fn fan_path(&mut self, a: usize, b: usize, k: usize, apex: usize, p: &str, q: &str) {
        let mut prev = a;
        for i in 1..=k {
            let w = self.vertex();
            self.edge(prev, w, format!("{p}{}", i - 1));
            self.edge(w, apex, format!("{q}{i}"));
            prev = w;
        }
        self.edge(prev, b, format!("{p}{k}"));
    }

    fn build(self) -> Graph {
        Graph::new(self.vertices, self.edges)
            .and_then(|g| g.with_labels(self.labels))
            .expect("builder edges stay in range")
    }
}

/// The wheel with `n` spokes; edges alternate spoke, rim around the hub `0`.
fn wheel_graph(n: usize) -> Graph {
    let mut b = Builder::new(n + 1);
    for i in 0..n {
        b.edge(0, 1 + i, format!("s{i}"));
        b.edge(1 + i, 1 + (i + 1) % n, format!("r{i}"));
    }
    b.build()
}

fn k3m_builder(m: usize) -> Builder {
    let mut b = Builder::new(3 + m);
    for j in 0..m {
        for a in 0..3 {
            b.edge(a, 3 + j, format!("u{}v{}", a + 1, j + 1));
        }
    }
    b
}

pub fn gen_graph(spec: &FamilySpec) -> Result<Graph> {
    let fam = spec.family;
    match fam {
        Family::Wheel => {
            let n = spec.need_int("n")?;
            if n < 3 {
                return Err(bad(fam, "a wheel needs at least three spokes"));
            }
            Ok(wheel_graph(n))
        }
        Family::MutantWheel => {
            let n = spec.need_int("n")?;
            if n < 4 {
                return Err(bad(
                    fam,
                    "the wheel needs distinct a_1, b_1, a_2, b_2, a_3 with room to spare (n >= 4)",
                ));
            }
            // Spokes a_1 = 0v1, a_2 = 0v2; rim b_1 = v1v2, b_2 = v2v3.
            let mut b = Builder::new(n + 1);
            for i in 0..n {
                b.edge(0, 1 + i, format!("s{i}"));
                b.edge(1 + i, 1 + (i + 1) % n, format!("r{i}"));
            }
            let x = b.vertex();
            let y = b.vertex();
            b.edges[0] = (0, x);
            b.edge(x, 1, "s0'");
            b.edge(x, 2, "g");
            b.edges[2] = (0, y);
            b.edge(y, 2, "s1'");
            b.edge(y, 3, "h");
            Ok(b.build())
        }
        Family::TwistedWheel => {
            let (j, k) = (spec.need_int("j")?, spec.need_int("k")?);
            if j + k < 1 {
                return Err(bad(fam, "j + k >= 1"));
            }
            // K4 on e1 = 0, e2 = 1, f1 = 2, f2 = 3.
            let mut b = Builder::new(4);
            b.fan_path(0, 1, j, 2, "e", "g");
            b.fan_path(2, 3, k, 0, "f", "h");
            for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
                b.edge(u, v, format!("c{u}{v}"));
            }
            Ok(b.build())
        }
        Family::WarpedWheel => {
            let (j, k) = (spec.need_int("j")?, spec.need_int("k")?);
            if j < 1 || k < 1 {
                return Err(bad(fam, "j >= 1 and k >= 1"));
            }
            // W4: hub 0, rim 1..4.
            let mut b = Builder::new(5);
            b.fan_path(0, 1, j, 2, "e", "g");
            b.fan_path(0, 3, k, 4, "f", "h");
            b.edge(0, 2, "s2");
            b.edge(0, 4, "s4");
            for i in 1..=4 {
                b.edge(i, i % 4 + 1, format!("r{i}"));
            }
            Ok(b.build())
        }
        Family::MultiWheel => {
            let s = spec
                .get_list("s")?
                .ok_or_else(|| bad(fam, "missing parameter s (subdivisions per parallel edge)"))?;
            let k = s.len();
            if k < 3 {
                return Err(bad(fam, "k >= 3 parallel edges"));
            }
            let bare = s.iter().filter(|&&x| x == 0).count();
            if k >= 4 && bare > 0 {
                return Err(bad(
                    fam,
                    "for k >= 4 every parallel edge is subdivided at least once",
                ));
            }
            if k == 3 && bare > 1 {
                return Err(bad(
                    fam,
                    "for k = 3 at least two of the three parallel edges are subdivided",
                ));
            }
            // u = 0, h = 1, v = 2; the edge uh is never added.
            let mut b = Builder::new(3);
            b.edge(1, 2, "x");
            for (i, &si) in s.iter().enumerate() {
                b.fan_path(
                    0,
                    2,
                    si,
                    1,
                    &format!("p{}_", i + 1),
                    &format!("q{}_", i + 1),
                );
            }
            Ok(b.build())
        }
        Family::StretchedWheel => {
            let (n, k) = (spec.need_int("n")?, spec.need_int("k")?);
            if n < 3 || k < 1 {
                return Err(bad(fam, "a wheel with n >= 3 spokes and k >= 1 new edges"));
            }
            let mut b = Builder::new(n + 1);
            for i in 0..n {
                b.edge(0, 1 + i, format!("s{i}"));
            }
            for i in 1..n {
                b.edge(1 + i, 1 + (i + 1) % n, format!("r{i}"));
            }
            // y = 1, e = y v2 subdivided; z joined to the hub and y.
            let z = b.vertex();
            b.edge(0, z, "zx");
            b.edge(1, z, "zy");
            b.fan_path(1, 2, k, z, "e", "g");
            Ok(b.build())
        }
        Family::K3m => {
            let m = spec.need_int("m")?;
            if m < 3 {
                return Err(bad(fam, "m >= 3"));
            }
            Ok(k3m_builder(m).build())
        }
        Family::K3mPrime => {
            let m = spec.need_int("m")?;
            if m < 2 {
                return Err(bad(fam, "m >= 2"));
            }
            let mut b = k3m_builder(m);
            let a = b.vertex();
            let bb = b.vertex();
            for u in 0..3 {
                b.edge(a, u, format!("a{}", u + 1));
            }
            b.edge(bb, a, "ba");
            b.edge(bb, 0, "b1");
            b.edge(bb, 2, "b3");
            Ok(b.build())
        }
        Family::K3mDoubleprime => {
            let m = spec.need_int("m")?;
            if m < 2 {
                return Err(bad(fam, "m >= 2"));
            }
            let mut b = k3m_builder(m);
            let a = b.vertex();
            let bb = b.vertex();
            b.edge(a, 0, "a1");
            b.edge(a, 1, "a2");
            b.edge(bb, a, "ba");
            b.edge(bb, 1, "b2");
            b.edge(bb, 2, "b3");
            b.edge(0, 2, "u1u3");
            Ok(b.build())
        }
        _ => Err(bad(fam, "not a graph family")),
    }
}

/// Columns in `dim` coordinates, named.
struct Columns {
    dim: usize,
    cols: Vec<Vec<i64>>,
    names: Vec<String>,
}

impl Columns {
    fn new(dim: usize) -> Columns {
        Columns {
            dim,
            cols: Vec::new(),
            names: Vec::new(),
        }
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    fn push(&mut self, v: Vec<i64>, name: impl Into<String>) -> usize {
        debug_assert_eq!(v.len(), self.dim);
        self.cols.push(v);
        self.names.push(name.into());
        self.cols.len() - 1
    }

    fn matroid(self, p: u32) -> Result<Matroid> {
        let rep = LinearRep::from_columns(p, self.dim, &self.cols)?;
        Matroid::from_gfp(&rep)?.with_names(self.names)
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(c: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| c * x).collect()
}

/// The free spike of rank `r`: legs `{e_i, e_i + w}`, plus the tip `w`.
fn free_spike(r: usize, tipped: bool) -> Result<Matroid> {
    let p = next_prime_above(r as u32 + 1);
    let mut c = Columns::new(r);
    let w = vec![1; r];
    for i in 0..r {
        let e = c.unit(i);
        c.push(e.clone(), format!("x{}", i + 1));
        c.push(add(&e, &w), format!("y{}", i + 1));
    }
    if tipped {
        c.push(w, "t");
    }
    c.matroid(p)
}

/// A spike whose legs have been grown into even fans of the given lengths.
///
/// A leg `{a, b}` with `b − a` in the common direction becomes the fan
/// `(a + d·u, b + d·u, u, b)` for a new coordinate `u`; growing again
/// repeats the step on the first two elements.
fn grown_spike(legs: &[usize], d: i64) -> Result<Matroid> {
    let r = legs.len();
    let extra: usize = legs.iter().map(|l| l / 2 - 1).sum();
    let dim = r + extra;
    let p = next_prime_above(dim as u32 + 2);
    let mut c = Columns::new(dim);
    let mut w = vec![0; dim];
    w[..r].iter_mut().for_each(|x| *x = 1);
    let mut next = r;
    for (i, &len) in legs.iter().enumerate() {
        let a = c.unit(i);
        let b = add(&a, &w);
        // Fan under construction, tail first.
        let mut head = (a, b);
        let mut tail: Vec<(Vec<i64>, String)> = Vec::new();
        for g in 0..len / 2 - 1 {
            let u = c.unit(next);
            next += 1;
            let (a, b) = head;
            tail.push((b.clone(), format!("l{}_{}", i + 1, len - 2 * g)));
            tail.push((u.clone(), format!("l{}_{}", i + 1, len - 2 * g - 1)));
            head = (add(&a, &scale(d, &u)), add(&b, &scale(d, &u)));
        }
        c.push(head.0, format!("l{}_1", i + 1));
        c.push(head.1, format!("l{}_2", i + 1));
        for (v, name) in tail.into_iter().rev() {
            c.push(v, name);
        }
    }
    c.matroid(p)
}

/// A spike with tip `x` and cotip `y` and `m` legs.
fn spike_tip_cotip(m: usize, c0: i64) -> Result<Matroid> {
    let p = next_prime_above(m as u32 + 2);
    let mut c = Columns::new(m + 1);
    c.push(c.unit(0), "x");
    for i in 1..=m {
        let u = c.unit(i);
        c.push(u.clone(), format!("a{i}"));
        c.push(add(&u, &c.unit(0)), format!("b{i}"));
    }
    let mut y = vec![1; m + 1];
    y[0] = c0;
    c.push(y, "y");
    c.matroid(p)
}

/// Copies of M(K4) glued along triples of the line `{x, y, z, w}`, then
/// `y, z, w` deleted. `triples[i]` picks the triple for copy `i`.
fn hinged(triples: &[[usize; 3]]) -> Result<Matroid> {
    let p = 5;
    let dim = 2 + triples.len();
    let mut c = Columns::new(dim);
    let line: Vec<Vec<i64>> = [[1, 0], [0, 1], [1, 1], [1, 2]]
        .iter()
        .map(|v| {
            let mut col = vec![0; dim];
            col[..2].copy_from_slice(v);
            col
        })
        .collect();
    c.push(line[0].clone(), "x");
    for (i, t) in triples.iter().enumerate() {
        let (a, b, cc) = (&line[t[0]], &line[t[1]], &line[t[2]]);
        // Solve cc = alpha a + beta b in the first two coordinates.
        let det = a[0] * b[1] - a[1] * b[0];
        let alpha = (cc[0] * b[1] - cc[1] * b[0]) / det;
        let beta = (a[0] * cc[1] - a[1] * cc[0]) / det;
        if scale(alpha, a)[..2] != [cc[0] - beta * b[0], cc[1] - beta * b[1]] {
            return Err(Error::ConstructionBug(
                "line points not in the expected position".into(),
            ));
        }
        let (a2, b2) = (scale(alpha, a), scale(beta, b));
        let u = c.unit(2 + i);
        let tag = i + 1;
        c.push(add(&add(&a2, &b2), &scale(-1, &u)), format!("p{tag}_d"));
        c.push(add(&b2, &scale(-1, &u)), format!("p{tag}_e"));
        c.push(scale(-1, &u), format!("p{tag}_f"));
    }
    c.matroid(p)
}

/// M(K_{3,k}) as `e_u − e_v` columns, in coordinates `u1, u2, u3, v1..vk`
/// followed by `extra` spare coordinates.
fn k3k_columns(k: usize, extra: usize) -> Columns {
    let mut c = Columns::new(3 + k + extra);
    for j in 0..k {
        for a in 0..3 {
            let v = add(&c.unit(a), &scale(-1, &c.unit(3 + j)));
            c.push(v, format!("u{}v{}", a + 1, j + 1));
        }
    }
    c
}

/// M(K_{3,k}) plus a quad or near-quad petal on `q12 = u1 − u2`,
/// `q23 = u2 − u3` and a new coordinate `n`.
fn quad_petal(k: usize, near: bool) -> Result<Matroid> {
    let mut c = k3k_columns(k, 1);
    let n = c.unit(3 + k);
    let q12 = add(&c.unit(0), &scale(-1, &c.unit(1)));
    let q23 = add(&c.unit(1), &scale(-1, &c.unit(2)));
    let p: u32 = 5;
    let half = (p as i64 + 1) / 2;
    c.push(n.clone(), "q1");
    c.push(add(&n, &q12), "q2");
    c.push(add(&n, &q23), "q3");
    let last = if near {
        add(&n, &scale(half, &add(&q12, &q23)))
    } else {
        add(&add(&n, &q12), &q23)
    };
    c.push(last, "q4");
    c.matroid(p)
}

/// Triads from M(K_{3,s}) and triangles lifted from M*(K_{3,t}) through the
/// plane spanned by the differences of `u1, u2, u3`.
fn tri_paddle_copaddle(s: usize, t: usize) -> Result<Matroid> {
    let wdim = 2 * (t - 1);
    let mut c = k3k_columns(s, wdim);
    let base = 3 + s;
    let p = next_prime_above(s.max(t) as u32 + 1);
    let diff = |c: &Columns, i: usize, j: usize| add(&c.unit(i), &scale(-1, &c.unit(j)));
    let g = [diff(&c, 1, 2), diff(&c, 2, 0), diff(&c, 0, 1)];
    // Cycle rows u1 v1 u_a v_j u1 for a = 2, 3 and j = 2..t.
    let row = |a: usize, j: usize| base + 2 * (j - 1) + (a - 1);
    for j in 0..t {
        for a in 0..3 {
            let mut v = g[a].clone();
            match (a, j) {
                (0, 0) => (1..t).for_each(|jj| (1..3).for_each(|aa| v[row(aa, jj)] = 1)),
                (_, 0) => (1..t).for_each(|jj| v[row(a, jj)] = -1),
                (0, _) => (1..3).for_each(|aa| v[row(aa, j)] = -1),
                _ => v[row(a, j)] = 1,
            }
            c.push(v, format!("q{}_{}", j + 1, a + 1));
        }
    }
    c.matroid(p)
}

fn validated(
    m: Matroid,
    fam: Family,
    check: impl Fn(&Matroid) -> Result<bool>,
    what: &str,
) -> Result<Matroid> {
    if !is_3connected(&m) {
        return Err(Error::ConstructionBug(format!(
            "{fam}: output is not 3-connected"
        )));
    }
    if !check(&m)? {
        return Err(Error::ConstructionBug(format!(
            "{fam}: recognizer rejected the output as {what}"
        )));
    }
    Ok(m)
}

/// Tries construction parameters in order until the recognizer accepts one.
fn first_validated(
    fam: Family,
    candidates: impl IntoIterator<Item = Result<Matroid>>,
    check: impl Fn(&Matroid) -> Result<bool>,
    what: &str,
) -> Result<Matroid> {
    let mut last = None;
    for m in candidates {
        match validated(m?, fam, &check, what) {
            Ok(m) => return Ok(m),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::ConstructionBug(format!("{fam}: no candidates"))))
}

pub fn gen_matroid(spec: &FamilySpec) -> Result<Matroid> {
    let m = gen_primal(spec)?;
    Ok(if spec.dualized()? { m.dual() } else { m })
}

/// As [`gen_matroid`], falling back to `fixtures/<family>/<spec>.matroid`
/// under `dir` when no construction covers the parameters.
pub fn gen_matroid_or_fixture(spec: &FamilySpec, dir: &Path) -> Result<Matroid> {
    match gen_matroid(spec) {
        Err(Error::UnsupportedParameters(why)) => {
            let mut plain = spec.clone();
            plain.params.remove("dual");
            let path = dir
                .join(spec.family.tag())
                .join(format!("{}.matroid", fixture_stem(&plain)));
            let text = std::fs::read_to_string(&path).map_err(|_| {
                Error::UnsupportedParameters(format!("{why}; no fixture at {}", path.display()))
            })?;
            let m = crate::io::parse_matroid(&text)?;
            check_family(&m, &plain)?;
            Ok(if spec.dualized()? { m.dual() } else { m })
        }
        other => other,
    }
}

/// File stem for a spec: the parameter half of its display form, so
/// `"{family}/{stem}"` parses back to the spec.
pub fn fixture_stem(spec: &FamilySpec) -> String {
    let text = spec.to_string();
    text.split_once('/')
        .map_or(String::new(), |(_, kv)| kv.to_string())
}

fn gen_primal(spec: &FamilySpec) -> Result<Matroid> {
    let fam = spec.family;
    if fam.is_graph_family() {
        return Matroid::from_graph(&gen_graph(spec)?);
    }
    match fam {
        Family::Whirl => {
            let r = spec.need_int("r")?;
            if r < 3 {
                return Err(bad(fam, "r >= 3"));
            }
            let w = Matroid::from_graph(&wheel_graph(r))?;
            let rim = Mask::from_elems((0..r).map(|i| 2 * i + 1));
            let m = w.relax(rim)?;
            validated(
                m,
                fam,
                |m| Ok(recognizers::recognize_wheel_whirl(m) == Some(recognizers::WheelKind::Whirl)),
                "a whirl",
            )
        }
        Family::FreeSpike => {
            let r = spec.need_int("r")?;
            if r < 3 {
                return Err(bad(fam, "r >= 3"));
            }
            let tipped = spec.get_flag("tipped")?;
            let m = free_spike(r, tipped)?;
            if tipped {
                validated(m, fam, |_| Ok(true), "a tipped spike")
            } else {
                validated(
                    m,
                    fam,
                    |m| Ok(recognizers::recognize_spike(m).is_some()),
                    "a spike",
                )
            }
        }
        Family::HingedTriadPaddle => {
            let m = spec.need_int("m")?;
            if m < 3 {
                return Err(bad(fam, "m >= 3"));
            }
            // Line points x=0, y=1, z=2, w=3; copies cycle through the triples on x, last on {y,z,w}.
            let on_x = [[0, 1, 2], [0, 1, 3], [0, 2, 3]];
            let mut triples: Vec<[usize; 3]> = (0..m - 1).map(|i| on_x[i % 3]).collect();
            triples.push([2, 1, 3]);
            validated(
                hinged(&triples)?,
                fam,
                |m| Ok(recognizers::recognize_hinged_triad_paddle(m)?.is_some()),
                "a hinged triad-paddle",
            )
        }
        Family::EvenFanSpike => gen_even_fan_spike(spec),
        Family::EvenFanPaddle => {
            if spec.params.contains_key("s") {
                let g = gen_graph(&FamilySpec {
                    family: Family::MultiWheel,
                    params: spec.params.clone(),
                })?;
                return validated(
                    Matroid::from_graph(&g)?,
                    fam,
                    |m| Ok(recognizers::recognize_even_fan_paddle(m)?.is_some()),
                    "an even-fan-paddle",
                );
            }
            let m = spec.need_int("m")?;
            if m < 3 {
                return Err(bad(fam, "m >= 3"));
            }
            let on_x = [[0, 1, 2], [0, 1, 3], [0, 2, 3]];
            let triples: Vec<[usize; 3]> = (0..m).map(|i| on_x[i % 3]).collect();
            validated(
                hinged(&triples)?,
                fam,
                |m| Ok(recognizers::recognize_even_fan_paddle(m)?.is_some()),
                "an even-fan-paddle",
            )
        }
        Family::QuasiTriadPaddle => {
            let kind = spec.petal_kind()?;
            let m = spec.need_int("m")?;
            if m < 2 {
                return Err(bad(fam, "m >= 2 triad petals"));
            }
            let built = match kind {
                PetalKind::AugmentedFan => Matroid::from_graph(&gen_graph(
                    &FamilySpec::new(Family::K3mDoubleprime).int("m", m as i64),
                )?)?,
                PetalKind::CoAugmentedFan => Matroid::from_graph(&gen_graph(
                    &FamilySpec::new(Family::K3mPrime).int("m", m as i64),
                )?)?,
                PetalKind::Quad => quad_petal(m, false)?,
                PetalKind::NearQuad => quad_petal(m, true)?,
            };
            validated(
                built,
                fam,
                |m| {
                    Ok(recognizers::recognize_quasi_triad_paddle(m)?
                        .is_some_and(|c| c.kind == kind))
                },
                "a quasi-triad-paddle",
            )
        }
        Family::TriPaddleCopaddle => {
            let (s, t) = (spec.need_int("s")?, spec.need_int("t")?);
            if s < 2 || t < 2 {
                return Err(bad(fam, "s >= 2 and t >= 2"));
            }
            validated(
                tri_paddle_copaddle(s, t)?,
                fam,
                |m| Ok(recognizers::recognize_tri_paddle_copaddle(m)?.is_some()),
                "a tri-paddle-copaddle",
            )
        }
        _ => unreachable!("graph families handled above"),
    }
}

fn gen_even_fan_spike(spec: &FamilySpec) -> Result<Matroid> {
    let fam = Family::EvenFanSpike;
    let tip_cotip = spec.get_flag("tip_cotip")?;
    if spec.params.contains_key("j") {
        let sub = FamilySpec {
            family: if tip_cotip {
                Family::TwistedWheel
            } else {
                Family::WarpedWheel
            },
            params: spec
                .params
                .iter()
                .filter(|(k, _)| *k == "j" || *k == "k")
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        };
        let m = Matroid::from_graph(&gen_graph(&sub)?)?;
        return validated(
            m,
            fam,
            |m| Ok(recognizers::recognize_even_fan_spike(m)?.is_some()),
            "an even-fan-spike",
        );
    }
    let legs = spec
        .get_list("legs")?
        .ok_or_else(|| bad(fam, "missing parameter legs (or j, k)"))?;
    if legs.len() < 3 {
        return Err(bad(fam, "at least three petals"));
    }
    if legs.iter().any(|&l| l < 2 || l % 2 == 1) {
        return Err(bad(
            fam,
            "every petal is an even fan of length at least two",
        ));
    }
    let check = |m: &Matroid| Ok(recognizers::recognize_even_fan_spike(m)?.is_some());
    if tip_cotip {
        if legs.iter().any(|&l| l != 2) {
            return Err(Error::UnsupportedParameters(
                "even_fan_spike with tip and cotip: only 2-element petals are constructed; longer petals come from twisted wheels (j, k)".into(),
            ));
        }
        let p = next_prime_above(legs.len() as u32 + 2) as i64;
        return first_validated(
            fam,
            (2..p).map(|c0| spike_tip_cotip(legs.len(), c0)),
            check,
            "an even-fan-spike with tip and cotip",
        );
    }
    first_validated(
        fam,
        (1..4).map(|d| grown_spike(&legs, d)),
        check,
        "an even-fan-spike",
    )
}

/// Re-checks a loaded fixture against its declared family, including the
/// absence of detachable pairs.
pub fn check_family(m: &Matroid, spec: &FamilySpec) -> Result<()> {
    let ok = match spec.family {
        Family::Whirl => {
            recognizers::recognize_wheel_whirl(m) == Some(recognizers::WheelKind::Whirl)
        }
        Family::FreeSpike => spec.get_flag("tipped")? || recognizers::recognize_spike(m).is_some(),
        Family::HingedTriadPaddle => recognizers::recognize_hinged_triad_paddle(m)?.is_some(),
        Family::EvenFanSpike => recognizers::recognize_even_fan_spike(m)?.is_some(),
        Family::EvenFanPaddle => recognizers::recognize_even_fan_paddle(m)?.is_some(),
        Family::QuasiTriadPaddle => {
            let kind = spec.petal_kind()?;
            recognizers::recognize_quasi_triad_paddle(m)?.is_some_and(|c| c.kind == kind)
        }
        Family::TriPaddleCopaddle => recognizers::recognize_tri_paddle_copaddle(m)?.is_some(),
        _ => true,
    };
    // Tipped spikes are generated for contrast and do have detachable pairs.
    let tipped = spec.family == Family::FreeSpike && spec.get_flag("tipped")?;
    if ok && is_3connected(m) && (tipped || crate::detach::has_no_detachable_pair(m)?) {
        Ok(())
    } else {
        Err(Error::ConstructionBug(format!(
            "fixture does not satisfy {}",
            spec.family
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts() {
        let tw = gen_graph(
            &FamilySpec::new(Family::TwistedWheel)
                .int("j", 2)
                .int("k", 2),
        )
        .unwrap();
        assert_eq!(tw.edge_count(), 14);
        let k35 = gen_graph(&FamilySpec::new(Family::K3m).int("m", 5)).unwrap();
        assert_eq!(k35.edge_count(), 15);
        let kpp = gen_graph(&FamilySpec::new(Family::K3mDoubleprime).int("m", 3)).unwrap();
        assert_eq!(kpp.edge_count(), 15);
    }

    #[test]
    fn spec_round_trip() {
        let s = FamilySpec::new(Family::MultiWheel)
            .list("s", &[1, 2, 2])
            .flag("dual", true);
        let text = s.to_string();
        assert_eq!(text, "multi_wheel/dual=true,s=1:2:2");
        assert_eq!(text.parse::<FamilySpec>().unwrap(), s);
    }

    #[test]
    fn constraint_errors_name_the_clause() {
        let e = gen_graph(&FamilySpec::new(Family::MultiWheel).list("s", &[0, 0, 3])).unwrap_err();
        assert!(e.to_string().contains("at least two"));
        assert!(gen_graph(&FamilySpec::new(Family::WarpedWheel).int("j", 0).int("k", 2)).is_err());
    }
}

//! Membership in each family without detachable pairs, and the resulting
//! classification of a 3-connected matroid or graph.
//!
//! Every recognizer returns a certificate: a partition (with orderings where
//! they matter) that [`predicates`] can check from scratch. The searches that
//! find certificates live in [`search`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::connectivity::is_3connected;
use crate::detach::{find_detachable_pairs, find_graph_detachable_pairs, PairVerdict, SearchMode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mask::Mask;
use crate::matroid::Matroid;

pub mod predicates;
pub mod search;

pub use search::{
    recognize_accordion, recognize_even_fan_paddle, recognize_even_fan_spike,
    recognize_hinged_triad_paddle, recognize_quasi_triad_paddle, recognize_spike,
    recognize_tip_cotip_spike, recognize_tri_paddle_copaddle, recognize_triad_paddle,
    recognize_wheel_whirl, Context,
};

/// Smallest ground set the classification covers.
pub const MIN_CLASSIFY: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WheelKind {
    Wheel,
    Whirl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PetalKind {
    AugmentedFan,
    CoAugmentedFan,
    Quad,
    NearQuad,
}

impl PetalKind {
    pub const ALL: [PetalKind; 4] = [
        PetalKind::AugmentedFan,
        PetalKind::CoAugmentedFan,
        PetalKind::Quad,
        PetalKind::NearQuad,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            PetalKind::AugmentedFan => "augmented_fan",
            PetalKind::CoAugmentedFan => "co_augmented_fan",
            PetalKind::Quad => "quad",
            PetalKind::NearQuad => "near_quad",
        }
    }
}

impl FromStr for PetalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<PetalKind> {
        match s.replace('-', "_").as_str() {
            "augmented" | "augmented_fan" => Ok(PetalKind::AugmentedFan),
            "co_augmented" | "coaugmented" | "co_augmented_fan" => Ok(PetalKind::CoAugmentedFan),
            "quad" => Ok(PetalKind::Quad),
            "near_quad" | "nearquad" => Ok(PetalKind::NearQuad),
            _ => Err(Error::Parameter(format!("unknown petal kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndKind {
    Fan,
    Quad,
    Triangle,
    Triad,
}

/// An accordion `(G, F, H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccordionCert {
    pub left: Vec<usize>,
    pub left_kind: EndKind,
    /// Fan ordering of `F` starting with a triangle.
    pub fan: Vec<usize>,
    pub right: Vec<usize>,
    pub right_kind: EndKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    DetachablePair(PairVerdict),
    /// Cyclic ordering alternating triangle, triad, ...
    WheelWhirl {
        order: Vec<usize>,
        whirl: bool,
    },
    Accordion(AccordionCert),
    /// Petal orderings, each with a triad first when longer than two.
    EvenFanSpike {
        petals: Vec<Vec<usize>>,
    },
    DegenerateEvenFanSpike {
        p: Vec<usize>,
        q: Vec<usize>,
    },
    /// Two petals is the degenerate case.
    EvenFanSpikeTipCotip {
        petals: Vec<Vec<usize>>,
        tip: usize,
        cotip: usize,
    },
    /// Each petal as a fan ordering ending at the hinge, which belongs to the last petal.
    EvenFanPaddle {
        petals: Vec<Vec<usize>>,
        hinge: usize,
    },
    /// Each triad listed as the edges to `u1, u2, u3`.
    TriadPaddle {
        petals: Vec<[usize; 3]>,
    },
    HingedTriadPaddle {
        petals: Vec<Vec<usize>>,
        hinge: usize,
    },
    QuasiTriadPaddle {
        petal_kind: PetalKind,
        petals: Vec<Vec<usize>>,
    },
    TriPaddleCopaddle {
        p: Vec<Vec<usize>>,
        q: Vec<Vec<usize>>,
    },
}

fn masks(v: &[Vec<usize>]) -> Vec<Mask> {
    v.iter().map(|p| predicates::mask_of(p)).collect()
}

impl Certificate {
    /// Checks the certificate against the defining conditions in `m`.
    pub fn holds(&self, m: &Matroid) -> bool {
        use predicates as p;
        match self {
            Certificate::DetachablePair(v) => {
                crate::detach::pair_status(m, v.e, v.f).is_ok_and(|w| w == *v && w.detachable())
            }
            Certificate::WheelWhirl { order, whirl } => {
                search::matches_wheel(m, order)
                    == Some(if *whirl {
                        WheelKind::Whirl
                    } else {
                        WheelKind::Wheel
                    })
            }
            Certificate::Accordion(a) => p::is_accordion(m, a),
            Certificate::EvenFanSpike { petals } => p::is_even_fan_spike(m, &masks(petals)),
            Certificate::DegenerateEvenFanSpike { p: a, q: b } => {
                p::is_degenerate_even_fan_spike(m, p::mask_of(a), p::mask_of(b))
            }
            Certificate::EvenFanSpikeTipCotip { petals, tip, cotip } => {
                let ps = masks(petals);
                p::is_efs_tip_cotip(m, &ps, *tip, *cotip)
                    && ps.iter().all(|&q| {
                        m.closure(q, false).contains(*tip) && m.closure(q, true).contains(*cotip)
                    })
            }
            Certificate::EvenFanPaddle { petals, hinge } => {
                let mut ps = masks(petals);
                let k = ps.len();
                for q in ps.iter_mut().take(k.saturating_sub(1)) {
                    *q = q.without(*hinge);
                }
                p::is_even_fan_paddle(m, &ps, *hinge)
            }
            Certificate::TriadPaddle { petals } => {
                let ps: Vec<Mask> = petals
                    .iter()
                    .map(|t| Mask::from_elems(t.iter().copied()))
                    .collect();
                p::triad_paddle_labelling(m, &ps).is_some()
            }
            Certificate::HingedTriadPaddle { petals, hinge } => {
                p::is_hinged_triad_paddle(m, &masks(petals), *hinge)
            }
            Certificate::QuasiTriadPaddle { petal_kind, petals } => {
                p::quasi_triad_paddle_kind(m, &masks(petals)) == Some(*petal_kind)
            }
            Certificate::TriPaddleCopaddle { p: a, q: b } => {
                p::is_tri_paddle_copaddle(m, &masks(a), &masks(b))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    DetachablePair,
    Wheel,
    Whirl,
    Accordion,
    EvenFanSpike,
    EvenFanSpikeTipCotip,
    EvenFanPaddle,
    EvenFanPaddleDual,
    TriadPaddle,
    TriadPaddleDual,
    HingedTriadPaddle,
    HingedTriadPaddleDual,
    TriPaddleCopaddle,
    QuasiTriadPaddle(PetalKind),
    QuasiTriadPaddleDual(PetalKind),
    Unclassified,
}

impl Outcome {
    pub fn tag(self) -> String {
        match self {
            Outcome::DetachablePair => "detachable_pair".into(),
            Outcome::Wheel => "wheel".into(),
            Outcome::Whirl => "whirl".into(),
            Outcome::Accordion => "accordion".into(),
            Outcome::EvenFanSpike => "even_fan_spike".into(),
            Outcome::EvenFanSpikeTipCotip => "even_fan_spike_tip_cotip".into(),
            Outcome::EvenFanPaddle => "even_fan_paddle".into(),
            Outcome::EvenFanPaddleDual => "even_fan_paddle_dual".into(),
            Outcome::TriadPaddle => "triad_paddle".into(),
            Outcome::TriadPaddleDual => "triad_paddle_dual".into(),
            Outcome::HingedTriadPaddle => "hinged_triad_paddle".into(),
            Outcome::HingedTriadPaddleDual => "hinged_triad_paddle_dual".into(),
            Outcome::TriPaddleCopaddle => "tri_paddle_copaddle".into(),
            Outcome::QuasiTriadPaddle(k) => format!("quasi_triad_paddle({})", k.tag()),
            Outcome::QuasiTriadPaddleDual(k) => format!("quasi_triad_paddle_dual({})", k.tag()),
            Outcome::Unclassified => "unclassified".into(),
        }
    }

    /// The outcome the same certificate gives in the dual.
    pub fn dual(self) -> Outcome {
        use Outcome::*;
        match self {
            EvenFanPaddle => EvenFanPaddleDual,
            EvenFanPaddleDual => EvenFanPaddle,
            TriadPaddle => TriadPaddleDual,
            TriadPaddleDual => TriadPaddle,
            HingedTriadPaddle => HingedTriadPaddleDual,
            HingedTriadPaddleDual => HingedTriadPaddle,
            QuasiTriadPaddle(k) => QuasiTriadPaddleDual(k),
            QuasiTriadPaddleDual(k) => QuasiTriadPaddle(k),
            other => other,
        }
    }

    pub fn is_dual_tagged(self) -> bool {
        matches!(
            self,
            Outcome::EvenFanPaddleDual
                | Outcome::TriadPaddleDual
                | Outcome::HingedTriadPaddleDual
                | Outcome::QuasiTriadPaddleDual(_)
        )
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Outcome> {
        use Outcome::*;
        let simple = [
            DetachablePair,
            Wheel,
            Whirl,
            Accordion,
            EvenFanSpike,
            EvenFanSpikeTipCotip,
            EvenFanPaddle,
            EvenFanPaddleDual,
            TriadPaddle,
            TriadPaddleDual,
            HingedTriadPaddle,
            HingedTriadPaddleDual,
            TriPaddleCopaddle,
            Unclassified,
        ];
        if let Some(o) = simple.into_iter().find(|o| o.tag() == s) {
            return Ok(o);
        }
        let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
        if let Some(k) = inner("quasi_triad_paddle_dual(") {
            return Ok(QuasiTriadPaddleDual(k.parse()?));
        }
        if let Some(k) = inner("quasi_triad_paddle(") {
            return Ok(QuasiTriadPaddle(k.parse()?));
        }
        Err(Error::Parameter(format!("unknown outcome {s:?}")))
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.tag())
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Outcome, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub outcome: Outcome,
    /// Evidence in M, or in M* for the dual-tagged outcomes.
    pub witness: Option<Certificate>,
}

impl Classification {
    fn new(outcome: Outcome, witness: Certificate) -> Classification {
        Classification {
            outcome,
            witness: Some(witness),
        }
    }

    pub fn unclassified() -> Classification {
        Classification {
            outcome: Outcome::Unclassified,
            witness: None,
        }
    }

    /// Replays the witness in M (or M* for dual-tagged outcomes).
    pub fn replay(&self, m: &Matroid) -> bool {
        match &self.witness {
            None => self.outcome == Outcome::Unclassified,
            Some(w) if self.outcome.is_dual_tagged() => w.holds(&m.dual()),
            Some(w) => w.holds(m),
        }
    }
}

fn check_pre(m: &Matroid) -> Result<()> {
    if m.size() < MIN_CLASSIFY {
        return Err(Error::Precondition(format!(
            "classification needs at least {MIN_CLASSIFY} elements, got {}",
            m.size()
        )));
    }
    if !is_3connected(m) {
        return Err(Error::Precondition("matroid is not 3-connected".into()));
    }
    Ok(())
}

/// The detachable-pair search, then each family in a fixed order.
pub fn classify_matroid(m: &Matroid) -> Result<Classification> {
    check_pre(m)?;
    if let Some(v) = find_detachable_pairs(m, SearchMode::First)?
        .into_iter()
        .next()
    {
        return Ok(Classification::new(
            Outcome::DetachablePair,
            Certificate::DetachablePair(v),
        ));
    }
    classify_structure(m)
}

/// Family recognition only, for a matroid already known to lack detachable pairs.
pub fn classify_structure(m: &Matroid) -> Result<Classification> {
    let ctx = Context::new(m)?;
    Ok(
        search::first_structure(&ctx, &mut || Context::new(&m.dual()))?
            .unwrap_or_else(Classification::unclassified),
    )
}

/// Every family outcome that holds, in the classification order. More than
/// one entry means the families overlap on this matroid.
pub fn all_structure_outcomes(m: &Matroid) -> Result<Vec<Classification>> {
    let ctx = Context::new(m)?;
    let dual = Context::new(&m.dual())?;
    search::all_structures(&ctx, &dual)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphOutcome {
    DetachablePair,
    Wheel,
    MutantWheel,
    TwistedWheel,
    WarpedWheel,
    MultiWheel,
    StretchedWheel,
    K3m,
    K3mPrime,
    K3mDoubleprime,
    Unclassified,
}

impl GraphOutcome {
    pub fn tag(self) -> &'static str {
        match self {
            GraphOutcome::DetachablePair => "detachable_pair",
            GraphOutcome::Wheel => "wheel",
            GraphOutcome::MutantWheel => "mutant_wheel",
            GraphOutcome::TwistedWheel => "twisted_wheel",
            GraphOutcome::WarpedWheel => "warped_wheel",
            GraphOutcome::MultiWheel => "multi_wheel",
            GraphOutcome::StretchedWheel => "stretched_wheel",
            GraphOutcome::K3m => "k3m",
            GraphOutcome::K3mPrime => "k3m_prime",
            GraphOutcome::K3mDoubleprime => "k3m_doubleprime",
            GraphOutcome::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for GraphOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClassification {
    pub outcome: GraphOutcome,
    /// The classification of the cycle matroid behind the graph outcome.
    pub matroid: Classification,
}

fn is_bipartite_3m(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut side = vec![None; n];
    let adj = g.adjacency();
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if adj[v][w] {
                    match side[w] {
                        None => {
                            side[w] = Some(!side[v].expect("set"));
                            stack.push(w);
                        }
                        Some(c) if c == side[v].expect("set") => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    let a = side.iter().filter(|&&c| c == Some(true)).count();
    let small = a.min(n - a);
    small == 3 && g.edge_count() == 3 * (n - 3)
}

/// Graph-native detachable-pair search, then the families of the cycle matroid.
pub fn classify_graph(g: &Graph) -> Result<GraphClassification> {
    if g.edge_count() < MIN_CLASSIFY || !g.is_simple_3connected() {
        return Err(Error::Precondition(format!(
            "graph classification needs a simple 3-connected graph with at least {MIN_CLASSIFY} edges"
        )));
    }
    let m = Matroid::from_graph(g)?;
    if let Some(v) = find_graph_detachable_pairs(g, SearchMode::First)?
        .into_iter()
        .next()
    {
        return Ok(GraphClassification {
            outcome: GraphOutcome::DetachablePair,
            matroid: Classification::new(Outcome::DetachablePair, Certificate::DetachablePair(v)),
        });
    }
    let c = classify_structure(&m)?;
    let n = g.vertex_count();
    let outcome = match (&c.outcome, &c.witness) {
        (Outcome::Wheel, _) if (0..n).any(|v| g.degree(v) == n - 1) => GraphOutcome::Wheel,
        (Outcome::Accordion, _) => GraphOutcome::MutantWheel,
        (Outcome::EvenFanSpikeTipCotip, _) => GraphOutcome::TwistedWheel,
        // Small twisted wheels also carry a degenerate tipless certificate.
        (Outcome::EvenFanSpike, Some(Certificate::DegenerateEvenFanSpike { .. })) => {
            if recognize_tip_cotip_spike(&m)?.is_some() {
                GraphOutcome::TwistedWheel
            } else {
                GraphOutcome::WarpedWheel
            }
        }
        (Outcome::EvenFanPaddle, _) => GraphOutcome::MultiWheel,
        (Outcome::EvenFanPaddleDual, _) => GraphOutcome::StretchedWheel,
        (Outcome::TriadPaddle, _) if is_bipartite_3m(g) => GraphOutcome::K3m,
        (Outcome::QuasiTriadPaddle(PetalKind::CoAugmentedFan), _) => GraphOutcome::K3mPrime,
        (Outcome::QuasiTriadPaddle(PetalKind::AugmentedFan), _) => GraphOutcome::K3mDoubleprime,
        _ => GraphOutcome::Unclassified,
    };
    Ok(GraphClassification {
        outcome,
        matroid: c,
    })
}

/// Whether the outcome names a family, which rules out detachable pairs.
pub fn has_no_detachable_pair_outcome(c: &Classification) -> bool {
    !matches!(c.outcome, Outcome::DetachablePair | Outcome::Unclassified)
}

pub fn pair_witness(c: &Classification) -> Option<PairVerdict> {
    match &c.witness {
        Some(Certificate::DetachablePair(v)) => Some(*v),
        _ => None,
    }
}

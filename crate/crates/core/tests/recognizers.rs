use detachable::families::{gen_graph, gen_matroid, FamilySpec};
use detachable::recognizers::predicates::accordion_lemmas_hold;
use detachable::recognizers::*;
use detachable::{Graph, Matroid};

fn graph(s: &str) -> Graph {
    gen_graph(&s.parse::<FamilySpec>().unwrap()).unwrap()
}

fn cycle(s: &str) -> Matroid {
    Matroid::from_graph(&graph(s)).unwrap()
}

fn family(s: &str) -> Matroid {
    gen_matroid(&s.parse::<FamilySpec>().unwrap()).unwrap()
}

fn complete(n: usize) -> Graph {
    Graph::new(
        n,
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect(),
    )
    .unwrap()
}

#[test]
fn wheels_and_whirls() {
    assert_eq!(
        recognize_wheel_whirl(&cycle("wheel/n=7")),
        Some(WheelKind::Wheel)
    );
    assert_eq!(
        recognize_wheel_whirl(&family("whirl/r=7")),
        Some(WheelKind::Whirl)
    );
    assert_eq!(recognize_wheel_whirl(&cycle("k3m/m=3")), None);
}

#[test]
fn spikes() {
    assert_eq!(
        recognize_spike(&family("free_spike/r=7")).map(|p| p.len()),
        Some(7)
    );
    assert!(recognize_spike(&cycle("wheel/n=7")).is_none());
    let efs = family("even_fan_spike/legs=4:2:2:2:2");
    assert!(recognize_spike(&efs).is_none());
    assert!(recognize_even_fan_spike(&efs).unwrap().is_some());
}

#[test]
fn even_fan_spike_certificates() {
    let warped = cycle("warped_wheel/j=2,k=2");
    assert!(matches!(
        recognize_even_fan_spike(&warped).unwrap(),
        Some(Certificate::DegenerateEvenFanSpike { .. })
    ));
    let twisted = cycle("twisted_wheel/j=2,k=2");
    assert!(matches!(
        recognize_even_fan_spike(&twisted).unwrap(),
        Some(Certificate::EvenFanSpikeTipCotip { .. })
    ));
    assert!(recognize_even_fan_spike(&cycle("k3m/m=5"))
        .unwrap()
        .is_none());
}

#[test]
fn tip_lies_in_every_petal_closure() {
    let m = family("even_fan_spike/legs=2:2:2:2:2:2,tip_cotip=true");
    let Some(Certificate::EvenFanSpikeTipCotip { petals, tip, cotip }) =
        recognize_even_fan_spike(&m).unwrap()
    else {
        panic!("no tip/cotip certificate")
    };
    for p in &petals {
        let p = p.iter().copied().collect();
        assert!(m.closure(p, false).contains(tip));
        assert!(m.closure(p, true).contains(cotip));
    }
}

#[test]
fn even_fan_paddles() {
    assert!(recognize_even_fan_paddle(&cycle("multi_wheel/s=1:2:2"))
        .unwrap()
        .is_some());
    let stretched = cycle("stretched_wheel/n=5,k=2");
    assert!(recognize_even_fan_paddle(&stretched.dual())
        .unwrap()
        .is_some());
    assert!(recognize_even_fan_paddle(&cycle("wheel/n=7"))
        .unwrap()
        .is_none());
}

#[test]
fn triad_paddles() {
    let petals = |m: &Matroid| match recognize_triad_paddle(m).unwrap() {
        Some(Certificate::TriadPaddle { petals }) => Some(petals.len()),
        _ => None,
    };
    assert_eq!(petals(&cycle("k3m/m=5")), Some(5));
    assert_eq!(petals(&cycle("k3m/m=3")), Some(3));
    assert_eq!(petals(&Matroid::from_graph(&complete(4)).unwrap()), None);
}

#[test]
fn hinged_triad_paddles() {
    assert!(
        recognize_hinged_triad_paddle(&family("hinged_triad_paddle/m=4"))
            .unwrap()
            .is_some()
    );
    assert!(recognize_hinged_triad_paddle(&cycle("k3m/m=4"))
        .unwrap()
        .is_none());
    assert!(
        recognize_hinged_triad_paddle(&family("even_fan_paddle/m=4"))
            .unwrap()
            .is_none()
    );
}

#[test]
fn quasi_triad_paddles() {
    let kind = |m: &Matroid| recognize_quasi_triad_paddle(m).unwrap().map(|c| c.kind);
    assert_eq!(
        kind(&cycle("k3m_doubleprime/m=4")),
        Some(PetalKind::AugmentedFan)
    );
    assert_eq!(
        kind(&cycle("k3m_prime/m=4")),
        Some(PetalKind::CoAugmentedFan)
    );
    assert_eq!(
        kind(&family("quasi_triad_paddle/kind=quad,m=3")),
        Some(PetalKind::Quad)
    );
    assert_eq!(
        kind(&family("quasi_triad_paddle/kind=near_quad,m=3")),
        Some(PetalKind::NearQuad)
    );
}

#[test]
fn tri_paddle_copaddles() {
    let m = family("tri_paddle_copaddle/s=2,t=3");
    let Some(Certificate::TriPaddleCopaddle { p, q }) = recognize_tri_paddle_copaddle(&m).unwrap()
    else {
        panic!("no certificate")
    };
    assert_eq!((p.len(), q.len()), (2, 3));
    let Some(Certificate::TriPaddleCopaddle { p: dp, q: dq }) =
        recognize_tri_paddle_copaddle(&m.dual()).unwrap()
    else {
        panic!("no certificate in the dual")
    };
    assert_eq!((dp.len(), dq.len()), (3, 2));
    assert!(recognize_tri_paddle_copaddle(&cycle("k3m/m=4"))
        .unwrap()
        .is_none());
}

#[test]
fn accordions() {
    for n in [6, 7, 8] {
        let m = cycle(&format!("mutant_wheel/n={n}"));
        let cert = recognize_accordion(&m)
            .unwrap()
            .expect("mutant wheels are accordions");
        assert_eq!(
            (cert.left_kind, cert.right_kind),
            (EndKind::Fan, EndKind::Fan)
        );
        assert!(accordion_lemmas_hold(&m, &cert));
    }
    assert!(recognize_accordion(&cycle("twisted_wheel/j=2,k=2"))
        .unwrap()
        .is_none());
    assert!(recognize_accordion(&cycle("wheel/n=7")).unwrap().is_none());
}

#[test]
fn classify_examples() {
    let k6 = Matroid::from_graph(&complete(6)).unwrap();
    let c = classify_matroid(&k6).unwrap();
    assert_eq!(c.outcome, Outcome::DetachablePair);
    assert!(c.replay(&k6));
    assert_eq!(
        classify_matroid(&family("whirl/r=7")).unwrap().outcome,
        Outcome::Whirl
    );
    assert_eq!(
        classify_matroid(&family("free_spike/r=7")).unwrap().outcome,
        Outcome::EvenFanSpike
    );
    assert!(classify_matroid(&cycle("k3m/m=3")).is_err());
}

#[test]
fn dual_coherence() {
    for s in [
        "hinged_triad_paddle/m=4",
        "quasi_triad_paddle/kind=quad,m=4",
        "even_fan_paddle/m=4",
        "even_fan_spike/legs=4:4:4:2",
    ] {
        let m = family(s);
        let a = classify_matroid(&m).unwrap();
        let b = classify_matroid(&m.dual()).unwrap();
        assert_eq!(a.outcome.dual(), b.outcome, "{s}");
        assert!(b.replay(&m.dual()), "{s}");
    }
}

#[test]
fn outcome_tags_round_trip() {
    for t in [
        "wheel",
        "quasi_triad_paddle(near_quad)",
        "quasi_triad_paddle_dual(quad)",
        "even_fan_paddle_dual",
    ] {
        assert_eq!(t.parse::<Outcome>().unwrap().tag(), t);
    }
    let c = classify_matroid(&cycle("k3m/m=5")).unwrap();
    let json = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<Classification>(&json).unwrap(), c);
}

#[test]
fn exactly_one_structure_on_families() {
    for s in [
        "wheel/n=7",
        "mutant_wheel/n=6",
        "multi_wheel/s=1:2:2",
        "k3m_prime/m=4",
    ] {
        let all = all_structure_outcomes(&cycle(s)).unwrap();
        assert_eq!(
            all.len(),
            1,
            "{s}: {:?}",
            all.iter().map(|c| c.outcome.tag()).collect::<Vec<_>>()
        );
    }
}

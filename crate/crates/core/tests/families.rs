use detachable::connectivity::is_3connected;
use detachable::detach::{find_detachable_pairs, SearchMode};
use detachable::families::{gen_graph, gen_matroid, Family, FamilySpec};
use detachable::recognizers::{
    classify_graph, classify_matroid, recognize_hinged_triad_paddle, Certificate, GraphOutcome,
};
use detachable::structures::quads;
use detachable::{Error, Mask, Matroid};

fn spec(s: &str) -> FamilySpec {
    s.parse().unwrap()
}

#[test]
fn stated_edge_counts() {
    assert_eq!(
        gen_graph(&spec("twisted_wheel/j=2,k=2"))
            .unwrap()
            .edge_count(),
        14
    );
    let k35 = gen_graph(&spec("k3m/m=5")).unwrap();
    assert_eq!((k35.vertex_count(), k35.edge_count()), (8, 15));
    assert_eq!(
        gen_graph(&spec("k3m_doubleprime/m=3"))
            .unwrap()
            .edge_count(),
        15
    );
    assert_eq!(gen_graph(&spec("wheel/n=7")).unwrap().edge_count(), 14);
}

#[test]
fn graph_outputs_are_simple_and_3connected() {
    let specs = [
        "wheel/n=7",
        "wheel/n=9",
        "mutant_wheel/n=5",
        "mutant_wheel/n=7",
        "twisted_wheel/j=1,k=3",
        "twisted_wheel/j=4,k=0",
        "warped_wheel/j=1,k=2",
        "warped_wheel/j=2,k=2",
        "multi_wheel/s=1:2:2",
        "multi_wheel/s=1:1:1:1",
        "stretched_wheel/n=5,k=2",
        "k3m/m=6",
        "k3m_prime/m=4",
        "k3m_doubleprime/m=4",
    ];
    for s in specs {
        let g = gen_graph(&spec(s)).unwrap();
        assert!(g.edge_count() >= 13, "{s}");
        assert!(g.is_simple_3connected(), "{s}");
    }
}

#[test]
fn graph_families_classify_as_themselves() {
    let cases = [
        ("wheel/n=7", GraphOutcome::Wheel),
        ("mutant_wheel/n=6", GraphOutcome::MutantWheel),
        ("twisted_wheel/j=2,k=2", GraphOutcome::TwistedWheel),
        ("warped_wheel/j=2,k=2", GraphOutcome::WarpedWheel),
        ("multi_wheel/s=1:2:2", GraphOutcome::MultiWheel),
        ("stretched_wheel/n=5,k=2", GraphOutcome::StretchedWheel),
        ("k3m/m=5", GraphOutcome::K3m),
        ("k3m_prime/m=4", GraphOutcome::K3mPrime),
        ("k3m_doubleprime/m=4", GraphOutcome::K3mDoubleprime),
    ];
    for (s, want) in cases {
        let g = gen_graph(&spec(s)).unwrap();
        let c = classify_graph(&g).unwrap();
        assert_eq!(c.outcome, want, "{s}");
        assert!(c.matroid.replay(&Matroid::from_graph(&g).unwrap()), "{s}");
    }
}

#[test]
fn whirl_seven() {
    let m = gen_matroid(&spec("whirl/r=7")).unwrap();
    assert_eq!(m.size(), 14);
    assert!(is_3connected(&m));
    assert!(find_detachable_pairs(&m, SearchMode::All)
        .unwrap()
        .is_empty());
    assert_eq!(classify_matroid(&m).unwrap().outcome.tag(), "whirl");
}

/// Determinant over GF(p), written out so it shares nothing with the library.
fn det_mod(mut a: Vec<Vec<i64>>, p: i64) -> i64 {
    let n = a.len();
    let mut det = 1;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c].rem_euclid(p) != 0) else {
            return 0;
        };
        if r != c {
            a.swap(r, c);
            det = -det;
        }
        let piv = a[c][c].rem_euclid(p);
        det = det * piv % p;
        let inv = (1..p).find(|i| i * piv % p == 1).unwrap();
        for r in c + 1..n {
            let f = a[r][c].rem_euclid(p) * inv % p;
            for k in c..n {
                a[r][k] = (a[r][k] - f * a[c][k]).rem_euclid(p);
            }
        }
    }
    det.rem_euclid(p)
}

#[test]
fn free_spike_transversals_are_bases() {
    let r = 7;
    let m = gen_matroid(&spec("free_spike/r=7")).unwrap();
    assert_eq!(m.size(), 2 * r);
    // Pairs are (x_i, y_i) = (e_i, e_i + w); a transversal takes y_i for i in S.
    for s in 0u32..1 << r {
        let cols: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| i64::from(k == i) + i64::from(s >> i & 1 == 1))
                    .collect()
            })
            .collect();
        assert_ne!(det_mod(cols, 11), 0, "transversal {s:b}");
        let t = Mask::from_elems((0..r).map(|i| 2 * i + (s >> i & 1) as usize));
        assert_eq!(m.rank(t), r, "transversal {s:b}");
    }
}

#[test]
fn hinged_four_partition() {
    let m = gen_matroid(&spec("hinged_triad_paddle/m=4")).unwrap();
    let Some(Certificate::HingedTriadPaddle { petals, hinge }) =
        recognize_hinged_triad_paddle(&m).unwrap()
    else {
        panic!("no certificate")
    };
    assert_eq!(petals.len(), 4);
    for p in &petals {
        assert!(m.is_triad(Mask::from_elems(p.iter().copied())));
    }
    let covered = petals
        .iter()
        .flatten()
        .copied()
        .collect::<Mask>()
        .with(hinge);
    assert_eq!(covered, m.ground());
}

#[test]
fn even_fan_spikes_are_self_dual_in_profile() {
    for s in [
        "even_fan_spike/legs=4:4:4:2",
        "warped_wheel/j=2,k=2",
        "free_spike/r=7",
    ] {
        let m = gen_matroid(&spec(s)).unwrap();
        let d = m.dual();
        assert_eq!(quads(&m), quads(&d), "{s}");
        assert!(
            m.ground().subsets().all(|x| m.lambda(x) == d.lambda(x)),
            "{s}"
        );
    }
}

#[test]
fn every_family_has_a_default_instance() {
    let specs = [
        "whirl/r=7",
        "free_spike/r=7",
        "hinged_triad_paddle/m=4",
        "even_fan_spike/legs=4:4:4:2",
        "even_fan_spike/legs=2:2:2:2:2:2,tip_cotip=true",
        "even_fan_paddle/m=4",
        "quasi_triad_paddle/kind=quad,m=4",
        "quasi_triad_paddle/kind=near_quad,m=4",
        "tri_paddle_copaddle/s=2,t=3",
    ];
    let mut seen: Vec<Family> = specs.iter().map(|s| spec(s).family).collect();
    seen.extend(Family::ALL.iter().filter(|f| f.is_graph_family()));
    for f in Family::ALL {
        assert!(seen.contains(&f), "{f}");
    }
    for s in specs {
        let m = gen_matroid(&spec(s)).unwrap();
        assert!(is_3connected(&m), "{s}");
        assert!(
            find_detachable_pairs(&m, SearchMode::First)
                .unwrap()
                .is_empty(),
            "{s}"
        );
        let c = classify_matroid(&m).unwrap();
        assert!(c.replay(&m), "{s}: {}", c.outcome);
    }
}

#[test]
fn dual_flag_dualizes() {
    let m = gen_matroid(&spec("k3m/m=5")).unwrap();
    let d = gen_matroid(&spec("k3m/dual=true,m=5")).unwrap();
    assert_eq!(d.table(), m.dual().table());
    assert_eq!(
        classify_matroid(&d).unwrap().outcome.tag(),
        "triad_paddle_dual"
    );
}

#[test]
fn constraint_violations_are_parameter_errors() {
    for s in [
        "warped_wheel/j=0,k=2",
        "multi_wheel/s=0:0:1",
        "k3m/m=2",
        "even_fan_spike/legs=4:3:4",
    ] {
        assert!(
            matches!(gen_matroid(&spec(s)), Err(Error::Parameter(_))),
            "{s}"
        );
    }
    assert!(matches!(
        gen_matroid(&spec("even_fan_spike/legs=4:2:2,tip_cotip=true")),
        Err(Error::UnsupportedParameters(_))
    ));
}

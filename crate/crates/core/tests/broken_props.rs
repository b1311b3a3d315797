use lagmut::broken::{
    classify, enumerate_types, enumerate_types_of_kind, type_virtual_dimension, validate_type, CombType, Component, EnumerationBounds, Kind,
    Level, LevelLabel, Matching, PunctureKind, PunctureRef, ReasonTag, Shape, Status,
};
use lagmut::index::{single_puncture_index, IndexData};
use proptest::prelude::*;

fn disc(punctures: Vec<u32>, index: i64) -> Component {
    Component {
        shape: Shape::Disc,
        boundary_punctures: punctures,
        interior_punctures: vec![],
        nontrivial: true,
        touches_critical_locus: false,
        markings: 0,
        index_data: None,
        index: Some(index),
        aut: 0,
    }
}

fn strip(punctures: Vec<u32>, index: i64) -> Component {
    Component { shape: Shape::Strip, aut: 1, ..disc(punctures, index) }
}

fn at(level: usize, component: usize, puncture: usize) -> PunctureRef {
    PunctureRef { level, component, puncture, kind: PunctureKind::Boundary }
}

fn two_level(inner: Vec<Component>, outer: Component, matchings: Vec<Matching>) -> CombType {
    CombType {
        kind: Kind::Strip,
        levels: vec![
            Level { label: LevelLabel::In, components: inner },
            Level { label: LevelLabel::Out, components: vec![outer] },
        ],
        matchings,
    }
}

#[test]
fn classification_examples() {
    let n = 2;
    // Single-puncture k = 1 inner disc: index n + 1 from the index module.
    let mut inner = disc(vec![1], 0);
    inner.index = None;
    inner.index_data = Some(IndexData::new(n, 2, 1, vec![]).unwrap());
    let rigid = two_level(vec![inner], strip(vec![1], -1), vec![Matching { lower: at(0, 0, 0), upper: at(1, 0, 0) }]);
    // Hand computation: 3 + (−1) − 1·(2 − 1) − 1 = 0.
    assert_eq!(type_virtual_dimension(&rigid, n).unwrap(), 0);
    let v = classify(&rigid, n).unwrap();
    assert_eq!((v.status, v.reason), (Status::Rigid, ReasonTag::Elementary));

    let mut critical = rigid.clone();
    critical.levels[0].components[0].touches_critical_locus = true;
    assert_eq!(classify(&critical, n).unwrap().reason, ReasonTag::CriticalLocus);

    // Inner disc with two punctures, both joined to two outer strip punctures.
    let doubled = two_level(
        vec![disc(vec![1, 1], 4)],
        strip(vec![1, 1], 0),
        vec![
            Matching { lower: at(0, 0, 0), upper: at(1, 0, 0) },
            Matching { lower: at(0, 0, 1), upper: at(1, 0, 1) },
        ],
    );
    assert!(validate_type(&doubled).valid);
    assert_eq!(type_virtual_dimension(&doubled, n).unwrap(), 1);
    assert_eq!(classify(&doubled, n).unwrap().status, Status::HighIndex);
    let mut doubled = doubled;
    doubled.levels[1].components[0].index = Some(-1);
    let v = classify(&doubled, n).unwrap();
    assert_eq!((v.status, v.reason), (Status::Excluded, ReasonTag::NonElementaryInner));

    // Three levels with a nontrivial neck.
    let three = CombType {
        kind: Kind::Strip,
        levels: vec![
            Level { label: LevelLabel::In, components: vec![disc(vec![1], 3)] },
            Level { label: LevelLabel::Neck(1), components: vec![disc(vec![1, 1], 1)] },
            Level { label: LevelLabel::Out, components: vec![strip(vec![1], -1)] },
        ],
        matchings: vec![
            Matching { lower: at(0, 0, 0), upper: at(1, 0, 1) },
            Matching { lower: at(1, 0, 0), upper: at(2, 0, 0) },
        ],
    };
    assert!(validate_type(&three).valid);
    assert_eq!(type_virtual_dimension(&three, n).unwrap(), 0);
    let v = classify(&three, n).unwrap();
    assert_eq!((v.status, v.reason), (Status::Excluded, ReasonTag::TranslationDeformation));

    let single = CombType {
        kind: Kind::Strip,
        levels: vec![Level { label: LevelLabel::Out, components: vec![strip(vec![], 4)] }],
        matchings: vec![],
    };
    assert!(validate_type(&single).valid);
    assert_eq!(type_virtual_dimension(&single, n).unwrap(), 3);

    // Point constraint: rigid when the unconstrained count is n.
    let mut pointed = rigid.clone();
    pointed.kind = Kind::DiscWithPointConstraint;
    pointed.levels[1].components[0] = disc(vec![1], (n - 2) as i64);
    assert_eq!(type_virtual_dimension(&pointed, n).unwrap(), 0);
    assert_eq!(classify(&pointed, n).unwrap().status, Status::Rigid);
}

#[test]
fn minimal_bounds_give_the_minimal_type() {
    let out = enumerate_types(EnumerationBounds::new(2, 1, 1, 1), 2, 0).unwrap();
    let strips: Vec<_> = out.iter().filter(|(t, _)| t.kind == Kind::Strip).collect();
    let rigid: Vec<_> = strips.iter().filter(|(_, v)| v.status == Status::Rigid).collect();
    assert_eq!(rigid.len(), 1);
    let (t, _) = rigid[0];
    assert_eq!(t.levels.len(), 2);
    assert_eq!(t.levels[0].components[0].boundary_punctures, vec![1]);
    // The only other strip type is the same skeleton touching the critical locus.
    assert_eq!(strips.len(), 2);
}

fn check_oracles(out: &[(CombType, lagmut::broken::Verdict)]) {
    for (t, v) in out {
        assert!(validate_type(t).valid);
        if v.status != Status::Rigid {
            continue;
        }
        assert_eq!(t.levels.len(), 2, "{t:?}");
        for c in &t.levels[0].components {
            assert_eq!(c.boundary_punctures, vec![1]);
            assert!(!c.touches_critical_locus);
        }
    }
}

#[test]
fn enumeration_oracles() {
    for n in [2, 3] {
        let out = enumerate_types(EnumerationBounds::new(3, 2, 2, 2), n, 0).unwrap();
        check_oracles(&out);
        assert!(out.iter().any(|(_, v)| v.reason == ReasonTag::TranslationDeformation) || n != 2);
        assert_eq!(out, enumerate_types(EnumerationBounds::new(3, 2, 2, 2), n, 0).unwrap());
    }
    // Generated inner discs with one puncture agree with the index module.
    let out = enumerate_types(EnumerationBounds::new(2, 2, 3, 2), 3, 0).unwrap();
    for (t, _) in &out {
        for c in &t.levels[0].components {
            if let [k] = c.boundary_punctures[..] {
                assert_eq!(c.index, Some(single_puncture_index(3, k).unwrap()));
            }
        }
    }
}

#[test]
fn point_constrained_enumeration() {
    let out = enumerate_types_of_kind(EnumerationBounds::new(3, 2, 2, 2), 2, 0, Kind::DiscWithPointConstraint).unwrap();
    check_oracles(&out);
    assert!(out.iter().all(|(t, _)| t.kind == Kind::DiscWithPointConstraint));
    let rigid = out.iter().filter(|(_, v)| v.status == Status::Rigid).count();
    assert_eq!(rigid, 1);
    assert!(matches!(enumerate_types(EnumerationBounds::default(), 1, 0), Err(lagmut::Error::Domain(_))));
}

fn shuffled(t: &CombType, level: usize, perm: &[usize]) -> CombType {
    let mut s = t.clone();
    let comps = &t.levels[level].components;
    s.levels[level].components = perm.iter().map(|&old| comps[old].clone()).collect();
    let mut inv = vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    for m in &mut s.matchings {
        for end in [&mut m.lower, &mut m.upper] {
            if end.level == level {
                end.component = inv[end.component];
            }
        }
    }
    s
}

fn sample() -> Vec<(CombType, lagmut::broken::Verdict)> {
    enumerate_types(EnumerationBounds::new(3, 3, 2, 2), 2, 0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_ignores_labels_within_a_level(pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let all = sample();
        let (t, v) = &all[pick.index(all.len())];
        for level in 0..t.levels.len() {
            let m = t.levels[level].components.len();
            let mut perm: Vec<usize> = (0..m).collect();
            perm.rotate_left((seed as usize + level) % m.max(1));
            if seed % 2 == 1 {
                perm.reverse();
            }
            let s = shuffled(t, level, &perm);
            prop_assert!(validate_type(&s).valid);
            prop_assert_eq!(&classify(&s, 2).unwrap(), v);
        }
    }

    #[test]
    fn dimension_is_additive(a in -5i64..5, b in -5i64..5, c in -5i64..5, n in 2u32..6) {
        // Two matched pieces joined by one more node lose n − 1.
        let left = two_level(vec![disc(vec![1], a)], strip(vec![1], b), vec![Matching { lower: at(0, 0, 0), upper: at(1, 0, 0) }]);
        let mut joined = left.clone();
        joined.levels[0].components.push(disc(vec![2], c));
        joined.levels[1].components[0].boundary_punctures.push(2);
        joined.matchings.push(Matching { lower: at(0, 1, 0), upper: at(1, 0, 1) });
        let right = CombType {
            kind: Kind::Strip,
            levels: vec![Level { label: LevelLabel::In, components: vec![disc(vec![], c)] }],
            matchings: vec![],
        };
        let sum = type_virtual_dimension(&left, n).unwrap() + type_virtual_dimension(&right, n).unwrap();
        prop_assert_eq!(type_virtual_dimension(&joined, n).unwrap(), sum - (n as i64 - 1));
    }
}

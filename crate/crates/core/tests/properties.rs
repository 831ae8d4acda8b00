mod common;

use proptest::prelude::*;
use vslink::cobordism::{is_string_link_cobordism, Step, SurfaceViolation};
use vslink::invariants::lk_components;
use vslink::moves::site::inverse_move;
use vslink::normalize::{normalize_unwelded_with, NormalizeOptions};
use vslink::oracle::random_diagram;
use vslink::{
    apply_move, enumerate_moves, linking_vector, normalize_cobordism, parse_diagram, replay_trace,
    serialize_diagram, standard_form, surface_linking_vectors, validate_move, Calculus, EnumCaps,
    GaussDiagram, LinkingVector, Move, MoveClass, Trace,
};

fn diagram(max_n: usize, max_k: usize) -> impl Strategy<Value = GaussDiagram> {
    (1..=max_n, 0..=max_k, any::<u64>()).prop_map(|(n, k, seed)| random_diagram(n, k, seed))
}

fn same_n(max_n: usize, max_k: usize, count: usize) -> impl Strategy<Value = Vec<GaussDiagram>> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..=max_k, any::<u64>()), count).prop_map(move |v| {
            v.into_iter()
                .map(|(k, s)| random_diagram(n, k, s))
                .collect()
        })
    })
}

fn one_step(d: &GaussDiagram, cal: Calculus, moves: &[Move]) -> Trace {
    let mut t = Trace::empty(cal, d);
    t.steps = moves
        .iter()
        .map(|&mv| Step {
            mv,
            after: None,
            expands: None,
        })
        .collect();
    t
}

fn lk_vector(n: usize) -> impl Strategy<Value = LinkingVector> {
    proptest::collection::vec(-5i64..=5, n * (n - 1))
        .prop_map(move |v| LinkingVector::new(n, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_round_trip(d in diagram(4, 12)) {
        let text = serialize_diagram(&d).unwrap();
        let back = parse_diagram(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize_diagram(&back).unwrap(), text);
    }

    #[test]
    fn lk_matches_text_oracle(d in diagram(4, 12)) {
        let text = serialize_diagram(&d).unwrap();
        prop_assert_eq!(linking_vector(&d).entries().to_vec(), common::lk_entries(&text));
    }

    #[test]
    fn sum_is_associative_with_unit(v in same_n(3, 6, 3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let left = a.connected_sum(b).unwrap().connected_sum(c).unwrap();
        let right = a.connected_sum(&b.connected_sum(c).unwrap()).unwrap();
        prop_assert!(left.is_isomorphic(&right));
        let e = GaussDiagram::empty(a.strands());
        prop_assert!(a.connected_sum(&e).unwrap().is_isomorphic(a));
        prop_assert!(e.connected_sum(a).unwrap().is_isomorphic(a));
    }

    #[test]
    fn lk_is_additive(v in same_n(4, 8, 2)) {
        let s = v[0].connected_sum(&v[1]).unwrap();
        prop_assert_eq!(linking_vector(&s), &linking_vector(&v[0]) + &linking_vector(&v[1]));
    }

    #[test]
    fn inverse_negates_and_is_involutive(d in diagram(4, 10)) {
        let inv = d.concordance_inverse();
        prop_assert!(inv.is_valid());
        prop_assert_eq!(linking_vector(&inv), -&linking_vector(&d));
        prop_assert!(inv.concordance_inverse().is_isomorphic(&d));
        let sum = d.connected_sum(&inv).unwrap();
        prop_assert!(linking_vector(&sum).entries().iter().all(|&x| x == 0));
    }

    #[test]
    fn closure_keeps_chords_and_linking(d in diagram(4, 10)) {
        let (c, index) = d.closure_components();
        prop_assert!(c.is_valid());
        prop_assert_eq!(c.chords(), d.chords());
        prop_assert_eq!(c.closed_count(), d.strands());
        let lk = linking_vector(&d);
        for ((i, j), v) in lk.iter() {
            prop_assert_eq!(lk_components(&c, index[i - 1], index[j - 1]).unwrap(), v);
        }
    }

    #[test]
    fn standard_form_realizes_vector((n, v) in (1usize..=4).prop_flat_map(|n| (Just(n), lk_vector(n)))) {
        let s = standard_form(n, &v).unwrap();
        prop_assert_eq!(linking_vector(&s), v.clone());
        let text = serialize_diagram(&s).unwrap();
        prop_assert_eq!(common::lk_entries(&text), v.entries().to_vec());
        prop_assert_eq!(s.chord_count() as i64, v.entries().iter().map(|x| x.abs()).sum::<i64>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn enumerated_moves_validate_and_keep_lk(d in diagram(3, 6), cal_ix in 0usize..5) {
        let cal = Calculus::ALL[cal_ix];
        let caps = EnumCaps { max_chords: d.chord_count() + 2, max_closed: 1 };
        let lk = linking_vector(&d);
        for m in enumerate_moves(&d, cal, caps) {
            prop_assert!(validate_move(&d, &m, cal).is_ok(), "{}", m);
            let next = apply_move(&d, &m).unwrap();
            prop_assert!(next.is_valid(), "{}", m);
            if m.class() != MoveClass::Saddle {
                prop_assert_eq!(linking_vector(&next), lk.clone(), "{}", m);
            }
            let frames = surface_linking_vectors(&d, &one_step(&d, cal, &[m])).unwrap();
            prop_assert_eq!(&frames[1], &lk, "{}", m);
            let delta = next.chord_count() as isize - d.chord_count() as isize;
            prop_assert_eq!(delta, m.chord_delta(), "{}", m);
        }
    }

    #[test]
    fn every_move_has_an_inverse(d in diagram(3, 6), cal_ix in 0usize..5) {
        let cal = Calculus::ALL[cal_ix];
        let caps = EnumCaps { max_chords: d.chord_count() + 2, max_closed: 1 };
        for m in enumerate_moves(&d, cal, caps) {
            let after = apply_move(&d, &m).unwrap();
            let inv = inverse_move(&d, &m, &after).unwrap();
            let expected = match m.class() {
                MoveClass::Birth => MoveClass::Death,
                MoveClass::Death => MoveClass::Birth,
                c => c,
            };
            prop_assert_eq!(inv.mv.class(), expected);
            let back = apply_move(&after, &inv.mv).unwrap();
            prop_assert!(back.is_isomorphic(&d), "{} then {}", m, inv.mv);
        }
    }

    #[test]
    fn normalizers_reach_standard_form(d in diagram(4, 10)) {
        let target = standard_form(d.strands(), &linking_vector(&d)).unwrap();
        for expand_mix in [false, true] {
            let (n, t) = normalize_unwelded_with(&d, NormalizeOptions { expand_mix }).unwrap();
            prop_assert_eq!(n.canonical_relabel(), target.clone());
            prop_assert_eq!(replay_trace(&d, &t).unwrap(), n);
        }
        let (n, t) = normalize_cobordism(&d).unwrap();
        prop_assert_eq!(n.canonical_relabel(), target.clone());
        let frames = surface_linking_vectors(&d, &t).unwrap();
        prop_assert!(frames.iter().all(|v| *v == linking_vector(&d)));
    }

    #[test]
    fn cobordism_walks_keep_surface_lk(d in diagram(3, 5), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let caps = EnumCaps { max_chords: d.chord_count() + 2, max_closed: 2 };
        let (mut cur, mut moves) = (d.clone(), Vec::new());
        for _ in 0..12 {
            let Some(&m) = enumerate_moves(&cur, Calculus::Cobordism, caps).choose(&mut rng) else { break };
            cur = apply_move(&cur, &m).unwrap();
            moves.push(m);
        }
        let t = one_step(&d, Calculus::Cobordism, &moves);
        let mixing = is_string_link_cobordism(&d, &t)
            .unwrap()
            .iter()
            .any(|v| matches!(v, SurfaceViolation::StrandMixing(..)));
        let frames = surface_linking_vectors(&d, &t).unwrap();
        if !mixing {
            prop_assert!(frames.iter().all(|v| *v == linking_vector(&d)));
        }
    }
}

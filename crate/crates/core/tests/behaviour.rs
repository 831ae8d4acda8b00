mod common;

use vslink::cobordism::{replay_states, Step};
use vslink::oracle::{bfs_reachable, check_classification, SearchCaps};
use vslink::{
    apply_move, commute_via_saddles, enumerate_moves, is_concordance, linking_vector, lk_over,
    normalize_cobordism, normalize_unwelded, parse_diagram, replay_trace, serialize_diagram,
    standard_form, surface_stats, trivialize_inverse_sum, ulk, validate_move, welded_unknot_trace,
    Calculus, CompRef, EnumCaps, GaussDiagram, LinkingVector, Move, MoveClass, Trace,
};

const ONE_CHORD: &str = "gsld 1\nstrands 2\nchord 1 +\ncomp s1: T1\ncomp s2: H1\n";

fn d(text: &str) -> GaussDiagram {
    parse_diagram(text).unwrap()
}

fn mv(s: &str) -> Move {
    s.parse().unwrap()
}

fn lk(n: usize, v: &[i64]) -> LinkingVector {
    LinkingVector::new(n, v.to_vec()).unwrap()
}

#[test]
fn sum_of_two_single_chords() {
    let a = d(ONE_CHORD);
    let s = a.connected_sum(&a).unwrap();
    assert_eq!(linking_vector(&s), lk(2, &[2, 0]));
    assert_eq!(
        common::lk_entries(&serialize_diagram(&s).unwrap()),
        vec![2, 0]
    );
}

#[test]
fn inverse_of_single_chord() {
    let inv = d(ONE_CHORD).concordance_inverse();
    assert_eq!(
        serialize_diagram(&inv).unwrap(),
        "gsld 1\nstrands 2\nchord 1 -\ncomp s1: T1\ncomp s2: H1\n"
    );
    assert_eq!(linking_vector(&inv), lk(2, &[-1, 0]));
}

#[test]
fn three_strand_lexicographic_order() {
    let g = d("gsld 1\nstrands 3\nchord 1 +\ncomp s1: T1\ncomp s2: H1\ncomp s3:\n");
    assert_eq!(linking_vector(&g).entries(), &[1, 0, 0, 0, 0, 0]);
}

#[test]
fn standard_form_two_strands() {
    let s = standard_form(2, &lk(2, &[2, -1])).unwrap();
    assert_eq!(s.chord_count(), 3);
    assert_eq!(lk_over(&s, 1, 2).unwrap(), 2);
    assert_eq!(lk_over(&s, 2, 1).unwrap(), -1);
    assert_eq!(ulk(&s, 1, 2).unwrap(), 1);
    assert_eq!(ulk(&s, 2, 1).unwrap(), 1);
    assert_eq!(vslink::self_chord_count(&s, 1).unwrap(), 0);
}

#[test]
fn kink_normalizes_to_empty() {
    let k = d("gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1 H1\n");
    let (n, t) = normalize_unwelded(&k).unwrap();
    assert_eq!(n, GaussDiagram::empty(1));
    assert_eq!(replay_trace(&k, &t).unwrap(), n);
    let (n, t) = normalize_cobordism(&k).unwrap();
    assert_eq!(n, GaussDiagram::empty(1));
    assert_eq!(replay_trace(&k, &t).unwrap(), n);
}

#[test]
fn inverse_sum_of_kink_is_a_concordance() {
    let k = d("gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1 H1\n");
    let t = trivialize_inverse_sum(&k).unwrap();
    let start = vslink::normalize::inverse_sum(&k).unwrap();
    assert_eq!(replay_trace(&start, &t).unwrap(), GaussDiagram::empty(1));
    let surface = surface_stats(&start, &t).unwrap();
    assert_eq!(surface.saddles(), surface.deaths());
    assert!(surface.components.iter().all(|c| c.genus() == 0));
    assert!(is_concordance(&start, &t).unwrap());
}

#[test]
fn welded_unknot_of_two_crossed_chords() {
    let g = d("gsld 1\nstrands 1\nchord 1 +\nchord 2 +\ncomp s1: T1 T2 H1 H2\n");
    let t = welded_unknot_trace(&g).unwrap();
    assert_eq!(t.calculus, Calculus::WeldedConcordance);
    assert_eq!(replay_trace(&g, &t).unwrap(), GaussDiagram::empty(1));
    let count = |c| t.count(c);
    assert_eq!(
        t.moves()
            .filter(|m| matches!(m, Move::R1Add { .. }))
            .count(),
        2
    );
    assert_eq!(count(MoveClass::Saddle), 2);
    assert_eq!(
        t.moves()
            .filter(|m| matches!(m, Move::R2Remove { .. }))
            .count(),
        2
    );
    assert_eq!(count(MoveClass::Death), 2);
    assert_eq!(count(MoveClass::F2) + count(MoveClass::MixedCommute), 0);
    let s = surface_stats(&g, &t).unwrap();
    assert_eq!((s.saddles(), s.births(), s.deaths()), (2, 0, 2));
    assert!(is_concordance(&g, &t).unwrap());
}

#[test]
fn commute_macro_adds_one_handle() {
    let g = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: T1 H2\ncomp s2: H1 T2\n");
    let (after, moves) = commute_via_saddles(&g, CompRef::Strand(1), 0).unwrap();
    assert_eq!(moves.len(), 2);
    assert!(moves.iter().all(|m| m.class() == MoveClass::Saddle));
    assert_eq!(
        serialize_diagram(&after).unwrap(),
        "gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: H2 T1\ncomp s2: H1 T2\n"
    );
    let mut t = Trace::empty(Calculus::Cobordism, &g);
    t.steps = moves
        .into_iter()
        .map(|mv| Step {
            mv,
            after: None,
            expands: None,
        })
        .collect();
    let s = surface_stats(&g, &t).unwrap();
    let c = s.of_strand(1).unwrap();
    assert_eq!((c.saddles, c.births, c.deaths, c.genus()), (2, 0, 0, 1));
    assert!(vslink::is_string_link_cobordism(&g, &t).unwrap().is_empty());
    assert!(!is_concordance(&g, &t).unwrap());
}

#[test]
fn move_preconditions() {
    let tt = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: T1 T2\ncomp s2: H1 H2\n");
    assert!(validate_move(&tt, &mv("F1 comp=s1 pos=0"), Calculus::Welded).is_ok());
    let th = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: T1 H2\ncomp s2: H1 T2\n");
    assert!(validate_move(&th, &mv("F1 comp=s1 pos=0"), Calculus::Welded).is_err());
    assert!(validate_move(&th, &mv("MIX comp=s1 pos=0"), Calculus::Welded).is_err());
    assert!(validate_move(&th, &mv("MIX comp=s1 pos=0"), Calculus::Unwelded).is_ok());
    let welded = enumerate_moves(&tt, Calculus::Welded, EnumCaps::none(&tt));
    assert_eq!(
        welded.iter().filter(|m| m.class() == MoveClass::F1).count(),
        1
    );
    let empty = GaussDiagram::empty(1);
    assert!(enumerate_moves(&empty, Calculus::Unwelded, EnumCaps::none(&empty)).is_empty());
}

#[test]
fn saddle_cuts_off_a_loop() {
    let g = d("gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1 H1\n");
    let s = apply_move(&g, &mv("SAD arc1=s1.0 arc2=s1.2")).unwrap();
    assert_eq!(
        serialize_diagram(&s).unwrap(),
        "gsld 1\nstrands 1\nchord 1 +\ncomp s1:\ncomp c: T1 H1\n"
    );
}

#[test]
fn r1_add_then_remove() {
    let g = d(ONE_CHORD);
    let k = apply_move(&g, &mv("R1+ arc=s2.1 sign=+ order=TH")).unwrap();
    assert_eq!(apply_move(&k, &mv("R1- chord=2")).unwrap(), g);
}

#[test]
fn search_from_single_chord_keeps_lk() {
    let g = d(ONE_CHORD);
    let caps = SearchCaps {
        max_extra_chords: 1,
        max_closed: 1,
        max_states: 100_000,
    };
    let r = bfs_reachable(&g, Calculus::Unwelded, 4, caps, &[]);
    assert_eq!(r.lk_values.iter().collect::<Vec<_>>(), vec![&vec![1, 0]]);
    assert!(!r.truncated);
    let zero = bfs_reachable(&g, Calculus::Unwelded, 0, caps, &[]);
    assert_eq!((zero.explored, zero.distinct), (1, 1));
}

#[test]
fn identical_and_separated_pairs() {
    let g = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 -\ncomp s1: T1 H2\ncomp s2: T2 H1\n");
    for cal in [Calculus::Unwelded, Calculus::Cobordism] {
        let e = vslink::equivalent(&g, &g, cal).unwrap();
        assert!(e.verdict);
        let t = e.certificate.unwrap();
        assert!(replay_trace(&g, &t).unwrap().is_isomorphic(&g));
        let other = vslink::equivalent(&g, &d(ONE_CHORD), cal).unwrap();
        assert!(!other.verdict);
        assert_eq!(other.difference, Some(((2, 1), -1, 0)));
    }
    assert!(check_classification(30, 3, 6, 1).passed());
}

#[test]
fn certificate_frames_are_valid() {
    let a = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: H2 T1\ncomp s2: T2 H1\n");
    let b = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: T1 H2\ncomp s2: H1 T2\n");
    let e = vslink::equivalent(&a, &b, Calculus::Cobordism).unwrap();
    let t = e.certificate.unwrap();
    let states = replay_states(&a, &t).unwrap();
    assert!(states.iter().all(|s| s.is_valid()));
    assert!(states.last().unwrap().is_isomorphic(&b));
    assert_eq!(
        vslink::oracle::replay::replay_independently(&a, &t).map(|_| ()),
        Ok(())
    );
}

//! Standard forms, normalizers and the equivalence decision.

use std::collections::BTreeMap;

use crate::cobordism::{replay_states, welded_unknot_trace, Trace, TraceBuilder};
use crate::diagram::{Arc, ChordId, CompRef, Component, Endpoint, GaussDiagram, Role, Sign};
use crate::error::{Error, MoveError, Result};
use crate::invariants::{linking_vector, LinkingVector};
use crate::moves::site::{inverse_move, transport};
use crate::moves::{apply_move, Calculus, Move, R2Variant};

/// The standard diagram realizing `v`: no self-chords; for each pair
/// `(i, j)` a block of `|v(i,j)|` parallel chords of sign `sgn v(i,j)` with
/// tails on strand `i` and heads on strand `j`; on each strand the blocks
/// touching it in lexicographic order of their pair. Chord ids follow first
/// appearance.
pub fn standard_form(n: usize, v: &LinkingVector) -> Result<GaussDiagram> {
    let expected = n * n.saturating_sub(1);
    if v.strands() != n || v.len() != expected {
        return Err(Error::Arity {
            strands: n,
            expected,
            found: v.len(),
        });
    }
    let mut seqs = vec![Vec::new(); n];
    let mut chords = BTreeMap::new();
    let mut next = 1u32;
    let mut blocks = Vec::new();
    for ((i, j), val) in v.iter() {
        let sign = match Sign::of(val.signum()) {
            Some(s) => s,
            None => continue,
        };
        let ids: Vec<ChordId> = (0..val.unsigned_abs())
            .map(|k| ChordId(next + k as u32))
            .collect();
        next += ids.len() as u32;
        for &id in &ids {
            chords.insert(id, sign);
        }
        blocks.push(((i, j), ids));
    }
    for s in 1..=n {
        for ((i, j), ids) in &blocks {
            if *i == s {
                seqs[s - 1].extend(ids.iter().map(|&c| Endpoint::tail(c)));
            } else if *j == s {
                seqs[s - 1].extend(ids.iter().map(|&c| Endpoint::head(c)));
            }
        }
    }
    let comps = seqs
        .into_iter()
        .enumerate()
        .map(|(k, e)| Component::open(k + 1, e))
        .collect();
    Ok(GaussDiagram::from_parts(n, comps, chords).canonical_relabel())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct NormalizeOptions {
    /// Replace each mixed commute by primitive R2/R3/F1/F2 steps.
    pub expand_mix: bool,
}

#[derive(Clone, Copy)]
enum Commute {
    Forbidden { expand_mix: bool },
    Saddles,
}

fn require_string_link(d: &GaussDiagram) -> Result<()> {
    d.ensure_valid()?;
    if !d.is_string_link() {
        return Err(Error::ClosedComponents);
    }
    Ok(())
}

fn strand_seq(d: &GaussDiagram, s: usize) -> &[Endpoint] {
    &d.strand(s).expect("strand exists").endpoints
}

fn arc_at(d: &GaussDiagram, ci: usize, idx: usize) -> Arc {
    let c = &d.components()[ci];
    let idx = if c.is_closed() && idx >= c.len() {
        idx - c.len()
    } else {
        idx
    };
    Arc::new(d.comp_ref(ci), idx)
}

/// Swap the endpoints at `pos` and `pos + 1` of strand `s`.
fn swap_adjacent(b: &mut TraceBuilder, s: usize, pos: usize, how: Commute) -> Result<()> {
    let comp = CompRef::Strand(s);
    match how {
        Commute::Saddles => {
            let (_, moves) = commute_via_saddles(b.current(), comp, pos)?;
            b.extend(moves)?;
        }
        Commute::Forbidden { expand_mix } => {
            let seq = strand_seq(b.current(), s);
            let (x, y) = (seq[pos], seq[pos + 1]);
            let mv = match (x.role, y.role) {
                (Role::Tail, Role::Tail) => Move::F1 { comp, pos },
                (Role::Head, Role::Head) => Move::F2 { comp, pos },
                _ => Move::MixedCommute { comp, pos },
            };
            if expand_mix && matches!(mv, Move::MixedCommute { .. }) {
                let steps = expand_mixed_commute(b.current(), comp, pos)?;
                for m in steps {
                    b.push_step(m, Some(mv))?;
                }
            } else {
                b.push(mv)?;
            }
        }
    }
    Ok(())
}

/// Primitive R2/R3/F1/F2 steps with the effect of a mixed commute at
/// `(comp, pos)`. The head of chord `a` and the tail of chord `c` are
/// swapped as the middle pair of an R3 move whose third chord comes from a
/// temporary R2 pair placed beside `T_a` and `H_c`.
pub fn expand_mixed_commute(d: &GaussDiagram, comp: CompRef, pos: usize) -> Result<Vec<Move>> {
    let target = apply_move(d, &Move::MixedCommute { comp, pos })?;
    let c0 = d.component(comp).ok_or(MoveError::NoComponent(comp))?;
    let (x, y) = (
        c0.endpoints[pos],
        c0.endpoints[c0.successor(pos).expect("checked by apply")],
    );
    let (ha, tc) = if x.role == Role::Head { (x, y) } else { (y, x) };
    let (a, c) = (ha.chord, tc.chord);
    let (tci, tpos) = d.locate(Endpoint::tail(a)).expect("tail of a");
    let (hci, hpos) = d.locate(Endpoint::head(c)).expect("head of c");
    let fresh = d.next_chord_id();
    let pair = [fresh, ChordId(fresh.0 + 1)];
    for t_off in [1, 0] {
        for h_off in [0, 1] {
            for variant in [R2Variant::Parallel, R2Variant::Antiparallel] {
                for sign in [Sign::Plus, Sign::Minus] {
                    for first in [Role::Tail, Role::Head] {
                        for b in pair {
                            let add = Move::R2Add {
                                tails: arc_at(d, tci, tpos + t_off),
                                heads: arc_at(d, hci, hpos + h_off),
                                variant,
                                sign,
                                first,
                            };
                            if let Some(steps) = try_expansion(d, add, a, b, c, pair, &target) {
                                return Ok(steps);
                            }
                        }
                    }
                }
            }
        }
    }
    Err(Error::Unsupported(format!(
        "no primitive expansion for MIX comp={comp} pos={pos}"
    )))
}

fn try_expansion(
    d: &GaussDiagram,
    add: Move,
    a: ChordId,
    b: ChordId,
    c: ChordId,
    pair: [ChordId; 2],
    target: &GaussDiagram,
) -> Option<Vec<Move>> {
    let mut steps = vec![add];
    let mut cur = apply_move(d, &add).ok()?;
    let r3 = crate::moves::R3_TABLE
        .iter()
        .enumerate()
        .find_map(|(k, _)| {
            let m = Move::R3 {
                a,
                b,
                c,
                pattern: crate::moves::R3PatternId(k as u8),
            };
            apply_move(&cur, &m).ok().map(|next| (m, next))
        })?;
    steps.push(r3.0);
    cur = r3.1;
    // Each pair of the temporary chords is now split by one endpoint.
    for role in [Role::Tail, Role::Head] {
        let (p, q) = (
            Endpoint {
                chord: pair[0],
                role,
            },
            Endpoint {
                chord: pair[1],
                role,
            },
        );
        let (ci, pp) = cur.locate(p)?;
        let (cj, pq) = cur.locate(q)?;
        let comp = &cur.components()[ci];
        if ci != cj {
            return None;
        }
        if comp.adjacent(pp, pq) {
            continue;
        }
        let mid = (0..comp.len())
            .find(|&z| comp.follows(pp, z) && comp.follows(z, pq))
            .or_else(|| (0..comp.len()).find(|&z| comp.follows(pq, z) && comp.follows(z, pp)))?;
        let cref = cur.comp_ref(ci);
        let m = match role {
            Role::Tail => Move::F1 {
                comp: cref,
                pos: mid,
            },
            Role::Head => Move::F2 {
                comp: cref,
                pos: mid,
            },
        };
        cur = apply_move(&cur, &m).ok()?;
        steps.push(m);
    }
    let rm = Move::R2Remove {
        a: pair[0],
        b: pair[1],
    };
    cur = apply_move(&cur, &rm).ok()?;
    steps.push(rm);
    (cur == *target).then_some(steps)
}

/// Swap the adjacent endpoints at `(pos, pos + 1)` of `comp` with two
/// saddles: the pair is cut off onto a small loop, which is then spliced
/// back in at the gap it left, entered at its second endpoint.
pub fn commute_via_saddles(
    d: &GaussDiagram,
    comp: CompRef,
    pos: usize,
) -> Result<(GaussDiagram, Vec<Move>)> {
    let ci = d
        .component_index(comp)
        .ok_or(MoveError::NoComponent(comp))?;
    let c = &d.components()[ci];
    let m = c.len();
    let out_of_range = MoveError::PositionOutOfRange { comp, pos };
    let in_range = if c.is_closed() {
        m >= 3 && pos < m
    } else {
        pos + 1 < m
    };
    if !in_range {
        return Err(out_of_range.into());
    }
    let y = c.endpoints[(pos + 1) % m];
    let after_pair = (pos + 2) % (if c.is_closed() { m } else { m + 1 });
    let mv1 = Move::Saddle {
        arc1: Arc::new(comp, pos),
        arc2: Arc::new(comp, after_pair),
    };
    let d1 = apply_move(d, &mv1)?;
    let rest_gap = if c.is_closed() || pos + 2 < m {
        let follower = c.endpoints[(pos + 2) % m];
        let (cj, p) = d1.locate(follower).expect("follower");
        Arc::new(d1.comp_ref(cj), p)
    } else {
        let CompRef::Strand(s) = comp else {
            unreachable!()
        };
        Arc::new(comp, d1.strand(s).expect("strand").len())
    };
    let (yc, yp) = d1.locate(y).expect("moved endpoint");
    let mv2 = Move::Saddle {
        arc1: rest_gap,
        arc2: Arc::new(d1.comp_ref(yc), yp),
    };
    let d2 = apply_move(&d1, &mv2)?;
    Ok((d2, vec![mv1, mv2]))
}

fn self_chords(d: &GaussDiagram) -> Vec<(ChordId, usize)> {
    d.chord_components()
        .into_iter()
        .filter(|(_, (t, h))| t == h)
        .map(|(id, (t, _))| (id, t))
        .collect()
}

/// Remove every self-chord, in ascending id order.
fn remove_self_chords(b: &mut TraceBuilder, how: Commute) -> Result<()> {
    for (c, _) in self_chords(b.current()) {
        let cur = b.current();
        let (ci, pt) = cur.locate(Endpoint::tail(c)).expect("tail");
        let (_, ph) = cur.locate(Endpoint::head(c)).expect("head");
        let s = match cur.comp_ref(ci) {
            CompRef::Strand(s) => s,
            CompRef::Closed(_) => unreachable!("string-link input"),
        };
        let (p, mut q) = (pt.min(ph), pt.max(ph));
        match how {
            Commute::Forbidden { .. } => {
                while q > p + 1 {
                    swap_adjacent(b, s, q - 1, how)?;
                    q -= 1;
                }
                b.push(Move::R1Remove { chord: c })?;
            }
            Commute::Saddles if q == p + 1 => b.push(Move::R1Remove { chord: c })?,
            Commute::Saddles => {
                let comp = CompRef::Strand(s);
                let inner = strand_seq(cur, s)[p + 1];
                b.push(Move::Saddle {
                    arc1: Arc::new(comp, p + 1),
                    arc2: Arc::new(comp, q),
                })?;
                b.push(Move::R1Remove { chord: c })?;
                let (lc, lp) = b.current().locate(inner).expect("inner endpoint");
                let back = Arc::new(b.current().comp_ref(lc), lp);
                b.push(Move::Saddle {
                    arc1: Arc::new(comp, p),
                    arc2: back,
                })?;
            }
        }
    }
    Ok(())
}

/// Sort every strand into lexicographic block order by adjacent swaps.
fn sort_blocks(b: &mut TraceBuilder, how: Commute) -> Result<()> {
    let d = b.current().clone();
    let n = d.strands();
    // (tail strand, head strand) of each chord.
    let mut strand_of = BTreeMap::new();
    for (id, (t, h)) in d.chord_components() {
        let s = |ci: usize| match d.comp_ref(ci) {
            CompRef::Strand(s) => s,
            CompRef::Closed(_) => unreachable!("string-link input"),
        };
        strand_of.insert(id, (s(t), s(h)));
    }
    let tail_rank = |e: Endpoint| -> usize {
        let (i, _) = strand_of[&e.chord];
        strand_seq(&d, i)
            .iter()
            .position(|&x| x == Endpoint::tail(e.chord))
            .expect("tail")
    };
    for s in 1..=n {
        let mut target: Vec<Endpoint> = strand_seq(&d, s).to_vec();
        target.sort_by_key(|&e| {
            let key = strand_of[&e.chord];
            let within = if e.role == Role::Head {
                tail_rank(e)
            } else {
                0
            };
            (key, within)
        });
        for (k, want) in target.iter().enumerate() {
            let mut q = strand_seq(b.current(), s)
                .iter()
                .position(|x| x == want)
                .expect("present");
            while q > k {
                swap_adjacent(b, s, q - 1, how)?;
                q -= 1;
            }
        }
    }
    Ok(())
}

/// Cancel opposite-sign neighbours inside each block, rightmost first.
fn cancel_blocks(b: &mut TraceBuilder) -> Result<()> {
    let n = b.current().strands();
    for i in 1..=n {
        loop {
            let cur = b.current();
            let seq = strand_seq(cur, i);
            let heads = cur.chord_components();
            let head_comp = |c: ChordId| heads[&c].1;
            let mut found = None;
            for k in (0..seq.len().saturating_sub(1)).rev() {
                let (x, y) = (seq[k], seq[k + 1]);
                if x.role == Role::Tail
                    && y.role == Role::Tail
                    && head_comp(x.chord) == head_comp(y.chord)
                    && cur.sign(x.chord) != cur.sign(y.chord)
                {
                    found = Some((x.chord, y.chord));
                    break;
                }
            }
            match found {
                Some((x, y)) => b.push(Move::R2Remove { a: x, b: y })?,
                None => break,
            }
        }
    }
    Ok(())
}

fn normalize_with(d: &GaussDiagram, cal: Calculus, how: Commute) -> Result<(GaussDiagram, Trace)> {
    require_string_link(d)?;
    let mut b = TraceBuilder::new(cal, d);
    remove_self_chords(&mut b, how)?;
    sort_blocks(&mut b, how)?;
    cancel_blocks(&mut b)?;
    Ok(b.finish())
}

/// Reduce a string-link diagram to its standard form with unwelded moves.
/// The result equals [`standard_form`] of its linking vector up to chord
/// renaming; the trace replays from `d` to it.
pub fn normalize_unwelded(d: &GaussDiagram) -> Result<(GaussDiagram, Trace)> {
    normalize_unwelded_with(d, NormalizeOptions::default())
}

pub fn normalize_unwelded_with(
    d: &GaussDiagram,
    opts: NormalizeOptions,
) -> Result<(GaussDiagram, Trace)> {
    normalize_with(
        d,
        Calculus::Unwelded,
        Commute::Forbidden {
            expand_mix: opts.expand_mix,
        },
    )
}

/// Reduce a string-link diagram to its standard form with Reidemeister and
/// cobordism moves only; commutations use [`commute_via_saddles`] and
/// non-adjacent self-chords are isolated by a split saddle.
pub fn normalize_cobordism(d: &GaussDiagram) -> Result<(GaussDiagram, Trace)> {
    normalize_with(d, Calculus::Cobordism, Commute::Saddles)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub verdict: bool,
    /// A trace from the first diagram to one isomorphic to the second.
    pub certificate: Option<Trace>,
    /// First linking-vector entry where the diagrams differ.
    pub difference: Option<((usize, usize), i64, i64)>,
}

fn normal_trace(d: &GaussDiagram, cal: Calculus) -> Result<(GaussDiagram, Trace)> {
    match cal {
        Calculus::Unwelded => normalize_unwelded(d),
        Calculus::Cobordism => normalize_cobordism(d),
        Calculus::WeldedConcordance => {
            let t = welded_unknot_trace(d)?;
            Ok((GaussDiagram::empty(1), t))
        }
        other => Err(Error::Unsupported(format!(
            "no decision procedure for the {other} calculus"
        ))),
    }
}

/// Decide equivalence by comparing linking vectors. Equivalent diagrams get
/// a certificate: the normalizing trace of `d1` followed by the inverted
/// normalizing trace of `d2`.
pub fn equivalent(d1: &GaussDiagram, d2: &GaussDiagram, cal: Calculus) -> Result<Equivalence> {
    if d1.strands() != d2.strands() {
        return Err(Error::StrandMismatch(d1.strands(), d2.strands()));
    }
    require_string_link(d1)?;
    require_string_link(d2)?;
    match cal {
        Calculus::Unwelded | Calculus::Cobordism => {}
        Calculus::WeldedConcordance if d1.strands() == 1 => {}
        Calculus::WeldedConcordance => {
            return Err(Error::Unsupported(format!(
                "welded concordance is decided only for 1-strand diagrams (got {}); no decision procedure is known for two or more strands",
                d1.strands()
            )))
        }
        other => return Err(Error::Unsupported(format!("no decision procedure for the {other} calculus"))),
    }
    let (l1, l2) = (linking_vector(d1), linking_vector(d2));
    if let Some(diff) = l1.first_difference(&l2) {
        return Ok(Equivalence {
            verdict: false,
            certificate: None,
            difference: Some(diff),
        });
    }
    let (_, t1) = normal_trace(d1, cal)?;
    let (n2, t2) = normal_trace(d2, cal)?;
    let mut b = TraceBuilder::new(cal, d1);
    for s in &t1.steps {
        b.push_step(s.mv, s.expands)?;
    }
    let states = replay_states(d2, &t2)?;
    debug_assert_eq!(states.last(), Some(&n2));
    let mut phi = n2
        .positional_map(b.current())
        .ok_or_else(|| Error::Unsupported("normal forms differ in shape".into()))?;
    for k in (0..t2.steps.len()).rev() {
        let (before, after) = (&states[k], &states[k + 1]);
        let inv = inverse_move(before, &t2.steps[k].mv, after)?;
        let here = b.current().clone();
        let mv = transport(&inv.mv, after, &here, &phi)?;
        b.push(mv)?;
        let fresh = here.next_chord_id().0;
        let mut next = BTreeMap::new();
        for &id in before.chords().keys() {
            let image = match inv.restores.iter().position(|&r| r == id) {
                Some(k) => ChordId(fresh + k as u32),
                None => *phi.get(&id).ok_or(MoveError::Untransportable)?,
            };
            next.insert(id, image);
        }
        phi = next;
    }
    let (_, certificate) = b.finish();
    Ok(Equivalence {
        verdict: true,
        certificate: Some(certificate),
        difference: None,
    })
}

/// `d # inverse(d)`, the start of [`trivialize_inverse_sum`].
pub fn inverse_sum(d: &GaussDiagram) -> Result<GaussDiagram> {
    d.connected_sum(&d.concordance_inverse())
}

/// A genus-zero welded cobordism from `d # inverse(d)` to the trivial
/// diagram. Each round cancels a pair of mirror chords whose endpoints of one
/// role already meet; if their other endpoints are apart, one saddle first
/// cuts the segment between them onto a loop, where they meet cyclically.
/// Emptied loops die at the end.
pub fn trivialize_inverse_sum(d: &GaussDiagram) -> Result<Trace> {
    require_string_link(d)?;
    let offset = d.chords().keys().next_back().map_or(0, |c| c.0);
    let mirror = |c: ChordId| {
        if c.0 > offset {
            ChordId(c.0 - offset)
        } else {
            ChordId(c.0 + offset)
        }
    };
    let start = inverse_sum(d)?;
    let mut b = TraceBuilder::new(Calculus::WeldedConcordance, &start);
    while b.current().chord_count() > 0 {
        let cur = b.current();
        let mut pair = None;
        'search: for c in cur.components() {
            for p in 0..c.len() {
                if let Some(q) = c.successor(p) {
                    let (e, f) = (c.endpoints[p], c.endpoints[q]);
                    if f.role == e.role && f.chord == mirror(e.chord) {
                        pair = Some((e, f));
                        break 'search;
                    }
                }
            }
        }
        let (e, f) = pair.ok_or_else(|| Error::Unsupported("no mirror pair to cancel".into()))?;
        let (ci, pe) = cur.locate(e.partner()).expect("partner");
        let (cj, pf) = cur.locate(f.partner()).expect("partner");
        if ci != cj {
            return Err(Error::Unsupported(
                "mirror endpoints on different components".into(),
            ));
        }
        let comp = &cur.components()[ci];
        if !comp.adjacent(pe, pf) {
            // Cut from the earlier endpoint to just past the later one.
            let (lo, hi) = if comp.is_closed() || pe < pf {
                (pe, pf)
            } else {
                (pf, pe)
            };
            let end = if comp.is_closed() {
                (hi + 1) % comp.len()
            } else {
                hi + 1
            };
            let r = cur.comp_ref(ci);
            b.push(Move::Saddle {
                arc1: Arc::new(r, lo),
                arc2: Arc::new(r, end),
            })?;
        }
        b.push(Move::R2Remove {
            a: e.chord,
            b: f.chord,
        })?;
    }
    while b.current().closed_count() > 0 {
        b.push(Move::Death {
            comp: CompRef::Closed(1),
        })?;
    }
    Ok(b.finish().1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::{is_concordance, replay_trace, surface_stats};
    use crate::gsld::{parse_diagram, serialize_diagram};
    use crate::moves::MoveClass;

    fn d(t: &str) -> GaussDiagram {
        parse_diagram(t).unwrap()
    }

    #[test]
    fn standard_form_two_strands() {
        let v = LinkingVector::new(2, vec![2, -1]).unwrap();
        let s = standard_form(2, &v).unwrap();
        assert_eq!(
            serialize_diagram(&s).unwrap(),
            "gsld 1\nstrands 2\nchord 1 +\nchord 2 +\nchord 3 -\ncomp s1: T1 T2 H3\ncomp s2: H1 H2 T3\n"
        );
        assert_eq!(linking_vector(&s), v);
        assert_eq!(s.canonical_relabel(), s);
        assert!(standard_form(3, &v).is_err());
    }

    #[test]
    fn kink_unwelded() {
        let g = d("gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1 H1\n");
        let (n, t) = normalize_unwelded(&g).unwrap();
        assert_eq!(n, GaussDiagram::empty(1));
        assert_eq!(replay_trace(&g, &t).unwrap(), n);
    }

    #[test]
    fn unwelded_matches_standard_form() {
        let g = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 -\nchord 3 +\nchord 4 +\ncomp s1: H2 T1 T4 H4 T3\ncomp s2: H3 T2 H1\n");
        let v = linking_vector(&g);
        for opts in [
            NormalizeOptions { expand_mix: false },
            NormalizeOptions { expand_mix: true },
        ] {
            let (n, t) = normalize_unwelded_with(&g, opts).unwrap();
            assert!(n.is_isomorphic(&standard_form(2, &v).unwrap()));
            assert_eq!(replay_trace(&g, &t).unwrap(), n);
            if opts.expand_mix {
                assert_eq!(t.count(MoveClass::MixedCommute), 0);
            }
        }
    }

    #[test]
    fn cobordism_matches_standard_form() {
        let g = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 -\nchord 3 +\ncomp s1: T1 T3 H2 H3\ncomp s2: H1 T2\n");
        let (n, t) = normalize_cobordism(&g).unwrap();
        assert!(n.is_isomorphic(&standard_form(2, &linking_vector(&g)).unwrap()));
        assert_eq!(replay_trace(&g, &t).unwrap(), n);
        assert!(t.moves().all(|m| Calculus::Cobordism.allows(m.class())));
        assert_eq!(surface_stats(&g, &t).unwrap().components.len(), 2);
    }

    #[test]
    fn commute_macro() {
        let g = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: T1 T2\ncomp s2: H1 H2\n");
        let (g1, moves) = commute_via_saddles(&g, CompRef::Strand(1), 0).unwrap();
        assert_eq!(moves.len(), 2);
        assert_eq!(
            strand_seq(&g1, 1),
            &[Endpoint::tail(ChordId(2)), Endpoint::tail(ChordId(1))]
        );
        let (g2, _) = commute_via_saddles(&g1, CompRef::Strand(1), 0).unwrap();
        assert_eq!(g2, g);
        assert!(commute_via_saddles(&g, CompRef::Strand(1), 1).is_err());
    }

    #[test]
    fn equivalence_certificates() {
        let a = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 -\ncomp s1: T1 H2 T2\ncomp s2: H1\n");
        let b = d("gsld 1\nstrands 2\nchord 1 +\ncomp s1: T1\ncomp s2: H1\n");
        for cal in [Calculus::Unwelded, Calculus::Cobordism] {
            let e = equivalent(&a, &b, cal).unwrap();
            assert!(e.verdict);
            let end = replay_trace(&a, e.certificate.as_ref().unwrap()).unwrap();
            assert!(end.is_isomorphic(&b));
        }
        let c = d("gsld 1\nstrands 2\nchord 1 -\ncomp s1: T1\ncomp s2: H1\n");
        let e = equivalent(&b, &c, Calculus::Unwelded).unwrap();
        assert!(!e.verdict);
        assert_eq!(e.difference, Some(((1, 2), 1, -1)));
        assert!(equivalent(&b, &c, Calculus::WeldedConcordance).is_err());
        assert!(equivalent(&b, &c, Calculus::Welded).is_err());
    }

    #[test]
    fn inverse_sum_of_kink() {
        let g = d("gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1 H1\n");
        let t = trivialize_inverse_sum(&g).unwrap();
        let start = inverse_sum(&g).unwrap();
        assert_eq!(replay_trace(&start, &t).unwrap(), GaussDiagram::empty(1));
        assert_eq!(t.count(MoveClass::Saddle), t.count(MoveClass::Death));
        assert!(is_concordance(&start, &t).unwrap());
    }
}

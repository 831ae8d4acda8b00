use crate::diagram::{Arc, ChordId, Endpoint, GaussDiagram, Role, Sign};

use super::apply::apply_tracked;
use super::r3::{R3Pattern, R3_TABLE};
use super::{Calculus, KinkOrder, Move, MoveClass, R2Variant, R3PatternId};

/// Bounds on the moves that grow a diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumCaps {
    /// R1/R2 insertions are listed only while the chord count stays within this.
    pub max_chords: usize,
    /// Splitting saddles and births are listed only while the closed
    /// component count stays within this.
    pub max_closed: usize,
}

impl EnumCaps {
    /// No additive moves at all.
    pub fn none(d: &GaussDiagram) -> Self {
        EnumCaps {
            max_chords: d.chord_count(),
            max_closed: d.closed_count(),
        }
    }
}

fn arcs(d: &GaussDiagram) -> Vec<Arc> {
    let mut out = Vec::new();
    for (ci, c) in d.components().iter().enumerate() {
        let r = d.comp_ref(ci);
        out.extend((0..c.arc_count()).map(|k| Arc::new(r, k)));
    }
    out
}

/// Chord of the endpoint adjacent to `e` in either direction.
fn neighbours(d: &GaussDiagram, e: Endpoint) -> Vec<Endpoint> {
    let Some((ci, p)) = d.locate(e) else {
        return Vec::new();
    };
    let c = &d.components()[ci];
    let mut out = Vec::new();
    for q in 0..c.len() {
        if c.adjacent(p, q) && !out.contains(&c.endpoints[q]) {
            out.push(c.endpoints[q]);
        }
    }
    out
}

fn r3_moves(d: &GaussDiagram, out: &mut Vec<Move>) {
    let ids: Vec<ChordId> = d.chords().keys().copied().collect();
    for &a in &ids {
        for tb in neighbours(d, Endpoint::tail(a)) {
            if tb.role != Role::Tail {
                continue;
            }
            let b = tb.chord;
            for tc in neighbours(d, Endpoint::head(a)) {
                let c = tc.chord;
                if tc.role != Role::Tail || c == a || c == b {
                    continue;
                }
                if !neighbours(d, Endpoint::head(b)).contains(&Endpoint::head(c)) {
                    continue;
                }
                for (k, _) in R3_TABLE.iter().enumerate() {
                    let m = Move::R3 {
                        a,
                        b,
                        c,
                        pattern: R3PatternId(k as u8),
                    };
                    if apply_tracked(d, &m).is_ok() {
                        out.push(m);
                    }
                }
            }
        }
    }
}

/// Every structurally valid move of `cal` on `d`, additive moves bounded by
/// `caps`. The order is deterministic: removals, R3, commutes, saddles,
/// deaths, then insertions and births.
pub fn enumerate_moves(d: &GaussDiagram, cal: Calculus, caps: EnumCaps) -> Vec<Move> {
    let mut out = Vec::new();
    let chords: Vec<ChordId> = d.chords().keys().copied().collect();
    for &c in &chords {
        out.push(Move::R1Remove { chord: c });
    }
    for (k, &a) in chords.iter().enumerate() {
        for &b in &chords[k + 1..] {
            out.push(Move::R2Remove { a, b });
        }
    }
    r3_moves(d, &mut out);
    for (ci, c) in d.components().iter().enumerate() {
        let comp = d.comp_ref(ci);
        for pos in 0..c.len() {
            out.push(Move::F1 { comp, pos });
            out.push(Move::F2 { comp, pos });
            out.push(Move::MixedCommute { comp, pos });
        }
    }
    let all_arcs = arcs(d);
    let split_ok = d.closed_count() < caps.max_closed;
    if cal.allows(MoveClass::Saddle) {
        for (k, &a1) in all_arcs.iter().enumerate() {
            for &a2 in &all_arcs[k + 1..] {
                if a1.comp == a2.comp && !split_ok {
                    continue;
                }
                out.push(Move::Saddle { arc1: a1, arc2: a2 });
            }
        }
    }
    for (ci, c) in d.components().iter().enumerate() {
        if c.is_closed() && c.is_empty() {
            out.push(Move::Death {
                comp: d.comp_ref(ci),
            });
        }
    }
    if d.chord_count() < caps.max_chords {
        for &arc in &all_arcs {
            for sign in [Sign::Plus, Sign::Minus] {
                for order in [KinkOrder::TailFirst, KinkOrder::HeadFirst] {
                    out.push(Move::R1Add { arc, sign, order });
                }
            }
        }
    }
    if d.chord_count() + 2 <= caps.max_chords {
        for &tails in &all_arcs {
            for &heads in &all_arcs {
                for variant in [R2Variant::Parallel, R2Variant::Antiparallel] {
                    for sign in [Sign::Plus, Sign::Minus] {
                        out.push(Move::R2Add {
                            tails,
                            heads,
                            variant,
                            sign,
                            first: Role::Tail,
                        });
                        if tails == heads {
                            out.push(Move::R2Add {
                                tails,
                                heads,
                                variant,
                                sign,
                                first: Role::Head,
                            });
                        }
                    }
                }
            }
        }
    }
    if split_ok {
        out.push(Move::Birth);
    }
    out.retain(|m| cal.allows(m.class()) && apply_tracked(d, m).is_ok());
    out
}

/// Table entries that chords `a`, `b`, `c` of `d` currently realize.
pub(crate) fn observed_patterns(
    d: &GaussDiagram,
    a: ChordId,
    b: ChordId,
    c: ChordId,
) -> Vec<R3Pattern> {
    R3_TABLE
        .iter()
        .enumerate()
        .filter(|(k, _)| {
            apply_tracked(
                d,
                &Move::R3 {
                    a,
                    b,
                    c,
                    pattern: R3PatternId(*k as u8),
                },
            )
            .is_ok()
        })
        .map(|(_, p)| *p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsld::parse_diagram;

    #[test]
    fn empty_without_adds() {
        let e = GaussDiagram::empty(1);
        assert!(enumerate_moves(&e, Calculus::Unwelded, EnumCaps::none(&e)).is_empty());
    }

    #[test]
    fn one_f1_on_two_tails() {
        let g = parse_diagram(
            "gsld 1\nstrands 2\nchord 1 +\nchord 2 -\ncomp s1: T1 T2\ncomp s2: H1 H2\n",
        )
        .unwrap();
        let moves = enumerate_moves(&g, Calculus::Welded, EnumCaps::none(&g));
        let f1: Vec<_> = moves
            .iter()
            .filter(|m| m.class() == MoveClass::F1)
            .collect();
        assert_eq!(f1.len(), 1);
        assert!(moves.contains(&Move::R2Remove {
            a: ChordId(1),
            b: ChordId(2)
        }));
    }

    #[test]
    fn caps_gate_growth() {
        let e = GaussDiagram::empty(1);
        let moves = enumerate_moves(
            &e,
            Calculus::Cobordism,
            EnumCaps {
                max_chords: 1,
                max_closed: 1,
            },
        );
        assert_eq!(
            moves.iter().filter(|m| m.class() == MoveClass::R1).count(),
            4
        );
        assert!(moves.iter().all(|m| !matches!(m, Move::R2Add { .. })));
        assert!(moves.contains(&Move::Birth));
    }
}

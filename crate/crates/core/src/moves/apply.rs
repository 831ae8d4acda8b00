use crate::diagram::{
    canonicalize, rotated, Arc, ChordId, CompRef, Component, Endpoint, GaussDiagram, Role, Sign,
};
use crate::error::MoveError;

use super::r3::R3Pattern;
use super::{KinkOrder, Move, R2Variant};

/// Where a component of the result came from, by index into the components
/// of the diagram the move was applied to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Lineage {
    Same(usize),
    /// One of the two pieces a saddle cut this component into.
    Split(usize),
    Merge(usize, usize),
    Born,
}

#[derive(Clone, Debug)]
pub struct Applied {
    pub diagram: GaussDiagram,
    /// One entry per component of `diagram`.
    pub lineage: Vec<Lineage>,
    /// Index of the component removed by a death.
    pub died: Option<usize>,
}

struct Work {
    strands: usize,
    comps: Vec<(Component, Lineage)>,
    chords: std::collections::BTreeMap<ChordId, Sign>,
    died: Option<usize>,
}

impl Work {
    fn new(d: &GaussDiagram) -> Self {
        Work {
            strands: d.strands(),
            comps: d
                .components()
                .iter()
                .cloned()
                .enumerate()
                .map(|(k, c)| (c, Lineage::Same(k)))
                .collect(),
            chords: d.chords().clone(),
            died: None,
        }
    }

    fn finish(self) -> Applied {
        let (comps, lineage): (Vec<_>, Vec<_>) = self.comps.into_iter().unzip();
        let (sorted, perm) = canonicalize(comps);
        Applied {
            diagram: GaussDiagram::from_sorted(self.strands, sorted, self.chords),
            lineage: perm.iter().map(|&k| lineage[k]).collect(),
            died: self.died,
        }
    }

    fn seq(&mut self, ci: usize) -> &mut Vec<Endpoint> {
        &mut self.comps[ci].0.endpoints
    }
}

fn comp_index(d: &GaussDiagram, r: CompRef) -> Result<usize, MoveError> {
    d.component_index(r).ok_or(MoveError::NoComponent(r))
}

fn arc_index(d: &GaussDiagram, arc: Arc) -> Result<(usize, usize), MoveError> {
    let ci = comp_index(d, arc.comp)?;
    if arc.index >= d.components()[ci].arc_count() {
        return Err(MoveError::ArcOutOfRange(arc));
    }
    Ok((ci, arc.index))
}

fn sign_of(d: &GaussDiagram, c: ChordId) -> Result<Sign, MoveError> {
    d.sign(c).ok_or(MoveError::NoChord(c))
}

fn locate(d: &GaussDiagram, e: Endpoint) -> Result<(usize, usize), MoveError> {
    d.locate(e).ok_or(MoveError::NoChord(e.chord))
}

/// Whether `q` follows `p` on one component; both orders are reported for
/// the two-endpoint loop.
fn pair_order(d: &GaussDiagram, p: (usize, usize), q: (usize, usize)) -> Option<(bool, bool)> {
    if p.0 != q.0 {
        return None;
    }
    let c = &d.components()[p.0];
    let fwd = c.follows(p.1, q.1);
    let back = c.follows(q.1, p.1);
    (fwd || back).then_some((fwd, back))
}

fn remove_positions(seq: &mut Vec<Endpoint>, mut pos: Vec<usize>) {
    pos.sort_unstable();
    for p in pos.into_iter().rev() {
        seq.remove(p);
    }
}

pub fn apply_tracked(d: &GaussDiagram, m: &Move) -> Result<Applied, MoveError> {
    let mut w = Work::new(d);
    match *m {
        Move::R1Add { arc, sign, order } => {
            let (ci, idx) = arc_index(d, arc)?;
            let id = d.next_chord_id();
            let pair = match order {
                KinkOrder::TailFirst => [Endpoint::tail(id), Endpoint::head(id)],
                KinkOrder::HeadFirst => [Endpoint::head(id), Endpoint::tail(id)],
            };
            w.seq(ci).splice(idx..idx, pair);
            w.chords.insert(id, sign);
        }
        Move::R1Remove { chord } => {
            sign_of(d, chord)?;
            let t = locate(d, Endpoint::tail(chord))?;
            let h = locate(d, Endpoint::head(chord))?;
            if pair_order(d, t, h).is_none() {
                return Err(MoveError::NotAKink(chord));
            }
            remove_positions(w.seq(t.0), vec![t.1, h.1]);
            w.chords.remove(&chord);
        }
        Move::R2Add {
            tails,
            heads,
            variant,
            sign,
            first,
        } => {
            let (ti, tidx) = arc_index(d, tails)?;
            let (hi, hidx) = arc_index(d, heads)?;
            let a = d.next_chord_id();
            let b = ChordId(a.0 + 1);
            let tblock = vec![Endpoint::tail(a), Endpoint::tail(b)];
            let hblock = match variant {
                R2Variant::Parallel => vec![Endpoint::head(a), Endpoint::head(b)],
                R2Variant::Antiparallel => vec![Endpoint::head(b), Endpoint::head(a)],
            };
            if ti == hi && tidx == hidx {
                let block = match first {
                    Role::Tail => [tblock, hblock].concat(),
                    Role::Head => [hblock, tblock].concat(),
                };
                w.seq(ti).splice(tidx..tidx, block);
            } else if ti == hi {
                let (lo, lo_block, hi_idx, hi_block) = if tidx < hidx {
                    (tidx, tblock, hidx, hblock)
                } else {
                    (hidx, hblock, tidx, tblock)
                };
                w.seq(ti).splice(hi_idx..hi_idx, hi_block);
                w.seq(ti).splice(lo..lo, lo_block);
            } else {
                w.seq(ti).splice(tidx..tidx, tblock);
                w.seq(hi).splice(hidx..hidx, hblock);
            }
            w.chords.insert(a, sign);
            w.chords.insert(b, sign.flip());
        }
        Move::R2Remove { a, b } => {
            if a == b {
                return Err(MoveError::RepeatedChord);
            }
            if sign_of(d, a)? == sign_of(d, b)? {
                return Err(MoveError::SameSign(a, b));
            }
            let (ta, tb) = (locate(d, Endpoint::tail(a))?, locate(d, Endpoint::tail(b))?);
            let (ha, hb) = (locate(d, Endpoint::head(a))?, locate(d, Endpoint::head(b))?);
            if pair_order(d, ta, tb).is_none() {
                return Err(MoveError::NotAdjacent(a, b, "tail"));
            }
            if pair_order(d, ha, hb).is_none() {
                return Err(MoveError::NotAdjacent(a, b, "head"));
            }
            let mut by_comp = std::collections::BTreeMap::<usize, Vec<usize>>::new();
            for (ci, p) in [ta, tb, ha, hb] {
                by_comp.entry(ci).or_default().push(p);
            }
            for (ci, pos) in by_comp {
                remove_positions(w.seq(ci), pos);
            }
            w.chords.remove(&a);
            w.chords.remove(&b);
        }
        Move::R3 { a, b, c, pattern } => {
            if a == b || b == c || a == c {
                return Err(MoveError::RepeatedChord);
            }
            let pat = R3Pattern::by_id(pattern).ok_or(MoveError::NoSuchPattern(pattern.0))?;
            let signs = [sign_of(d, a)?, sign_of(d, b)?, sign_of(d, c)?].map(|s| s.value() as i8);
            let pairs = [
                (
                    Endpoint::tail(a),
                    Endpoint::tail(b),
                    pat.tail_a_first,
                    "top",
                ),
                (
                    Endpoint::head(a),
                    Endpoint::tail(c),
                    pat.head_a_first,
                    "middle",
                ),
                (
                    Endpoint::head(b),
                    Endpoint::head(c),
                    pat.head_b_first,
                    "bottom",
                ),
            ];
            let mut located = Vec::with_capacity(3);
            let mut matches = signs == pat.signs;
            for (x, y, want_first, which) in pairs {
                let (px, py) = (locate(d, x)?, locate(d, y)?);
                let (fwd, back) =
                    pair_order(d, px, py).ok_or(MoveError::NotAdjacent(x.chord, y.chord, which))?;
                matches &= if want_first { fwd } else { back };
                located.push((px, py));
            }
            if !matches {
                return Err(MoveError::PatternMismatch(a, b, c, pattern.0));
            }
            for (px, py) in located {
                w.seq(px.0).swap(px.1, py.1);
            }
        }
        Move::F1 { comp, pos } | Move::F2 { comp, pos } | Move::MixedCommute { comp, pos } => {
            let ci = comp_index(d, comp)?;
            let c = &d.components()[ci];
            let q = c
                .successor(pos)
                .filter(|_| pos < c.len())
                .ok_or(MoveError::PositionOutOfRange { comp, pos })?;
            let (x, y) = (c.endpoints[pos], c.endpoints[q]);
            if x.chord == y.chord {
                return Err(MoveError::WrongRoles {
                    comp,
                    pos,
                    reason: "endpoints of one chord",
                });
            }
            let ok = match m {
                Move::F1 { .. } => x.role == Role::Tail && y.role == Role::Tail,
                Move::F2 { .. } => x.role == Role::Head && y.role == Role::Head,
                _ => x.role != y.role,
            };
            if !ok {
                let reason = match m {
                    Move::F1 { .. } => "F1 needs two tails",
                    Move::F2 { .. } => "F2 needs two heads",
                    _ => "mixed commute needs a head and a tail",
                };
                return Err(MoveError::WrongRoles { comp, pos, reason });
            }
            w.seq(ci).swap(pos, q);
        }
        Move::Saddle { arc1, arc2 } => {
            let (ci, i) = arc_index(d, arc1)?;
            let (cj, j) = arc_index(d, arc2)?;
            if ci == cj && i == j {
                return Err(MoveError::SameArc);
            }
            let pi = &d.components()[ci];
            let pj = &d.components()[cj];
            if ci == cj {
                let (lo, hi) = (i.min(j), i.max(j));
                let seq = &pi.endpoints;
                let middle = seq[lo..hi].to_vec();
                let rest: Vec<Endpoint> = seq[..lo].iter().chain(&seq[hi..]).copied().collect();
                w.comps[ci] = (
                    Component {
                        kind: pi.kind,
                        endpoints: rest,
                    },
                    Lineage::Split(ci),
                );
                w.comps
                    .push((Component::closed(middle), Lineage::Split(ci)));
            } else {
                if !pi.is_closed() && !pj.is_closed() {
                    return Err(MoveError::OpenOpenSaddle);
                }
                // Keep the open component (if any) as the host.
                let ((host, h), (guest, g)) = if pi.is_closed() {
                    ((cj, j), (ci, i))
                } else {
                    ((ci, i), (cj, j))
                };
                let hc = &d.components()[host];
                let gc = &d.components()[guest];
                let spliced = rotated(&gc.endpoints, g);
                let merged: Vec<Endpoint> = if hc.is_closed() {
                    rotated(&hc.endpoints, h)
                        .into_iter()
                        .chain(spliced)
                        .collect()
                } else {
                    let s = &hc.endpoints;
                    s[..h]
                        .iter()
                        .copied()
                        .chain(spliced)
                        .chain(s[h..].iter().copied())
                        .collect()
                };
                w.comps[host] = (
                    Component {
                        kind: hc.kind,
                        endpoints: merged,
                    },
                    Lineage::Merge(ci, cj),
                );
                w.comps.remove(guest);
            }
        }
        Move::Birth => w.comps.push((Component::closed(Vec::new()), Lineage::Born)),
        Move::Death { comp } => {
            if !matches!(comp, CompRef::Closed(_)) {
                return Err(MoveError::NotClosed(comp));
            }
            let ci = comp_index(d, comp)?;
            if !d.components()[ci].is_empty() {
                return Err(MoveError::NotEmpty(comp));
            }
            w.comps.remove(ci);
            w.died = Some(ci);
        }
    }
    Ok(w.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsld::{parse_diagram, serialize_diagram};

    fn d(text: &str) -> GaussDiagram {
        parse_diagram(text).unwrap()
    }

    fn mv(s: &str) -> Move {
        s.parse().unwrap()
    }

    fn text(g: &GaussDiagram) -> String {
        serialize_diagram(g).unwrap()
    }

    #[test]
    fn r1_add_remove() {
        let e = GaussDiagram::empty(1);
        let k = apply_tracked(&e, &mv("R1+ arc=s1.0 sign=- order=HT"))
            .unwrap()
            .diagram;
        assert_eq!(text(&k), "gsld 1\nstrands 1\nchord 1 -\ncomp s1: H1 T1\n");
        let back = apply_tracked(&k, &mv("R1- chord=1")).unwrap().diagram;
        assert_eq!(back, e);
    }

    #[test]
    fn r1_remove_needs_adjacency() {
        let g = d("gsld 1\nstrands 1\nchord 1 +\nchord 2 +\ncomp s1: T1 T2 H1 H2\n");
        assert_eq!(
            apply_tracked(&g, &mv("R1- chord=1")).unwrap_err(),
            MoveError::NotAKink(ChordId(1))
        );
        let wrap = d("gsld 1\nstrands 0\nchord 1 +\nchord 2 +\ncomp c: H1 T2 H2 T1\n");
        assert!(apply_tracked(&wrap, &mv("R1- chord=1")).is_ok());
    }

    #[test]
    fn r2_round_trip() {
        let e = GaussDiagram::empty(2);
        let g = apply_tracked(&e, &mv("R2+ tails=s1.0 heads=s2.0 variant=A sign=+"))
            .unwrap()
            .diagram;
        assert_eq!(
            text(&g),
            "gsld 1\nstrands 2\nchord 1 +\nchord 2 -\ncomp s1: T1 T2\ncomp s2: H2 H1\n"
        );
        assert_eq!(apply_tracked(&g, &mv("R2- a=2 b=1")).unwrap().diagram, e);
        let same = apply_tracked(
            &GaussDiagram::empty(1),
            &mv("R2+ tails=s1.0 heads=s1.0 variant=P sign=- first=H"),
        )
        .unwrap()
        .diagram;
        assert_eq!(
            text(&same),
            "gsld 1\nstrands 1\nchord 1 -\nchord 2 +\ncomp s1: H1 H2 T1 T2\n"
        );
    }

    #[test]
    fn r2_remove_rejects_equal_signs() {
        let g = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: T1 T2\ncomp s2: H1 H2\n");
        assert!(matches!(
            apply_tracked(&g, &mv("R2- a=1 b=2")),
            Err(MoveError::SameSign(..))
        ));
    }

    #[test]
    fn saddle_split_open() {
        let g = d("gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1 H1\n");
        let a = apply_tracked(&g, &mv("SAD arc1=s1.0 arc2=s1.2")).unwrap();
        assert_eq!(
            text(&a.diagram),
            "gsld 1\nstrands 1\nchord 1 +\ncomp s1:\ncomp c: T1 H1\n"
        );
        assert_eq!(a.lineage, vec![Lineage::Split(0), Lineage::Split(0)]);
    }

    #[test]
    fn saddle_merge_and_open_open() {
        let g = d("gsld 1\nstrands 2\nchord 1 +\ncomp s1: T1\ncomp s2:\ncomp c: H1\n");
        let a = apply_tracked(&g, &mv("SAD arc1=c1.0 arc2=s1.1")).unwrap();
        assert_eq!(
            text(&a.diagram),
            "gsld 1\nstrands 2\nchord 1 +\ncomp s1: T1 H1\ncomp s2:\n"
        );
        assert_eq!(a.lineage, vec![Lineage::Merge(2, 0), Lineage::Same(1)]);
        assert_eq!(
            apply_tracked(&g, &mv("SAD arc1=s1.0 arc2=s2.0")).unwrap_err(),
            MoveError::OpenOpenSaddle
        );
        assert_eq!(
            apply_tracked(&g, &mv("SAD arc1=s1.1 arc2=s1.1")).unwrap_err(),
            MoveError::SameArc
        );
    }

    #[test]
    fn commutes_check_roles() {
        let g = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: T1 T2\ncomp s2: H1 H2\n");
        let f1 = apply_tracked(&g, &mv("F1 comp=s1 pos=0")).unwrap().diagram;
        assert_eq!(
            f1.strand(1).unwrap().endpoints,
            vec![Endpoint::tail(ChordId(2)), Endpoint::tail(ChordId(1))]
        );
        assert!(matches!(
            apply_tracked(&g, &mv("F2 comp=s1 pos=0")),
            Err(MoveError::WrongRoles { .. })
        ));
        assert!(matches!(
            apply_tracked(&g, &mv("F1 comp=s1 pos=1")),
            Err(MoveError::PositionOutOfRange { .. })
        ));
        let mixed = d("gsld 1\nstrands 2\nchord 1 +\nchord 2 +\ncomp s1: T1 H2\ncomp s2: H1 T2\n");
        assert!(apply_tracked(&mixed, &mv("MIX comp=s1 pos=0")).is_ok());
        assert!(apply_tracked(&mixed, &mv("F1 comp=s1 pos=0")).is_err());
    }

    #[test]
    fn birth_death() {
        let g = GaussDiagram::empty(1);
        let b = apply_tracked(&g, &Move::Birth).unwrap().diagram;
        assert_eq!(b.closed_count(), 1);
        let back = apply_tracked(&b, &mv("DEA comp=c1")).unwrap();
        assert_eq!(back.diagram, g);
        assert_eq!(back.died, Some(1));
        assert!(matches!(
            apply_tracked(&b, &mv("DEA comp=s1")),
            Err(MoveError::NotClosed(_))
        ));
        let full = d("gsld 1\nstrands 0\nchord 1 +\ncomp c: T1 H1\n");
        assert!(matches!(
            apply_tracked(&full, &mv("DEA comp=c1")),
            Err(MoveError::NotEmpty(_))
        ));
    }

    #[test]
    fn r3_swaps_pairs() {
        // Pattern 15: all pairs in table order, all signs +.
        let g = d("gsld 1\nstrands 3\nchord 1 +\nchord 2 +\nchord 3 +\ncomp s1: T1 T2\ncomp s2: H1 T3\ncomp s3: H2 H3\n");
        let a = apply_tracked(&g, &mv("R3 a=1 b=2 c=3 pat=15"))
            .unwrap()
            .diagram;
        assert_eq!(
            text(&a),
            "gsld 1\nstrands 3\nchord 1 +\nchord 2 +\nchord 3 +\ncomp s1: T2 T1\ncomp s2: T3 H1\ncomp s3: H3 H2\n"
        );
        assert!(matches!(
            apply_tracked(&g, &mv("R3 a=1 b=2 c=3 pat=14")),
            Err(MoveError::PatternMismatch(..))
        ));
        assert!(apply_tracked(&a, &mv("R3 a=1 b=2 c=3 pat=1")).is_ok());
    }
}

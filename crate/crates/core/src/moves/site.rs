//! Content-based addressing of gaps, used to carry moves between
//! diagrams that agree up to chord renaming and to build inverse moves.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{Arc, ChordId, CompRef, ComponentKind, Endpoint, GaussDiagram, Role};
use crate::error::MoveError;

use super::enumerate::observed_patterns;
use super::{KinkOrder, Move, R2Variant};

/// A gap between endpoints, named by what follows it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Site {
    /// The gap immediately before this endpoint.
    Before(Endpoint),
    /// The end of strand `i`.
    End(usize),
    /// The k-th chordless closed component (1-based).
    EmptyLoop(usize),
}

pub fn site_of_arc(d: &GaussDiagram, arc: Arc) -> Result<Site, MoveError> {
    let ci = d
        .component_index(arc.comp)
        .ok_or(MoveError::NoComponent(arc.comp))?;
    let c = &d.components()[ci];
    if arc.index >= c.arc_count() {
        return Err(MoveError::ArcOutOfRange(arc));
    }
    Ok(match (c.kind, c.endpoints.get(arc.index)) {
        (_, Some(&e)) => Site::Before(e),
        (ComponentKind::Open(i), None) => Site::End(i),
        (ComponentKind::Closed, None) => match arc.comp {
            CompRef::Closed(k) => Site::EmptyLoop(k),
            CompRef::Strand(_) => unreachable!("closed component addressed as strand"),
        },
    })
}

pub fn arc_of_site(d: &GaussDiagram, site: Site) -> Result<Arc, MoveError> {
    match site {
        Site::Before(e) => {
            let (ci, p) = d.locate(e).ok_or(MoveError::Untransportable)?;
            Ok(Arc::new(d.comp_ref(ci), p))
        }
        Site::End(i) => {
            let c = d.strand(i).ok_or(MoveError::Untransportable)?;
            Ok(Arc::new(CompRef::Strand(i), c.len()))
        }
        Site::EmptyLoop(k) => {
            let ci = d
                .component_index(CompRef::Closed(k))
                .ok_or(MoveError::Untransportable)?;
            if !d.components()[ci].is_empty() {
                return Err(MoveError::Untransportable);
            }
            Ok(Arc::new(CompRef::Closed(k), 0))
        }
    }
}

fn map_endpoint(e: Endpoint, phi: &BTreeMap<ChordId, ChordId>) -> Result<Endpoint, MoveError> {
    let chord = *phi.get(&e.chord).ok_or(MoveError::Untransportable)?;
    Ok(Endpoint {
        chord,
        role: e.role,
    })
}

fn map_site(s: Site, phi: &BTreeMap<ChordId, ChordId>) -> Result<Site, MoveError> {
    Ok(match s {
        Site::Before(e) => Site::Before(map_endpoint(e, phi)?),
        other => other,
    })
}

fn map_chord(c: ChordId, phi: &BTreeMap<ChordId, ChordId>) -> Result<ChordId, MoveError> {
    phi.get(&c).copied().ok_or(MoveError::Untransportable)
}

fn map_arc(
    a: Arc,
    from: &GaussDiagram,
    to: &GaussDiagram,
    phi: &BTreeMap<ChordId, ChordId>,
) -> Result<Arc, MoveError> {
    arc_of_site(to, map_site(site_of_arc(from, a)?, phi)?)
}

/// Carry `m`, valid on `from`, to `to` along the chord bijection `phi`
/// (ids of `from` to ids of `to`). The two diagrams must agree up to `phi`.
/// Chords created by the move get the next free id on each side.
pub fn transport(
    m: &Move,
    from: &GaussDiagram,
    to: &GaussDiagram,
    phi: &BTreeMap<ChordId, ChordId>,
) -> Result<Move, MoveError> {
    let pos_of = |comp: CompRef, pos: usize| -> Result<(CompRef, usize), MoveError> {
        let c = from.component(comp).ok_or(MoveError::NoComponent(comp))?;
        let e = *c
            .endpoints
            .get(pos)
            .ok_or(MoveError::PositionOutOfRange { comp, pos })?;
        let (ci, p) = to
            .locate(map_endpoint(e, phi)?)
            .ok_or(MoveError::Untransportable)?;
        Ok((to.comp_ref(ci), p))
    };
    Ok(match *m {
        Move::R1Add { arc, sign, order } => Move::R1Add {
            arc: map_arc(arc, from, to, phi)?,
            sign,
            order,
        },
        Move::R1Remove { chord } => Move::R1Remove {
            chord: map_chord(chord, phi)?,
        },
        Move::R2Add {
            tails,
            heads,
            variant,
            sign,
            first,
        } => Move::R2Add {
            tails: map_arc(tails, from, to, phi)?,
            heads: map_arc(heads, from, to, phi)?,
            variant,
            sign,
            first,
        },
        Move::R2Remove { a, b } => Move::R2Remove {
            a: map_chord(a, phi)?,
            b: map_chord(b, phi)?,
        },
        Move::R3 { a, b, c, pattern } => Move::R3 {
            a: map_chord(a, phi)?,
            b: map_chord(b, phi)?,
            c: map_chord(c, phi)?,
            pattern,
        },
        Move::F1 { comp, pos } => {
            let (comp, pos) = pos_of(comp, pos)?;
            Move::F1 { comp, pos }
        }
        Move::F2 { comp, pos } => {
            let (comp, pos) = pos_of(comp, pos)?;
            Move::F2 { comp, pos }
        }
        Move::MixedCommute { comp, pos } => {
            let (comp, pos) = pos_of(comp, pos)?;
            Move::MixedCommute { comp, pos }
        }
        Move::Saddle { arc1, arc2 } => Move::Saddle {
            arc1: map_arc(arc1, from, to, phi)?,
            arc2: map_arc(arc2, from, to, phi)?,
        },
        Move::Birth => Move::Birth,
        Move::Death { comp } => Move::Death { comp },
    })
}

/// A move undoing another one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inverse {
    pub mv: Move,
    /// Chords of the earlier diagram that `mv` recreates, in the order of
    /// the fresh ids it assigns.
    pub restores: Vec<ChordId>,
}

/// First gap after position `p` of component `ci` not occupied by a removed
/// endpoint, as a site of the diagram after removal.
fn site_after(
    d: &GaussDiagram,
    ci: usize,
    p: usize,
    removed: &BTreeSet<Endpoint>,
    empty_loop: usize,
) -> Site {
    let c = &d.components()[ci];
    let mut q = p;
    loop {
        match c.successor(q) {
            Some(n) if n == p => break,
            Some(n) => {
                if !removed.contains(&c.endpoints[n]) {
                    return Site::Before(c.endpoints[n]);
                }
                q = n;
            }
            None => break,
        }
    }
    match c.kind {
        ComponentKind::Open(i) => Site::End(i),
        ComponentKind::Closed => Site::EmptyLoop(empty_loop),
    }
}

/// Position of the later endpoint of an adjacent pair.
fn later(d: &GaussDiagram, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
    if d.components()[x.0].follows(x.1, y.1) {
        y
    } else {
        x
    }
}

/// An inverse of `m`, which took `before` to `after`. Applying `mv` to
/// `after` gives `before` with the chords in `restores` renamed to fresh ids.
pub fn inverse_move(
    before: &GaussDiagram,
    m: &Move,
    after: &GaussDiagram,
) -> Result<Inverse, MoveError> {
    let plain = |mv| {
        Ok(Inverse {
            mv,
            restores: Vec::new(),
        })
    };
    let loc = |e: Endpoint| before.locate(e).ok_or(MoveError::NoChord(e.chord));
    match *m {
        Move::R1Add { .. } => plain(Move::R1Remove {
            chord: before.next_chord_id(),
        }),
        Move::R2Add { .. } => {
            let a = before.next_chord_id();
            plain(Move::R2Remove {
                a,
                b: ChordId(a.0 + 1),
            })
        }
        Move::R1Remove { chord } => {
            let t = loc(Endpoint::tail(chord))?;
            let h = loc(Endpoint::head(chord))?;
            let order = if before.components()[t.0].follows(t.1, h.1) {
                KinkOrder::TailFirst
            } else {
                KinkOrder::HeadFirst
            };
            let removed = BTreeSet::from([Endpoint::tail(chord), Endpoint::head(chord)]);
            let last = later(before, t, h);
            let site = site_after(before, last.0, last.1, &removed, 1);
            let sign = before.sign(chord).ok_or(MoveError::NoChord(chord))?;
            Ok(Inverse {
                mv: Move::R1Add {
                    arc: arc_of_site(after, site)?,
                    sign,
                    order,
                },
                restores: vec![chord],
            })
        }
        Move::R2Remove { a, b } => {
            let (ta, tb) = (loc(Endpoint::tail(a))?, loc(Endpoint::tail(b))?);
            let (ha, hb) = (loc(Endpoint::head(a))?, loc(Endpoint::head(b))?);
            // x is the chord whose tail comes first.
            let (x, y, ty, hx, hy) = if before.components()[ta.0].follows(ta.1, tb.1) {
                (a, b, tb, ha, hb)
            } else {
                (b, a, ta, hb, ha)
            };
            let variant = if before.components()[hx.0].follows(hx.1, hy.1) {
                R2Variant::Parallel
            } else {
                R2Variant::Antiparallel
            };
            let removed: BTreeSet<Endpoint> = [a, b]
                .iter()
                .flat_map(|&c| [Endpoint::tail(c), Endpoint::head(c)])
                .collect();
            let hlast = later(before, hx, hy);
            let tsite = site_after(before, ty.0, ty.1, &removed, 1);
            let hloop = if ty.0 == hx.0 { 1 } else { 2 };
            let hsite = site_after(before, hlast.0, hlast.1, &removed, hloop);
            let first = if tsite != hsite || walk_hits_heads(before, ty, &removed) {
                Role::Tail
            } else {
                Role::Head
            };
            let sign = before.sign(x).ok_or(MoveError::NoChord(x))?;
            let tails = arc_of_site(after, tsite)?;
            let heads = arc_of_site(after, hsite)?;
            Ok(Inverse {
                mv: Move::R2Add {
                    tails,
                    heads,
                    variant,
                    sign,
                    first,
                },
                restores: vec![x, y],
            })
        }
        Move::R3 { a, b, c, .. } => {
            let pattern = observed_patterns(after, a, b, c)
                .first()
                .and_then(|p| p.id())
                .ok_or(MoveError::NotInvertible("no R3 pattern matches the result"))?;
            plain(Move::R3 { a, b, c, pattern })
        }
        Move::F1 { comp, pos } | Move::F2 { comp, pos } | Move::MixedCommute { comp, pos } => {
            let c = before.component(comp).ok_or(MoveError::NoComponent(comp))?;
            let q = c
                .successor(pos)
                .ok_or(MoveError::PositionOutOfRange { comp, pos })?;
            let (ci, p) = after
                .locate(c.endpoints[q])
                .ok_or(MoveError::Untransportable)?;
            let (comp, pos) = (after.comp_ref(ci), p);
            plain(match m {
                Move::F1 { .. } => Move::F1 { comp, pos },
                Move::F2 { .. } => Move::F2 { comp, pos },
                _ => Move::MixedCommute { comp, pos },
            })
        }
        Move::Saddle { arc1, arc2 } => {
            let s1 = site_of_arc(before, arc1)?;
            let s2 = site_of_arc(before, arc2)?;
            if matches!(s1, Site::EmptyLoop(_)) || matches!(s2, Site::EmptyLoop(_)) {
                return Err(MoveError::NotInvertible("a saddle absorbing an empty loop"));
            }
            plain(Move::Saddle {
                arc1: arc_of_site(after, s2)?,
                arc2: arc_of_site(after, s1)?,
            })
        }
        Move::Birth => plain(Move::Death {
            comp: CompRef::Closed(1),
        }),
        Move::Death { .. } => plain(Move::Birth),
    }
}

/// Walking forward from the tail block, whether the head block is reached
/// before any surviving endpoint.
fn walk_hits_heads(d: &GaussDiagram, ty: (usize, usize), removed: &BTreeSet<Endpoint>) -> bool {
    let c = &d.components()[ty.0];
    let mut q = ty.1;
    while let Some(n) = c.successor(q) {
        if n == ty.1 || !removed.contains(&c.endpoints[n]) {
            return false;
        }
        if c.endpoints[n].role == Role::Head {
            return true;
        }
        q = n;
    }
    false
}

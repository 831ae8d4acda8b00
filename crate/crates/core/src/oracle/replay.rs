//! A second, deliberately naive implementation of move semantics.
//!
//! States are plain token lists. Each move is re-derived from its textual
//! definition, applied, and the resulting GSLD text and fingerprint are
//! compared with what the trace records.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::cobordism::Trace;
use crate::diagram::{
    Arc, ChordId, CompRef, Component, ComponentKind, Endpoint, GaussDiagram, Role, Sign,
};
use crate::gsld::write_canonical;
use crate::moves::{Calculus, KinkOrder, Move, MoveClass, R2Variant};

use super::planar::derive_r3_table;

/// (chord, is_tail)
type Tok = (u32, bool);

#[derive(Clone, Debug)]
struct State {
    strands: usize,
    /// `Some(i)` for strand i, `None` for a closed loop.
    comps: Vec<(Option<usize>, Vec<Tok>)>,
    signs: BTreeMap<u32, i64>,
}

impl State {
    fn of(d: &GaussDiagram) -> State {
        State {
            strands: d.strands(),
            comps: d
                .components()
                .iter()
                .map(|c| {
                    let strand = match c.kind {
                        ComponentKind::Open(i) => Some(i),
                        ComponentKind::Closed => None,
                    };
                    (
                        strand,
                        c.endpoints
                            .iter()
                            .map(|e| (e.chord.0, e.role == Role::Tail))
                            .collect(),
                    )
                })
                .collect(),
            signs: d.chords().iter().map(|(c, s)| (c.0, s.value())).collect(),
        }
    }

    fn to_diagram(&self) -> Result<GaussDiagram, String> {
        let comps = self
            .comps
            .iter()
            .map(|(s, toks)| {
                let eps = toks
                    .iter()
                    .map(|&(c, t)| {
                        if t {
                            Endpoint::tail(ChordId(c))
                        } else {
                            Endpoint::head(ChordId(c))
                        }
                    })
                    .collect();
                match s {
                    Some(i) => Component::open(*i, eps),
                    None => Component::closed(eps),
                }
            })
            .collect();
        let chords = self
            .signs
            .iter()
            .map(|(&c, &s)| (ChordId(c), Sign::of(s).expect("unit sign")))
            .collect();
        GaussDiagram::try_from_parts(self.strands, comps, chords).map_err(|e| e.to_string())
    }

    fn comp(&self, r: CompRef) -> Result<usize, String> {
        let found = match r {
            CompRef::Strand(i) => self.comps.iter().position(|c| c.0 == Some(i)),
            CompRef::Closed(j) => (0..self.comps.len())
                .filter(|&k| self.comps[k].0.is_none())
                .nth(j.wrapping_sub(1)),
        };
        found.ok_or_else(|| format!("no component {r}"))
    }

    fn arc(&self, a: Arc) -> Result<(usize, usize), String> {
        let k = self.comp(a.comp)?;
        let (s, toks) = &self.comps[k];
        let count = if s.is_some() {
            toks.len() + 1
        } else {
            toks.len().max(1)
        };
        if a.index >= count {
            return Err(format!("arc {a} out of range"));
        }
        Ok((k, a.index))
    }

    fn find(&self, tok: Tok) -> Result<(usize, usize), String> {
        for (k, (_, toks)) in self.comps.iter().enumerate() {
            if let Some(p) = toks.iter().position(|&t| t == tok) {
                return Ok((k, p));
            }
        }
        Err(format!("chord {} missing", tok.0))
    }

    /// Whether `y` sits right after `x` on one component, cyclically on loops.
    fn right_after(&self, x: (usize, usize), y: (usize, usize)) -> bool {
        if x.0 != y.0 {
            return false;
        }
        let (s, toks) = &self.comps[x.0];
        match s {
            Some(_) => x.1 + 1 == y.1,
            None => (x.1 + 1) % toks.len() == y.1,
        }
    }

    fn neighbours(&self, x: (usize, usize), y: (usize, usize)) -> bool {
        self.right_after(x, y) || self.right_after(y, x)
    }

    fn fresh(&self) -> u32 {
        self.signs.keys().max().map_or(1, |m| m + 1)
    }
}

fn allowed(cal: Calculus, class: MoveClass) -> bool {
    use MoveClass::*;
    let base = matches!(class, R1 | R2 | R3);
    let cob = matches!(class, Saddle | Birth | Death);
    match cal {
        Calculus::Virtual => base,
        Calculus::Welded => base || class == F1,
        Calculus::Unwelded => base || matches!(class, F1 | F2 | MixedCommute),
        Calculus::Cobordism => base || cob,
        Calculus::WeldedConcordance => base || class == F1 || cob,
    }
}

fn rotate(v: &[Tok], k: usize) -> Vec<Tok> {
    if v.is_empty() {
        return Vec::new();
    }
    v[k..].iter().chain(&v[..k]).copied().collect()
}

fn step(st: &mut State, m: &Move) -> Result<(), String> {
    match *m {
        Move::R1Add { arc, sign, order } => {
            let (k, i) = st.arc(arc)?;
            let id = st.fresh();
            let pair = match order {
                KinkOrder::TailFirst => [(id, true), (id, false)],
                KinkOrder::HeadFirst => [(id, false), (id, true)],
            };
            st.comps[k].1.insert(i, pair[1]);
            st.comps[k].1.insert(i, pair[0]);
            st.signs.insert(id, sign.value());
        }
        Move::R1Remove { chord } => {
            let t = st.find((chord.0, true))?;
            let h = st.find((chord.0, false))?;
            if !st.neighbours(t, h) {
                return Err("kink endpoints apart".into());
            }
            st.comps[t.0].1.retain(|x| x.0 != chord.0);
            st.signs.remove(&chord.0);
        }
        Move::R2Add {
            tails,
            heads,
            variant,
            sign,
            first,
        } => {
            let (tk, ti) = st.arc(tails)?;
            let (hk, hi) = st.arc(heads)?;
            let a = st.fresh();
            let b = a + 1;
            let tb = vec![(a, true), (b, true)];
            let hb = match variant {
                R2Variant::Parallel => vec![(a, false), (b, false)],
                R2Variant::Antiparallel => vec![(b, false), (a, false)],
            };
            // Insert at the later position first so earlier indices stay put.
            let mut inserts = vec![
                (tk, ti, tb, first == Role::Tail),
                (hk, hi, hb, first == Role::Head),
            ];
            inserts.sort_by(|x, y| (x.0, x.1, x.3).cmp(&(y.0, y.1, y.3)).reverse());
            for (k, i, block, _) in inserts {
                for t in block.into_iter().rev() {
                    st.comps[k].1.insert(i, t);
                }
            }
            st.signs.insert(a, sign.value());
            st.signs.insert(b, -sign.value());
        }
        Move::R2Remove { a, b } => {
            let sa = *st.signs.get(&a.0).ok_or("missing chord")?;
            let sb = *st.signs.get(&b.0).ok_or("missing chord")?;
            if a == b || sa != -sb {
                return Err("R2 pair must be two chords of opposite sign".into());
            }
            let (ta, tb) = (st.find((a.0, true))?, st.find((b.0, true))?);
            let (ha, hb) = (st.find((a.0, false))?, st.find((b.0, false))?);
            if !st.neighbours(ta, tb) || !st.neighbours(ha, hb) {
                return Err("R2 endpoints apart".into());
            }
            for (_, toks) in st.comps.iter_mut() {
                toks.retain(|x| x.0 != a.0 && x.0 != b.0);
            }
            st.signs.remove(&a.0);
            st.signs.remove(&b.0);
        }
        Move::R3 { a, b, c, pattern } => {
            let table = derive_r3_table();
            let pat = table.get(pattern.0 as usize).ok_or("no such pattern")?;
            let sg = |x: ChordId| st.signs.get(&x.0).copied().ok_or("missing chord");
            if [sg(a)?, sg(b)?, sg(c)?] != pat.signs.map(i64::from) || a == b || b == c || a == c {
                return Err("R3 signs".into());
            }
            let pairs = [
                ((a.0, true), (b.0, true), pat.tail_a_first),
                ((a.0, false), (c.0, true), pat.head_a_first),
                ((b.0, false), (c.0, false), pat.head_b_first),
            ];
            let mut swaps = Vec::new();
            for (x, y, x_first) in pairs {
                let (px, py) = (st.find(x)?, st.find(y)?);
                let ok = if x_first {
                    st.right_after(px, py)
                } else {
                    st.right_after(py, px)
                };
                if !ok {
                    return Err("R3 layout".into());
                }
                swaps.push((px, py));
            }
            for (px, py) in swaps {
                st.comps[px.0].1.swap(px.1, py.1);
            }
        }
        Move::F1 { comp, pos } | Move::F2 { comp, pos } | Move::MixedCommute { comp, pos } => {
            let k = st.comp(comp)?;
            let (s, toks) = &mut st.comps[k];
            let n = toks.len();
            let q = if s.is_some() {
                pos + 1
            } else {
                (pos + 1) % n.max(1)
            };
            if pos >= n || q >= n || q == pos {
                return Err("commute position".into());
            }
            let (x, y) = (toks[pos], toks[q]);
            let ok = x.0 != y.0
                && match m {
                    Move::F1 { .. } => x.1 && y.1,
                    Move::F2 { .. } => !x.1 && !y.1,
                    _ => x.1 != y.1,
                };
            if !ok {
                return Err("commute roles".into());
            }
            toks.swap(pos, q);
        }
        Move::Saddle { arc1, arc2 } => {
            let (ki, i) = st.arc(arc1)?;
            let (kj, j) = st.arc(arc2)?;
            if (ki, i) == (kj, j) {
                return Err("saddle on one arc".into());
            }
            if ki == kj {
                let (lo, hi) = (i.min(j), i.max(j));
                let toks = &mut st.comps[ki].1;
                let cut: Vec<Tok> = toks.drain(lo..hi).collect();
                st.comps.push((None, cut));
            } else {
                let (ci, cj) = (st.comps[ki].clone(), st.comps[kj].clone());
                let ((hk, h, host), (gk, g, guest)) = match (ci.0, cj.0) {
                    (Some(_), Some(_)) => return Err("saddle between strands".into()),
                    (Some(_), None) => ((ki, i, ci), (kj, j, cj)),
                    (None, _) => ((kj, j, cj), (ki, i, ci)),
                };
                let g_rot = rotate(&guest.1, if guest.1.is_empty() { 0 } else { g });
                let merged: Vec<Tok> = match host.0 {
                    Some(_) => host.1[..h]
                        .iter()
                        .chain(&g_rot)
                        .chain(&host.1[h..])
                        .copied()
                        .collect(),
                    None => {
                        let h_rot = rotate(&host.1, if host.1.is_empty() { 0 } else { h });
                        h_rot.into_iter().chain(g_rot).collect()
                    }
                };
                st.comps[hk].1 = merged;
                st.comps.remove(gk);
            }
        }
        Move::Birth => st.comps.push((None, Vec::new())),
        Move::Death { comp } => {
            if !matches!(comp, CompRef::Closed(_)) {
                return Err("death of a strand".into());
            }
            let k = st.comp(comp)?;
            if !st.comps[k].1.is_empty() {
                return Err("death of a loop with chords".into());
            }
            st.comps.remove(k);
        }
    }
    Ok(())
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Replay `t` from `d0` with the naive semantics and check each recorded
/// fingerprint. Returns the final diagram's GSLD text.
pub fn replay_independently(d0: &GaussDiagram, t: &Trace) -> Result<String, String> {
    let mut text = write_canonical(d0);
    if digest(&text) != t.initial.as_str() {
        return Err("initial fingerprint differs".into());
    }
    let mut st = State::of(d0);
    for (k, s) in t.steps.iter().enumerate() {
        let n = k + 1;
        if !allowed(t.calculus, s.mv.class()) {
            return Err(format!("step {n}: {} outside {}", s.mv.class(), t.calculus));
        }
        step(&mut st, &s.mv).map_err(|e| format!("step {n} ({}): {e}", s.mv))?;
        // Round-trip through the canonical ordering so loop names stay in sync.
        let d = st.to_diagram().map_err(|e| format!("step {n}: {e}"))?;
        text = write_canonical(&d);
        if let Some(fp) = &s.after {
            if digest(&text) != fp.as_str() {
                return Err(format!("step {n} ({}): fingerprint differs", s.mv));
            }
        }
        st = State::of(&d);
    }
    Ok(text)
}

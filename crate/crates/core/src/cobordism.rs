//! Traces, replay and cobordism-surface bookkeeping.
//!
//! A trace names its calculus and the fingerprint of its starting diagram,
//! then lists one move per line, each optionally followed by the fingerprint
//! of the diagram it produces:
//!
//! ```text
//! trace welded-concordance 3f2a...
//! R1+ arc=s1.1 sign=- order=HT -> 81c0...
//! SAD arc1=s1.0 arc2=s1.2 -> 77d1...
//! F2 comp=s1 pos=0 -> 0b9e... ; expands MIX comp=s1 pos=0
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::diagram::{ChordId, CompRef, ComponentKind, Endpoint, GaussDiagram};
use crate::error::{Error, MoveError, ParseError, Result, TraceError};
use crate::gsld::write_canonical;
use crate::invariants::{linking_vector_by_owner, LinkingVector};
use crate::moves::{apply_tracked, gate, Calculus, KinkOrder, Lineage, Move, MoveClass};

/// SHA-256 of a diagram's canonical GSLD text, as lowercase hex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fingerprint(String);

impl Fingerprint {
    pub fn of(d: &GaussDiagram) -> Self {
        Fingerprint(hex::encode(Sha256::digest(write_canonical(d).as_bytes())))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Fingerprint {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let ok = s.len() == 64
            && s.bytes()
                .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b));
        if ok {
            Ok(Fingerprint(s.to_string()))
        } else {
            Err(format!("bad fingerprint `{s}`"))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub mv: Move,
    /// Fingerprint of the diagram after this step.
    pub after: Option<Fingerprint>,
    /// The derived move this step helps expand, if any.
    pub expands: Option<Move>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace {
    pub calculus: Calculus,
    pub initial: Fingerprint,
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn empty(calculus: Calculus, d: &GaussDiagram) -> Self {
        Trace {
            calculus,
            initial: Fingerprint::of(d),
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, class: MoveClass) -> usize {
        self.steps.iter().filter(|s| s.mv.class() == class).count()
    }

    pub fn moves(&self) -> impl Iterator<Item = &Move> {
        self.steps.iter().map(|s| &s.mv)
    }

    pub fn parse(text: &str) -> std::result::Result<Trace, ParseError> {
        let mut header = None;
        let mut steps = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((calculus, initial)) = &header else {
                let words: Vec<&str> = body.split_whitespace().collect();
                let ["trace", cal, fp] = words.as_slice() else {
                    return Err(ParseError::syntax(
                        line,
                        "expected `trace <calculus> <fingerprint>`",
                    ));
                };
                let cal: Calculus = cal
                    .parse()
                    .map_err(|e: String| ParseError::syntax(line, e))?;
                let fp: Fingerprint = fp
                    .parse()
                    .map_err(|e: String| ParseError::syntax(line, e))?;
                header = Some((cal, fp));
                continue;
            };
            let _ = (calculus, initial);
            let (main, expands) = match body.split_once(';') {
                Some((m, note)) => {
                    let note = note.trim();
                    let inner = note
                        .strip_prefix("expands")
                        .ok_or_else(|| ParseError::syntax(line, "expected `; expands <move>`"))?;
                    let mv: Move = inner
                        .trim()
                        .parse()
                        .map_err(|e: String| ParseError::syntax(line, e))?;
                    (m.trim(), Some(mv))
                }
                None => (body, None),
            };
            let (mv_text, after) = match main.split_once("->") {
                Some((m, fp)) => {
                    let fp: Fingerprint = fp
                        .trim()
                        .parse()
                        .map_err(|e: String| ParseError::syntax(line, e))?;
                    (m.trim(), Some(fp))
                }
                None => (main, None),
            };
            let mv: Move = mv_text
                .parse()
                .map_err(|e: String| ParseError::syntax(line, e))?;
            steps.push(Step { mv, after, expands });
        }
        let (calculus, initial) = header.ok_or_else(|| {
            ParseError::syntax(text.lines().count().max(1), "missing trace header")
        })?;
        Ok(Trace {
            calculus,
            initial,
            steps,
        })
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trace {} {}", self.calculus, self.initial)?;
        for s in &self.steps {
            write!(f, "{}", s.mv)?;
            if let Some(fp) = &s.after {
                write!(f, " -> {fp}")?;
            }
            if let Some(parent) = &s.expands {
                write!(f, " ; expands {parent}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates a trace while applying its moves.
pub(crate) struct TraceBuilder {
    calculus: Calculus,
    initial: Fingerprint,
    cur: GaussDiagram,
    steps: Vec<Step>,
}

impl TraceBuilder {
    pub fn new(calculus: Calculus, d: &GaussDiagram) -> Self {
        TraceBuilder {
            calculus,
            initial: Fingerprint::of(d),
            cur: d.clone(),
            steps: Vec::new(),
        }
    }

    pub fn current(&self) -> &GaussDiagram {
        &self.cur
    }

    pub fn push(&mut self, mv: Move) -> std::result::Result<(), MoveError> {
        self.push_step(mv, None)
    }

    pub fn push_step(
        &mut self,
        mv: Move,
        expands: Option<Move>,
    ) -> std::result::Result<(), MoveError> {
        gate(&mv, self.calculus)?;
        self.cur = apply_tracked(&self.cur, &mv)?.diagram;
        self.steps.push(Step {
            mv,
            after: Some(Fingerprint::of(&self.cur)),
            expands,
        });
        Ok(())
    }

    pub fn extend(
        &mut self,
        moves: impl IntoIterator<Item = Move>,
    ) -> std::result::Result<(), MoveError> {
        moves.into_iter().try_for_each(|m| self.push(m))
    }

    pub fn finish(self) -> (GaussDiagram, Trace) {
        (
            self.cur,
            Trace {
                calculus: self.calculus,
                initial: self.initial,
                steps: self.steps,
            },
        )
    }
}

/// Replay `t` from `d0`, calling `visit` with the step index (1-based), the
/// diagram before the step, the step and its outcome.
pub(crate) fn replay_with(
    d0: &GaussDiagram,
    t: &Trace,
    mut visit: impl FnMut(usize, &GaussDiagram, &Step, &crate::moves::Applied),
) -> std::result::Result<GaussDiagram, TraceError> {
    let found = Fingerprint::of(d0);
    if found != t.initial {
        return Err(TraceError::InitialMismatch {
            expected: t.initial.clone(),
            found,
        });
    }
    let mut cur = d0.clone();
    for (k, s) in t.steps.iter().enumerate() {
        let step = k + 1;
        gate(&s.mv, t.calculus).map_err(|error| TraceError::Step { step, error })?;
        let applied =
            apply_tracked(&cur, &s.mv).map_err(|error| TraceError::Step { step, error })?;
        if let Some(expected) = &s.after {
            let found = Fingerprint::of(&applied.diagram);
            if &found != expected {
                return Err(TraceError::FingerprintMismatch {
                    step,
                    expected: expected.clone(),
                    found,
                });
            }
        }
        visit(step, &cur, s, &applied);
        cur = applied.diagram;
    }
    Ok(cur)
}

/// Replay a trace with calculus gating and fingerprint checks.
pub fn replay_trace(d0: &GaussDiagram, t: &Trace) -> Result<GaussDiagram> {
    Ok(replay_with(d0, t, |_, _, _, _| {})?)
}

/// Every intermediate diagram of a replay, starting with `d0`.
pub fn replay_states(d0: &GaussDiagram, t: &Trace) -> Result<Vec<GaussDiagram>> {
    let mut states = vec![d0.clone()];
    let last = replay_with(d0, t, |_, _, _, a| states.push(a.diagram.clone()))?;
    debug_assert_eq!(states.last(), Some(&last));
    Ok(states)
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SurfaceComponent {
    pub saddles: usize,
    pub births: usize,
    pub deaths: usize,
    /// Strands whose initial open component lies in this surface component.
    pub strands: BTreeSet<usize>,
    /// Strands whose final open component lies in this surface component.
    pub final_strands: BTreeSet<usize>,
    pub initial_closed: usize,
    pub final_closed: usize,
}

impl SurfaceComponent {
    /// Euler characteristic of the abstract surface: each strand sheet is a
    /// disk, each initial loop an annulus; saddles subtract one, births and
    /// deaths add one.
    pub fn euler_characteristic(&self) -> i64 {
        self.strands.len() as i64 - self.saddles as i64 + self.births as i64 + self.deaths as i64
    }

    pub fn boundary_components(&self) -> i64 {
        (self.strands.len() + self.initial_closed + self.final_closed) as i64
    }

    fn genus_numerator(&self) -> i64 {
        2 - self.boundary_components() - self.euler_characteristic()
    }

    /// For a single strand with no closed boundary this is `(s - b - d) / 2`.
    pub fn genus(&self) -> i64 {
        self.genus_numerator().div_euclid(2)
    }

    pub fn genus_is_integral(&self) -> bool {
        self.genus_numerator() % 2 == 0
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CobordismSurface {
    pub components: Vec<SurfaceComponent>,
    pub strands: usize,
}

impl CobordismSurface {
    pub fn saddles(&self) -> usize {
        self.components.iter().map(|c| c.saddles).sum()
    }

    pub fn births(&self) -> usize {
        self.components.iter().map(|c| c.births).sum()
    }

    pub fn deaths(&self) -> usize {
        self.components.iter().map(|c| c.deaths).sum()
    }

    /// Surface component holding strand `i`.
    pub fn of_strand(&self, i: usize) -> Option<&SurfaceComponent> {
        self.components.iter().find(|c| c.strands.contains(&i))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        let (keep, drop) = (ra.min(rb), ra.max(rb));
        self.parent[drop] = keep;
        keep
    }
}

/// Replay `t` and build its abstract surface.
pub fn surface_stats(d0: &GaussDiagram, t: &Trace) -> Result<CobordismSurface> {
    let mut uf = UnionFind { parent: Vec::new() };
    let mut stats: Vec<SurfaceComponent> = Vec::new();
    let mut nodes: Vec<usize> = Vec::new();
    for c in d0.components() {
        let node = uf.add();
        let mut s = SurfaceComponent::default();
        match c.kind {
            ComponentKind::Open(i) => {
                s.strands.insert(i);
            }
            ComponentKind::Closed => s.initial_closed = 1,
        }
        stats.push(s);
        nodes.push(node);
    }
    let last = replay_with(d0, t, |_, _, step, applied| {
        let mut next = Vec::with_capacity(applied.lineage.len());
        let mut saddle_root = None;
        for l in &applied.lineage {
            let node = match *l {
                Lineage::Same(i) => nodes[i],
                Lineage::Split(i) => {
                    saddle_root = Some(nodes[i]);
                    nodes[i]
                }
                Lineage::Merge(i, j) => {
                    let r = uf.union(nodes[i], nodes[j]);
                    saddle_root = Some(r);
                    r
                }
                Lineage::Born => {
                    let n = uf.add();
                    stats.push(SurfaceComponent {
                        births: 1,
                        ..Default::default()
                    });
                    n
                }
            };
            next.push(node);
        }
        if step.mv.class() == MoveClass::Saddle {
            let r = uf.find(saddle_root.expect("saddle lineage"));
            stats[r].saddles += 1;
        }
        if let Some(k) = applied.died {
            let r = uf.find(nodes[k]);
            stats[r].deaths += 1;
        }
        nodes = next;
    })?;
    let mut merged: BTreeMap<usize, SurfaceComponent> = BTreeMap::new();
    for (node, s) in stats.into_iter().enumerate() {
        let r = uf.find(node);
        let slot = merged.entry(r).or_default();
        slot.saddles += s.saddles;
        slot.births += s.births;
        slot.deaths += s.deaths;
        slot.strands.extend(s.strands);
        slot.initial_closed += s.initial_closed;
    }
    for (ci, c) in last.components().iter().enumerate() {
        let slot = merged.entry(uf.find(nodes[ci])).or_default();
        match c.kind {
            ComponentKind::Open(i) => {
                slot.final_strands.insert(i);
            }
            ComponentKind::Closed => slot.final_closed += 1,
        }
    }
    Ok(CobordismSurface {
        components: merged.into_values().collect(),
        strands: d0.strands(),
    })
}

/// Linking vector of every frame of `t` (starting with `d0`), each closed
/// component counted towards the strand whose surface component it lies on.
/// Components on a surface piece without a strand are ignored.
pub fn surface_linking_vectors(d0: &GaussDiagram, t: &Trace) -> Result<Vec<LinkingVector>> {
    let mut uf = UnionFind { parent: Vec::new() };
    let mut strand_of: Vec<Option<usize>> = Vec::new();
    let mut nodes: Vec<usize> = Vec::new();
    for c in d0.components() {
        nodes.push(uf.add());
        strand_of.push(match c.kind {
            ComponentKind::Open(i) => Some(i),
            ComponentKind::Closed => None,
        });
    }
    let owners =
        |uf: &mut UnionFind, nodes: &[usize], strand_of: &[Option<usize>]| -> Vec<Option<usize>> {
            nodes.iter().map(|&n| strand_of[uf.find(n)]).collect()
        };
    let mut out = vec![linking_vector_by_owner(
        d0,
        &owners(&mut uf, &nodes, &strand_of),
    )];
    replay_with(d0, t, |_, _, _, applied| {
        let mut next = Vec::with_capacity(applied.lineage.len());
        for l in &applied.lineage {
            next.push(match *l {
                Lineage::Same(i) | Lineage::Split(i) => nodes[i],
                Lineage::Merge(i, j) => {
                    let (a, b) = (strand_of[uf.find(nodes[i])], strand_of[uf.find(nodes[j])]);
                    let r = uf.union(nodes[i], nodes[j]);
                    strand_of[r] = match (a, b) {
                        (Some(x), Some(y)) => Some(x.min(y)),
                        (x, y) => x.or(y),
                    };
                    r
                }
                Lineage::Born => {
                    strand_of.push(None);
                    uf.add()
                }
            });
        }
        nodes = next;
        out.push(linking_vector_by_owner(
            &applied.diagram,
            &owners(&mut uf, &nodes, &strand_of),
        ));
    })?;
    Ok(out)
}

/// A failed string-link cobordism condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceViolation {
    /// The starting diagram has closed components.
    InitialClosed(usize),
    /// The final diagram has closed components.
    LeftoverClosed(usize),
    /// Two strands lie on one surface component.
    StrandMixing(usize, usize),
    /// A strand's start and end lie on different surface components.
    StrandDetached(usize),
    /// A surface component touching no strand.
    FloatingComponent(usize),
}

impl fmt::Display for SurfaceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceViolation::InitialClosed(k) => {
                write!(f, "initial diagram has {k} closed component(s)")
            }
            SurfaceViolation::LeftoverClosed(k) => write!(f, "leftover closed component(s): {k}"),
            SurfaceViolation::StrandMixing(i, j) => {
                write!(f, "strands {i} and {j} share a surface component")
            }
            SurfaceViolation::StrandDetached(i) => {
                write!(
                    f,
                    "strand {i} starts and ends on different surface components"
                )
            }
            SurfaceViolation::FloatingComponent(k) => {
                write!(f, "surface component {k} touches no strand")
            }
        }
    }
}

/// Conditions for `t` to describe a string-link cobordism; empty when it does.
pub fn is_string_link_cobordism(d0: &GaussDiagram, t: &Trace) -> Result<Vec<SurfaceViolation>> {
    let surface = surface_stats(d0, t)?;
    let mut out = Vec::new();
    if d0.closed_count() > 0 {
        out.push(SurfaceViolation::InitialClosed(d0.closed_count()));
    }
    let leftover: usize = surface.components.iter().map(|c| c.final_closed).sum();
    if leftover > 0 {
        out.push(SurfaceViolation::LeftoverClosed(leftover));
    }
    for (k, c) in surface.components.iter().enumerate() {
        let mut it = c.strands.iter();
        if let Some(&first) = it.next() {
            for &other in it {
                out.push(SurfaceViolation::StrandMixing(first, other));
            }
        } else if c.final_strands.is_empty() {
            out.push(SurfaceViolation::FloatingComponent(k + 1));
        }
        for &i in c.strands.symmetric_difference(&c.final_strands) {
            if c.strands.contains(&i) {
                out.push(SurfaceViolation::StrandDetached(i));
            }
        }
    }
    Ok(out)
}

/// A string-link cobordism whose every surface component has genus zero.
pub fn is_concordance(d0: &GaussDiagram, t: &Trace) -> Result<bool> {
    if !is_string_link_cobordism(d0, t)?.is_empty() {
        return Ok(false);
    }
    Ok(surface_stats(d0, t)?
        .components
        .iter()
        .all(|c| c.genus() == 0 && c.genus_is_integral()))
}

fn require_long_knot(d: &GaussDiagram) -> Result<()> {
    d.ensure_valid()?;
    if d.strands() != 1 {
        return Err(Error::Unsupported(format!(
            "welded unknotting needs a 1-strand diagram, got {} strands",
            d.strands()
        )));
    }
    if !d.is_string_link() {
        return Err(Error::ClosedComponents);
    }
    Ok(())
}

fn arc_before(d: &GaussDiagram, e: Endpoint) -> crate::diagram::Arc {
    let (ci, p) = d.locate(e).expect("endpoint present");
    crate::diagram::Arc::new(d.comp_ref(ci), p)
}

/// A genus-zero welded cobordism from a long welded knot to the trivial
/// 1-strand diagram. For each chord `c` a kink `c'` of opposite sign is
/// added just after `H_c`; a saddle moves `H_c H_c'` onto its own loop; F1
/// moves bring each `T_c'` next to `T_c` on the strand, which now carries
/// only tails; an R2 move cancels each pair and a death removes each loop.
pub fn welded_unknot_trace(d: &GaussDiagram) -> Result<Trace> {
    require_long_knot(d)?;
    let mut b = TraceBuilder::new(Calculus::WeldedConcordance, d);
    let originals: Vec<ChordId> = d.chords().keys().copied().collect();
    let mut partner = BTreeMap::new();
    for &c in &originals {
        let cur = b.current();
        let (_, p) = cur.locate(Endpoint::head(c)).expect("head present");
        let arc = crate::diagram::Arc::new(CompRef::Strand(1), p + 1);
        let sign = cur.sign(c).expect("chord").flip();
        partner.insert(c, cur.next_chord_id());
        b.push(Move::R1Add {
            arc,
            sign,
            order: KinkOrder::HeadFirst,
        })?;
    }
    for &c in &originals {
        let cur = b.current();
        let arc1 = arc_before(cur, Endpoint::head(c));
        let arc2 = arc_before(cur, Endpoint::tail(partner[&c]));
        b.push(Move::Saddle { arc1, arc2 })?;
    }
    for &c in &originals {
        let tc = Endpoint::tail(c);
        let tp = Endpoint::tail(partner[&c]);
        loop {
            let strand = &b.current().strand(1).expect("strand").endpoints;
            let p = strand.iter().position(|&e| e == tc).expect("tail");
            let q = strand.iter().position(|&e| e == tp).expect("tail");
            let pos = if q > p + 1 {
                q - 1
            } else if q < p {
                q
            } else {
                break;
            };
            b.push(Move::F1 {
                comp: CompRef::Strand(1),
                pos,
            })?;
        }
    }
    for &c in &originals {
        b.push(Move::R2Remove {
            a: c,
            b: partner[&c],
        })?;
    }
    for _ in &originals {
        b.push(Move::Death {
            comp: CompRef::Closed(1),
        })?;
    }
    let (end, trace) = b.finish();
    debug_assert_eq!(end, GaussDiagram::empty(1));
    Ok(trace)
}

//! The Gauss-diagram data model.
//!
//! A diagram has `n` ordered open strands plus any number of closed
//! components. Each chord is an arrow from its [`Role::Tail`] (the
//! over-passage) to its [`Role::Head`] (the under-passage) and carries the
//! writhe of its crossing as a [`Sign`].
//!
//! Diagrams are kept in canonical storage order: open strands first in strand
//! order, then closed components rotated to their least rotation and sorted.
//! Two diagrams are therefore semantically equal exactly when they compare
//! equal with `==`, and closed-component addresses (`c1`, `c2`, ...) are a
//! function of the diagram's content.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, Violations};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChordId(pub u32);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(v: i64) -> Option<Sign> {
        match v.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Sign {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(()),
        }
    }
}

/// Tail = over-passage, Head = under-passage.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Role {
    Tail,
    Head,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::Tail => Role::Head,
            Role::Head => Role::Tail,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
}

impl Endpoint {
    pub fn tail(chord: ChordId) -> Self {
        Endpoint {
            chord,
            role: Role::Tail,
        }
    }

    pub fn head(chord: ChordId) -> Self {
        Endpoint {
            chord,
            role: Role::Head,
        }
    }

    pub fn partner(self) -> Endpoint {
        Endpoint {
            chord: self.chord,
            role: self.role.other(),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::Tail => write!(f, "T{}", self.chord),
            Role::Head => write!(f, "H{}", self.chord),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ComponentKind {
    /// Open strand with its 1-based strand index.
    Open(usize),
    Closed,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Component {
    pub kind: ComponentKind,
    pub endpoints: Vec<Endpoint>,
}

impl Component {
    pub fn open(strand: usize, endpoints: Vec<Endpoint>) -> Self {
        Component {
            kind: ComponentKind::Open(strand),
            endpoints,
        }
    }

    pub fn closed(endpoints: Vec<Endpoint>) -> Self {
        Component {
            kind: ComponentKind::Closed,
            endpoints,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.kind == ComponentKind::Closed
    }

    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    /// Number of addressable arcs: `m + 1` for open, `max(m, 1)` for closed.
    pub fn arc_count(&self) -> usize {
        if self.is_closed() {
            self.len().max(1)
        } else {
            self.len() + 1
        }
    }

    /// Position following `pos`, wrapping on closed components.
    pub fn successor(&self, pos: usize) -> Option<usize> {
        let m = self.len();
        if pos + 1 < m {
            Some(pos + 1)
        } else if self.is_closed() && m >= 2 && pos + 1 == m {
            Some(0)
        } else {
            None
        }
    }

    /// True when the endpoint at `q` immediately follows the one at `p`.
    pub fn follows(&self, p: usize, q: usize) -> bool {
        self.successor(p) == Some(q)
    }

    pub fn adjacent(&self, p: usize, q: usize) -> bool {
        p != q && (self.follows(p, q) || self.follows(q, p))
    }
}

/// Component address as written in text: `s<i>` for strands, `c<j>` for the
/// j-th closed component in canonical order (both 1-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CompRef {
    Strand(usize),
    Closed(usize),
}

impl fmt::Display for CompRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompRef::Strand(i) => write!(f, "s{i}"),
            CompRef::Closed(j) => write!(f, "c{j}"),
        }
    }
}

impl FromStr for CompRef {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("bad component reference `{s}`");
        let (kind, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(k, _)| k));
        let idx: usize = num.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match kind {
            "s" => Ok(CompRef::Strand(idx)),
            "c" => Ok(CompRef::Closed(idx)),
            _ => Err(bad()),
        }
    }
}

/// The gap before endpoint `index` of a component. Open components with `m`
/// endpoints have arcs `0..=m`; closed ones have `max(m, 1)` arcs, arc 0 being
/// the gap at the basepoint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arc {
    pub comp: CompRef,
    pub index: usize,
}

impl Arc {
    pub fn new(comp: CompRef, index: usize) -> Self {
        Arc { comp, index }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.comp, self.index)
    }
}

impl FromStr for Arc {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (comp, index) = s.split_once('.').ok_or_else(|| format!("bad arc `{s}`"))?;
        Ok(Arc {
            comp: comp.parse()?,
            index: index
                .parse()
                .map_err(|_| format!("bad arc index in `{s}`"))?,
        })
    }
}

/// A broken model invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    MissingStrand(usize),
    DuplicateStrand(usize),
    StrandOutOfRange(usize),
    ZeroChordId,
    /// A chord whose endpoints are not exactly one tail and one head.
    ChordEndpoints {
        chord: ChordId,
        tails: usize,
        heads: usize,
    },
    /// An endpoint whose chord has no record.
    Dangling {
        chord: ChordId,
        comp: CompRef,
        pos: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingStrand(i) => write!(f, "strand s{i} has no open component"),
            Violation::DuplicateStrand(i) => write!(f, "strand s{i} appears more than once"),
            Violation::StrandOutOfRange(i) => write!(f, "open component s{i} exceeds strand count"),
            Violation::ZeroChordId => write!(f, "chord id 0 is not allowed"),
            Violation::ChordEndpoints {
                chord,
                tails,
                heads,
            } => write!(
                f,
                "chord {chord} has {tails} tail(s) and {heads} head(s), expected one of each"
            ),
            Violation::Dangling { chord, comp, pos } => {
                write!(
                    f,
                    "endpoint of undeclared chord {chord} at {comp} position {pos}"
                )
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussDiagram {
    strands: usize,
    components: Vec<Component>,
    chords: BTreeMap<ChordId, Sign>,
}

/// Least rotation of a cyclic endpoint sequence, and its offset.
pub(crate) fn least_rotation(seq: &[Endpoint]) -> usize {
    let m = seq.len();
    (0..m)
        .min_by(|&a, &b| {
            let ra = seq[a..].iter().chain(&seq[..a]);
            let rb = seq[b..].iter().chain(&seq[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0)
}

pub(crate) fn rotated(seq: &[Endpoint], start: usize) -> Vec<Endpoint> {
    if seq.is_empty() {
        return Vec::new();
    }
    seq[start..].iter().chain(&seq[..start]).copied().collect()
}

/// Sort components into canonical storage order. Returns the permutation
/// mapping each new index to its old index.
pub(crate) fn canonicalize(mut components: Vec<Component>) -> (Vec<Component>, Vec<usize>) {
    for c in components.iter_mut().filter(|c| c.is_closed()) {
        let r = least_rotation(&c.endpoints);
        c.endpoints.rotate_left(r);
    }
    let mut order: Vec<usize> = (0..components.len()).collect();
    order.sort_by(|&a, &b| {
        let (ca, cb) = (&components[a], &components[b]);
        match (ca.kind, cb.kind) {
            (ComponentKind::Open(i), ComponentKind::Open(j)) => i.cmp(&j),
            (ComponentKind::Open(_), ComponentKind::Closed) => std::cmp::Ordering::Less,
            (ComponentKind::Closed, ComponentKind::Open(_)) => std::cmp::Ordering::Greater,
            (ComponentKind::Closed, ComponentKind::Closed) => ca.endpoints.cmp(&cb.endpoints),
        }
    });
    let mut slots: Vec<Option<Component>> = components.into_iter().map(Some).collect();
    let sorted = order
        .iter()
        .map(|&k| slots[k].take().expect("permutation"))
        .collect();
    (sorted, order)
}

/// Relabeled endpoint key, component index and rotation.
type RelabelCandidate = (Vec<(u32, Role, i8)>, usize, usize);

impl GaussDiagram {
    /// The trivial diagram on `n` strands.
    pub fn empty(n: usize) -> Self {
        GaussDiagram {
            strands: n,
            components: (1..=n).map(|i| Component::open(i, Vec::new())).collect(),
            chords: BTreeMap::new(),
        }
    }

    /// Assemble a diagram without validating it; the result is canonically
    /// ordered but may violate the model invariants (see [`Self::validate`]).
    pub fn from_parts(
        strands: usize,
        components: Vec<Component>,
        chords: BTreeMap<ChordId, Sign>,
    ) -> Self {
        let (components, _) = canonicalize(components);
        GaussDiagram {
            strands,
            components,
            chords,
        }
    }

    pub fn try_from_parts(
        strands: usize,
        components: Vec<Component>,
        chords: BTreeMap<ChordId, Sign>,
    ) -> Result<Self> {
        let d = Self::from_parts(strands, components, chords);
        d.ensure_valid()?;
        Ok(d)
    }

    pub(crate) fn from_sorted(
        strands: usize,
        components: Vec<Component>,
        chords: BTreeMap<ChordId, Sign>,
    ) -> Self {
        GaussDiagram {
            strands,
            components,
            chords,
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn chords(&self) -> &BTreeMap<ChordId, Sign> {
        &self.chords
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn sign(&self, chord: ChordId) -> Option<Sign> {
        self.chords.get(&chord).copied()
    }

    pub fn closed_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_closed()).count()
    }

    pub fn is_string_link(&self) -> bool {
        self.closed_count() == 0
    }

    /// Endpoint sequence of strand `i` (1-based).
    pub fn strand(&self, i: usize) -> Option<&Component> {
        self.component(CompRef::Strand(i))
    }

    pub fn component(&self, r: CompRef) -> Option<&Component> {
        self.component_index(r).map(|k| &self.components[k])
    }

    pub fn component_index(&self, r: CompRef) -> Option<usize> {
        match r {
            CompRef::Strand(i) => self
                .components
                .iter()
                .position(|c| c.kind == ComponentKind::Open(i)),
            CompRef::Closed(j) => {
                let first = self.components.iter().position(|c| c.is_closed())?;
                let k = first + j.checked_sub(1)?;
                (k < self.components.len()).then_some(k)
            }
        }
    }

    pub fn comp_ref(&self, index: usize) -> CompRef {
        match self.components[index].kind {
            ComponentKind::Open(i) => CompRef::Strand(i),
            ComponentKind::Closed => {
                let before = self.components[..index]
                    .iter()
                    .filter(|c| c.is_closed())
                    .count();
                CompRef::Closed(before + 1)
            }
        }
    }

    /// Component index and position of an endpoint.
    pub fn locate(&self, e: Endpoint) -> Option<(usize, usize)> {
        self.components
            .iter()
            .enumerate()
            .find_map(|(ci, c)| c.endpoints.iter().position(|&x| x == e).map(|p| (ci, p)))
    }

    /// Component index of the tail and of the head of every chord.
    pub fn chord_components(&self) -> BTreeMap<ChordId, (usize, usize)> {
        let mut tails = BTreeMap::new();
        let mut heads = BTreeMap::new();
        for (ci, c) in self.components.iter().enumerate() {
            for e in &c.endpoints {
                match e.role {
                    Role::Tail => tails.insert(e.chord, ci),
                    Role::Head => heads.insert(e.chord, ci),
                };
            }
        }
        tails
            .into_iter()
            .filter_map(|(id, t)| heads.get(&id).map(|&h| (id, (t, h))))
            .collect()
    }

    /// Smallest id larger than every chord id in use.
    pub fn next_chord_id(&self) -> ChordId {
        ChordId(self.chords.keys().next_back().map_or(1, |c| c.0 + 1))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeMap::<usize, usize>::new();
        for c in &self.components {
            if let ComponentKind::Open(i) = c.kind {
                *seen.entry(i).or_default() += 1;
            }
        }
        for i in 1..=self.strands {
            match seen.get(&i) {
                None => out.push(Violation::MissingStrand(i)),
                Some(&k) if k > 1 => out.push(Violation::DuplicateStrand(i)),
                _ => {}
            }
        }
        for &i in seen.keys() {
            if i == 0 || i > self.strands {
                out.push(Violation::StrandOutOfRange(i));
            }
        }
        if self.chords.contains_key(&ChordId(0)) {
            out.push(Violation::ZeroChordId);
        }
        let mut counts = BTreeMap::<ChordId, (usize, usize)>::new();
        for id in self.chords.keys() {
            counts.insert(*id, (0, 0));
        }
        for (ci, c) in self.components.iter().enumerate() {
            for (pos, e) in c.endpoints.iter().enumerate() {
                match counts.get_mut(&e.chord) {
                    Some(slot) => match e.role {
                        Role::Tail => slot.0 += 1,
                        Role::Head => slot.1 += 1,
                    },
                    None => out.push(Violation::Dangling {
                        chord: e.chord,
                        comp: self.comp_ref(ci),
                        pos,
                    }),
                }
            }
        }
        for (chord, (tails, heads)) in counts {
            if (tails, heads) != (1, 1) {
                out.push(Violation::ChordEndpoints {
                    chord,
                    tails,
                    heads,
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(Violations(v)))
        }
    }

    /// Concatenate strand `i` of `self` with strand `i` of `other`. Chord ids
    /// of `other` are shifted by the largest id of `self`; closed components
    /// of both are carried over.
    pub fn connected_sum(&self, other: &GaussDiagram) -> Result<GaussDiagram> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let offset = self.chords.keys().next_back().map_or(0, |c| c.0);
        let shift = |e: &Endpoint| Endpoint {
            chord: ChordId(e.chord.0 + offset),
            role: e.role,
        };
        let mut chords = self.chords.clone();
        chords.extend(
            other
                .chords
                .iter()
                .map(|(id, s)| (ChordId(id.0 + offset), *s)),
        );
        let mut components: Vec<Component> = Vec::new();
        for i in 1..=self.strands {
            let mut seq = self
                .strand(i)
                .map(|c| c.endpoints.clone())
                .unwrap_or_default();
            if let Some(c) = other.strand(i) {
                seq.extend(c.endpoints.iter().map(shift));
            }
            components.push(Component::open(i, seq));
        }
        components.extend(self.components.iter().filter(|c| c.is_closed()).cloned());
        components.extend(
            other
                .components
                .iter()
                .filter(|c| c.is_closed())
                .map(|c| Component::closed(c.endpoints.iter().map(shift).collect())),
        );
        Ok(GaussDiagram::from_parts(self.strands, components, chords))
    }

    /// Join the ends of every strand. The result has no open strands.
    pub fn closure(&self) -> GaussDiagram {
        self.closure_components().0
    }

    /// Closure together with the component index each former strand became.
    pub fn closure_components(&self) -> (GaussDiagram, Vec<usize>) {
        let components: Vec<Component> = self
            .components
            .iter()
            .map(|c| Component::closed(c.endpoints.clone()))
            .collect();
        let (components, perm) = canonicalize(components);
        let mut strand_comp = vec![0; self.strands];
        for (new_idx, &old) in perm.iter().enumerate() {
            if let ComponentKind::Open(i) = self.components[old].kind {
                strand_comp[i - 1] = new_idx;
            }
        }
        (
            GaussDiagram::from_sorted(0, components, self.chords.clone()),
            strand_comp,
        )
    }

    /// Reverse every component and negate every chord sign. Involution.
    pub fn concordance_inverse(&self) -> GaussDiagram {
        let components = self
            .components
            .iter()
            .map(|c| Component {
                kind: c.kind,
                endpoints: c.endpoints.iter().rev().copied().collect(),
            })
            .collect();
        let chords = self.chords.iter().map(|(id, s)| (*id, s.flip())).collect();
        GaussDiagram::from_parts(self.strands, components, chords)
    }

    /// Rename chords through `map`; chords missing from the map keep their id.
    pub fn relabeled(&self, map: &BTreeMap<ChordId, ChordId>) -> GaussDiagram {
        let f = |id: ChordId| map.get(&id).copied().unwrap_or(id);
        let components = self
            .components
            .iter()
            .map(|c| Component {
                kind: c.kind,
                endpoints: c
                    .endpoints
                    .iter()
                    .map(|e| Endpoint {
                        chord: f(e.chord),
                        role: e.role,
                    })
                    .collect(),
            })
            .collect();
        let chords = self.chords.iter().map(|(id, s)| (f(*id), *s)).collect();
        GaussDiagram::from_parts(self.strands, components, chords)
    }

    /// Chord ids renumbered 1, 2, ... by first appearance: strands in order,
    /// then closed components greedily by least relative encoding.
    pub fn canonical_relabel(&self) -> GaussDiagram {
        self.relabeled(&self.canonical_relabel_map())
    }

    /// The renaming applied by [`Self::canonical_relabel`].
    pub fn canonical_relabel_map(&self) -> BTreeMap<ChordId, ChordId> {
        let mut map = BTreeMap::new();
        let mut next = 1u32;
        let mut assign = |map: &mut BTreeMap<ChordId, ChordId>, id: ChordId| {
            map.entry(id).or_insert_with(|| {
                let v = ChordId(next);
                next += 1;
                v
            });
        };
        for c in self.components.iter().filter(|c| !c.is_closed()) {
            for e in &c.endpoints {
                assign(&mut map, e.chord);
            }
        }
        let mut remaining: Vec<&Component> =
            self.components.iter().filter(|c| c.is_closed()).collect();
        while !remaining.is_empty() {
            // Encode every rotation of every remaining loop with provisional
            // numbers for unassigned chords and take the least.
            let base = map.len() as u32 + 1;
            let mut best: Option<RelabelCandidate> = None;
            for (k, c) in remaining.iter().enumerate() {
                for r in 0..c.len().max(1) {
                    let seq = rotated(&c.endpoints, r);
                    let mut local = BTreeMap::new();
                    let enc: Vec<(u32, Role, i8)> = seq
                        .iter()
                        .map(|e| {
                            let id = match map.get(&e.chord) {
                                Some(v) => v.0,
                                None => {
                                    let n = base + local.len() as u32;
                                    *local.entry(e.chord).or_insert(n)
                                }
                            };
                            let s = self.sign(e.chord).map_or(0, |s| s.value() as i8);
                            (id, e.role, s)
                        })
                        .collect();
                    if best.as_ref().is_none_or(|b| enc < b.0) {
                        best = Some((enc, k, r));
                    }
                }
            }
            let (_, k, r) = best.expect("nonempty");
            let c = remaining.remove(k);
            for e in rotated(&c.endpoints, r) {
                assign(&mut map, e.chord);
            }
        }
        for id in self.chords.keys() {
            assign(&mut map, *id);
        }
        map
    }

    /// Equality up to renaming chords.
    pub fn is_isomorphic(&self, other: &GaussDiagram) -> bool {
        self.strands == other.strands
            && self.chord_count() == other.chord_count()
            && self.canonical_relabel() == other.canonical_relabel()
    }

    /// Chord-id bijection between two string-link diagrams with the same
    /// shape, read off position by position.
    pub fn positional_map(&self, other: &GaussDiagram) -> Option<BTreeMap<ChordId, ChordId>> {
        if self.strands != other.strands || self.components.len() != other.components.len() {
            return None;
        }
        let mut map = BTreeMap::new();
        for (a, b) in self.components.iter().zip(&other.components) {
            if a.kind != b.kind || a.len() != b.len() {
                return None;
            }
            for (x, y) in a.endpoints.iter().zip(&b.endpoints) {
                if x.role != y.role || self.sign(x.chord) != other.sign(y.chord) {
                    return None;
                }
                if *map.entry(x.chord).or_insert(y.chord) != y.chord {
                    return None;
                }
            }
        }
        let images: BTreeSet<_> = map.values().collect();
        (images.len() == map.len() && map.len() == self.chord_count()).then_some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: u32) -> Endpoint {
        Endpoint::tail(ChordId(i))
    }
    fn h(i: u32) -> Endpoint {
        Endpoint::head(ChordId(i))
    }
    fn chords(list: &[(u32, Sign)]) -> BTreeMap<ChordId, Sign> {
        list.iter().map(|(i, s)| (ChordId(*i), *s)).collect()
    }

    #[test]
    fn empty_diagram_is_valid() {
        assert!(GaussDiagram::empty(1).validate().is_empty());
        assert!(GaussDiagram::empty(0).validate().is_empty());
    }

    #[test]
    fn two_heads_is_one_violation() {
        let d = GaussDiagram::from_parts(
            1,
            vec![Component::open(1, vec![h(1), h(1)])],
            chords(&[(1, Sign::Plus)]),
        );
        let v = d.validate();
        assert_eq!(
            v,
            vec![Violation::ChordEndpoints {
                chord: ChordId(1),
                tails: 0,
                heads: 2
            }]
        );
    }

    #[test]
    fn missing_strand_is_one_violation() {
        let d = GaussDiagram::from_parts(2, vec![Component::open(1, vec![])], BTreeMap::new());
        assert_eq!(d.validate(), vec![Violation::MissingStrand(2)]);
    }

    #[test]
    fn dangling_endpoint() {
        let d = GaussDiagram::from_parts(
            1,
            vec![Component::open(1, vec![t(4), h(4)])],
            BTreeMap::new(),
        );
        assert_eq!(d.validate().len(), 2);
    }

    #[test]
    fn closed_rotation_is_canonical() {
        let a = GaussDiagram::from_parts(
            1,
            vec![
                Component::open(1, vec![]),
                Component::closed(vec![h(1), t(2), t(1), h(2)]),
            ],
            chords(&[(1, Sign::Plus), (2, Sign::Minus)]),
        );
        let b = GaussDiagram::from_parts(
            1,
            vec![
                Component::closed(vec![t(1), h(2), h(1), t(2)]),
                Component::open(1, vec![]),
            ],
            chords(&[(1, Sign::Plus), (2, Sign::Minus)]),
        );
        assert_eq!(a, b);
        assert_eq!(a.components()[1].endpoints, vec![t(1), h(2), h(1), t(2)]);
        assert_eq!(a.comp_ref(1), CompRef::Closed(1));
    }

    #[test]
    fn sum_with_empty_is_identity() {
        let d = GaussDiagram::from_parts(
            2,
            vec![
                Component::open(1, vec![t(1)]),
                Component::open(2, vec![h(1)]),
            ],
            chords(&[(1, Sign::Plus)]),
        );
        let e = GaussDiagram::empty(2);
        assert_eq!(d.connected_sum(&e).unwrap(), d);
        assert_eq!(e.connected_sum(&d).unwrap(), d);
        assert!(matches!(
            d.connected_sum(&GaussDiagram::empty(3)),
            Err(Error::StrandMismatch(2, 3))
        ));
    }

    #[test]
    fn closure_of_empty_strand() {
        let c = GaussDiagram::empty(1).closure();
        assert_eq!(c.strands(), 0);
        assert_eq!(c.components(), &[Component::closed(vec![])]);
    }

    #[test]
    fn inverse_of_single_chord() {
        let d = GaussDiagram::from_parts(
            2,
            vec![
                Component::open(1, vec![t(1)]),
                Component::open(2, vec![h(1)]),
            ],
            chords(&[(1, Sign::Plus)]),
        );
        let inv = d.concordance_inverse();
        assert_eq!(inv.sign(ChordId(1)), Some(Sign::Minus));
        assert_eq!(inv.components(), d.components());
        assert_eq!(inv.concordance_inverse(), d);
    }

    #[test]
    fn relabel_normalizes_ids() {
        let d = GaussDiagram::from_parts(
            1,
            vec![Component::open(1, vec![t(9), t(4), h(9), h(4)])],
            chords(&[(9, Sign::Plus), (4, Sign::Minus)]),
        );
        let r = d.canonical_relabel();
        assert_eq!(r.strand(1).unwrap().endpoints, vec![t(1), t(2), h(1), h(2)]);
        assert_eq!(r.sign(ChordId(1)), Some(Sign::Plus));
        assert!(r.is_isomorphic(&d));
    }

    #[test]
    fn comp_ref_parsing() {
        assert_eq!("s3".parse::<CompRef>(), Ok(CompRef::Strand(3)));
        assert_eq!("c12".parse::<CompRef>(), Ok(CompRef::Closed(12)));
        assert!("c0".parse::<CompRef>().is_err());
        assert!("x1".parse::<CompRef>().is_err());
        assert_eq!("s1.4".parse::<Arc>(), Ok(Arc::new(CompRef::Strand(1), 4)));
    }
}

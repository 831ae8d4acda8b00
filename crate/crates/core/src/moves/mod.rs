//! Rewriting moves on Gauss diagrams.
//!
//! Every move addresses the diagram state it is applied to: arcs and
//! positions are read against the current canonical component order, chord
//! ids against the current chord table. Chords created by a move take the
//! next free id ([`GaussDiagram::next_chord_id`]).

mod apply;
mod enumerate;
pub mod r3;
pub mod site;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::diagram::{Arc, ChordId, CompRef, GaussDiagram, Role, Sign};
use crate::error::MoveError;

pub use apply::{apply_tracked, Applied, Lineage};
pub use enumerate::{enumerate_moves, EnumCaps};
pub use r3::{R3Pattern, R3PatternId, R3_TABLE};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Calculus {
    Virtual,
    Welded,
    Unwelded,
    Cobordism,
    WeldedConcordance,
}

impl Calculus {
    pub const ALL: [Calculus; 5] = [
        Calculus::Virtual,
        Calculus::Welded,
        Calculus::Unwelded,
        Calculus::Cobordism,
        Calculus::WeldedConcordance,
    ];

    pub fn allows(self, class: MoveClass) -> bool {
        use MoveClass::*;
        match class {
            R1 | R2 | R3 => true,
            F1 => matches!(
                self,
                Calculus::Welded | Calculus::Unwelded | Calculus::WeldedConcordance
            ),
            F2 | MixedCommute => self == Calculus::Unwelded,
            Saddle | Birth | Death => {
                matches!(self, Calculus::Cobordism | Calculus::WeldedConcordance)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Calculus::Virtual => "virtual",
            Calculus::Welded => "welded",
            Calculus::Unwelded => "unwelded",
            Calculus::Cobordism => "cobordism",
            Calculus::WeldedConcordance => "welded-concordance",
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Calculus::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown calculus `{s}`"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MoveClass {
    R1,
    R2,
    R3,
    F1,
    F2,
    MixedCommute,
    Saddle,
    Birth,
    Death,
}

impl fmt::Display for MoveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveClass::R1 => "R1",
            MoveClass::R2 => "R2",
            MoveClass::R3 => "R3",
            MoveClass::F1 => "F1",
            MoveClass::F2 => "F2",
            MoveClass::MixedCommute => "MixedCommute",
            MoveClass::Saddle => "Saddle",
            MoveClass::Birth => "Birth",
            MoveClass::Death => "Death",
        };
        f.write_str(s)
    }
}

/// Endpoint order of an R1 kink along its component.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum KinkOrder {
    TailFirst,
    HeadFirst,
}

/// Head order of an R2 pair relative to its tail order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum R2Variant {
    Parallel,
    Antiparallel,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Move {
    /// Insert a fresh kink at `arc`.
    R1Add {
        arc: Arc,
        sign: Sign,
        order: KinkOrder,
    },
    R1Remove {
        chord: ChordId,
    },
    /// Insert fresh chords `a` (sign `sign`) and `b = a + 1` (opposite sign):
    /// tails `T_a T_b` at `tails`, heads `H_a H_b` (parallel) or `H_b H_a`
    /// (antiparallel) at `heads`. When both arcs coincide, `first` names the
    /// block placed first.
    R2Add {
        tails: Arc,
        heads: Arc,
        variant: R2Variant,
        sign: Sign,
        first: Role,
    },
    R2Remove {
        a: ChordId,
        b: ChordId,
    },
    R3 {
        a: ChordId,
        b: ChordId,
        c: ChordId,
        pattern: R3PatternId,
    },
    F1 {
        comp: CompRef,
        pos: usize,
    },
    F2 {
        comp: CompRef,
        pos: usize,
    },
    MixedCommute {
        comp: CompRef,
        pos: usize,
    },
    Saddle {
        arc1: Arc,
        arc2: Arc,
    },
    Birth,
    Death {
        comp: CompRef,
    },
}

impl Move {
    pub fn class(&self) -> MoveClass {
        match self {
            Move::R1Add { .. } | Move::R1Remove { .. } => MoveClass::R1,
            Move::R2Add { .. } | Move::R2Remove { .. } => MoveClass::R2,
            Move::R3 { .. } => MoveClass::R3,
            Move::F1 { .. } => MoveClass::F1,
            Move::F2 { .. } => MoveClass::F2,
            Move::MixedCommute { .. } => MoveClass::MixedCommute,
            Move::Saddle { .. } => MoveClass::Saddle,
            Move::Birth => MoveClass::Birth,
            Move::Death { .. } => MoveClass::Death,
        }
    }

    /// Change in chord count.
    pub fn chord_delta(&self) -> isize {
        match self {
            Move::R1Add { .. } => 1,
            Move::R1Remove { .. } => -1,
            Move::R2Add { .. } => 2,
            Move::R2Remove { .. } => -2,
            _ => 0,
        }
    }
}

/// Check the calculus gate and the structural preconditions of `m`.
pub fn validate_move(d: &GaussDiagram, m: &Move, cal: Calculus) -> Result<(), MoveError> {
    gate(m, cal)?;
    apply::apply_tracked(d, m).map(|_| ())
}

pub(crate) fn gate(m: &Move, cal: Calculus) -> Result<(), MoveError> {
    let class = m.class();
    if cal.allows(class) {
        Ok(())
    } else {
        Err(MoveError::NotInCalculus {
            class,
            calculus: cal,
        })
    }
}

/// Apply `m`, checking structure only (no calculus gate).
pub fn apply_move(d: &GaussDiagram, m: &Move) -> Result<GaussDiagram, MoveError> {
    apply::apply_tracked(d, m).map(|a| a.diagram)
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::R1Add { arc, sign, order } => {
                let o = match order {
                    KinkOrder::TailFirst => "TH",
                    KinkOrder::HeadFirst => "HT",
                };
                write!(f, "R1+ arc={arc} sign={sign} order={o}")
            }
            Move::R1Remove { chord } => write!(f, "R1- chord={chord}"),
            Move::R2Add {
                tails,
                heads,
                variant,
                sign,
                first,
            } => {
                let v = match variant {
                    R2Variant::Parallel => "P",
                    R2Variant::Antiparallel => "A",
                };
                write!(f, "R2+ tails={tails} heads={heads} variant={v} sign={sign}")?;
                if *first == Role::Head {
                    f.write_str(" first=H")?;
                }
                Ok(())
            }
            Move::R2Remove { a, b } => write!(f, "R2- a={a} b={b}"),
            Move::R3 { a, b, c, pattern } => write!(f, "R3 a={a} b={b} c={c} pat={}", pattern.0),
            Move::F1 { comp, pos } => write!(f, "F1 comp={comp} pos={pos}"),
            Move::F2 { comp, pos } => write!(f, "F2 comp={comp} pos={pos}"),
            Move::MixedCommute { comp, pos } => write!(f, "MIX comp={comp} pos={pos}"),
            Move::Saddle { arc1, arc2 } => write!(f, "SAD arc1={arc1} arc2={arc2}"),
            Move::Birth => f.write_str("BIR"),
            Move::Death { comp } => write!(f, "DEA comp={comp}"),
        }
    }
}

struct Fields<'a> {
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Fields<'a> {
    fn parse(words: &[&'a str], allowed: &[&str]) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{w}`"))?;
            if !allowed.contains(&k) {
                return Err(format!("unexpected field `{k}`"));
            }
            if map.insert(k, v).is_some() {
                return Err(format!("field `{k}` given twice"));
            }
        }
        Ok(Fields { map })
    }

    fn opt(&self, key: &str) -> Option<&'a str> {
        self.map.get(key).copied()
    }

    fn req(&self, key: &str) -> Result<&'a str, String> {
        self.opt(key)
            .ok_or_else(|| format!("missing field `{key}`"))
    }

    fn arc(&self, key: &str) -> Result<Arc, String> {
        self.req(key)?.parse()
    }

    fn comp(&self, key: &str) -> Result<CompRef, String> {
        self.req(key)?.parse()
    }

    fn num<T: FromStr>(&self, key: &str) -> Result<T, String> {
        let v = self.req(key)?;
        v.parse()
            .map_err(|_| format!("bad value `{v}` for `{key}`"))
    }

    fn chord(&self, key: &str) -> Result<ChordId, String> {
        let id: u32 = self.num(key)?;
        if id == 0 {
            return Err("chord ids start at 1".into());
        }
        Ok(ChordId(id))
    }

    fn sign(&self, key: &str) -> Result<Sign, String> {
        let v = self.req(key)?;
        v.parse().map_err(|_| format!("bad sign `{v}`"))
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let (&tag, rest) = words.split_first().ok_or("empty move")?;
        let m = match tag {
            "R1+" => {
                let f = Fields::parse(rest, &["arc", "sign", "order"])?;
                let order = match f.req("order")? {
                    "TH" => KinkOrder::TailFirst,
                    "HT" => KinkOrder::HeadFirst,
                    o => return Err(format!("bad kink order `{o}`")),
                };
                Move::R1Add {
                    arc: f.arc("arc")?,
                    sign: f.sign("sign")?,
                    order,
                }
            }
            "R1-" => Move::R1Remove {
                chord: Fields::parse(rest, &["chord"])?.chord("chord")?,
            },
            "R2+" => {
                let f = Fields::parse(rest, &["tails", "heads", "variant", "sign", "first"])?;
                let variant = match f.req("variant")? {
                    "P" => R2Variant::Parallel,
                    "A" => R2Variant::Antiparallel,
                    v => return Err(format!("bad R2 variant `{v}`")),
                };
                let first = match f.opt("first") {
                    None | Some("T") => Role::Tail,
                    Some("H") => Role::Head,
                    Some(v) => return Err(format!("bad block order `{v}`")),
                };
                Move::R2Add {
                    tails: f.arc("tails")?,
                    heads: f.arc("heads")?,
                    variant,
                    sign: f.sign("sign")?,
                    first,
                }
            }
            "R2-" => {
                let f = Fields::parse(rest, &["a", "b"])?;
                Move::R2Remove {
                    a: f.chord("a")?,
                    b: f.chord("b")?,
                }
            }
            "R3" => {
                let f = Fields::parse(rest, &["a", "b", "c", "pat"])?;
                Move::R3 {
                    a: f.chord("a")?,
                    b: f.chord("b")?,
                    c: f.chord("c")?,
                    pattern: R3PatternId(f.num("pat")?),
                }
            }
            "F1" | "F2" | "MIX" => {
                let f = Fields::parse(rest, &["comp", "pos"])?;
                let (comp, pos) = (f.comp("comp")?, f.num("pos")?);
                match tag {
                    "F1" => Move::F1 { comp, pos },
                    "F2" => Move::F2 { comp, pos },
                    _ => Move::MixedCommute { comp, pos },
                }
            }
            "SAD" => {
                let f = Fields::parse(rest, &["arc1", "arc2"])?;
                Move::Saddle {
                    arc1: f.arc("arc1")?,
                    arc2: f.arc("arc2")?,
                }
            }
            "BIR" => {
                Fields::parse(rest, &[])?;
                Move::Birth
            }
            "DEA" => Move::Death {
                comp: Fields::parse(rest, &["comp"])?.comp("comp")?,
            },
            _ => return Err(format!("unknown move `{tag}`")),
        };
        Ok(m)
    }
}

//! Oriented third Reidemeister configurations.
//!
//! An R3 move acts on chords `a` (top over middle), `b` (top over bottom) and
//! `c` (middle over bottom). Their six endpoints form three adjacent pairs:
//! `(T_a, T_b)` on the top passage, `(H_a, T_c)` on the middle one and
//! `(H_b, H_c)` on the bottom one. The move reverses the order inside each
//! pair. A pattern records the three pair orders and the three signs.
//!
//! The table below is data. It is regenerated from planar line
//! arrangements by `cargo run --example regen_r3_table`, and a test checks it
//! against that derivation.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct R3PatternId(pub u8);

impl fmt::Display for R3PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct R3Pattern {
    /// `T_a` precedes `T_b`.
    pub tail_a_first: bool,
    /// `H_a` precedes `T_c`.
    pub head_a_first: bool,
    /// `H_b` precedes `H_c`.
    pub head_b_first: bool,
    /// Signs of `a`, `b`, `c`.
    pub signs: [i8; 3],
}

const fn p(t: bool, h: bool, b: bool, signs: [i8; 3]) -> R3Pattern {
    R3Pattern {
        tail_a_first: t,
        head_a_first: h,
        head_b_first: b,
        signs,
    }
}

pub const R3_TABLE: [R3Pattern; 16] = [
    p(false, false, false, [-1, -1, -1]),
    p(false, false, false, [1, 1, 1]),
    p(false, false, true, [-1, 1, 1]),
    p(false, false, true, [1, -1, -1]),
    p(false, true, false, [-1, 1, -1]),
    p(false, true, false, [1, -1, 1]),
    p(false, true, true, [-1, -1, 1]),
    p(false, true, true, [1, 1, -1]),
    p(true, false, false, [-1, -1, 1]),
    p(true, false, false, [1, 1, -1]),
    p(true, false, true, [-1, 1, -1]),
    p(true, false, true, [1, -1, 1]),
    p(true, true, false, [-1, 1, 1]),
    p(true, true, false, [1, -1, -1]),
    p(true, true, true, [-1, -1, -1]),
    p(true, true, true, [1, 1, 1]),
];

impl R3Pattern {
    pub fn by_id(id: R3PatternId) -> Option<R3Pattern> {
        R3_TABLE.get(id.0 as usize).copied()
    }

    pub fn id(&self) -> Option<R3PatternId> {
        R3_TABLE
            .iter()
            .position(|p| p == self)
            .map(|k| R3PatternId(k as u8))
    }

    /// Mirror image: every crossing switches, all signs flip.
    pub fn mirror(&self) -> R3Pattern {
        R3Pattern {
            signs: self.signs.map(|s| -s),
            ..*self
        }
    }

    /// The configuration on the other side of the move.
    pub fn reversed(&self) -> R3Pattern {
        R3Pattern {
            tail_a_first: !self.tail_a_first,
            head_a_first: !self.head_a_first,
            head_b_first: !self.head_b_first,
            signs: self.signs,
        }
    }

    /// Every passage reoriented and the stacking order inverted, so the
    /// bottom passage becomes the top one.
    pub fn switched(&self) -> R3Pattern {
        let [sa, sb, sc] = self.signs;
        R3Pattern {
            tail_a_first: !self.head_b_first,
            head_a_first: !self.head_a_first,
            head_b_first: !self.tail_a_first,
            signs: [-sc, -sb, -sa],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sorted_and_distinct() {
        for w in R3_TABLE.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn closed_under_symmetries() {
        for p in R3_TABLE {
            assert!(p.mirror().id().is_some());
            assert!(p.reversed().id().is_some());
            assert!(p.switched().id().is_some());
        }
    }

    #[test]
    fn ids() {
        for (k, p) in R3_TABLE.iter().enumerate() {
            assert_eq!(p.id(), Some(R3PatternId(k as u8)));
            assert_eq!(R3Pattern::by_id(R3PatternId(k as u8)), Some(*p));
        }
        assert_eq!(R3Pattern::by_id(R3PatternId(16)), None);
    }
}

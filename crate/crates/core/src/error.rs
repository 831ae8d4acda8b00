use std::fmt;

use thiserror::Error;

use crate::cobordism::Fingerprint;
use crate::diagram::{Arc, ChordId, CompRef, Violation};
use crate::moves::{Calculus, MoveClass};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
}

/// A GSLD or trace text error, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind_name} error: {message}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
    pub message: String,
    kind_name: &'static str,
}

impl ParseError {
    pub fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            kind: ParseErrorKind::Syntax,
            message: message.into(),
            kind_name: "syntax",
        }
    }

    pub fn semantic(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            kind: ParseErrorKind::Semantic,
            message: message.into(),
            kind_name: "semantic",
        }
    }
}

/// A failed move precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("{class} is not a move of the {calculus} calculus")]
    NotInCalculus {
        class: MoveClass,
        calculus: Calculus,
    },
    #[error("no component {0}")]
    NoComponent(CompRef),
    #[error("arc {0} is out of range")]
    ArcOutOfRange(Arc),
    #[error("position {pos} is out of range on {comp}")]
    PositionOutOfRange { comp: CompRef, pos: usize },
    #[error("no chord {0}")]
    NoChord(ChordId),
    #[error("chords must be distinct")]
    RepeatedChord,
    #[error("chord {0}: head and tail are not adjacent")]
    NotAKink(ChordId),
    #[error("chords {0} and {1} have equal signs")]
    SameSign(ChordId, ChordId),
    #[error("chords {0} and {1}: {2} endpoints are not adjacent")]
    NotAdjacent(ChordId, ChordId, &'static str),
    #[error("endpoints on {comp} at {pos}: {reason}")]
    WrongRoles {
        comp: CompRef,
        pos: usize,
        reason: &'static str,
    },
    #[error("R3 pattern {0} does not exist")]
    NoSuchPattern(u8),
    #[error("chords {0}, {1}, {2} do not match R3 pattern {3}")]
    PatternMismatch(ChordId, ChordId, ChordId, u8),
    #[error("saddle needs two distinct arcs")]
    SameArc,
    #[error("saddles between two open strands are not string-link moves")]
    OpenOpenSaddle,
    #[error("{0} is not a closed component")]
    NotClosed(CompRef),
    #[error("{0} still carries chord endpoints")]
    NotEmpty(CompRef),
    #[error("move cannot be inverted by a single move: {0}")]
    NotInvertible(&'static str),
    #[error("no counterpart for the move in the target diagram")]
    Untransportable,
}

/// Trace replay failure; step indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("initial fingerprint mismatch: trace expects {expected}, diagram is {found}")]
    InitialMismatch {
        expected: Fingerprint,
        found: Fingerprint,
    },
    #[error("step {step}: {error}")]
    Step { step: usize, error: MoveError },
    #[error("step {step}: fingerprint mismatch: recorded {expected}, replay gives {found}")]
    FingerprintMismatch {
        step: usize,
        expected: Fingerprint,
        found: Fingerprint,
    },
}

impl TraceError {
    pub fn step(&self) -> Option<usize> {
        match self {
            TraceError::InitialMismatch { .. } => None,
            TraceError::Step { step, .. } | TraceError::FingerprintMismatch { step, .. } => {
                Some(*step)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid diagram: {0}")]
    Invalid(Violations),
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("strand {index} out of range for {strands} strands")]
    StrandOutOfRange { index: usize, strands: usize },
    #[error("linking of a strand with itself is not defined (strand {0})")]
    SelfLinking(usize),
    #[error("linking vector for {strands} strands needs {expected} entries, got {found}")]
    Arity {
        strands: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected a string-link diagram without closed components")]
    ClosedComponents,
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

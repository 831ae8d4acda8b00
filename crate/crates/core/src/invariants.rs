//! Linking numbers of string-link diagrams.

use std::fmt;
use std::ops::{Add, Neg};

use crate::diagram::{ComponentKind, GaussDiagram, Role};
use crate::error::{Error, Result};

/// Ordered pairwise linking numbers, indexed by `(i, j)` with `i != j` in
/// lexicographic order. Empty for `n <= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LinkingVector {
    n: usize,
    entries: Vec<i64>,
}

/// Lexicographic list of the ordered pairs for `n` strands.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

impl LinkingVector {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        let expected = n * n.saturating_sub(1);
        if entries.len() != expected {
            return Err(Error::Arity {
                strands: n,
                expected,
                found: entries.len(),
            });
        }
        Ok(LinkingVector { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        LinkingVector {
            n,
            entries: vec![0; n * n.saturating_sub(1)],
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Position of the pair `(i, j)` in the lexicographic order.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        if i == j || i == 0 || j == 0 || i > self.n || j > self.n {
            return None;
        }
        let col = if j < i { j - 1 } else { j - 2 };
        Some((i - 1) * (self.n - 1) + col)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.index_of(i, j).map(|k| self.entries[k])
    }

    /// `((i, j), value)` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        pairs(self.n).into_iter().zip(self.entries.iter().copied())
    }

    /// First pair where the two vectors differ, with both values.
    pub fn first_difference(&self, other: &LinkingVector) -> Option<((usize, usize), i64, i64)> {
        self.iter()
            .zip(other.iter())
            .find_map(|((p, a), (_, b))| (a != b).then_some((p, a, b)))
    }
}

impl Add for &LinkingVector {
    type Output = LinkingVector;

    fn add(self, rhs: &LinkingVector) -> LinkingVector {
        assert_eq!(self.n, rhs.n, "linking vectors of different strand counts");
        LinkingVector {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Neg for &LinkingVector {
    type Output = LinkingVector;

    fn neg(self) -> LinkingVector {
        LinkingVector {
            n: self.n,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Display for LinkingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Sum of signs over chords with tail on component `ci` and head on `cj`
/// (component indices into [`GaussDiagram::components`]).
pub fn lk_components(d: &GaussDiagram, ci: usize, cj: usize) -> Result<i64> {
    let count = d.components().len();
    for k in [ci, cj] {
        if k >= count {
            return Err(Error::StrandOutOfRange {
                index: k + 1,
                strands: count,
            });
        }
    }
    if ci == cj {
        return Err(Error::SelfLinking(ci + 1));
    }
    let placed = d.chord_components();
    Ok(d.chords()
        .iter()
        .filter(|(id, _)| placed.get(id) == Some(&(ci, cj)))
        .map(|(_, s)| s.value())
        .sum())
}

/// Linking number of strand `i` over strand `j` (1-based).
pub fn lk_over(d: &GaussDiagram, i: usize, j: usize) -> Result<i64> {
    let n = d.strands();
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(Error::StrandOutOfRange {
                index: k,
                strands: n,
            });
        }
    }
    if i == j {
        return Err(Error::SelfLinking(i));
    }
    let ci = d
        .component_index(crate::diagram::CompRef::Strand(i))
        .expect("valid strand");
    let cj = d
        .component_index(crate::diagram::CompRef::Strand(j))
        .expect("valid strand");
    lk_components(d, ci, cj)
}

/// Unordered linking number `lk(i over j) + lk(j over i)`.
pub fn ulk(d: &GaussDiagram, i: usize, j: usize) -> Result<i64> {
    Ok(lk_over(d, i, j)? + lk_over(d, j, i)?)
}

/// Ordered linking numbers of the open strands. Chords touching closed
/// components do not count.
pub fn linking_vector(d: &GaussDiagram) -> LinkingVector {
    let owner: Vec<Option<usize>> = d
        .components()
        .iter()
        .map(|c| match c.kind {
            ComponentKind::Open(i) => Some(i),
            ComponentKind::Closed => None,
        })
        .collect();
    linking_vector_by_owner(d, &owner)
}

/// Ordered linking numbers where component `ci` counts towards strand
/// `owner[ci]`; chords between components of one owner do not count.
pub fn linking_vector_by_owner(d: &GaussDiagram, owner: &[Option<usize>]) -> LinkingVector {
    let mut lk = LinkingVector::zero(d.strands());
    for (id, (t, h)) in d.chord_components() {
        let of = |ci: usize| owner.get(ci).copied().flatten();
        if let (Some(i), Some(j)) = (of(t), of(h)) {
            if let Some(k) = lk.index_of(i, j) {
                lk.entries[k] += d.sign(id).map_or(0, |s| s.value());
            }
        }
    }
    lk
}

/// Number of chords with both endpoints on strand `i`.
pub fn self_chord_count(d: &GaussDiagram, i: usize) -> Result<usize> {
    let ci = d
        .component_index(crate::diagram::CompRef::Strand(i))
        .filter(|_| i >= 1 && i <= d.strands())
        .ok_or(Error::StrandOutOfRange {
            index: i,
            strands: d.strands(),
        })?;
    let c = &d.components()[ci];
    Ok(c.endpoints
        .iter()
        .filter(|e| e.role == Role::Tail && c.endpoints.contains(&e.partner()))
        .count())
}

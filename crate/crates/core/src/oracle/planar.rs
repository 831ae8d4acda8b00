//! R3 configurations read off planar line arrangements.
//!
//! Three straight passages meet pairwise near a point. Sliding the third one
//! across the crossing of the other two is a third Reidemeister move. For
//! every choice of passage directions, of which passage lies on top, in the
//! middle and at the bottom, and of the side the third passage starts on,
//! the three crossings are translated into a Gauss pattern.

use std::collections::BTreeSet;

use crate::moves::R3Pattern;

type V = (f64, f64);

fn cross(a: V, b: V) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn sub(a: V, b: V) -> V {
    (a.0 - b.0, a.1 - b.1)
}

/// Parameter along line `p + t d` of its intersection with line `q + s e`.
fn meet(p: V, d: V, q: V, e: V) -> f64 {
    cross(sub(q, p), e) / cross(d, e)
}

/// Writhe of a crossing where a passage with direction `over` crosses above
/// one with direction `under`.
fn writhe(over: V, under: V) -> i8 {
    if cross(over, under) > 0.0 {
        1
    } else {
        -1
    }
}

/// One arrangement: base points and directions of the three lines.
fn pattern(lines: [(V, V); 3], height: [usize; 3]) -> R3Pattern {
    // height[k] is the line at level k: 0 top, 1 middle, 2 bottom.
    let [top, mid, bot] = height.map(|k| lines[k]);
    let t = |l: (V, V), o: (V, V)| meet(l.0, l.1, o.0, o.1);
    // a = top over middle, b = top over bottom, c = middle over bottom.
    let tail_a_first = t(top, mid) < t(top, bot);
    let head_a_first = t(mid, top) < t(mid, bot);
    let head_b_first = t(bot, top) < t(bot, mid);
    R3Pattern {
        tail_a_first,
        head_a_first,
        head_b_first,
        signs: [
            writhe(top.1, mid.1),
            writhe(top.1, bot.1),
            writhe(mid.1, bot.1),
        ],
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// All patterns realized by the arrangements, sorted.
pub fn derive_r3_table() -> Vec<R3Pattern> {
    let angle = |deg: f64| (deg.to_radians().cos(), deg.to_radians().sin());
    let dirs = [angle(90.0), angle(210.0), angle(330.0)];
    let mut out = BTreeSet::new();
    for flips in 0..8u8 {
        let d: Vec<V> = (0..3)
            .map(|k| {
                if flips >> k & 1 == 1 {
                    (-dirs[k].0, -dirs[k].1)
                } else {
                    dirs[k]
                }
            })
            .collect();
        for offset in [0.3, -0.3] {
            // The third line is pushed off the common point along its normal.
            let normal = (-dirs[2].1, dirs[2].0);
            let lines = [
                ((0.0, 0.0), d[0]),
                ((0.0, 0.0), d[1]),
                ((normal.0 * offset, normal.1 * offset), d[2]),
            ];
            for h in PERMUTATIONS {
                out.insert(pattern(lines, h));
            }
        }
    }
    out.into_iter().collect()
}

/// Rust source of the table constant, as shipped in the moves module.
pub fn render_table(table: &[R3Pattern]) -> String {
    let mut s = format!("pub const R3_TABLE: [R3Pattern; {}] = [\n", table.len());
    for p in table {
        s.push_str(&format!(
            "    p({}, {}, {}, [{}, {}, {}]),\n",
            p.tail_a_first, p.head_a_first, p.head_b_first, p.signs[0], p.signs[1], p.signs[2]
        ));
    }
    s.push_str("];\n");
    s
}

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Ordered linking numbers read straight off GSLD text: for each chord find
/// the `s<i>` lines holding its T and H tokens, then sum signs per pair.
pub fn lk_from_text(text: &str) -> BTreeMap<(usize, usize), i64> {
    let mut n = 0;
    let mut signs = BTreeMap::new();
    let mut tail_on = BTreeMap::new();
    let mut head_on = BTreeMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["strands", k] => n = k.parse().unwrap(),
            ["chord", id, s] => {
                signs.insert(id.parse::<u32>().unwrap(), if *s == "+" { 1 } else { -1 });
            }
            ["comp", toks @ ..] => {
                let strand = line
                    .strip_prefix("comp s")
                    .and_then(|r| r.split(':').next())
                    .and_then(|x| x.trim().parse::<usize>().ok());
                for t in toks.iter().filter(|t| !t.ends_with(':')) {
                    let id: u32 = t[1..].parse().unwrap();
                    if t.starts_with('T') {
                        tail_on.insert(id, strand);
                    } else {
                        head_on.insert(id, strand);
                    }
                }
            }
            _ => {}
        }
    }
    let mut out = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.insert((i, j), 0);
            }
        }
    }
    for (id, s) in signs {
        if let (Some(Some(i)), Some(Some(j))) = (tail_on.get(&id), head_on.get(&id)) {
            if i != j {
                *out.get_mut(&(*i, *j)).unwrap() += s;
            }
        }
    }
    out
}

pub fn lk_entries(text: &str) -> Vec<i64> {
    lk_from_text(text).into_values().collect()
}

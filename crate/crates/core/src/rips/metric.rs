//! The C'(1/k) metric small-cancellation condition.
//!
//! The cyclic words are every relator and its inverse. A piece is a common
//! prefix of two rotations at distinct positions. Comparing two rotations
//! that spell the same word (a proper power against itself, a repeated
//! relator) gives pieces of length one less than the word.

use num_rational::Ratio;
use serde::Serialize;

use crate::presentation::Presentation;
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorstPair {
    /// The relator containing the piece, and the relator it is shared with.
    pub relators: (usize, usize),
    pub piece: String,
    pub piece_length: usize,
    pub relator_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    pub denominator: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub max_piece_ratio: Ratio<u64>,
    pub worst_pair: Option<WorstPair>,
    pub passes_sixth: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

struct CyclicWord {
    relator: usize,
    letters: Vec<u32>,
}

fn encode(l: Letter) -> u32 {
    2 * l.gen as u32 + u32::from(l.inverse) + 1
}

fn cyclic_words(p: &Presentation) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        if r.is_identity() {
            continue;
        }
        out.push(CyclicWord { relator: i, letters: r.letters().map(encode).collect() });
        out.push(CyclicWord { relator: i, letters: r.inverse().letters().map(encode).collect() });
    }
    out
}

/// Suffix array by prefix doubling.
fn suffix_array(text: &[u32]) -> Vec<usize> {
    let n = text.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<u64> = text.iter().map(|&c| u64::from(c)).collect();
    let mut tmp = vec![0u64; n];
    let mut k = 1;
    while k < n.max(1) {
        let key = |i: usize, rank: &[u64]| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i, &rank));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + u64::from(key(sa[w - 1], &rank) < key(sa[w], &rank));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai: `lcp[r]` is the common prefix length of suffixes `sa[r-1]` and `sa[r]`.
fn lcp_array(text: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut rank = vec![0; n];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Maximal piece starting at some position of each cyclic word, with its partner.
#[derive(Clone, Copy, Default)]
struct Best {
    len: usize,
    start: usize,
    other: usize,
}

fn piece_length(lcp: usize, li: usize, lj: usize, equal_lengths: bool) -> usize {
    let c = li.min(lj);
    if lcp >= c && equal_lengths {
        c - 1
    } else {
        lcp.min(c)
    }
}

pub fn check_metric_condition(p: &Presentation, denominator: u64) -> MetricReport {
    let words = cyclic_words(p);
    let base = 2 * p.num_gens() as u32 + 1;
    let mut text = Vec::new();
    // owner[pos] = (word index, offset in word, first copy?)
    let mut owner = Vec::new();
    for (w, cw) in words.iter().enumerate() {
        for copy in 0..2 {
            for (k, &c) in cw.letters.iter().enumerate() {
                text.push(c);
                owner.push((w as u32, k as u32, copy == 0));
            }
        }
        text.push(base + w as u32);
        owner.push((u32::MAX, 0, false));
    }
    let sa = suffix_array(&text);
    let lcp = lcp_array(&text, &sa);

    let mut best = vec![Best::default(); words.len()];
    for (r, &pos) in sa.iter().enumerate() {
        let (wi, k, first) = owner[pos];
        if wi == u32::MAX || !first {
            continue;
        }
        let wi = wi as usize;
        let li = words[wi].letters.len();
        let record = |run: usize, q: usize, best: &mut Best| {
            let (wj, _, first_q) = owner[q];
            if wj == u32::MAX || !first_q || q == pos {
                return;
            }
            let wj = wj as usize;
            let lj = words[wj].letters.len();
            let len = piece_length(run, li, lj, li == lj);
            if len > best.len {
                *best = Best { len, start: k as usize, other: wj };
            }
        };
        let mut b = best[wi];
        // upward
        let mut run = usize::MAX;
        let mut s = r;
        while s > 0 {
            run = run.min(lcp[s]);
            if run <= b.len {
                break;
            }
            record(run, sa[s - 1], &mut b);
            s -= 1;
        }
        // downward
        run = usize::MAX;
        s = r + 1;
        while s < sa.len() {
            run = run.min(lcp[s]);
            if run <= b.len {
                break;
            }
            record(run, sa[s], &mut b);
            s += 1;
        }
        best[wi] = b;
    }

    let mut max = Ratio::new(0u64, 1);
    let mut worst = None;
    for (w, b) in best.iter().enumerate() {
        let l = words[w].letters.len();
        let ratio = Ratio::new(b.len as u64, l as u64);
        if ratio > max {
            max = ratio;
            let letters: Vec<Letter> = (0..b.len)
                .map(|t| {
                    let c = words[w].letters[(b.start + t) % l] - 1;
                    Letter::new((c / 2) as usize, c % 2 == 1)
                })
                .collect();
            worst = Some(WorstPair {
                relators: (words[w].relator, words[b.other].relator),
                piece: p.print(&Word::from_letters(letters)),
                piece_length: b.len,
                relator_length: l,
            });
        }
    }
    MetricReport { denominator, passes_sixth: max < Ratio::new(1, denominator.max(1)), max_piece_ratio: max, worst_pair: worst }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive scan over all ordered pairs of positions.
    pub(crate) fn naive_max_ratio(p: &Presentation) -> Ratio<u64> {
        let words = cyclic_words(p);
        let mut max = Ratio::new(0u64, 1);
        for (i, a) in words.iter().enumerate() {
            let li = a.letters.len();
            let mut best = 0;
            for pi in 0..li {
                for (j, b) in words.iter().enumerate() {
                    let lj = b.letters.len();
                    for qj in 0..lj {
                        if i == j && pi == qj {
                            continue;
                        }
                        let c = li.min(lj);
                        let mut run = 0;
                        while run < c && a.letters[(pi + run) % li] == b.letters[(qj + run) % lj] {
                            run += 1;
                        }
                        best = best.max(piece_length(run, li, lj, li == lj));
                    }
                }
            }
            max = max.max(Ratio::new(best as u64, li as u64));
        }
        max
    }

    fn pres(t: &str) -> Presentation {
        Presentation::parse(t).unwrap()
    }

    #[test]
    fn commutator_fails() {
        let r = check_metric_condition(&pres("gens: a b\n[a,b]"), 6);
        assert_eq!(r.max_piece_ratio, Ratio::new(1, 4));
        assert!(!r.passes_sixth);
    }

    #[test]
    fn proper_power_fails() {
        let r = check_metric_condition(&pres("gens: a\na^7"), 6);
        assert_eq!(r.max_piece_ratio, Ratio::new(6, 7));
        assert_eq!(r.worst_pair.unwrap().piece, "a^6");
    }

    #[test]
    fn matches_naive_scan() {
        for t in [
            "gens: a b\na^2\nb^3\n(a*b)^5",
            "gens: a b c\na b c a^-1 b^2\nc^4 a b^-1\n[a,b][b,c]",
            "gens: a b\na b a b^2\nb a^3 b^-1 a",
            "gens: a b\na b a b\na b",
            "gens: a\na^3\na^5",
        ] {
            let p = pres(t);
            assert_eq!(check_metric_condition(&p, 6).max_piece_ratio, naive_max_ratio(&p), "{t}");
        }
    }

    #[test]
    fn suffix_array_sorted() {
        let text = [3, 1, 2, 1, 2, 1, 0];
        let sa = suffix_array(&text);
        for w in sa.windows(2) {
            assert!(text[w[0]..] < text[w[1]..]);
        }
    }
}

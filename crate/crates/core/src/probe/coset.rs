//! Todd–Coxeter coset enumeration (HLT with lookahead, and Felsch).
//!
//! Coincidences are processed with the union–find scheme: dead cosets point
//! at a smaller representative and are queued until their rows are merged.

use serde::Serialize;

use super::perm::Perm;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            _ => Err(Error::InvalidArgument(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "limit", rename_all = "snake_case")]
pub enum Status {
    Complete,
    Exhausted(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// Index when complete; live cosets at abort otherwise.
    pub cosets: usize,
    /// Per generator, its action on cosets `0..cosets` (coset 0 is the subgroup). Empty unless complete.
    pub action: Vec<Perm>,
    pub status: Status,
}

impl CosetTable {
    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    pub fn index(&self) -> Option<usize> {
        self.is_complete().then_some(self.cosets)
    }

    fn trace(&self, start: usize, w: &Word) -> usize {
        let mut c = start;
        for s in w.syllables() {
            c = self.action[s.gen].pow(s.exp).apply(c);
        }
        c
    }

    /// Table-wide check of the invariants of a complete table.
    pub fn verify(&self, p: &Presentation, subgens: &[Word]) -> bool {
        if !self.is_complete() || self.action.len() != p.num_gens() {
            return false;
        }
        let relators_ok = (0..self.cosets).all(|c| p.relators().iter().all(|r| self.trace(c, r) == c));
        let subgroup_ok = subgens.iter().all(|w| self.trace(0, w) == 0);
        // transitive from coset 0
        let mut seen = vec![false; self.cosets];
        let mut stack = vec![0usize];
        if self.cosets > 0 {
            seen[0] = true;
        }
        while let Some(c) = stack.pop() {
            for g in &self.action {
                for d in [g.apply(c), g.inverse().apply(c)] {
                    if !seen[d] {
                        seen[d] = true;
                        stack.push(d);
                    }
                }
            }
        }
        relators_ok && subgroup_ok && seen.iter().all(|&s| s)
    }
}

fn columns(w: &Word) -> Vec<u32> {
    w.letters().map(|l| 2 * l.gen as u32 + u32::from(l.inverse)).collect()
}

struct Full;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    rows: usize,
    live: usize,
    limit: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    record_deductions: bool,
}

impl Enumerator {
    fn new(gens: usize, limit: usize) -> Self {
        let ncols = 2 * gens;
        Enumerator {
            ncols,
            table: vec![NONE; ncols],
            parent: vec![0],
            rows: 1,
            live: 1,
            limit,
            queue: Vec::new(),
            deductions: Vec::new(),
            record_deductions: false,
        }
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.ncols + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, v: u32) {
        self.table[c as usize * self.ncols + x as usize] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn deduce(&mut self, c: u32, x: u32) {
        if self.record_deductions {
            self.deductions.push((c, x));
        }
    }

    fn define(&mut self, c: u32, x: u32) -> std::result::Result<(), Full> {
        if self.rows >= self.limit {
            return Err(Full);
        }
        let d = self.rows as u32;
        self.rows += 1;
        self.table.extend(std::iter::repeat(NONE).take(self.ncols));
        self.parent.push(d);
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.deduce(c, x);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
            self.live -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut k = 0;
        while k < self.queue.len() {
            let e = self.queue[k];
            k += 1;
            for x in 0..self.ncols as u32 {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                        self.deduce(e1, x);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Traces `w` from `c` in both directions, defining cosets when `fill` is set.
    fn scan(&mut self, c: u32, w: &[u32], fill: bool) -> std::result::Result<(), Full> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j {
                let nx = self.get(f, w[i]);
                if nx == NONE {
                    break;
                }
                f = nx;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let nx = self.get(b, w[j - 1] ^ 1);
                if nx == NONE {
                    break;
                }
                b = nx;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                self.deduce(f, w[i]);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Renumbers live cosets contiguously, preserving order. Returns the new
    /// index of the first live coset at or after `cursor`.
    fn compact(&mut self, cursor: usize) -> usize {
        let mut map = vec![NONE; self.rows];
        let mut n = 0u32;
        let mut new_cursor = None;
        for c in 0..self.rows {
            if c >= cursor && new_cursor.is_none() && self.is_live(c as u32) {
                new_cursor = Some(n as usize);
            }
            if self.is_live(c as u32) {
                map[c] = n;
                n += 1;
            }
        }
        let mut table = Vec::with_capacity(n as usize * self.ncols);
        for c in 0..self.rows {
            if map[c] == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.table[c * self.ncols + x];
                table.push(if v == NONE { NONE } else { map[v as usize] });
            }
        }
        self.table = table;
        self.rows = n as usize;
        self.parent = (0..n).collect();
        self.live = n as usize;
        self.deductions.clear();
        new_cursor.unwrap_or(n as usize)
    }

    fn lookahead(&mut self, relators: &[Vec<u32>]) {
        let mut c = 0;
        while c < self.rows {
            if self.is_live(c as u32) {
                for r in relators {
                    let _ = self.scan(c as u32, r, false);
                    if !self.is_live(c as u32) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    fn into_table(mut self, gens: usize) -> CosetTable {
        self.compact(0);
        let n = self.rows;
        let action = (0..gens)
            .map(|g| {
                let images = (0..n).map(|c| self.table[c * self.ncols + 2 * g] as usize).collect();
                Perm::from_images(images).expect("complete coset table columns are bijections")
            })
            .collect();
        CosetTable { cosets: n, action, status: Status::Complete }
    }
}

/// Enumerates the cosets of `<subgens>` in the group presented by `p`,
/// allotting at most `limit` coset rows at any time.
pub fn todd_coxeter(p: &Presentation, subgens: &[Word], limit: usize, strategy: Strategy) -> Result<CosetTable> {
    if limit == 0 {
        return Err(Error::InvalidArgument("coset limit must be positive".into()));
    }
    if let Some(w) = subgens.iter().find(|w| w.max_gen().is_some_and(|g| g >= p.num_gens())) {
        return Err(Error::AlphabetMismatch(format!("subgroup generator {w:?} uses unknown generators")));
    }
    let relators: Vec<Vec<u32>> = p.relators().iter().filter(|r| !r.is_identity()).map(columns).collect();
    let subs: Vec<Vec<u32>> = subgens.iter().map(columns).collect();
    let gens = p.num_gens();
    let done = match strategy {
        Strategy::Hlt => hlt(gens, &relators, &subs, limit),
        Strategy::Felsch => felsch(gens, &relators, &subs, limit),
    };
    Ok(match done {
        Ok(e) => e.into_table(gens),
        Err(live) => CosetTable { cosets: live, action: Vec::new(), status: Status::Exhausted(limit) },
    })
}

fn hlt(gens: usize, relators: &[Vec<u32>], subs: &[Vec<u32>], limit: usize) -> std::result::Result<Enumerator, usize> {
    let mut e = Enumerator::new(gens, limit);
    let ncols = 2 * gens as u32;
    // subgroup generators are re-scanned after every lookahead; scans are idempotent
    let mut cursor = 0usize;
    let mut subs_done = false;
    loop {
        let step = (|| -> std::result::Result<(), Full> {
            if !subs_done {
                for w in subs {
                    e.scan(0, w, true)?;
                }
                subs_done = true;
            }
            while cursor < e.rows {
                let c = cursor as u32;
                if e.is_live(c) {
                    for r in relators {
                        e.scan(c, r, true)?;
                        if !e.is_live(c) {
                            break;
                        }
                    }
                    if e.is_live(c) {
                        for x in 0..ncols {
                            if e.get(c, x) == NONE {
                                e.define(c, x)?;
                            }
                        }
                    }
                }
                cursor += 1;
            }
            Ok(())
        })();
        match step {
            Ok(()) => return Ok(e),
            Err(Full) => {
                e.lookahead(relators);
                if e.live == e.rows {
                    return Err(e.live);
                }
                cursor = e.compact(cursor);
            }
        }
    }
}

fn felsch(gens: usize, relators: &[Vec<u32>], subs: &[Vec<u32>], limit: usize) -> std::result::Result<Enumerator, usize> {
    let ncols = 2 * gens;
    // every cyclic conjugate of every relator and its inverse, by first letter
    let mut words: Vec<Vec<u32>> = Vec::new();
    for r in relators {
        let inv: Vec<u32> = r.iter().rev().map(|x| x ^ 1).collect();
        for w in [r.clone(), inv] {
            let mut doubled = w.clone();
            doubled.extend_from_slice(&w);
            words.push(doubled);
        }
    }
    let mut by_first: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ncols];
    for (k, dw) in words.iter().enumerate() {
        let len = dw.len() / 2;
        for off in 0..len {
            by_first[dw[off] as usize].push((k, off));
        }
    }

    let mut e = Enumerator::new(gens, limit);
    e.record_deductions = true;
    let process = |e: &mut Enumerator| {
        while let Some((c, x)) = e.deductions.pop() {
            if !e.is_live(c) {
                continue;
            }
            for &(k, off) in &by_first[x as usize] {
                let len = words[k].len() / 2;
                let _ = e.scan(c, &words[k][off..off + len], false);
                if !e.is_live(c) {
                    break;
                }
            }
            if !e.is_live(c) {
                continue;
            }
            let d = e.get(c, x);
            if d == NONE || !e.is_live(d) {
                continue;
            }
            for &(k, off) in &by_first[(x ^ 1) as usize] {
                let len = words[k].len() / 2;
                let _ = e.scan(d, &words[k][off..off + len], false);
                if !e.is_live(d) {
                    break;
                }
            }
        }
    };

    let mut subs_done = false;
    while !subs_done {
        let r = (|| -> std::result::Result<(), Full> {
            for w in subs {
                e.scan(0, w, true)?;
                process(&mut e);
            }
            Ok(())
        })();
        match r {
            Ok(()) => subs_done = true,
            Err(Full) => {
                process(&mut e);
                if e.live == e.rows {
                    return Err(e.live);
                }
                e.compact(0);
            }
        }
    }

    let mut cursor = 0usize;
    loop {
        // first undefined entry in coset order
        let mut hole = None;
        while cursor < e.rows {
            let c = cursor as u32;
            if e.is_live(c) {
                if let Some(x) = (0..ncols as u32).find(|&x| e.get(c, x) == NONE) {
                    hole = Some((c, x));
                    break;
                }
            }
            cursor += 1;
        }
        let Some((c, x)) = hole else {
            return Ok(e);
        };
        if e.define(c, x).is_err() {
            if e.live == e.rows {
                return Err(e.live);
            }
            cursor = e.compact(cursor);
            continue;
        }
        process(&mut e);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn a5_index_60() {
        let p = pres("gens: a b\na^2\nb^3\n(a*b)^5");
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let t = todd_coxeter(&p, &[], 10_000, s).unwrap();
            assert_eq!(t.index(), Some(60), "{s:?}");
            assert!(t.verify(&p, &[]));
            let order = super::super::schreier::perm_group_order(&t.action);
            assert_eq!(order, num_bigint::BigUint::from(60u32));
        }
    }

    #[test]
    fn cyclic_subgroup() {
        let p = pres("gens: a\na^6");
        let sub = [p.word("a^2").unwrap()];
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let t = todd_coxeter(&p, &sub, 100, s).unwrap();
            assert_eq!(t.index(), Some(2));
            assert!(t.verify(&p, &sub));
        }
    }

    #[test]
    fn resource_bound() {
        let p = pres("gens: a b\na^2\nb^3\n(a*b)^5");
        let t = todd_coxeter(&p, &[], 10, Strategy::Hlt).unwrap();
        assert_eq!(t.status, Status::Exhausted(10));
        let t = todd_coxeter(&p, &[], 10, Strategy::Felsch).unwrap();
        assert_eq!(t.status, Status::Exhausted(10));
        assert!(todd_coxeter(&p, &[], 0, Strategy::Hlt).is_err());
    }

    #[test]
    fn subgroup_indices() {
        let p = pres("gens: a b\na^2\nb^3\n(a*b)^5");
        // <b> has index 20, <a, b a b^-1> is A4 of index 5
        let t = todd_coxeter(&p, &[p.word("b").unwrap()], 1000, Strategy::Hlt).unwrap();
        assert_eq!(t.index(), Some(20));
        let sub = [p.word("a").unwrap(), p.word("b a b^-1").unwrap()];
        let h = todd_coxeter(&p, &sub, 1000, Strategy::Hlt).unwrap();
        let f = todd_coxeter(&p, &sub, 1000, Strategy::Felsch).unwrap();
        assert_eq!(h.index(), f.index());
        assert!(h.verify(&p, &sub));
    }

    #[test]
    fn trivial_and_free_cases() {
        let p = pres("gens: x y\nx\ny\nx y");
        assert_eq!(todd_coxeter(&p, &[], 100, Strategy::Hlt).unwrap().index(), Some(1));
        let p = pres("gens:");
        assert_eq!(todd_coxeter(&p, &[], 1, Strategy::Hlt).unwrap().index(), Some(1));
        // Z has no finite index for the trivial subgroup
        let p = pres("gens: a");
        assert!(!todd_coxeter(&p, &[], 50, Strategy::Hlt).unwrap().is_complete());
        let sub = [p.word("a^3").unwrap()];
        assert_eq!(todd_coxeter(&p, &sub, 50, Strategy::Felsch).unwrap().index(), Some(3));
    }

    #[test]
    fn lookahead_recovers_space() {
        // forcing compaction: HLT needs more than 60 rows here without collapsing
        let p = pres("gens: a b\na^2\nb^3\n(a*b)^5");
        let t = todd_coxeter(&p, &[], 64, Strategy::Hlt).unwrap();
        if let Some(i) = t.index() {
            assert_eq!(i, 60);
        }
    }
}

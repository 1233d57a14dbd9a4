use std::fmt;

use crate::error::{Error, Result};
use crate::word::Word;

/// Permutation of `{0, .., n-1}`; printed 1-based in cycle notation.
///
/// Products compose left to right: `(p * q)(i) = q(p(i))`, matching the
/// left-to-right reading of words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images.into_iter().map(|i| i as u32).collect()))
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let t = text.trim();
        let bad = || Error::InvalidArgument(format!("malformed cycle notation `{text}`"));
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let body = &inner[..close];
            rest = &inner[close + 1..];
            let pts: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p == 0 || p > degree || std::mem::replace(&mut seen[p - 1], true) {
                    return Err(bad());
                }
            }
            for (k, &p) in pts.iter().enumerate() {
                images[p - 1] = pts[(k + 1) % pts.len()] - 1;
            }
        }
        Perm::from_images(images)
    }

    /// Largest point mentioned in a cycle string, for inferring degrees.
    pub fn max_point(text: &str) -> usize {
        text.split(|c: char| !c.is_ascii_digit()).filter_map(|s| s.parse::<usize>().ok()).max().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let n = self.0.len();
        let mut out = vec![0u32; n];
        let mut done = vec![false; n];
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = self.0[start] as usize;
            while x != start {
                cycle.push(x);
                x = self.0[x] as usize;
            }
            let len = cycle.len() as i64;
            let shift = e.rem_euclid(len) as usize;
            for (k, &c) in cycle.iter().enumerate() {
                out[c] = cycle[(k + shift) % cycle.len()] as u32;
                done[c] = true;
            }
        }
        Perm(out)
    }

    /// Conjugate `c^-1 * self * c`.
    pub fn conjugate(&self, c: &Perm) -> Perm {
        c.inverse().mul(self).mul(c)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i)
    }

    /// Embeds into a larger degree, shifting points by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut v: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.0.iter().enumerate() {
            v[i + offset] = x + offset as u32;
        }
        Perm(v)
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }
}

/// Image of `w` under generator images `images`.
pub fn eval_word(w: &Word, images: &[Perm], degree: usize) -> Perm {
    let mut acc = Perm::identity(degree);
    for s in w.syllables() {
        acc = acc.mul(&images[s.gen].pow(s.exp));
    }
    acc
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for s in 0..n {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            any = true;
            write!(f, "({}", s + 1)?;
            seen[s] = true;
            let mut x = self.0[s] as usize;
            while x != s {
                write!(f, " {}", x + 1)?;
                seen[x] = true;
                x = self.0[x] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use fpforge::intlinalg::{abelian_invariants, IntMatrix};
use fpforge::presentation::Presentation;
use fpforge::probe::{eval_word, Perm, PermHom};
use fpforge::word::{Alphabet, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alphabet(n: usize) -> Alphabet {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    Alphabet::new(names).unwrap()
}

/// A random cyclically reduced non-identity word.
pub fn random_word(rng: &mut TestRng, gens: usize, max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len);
        let mut w = Word::identity();
        for _ in 0..len {
            w.push(rng.gen_range(0..gens), if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        let core = w.cyclic_reduce().0;
        if !core.is_identity() {
            return core;
        }
    }
}

pub fn random_presentation(rng: &mut TestRng, gens: usize, rels: usize, max_len: usize) -> Presentation {
    let relators = (0..rels).map(|_| random_word(rng, gens, max_len)).collect();
    Presentation::new(alphabet(gens), relators, "random").unwrap()
}

/// Adds random relators until the abelianization is trivial.
pub fn random_perfect(rng: &mut TestRng) -> Presentation {
    loop {
        let gens = rng.gen_range(1..=3);
        let mut relators = Vec::new();
        while relators.len() < 12 {
            relators.push(random_word(rng, gens, 6));
            let p = Presentation::new(alphabet(gens), relators.clone(), "perfect").unwrap();
            if abelian_invariants(&p).is_trivial() {
                return p;
            }
        }
    }
}

pub fn random_matrix(rng: &mut TestRng) -> IntMatrix {
    let r = rng.gen_range(1..=4);
    let c = rng.gen_range(1..=5);
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}` with
/// `D_k` the gcd of all `k x k` minors.
pub fn minor_gcd_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                g = g.gcd(&laplace_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

/// Group order by closing under right multiplication.
pub fn bfs_order(gens: &[Perm], degree: usize) -> usize {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = vec![Vec::<usize>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for i in 0..n {
                if !p.contains(&i) {
                    let mut q = p.clone();
                    q.push(i);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|v| Perm::from_images(v).unwrap()).collect()
}

/// Least conjugate of an image tuple over the whole symmetric group,
/// compared generator by generator in alphabet order.
pub fn canonical(images: &[Perm], sym: &[Perm]) -> Vec<Perm> {
    sym.iter().map(|c| images.iter().map(|g| g.conjugate(c)).collect::<Vec<_>>()).min().unwrap()
}

/// Conjugacy classes of homomorphisms by trying every tuple.
pub fn brute_force_classes(p: &Presentation, degree: usize) -> BTreeSet<Vec<Perm>> {
    let sym = all_perms(degree);
    let g = p.num_gens();
    let mut classes = BTreeSet::new();
    let mut idx = vec![0usize; g];
    loop {
        let images: Vec<Perm> = idx.iter().map(|&i| sym[i].clone()).collect();
        if p.relators().iter().all(|r| eval_word(r, &images, degree).is_identity()) {
            classes.insert(canonical(&images, &sym));
        }
        let mut k = 0;
        loop {
            if k == g {
                return classes;
            }
            idx[k] += 1;
            if idx[k] < sym.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn classes_of(homs: &[PermHom], degree: usize) -> Vec<Vec<Perm>> {
    let sym = all_perms(degree);
    homs.iter().map(|h| canonical(&h.images, &sym)).collect()
}

pub fn random_perm(rng: &mut TestRng, n: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    Perm::from_images(v).unwrap()
}

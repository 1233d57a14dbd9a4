//! Homomorphisms into symmetric groups, up to simultaneous conjugation.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use super::perm::{eval_word, Perm};
use super::schreier::perm_group_order;
use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermHom {
    pub degree: usize,
    /// One image per generator, in alphabet order.
    pub images: Vec<Perm>,
    pub image_order: BigUint,
}

impl PermHom {
    pub fn new(degree: usize, images: Vec<Perm>) -> Self {
        let image_order = if images.is_empty() { BigUint::from(1u32) } else { perm_group_order(&images) };
        PermHom { degree, images, image_order }
    }

    pub fn eval(&self, w: &Word) -> Perm {
        eval_word(w, &self.images, self.degree)
    }

    /// Index of the first relator that does not evaluate to the identity.
    pub fn failing_relator(&self, p: &Presentation) -> Option<usize> {
        p.relators().iter().position(|r| !self.eval(r).is_identity())
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(Perm::is_identity)
    }

    /// Order of the image of the subgroup generated by `words`.
    pub fn subgroup_order(&self, words: &[Word]) -> BigUint {
        let imgs: Vec<Perm> = words.iter().map(|w| self.eval(w)).collect();
        if imgs.is_empty() {
            return BigUint::from(1u32);
        }
        perm_group_order(&imgs)
    }

    /// `name: cycles` per generator.
    pub fn to_text(&self, p: &Presentation) -> String {
        let mut s = String::new();
        for (i, g) in self.images.iter().enumerate() {
            s.push_str(&format!("{}: {}\n", p.alphabet().name(i), g));
        }
        s
    }
}

impl Serialize for PermHom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PermHom", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("images", &self.images.iter().map(|p| p.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("image_order", &self.image_order.to_string())?;
        st.end()
    }
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(Perm::from_images(cur.clone()).unwrap());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Generator order for the search: greedily the generator that completes
/// the most relators next.
fn search_order(p: &Presentation) -> Vec<usize> {
    let n = p.num_gens();
    let supports: Vec<Vec<bool>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut s = vec![false; n];
            for syl in r.syllables() {
                s[syl.gen] = true;
            }
            s
        })
        .collect();
    let mut chosen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&g| !chosen[g])
            .max_by_key(|&g| {
                let completes = supports
                    .iter()
                    .filter(|s| s[g] && s.iter().enumerate().all(|(h, &u)| !u || chosen[h] || h == g))
                    .count();
                let touches = supports.iter().filter(|s| s[g]).count();
                (completes, touches, std::cmp::Reverse(g))
            })
            .unwrap();
        chosen[best] = true;
        order.push(best);
    }
    order
}

/// All homomorphisms from `p` into the symmetric group of `degree`, one per
/// conjugacy class of image tuples. Each class is represented by its
/// lexicographically least tuple, compared in the search order.
pub fn enumerate_homs(p: &Presentation, degree: usize, nontrivial_only: bool) -> Vec<PermHom> {
    let degree = degree.max(1);
    let gens = p.num_gens();
    if gens == 0 {
        return if nontrivial_only { Vec::new() } else { vec![PermHom::new(degree, Vec::new())] };
    }
    let order = search_order(p);
    let mut position = vec![0; gens];
    for (k, &g) in order.iter().enumerate() {
        position[g] = k;
    }
    // relators checked at the level where their last generator is assigned
    let mut checks: Vec<Vec<&Word>> = vec![Vec::new(); gens];
    for r in p.relators() {
        if let Some(level) = r.syllables().iter().map(|s| position[s.gen]).max() {
            checks[level].push(r);
        }
    }

    let perms = all_perms(degree);
    let mut by_type: BTreeMap<Vec<usize>, &Perm> = BTreeMap::new();
    for q in &perms {
        by_type.entry(q.cycle_type()).and_modify(|m| *m = std::cmp::min(*m, q)).or_insert(q);
    }
    let mut reps: Vec<&Perm> = by_type.into_values().collect();
    reps.sort();

    let mut out = Vec::new();
    let mut images: Vec<Perm> = vec![Perm::identity(degree); gens];
    for rep in reps {
        let centralizer: Vec<&Perm> = perms.iter().filter(|c| rep.conjugate(c) == *rep).collect();
        let mut search = Search { order: &order, checks: &checks, perms: &perms, centralizer, degree, found: &mut out };
        images[order[0]] = rep.clone();
        if search.relators_hold(0, &images) {
            search.extend(1, &mut images);
        }
    }
    if nontrivial_only {
        out.retain(|h| !h.is_trivial());
    }
    out
}

struct Search<'a> {
    order: &'a [usize],
    checks: &'a [Vec<&'a Word>],
    perms: &'a [Perm],
    centralizer: Vec<&'a Perm>,
    degree: usize,
    found: &'a mut Vec<PermHom>,
}

impl Search<'_> {
    fn relators_hold(&self, level: usize, images: &[Perm]) -> bool {
        self.checks[level].iter().all(|r| eval_word(r, images, self.degree).is_identity())
    }

    fn extend(&mut self, level: usize, images: &mut Vec<Perm>) {
        if level == self.order.len() {
            if self.is_canonical(images) {
                self.found.push(PermHom::new(self.degree, images.clone()));
            }
            return;
        }
        let g = self.order[level];
        for q in self.perms {
            images[g] = q.clone();
            if self.relators_hold(level, images) {
                self.extend(level + 1, images);
            }
        }
    }

    fn is_canonical(&self, images: &[Perm]) -> bool {
        self.centralizer.iter().all(|c| {
            for &g in self.order {
                let conj = images[g].conjugate(c);
                match conj.cmp(&images[g]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => return true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            true
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub degree: usize,
    #[serde(serialize_with = "crate::probe::homs::ser_big")]
    pub order: BigUint,
}

pub(crate) fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Image orders of the nontrivial homomorphisms into `S_2, .., S_max_degree`.
/// Empty means none were found up to the bound, nothing more.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSpectrum {
    pub max_degree: usize,
    pub entries: Vec<SpectrumEntry>,
}

impl QuotientSpectrum {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn orders(&self) -> Vec<BigUint> {
        self.entries.iter().map(|e| e.order.clone()).collect()
    }
}

pub fn quotient_spectrum(p: &Presentation, max_degree: usize) -> QuotientSpectrum {
    let mut entries = Vec::new();
    for d in 2..=max_degree {
        for h in enumerate_homs(p, d, true) {
            entries.push(SpectrumEntry { degree: d, order: h.image_order });
        }
    }
    QuotientSpectrum { max_degree, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(t: &str) -> Presentation {
        Presentation::parse(t).unwrap()
    }

    #[test]
    fn order_two() {
        let homs = enumerate_homs(&pres("gens: a\na^2"), 2, false);
        assert_eq!(homs.len(), 2);
        assert!(homs[0].is_trivial());
        assert_eq!(homs[1].images[0].to_string(), "(1 2)");
    }

    #[test]
    fn a5_degree_5() {
        let p = pres("gens: a b\na^2\nb^3\n(a*b)^5");
        let homs = enumerate_homs(&p, 5, true);
        let full: Vec<_> = homs.iter().filter(|h| h.image_order == BigUint::from(60u32)).collect();
        assert!(!full.is_empty());
        for h in &full {
            assert_eq!(h.failing_relator(&p), None);
            assert_eq!(h.images[0].cycle_type(), vec![1, 2, 2]);
            assert_eq!(h.images[1].cycle_type(), vec![1, 1, 3]);
        }
    }

    #[test]
    fn trivial_group_and_free_group() {
        let t = pres("gens: x y\nx\ny\nx y");
        assert!(quotient_spectrum(&t, 4).is_empty());
        // Z on 3 points: classes of single permutations are cycle types
        let z = pres("gens: a");
        assert_eq!(enumerate_homs(&z, 3, false).len(), 3);
    }

    #[test]
    fn search_order_completes_relators() {
        let p = pres("gens: a b c\n[b,c]\nb^2\nc^3");
        assert_eq!(search_order(&p)[0], 1);
    }
}

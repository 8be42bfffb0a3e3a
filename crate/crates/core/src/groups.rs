//! X-generated groups with decidable word problem.
//!
//! Three oracles are supported: the free group on the alphabet, the free
//! abelian group of the same rank, and finite permutation groups given by
//! generator images. Elements are kept in canonical form so that equality
//! and hashing are structural.
//!
//! Permutations act on the right: `(ab)` first applies `a`, then `b`. This
//! keeps `eval_word` a left-to-right fold, matching the Cayley graph edge
//! `g --x--> g·x`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{Alphabet, FTerm, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Free,
    FreeAbelian,
    /// `images[i]` is the 0-based permutation table of generator `i`.
    Permutation {
        degree: usize,
        images: Vec<Vec<u32>>,
        inverses: Vec<Vec<u32>>,
    },
}

/// The group `G` together with its generating map `X → G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    alphabet: Alphabet,
    kind: GroupKind,
}

/// A group element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElem {
    /// Freely reduced word.
    Free(Word),
    /// Exponent vector, one entry per generator.
    Abelian(Vec<i64>),
    /// 0-based image table.
    Perm(Vec<u32>),
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> Ordering {
        use GroupElem::*;
        match (self, other) {
            (Free(a), Free(b)) => a.cmp(b),
            (Abelian(a), Abelian(b)) => {
                let norm = |v: &[i64]| v.iter().map(|e| e.unsigned_abs()).sum::<u64>();
                norm(a).cmp(&norm(b)).then_with(|| {
                    // x before x^-1, as for words
                    let key = |e: i64| (e.unsigned_abs(), e < 0);
                    a.iter()
                        .map(|&e| key(e))
                        .rev()
                        .cmp(b.iter().map(|&e| key(e)).rev())
                })
            }
            (Perm(a), Perm(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupElem {
    fn rank(&self) -> u8 {
        match self {
            GroupElem::Free(_) => 0,
            GroupElem::Abelian(_) => 1,
            GroupElem::Perm(_) => 2,
        }
    }
}

fn invert_table(table: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; table.len()];
    for (p, &q) in table.iter().enumerate() {
        inv[q as usize] = p as u32;
    }
    inv
}

/// Parses cycle notation over points `1..=degree` into a 0-based table.
///
/// `()` is the identity; cycles may be juxtaposed, e.g. `(1 2)(3 4 5)`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<u32>> {
    let bad = |msg: String| Error::InvalidPermutation(msg);
    let mut table: Vec<u32> = (0..degree as u32).collect();
    let mut seen = vec![false; degree];
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad("empty cycle notation".into()));
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| bad(format!("expected `(` in `{text}`")))?;
        let close = body
            .find(')')
            .ok_or_else(|| bad(format!("unclosed cycle in `{text}`")))?;
        let points = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                let p: usize = s.parse().map_err(|_| bad(format!("bad point `{s}`")))?;
                if p == 0 || p > degree {
                    return Err(bad(format!("point {p} outside 1..={degree}")));
                }
                Ok(p - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        for &p in &points {
            if std::mem::replace(&mut seen[p], true) {
                return Err(bad(format!("point {} repeated in `{text}`", p + 1)));
            }
        }
        for (i, &p) in points.iter().enumerate() {
            table[p] = points[(i + 1) % points.len()] as u32;
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(table)
}

fn write_cycles(table: &[u32], out: &mut String) {
    let mut seen = vec![false; table.len()];
    for start in 0..table.len() {
        if seen[start] || table[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut p = start;
        let mut first = true;
        while !seen[p] {
            seen[p] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{}", p + 1);
            p = table[p] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
}

impl Group {
    pub fn free(alphabet: Alphabet) -> Self {
        Group {
            alphabet,
            kind: GroupKind::Free,
        }
    }

    pub fn free_abelian(alphabet: Alphabet) -> Self {
        Group {
            alphabet,
            kind: GroupKind::FreeAbelian,
        }
    }

    /// A permutation group from 0-based image tables, one per generator.
    pub fn permutation(alphabet: Alphabet, degree: usize, images: Vec<Vec<u32>>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidPermutation(format!(
                "{} generators but {} images",
                alphabet.len(),
                images.len()
            )));
        }
        for (g, table) in images.iter().enumerate() {
            let mut hit = vec![false; degree];
            let ok = table.len() == degree
                && table.iter().all(|&q| {
                    (q as usize) < degree && !std::mem::replace(&mut hit[q as usize], true)
                });
            if !ok {
                return Err(Error::InvalidPermutation(format!(
                    "image of `{}` is not a bijection on {degree} points",
                    alphabet.name(g as u32)
                )));
            }
        }
        let inverses = images.iter().map(|t| invert_table(t)).collect();
        Ok(Group {
            alphabet,
            kind: GroupKind::Permutation {
                degree,
                images,
                inverses,
            },
        })
    }

    /// A permutation group from cycle notation, in alphabet order.
    pub fn permutation_from_cycles<S: AsRef<str>>(
        alphabet: Alphabet,
        degree: usize,
        cycles: &[S],
    ) -> Result<Self> {
        let images = cycles
            .iter()
            .map(|c| parse_cycles(c.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Group::permutation(alphabet, degree, images)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, GroupKind::Free)
    }

    pub fn is_finite(&self) -> bool {
        match self.kind {
            GroupKind::Permutation { .. } => true,
            _ => self.alphabet.is_empty(),
        }
    }

    pub fn identity(&self) -> GroupElem {
        match &self.kind {
            GroupKind::Free => GroupElem::Free(Word::empty()),
            GroupKind::FreeAbelian => GroupElem::Abelian(vec![0; self.rank()]),
            GroupKind::Permutation { degree, .. } => GroupElem::Perm((0..*degree as u32).collect()),
        }
    }

    /// Whether `g` is a well-formed element of this group.
    pub fn owns(&self, g: &GroupElem) -> bool {
        match (&self.kind, g) {
            (GroupKind::Free, GroupElem::Free(w)) => {
                w.is_reduced()
                    && w.letters()
                        .iter()
                        .all(|l| (l.generator() as usize) < self.rank())
            }
            (GroupKind::FreeAbelian, GroupElem::Abelian(v)) => v.len() == self.rank(),
            (GroupKind::Permutation { degree, .. }, GroupElem::Perm(t)) => t.len() == *degree,
            _ => false,
        }
    }

    /// `g · x` for a single letter.
    pub fn step(&self, g: &GroupElem, letter: Letter) -> GroupElem {
        let mut out = g.clone();
        self.step_in_place(&mut out, letter);
        out
    }

    fn step_in_place(&self, g: &mut GroupElem, letter: Letter) {
        match (&self.kind, g) {
            (GroupKind::Free, GroupElem::Free(w)) => {
                if w.letters().last() == Some(&letter.inverse()) {
                    *w = Word::new(w.letters()[..w.len() - 1].to_vec());
                } else {
                    w.push(letter);
                }
            }
            (GroupKind::FreeAbelian, GroupElem::Abelian(v)) => {
                v[letter.generator() as usize] += letter.sign();
            }
            (
                GroupKind::Permutation {
                    images, inverses, ..
                },
                GroupElem::Perm(t),
            ) => {
                let table = if letter.is_inverse() {
                    &inverses[letter.generator() as usize]
                } else {
                    &images[letter.generator() as usize]
                };
                for p in t.iter_mut() {
                    *p = table[*p as usize];
                }
            }
            _ => panic!("group element does not belong to this oracle"),
        }
    }

    /// The element `w_G` represented by `w`.
    pub fn eval_word(&self, w: &Word) -> GroupElem {
        self.eval_from(&self.identity(), w)
    }

    /// `g · w_G`.
    pub fn eval_from(&self, g: &GroupElem, w: &Word) -> GroupElem {
        let mut out = g.clone();
        for &letter in w.letters() {
            self.step_in_place(&mut out, letter);
        }
        out
    }

    /// The group image of a term; markers are transparent in `G`.
    pub fn eval_term(&self, t: &FTerm) -> GroupElem {
        self.eval_word(&t.erase_m())
    }

    /// `ab`, rejecting elements of a different oracle.
    pub fn compose(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        if !self.owns(a) || !self.owns(b) {
            return Err(Error::OracleMismatch);
        }
        Ok(self.mul(a, b))
    }

    /// `ab` without the ownership check.
    ///
    /// Panics if the elements come from different kinds of oracle.
    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        match (a, b) {
            (GroupElem::Free(_), GroupElem::Free(w)) => self.eval_from(a, w),
            (GroupElem::Abelian(x), GroupElem::Abelian(y)) => {
                GroupElem::Abelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupElem::Perm(x), GroupElem::Perm(y)) => {
                GroupElem::Perm(x.iter().map(|&p| y[p as usize]).collect())
            }
            _ => panic!("group elements belong to different oracles"),
        }
    }

    pub fn invert(&self, a: &GroupElem) -> GroupElem {
        match a {
            GroupElem::Free(w) => GroupElem::Free(w.inverse()),
            GroupElem::Abelian(v) => GroupElem::Abelian(v.iter().map(|e| -e).collect()),
            GroupElem::Perm(t) => GroupElem::Perm(invert_table(t)),
        }
    }

    /// `a⁻¹b`, the label of the jump from `a` to `b`.
    pub fn quotient(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        self.mul(&self.invert(a), b)
    }

    /// The unique reduced word representing `g` in a free group.
    pub fn geodesic_word(&self, g: &GroupElem) -> Result<Word> {
        match (&self.kind, g) {
            (GroupKind::Free, GroupElem::Free(w)) => Ok(w.clone()),
            (GroupKind::Free, _) => Err(Error::OracleMismatch),
            _ => Err(Error::RequiresFreeGroup("geodesic_word")),
        }
    }

    /// Some word representing `g`: the geodesic in free groups, the
    /// exponent word in free abelian groups, and a BFS-shortest word in
    /// permutation groups.
    pub fn word_for(&self, g: &GroupElem) -> Word {
        match g {
            GroupElem::Free(w) => w.clone(),
            GroupElem::Abelian(v) => v
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| {
                    let letter = if e < 0 {
                        Letter::neg(i as u32)
                    } else {
                        Letter::pos(i as u32)
                    };
                    std::iter::repeat_n(letter, e.unsigned_abs() as usize)
                })
                .collect(),
            GroupElem::Perm(_) => {
                let mut queue = VecDeque::from([(self.identity(), Word::empty())]);
                let mut seen = BTreeSet::from([self.identity()]);
                while let Some((h, w)) = queue.pop_front() {
                    if &h == g {
                        return w;
                    }
                    for letter in self.alphabet.letters() {
                        let next = self.step(&h, letter);
                        if seen.insert(next.clone()) {
                            let mut w2 = w.clone();
                            w2.push(letter);
                            queue.push_back((next, w2));
                        }
                    }
                }
                panic!("permutation is not in the group generated by the alphabet")
            }
        }
    }

    /// Every element of a finite group, sorted.
    pub fn elements(&self) -> Result<Vec<GroupElem>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut seen = BTreeSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(g) = queue.pop_front() {
            for letter in self.alphabet.letters() {
                let h = self.step(&g, letter);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Canonical text form: `1` for the identity of free and free abelian
    /// groups, exponent notation for abelian vectors, cycle notation for
    /// permutations.
    pub fn format_elem(&self, g: &GroupElem) -> String {
        match g {
            GroupElem::Free(w) if w.is_empty() => "1".to_string(),
            GroupElem::Free(w) => w.display(&self.alphabet).to_string(),
            GroupElem::Abelian(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        let name = self.alphabet.name(i as u32);
                        if e == 1 {
                            name.to_string()
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join(" ")
                }
            }
            GroupElem::Perm(t) => {
                let mut out = String::new();
                write_cycles(t, &mut out);
                out
            }
        }
    }
}

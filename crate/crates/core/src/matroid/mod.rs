//! Matroids represented by their lattice of flats.
//!
//! A [`Matroid`] stores every flat of the lattice together with its rank and
//! its upper covers. Flats are kept in canonical order: rank ascending, then
//! bitmask value ascending. Constructors for the standard families live in
//! [`construct`], minors in [`minor`], and the JSON interchange format in
//! [`json`].

pub mod construct;
pub mod json;
pub mod minor;

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{AxiomWitness, Error, Result};
use crate::subset::{Subset, MAX_GROUND};

pub use construct::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size > MAX_GROUND {
            return Err(Error::GroundTooLarge(size));
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn labeled(labels: Vec<String>) -> Result<Self> {
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        let distinct: HashSet<&str> = labels.iter().map(String::as_str).collect();
        if distinct.len() != labels.len() {
            return Err(Error::invalid("ground-set labels must be pairwise distinct"));
        }
        Ok(GroundSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of element `e`: its label, or its 0-based index.
    pub fn name(&self, e: usize) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    #[inline]
    pub fn all(&self) -> Subset {
        Subset::full(self.size)
    }

    /// The ground set restricted to `mask`, re-indexed in increasing order.
    pub(crate) fn restrict(&self, mask: Subset) -> GroundSet {
        GroundSet {
            size: mask.len(),
            labels: self
                .labels
                .as_ref()
                .map(|l| mask.iter().map(|e| l[e].clone()).collect()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Flat {
    pub members: Subset,
    pub rank: usize,
}

#[derive(Clone)]
pub struct Matroid {
    ground: GroundSet,
    flats: Vec<Flat>,
    index: HashMap<Subset, usize>,
    covers: Vec<Vec<usize>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.flats == other.flats
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.ground.size)
            .field("rank", &self.rank())
            .field("flats", &self.flats.iter().map(|f| f.members).collect::<Vec<_>>())
            .finish()
    }
}

impl Matroid {
    /// Validates a collection of subsets of `{0, .., n-1}` against the two
    /// lattice-of-flats axioms and builds the matroid.
    ///
    /// Ranks are assigned by longest-chain layering from the least flat.
    pub fn from_flats<I>(n: usize, flats: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = Subset>,
    {
        Self::from_flats_in(GroundSet::new(n)?, flats)
    }

    pub fn from_flats_in<I>(ground: GroundSet, flats: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = Subset>,
    {
        let n = ground.size();
        let all = ground.all();
        let mut sets: Vec<Subset> = Vec::new();
        let mut seen = HashSet::new();
        for f in flats {
            if !f.is_subset(all) {
                let bad = f.difference(all).min().unwrap_or(0);
                return Err(Error::ElementOutOfRange { element: bad, size: n });
            }
            if seen.insert(f) {
                sets.push(f);
            }
        }
        if !seen.contains(&all) {
            return Err(Error::MissingTop);
        }
        // Smaller sets first so that minimality checks only look backwards.
        sets.sort_by_key(|s| (s.len(), *s));

        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if !seen.contains(&a.intersection(b)) {
                    return Err(Error::AxiomViolation(AxiomWitness::Intersection {
                        first: a,
                        second: b,
                    }));
                }
            }
        }

        let mut upper: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
        for (i, &f) in sets.iter().enumerate() {
            let above: Vec<usize> = (0..sets.len())
                .filter(|&j| f.is_proper_subset(sets[j]))
                .collect();
            let minimal: Vec<usize> = above
                .iter()
                .copied()
                .filter(|&j| {
                    !above
                        .iter()
                        .any(|&h| h != j && sets[h].is_proper_subset(sets[j]))
                })
                .collect();
            for e in all.difference(f) {
                let covers = minimal.iter().filter(|&&j| sets[j].contains(e)).count();
                if covers != 1 {
                    return Err(Error::AxiomViolation(AxiomWitness::Partition {
                        flat: f,
                        element: e,
                        covers,
                    }));
                }
            }
            upper[i] = minimal;
        }

        // Longest chain from the bottom; `sets` is a linear extension of inclusion.
        let mut rank = vec![0usize; sets.len()];
        for i in 0..sets.len() {
            for &j in &upper[i] {
                rank[j] = rank[j].max(rank[i] + 1);
            }
        }
        let ranked = sets.into_iter().zip(rank).collect();
        Ok(Self::assemble(ground, ranked))
    }

    /// Builds the matroid from flats whose ranks are already known. The caller
    /// guarantees the flats form a geometric lattice with those ranks.
    pub(crate) fn assemble(ground: GroundSet, ranked: Vec<(Subset, usize)>) -> Matroid {
        let mut flats: Vec<Flat> = ranked
            .into_iter()
            .map(|(members, rank)| Flat { members, rank })
            .collect();
        flats.sort_by_key(|f| (f.rank, f.members));
        flats.dedup();
        let index: HashMap<Subset, usize> = flats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.members, i))
            .collect();
        // Rank starts are contiguous thanks to the sort.
        let mut covers = vec![Vec::new(); flats.len()];
        let mut start = 0;
        while start < flats.len() {
            let r = flats[start].rank;
            let end = flats[start..]
                .iter()
                .position(|f| f.rank != r)
                .map_or(flats.len(), |p| start + p);
            let next_end = flats[end..]
                .iter()
                .position(|f| f.rank != r + 1)
                .map_or(flats.len(), |p| end + p);
            for i in start..end {
                covers[i] = (end..next_end)
                    .filter(|&j| flats[i].members.is_proper_subset(flats[j].members))
                    .collect();
            }
            start = end;
        }
        Matroid {
            ground,
            flats,
            index,
            covers,
        }
    }

    #[inline]
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of ground-set elements.
    #[inline]
    pub fn n(&self) -> usize {
        self.ground.size
    }

    /// The full ground set `E` as a subset.
    #[inline]
    pub fn all(&self) -> Subset {
        self.ground.all()
    }

    /// `rk(E)`.
    #[inline]
    pub fn rank(&self) -> usize {
        self.flats.last().map_or(0, |f| f.rank)
    }

    /// Flats in canonical order.
    #[inline]
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Flats other than the bottom and `E`, in canonical order.
    pub fn proper_flats(&self) -> impl Iterator<Item = &Flat> + '_ {
        let top = self.all();
        let bottom = self.flats[0].members;
        self.flats
            .iter()
            .filter(move |f| f.members != top && f.members != bottom)
    }

    /// Indices (into [`Matroid::flats`]) of the flats covering flat `i`.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn flat_index(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    #[inline]
    pub fn is_flat(&self, s: Subset) -> bool {
        self.index.contains_key(&s)
    }

    /// The flat with members `s`, or [`Error::NotAFlat`].
    pub fn flat(&self, s: Subset) -> Result<Flat> {
        self.flat_index(s)
            .map(|i| self.flats[i])
            .ok_or(Error::NotAFlat(s))
    }

    pub fn flat_rank(&self, s: Subset) -> Result<usize> {
        self.flat(s).map(|f| f.rank)
    }

    pub fn flats_of_rank(&self, r: usize) -> impl Iterator<Item = &Flat> + '_ {
        self.flats.iter().filter(move |f| f.rank == r)
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: Subset) -> Flat {
        let s = s.intersection(self.all());
        let mut best = *self.flats.last().expect("E is always a flat");
        for f in &self.flats {
            if s.is_subset(f.members) && f.members.len() < best.members.len() {
                best = *f;
            }
        }
        best
    }

    /// `rk(S)`, the rank of the closure of `S`.
    pub fn rank_of(&self, s: Subset) -> usize {
        self.closure(s).rank
    }

    /// The least flat; it equals the set of loops.
    pub fn loops(&self) -> Subset {
        self.flats[0].members
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// Elements `e` with `E \ {e}` a flat.
    pub fn coloops(&self) -> Subset {
        let all = self.all();
        all.iter()
            .filter(|&e| self.is_flat(all.without(e)))
            .fold(Subset::EMPTY, Subset::with)
    }

    /// Loopless with every rank-one flat a singleton.
    pub fn is_simple(&self) -> bool {
        self.is_loopless() && self.flats_of_rank(1).all(|f| f.members.len() == 1)
    }

    /// Every subset is a flat.
    pub fn is_boolean(&self) -> bool {
        self.n() < 64 && self.flats.len() == 1usize << self.n()
    }

    pub(crate) fn require_loopless(&self) -> Result<()> {
        if self.is_loopless() {
            Ok(())
        } else {
            Err(Error::Loopy(self.loops()))
        }
    }

    /// Loopless and nonempty, which is what the Chow-ring layer needs.
    pub(crate) fn require_chow(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::EmptyGroundSet);
        }
        self.require_loopless()
    }

    pub(crate) fn check_element(&self, e: usize) -> Result<()> {
        if e < self.n() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: e,
                size: self.n(),
            })
        }
    }

    /// Same ground-set size and the same flats, ignoring labels.
    pub fn same_lattice(&self, other: &Matroid) -> bool {
        self.n() == other.n() && self.flats == other.flats
    }

    /// Returns a copy with element labels attached.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != self.n() {
            return Err(Error::invalid(format!(
                "{} labels for a ground set of size {}",
                labels.len(),
                self.n()
            )));
        }
        let mut m = self.clone();
        m.ground = GroundSet::labeled(labels)?;
        Ok(m)
    }

    /// Renders a subset using element labels when present.
    pub fn show(&self, s: Subset) -> String {
        let name = |e: usize| self.ground.name(e);
        let out = s.display_with(&name).to_string();
        out
    }

    /// Every maximal chain `∅ ⊊ F_1 ⊊ .. ⊊ F_r ⊊ E` of proper flats,
    /// returned without the endpoints.
    pub fn complete_flags(&self) -> Vec<Vec<Subset>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_flags(0, &mut path, &mut out);
        out
    }

    fn walk_flags(&self, at: usize, path: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        let top = self.flats.len() - 1;
        if at == top {
            out.push(path.clone());
            return;
        }
        for &c in &self.covers[at] {
            if c != top {
                path.push(self.flats[c].members);
            }
            self.walk_flags(c, path, out);
            if c != top {
                path.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(list: &[&[usize]]) -> Vec<Subset> {
        list.iter()
            .map(|s| Subset::from_elements(64, s.iter().copied()).unwrap())
            .collect()
    }

    #[test]
    fn u23_from_flats() {
        let m = Matroid::from_flats(3, sets(&[&[], &[0], &[1], &[2], &[0, 1, 2]])).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.flats().len(), 5);
        assert!(m.is_simple());
        assert_eq!(m.coloops(), Subset::EMPTY);
    }

    #[test]
    fn partition_axiom_witness() {
        // Element 2 lies in no minimal flat above the empty set.
        let err = Matroid::from_flats(3, sets(&[&[], &[0], &[1], &[0, 1, 2]])).unwrap_err();
        match err {
            Error::AxiomViolation(AxiomWitness::Partition {
                flat,
                element,
                covers,
            }) => {
                assert_eq!(flat, Subset::EMPTY);
                assert_eq!(element, 2);
                assert_eq!(covers, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn intersection_axiom_witness() {
        let err =
            Matroid::from_flats(3, sets(&[&[], &[0, 1], &[1, 2], &[0, 1, 2]])).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation(AxiomWitness::Intersection { .. })
        ));
    }

    #[test]
    fn missing_top() {
        let err = Matroid::from_flats(2, sets(&[&[], &[0]])).unwrap_err();
        assert!(matches!(err, Error::MissingTop));
    }

    #[test]
    fn two_flat_lattice_is_rank_one() {
        let m = Matroid::from_flats(2, sets(&[&[], &[0, 1]])).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.is_loopless());
        assert!(!m.is_simple());
    }

    #[test]
    fn element_out_of_range() {
        let err = Matroid::from_flats(2, sets(&[&[], &[0, 1, 2]])).unwrap_err();
        assert!(matches!(err, Error::ElementOutOfRange { element: 2, .. }));
    }

    #[test]
    fn closure_and_rank() {
        let m = Matroid::from_flats(3, sets(&[&[], &[0], &[1], &[2], &[0, 1, 2]])).unwrap();
        let s = Subset::from_bits(0b011);
        assert_eq!(m.closure(s).members, m.all());
        assert_eq!(m.rank_of(m.all()), 2);
        assert_eq!(m.rank_of(Subset::EMPTY), 0);
        for f in m.flats() {
            assert_eq!(m.closure(f.members), *f);
        }
    }

    #[test]
    fn complete_flags_of_u23() {
        let m = Matroid::from_flats(3, sets(&[&[], &[0], &[1], &[2], &[0, 1, 2]])).unwrap();
        assert_eq!(m.complete_flags().len(), 3);
    }
}

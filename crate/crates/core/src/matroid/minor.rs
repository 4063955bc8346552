//! Restriction, contraction, interval minors and simplification.
//!
//! Every minor re-indexes its ground set so that the surviving elements keep
//! their relative order; labels travel with them.

use super::Matroid;
use crate::error::{Error, Result};
use crate::subset::Subset;

impl Matroid {
    /// `M|_S`, whose flats are `{F ∩ S}`.
    pub fn restrict(&self, s: Subset) -> Result<Matroid> {
        if !s.is_subset(self.all()) {
            let bad = s.difference(self.all()).min().unwrap_or(0);
            return Err(Error::ElementOutOfRange {
                element: bad,
                size: self.n(),
            });
        }
        let mut traces: Vec<Subset> = self
            .flats()
            .iter()
            .map(|f| f.members.intersection(s))
            .collect();
        traces.sort();
        traces.dedup();
        let ranked = traces
            .into_iter()
            .map(|t| (t.compress(s), self.rank_of(t)))
            .collect();
        Ok(Matroid::assemble(self.ground().restrict(s), ranked))
    }

    /// `M \ e`.
    pub fn delete_element(&self, e: usize) -> Result<Matroid> {
        self.check_element(e)?;
        self.restrict(self.all().without(e))
    }

    /// `M/F` for a flat `F`; its flats are `{G \ F : G ⊇ F}`.
    pub fn contract(&self, f: Subset) -> Result<Matroid> {
        self.interval_minor(f, self.all())
    }

    /// `M[F, G] = (M|_G)/F`, whose lattice is the interval `[F, G]`.
    pub fn interval_minor(&self, f: Subset, g: Subset) -> Result<Matroid> {
        let rf = self.flat_rank(f)?;
        self.flat(g)?;
        if !f.is_subset(g) {
            return Err(Error::invalid(format!(
                "{f} is not contained in {g}, so [{f}, {g}] is not an interval"
            )));
        }
        let mask = g.difference(f);
        let ranked = self
            .flats()
            .iter()
            .filter(|h| f.is_subset(h.members) && h.members.is_subset(g))
            .map(|h| (h.members.difference(f).compress(mask), h.rank - rf))
            .collect();
        Ok(Matroid::assemble(self.ground().restrict(mask), ranked))
    }

    /// `M/e` for a single element, which need not be a flat. Used by
    /// deletion–contraction, where parallel elements turn into loops.
    pub fn contract_element(&self, e: usize) -> Result<Matroid> {
        self.check_element(e)?;
        let mask = self.all().without(e);
        let shift = usize::from(!self.loops().contains(e));
        let ranked = self
            .flats()
            .iter()
            .filter(|h| h.members.contains(e))
            .map(|h| (h.members.without(e).compress(mask), h.rank - shift))
            .collect();
        Ok(Matroid::assemble(self.ground().restrict(mask), ranked))
    }

    /// Keeps the least element of each rank-one flat.
    pub fn simplify(&self) -> Result<Matroid> {
        self.require_loopless()?;
        let keep = self
            .flats_of_rank(1)
            .filter_map(|f| f.members.min())
            .fold(Subset::EMPTY, Subset::with);
        self.restrict(keep)
    }
}

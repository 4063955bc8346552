//! Subsets of a ground set of at most 64 elements, packed into one machine word.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest ground set a [`Subset`] can describe.
pub const MAX_GROUND: usize = 64;

/// A subset of `{0, .., 63}` stored as a bitmask.
///
/// The derived ordering compares the numeric mask value, which is the
/// canonical subset order used everywhere flats are sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < MAX_GROUND);
        Subset(1u64 << e)
    }

    /// Builds a subset, checking every element against the ground set size.
    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        let mut s = Subset::EMPTY;
        for e in elements {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, size: n });
            }
            s = s.with(e);
        }
        Ok(s)
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < MAX_GROUND && self.0 >> e & 1 == 1
    }

    #[inline]
    #[must_use]
    pub fn with(self, e: usize) -> Self {
        Subset(self.0 | 1u64 << e)
    }

    #[inline]
    #[must_use]
    pub fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1u64 << e))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: Subset) -> bool {
        self != other && self.is_subset(other)
    }

    /// True when one of the two sets contains the other.
    #[inline]
    pub fn comparable(self, other: Subset) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Least element, if any.
    #[inline]
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Re-indexes `self ∩ mask` so that the elements of `mask` become
    /// `0, 1, ..` in increasing order.
    pub fn compress(self, mask: Subset) -> Subset {
        let mut out = 0u64;
        for (i, e) in mask.iter().enumerate() {
            if self.contains(e) {
                out |= 1 << i;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: sends bit `i` to the `i`-th element of `mask`.
    pub fn expand(self, mask: Subset) -> Subset {
        let mut out = 0u64;
        for (i, e) in mask.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << e;
            }
        }
        Subset(out)
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Subset(cur))
        })
    }

    /// All `k`-element subsets of `{0, .., n-1}` in increasing numeric order.
    pub fn of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
        let limit = if n == MAX_GROUND { None } else { Some(1u64 << n) };
        let mut next = if k > n {
            None
        } else if k == 0 {
            Some(0u64)
        } else if k == MAX_GROUND {
            Some(u64::MAX)
        } else {
            Some((1u64 << k) - 1)
        };
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                // Gosper's hack.
                let c = cur & cur.wrapping_neg();
                let r = cur.checked_add(c);
                match r {
                    None => None,
                    Some(r) => {
                        let nxt = (((r ^ cur) >> 2) / c) | r;
                        match limit {
                            Some(l) if nxt >= l => None,
                            _ => Some(nxt),
                        }
                    }
                }
            };
            Some(Subset(cur))
        })
    }

    /// Formats with a caller-supplied element naming.
    pub fn display_with<'a>(self, name: &'a dyn Fn(usize) -> String) -> impl fmt::Display + 'a {
        struct D<'a>(Subset, &'a dyn Fn(usize) -> String);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("{")?;
                for (i, e) in self.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(&(self.1)(e))?;
                }
                f.write_str("}")
            }
        }
        D(self, name)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `{0,1,2}`, `0,1,2` or `{}`. Bounds are not checked here.
impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(t)
            .trim();
        let mut out = Subset::EMPTY;
        if t.is_empty() {
            return Ok(out);
        }
        for part in t.split(',') {
            let e: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad element `{}` in set `{s}`", part.trim())))?;
            if e >= MAX_GROUND {
                return Err(Error::GroundTooLarge(e + 1));
            }
            out = out.with(e);
        }
        Ok(out)
    }
}

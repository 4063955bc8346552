//! Standard matroid families: uniform, Boolean, graphic and vector matroids.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GroundSet, Matroid};
use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_GROUND};

/// Scalar field for [`Matroid::from_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Prime(u64),
    Rational,
}

/// Flats of the matroid with rank function `rk` on `{0, .., n-1}`, generated
/// by closing `cl(∅)` upwards one element at a time.
fn flats_by_closure(n: usize, rk: &dyn Fn(Subset) -> usize) -> Vec<(Subset, usize)> {
    let all = Subset::full(n);
    let close = |s: Subset| -> (Subset, usize) {
        let r = rk(s);
        let c = all
            .difference(s)
            .iter()
            .filter(|&e| rk(s.with(e)) == r)
            .fold(s, Subset::with);
        (c, r)
    };
    let start = close(Subset::EMPTY);
    let mut seen = HashSet::from([start.0]);
    let mut out = vec![start];
    let mut queue = VecDeque::from([start.0]);
    while let Some(f) = queue.pop_front() {
        for e in all.difference(f) {
            let g = close(f.with(e));
            if seen.insert(g.0) {
                out.push(g);
                queue.push_back(g.0);
            }
        }
    }
    out
}

/// Flats by testing every subset for closedness.
fn flats_by_enumeration(n: usize, rk: &dyn Fn(Subset) -> usize) -> Vec<(Subset, usize)> {
    let all = Subset::full(n);
    all.subsets()
        .filter_map(|s| {
            let r = rk(s);
            all.difference(s)
                .iter()
                .all(|e| rk(s.with(e)) > r)
                .then_some((s, r))
        })
        .collect()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different components.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a] = b;
        true
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn rank_mod_p(cols: &[Vec<u64>], p: u64) -> usize {
    let Some(rows) = cols.first().map(Vec::len) else {
        return 0;
    };
    // Row-reduce the transpose: each column is a row vector here.
    let mut m: Vec<Vec<u64>> = cols.to_vec();
    let mut rank = 0;
    for c in 0..rows {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = (m[i][c] as u128 * inv as u128 % p as u128) as u64;
                for j in c..rows {
                    let sub = (f as u128 * m[rank][j] as u128 % p as u128) as u64;
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn rank_rational(cols: &[Vec<BigRational>]) -> usize {
    let Some(rows) = cols.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<BigRational>> = cols.to_vec();
    let mut rank = 0;
    for c in 0..rows {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][c].recip();
        for i in rank + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..rows {
                    let sub = &f * &m[rank][j];
                    m[i][j] -= sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

impl Matroid {
    /// `U_{rank,n}`: flats are the subsets of size below `rank`, plus `E`.
    pub fn from_uniform(rank: usize, n: usize) -> Result<Matroid> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        if rank > n {
            return Err(Error::invalid(format!(
                "uniform matroid rank {rank} exceeds ground set size {n}"
            )));
        }
        let mut flats: Vec<(Subset, usize)> = (0..rank)
            .flat_map(|k| Subset::of_size(n, k).map(move |s| (s, k)))
            .collect();
        flats.push((Subset::full(n), rank));
        Ok(Matroid::assemble(GroundSet::new(n)?, flats))
    }

    /// The Boolean matroid on `n` elements: every subset is a flat.
    pub fn from_boolean(n: usize) -> Result<Matroid> {
        Self::from_uniform(n, n)
    }

    /// The cycle matroid of a multigraph. Self-loop edges become loops.
    pub fn from_graph(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        if edges.is_empty() {
            return Err(Error::invalid("a graph needs at least one edge"));
        }
        if edges.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(edges.len()));
        }
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n_vertices {
                    return Err(Error::invalid(format!(
                        "vertex {x} is out of range for a graph on {n_vertices} vertices"
                    )));
                }
            }
        }
        let rk = |s: Subset| {
            let mut dsu = Dsu::new(n_vertices);
            s.iter()
                .filter(|&e| dsu.union(edges[e].0, edges[e].1))
                .count()
        };
        let n = edges.len();
        let flats = if n <= 6 {
            flats_by_enumeration(n, &rk)
        } else {
            flats_by_closure(n, &rk)
        };
        Ok(Matroid::assemble(GroundSet::new(n)?, flats))
    }

    /// The vector matroid of the columns of a `rows × cols` matrix given in
    /// row-major order.
    pub fn from_matrix(rows: usize, cols: usize, entries: &[i64], field: Field) -> Result<Matroid> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if cols == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if cols > MAX_GROUND {
            return Err(Error::GroundTooLarge(cols));
        }
        let column = |j: usize| (0..rows).map(move |i| entries[i * cols + j]);
        let flats = match field {
            Field::Prime(p) => {
                if !is_prime(p) {
                    return Err(Error::invalid(format!("modulus {p} is not prime")));
                }
                let vecs: Vec<Vec<u64>> = (0..cols)
                    .map(|j| column(j).map(|x| x.rem_euclid(p as i64) as u64).collect())
                    .collect();
                let rk = |s: Subset| {
                    let sel: Vec<Vec<u64>> = s.iter().map(|j| vecs[j].clone()).collect();
                    rank_mod_p(&sel, p)
                };
                flats_by_closure(cols, &rk)
            }
            Field::Rational => {
                let vecs: Vec<Vec<BigRational>> = (0..cols)
                    .map(|j| {
                        column(j)
                            .map(|x| BigRational::from_integer(BigInt::from(x)))
                            .collect()
                    })
                    .collect();
                let rk = |s: Subset| {
                    let sel: Vec<Vec<BigRational>> = s.iter().map(|j| vecs[j].clone()).collect();
                    rank_rational(&sel)
                };
                flats_by_closure(cols, &rk)
            }
        };
        Ok(Matroid::assemble(GroundSet::new(cols)?, flats))
    }

    /// Flats generated from an arbitrary rank oracle. Used for random
    /// lattices in tests.
    pub fn from_rank_fn(n: usize, rk: &dyn Fn(Subset) -> usize) -> Result<Matroid> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let flats = flats_by_closure(n, rk);
        let ground = GroundSet::new(n)?;
        Matroid::from_flats_in(ground, flats.into_iter().map(|f| f.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn revalidate(m: &Matroid) {
        let again = Matroid::from_flats(m.n(), m.flats().iter().map(|f| f.members)).unwrap();
        assert!(again.same_lattice(m));
    }

    #[test]
    fn uniform_flat_counts() {
        let m = Matroid::from_uniform(2, 3).unwrap();
        assert_eq!(m.flats().len(), 5);
        assert_eq!(m.rank(), 2);
        revalidate(&m);
        let b = Matroid::from_boolean(3).unwrap();
        assert_eq!(b.flats().len(), 8);
        assert!(b.is_boolean());
        assert_eq!(b.coloops(), b.all());
        revalidate(&b);
        let z = Matroid::from_uniform(0, 3).unwrap();
        assert_eq!(z.flats().len(), 1);
        assert_eq!(z.loops(), z.all());
        revalidate(&z);
        assert!(Matroid::from_uniform(4, 3).is_err());
        assert!(Matroid::from_uniform(0, 0).is_err());
        assert!(Matroid::from_boolean(0).is_err());
    }

    #[test]
    fn k4_has_thirteen_proper_flats() {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let m = Matroid::from_graph(4, &edges).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.proper_flats().count(), 13);
        assert_eq!(m.flats_of_rank(1).count(), 6);
        assert_eq!(m.flats_of_rank(2).count(), 7);
        revalidate(&m);
    }

    #[test]
    fn triangle_is_u23() {
        let m = Matroid::from_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(m.same_lattice(&Matroid::from_uniform(2, 3).unwrap()));
    }

    #[test]
    fn graph_routes_agree() {
        // K4 plus a pendant edge: 7 edges, so the closure route is used.
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)];
        let m = Matroid::from_graph(5, &edges).unwrap();
        let rk = |s: Subset| {
            let mut dsu = Dsu::new(5);
            s.iter().filter(|&e| dsu.union(edges[e].0, edges[e].1)).count()
        };
        let mut a = flats_by_enumeration(7, &rk);
        let mut b = flats_by_closure(7, &rk);
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(m.flats().len(), a.len());
        revalidate(&m);
    }

    #[test]
    fn self_loop_is_a_loop() {
        let m = Matroid::from_graph(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(m.loops(), Subset::singleton(0));
        assert!(m.require_chow().is_err());
        assert!(Matroid::from_graph(2, &[(0, 2)]).is_err());
        assert!(Matroid::from_graph(2, &[]).is_err());
    }

    #[test]
    fn fano_plane() {
        let entries = [
            1, 0, 0, 1, 1, 0, 1, //
            0, 1, 0, 1, 0, 1, 1, //
            0, 0, 1, 0, 1, 1, 1,
        ];
        let m = Matroid::from_matrix(3, 7, &entries, Field::Prime(2)).unwrap();
        assert_eq!(m.flats_of_rank(1).count(), 7);
        assert_eq!(m.flats_of_rank(2).count(), 7);
        assert!(m.flats_of_rank(2).all(|f| f.members.len() == 3));
        revalidate(&m);
        let nf = Matroid::from_matrix(3, 7, &entries, Field::Rational).unwrap();
        assert_eq!(nf.flats_of_rank(2).count(), 9);
        assert!(Matroid::from_matrix(3, 7, &entries, Field::Prime(4)).is_err());
    }

    #[test]
    fn identity_and_zero_column() {
        let id = Matroid::from_matrix(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1], Field::Rational).unwrap();
        assert!(id.same_lattice(&Matroid::from_boolean(3).unwrap()));
        let z = Matroid::from_matrix(2, 2, &[1, 0, 0, 0], Field::Prime(3)).unwrap();
        assert_eq!(z.loops(), Subset::singleton(1));
    }
}

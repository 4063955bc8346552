//! Exact sparse and dense linear algebra over the rationals.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type SparseRow = Vec<(u32, BigRational)>;
pub type SparseVec = BTreeMap<u32, BigRational>;

fn leading(row: &SparseRow) -> Option<u32> {
    row.first().map(|e| e.0)
}

/// `a - c·b` for sorted sparse rows.
fn axpy(a: &SparseRow, c: &BigRational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-echelon form of a relation matrix. Every pivot row is scaled so that
/// its leading entry, at the pivot column, is 1.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: HashMap<u32, SparseRow>,
}

impl Echelon {
    /// Eliminates column by column. Among the rows that lead at the current
    /// column, the pivot is the one with the smallest leading magnitude, then
    /// the lowest row index.
    pub fn from_rows(rows: Vec<SparseRow>) -> Self {
        let mut store: Vec<SparseRow> = Vec::with_capacity(rows.len());
        let mut buckets: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for row in rows {
            let mut row: SparseRow = row.into_iter().filter(|e| !e.1.is_zero()).collect();
            row.sort_by_key(|e| e.0);
            if let Some(c) = leading(&row) {
                buckets.entry(c).or_default().push(store.len());
            }
            store.push(row);
        }
        let mut pivots = HashMap::new();
        while let Some((col, ids)) = buckets.pop_first() {
            let &pid = ids
                .iter()
                .min_by(|&&x, &&y| {
                    let (vx, vy) = (store[x][0].1.abs(), store[y][0].1.abs());
                    vx.cmp(&vy).then(x.cmp(&y))
                })
                .expect("buckets are never empty");
            let mut pivot = std::mem::take(&mut store[pid]);
            let inv = pivot[0].1.recip();
            for e in pivot.iter_mut() {
                e.1 *= &inv;
            }
            for id in ids {
                if id == pid {
                    continue;
                }
                let row = std::mem::take(&mut store[id]);
                let c = row[0].1.clone();
                let reduced = axpy(&row, &c, &pivot);
                if let Some(lc) = leading(&reduced) {
                    buckets.entry(lc).or_default().push(id);
                }
                store[id] = reduced;
            }
            pivots.insert(col, pivot);
        }
        Echelon { pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Normal form of `v` modulo the row space: the result is supported on
    /// non-pivot columns and depends only on the class of `v`.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        while let Some((c, x)) = v.pop_first() {
            if x.is_zero() {
                continue;
            }
            match self.pivots.get(&c) {
                None => {
                    out.insert(c, x);
                }
                Some(row) => {
                    for (j, y) in &row[1..] {
                        let slot = v.entry(*j).or_default();
                        *slot -= &x * y;
                    }
                }
            }
        }
        out
    }
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_det(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves `A x = b` exactly for square nonsingular `A`, or returns `None`.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for j in c..=n {
            let v = &m[c][j] * &inv;
            m[c][j] = v;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let v = &f * &m[c][j];
                    m[i][j] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn echelon_rank_and_reduce() {
        // x0 + x1 = 0, x1 - x2 = 0, x0 + x2 = 0 span a rank-2 space in 3 columns.
        let rows = vec![
            vec![(0, q(1)), (1, q(1))],
            vec![(1, q(1)), (2, q(-1))],
            vec![(0, q(1)), (2, q(1))],
        ];
        let e = Echelon::from_rows(rows);
        assert_eq!(e.rank(), 2);
        let v = SparseVec::from([(0, q(1))]);
        let r = e.reduce(v);
        assert_eq!(r, SparseVec::from([(2, q(-1))]));
        let zero = e.reduce(SparseVec::from([(0, q(2)), (1, q(2))]));
        assert!(zero.is_empty());
    }

    #[test]
    fn determinants() {
        let m = |v: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
            v.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect()
        };
        assert_eq!(bareiss_det(&m(vec![vec![2, 1], vec![1, 1]])), BigInt::from(1));
        assert_eq!(
            bareiss_det(&m(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]])),
            BigInt::from(-3)
        );
        assert_eq!(bareiss_det(&m(vec![vec![1, 2], vec![2, 4]])), BigInt::from(0));
        assert_eq!(bareiss_det(&[]), BigInt::from(1));
    }

    #[test]
    fn solve_small() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert!(solve(&[vec![q(1), q(1)], vec![q(1), q(1)]], &[q(1), q(1)]).is_none());
    }
}

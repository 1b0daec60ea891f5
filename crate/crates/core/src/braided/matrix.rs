//! Sparse exact matrices with fraction-free row reduction.

use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Zero};
use serde::Serialize;

use crate::rational::{fmt_q, Q};

/// A sparse matrix over Q, stored as rows of `(column, value)` pairs sorted
/// by column with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Q)>>,
}

/// Rank and null space of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelData {
    pub rank: usize,
    /// Kernel basis in reduced row echelon form, pivots increasing.
    pub basis: Vec<Vec<Q>>,
}

/// Reduced row echelon form of a row space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub cols: usize,
    pub pivots: Vec<usize>,
    /// Sparse rows, each with a leading 1 at its pivot.
    pub rows: Vec<Vec<(usize, Q)>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        RatMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Q::one())]).collect(),
        }
    }

    pub fn from_dense(m: &[Vec<Q>]) -> RatMatrix {
        let cols = m.first().map_or(0, Vec::len);
        let data = m
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        RatMatrix { rows: m.len(), cols, data }
    }

    /// Builds a matrix from per-row maps; zero values are dropped.
    pub fn from_row_maps(cols: usize, rows: Vec<BTreeMap<usize, Q>>) -> RatMatrix {
        let data: Vec<Vec<(usize, Q)>> = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        RatMatrix { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Q)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.data[i][k].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    /// Dense rows of fraction strings, for JSON export.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_dense()
            .iter()
            .map(|r| r.iter().map(fmt_q).collect())
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut m: BTreeMap<usize, Q> = a.iter().cloned().collect();
                for (j, v) in b {
                    *m.entry(*j).or_insert_with(Q::zero) += v;
                }
                m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        RatMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Reduced row echelon form of the row space.
    pub fn echelon(&self) -> Echelon {
        row_reduce(self.cols, self.data.iter().map(|r| to_primitive(r)).collect())
    }

    /// Rank and right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> KernelData {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut vectors: Vec<Vec<(usize, Q)>> = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v: Vec<(usize, Q)> = vec![(f, Q::one())];
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if let Ok(k) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    v.push((p, -row[k].1.clone()));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            vectors.push(v);
        }
        let basis_ech = row_reduce(self.cols, vectors.iter().map(|r| to_primitive(r)).collect());
        let basis = basis_ech
            .rows
            .iter()
            .map(|r| {
                let mut d = vec![Q::zero(); self.cols];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect();
        KernelData { rank: ech.pivots.len(), basis }
    }
}

/// Canonical echelon form of the span of the given dense vectors.
pub fn span_echelon(cols: usize, vectors: &[Vec<Q>]) -> Echelon {
    row_reduce(
        cols,
        vectors
            .iter()
            .map(|v| {
                let sparse: Vec<(usize, Q)> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect();
                to_primitive(&sparse)
            })
            .collect(),
    )
}

type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators and divides out the content.
fn to_primitive(row: &[(usize, Q)]) -> IntRow {
    let mut l = BigInt::one();
    for (_, v) in row {
        l = l.lcm(v.denom());
    }
    let mut out: IntRow = row
        .iter()
        .map(|(j, v)| (*j, v.numer() * (&l / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * row - b * pivot`, both integer rows, result made primitive.
fn combine(row: &IntRow, a: &BigInt, pivot: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(&mut out);
    out
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

/// Fraction-free Gauss-Jordan elimination on integer rows. Every update is
/// `p * row - a * pivot` followed by removal of the row content, so no
/// rational arithmetic happens until the final normalisation.
fn row_reduce(cols: usize, rows: Vec<IntRow>) -> Echelon {
    let mut pending: Vec<IntRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<IntRow> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..cols {
        if pending.is_empty() {
            break;
        }
        // sparsest row with a nonzero entry at `col`
        let Some(k) = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].0 == col)
            .min_by_key(|(_, r)| r.len())
            .map(|(k, _)| k)
        else {
            continue;
        };
        let piv = pending.swap_remove(k);
        let p = piv[0].1.clone();
        let mut next = Vec::with_capacity(pending.len());
        for r in pending.drain(..) {
            if r[0].0 == col {
                let a = r[0].1.clone();
                let g = p.gcd(&a);
                let c = combine(&r, &(&p / &g), &piv, &(&a / &g));
                if !c.is_empty() {
                    next.push(c);
                }
            } else {
                next.push(r);
            }
        }
        pending = next;
        for r in done.iter_mut() {
            if let Some(a) = entry(r, col).cloned() {
                let g = p.gcd(&a);
                *r = combine(r, &(&p / &g), &piv, &(&a / &g));
            }
        }
        done.push(piv);
        pivots.push(col);
    }
    let rows = done
        .into_iter()
        .map(|r| {
            let lead = r[0].1.clone();
            r.into_iter().map(|(j, v)| (j, Q::new(v, lead.clone()))).collect()
        })
        .collect();
    Echelon { cols, pivots, rows }
}

impl Echelon {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
}

#[derive(Serialize)]
pub struct KernelExport {
    pub rank: usize,
    pub basis: Vec<Vec<String>>,
}

impl From<&KernelData> for KernelExport {
    fn from(k: &KernelData) -> Self {
        KernelExport {
            rank: k.rank,
            basis: k.basis.iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn dense_rank_oracle(m: &[Vec<Q>]) -> usize {
        // plain rational Gaussian elimination
        let mut a = m.to_vec();
        let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in 0..cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn identity_and_zero() {
        let k = RatMatrix::identity(4).kernel();
        assert_eq!(k.rank, 4);
        assert!(k.basis.is_empty());
        let z = RatMatrix::zeros(3, 3).kernel();
        assert_eq!(z.rank, 0);
        assert_eq!(z.basis.len(), 3);
        assert_eq!(z.basis[0], vec![q(1), q(0), q(0)]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = vec![
            vec![q(1), frac(1, 2), q(0), q(3)],
            vec![q(2), q(1), q(0), q(6)],
            vec![q(0), q(0), frac(-2, 3), q(1)],
        ];
        let mat = RatMatrix::from_dense(&m);
        let k = mat.kernel();
        assert_eq!(k.rank, 2);
        assert_eq!(k.rank, dense_rank_oracle(&m));
        assert_eq!(k.basis.len(), 2);
        for v in &k.basis {
            for row in &m {
                let s: Q = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn echelon_is_canonical() {
        let a = span_echelon(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]);
        let b = span_echelon(3, &[vec![q(1), q(2), q(1)], vec![q(2), q(2), q(0)]]);
        assert_eq!(a, b);
        assert_eq!(a.rows[1], vec![(1, q(1)), (2, q(1))]);
        assert_eq!(a.rows[0], vec![(0, q(1)), (2, q(-1))]);
    }

    proptest::proptest! {
        #[test]
        fn rank_matches_naive_elimination(
            entries in proptest::collection::vec(-3i64..=3, 30),
        ) {
            let m: Vec<Vec<Q>> = entries.chunks(6).map(|r| r.iter().map(|&v| q(v)).collect()).collect();
            let mat = RatMatrix::from_dense(&m);
            let k = mat.kernel();
            proptest::prop_assert_eq!(k.rank, dense_rank_oracle(&m));
            proptest::prop_assert_eq!(k.rank + k.basis.len(), 6);
            proptest::prop_assert_eq!(mat.transpose().rank(), k.rank);
        }
    }
}

//! Rack-type braided vector spaces and their quantum symmetrizers.

mod matrix;

use std::collections::BTreeMap;

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use matrix::{span_echelon, Echelon, KernelData, KernelExport, RatMatrix};

use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::rack::Rack;
use crate::rational::Q;

/// Which of the two braidings attached to a rack and cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// `c(v_x ⊗ v_y) = q_{x,y} v_{x▷y} ⊗ v_x`
    V,
    /// `c(w_x ⊗ w_y) = q_{y,x} w_y ⊗ w_{y▷x}`
    W,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "V" | "v" => Ok(Flavor::V),
            "W" | "w" => Ok(Flavor::W),
            _ => Err(Error::Invalid(format!("unknown flavor {s:?}"))),
        }
    }
}

/// A braiding that sends each basis tensor `b_x ⊗ b_y` to a nonzero multiple
/// of another basis tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedSpace {
    dim: usize,
    flavor: Option<Flavor>,
    /// indexed by `x * dim + y`
    table: Vec<((usize, usize), Q)>,
}

/// Upper bound on `dim^m` for symmetrizer matrices.
pub const DEFAULT_ROW_BUDGET: usize = 10_000_000;

impl BraidedSpace {
    pub fn from_rack(rack: &Rack, q: &Cocycle, flavor: Flavor) -> BraidedSpace {
        let n = rack.len();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(match flavor {
                    Flavor::V => ((rack.op(x, y), x), q.get(x, y).clone()),
                    Flavor::W => ((y, rack.op(y, x)), q.get(y, x).clone()),
                });
            }
        }
        BraidedSpace { dim: n, flavor: Some(flavor), table }
    }

    /// An arbitrary monomial map on `V ⊗ V`. Fails unless it permutes the
    /// basis tensors with nonzero scalars.
    pub fn from_table(dim: usize, table: Vec<((usize, usize), Q)>) -> Result<BraidedSpace> {
        if table.len() != dim * dim {
            return Err(Error::Invalid("braiding table has wrong size".into()));
        }
        let mut hit = vec![false; dim * dim];
        for ((a, b), c) in &table {
            if *a >= dim || *b >= dim || c.is_zero() || hit[a * dim + b] {
                return Err(Error::Invalid("braiding is not invertible".into()));
            }
            hit[a * dim + b] = true;
        }
        Ok(BraidedSpace { dim, flavor: None, table })
    }

    /// The flip `x ⊗ y ↦ y ⊗ x`.
    pub fn flip(dim: usize) -> BraidedSpace {
        let table = (0..dim)
            .flat_map(|x| (0..dim).map(move |y| ((y, x), Q::one())))
            .collect();
        BraidedSpace { dim, flavor: None, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flavor(&self) -> Option<Flavor> {
        self.flavor
    }

    /// `c(b_x ⊗ b_y)` as (target pair, coefficient).
    pub fn braid(&self, x: usize, y: usize) -> &((usize, usize), Q) {
        &self.table[x * self.dim + y]
    }

    /// Replaces the coefficient of `c(b_x ⊗ b_y)`.
    pub fn with_coefficient(mut self, x: usize, y: usize, c: Q) -> BraidedSpace {
        self.table[x * self.dim + y].1 = c;
        self.flavor = None;
        self
    }

    /// `c` as a `dim² × dim²` matrix acting on column vectors.
    pub fn matrix(&self) -> RatMatrix {
        let n2 = self.dim * self.dim;
        let mut rows = vec![BTreeMap::new(); n2];
        for (col, ((a, b), c)) in self.table.iter().enumerate() {
            rows[a * self.dim + b].insert(col, c.clone());
        }
        RatMatrix::from_row_maps(n2, rows)
    }

    /// Applies `c` to slots `(i, i+1)` of a basis tensor, in place.
    fn braid_at(&self, word: &mut [usize], i: usize, coeff: &mut Q) {
        let ((a, b), c) = self.braid(word[i], word[i + 1]);
        word[i] = *a;
        word[i + 1] = *b;
        *coeff *= c;
    }

    /// Both sides of the braid equation agree on every basis tensor.
    pub fn check_braid_equation(&self) -> bool {
        let n = self.dim;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (mut l, mut lc) = ([x, y, z], Q::one());
                    self.braid_at(&mut l, 0, &mut lc);
                    self.braid_at(&mut l, 1, &mut lc);
                    self.braid_at(&mut l, 0, &mut lc);
                    let (mut r, mut rc) = ([x, y, z], Q::one());
                    self.braid_at(&mut r, 1, &mut rc);
                    self.braid_at(&mut r, 0, &mut rc);
                    self.braid_at(&mut r, 1, &mut rc);
                    if l != r || lc != rc {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The quantum symmetrizer `ς_m = Σ_{w ∈ S_m} lift(w)` on `V^{⊗m}`.
    pub fn quantum_symmetrizer(&self, m: usize) -> Result<RatMatrix> {
        self.quantum_symmetrizer_with(m, DEFAULT_ROW_BUDGET, ReducedWords::LeftmostDescent)
    }

    pub fn quantum_symmetrizer_with(
        &self,
        m: usize,
        row_budget: usize,
        words: ReducedWords,
    ) -> Result<RatMatrix> {
        let size = tensor_size(self.dim, m, row_budget)?;
        let reduced: Vec<Vec<usize>> = permutations(m)
            .iter()
            .map(|w| reduced_word(w, words))
            .collect();
        if m == 0 {
            return Ok(RatMatrix::identity(1));
        }
        // column `col` of ς_m is Σ_w lift(w) e_col
        let columns: Vec<Vec<(usize, Q)>> = (0..size)
            .into_par_iter()
            .map(|col| {
                let start = decode(col, self.dim, m);
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for word in &reduced {
                    let mut t = start.clone();
                    let mut c = Q::one();
                    // lift(s_{i1} ⋯ s_{ik}) = c_{i1} ⋯ c_{ik}; rightmost acts first
                    for &i in word.iter().rev() {
                        self.braid_at(&mut t, i, &mut c);
                    }
                    *acc.entry(encode(&t, self.dim)).or_insert_with(Q::zero) += c;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        let mut rows = vec![BTreeMap::new(); size];
        for (col, entries) in columns.into_iter().enumerate() {
            for (row, v) in entries {
                rows[row].insert(col, v);
            }
        }
        Ok(RatMatrix::from_row_maps(size, rows))
    }

    /// Ranks of `ς_0, …, ς_max_deg`, i.e. the graded dimensions of the
    /// Nichols algebra in those degrees.
    pub fn nichols_dims(&self, max_deg: usize) -> Result<NicholsDims> {
        self.nichols_dims_with(max_deg, DEFAULT_ROW_BUDGET)
    }

    pub fn nichols_dims_with(&self, max_deg: usize, row_budget: usize) -> Result<NicholsDims> {
        let mut dims = Vec::new();
        for m in 0..=max_deg {
            if tensor_size(self.dim, m, row_budget).is_err() {
                if m == 0 {
                    return Err(Error::DegreeBudgetExceeded(format!("{}^0", self.dim)));
                }
                break;
            }
            let r = match m {
                0 => 1,
                1 => self.dim,
                _ => self.quantum_symmetrizer_with(m, row_budget, ReducedWords::LeftmostDescent)?.rank(),
            };
            dims.push(r);
            if r == 0 {
                break;
            }
        }
        let truncated = dims.last() != Some(&0);
        Ok(NicholsDims { total: dims.iter().sum(), dims, truncated })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NicholsDims {
    /// rank of `ς_m` for `m = 0, 1, …`
    pub dims: Vec<usize>,
    pub total: usize,
    /// true when the last computed rank is nonzero, so `total` is a lower bound
    pub truncated: bool,
}

/// Strategy for choosing a reduced word of a permutation. The symmetrizer
/// does not depend on it, which is checked in the tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedWords {
    LeftmostDescent,
    RightmostDescent,
}

fn tensor_size(dim: usize, m: usize, budget: usize) -> Result<usize> {
    let mut size: usize = 1;
    for _ in 0..m {
        size = size
            .checked_mul(dim)
            .filter(|&s| s <= budget)
            .ok_or_else(|| Error::DegreeBudgetExceeded(format!("{dim}^{m} > {budget}")))?;
    }
    Ok(size)
}

fn decode(mut idx: usize, dim: usize, m: usize) -> Vec<usize> {
    let mut t = vec![0; m];
    for slot in t.iter_mut().rev() {
        *slot = idx % dim;
        idx /= dim;
    }
    t
}

fn encode(t: &[usize], dim: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * dim + x)
}

/// All permutations of `0..m` in one-line notation.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..m {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for p in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// A reduced word `[i1, …, ik]` with `w = s_{i1} ⋯ s_{ik}` (0-based `s_i`
/// swapping slots `i, i+1`), found by sorting `w` with adjacent swaps at
/// descents.
fn reduced_word(w: &[usize], strategy: ReducedWords) -> Vec<usize> {
    let mut p = w.to_vec();
    let mut swaps = Vec::new();
    loop {
        let mut descents = (0..p.len().saturating_sub(1)).filter(|&i| p[i] > p[i + 1]);
        let i = match strategy {
            ReducedWords::LeftmostDescent => descents.next(),
            ReducedWords::RightmostDescent => descents.last(),
        };
        let Some(i) = i else { break };
        // p ∘ s_i has one fewer inversion
        p.swap(i, i + 1);
        swaps.push(i);
    }
    // w s_{a1} ⋯ s_{ak} = e, so w = s_{ak} ⋯ s_{a1}
    swaps.reverse();
    swaps
}

//! Quadratic relations of rack-type Nichols algebras and the parameter
//! spaces of their deformations.
//!
//! The classes of `X × X` under `(i, j) ∼ (i ▷ j, i)` are stored as cycles
//! `i_1, i_2, …` with `i_{h+2} = i_{h+1} ▷ i_h`, so that the `h`-th pair of a
//! class (1-based) is `(i_{h+1}, i_h)`.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::Serialize;

use crate::braided::{span_echelon, BraidedSpace, Flavor};
use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::freealg::{FreePoly, Word};
use crate::rack::Rack;
use crate::rational::{fmt_q, Q};

/// One equivalence class of pairs, with its η-coefficients for a cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelClass {
    /// `i_1, …, i_{|C|}`; the canonical rotation starts at the least pair.
    pub seq: Vec<usize>,
    #[serde(with = "crate::rational::vec")]
    pub eta: Vec<Q>,
    pub in_rprime: bool,
}

impl RelClass {
    pub fn size(&self) -> usize {
        self.seq.len()
    }

    /// The `h`-th pair `(i_{h+1}, i_h)`, 1-based and cyclic.
    pub fn pair(&self, h: usize) -> (usize, usize) {
        let n = self.seq.len();
        let h0 = (h + n - 1) % n;
        (self.seq[(h0 + 1) % n], self.seq[h0])
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.size()).map(|h| self.pair(h)).collect()
    }

    /// `i_1` and `i_2`, the second and first entries of the canonical pair.
    pub fn i1(&self) -> usize {
        self.seq[0]
    }

    pub fn i2(&self) -> usize {
        self.seq[1 % self.seq.len()]
    }
}

/// Partition of `X × X` into cycles, each starting at its least pair, sorted
/// by that pair.
pub fn enumerate_classes(rack: &Rack) -> Vec<Vec<usize>> {
    let n = rack.len();
    let mut seen = vec![false; n * n];
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if seen[a * n + b] {
                continue;
            }
            // (a, b) is the least unseen pair, hence least in its class.
            let mut seq = Vec::new();
            let (mut i, mut j) = (a, b);
            loop {
                seen[i * n + j] = true;
                seq.push(j);
                let next = (rack.op(i, j), i);
                (i, j) = next;
                if (i, j) == (a, b) {
                    break;
                }
            }
            out.push(seq);
        }
    }
    out
}

/// Attaches η-coefficients and the R' flag to a class cycle.
pub fn annotate(q: &Cocycle, seq: Vec<usize>) -> RelClass {
    let n = seq.len();
    let qp = |h: usize| {
        let h0 = h - 1;
        q.get(seq[(h0 + 1) % n], seq[h0]).clone()
    };
    let mut eta = vec![Q::one()];
    let mut prod = Q::one();
    for h in 2..=n {
        prod *= qp(h - 1);
        let sign = if (h + 1) % 2 == 0 { Q::one() } else { -Q::one() };
        eta.push(sign * &prod);
    }
    let total = (1..=n).fold(Q::one(), |acc, h| acc * qp(h));
    let target = if n % 2 == 0 { Q::one() } else { -Q::one() };
    RelClass { seq, eta, in_rprime: total == target }
}

/// All classes of `X × X`, annotated for `q`.
pub fn classify(rack: &Rack, q: &Cocycle) -> Vec<RelClass> {
    enumerate_classes(rack).into_iter().map(|s| annotate(q, s)).collect()
}

/// The annotated classes belonging to R'.
pub fn select_rprime(rack: &Rack, q: &Cocycle) -> Vec<RelClass> {
    classify(rack, q).into_iter().filter(|c| c.in_rprime).collect()
}

/// `b_C = Σ η_h v_{i_{h+1}} v_{i_h}` (V) or `b̃_C = Σ η_h w_{i_h} w_{i_{h+1}}` (W),
/// over an alphabet indexed by the rack.
pub fn relation_poly(class: &RelClass, nvars: usize, flavor: Flavor) -> Result<FreePoly> {
    if !class.in_rprime {
        return Err(Error::NotInRprime);
    }
    Ok(FreePoly::from_terms(
        nvars,
        (1..=class.size()).map(|h| {
            let (a, b) = class.pair(h);
            let w = match flavor {
                Flavor::V => [a, b],
                Flavor::W => [b, a],
            };
            (Word::from_indices(&w), class.eta[h - 1].clone())
        }),
    ))
}

/// The quadratic relations, one per class of R', in class order.
pub fn quadratic_relations(rack: &Rack, q: &Cocycle, flavor: Flavor) -> Vec<FreePoly> {
    select_rprime(rack, q)
        .iter()
        .map(|c| relation_poly(c, rack.len(), flavor).expect("class is in R'"))
        .collect()
}

fn degree_two_vector(p: &FreePoly, n: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n * n];
    for (w, c) in p.terms() {
        let l = w.letters();
        v[l[0] as usize * n + l[1] as usize] = c.clone();
    }
    v
}

/// Dimensions of the two spaces compared by [`verify_j2`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct J2Report {
    pub relations_dim: usize,
    pub kernel_dim: usize,
    pub equal: bool,
}

/// Compares the span of the `b_C` (or `b̃_C`) with `ker ς₂`.
pub fn verify_j2_report(rack: &Rack, q: &Cocycle, flavor: Flavor) -> J2Report {
    let n = rack.len();
    let rels: Vec<Vec<Q>> = quadratic_relations(rack, q, flavor)
        .iter()
        .map(|p| degree_two_vector(p, n))
        .collect();
    let space = BraidedSpace::from_rack(rack, q, flavor);
    let sym = space.quantum_symmetrizer(2).expect("degree two is within budget");
    let ker = sym.kernel();
    let a = span_echelon(n * n, &rels);
    let b = span_echelon(n * n, &ker.basis);
    J2Report { relations_dim: a.dim(), kernel_dim: b.dim(), equal: a == b }
}

pub fn verify_j2(rack: &Rack, q: &Cocycle, flavor: Flavor) -> bool {
    verify_j2_report(rack, q, flavor).equal
}

/// Linear ties `λ_a = r · λ_b` between parameters indexed by classes,
/// kept as a union-find whose edges carry the ratio.
#[derive(Clone, Debug)]
pub struct ParamSpace {
    pub classes: Vec<RelClass>,
    parent: Vec<usize>,
    /// `λ_i = ratio[i] · λ_{parent[i]}`
    ratio: Vec<Q>,
    zero: Vec<bool>,
}

/// Serialized form: free generators, ties to their roots, forced zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSpaceExport {
    pub classes: Vec<Vec<usize>>,
    pub free: Vec<usize>,
    pub ties: Vec<TieExport>,
    pub zeros: Vec<usize>,
    pub free_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TieExport {
    pub class: usize,
    pub root: usize,
    pub ratio: String,
}

impl ParamSpace {
    pub fn new(classes: Vec<RelClass>) -> ParamSpace {
        let n = classes.len();
        ParamSpace {
            classes,
            parent: (0..n).collect(),
            ratio: vec![Q::one(); n],
            zero: vec![false; n],
        }
    }

    /// Root of `i` and `r` with `λ_i = r · λ_root`.
    pub fn find(&self, i: usize) -> (usize, Q) {
        let mut r = Q::one();
        let mut i = i;
        while self.parent[i] != i {
            r *= &self.ratio[i];
            i = self.parent[i];
        }
        (i, r)
    }

    fn compress(&mut self, i: usize) {
        let (root, r) = self.find(i);
        self.parent[i] = root;
        self.ratio[i] = r;
    }

    /// Imposes `λ_a = c · λ_b`.
    pub fn tie(&mut self, a: usize, b: usize, c: &Q) {
        if c.is_zero() {
            self.force_zero(a);
            return;
        }
        let (ra, xa) = self.find(a);
        let (rb, xb) = self.find(b);
        // λ_ra = λ_a / xa = c xb / xa · λ_rb
        let r = c * &xb / &xa;
        if ra == rb {
            if !r.is_one() {
                self.zero[ra] = true;
            }
        } else {
            // keep the smaller index as root so exports are stable
            let z = self.zero[ra] || self.zero[rb];
            let root = if ra < rb {
                self.parent[rb] = ra;
                self.ratio[rb] = r.recip();
                ra
            } else {
                self.parent[ra] = rb;
                self.ratio[ra] = r;
                rb
            };
            self.zero[root] = z;
        }
        self.compress(a);
        self.compress(b);
    }

    pub fn force_zero(&mut self, a: usize) {
        let (r, _) = self.find(a);
        self.zero[r] = true;
    }

    pub fn is_zero(&self, a: usize) -> bool {
        self.zero[self.find(a).0]
    }

    /// Roots of components that are not forced to vanish.
    pub fn free(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.parent[i] == i && !self.zero[i])
            .collect()
    }

    pub fn free_dim(&self) -> usize {
        self.free().len()
    }

    /// Expresses each parameter in terms of free generators: `λ_C = r · t_k`
    /// where `k` indexes [`Self::free`]; `None` when forced to zero.
    pub fn coordinates(&self) -> Vec<Option<(usize, Q)>> {
        let free = self.free();
        (0..self.classes.len())
            .map(|i| {
                let (root, r) = self.find(i);
                if self.zero[root] {
                    None
                } else {
                    Some((free.binary_search(&root).unwrap(), r))
                }
            })
            .collect()
    }

    /// The parameter family obtained from values of the free generators.
    pub fn instantiate(&self, values: &[Q]) -> Vec<Q> {
        self.coordinates()
            .into_iter()
            .map(|c| c.map_or_else(Q::zero, |(k, r)| r * &values[k]))
            .collect()
    }

    /// Whether a family of values satisfies every tie and zero.
    pub fn contains(&self, lambda: &[Q]) -> bool {
        lambda.len() == self.classes.len()
            && (0..lambda.len()).all(|i| {
                let (root, r) = self.find(i);
                if self.zero[root] {
                    lambda[i].is_zero()
                } else {
                    lambda[i] == r * &lambda[root]
                }
            })
    }

    pub fn export(&self) -> ParamSpaceExport {
        let mut ties = Vec::new();
        let mut zeros = Vec::new();
        for i in 0..self.classes.len() {
            let (root, r) = self.find(i);
            if self.zero[root] {
                zeros.push(i);
            } else if root != i {
                ties.push(TieExport { class: i, root, ratio: fmt_q(&r) });
            }
        }
        ParamSpaceExport {
            classes: self.classes.iter().map(|c| c.seq.clone()).collect(),
            free: self.free(),
            ties,
            zeros,
            free_dim: self.free_dim(),
        }
    }
}

/// Locates each pair of `X × X` inside the R' classes: `(class, h)`.
fn pair_positions(classes: &[RelClass], n: usize) -> Vec<Option<(usize, usize)>> {
    let mut pos = vec![None; n * n];
    for (c, class) in classes.iter().enumerate() {
        for h in 1..=class.size() {
            let (a, b) = class.pair(h);
            pos[a * n + b] = Some((c, h));
        }
    }
    pos
}

/// Pointed deformation parameters: `λ_C = q_{x,i_{h+1}} q_{x,i_h} η_h(C) λ_D`
/// whenever `D = x ▷ C[h]`, for all `x` and `h`.
pub fn pointed_lambda_space(rack: &Rack, q: &Cocycle) -> ParamSpace {
    let n = rack.len();
    let classes = select_rprime(rack, q);
    let pos = pair_positions(&classes, n);
    let mut space = ParamSpace::new(classes.clone());
    for (c, class) in classes.iter().enumerate() {
        for x in 0..n {
            let (a, b) = class.pair(1);
            let image = (rack.op(x, a), rack.op(x, b));
            let Some((d, l)) = pos[image.0 * n + image.1] else {
                // x ▷ C is not in R', so λ_C pairs with nothing.
                space.force_zero(c);
                continue;
            };
            // x ▷ C[h] starts at the canonical pair of D.
            let size = class.size();
            let h = (size + 1 - l) % size + 1;
            let (ih1, ih) = class.pair(h);
            debug_assert_eq!((rack.op(x, ih1), rack.op(x, ih)), classes[d].pair(1));
            let coeff = q.get(x, ih1) * q.get(x, ih) * &class.eta[h - 1];
            space.tie(c, d, &coeff);
        }
    }
    space
}

/// Copointed deformation parameters: `λ_C` survives iff for every `x`,
/// `i_2 ▷ (i_1 ▷ x) = x` and `q_{i_1,x} q_{i_2,i_1 ▷ x} = 1`.
pub fn copointed_lambda_space(rack: &Rack, q: &Cocycle) -> ParamSpace {
    let classes = select_rprime(rack, q);
    let mut space = ParamSpace::new(classes.clone());
    for (c, class) in classes.iter().enumerate() {
        let (i1, i2) = (class.i1(), class.i2());
        let ok = (0..rack.len()).all(|x| {
            let y = rack.op(i1, x);
            rack.op(i2, y) == x && (q.get(i1, x) * q.get(i2, y)).is_one()
        });
        if !ok {
            space.force_zero(c);
        }
    }
    space
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomVanishing {
    /// Per R' class: whether some `j` passes both tests, so that a nonzero
    /// map on that class is not excluded.
    pub per_class: Vec<bool>,
    /// The candidate `j` for each class that admits one.
    pub witness: Vec<Option<usize>>,
    /// No class admits a nonzero map.
    pub all: bool,
}

/// Tests, per class of R', whether `φ_{i_2} φ_{i_1} = φ_j` for some `j` with
/// `q_{j,x} = q_{i_1,x} q_{i_2,i_1 ▷ x}` for all `x`.
pub fn hom_vanishing_check(rack: &Rack, q: &Cocycle) -> HomVanishing {
    let n = rack.len();
    let classes = select_rprime(rack, q);
    let mut witness = Vec::with_capacity(classes.len());
    for class in &classes {
        let (i1, i2) = (class.i1(), class.i2());
        let w = (0..n).find(|&j| {
            (0..n).all(|x| {
                let y = rack.op(i1, x);
                rack.op(j, x) == rack.op(i2, y) && *q.get(j, x) == q.get(i1, x) * q.get(i2, y)
            })
        });
        witness.push(w);
    }
    let per_class: Vec<bool> = witness.iter().map(Option::is_some).collect();
    let all = per_class.iter().all(|b| !b);
    HomVanishing { per_class, witness, all }
}

/// JSON report of R' for a rack and cocycle.
#[derive(Clone, Debug, Serialize)]
pub struct RprimeReport {
    pub labels: Vec<String>,
    pub classes: Vec<RelClass>,
    pub rprime_count: usize,
}

pub fn rprime_report(rack: &Rack, q: &Cocycle) -> RprimeReport {
    let classes = classify(rack, q);
    RprimeReport {
        labels: rack.labels().to_vec(),
        rprime_count: classes.iter().filter(|c| c.in_rprime).count(),
        classes,
    }
}

/// Class-size histogram, handy for summaries.
pub fn size_counts(classes: &[RelClass]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for c in classes {
        *m.entry(c.size()).or_default() += 1;
    }
    m
}

//! Finite-dimensional module algebras and their smash products with `kG`
//! or `k^G`.

use std::collections::HashMap;

use num::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{FiniteGroup, Hopf, HopfKind, PrincipalRealization};
use crate::error::{Error, Result};
use crate::freealg::{FreePoly, GroebnerBasis, QuotientDim, Word};
use crate::rational::Q;

/// Sparse vector on a basis: sorted `(index, coefficient)` pairs.
pub type Sparse = Vec<(usize, Q)>;

/// Largest algebra tabulated in full.
pub const MAX_ALGEBRA_DIM: usize = 4096;

/// A finite-dimensional algebra by structure constants on a basis of
/// normal words.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// `mul[i][j] = b_i b_j`
    mul: Vec<Vec<Sparse>>,
    nvars: usize,
    max_deg: Option<usize>,
}

impl FiniteAlgebra {
    /// The ground field.
    pub fn field() -> FiniteAlgebra {
        let w = Word::empty();
        FiniteAlgebra {
            index: [(w.clone(), 0)].into(),
            words: vec![w],
            mul: vec![vec![vec![(0, Q::one())]]],
            nvars: 0,
            max_deg: None,
        }
    }

    /// The quotient by a complete Gröbner basis with finite quotient.
    pub fn from_groebner(gb: &GroebnerBasis) -> Result<FiniteAlgebra> {
        // prefixes of normal words are normal, so a word of length L
        // forces L + 1 distinct basis elements
        let top = match gb.quotient_dim() {
            QuotientDim::Finite(0) => return Err(Error::Invalid("quotient is zero".into())),
            QuotientDim::Finite(d) if d <= MAX_ALGEBRA_DIM as u128 => d as usize - 1,
            QuotientDim::Finite(d) => return Err(Error::ResourceBudgetExceeded(format!("algebra of dimension {d}"))),
            _ => return Err(Error::Invalid("quotient is not known to be finite".into())),
        };
        FiniteAlgebra::build(gb, top, None)
    }

    /// The quotient by a homogeneous ideal and by all words of degree
    /// above `max_deg`.
    pub fn truncated(gb: &GroebnerBasis, max_deg: usize) -> Result<FiniteAlgebra> {
        if !gb.basis().iter().all(FreePoly::is_homogeneous) {
            return Err(Error::Invalid("truncation needs a homogeneous ideal".into()));
        }
        FiniteAlgebra::build(gb, max_deg, Some(max_deg))
    }

    fn build(gb: &GroebnerBasis, top: usize, max_deg: Option<usize>) -> Result<FiniteAlgebra> {
        let words = gb.normal_words(top);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let nvars = gb.nvars();
        let alg = FiniteAlgebra { words, index, mul: Vec::new(), nvars, max_deg };
        let mul = alg
            .words
            .par_iter()
            .map(|a| {
                alg.words
                    .iter()
                    .map(|b| alg.reduce(gb, &FreePoly::monomial(nvars, a.concat(b), Q::one())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteAlgebra { mul, ..alg })
    }

    /// Normal form of `p` in basis coordinates.
    pub fn reduce(&self, gb: &GroebnerBasis, p: &FreePoly) -> Result<Sparse> {
        let nf = gb.normal_form(p);
        let mut out: Sparse = Vec::new();
        for (w, c) in nf.terms() {
            if self.max_deg.is_some_and(|d| w.len() > d) {
                continue;
            }
            let i = self
                .index
                .get(w)
                .ok_or_else(|| Error::Invalid("normal word outside the basis".into()))?;
            out.push((*i, c.clone()));
        }
        out.sort_by_key(|t| t.0);
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn unit(&self) -> usize {
        self.index[&Word::empty()]
    }

    pub fn product(&self, i: usize, j: usize) -> &Sparse {
        &self.mul[i][j]
    }
}

/// A left action of `kG` or `k^G` on a [`FiniteAlgebra`]:
/// `act[b][i] = b·a_i` for Hopf basis element `b`.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    pub kind: HopfKind,
    act: Vec<Vec<Sparse>>,
}

impl ModuleAction {
    /// `h·(x_1⋯x_k) = Π χ_{x_i}(h) (h·x_1)⋯(h·x_k)`, with letters read as
    /// rack elements. Fails unless `h` maps every element of `gb` into the
    /// ideal.
    pub fn pointed(alg: &FiniteAlgebra, gb: &GroebnerBasis, r: &PrincipalRealization) -> Result<ModuleAction> {
        if alg.nvars() != r.len() && alg.dim() > 1 {
            return Err(Error::Invalid("alphabet does not match the rack".into()));
        }
        let nv = alg.nvars();
        let image = |h: usize, w: &Word| {
            let mut c = Q::one();
            let letters: Vec<usize> = w
                .letters()
                .iter()
                .map(|&x| {
                    c *= &r.chi[x as usize][h];
                    r.action[h][x as usize]
                })
                .collect();
            (Word::from_indices(&letters), c)
        };
        for h in 0..r.group.order() {
            for p in gb.basis() {
                let moved = FreePoly::from_terms(
                    nv,
                    p.terms().iter().map(|(w, c)| {
                        let (w2, c2) = image(h, w);
                        (w2, c * c2)
                    }),
                );
                if !gb.reduces_to_zero(&moved) {
                    return Err(Error::NotModuleAlgebra(format!(
                        "{} does not preserve the ideal",
                        r.group.element(h)
                    )));
                }
            }
        }
        let act = (0..r.group.order())
            .map(|h| {
                alg.words()
                    .iter()
                    .map(|w| {
                        let (w2, c) = image(h, w);
                        alg.reduce(gb, &FreePoly::monomial(nv, w2, c))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleAction { kind: HopfKind::GroupAlgebra, act })
    }

    /// The `k^G`-action of a `G`-grading with `deg x = degrees[x]`:
    /// `δ_t·a = [deg a = t] a`. Fails unless every element of `gb` is
    /// homogeneous.
    pub fn graded(alg: &FiniteAlgebra, gb: &GroebnerBasis, group: &FiniteGroup, degrees: &[usize]) -> Result<ModuleAction> {
        if degrees.len() != alg.nvars() {
            return Err(Error::Invalid("one degree per letter is required".into()));
        }
        let deg = |w: &Word| {
            w.letters()
                .iter()
                .fold(group.identity(), |acc, &x| group.mul(acc, degrees[x as usize]))
        };
        for p in gb.basis() {
            let mut ds = p.terms().iter().map(|(w, _)| deg(w));
            if let Some(d0) = ds.next() {
                if ds.any(|d| d != d0) {
                    return Err(Error::NotModuleAlgebra(format!("relation {} is not homogeneous", p.display(&letters(alg.nvars())))));
                }
            }
        }
        let act = (0..group.order())
            .map(|t| {
                alg.words()
                    .iter()
                    .enumerate()
                    .map(|(i, w)| if deg(w) == t { vec![(i, Q::one())] } else { Vec::new() })
                    .collect()
            })
            .collect();
        Ok(ModuleAction { kind: HopfKind::FunctionAlgebra, act })
    }

    /// The copointed realization: `deg w_x = g_x⁻¹`.
    pub fn copointed(alg: &FiniteAlgebra, gb: &GroebnerBasis, r: &PrincipalRealization) -> Result<ModuleAction> {
        let degrees: Vec<usize> = r.g.iter().map(|&g| r.group.inv(g)).collect();
        ModuleAction::graded(alg, gb, &r.group, &degrees)
    }

    /// The trivial action `b·a = ε(b) a`.
    pub fn trivial(alg: &FiniteAlgebra, hopf: &Hopf) -> ModuleAction {
        let act = (0..hopf.dim())
            .map(|b| {
                let e = hopf.counit_basis(b);
                (0..alg.dim())
                    .map(|i| if e.is_zero() { Vec::new() } else { vec![(i, e.clone())] })
                    .collect()
            })
            .collect();
        ModuleAction { kind: hopf.kind, act }
    }

    pub fn apply(&self, b: usize, i: usize) -> &Sparse {
        &self.act[b][i]
    }
}

fn letters(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn add_into(acc: &mut HashMap<usize, Q>, v: &Sparse, c: &Q) {
    for (i, a) in v {
        *acc.entry(*i).or_insert_with(Q::zero) += a * c;
    }
}

fn finish(acc: HashMap<usize, Q>) -> Sparse {
    let mut v: Sparse = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|t| t.0);
    v
}

/// Checks `b·(a a') = Σ (b₁·a)(b₂·a')` and `b·1 = ε(b) 1` on all basis
/// elements.
pub fn check_module_algebra(alg: &FiniteAlgebra, action: &ModuleAction, hopf: &Hopf) -> Result<()> {
    let n = alg.dim();
    let unit = alg.unit();
    (0..hopf.dim()).into_par_iter().try_for_each(|b| {
        let e = hopf.counit_basis(b);
        let want: Sparse = if e.is_zero() { Vec::new() } else { vec![(unit, e)] };
        if *action.apply(b, unit) != want {
            return Err(Error::NotModuleAlgebra(format!("unit not preserved by basis element {b}")));
        }
        for i in 0..n {
            for j in 0..n {
                let mut lhs = HashMap::new();
                for (k, c) in alg.product(i, j) {
                    add_into(&mut lhs, action.apply(b, *k), c);
                }
                let mut rhs = HashMap::new();
                for (b1, b2) in hopf.coproduct_basis(b) {
                    for (k, c) in action.apply(b1, i) {
                        for (l, d) in action.apply(b2, j) {
                            add_into(&mut rhs, alg.product(*k, *l), &(c * d));
                        }
                    }
                }
                if finish(lhs) != finish(rhs) {
                    return Err(Error::NotModuleAlgebra(format!(
                        "basis element {b} on the product of basis words {i}, {j}"
                    )));
                }
            }
        }
        Ok(())
    })
}

/// `A # H` on the basis `a_i ⊗ b_j`, indexed `i * dim H + j`, with
/// `(a⊗h)(a'⊗h') = Σ a(h₁·a') ⊗ h₂h'`.
#[derive(Clone, Debug)]
pub struct SmashProduct {
    dim_a: usize,
    dim_h: usize,
    table: Vec<Vec<Sparse>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityReport {
    pub dim: usize,
    pub triples: u128,
    pub exhaustive: bool,
    pub integer_path: bool,
    pub witness: Option<(usize, usize, usize)>,
}

impl AssociativityReport {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn smash_product(alg: &FiniteAlgebra, action: &ModuleAction, hopf: &Hopf) -> Result<SmashProduct> {
    if action.kind != hopf.kind {
        return Err(Error::Invalid("action and Hopf algebra disagree".into()));
    }
    check_module_algebra(alg, action, hopf)?;
    let (na, nh) = (alg.dim(), hopf.dim());
    let dim = na * nh;
    let table = (0..dim)
        .into_par_iter()
        .map(|x| {
            let (i, j) = (x / nh, x % nh);
            let pieces = hopf.coproduct_basis(j);
            (0..dim)
                .map(|y| {
                    let (k, l) = (y / nh, y % nh);
                    let mut acc = HashMap::new();
                    for &(u, v) in &pieces {
                        let Some(hv) = hopf.mul_basis(v, l) else { continue };
                        for (m, c) in action.apply(u, k) {
                            for (p, d) in alg.product(i, *m) {
                                *acc.entry(p * nh + hv).or_insert_with(Q::zero) += c * d;
                            }
                        }
                    }
                    finish(acc)
                })
                .collect()
        })
        .collect();
    Ok(SmashProduct { dim_a: na, dim_h: nh, table })
}

impl SmashProduct {
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_h
    }

    pub fn index(&self, a: usize, h: usize) -> usize {
        a * self.dim_h + h
    }

    pub fn product(&self, x: usize, y: usize) -> &Sparse {
        &self.table[x][y]
    }

    fn integer_table(&self) -> Option<Vec<Vec<Vec<(u32, i64)>>>> {
        self.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .map(|(i, c)| {
                                if c.is_integer() {
                                    Some((*i as u32, c.to_integer().to_i64()?))
                                } else {
                                    None
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// `(xy)z = x(yz)` on every triple of basis elements.
    pub fn check_associativity(&self) -> AssociativityReport {
        let n = self.dim();
        let (witness, integer_path) = match self.integer_table() {
            Some(t) => (assoc_int(&t), true),
            None => (
                (0..n).into_par_iter().find_map_first(|x| {
                    (0..n).find_map(|y| (0..n).find_map(|z| (!self.associates(x, y, z)).then_some((x, y, z))))
                }),
                false,
            ),
        };
        AssociativityReport { dim: n, triples: (n as u128).pow(3), exhaustive: true, integer_path, witness }
    }

    /// Associativity on `samples` seeded random triples.
    pub fn check_associativity_sampled(&self, samples: usize, seed: u64) -> AssociativityReport {
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<usize> = (0..n).collect();
        let triples: Vec<(usize, usize, usize)> = (0..samples)
            .map(|_| {
                let p = |r: &mut ChaCha8Rng| *all.choose(r).unwrap();
                (p(&mut rng), p(&mut rng), p(&mut rng))
            })
            .collect();
        let witness = triples.into_iter().find(|&(x, y, z)| !self.associates(x, y, z));
        AssociativityReport { dim: n, triples: samples as u128, exhaustive: false, integer_path: false, witness }
    }

    fn associates(&self, x: usize, y: usize, z: usize) -> bool {
        let mut lhs = HashMap::new();
        for (m, c) in &self.table[x][y] {
            add_into(&mut lhs, &self.table[*m][z], c);
        }
        let mut rhs = HashMap::new();
        for (m, c) in &self.table[y][z] {
            add_into(&mut rhs, &self.table[x][*m], c);
        }
        finish(lhs) == finish(rhs)
    }
}

fn assoc_int(t: &[Vec<Vec<(u32, i64)>>]) -> Option<(usize, usize, usize)> {
    let n = t.len();
    (0..n).into_par_iter().find_map_first(|x| {
        let mut lhs: Vec<(u32, i64)> = Vec::new();
        let mut rhs: Vec<(u32, i64)> = Vec::new();
        for y in 0..n {
            let xy = &t[x][y];
            for z in 0..n {
                let yz = &t[y][z];
                if xy.is_empty() && yz.is_empty() {
                    continue;
                }
                lhs.clear();
                rhs.clear();
                for &(m, c) in xy {
                    lhs.extend(t[m as usize][z].iter().map(|&(i, d)| (i, c * d)));
                }
                for &(m, c) in yz {
                    rhs.extend(t[x][m as usize].iter().map(|&(i, d)| (i, c * d)));
                }
                if canon(&mut lhs) != canon(&mut rhs) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

fn canon(v: &mut Vec<(u32, i64)>) -> &[(u32, i64)] {
    v.sort_unstable_by_key(|t| t.0);
    let mut w = 0;
    for r in 0..v.len() {
        if w > 0 && v[w - 1].0 == v[r].0 {
            v[w - 1].1 += v[r].1;
        } else {
            v[w] = v[r];
            w += 1;
        }
    }
    v.truncate(w);
    v.retain(|t| t.1 != 0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::Flavor;
    use crate::builtin::setting;
    use crate::freealg::groebner_default;
    use crate::quadrel::quadratic_relations;

    fn fk3(flavor: Flavor) -> (FiniteAlgebra, GroebnerBasis) {
        let (r, q) = setting("o23", "const:-1").unwrap();
        let gb = groebner_default(3, &quadratic_relations(&r.rack, &q, flavor)).unwrap();
        (FiniteAlgebra::from_groebner(&gb).unwrap(), gb)
    }

    fn s3_realization() -> PrincipalRealization {
        PrincipalRealization::builtin("o23", "sgn").unwrap()
    }

    #[test]
    fn field_smash_is_the_hopf_algebra() {
        let g = FiniteGroup::symmetric(3);
        let k = FiniteAlgebra::field();
        for kind in [HopfKind::GroupAlgebra, HopfKind::FunctionAlgebra] {
            let h = Hopf::new(kind, &g);
            let s = smash_product(&k, &ModuleAction::trivial(&k, &h), &h).unwrap();
            assert_eq!(s.dim(), 6);
            for a in 0..6 {
                for b in 0..6 {
                    let want: Sparse = h.mul_basis(a, b).map(|c| vec![(c, Q::one())]).unwrap_or_default();
                    assert_eq!(*s.product(a, b), want);
                }
            }
        }
    }

    #[test]
    fn fk3_smash_products() {
        let r = s3_realization();
        let (alg, gb) = fk3(Flavor::V);
        assert_eq!(alg.dim(), 12);
        let act = ModuleAction::pointed(&alg, &gb, &r).unwrap();
        let h = Hopf::new(HopfKind::GroupAlgebra, &r.group);
        let s = smash_product(&alg, &act, &h).unwrap();
        assert_eq!(s.dim(), 72);
        assert!(s.check_associativity().pass());

        let (alg, gb) = fk3(Flavor::W);
        let act = ModuleAction::copointed(&alg, &gb, &r).unwrap();
        let h = Hopf::new(HopfKind::FunctionAlgebra, &r.group);
        let s = smash_product(&alg, &act, &h).unwrap();
        assert_eq!(s.dim(), 72);
        let rep = s.check_associativity();
        assert!(rep.pass() && rep.integer_path && rep.triples == 72u128.pow(3));
        assert!(s.check_associativity_sampled(500, 3).pass());
        // (1⊗δ_g)(1⊗δ_h) = δ_{g,h} (1⊗δ_g)
        let one = alg.unit();
        for g in 0..6 {
            for k in 0..6 {
                let want: Sparse = if g == k { vec![(s.index(one, g), Q::one())] } else { Vec::new() };
                assert_eq!(*s.product(s.index(one, g), s.index(one, k)), want);
            }
        }
    }

    #[test]
    fn bad_actions_are_rejected() {
        let r = s3_realization();
        let (alg, gb) = fk3(Flavor::W);
        let e = r.group.identity();
        let g0 = r.g[0];
        let err = ModuleAction::graded(&alg, &gb, &r.group, &[g0, e, e]).unwrap_err();
        assert!(matches!(err, Error::NotModuleAlgebra(_)));
        // a sign-flipped character on one letter does not preserve the relations
        let mut r2 = r.clone();
        let t = r2.g[1];
        r2.chi[0][t] = -r2.chi[0][t].clone();
        let (alg, gb) = fk3(Flavor::V);
        assert!(matches!(ModuleAction::pointed(&alg, &gb, &r2), Err(Error::NotModuleAlgebra(_))));
    }
}

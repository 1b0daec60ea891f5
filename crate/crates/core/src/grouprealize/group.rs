use std::collections::HashMap;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};
use crate::rational::Q;

/// A finite permutation group with tabulated multiplication.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
}

/// Groups up to this order get their axioms checked on construction.
const AXIOM_CHECK_ORDER: usize = 120;

impl FiniteGroup {
    pub fn symmetric(n: usize) -> FiniteGroup {
        let g = PermGroup::symmetric(n);
        FiniteGroup::from_perms(format!("S{n}"), g.elements().cloned().collect())
            .expect("symmetric group is closed")
    }

    /// `S4`-style names.
    pub fn by_name(name: &str) -> Result<FiniteGroup> {
        match name.strip_prefix('S').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (1..=6).contains(&n) => Ok(FiniteGroup::symmetric(n)),
            _ => Err(Error::Invalid(format!("unknown group {name:?}; expected S1..S6"))),
        }
    }

    /// Tabulates a set of permutations closed under composition.
    pub fn from_perms(name: String, mut elements: Vec<Perm>) -> Result<FiniteGroup> {
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::Invalid("empty group".into()));
        }
        let index: HashMap<Perm, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let lookup = |p: &Perm| {
            index
                .get(p)
                .copied()
                .ok_or_else(|| Error::Invalid("element set is not closed".into()))
        };
        let mut mul = Vec::with_capacity(elements.len());
        for a in &elements {
            mul.push(elements.iter().map(|b| lookup(&a.compose(b))).collect::<Result<Vec<_>>>()?);
        }
        let inv = elements.iter().map(|a| lookup(&a.inverse())).collect::<Result<Vec<_>>>()?;
        let id = lookup(&Perm::identity(elements[0].degree()))?;
        let g = FiniteGroup { name, elements, index, mul, inv, id };
        if g.order() <= AXIOM_CHECK_ORDER {
            g.check_axioms()?;
        }
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(a, self.id) != a || self.mul(a, self.inv[a]) != self.id {
                return Err(Error::Invalid("identity or inverse law fails".into()));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Invalid("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    /// `a b a⁻¹`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }
}

/// The two Hopf algebras attached to a finite group, on their natural
/// bases: group elements for `kG`, point masses `δ_g` for `k^G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HopfKind {
    GroupAlgebra,
    FunctionAlgebra,
}

/// Elements are dense coefficient vectors on the basis.
#[derive(Clone, Copy, Debug)]
pub struct Hopf<'a> {
    pub kind: HopfKind,
    pub group: &'a FiniteGroup,
}

impl<'a> Hopf<'a> {
    pub fn new(kind: HopfKind, group: &'a FiniteGroup) -> Self {
        Hopf { kind, group }
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = self.zero();
        v[i] = Q::one();
        v
    }

    pub fn unit(&self) -> Vec<Q> {
        match self.kind {
            HopfKind::GroupAlgebra => self.basis(self.group.identity()),
            HopfKind::FunctionAlgebra => vec![Q::one(); self.dim()],
        }
    }

    /// Product of two basis elements as (basis index) or zero.
    pub fn mul_basis(&self, a: usize, b: usize) -> Option<usize> {
        match self.kind {
            HopfKind::GroupAlgebra => Some(self.group.mul(a, b)),
            HopfKind::FunctionAlgebra => (a == b).then_some(a),
        }
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        match self.kind {
            HopfKind::FunctionAlgebra => a.iter().zip(b).map(|(x, y)| x * y).collect(),
            HopfKind::GroupAlgebra => {
                let mut out = self.zero();
                for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        out[self.group.mul(i, j)] += x * y;
                    }
                }
                out
            }
        }
    }

    /// `Δ(b_i)` as a list of basis pairs (all coefficients one).
    pub fn coproduct_basis(&self, i: usize) -> Vec<(usize, usize)> {
        match self.kind {
            HopfKind::GroupAlgebra => vec![(i, i)],
            HopfKind::FunctionAlgebra => (0..self.dim())
                .map(|a| (a, self.group.mul(self.group.inv(a), i)))
                .collect(),
        }
    }

    /// `Δ(v)` as a dense `dim × dim` array.
    pub fn coproduct(&self, v: &[Q]) -> Vec<Vec<Q>> {
        let mut out = vec![self.zero(); self.dim()];
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (a, b) in self.coproduct_basis(i) {
                out[a][b] += c;
            }
        }
        out
    }

    /// The antipode permutes the basis in both cases.
    pub fn antipode_basis(&self, i: usize) -> usize {
        self.group.inv(i)
    }

    pub fn antipode(&self, v: &[Q]) -> Vec<Q> {
        let mut out = self.zero();
        for (i, c) in v.iter().enumerate() {
            out[self.antipode_basis(i)] = c.clone();
        }
        out
    }

    pub fn counit_basis(&self, i: usize) -> Q {
        match self.kind {
            HopfKind::GroupAlgebra => Q::one(),
            HopfKind::FunctionAlgebra => {
                if i == self.group.identity() {
                    Q::one()
                } else {
                    Q::zero()
                }
            }
        }
    }

    pub fn counit(&self, v: &[Q]) -> Q {
        v.iter().enumerate().map(|(i, c)| c * self.counit_basis(i)).sum()
    }
}

/// Group-likes of `k^G` over Q, i.e. homomorphisms `G → Q^×`. Rational
/// roots of unity are ±1, so these are the sign-valued characters.
pub fn function_algebra_group_likes(group: &FiniteGroup) -> Vec<Vec<Q>> {
    let n = group.order();
    let mut out = Vec::new();
    // pick a generating set greedily, then try every sign pattern on it
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; n];
    span[group.identity()] = true;
    let close = |span: &mut Vec<bool>| loop {
        let cur: Vec<usize> = (0..n).filter(|&i| span[i]).collect();
        let mut grew = false;
        for &a in &cur {
            for &b in &cur {
                let c = group.mul(a, b);
                if !span[c] {
                    span[c] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    };
    for g in 0..n {
        if !span[g] {
            gens.push(g);
            span[g] = true;
            close(&mut span);
        }
    }
    for mask in 0u64..(1u64 << gens.len()) {
        let mut val: Vec<Option<i8>> = vec![None; n];
        val[group.identity()] = Some(1);
        let mut frontier = vec![group.identity()];
        let mut ok = true;
        while let Some(a) = frontier.pop() {
            for (k, &g) in gens.iter().enumerate() {
                let s = if mask >> k & 1 == 1 { -1 } else { 1 };
                let b = group.mul(a, g);
                let v = val[a].unwrap() * s;
                match val[b] {
                    None => {
                        val[b] = Some(v);
                        frontier.push(b);
                    }
                    Some(w) if w != v => ok = false,
                    _ => {}
                }
            }
        }
        if !ok {
            continue;
        }
        let f: Vec<i8> = val.iter().map(|v| v.unwrap()).collect();
        let hom = (0..n).all(|a| (0..n).all(|b| f[group.mul(a, b)] == f[a] * f[b]));
        if hom {
            out.push(f.iter().map(|&s| Q::from_integer((s as i64).into())).collect());
        }
    }
    out.sort();
    out.dedup();
    out
}

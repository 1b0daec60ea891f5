//! Rational 2-cocycles on racks.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rack::Rack;
use crate::rational::{self, q, Q};

/// `q[x][y] = q_{x,y}`, nonzero and satisfying
/// `q_{x,y▷z} q_{y,z} = q_{x▷y,x▷z} q_{x,z}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    #[serde(with = "rational::matrix")]
    q: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    Constant(Q),
    /// The sign cocycle on the transpositions of S_n:
    /// `q_{g,(ij)} = 1` if `g(i) < g(j)` and `-1` otherwise, for `i < j`.
    ChiTranspositions(usize),
}

/// Cocycle file layout: `{"rack": {...}, "q": [["-1", ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleFile {
    pub rack: Rack,
    #[serde(with = "rational::matrix")]
    pub q: Vec<Vec<Q>>,
}

impl Cocycle {
    pub fn validate(rack: &Rack, values: Vec<Vec<Q>>) -> Result<Cocycle> {
        let n = rack.len();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("cocycle table is not {n}x{n}")));
        }
        for (x, row) in values.iter().enumerate() {
            if let Some(y) = row.iter().position(Zero::is_zero) {
                return Err(Error::ZeroEntry(x, y));
            }
        }
        if let Some((x, y, z)) = law_violation(rack, &values) {
            return Err(Error::CocycleLawFails(x, y, z));
        }
        Ok(Cocycle { q: values })
    }

    pub fn make(rack: &Rack, kind: &CocycleKind) -> Result<Cocycle> {
        let n = rack.len();
        match kind {
            CocycleKind::Constant(w) => {
                if w.is_zero() {
                    return Err(Error::ZeroEntry(0, 0));
                }
                Cocycle::validate(rack, vec![vec![w.clone(); n]; n])
            }
            CocycleKind::ChiTranspositions(deg) => {
                let perms = transpositions_of(rack, *deg)?;
                let values = perms
                    .iter()
                    .map(|g| perms.iter().map(|t| q(chi(g, t))).collect())
                    .collect();
                Cocycle::validate(rack, values)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> &Q {
        &self.q[x][y]
    }

    pub fn values(&self) -> &[Vec<Q>] {
        &self.q
    }

    pub fn is_constant(&self) -> Option<&Q> {
        let first = &self.q[0][0];
        self.q.iter().flatten().all(|v| v == first).then_some(first)
    }

    /// Pointwise product of two cocycles on the same rack.
    pub fn product(&self, other: &Cocycle) -> Cocycle {
        let q = self
            .q
            .iter()
            .zip(&other.q)
            .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u * v).collect())
            .collect();
        Cocycle { q }
    }

    /// `q_{x,y} = f(x ▷ y) / f(y)` for nonzero `f`; always a cocycle.
    pub fn coboundary(rack: &Rack, f: &[Q]) -> Result<Cocycle> {
        let n = rack.len();
        let values = (0..n)
            .map(|x| (0..n).map(|y| &f[rack.op(x, y)] / &f[y]).collect())
            .collect();
        Cocycle::validate(rack, values)
    }

    pub fn relabel(&self, sigma: &Perm) -> Cocycle {
        let inv = sigma.inverse();
        let n = self.len();
        let q = (0..n)
            .map(|x| (0..n).map(|y| self.q[inv.apply(x)][inv.apply(y)].clone()).collect())
            .collect();
        Cocycle { q }
    }
}

/// The sign `χ(g, (ij))` for a transposition `t = (ij)`.
pub fn chi(g: &Perm, t: &Perm) -> i64 {
    let c = t.cycles();
    assert!(c.len() == 1 && c[0].len() == 2, "chi needs a transposition");
    let (i, j) = (c[0][0] - 1, c[0][1] - 1);
    if g.apply(i) < g.apply(j) {
        1
    } else {
        -1
    }
}

/// Recovers the transpositions labelling `rack` and checks that `rack` is the
/// transposition rack of S_deg.
pub fn transpositions_of(rack: &Rack, deg: usize) -> Result<Vec<Perm>> {
    let perms: Vec<Perm> = rack
        .labels()
        .iter()
        .map(|l| Perm::parse_cycles(deg, l))
        .collect::<Result<_>>()
        .map_err(|_| Error::WrongRackForChi)?;
    if perms.iter().any(|p| {
        let c = p.cycles();
        c.len() != 1 || c[0].len() != 2
    }) || perms.len() != deg * (deg - 1) / 2
    {
        return Err(Error::WrongRackForChi);
    }
    let expected = Rack::from_conjugation(&perms).map_err(|_| Error::WrongRackForChi)?;
    if expected.table() != rack.table() {
        return Err(Error::WrongRackForChi);
    }
    Ok(perms)
}

fn law_violation(rack: &Rack, q: &[Vec<Q>]) -> Option<(usize, usize, usize)> {
    let n = rack.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = &q[x][rack.op(y, z)] * &q[y][z];
                let rhs = &q[rack.op(x, y)][rack.op(x, z)] * &q[x][z];
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Whether every diagonal entry is `-1`.
pub fn diagonal_is_minus_one(c: &Cocycle) -> bool {
    (0..c.len()).all(|x| (c.get(x, x) + Q::one()).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;
    use crate::rational::frac;

    fn rack(n: usize, seed: &str) -> Rack {
        Rack::conjugacy(&PermGroup::symmetric(n), &Perm::parse_cycles(n, seed).unwrap())
            .unwrap()
            .0
    }

    #[test]
    fn constants_are_cocycles() {
        for r in [rack(3, "(12)"), rack(4, "(1234)"), Rack::trivial(3)] {
            for w in [q(-1), q(1), frac(3, 7)] {
                let c = Cocycle::make(&r, &CocycleKind::Constant(w.clone())).unwrap();
                assert_eq!(c.is_constant(), Some(&w));
            }
        }
        assert!(Cocycle::make(&Rack::trivial(2), &CocycleKind::Constant(q(0))).is_err());
    }

    #[test]
    fn chi_on_o24() {
        let r = rack(4, "(12)");
        let c = Cocycle::make(&r, &CocycleKind::ChiTranspositions(4)).unwrap();
        let x12 = r.index_of("(12)").unwrap();
        let x34 = r.index_of("(34)").unwrap();
        assert_eq!(c.get(x12, x12), &q(-1));
        assert_eq!(c.get(x12, x34), &q(1));
        assert!(diagonal_is_minus_one(&c));
        assert!(c.is_constant().is_none());
    }

    #[test]
    fn chi_brute_force_law() {
        // independent restatement of the law over all 216 triples
        let r = rack(4, "(12)");
        let c = Cocycle::make(&r, &CocycleKind::ChiTranspositions(4)).unwrap();
        let mut checked = 0;
        for x in 0..6 {
            for y in 0..6 {
                for z in 0..6 {
                    assert_eq!(
                        c.get(x, r.op(y, z)) * c.get(y, z),
                        c.get(r.op(x, y), r.op(x, z)) * c.get(x, z)
                    );
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 216);
    }

    #[test]
    fn chi_requires_transposition_rack() {
        assert_eq!(
            Cocycle::make(&rack(4, "(1234)"), &CocycleKind::ChiTranspositions(4)).unwrap_err(),
            Error::WrongRackForChi
        );
        assert_eq!(
            Cocycle::make(&rack(4, "(12)"), &CocycleKind::ChiTranspositions(5)).unwrap_err(),
            Error::WrongRackForChi
        );
    }

    #[test]
    fn flipped_entry_breaks_the_law() {
        let r = rack(3, "(12)");
        let mut v = vec![vec![q(-1); 3]; 3];
        v[0][1] = q(1);
        assert!(matches!(Cocycle::validate(&r, v), Err(Error::CocycleLawFails(..))));
    }

    #[test]
    fn zero_entries_rejected() {
        let r = rack(3, "(12)");
        let mut v = vec![vec![q(-1); 3]; 3];
        v[2][1] = q(0);
        assert_eq!(Cocycle::validate(&r, v).unwrap_err(), Error::ZeroEntry(2, 1));
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let r = Rack::affine(5, 2).unwrap();
        let f: Vec<Q> = (1..=5).map(|i| frac(i, 2)).collect();
        Cocycle::coboundary(&r, &f).unwrap();
    }
}

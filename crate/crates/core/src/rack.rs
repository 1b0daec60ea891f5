//! Finite racks given by their operation table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup, DEFAULT_CLOSURE_BUDGET};

/// A finite rack on `{0..n-1}` with `table[x][y] = x ▷ y`.
///
/// Only constructible through validation, so every value satisfies the rack
/// axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rack {
    n: usize,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawRack {
    n: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    table: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for Rack {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rack, D::Error> {
        let raw = RawRack::deserialize(d)?;
        let labels = raw
            .labels
            .unwrap_or_else(|| (0..raw.n).map(|i| i.to_string()).collect());
        Rack::validate(raw.n, raw.table, labels).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RackProperties {
    pub faithful: bool,
    pub indecomposable: bool,
    pub quandle: bool,
}

impl Rack {
    /// Checks both rack axioms on `table` and builds the rack.
    pub fn validate(n: usize, table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Rack> {
        if n == 0 {
            return Err(Error::Invalid("a rack must be nonempty".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("table is not {n}x{n}")));
        }
        if labels.len() != n {
            return Err(Error::Invalid("label count differs from n".into()));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::Invalid("table entry out of range".into()));
        }
        for (x, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in row {
                if seen[v] {
                    return Err(Error::NotBijective(x));
                }
                seen[v] = true;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = table[x][table[y][z]];
                    let rhs = table[table[x][y]][table[x][z]];
                    if lhs != rhs {
                        return Err(Error::NotSelfDistributive(x, y, z));
                    }
                }
            }
        }
        Ok(Rack { n, labels, table })
    }

    /// The conjugacy class of `seed` in `group` with `x ▷ y = x y x⁻¹`.
    ///
    /// Elements are ordered by their cycle notation (cycles compared as
    /// sequences), so the transpositions of S₄ come out as
    /// (12), (13), (14), (23), (24), (34).
    pub fn conjugacy(group: &PermGroup, seed: &Perm) -> Result<(Rack, Vec<Perm>)> {
        let mut class: Vec<Perm> = group.conjugacy_class(seed)?.into_iter().collect();
        class.sort_by_key(|p| p.cycles());
        let rack = Rack::from_conjugation(&class)?;
        Ok((rack, class))
    }

    /// Rack structure on a conjugation-stable list of permutations, in the
    /// given order.
    pub fn from_conjugation(elements: &[Perm]) -> Result<Rack> {
        let index = |p: &Perm| elements.iter().position(|e| e == p);
        let mut table = Vec::with_capacity(elements.len());
        for x in elements {
            let row = elements
                .iter()
                .map(|y| index(&x.conjugate(y)).ok_or(Error::Invalid("set not closed under conjugation".into())))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let labels = elements.iter().map(|p| p.to_string()).collect();
        Rack::validate(elements.len(), table, labels)
    }

    /// `x ▷ y = y` for all x, y.
    pub fn trivial(n: usize) -> Rack {
        let table = vec![(0..n).collect(); n];
        Rack::validate(n, table, (0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    /// `x ▷ y = σ(y)`; a rack for any permutation σ.
    pub fn permutation(sigma: &Perm) -> Rack {
        let n = sigma.degree();
        let table = vec![sigma.images().to_vec(); n];
        Rack::validate(n, table, (0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    /// Alexander quandle on Z/n with `x ▷ y = (1 - a) x + a y`, `a` a unit mod n.
    pub fn affine(n: usize, a: usize) -> Result<Rack> {
        let table = (0..n)
            .map(|x| (0..n).map(|y| ((1 + n - a % n) * x + a * y) % n).collect())
            .collect();
        Rack::validate(n, table, (0..n).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `x ▷ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// The unique `z` with `x ▷ z = y`.
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.table[x].iter().position(|&v| v == y).unwrap()
    }

    /// The left translation `φ_x : y ↦ x ▷ y`.
    pub fn phi(&self, x: usize) -> Perm {
        Perm::from_images(self.table[x].clone()).unwrap()
    }

    pub fn is_quandle(&self) -> bool {
        (0..self.n).all(|x| self.op(x, x) == x)
    }

    pub fn is_faithful(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.table[x] != self.table[y]))
    }

    /// Transitivity of the inner group on X. For a finite rack this is the
    /// same as having no decomposition into two disjoint subracks.
    pub fn is_indecomposable(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for x in 0..self.n {
                let j = self.op(x, i);
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn properties(&self) -> RackProperties {
        RackProperties {
            faithful: self.is_faithful(),
            indecomposable: self.is_indecomposable(),
            quandle: self.is_quandle(),
        }
    }

    pub fn inner_group(&self) -> Result<PermGroup> {
        self.inner_group_with_budget(DEFAULT_CLOSURE_BUDGET)
    }

    /// The group generated by all `φ_x`, after checking
    /// `φ_x φ_y = φ_{x▷y} φ_x`.
    pub fn inner_group_with_budget(&self, budget: usize) -> Result<PermGroup> {
        let phis: Vec<Perm> = (0..self.n).map(|x| self.phi(x)).collect();
        if let Some((x, y)) = enveloping_violation(self, &phis) {
            return Err(Error::Invalid(format!(
                "inner translations violate the enveloping relation at ({x}, {y})"
            )));
        }
        let mut gens: Vec<Perm> = phis;
        gens.sort();
        gens.dedup();
        gens.retain(|g| !g.is_identity());
        PermGroup::generate(self.n, gens, budget)
    }

    /// The same rack with elements renamed by `sigma` (x becomes σ(x)).
    pub fn relabel(&self, sigma: &Perm) -> Rack {
        let inv = sigma.inverse();
        let table = (0..self.n)
            .map(|x| {
                (0..self.n)
                    .map(|y| sigma.apply(self.op(inv.apply(x), inv.apply(y))))
                    .collect()
            })
            .collect();
        let labels = (0..self.n).map(|x| self.labels[inv.apply(x)].clone()).collect();
        Rack { n: self.n, labels, table }
    }

    /// Whether `sigma` is a rack automorphism.
    pub fn is_automorphism(&self, sigma: &Perm) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| sigma.apply(self.op(x, y)) == self.op(sigma.apply(x), sigma.apply(y)))
        })
    }
}

/// Checks `f_x f_y = f_{x▷y} f_x` in a permutation group.
pub fn check_enveloping_map(rack: &Rack, target: &PermGroup, f: &[Perm]) -> Result<bool> {
    if f.len() != rack.len() {
        return Err(Error::Invalid("map must be total on X".into()));
    }
    if f.iter().any(|p| !target.contains(p)) {
        return Err(Error::Invalid("image outside the target group".into()));
    }
    Ok(enveloping_violation(rack, f).is_none())
}

fn enveloping_violation(rack: &Rack, f: &[Perm]) -> Option<(usize, usize)> {
    for x in 0..rack.len() {
        for y in 0..rack.len() {
            if f[x].compose(&f[y]) != f[rack.op(x, y)].compose(&f[x]) {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, c: &str) -> Perm {
        Perm::parse_cycles(n, c).unwrap()
    }

    #[test]
    fn one_element_rack() {
        let r = Rack::validate(1, vec![vec![0]], vec!["a".into()]).unwrap();
        assert!(r.is_quandle());
    }

    #[test]
    fn constant_row_is_rejected() {
        let e = Rack::validate(2, vec![vec![1, 1], vec![0, 0]], vec!["a".into(), "b".into()]);
        assert_eq!(e.unwrap_err(), Error::NotBijective(0));
    }

    #[test]
    fn non_distributive_table_is_rejected() {
        // rows are bijections but x ▷ (y ▷ z) differs
        let t = vec![vec![1, 0, 2], vec![0, 1, 2], vec![0, 1, 2]];
        let e = Rack::validate(3, t, vec!["a".into(), "b".into(), "c".into()]).unwrap_err();
        assert!(matches!(e, Error::NotSelfDistributive(..)));
    }

    #[test]
    fn transposition_racks() {
        let (o23, els) = Rack::conjugacy(&PermGroup::symmetric(3), &s(3, "(12)")).unwrap();
        assert_eq!(o23.len(), 3);
        assert_eq!(o23.labels(), ["(12)", "(13)", "(23)"]);
        assert_eq!(els[0], s(3, "(12)"));
        let x12 = o23.index_of("(12)").unwrap();
        let x13 = o23.index_of("(13)").unwrap();
        assert_eq!(o23.label(o23.op(x12, x13)), "(23)");

        let (o24, _) = Rack::conjugacy(&PermGroup::symmetric(4), &s(4, "(12)")).unwrap();
        assert_eq!(o24.labels(), ["(12)", "(13)", "(14)", "(23)", "(24)", "(34)"]);
        let (o44, _) = Rack::conjugacy(&PermGroup::symmetric(4), &s(4, "(1234)")).unwrap();
        assert_eq!(
            o44.labels(),
            ["(1234)", "(1243)", "(1324)", "(1342)", "(1423)", "(1432)"]
        );
    }

    #[test]
    fn seed_must_be_in_group() {
        let g = PermGroup::generate(4, vec![s(4, "(12)")], 10).unwrap();
        assert_eq!(
            Rack::conjugacy(&g, &s(4, "(123)")).unwrap_err(),
            Error::SeedNotInGroup
        );
    }

    #[test]
    fn properties_by_brute_force() {
        let s4 = PermGroup::symmetric(4);
        for seed in ["(12)", "(1234)"] {
            let (r, _) = Rack::conjugacy(&s4, &s(4, seed)).unwrap();
            // brute-force faithfulness: rows pairwise distinct
            let rows: std::collections::BTreeSet<_> = r.table().iter().collect();
            assert_eq!(rows.len(), 6);
            assert_eq!(
                r.properties(),
                RackProperties { faithful: true, indecomposable: true, quandle: true }
            );
        }
        let t = Rack::trivial(2);
        let p = t.properties();
        assert!(!p.faithful && !p.indecomposable && p.quandle);
    }

    #[test]
    fn inner_groups() {
        let (o23, _) = Rack::conjugacy(&PermGroup::symmetric(3), &s(3, "(12)")).unwrap();
        assert_eq!(o23.inner_group().unwrap().order(), 6);
        let (o24, _) = Rack::conjugacy(&PermGroup::symmetric(4), &s(4, "(12)")).unwrap();
        assert_eq!(o24.inner_group().unwrap().order(), 24);
        assert_eq!(Rack::trivial(3).inner_group().unwrap().order(), 1);
        assert!(matches!(
            o24.inner_group_with_budget(10),
            Err(Error::ClosureBudgetExceeded(10))
        ));
    }

    #[test]
    fn enveloping_maps() {
        let s4 = PermGroup::symmetric(4);
        let (o24, els) = Rack::conjugacy(&s4, &s(4, "(12)")).unwrap();
        assert!(check_enveloping_map(&o24, &s4, &els).unwrap());

        let inn = o24.inner_group().unwrap();
        let phis: Vec<Perm> = (0..6).map(|x| o24.phi(x)).collect();
        assert!(check_enveloping_map(&o24, &inn, &phis).unwrap());

        // a constant map always satisfies c·c = c·c
        let c = vec![els[0].clone(); 6];
        assert!(check_enveloping_map(&o24, &s4, &c).unwrap());
        // swapping the images of (12) and (13) breaks the relation
        let mut swapped = els.clone();
        swapped.swap(0, 1);
        assert!(!check_enveloping_map(&o24, &s4, &swapped).unwrap());
    }

    #[test]
    fn relabeling_by_an_automorphism_is_identity_on_the_table() {
        let (o24, els) = Rack::conjugacy(&PermGroup::symmetric(4), &s(4, "(12)")).unwrap();
        // conjugation by (123) permutes X
        let g = s(4, "(123)");
        let sigma = Perm::from_images(
            els.iter().map(|p| els.iter().position(|e| *e == g.conjugate(p)).unwrap()).collect(),
        )
        .unwrap();
        assert!(o24.is_automorphism(&sigma));
        assert_eq!(o24.relabel(&sigma).table(), o24.table());
    }

    #[test]
    fn json_round_trip_revalidates() {
        let (o23, _) = Rack::conjugacy(&PermGroup::symmetric(3), &s(3, "(12)")).unwrap();
        let js = serde_json::to_string(&o23).unwrap();
        assert!(js.starts_with("{\"n\":3,\"labels\":[\"(12)\""));
        let back: Rack = serde_json::from_str(&js).unwrap();
        assert_eq!(back, o23);
        let bad = r#"{"n":2,"labels":["a","b"],"table":[[1,1],[0,0]]}"#;
        assert!(serde_json::from_str::<Rack>(bad).is_err());
    }
}

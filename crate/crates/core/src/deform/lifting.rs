//! Generator sets of the pointed and copointed liftings, and the
//! isomorphism test on their parameters.

use num::{One, Zero};
use serde::Serialize;

use crate::braided::Flavor;
use crate::builtin::{setting, ClassRack};
use crate::error::{Error, Result};
use crate::freealg::{FreePoly, Word};
use crate::grouprealize::{FiniteGroup, GroupFunction, PrincipalRealization};
use crate::quadrel::{pointed_lambda_space, relation_poly, select_rprime, RelClass};
use crate::rational::{fmt_q, Q};

/// `b_C − λ_C (1 − g_C)`, kept as its parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedLiftingGenerator {
    pub class: RelClass,
    #[serde(skip)]
    pub poly: FreePoly,
    #[serde(with = "crate::rational")]
    pub lambda: Q,
    /// `g_C = g_{i₂} g_{i₁}`, a group index
    pub g_c: usize,
    pub g_c_label: String,
}

/// Pairs `(b_C, g_C)` for the lifting with parameters `λ` (one per R'
/// class). `λ` must lie in the pointed parameter space of the realization's
/// cocycle, and no `g_C` may equal some `g_x`.
pub fn pointed_lifting_generators(r: &PrincipalRealization, lambda: &[Q]) -> Result<Vec<PointedLiftingGenerator>> {
    let q = r.cocycle()?;
    let classes = select_rprime(&r.rack, &q);
    if lambda.len() != classes.len() {
        return Err(Error::IndexMismatch(format!("{} values for {} classes", lambda.len(), classes.len())));
    }
    if !pointed_lambda_space(&r.rack, &q).contains(lambda) {
        return Err(Error::Invalid("λ is not in the pointed parameter space".into()));
    }
    let n = r.len();
    let mut out = Vec::with_capacity(classes.len());
    for (c, (class, l)) in classes.into_iter().zip(lambda).enumerate() {
        let g_c = r.group.mul(r.g[class.i2()], r.g[class.i1()]);
        if let Some(x) = (0..n).find(|&x| r.g[x] == g_c) {
            return Err(Error::ConditionViolated { class: c, x });
        }
        out.push(PointedLiftingGenerator {
            poly: relation_poly(&class, n, Flavor::V)?,
            class,
            lambda: l.clone(),
            g_c,
            g_c_label: r.group.element(g_c).to_string(),
        });
    }
    Ok(out)
}

/// The three copointed families over S₄.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub enum CopointedFamily {
    /// transpositions, `q ≡ −1`
    TranspMinus,
    /// transpositions, the cocycle χ
    TranspChi,
    /// 4-cycles, `q ≡ −1`
    FourCycles,
}

impl CopointedFamily {
    fn setting(self) -> Result<(ClassRack, crate::cocycle::Cocycle)> {
        match self {
            CopointedFamily::TranspMinus => setting("o24", "const:-1"),
            CopointedFamily::TranspChi => setting("o24", "chi"),
            CopointedFamily::FourCycles => setting("o44", "const:-1"),
        }
    }
}

/// `λ_x` per rack element, with `Σ λ_x = 0`, and for 4-cycles
/// `λ_{σ⁻¹} = λ_σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CopointedLambda {
    pub family: CopointedFamily,
    #[serde(with = "crate::rational::vec")]
    pub lambda: Vec<Q>,
}

impl CopointedLambda {
    pub fn validate(&self) -> Result<()> {
        let (r, _) = self.family.setting()?;
        if self.lambda.len() != r.rack.len() {
            return Err(Error::IndexMismatch(format!("{} values for {} elements", self.lambda.len(), r.rack.len())));
        }
        let sum: Q = self.lambda.iter().sum();
        if !sum.is_zero() {
            return Err(Error::NormalizationViolated(format!("Σλ = {}", fmt_q(&sum))));
        }
        if self.family == CopointedFamily::FourCycles {
            for (s, p) in r.perms.iter().enumerate() {
                let inv = inverse_index(&r, p);
                if self.lambda[s] != self.lambda[inv] {
                    return Err(Error::NormalizationViolated(format!(
                        "λ differs on {} and its inverse",
                        r.rack.label(s)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn inverse_index(r: &ClassRack, p: &crate::perm::Perm) -> usize {
    let inv = p.inverse();
    r.perms.iter().position(|x| *x == inv).expect("class is inverse-closed")
}

/// A deformed relation `poly − f`, with `f` in the function algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformedRelation {
    /// the rack element the relation belongs to
    pub element: usize,
    #[serde(skip)]
    pub poly: FreePoly,
    pub poly_text: String,
    pub f: GroupFunction,
}

/// The fixed quadratic relations plus one deformed relation per element,
/// over the generators `w_x` and the δ-basis of functions on S₄.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopointedGenerators {
    pub alphabet: Vec<String>,
    /// group elements indexing the δ-basis
    pub group: Vec<String>,
    #[serde(skip)]
    pub fixed: Vec<FreePoly>,
    pub fixed_text: Vec<String>,
    pub deformed: Vec<DeformedRelation>,
}

/// Generators `w_x² − f_x` (transpositions) or
/// `w_y w_{y⁻¹} + w_{y⁻¹} w_y − f_y` (4-cycles), with
/// `f_x(g) = λ_x − λ_{g⁻¹xg}`, together with the remaining Nichols
/// relations of `W`.
pub fn copointed_lifting_generators(lambda: &CopointedLambda) -> Result<CopointedGenerators> {
    lambda.validate()?;
    let (r, q) = lambda.family.setting()?;
    let n = r.rack.len();
    let group = FiniteGroup::symmetric(4);
    let f = |x: usize| {
        GroupFunction(
            group
                .elements()
                .iter()
                .map(|g| {
                    let moved = g.inverse().compose(&r.perms[x]).compose(g);
                    let y = r.perms.iter().position(|p| *p == moved).expect("class is conjugation-closed");
                    &lambda.lambda[x] - &lambda.lambda[y]
                })
                .collect(),
        )
    };
    let alphabet = r.rack.labels().to_vec();
    let deformed_lhs = |x: usize| -> FreePoly {
        match lambda.family {
            CopointedFamily::FourCycles => {
                let y = inverse_index(&r, &r.perms[x]);
                FreePoly::from_terms(n, [(Word::from_indices(&[x, y]), Q::one()), (Word::from_indices(&[y, x]), Q::one())])
            }
            _ => FreePoly::monomial(n, Word::from_indices(&[x, x]), Q::one()),
        }
    };
    let is_deformed = |c: &RelClass| match lambda.family {
        CopointedFamily::FourCycles => c.size() == 2 && inverse_index(&r, &r.perms[c.seq[0]]) == c.seq[1],
        _ => c.size() == 1,
    };
    let fixed: Vec<FreePoly> = select_rprime(&r.rack, &q)
        .iter()
        .filter(|c| !is_deformed(c))
        .map(|c| relation_poly(c, n, Flavor::W))
        .collect::<Result<_>>()?;
    let deformed = (0..n)
        .map(|x| {
            let poly = deformed_lhs(x);
            DeformedRelation { element: x, poly_text: poly.display(&alphabet), poly, f: f(x) }
        })
        .collect();
    Ok(CopointedGenerators {
        group: group.elements().iter().map(|g| g.to_string()).collect(),
        fixed_text: fixed.iter().map(|p| p.display(&alphabet)).collect(),
        fixed,
        deformed,
        alphabet,
    })
}

/// The automorphisms `g ↦ hgh⁻¹` of a group, as index maps.
pub fn inner_automorphisms(group: &FiniteGroup) -> Vec<Vec<usize>> {
    (0..group.order())
        .map(|h| (0..group.order()).map(|g| group.conj(h, g)).collect())
        .collect()
}

/// Which parameter family `iso_class_equal` compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoFamily {
    /// projective equality of λ vectors
    Pointed,
    /// orbits of `(μ, θ)`, `θ` inner
    Copointed(CopointedFamily),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoResult {
    pub equal: bool,
    #[serde(with = "crate::rational::option")]
    pub mu: Option<Q>,
    /// conjugating element for θ, copointed only
    pub theta: Option<String>,
}

fn scale_to(from: &[Q], to: &[Q]) -> Option<Q> {
    let Some(k) = from.iter().position(|c| !c.is_zero()) else {
        return to.iter().all(Q::is_zero).then(|| Q::one());
    };
    let mu = &to[k] / &from[k];
    (!mu.is_zero() && from.iter().zip(to).all(|(a, b)| &mu * a == *b)).then_some(mu)
}

/// Copointed: whether `λ′ = μ (λ_{θ(x)})_x` for some nonzero `μ` and inner
/// `θ` (all automorphisms of S₄ are inner). Pointed: whether `λ` and `λ′`
/// are both zero or proportional.
pub fn iso_class_equal(lambda: &[Q], other: &[Q], family: IsoFamily) -> Result<IsoResult> {
    if lambda.len() != other.len() {
        return Err(Error::IndexMismatch("λ vectors of different length".into()));
    }
    match family {
        IsoFamily::Pointed => {
            let mu = scale_to(lambda, other);
            Ok(IsoResult { equal: mu.is_some(), mu, theta: None })
        }
        IsoFamily::Copointed(f) => {
            let (r, _) = f.setting()?;
            if lambda.len() != r.rack.len() {
                return Err(Error::IndexMismatch(format!("{} values for {} elements", lambda.len(), r.rack.len())));
            }
            let group = FiniteGroup::symmetric(4);
            for h in group.elements() {
                let moved: Vec<Q> = (0..r.rack.len())
                    .map(|x| {
                        let y = h.compose(&r.perms[x]).compose(&h.inverse());
                        lambda[r.perms.iter().position(|p| *p == y).expect("conjugation-closed")].clone()
                    })
                    .collect();
                if let Some(mu) = scale_to(&moved, other) {
                    return Ok(IsoResult { equal: true, mu: Some(mu), theta: Some(h.to_string()) });
                }
            }
            Ok(IsoResult { equal: false, mu: None, theta: None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::groebner_default;
    use crate::quadrel::quadratic_relations;
    use crate::rational::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn pointed_condition_holds_for_s4() {
        for (rk, ch) in [("o24", "sgn"), ("o24", "ms-chi"), ("o44", "sgn")] {
            let r = PrincipalRealization::builtin(rk, ch).unwrap();
            let qc = r.cocycle().unwrap();
            let space = pointed_lambda_space(&r.rack, &qc);
            let values: Vec<Q> = (1..=space.free_dim() as i64).map(q).collect();
            let lambda = space.instantiate(&values);
            let gens = pointed_lifting_generators(&r, &lambda).unwrap();
            for g in &gens {
                let p = r.group.element(g.g_c);
                // never a transposition (resp. 4-cycle): orders 1, 2 (double), 3
                assert!(!r.g.iter().any(|&x| x == g.g_c));
                if rk == "o24" {
                    assert!(p.is_identity() || p.order() == 3 || (p.order() == 2 && p.sign() == 1), "{p}");
                }
            }
        }
    }

    #[test]
    fn pointed_zero_lambda_is_nichols() {
        let r = PrincipalRealization::builtin("o24", "sgn").unwrap();
        let qc = r.cocycle().unwrap();
        let gens = pointed_lifting_generators(&r, &vec![Q::zero(); 17]).unwrap();
        let polys: Vec<FreePoly> = gens.iter().map(|g| g.poly.clone()).collect();
        assert_eq!(polys, quadratic_relations(&r.rack, &qc, Flavor::V));
        assert!(gens.iter().all(|g| g.lambda.is_zero()));
    }

    #[test]
    fn pointed_condition_violation() {
        // trivial rack with g ≡ e: every g_C is e = g_x
        let group = FiniteGroup::symmetric(2);
        let rack = crate::rack::Rack::trivial(2);
        let e = group.identity();
        let r = PrincipalRealization::new(group, rack, vec![vec![0, 1]; 2], vec![e, e], vec![vec![q(-1); 2]; 2]).unwrap();
        let qc = r.cocycle().unwrap();
        let n = select_rprime(&r.rack, &qc).len();
        let err = pointed_lifting_generators(&r, &vec![Q::zero(); n]).unwrap_err();
        assert!(matches!(err, Error::ConditionViolated { .. }));
    }

    #[test]
    fn copointed_functions() {
        let l = CopointedLambda { family: CopointedFamily::TranspMinus, lambda: v(&[1, -1, 0, 0, 0, 0]) };
        let gens = copointed_lifting_generators(&l).unwrap();
        let f = &gens.deformed[0].f;
        let vals: std::collections::BTreeSet<Q> = f.0.iter().cloned().collect();
        assert!(vals.iter().all(|x| *x == q(0) || *x == q(1) || *x == q(2)));
        assert_eq!(vals.len(), 3);
        let id = FiniteGroup::symmetric(4).identity();
        assert!(gens.deformed.iter().all(|d| d.f.at(id).is_zero()));
        assert_eq!(gens.fixed.len() + gens.deformed.len(), 17);
        assert_eq!(gens.deformed[0].poly_text, "(12)*(12)");

        let zero = CopointedLambda { family: CopointedFamily::TranspChi, lambda: vec![Q::zero(); 6] };
        let g0 = copointed_lifting_generators(&zero).unwrap();
        assert!(g0.deformed.iter().all(|d| d.f.0.iter().all(Q::is_zero)));
        let (r, qc) = setting("o24", "chi").unwrap();
        let mut all = g0.fixed.clone();
        all.extend(g0.deformed.iter().map(|d| d.poly.clone()));
        let a = groebner_default(6, &all).unwrap();
        let b = groebner_default(6, &quadratic_relations(&r.rack, &qc, Flavor::W)).unwrap();
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn four_cycle_functions_are_inverse_symmetric() {
        let (r, _) = setting("o44", "const:-1").unwrap();
        let mut lambda = vec![Q::zero(); 6];
        let s = 0;
        let si = inverse_index(&r, &r.perms[s]);
        let other = (0..6).find(|&t| t != s && t != si).unwrap();
        let oi = inverse_index(&r, &r.perms[other]);
        lambda[s] = q(2);
        lambda[si] = q(2);
        lambda[other] = q(-2);
        lambda[oi] = q(-2);
        let l = CopointedLambda { family: CopointedFamily::FourCycles, lambda: lambda.clone() };
        let gens = copointed_lifting_generators(&l).unwrap();
        assert_eq!(gens.deformed[s].f, gens.deformed[si].f);
        assert_eq!(gens.deformed[s].poly, gens.deformed[si].poly);
        lambda[oi] = q(-1);
        lambda[si] = q(1);
        let bad = CopointedLambda { family: CopointedFamily::FourCycles, lambda };
        assert!(matches!(copointed_lifting_generators(&bad), Err(Error::NormalizationViolated(_))));
        let bad = CopointedLambda { family: CopointedFamily::TranspMinus, lambda: v(&[1, 0, 0, 0, 0, 0]) };
        assert!(matches!(copointed_lifting_generators(&bad), Err(Error::NormalizationViolated(_))));
    }

    #[test]
    fn inner_automorphisms_of_s4() {
        let g = FiniteGroup::symmetric(4);
        let mut autos = inner_automorphisms(&g);
        assert_eq!(autos.len(), 24);
        autos.sort();
        autos.dedup();
        assert_eq!(autos.len(), 24);
    }

    #[test]
    fn iso_examples() {
        let fam = IsoFamily::Copointed(CopointedFamily::TranspMinus);
        let l = v(&[1, -1, 0, 0, 0, 0]);
        let r = iso_class_equal(&l, &v(&[2, -2, 0, 0, 0, 0]), fam).unwrap();
        assert!(r.equal);
        assert_eq!(r.mu, Some(q(2)));
        assert_eq!(r.theta.as_deref(), Some("()"));
        // conjugation by (12) swaps (13) and (23), (14) and (24)
        let (rk, _) = setting("o24", "const:-1").unwrap();
        let h = crate::perm::Perm::parse_cycles(4, "(12)").unwrap();
        let relabel: Vec<Q> = (0..6)
            .map(|x| {
                let y = h.compose(&rk.perms[x]).compose(&h.inverse());
                l[rk.perms.iter().position(|p| *p == y).unwrap()].clone()
            })
            .collect();
        assert!(iso_class_equal(&l, &relabel, fam).unwrap().equal);
        assert!(!iso_class_equal(&l, &v(&[1, 1, -1, -1, 0, 0]), fam).unwrap().equal);
        assert!(iso_class_equal(&v(&[1, 2, 3]), &v(&[-2, -4, -6]), IsoFamily::Pointed).unwrap().equal);
        assert!(!iso_class_equal(&v(&[1, 2, 3]), &v(&[0, 0, 0]), IsoFamily::Pointed).unwrap().equal);
        assert!(iso_class_equal(&v(&[0, 0]), &v(&[0, 0]), IsoFamily::Pointed).unwrap().equal);
    }
}

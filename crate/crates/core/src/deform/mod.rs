//! Deformed relation ideals and their verification.
//!
//! Parameters are exact rationals throughout. Parametric families are
//! studied by specializing at seeded random rational points, never
//! symbolically.

mod appendix;
mod lifting;

pub use appendix::{appendix_membership_audit, corrected_element, AppendixEntry, AppendixReport, CORRECTIONS, PRINTED_BASIS};
pub use lifting::{
    copointed_lifting_generators, inner_automorphisms, iso_class_equal, pointed_lifting_generators,
    CopointedFamily, CopointedGenerators, CopointedLambda, DeformedRelation, IsoFamily, IsoResult,
    PointedLiftingGenerator,
};

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braided::Flavor;
use crate::builtin::{cocycle_by_name, rack_by_name, ClassRack, MAX_TRANSPOSITION_DEGREE};
use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::freealg::{groebner, FreePoly, GroebnerConfig, QuotientDim, Word};
use crate::quadrel::{copointed_lambda_space, pointed_lambda_space, quadratic_relations, relation_poly, select_rprime};
use crate::rational::{frac, Q};

/// Parameters of a deformed ideal. JSON: `{"family": ..., "params": {...}}`
/// with fraction strings; `alpha` is indexed by the transpositions in rack
/// order, `beta` by the 4-cycles of S₄ in rack order, `lambda` by the R'
/// classes in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params")]
pub enum DeformParams {
    Eminus {
        n: usize,
        #[serde(with = "crate::rational::vec")]
        alpha: Vec<Q>,
        #[serde(with = "crate::rational")]
        mu1: Q,
        #[serde(with = "crate::rational")]
        mu2: Q,
    },
    Echi {
        n: usize,
        #[serde(with = "crate::rational::vec")]
        alpha: Vec<Q>,
        #[serde(with = "crate::rational")]
        mu: Q,
    },
    /// The χ family with the middle sign of both triple relations flipped to
    /// `+`. At zero parameters these are the χ Nichols relations, which the
    /// literal reading is not once n ≥ 4.
    EchiNichols {
        n: usize,
        #[serde(with = "crate::rational::vec")]
        alpha: Vec<Q>,
        #[serde(with = "crate::rational")]
        mu: Q,
    },
    Etilde {
        #[serde(with = "crate::rational::vec")]
        beta: Vec<Q>,
        #[serde(with = "crate::rational")]
        mu1: Q,
        #[serde(with = "crate::rational")]
        mu2: Q,
    },
    GenericLambda {
        rack: String,
        cocycle: String,
        #[serde(default = "default_flavor")]
        flavor: Flavor,
        #[serde(with = "crate::rational::vec")]
        lambda: Vec<Q>,
    },
}

fn default_flavor() -> Flavor {
    Flavor::V
}

/// The three sampled families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Eminus,
    Echi,
    EchiNichols,
    Etilde,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "Eminus" => Ok(Family::Eminus),
            "Echi" => Ok(Family::Echi),
            "EchiNichols" => Ok(Family::EchiNichols),
            "Etilde" => Ok(Family::Etilde),
            _ => Err(Error::Invalid(format!("unknown family {s:?}; expected Eminus, Echi, EchiNichols or Etilde"))),
        }
    }
}

fn transposition_rack(n: usize) -> Result<ClassRack> {
    if !(3..=MAX_TRANSPOSITION_DEGREE).contains(&n) {
        return Err(Error::IndexMismatch(format!("n = {n} outside 3..={MAX_TRANSPOSITION_DEGREE}")));
    }
    rack_by_name(&format!("o2{n}"))
}

/// Rack index of the transposition `(i j)`, 1-based points.
fn transposition(r: &ClassRack, i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    r.rack.index_of(&format!("({a}{b})")).expect("transposition is in the rack")
}

fn check_len(what: &str, v: &[Q], want: usize) -> Result<()> {
    if v.len() != want {
        return Err(Error::IndexMismatch(format!("{what} has {} entries, expected {want}", v.len())));
    }
    Ok(())
}

fn word(ls: &[usize]) -> Word {
    Word::from_indices(ls)
}

fn poly(nvars: usize, terms: &[(&[usize], i64)], constant: &Q) -> FreePoly {
    let mut t: Vec<(Word, Q)> = terms.iter().map(|(w, c)| (word(w), Q::from_integer((*c).into()))).collect();
    t.push((Word::empty(), -constant.clone()));
    FreePoly::from_terms(nvars, t)
}

fn push_new(out: &mut Vec<FreePoly>, p: FreePoly) {
    if !p.is_zero() && !out.contains(&p) {
        out.push(p);
    }
}

impl DeformParams {
    pub fn family_name(&self) -> &'static str {
        match self {
            DeformParams::Eminus { .. } => "Eminus",
            DeformParams::Echi { .. } => "Echi",
            DeformParams::EchiNichols { .. } => "EchiNichols",
            DeformParams::Etilde { .. } => "Etilde",
            DeformParams::GenericLambda { .. } => "GenericLambda",
        }
    }

    /// The undeformed setting: rack, cocycle name, and the flavor whose
    /// quadratic relations the zero-parameter ideal reproduces.
    pub fn setting(&self) -> Result<(ClassRack, Cocycle, Flavor)> {
        let (rack, cocycle, flavor) = match self {
            DeformParams::Eminus { n, .. } => (transposition_rack(*n)?, "const:-1".to_string(), Flavor::V),
            DeformParams::Echi { n, .. } | DeformParams::EchiNichols { n, .. } => {
                (transposition_rack(*n)?, "chi".to_string(), Flavor::W)
            }
            DeformParams::Etilde { .. } => (rack_by_name("o44")?, "const:-1".to_string(), Flavor::V),
            DeformParams::GenericLambda { rack, cocycle, flavor, .. } => (rack_by_name(rack)?, cocycle.clone(), *flavor),
        };
        let q = cocycle_by_name(&rack, &cocycle)?;
        Ok((rack, q, flavor))
    }

    /// Generator names, the rack labels.
    pub fn alphabet(&self) -> Result<Vec<String>> {
        Ok(self.setting()?.0.rack.labels().to_vec())
    }

    /// The same family with every parameter set to zero.
    pub fn zeroed(&self) -> DeformParams {
        let z = |v: &[Q]| vec![Q::zero(); v.len()];
        match self {
            DeformParams::Eminus { n, alpha, .. } => {
                DeformParams::Eminus { n: *n, alpha: z(alpha), mu1: Q::zero(), mu2: Q::zero() }
            }
            DeformParams::Echi { n, alpha, .. } => DeformParams::Echi { n: *n, alpha: z(alpha), mu: Q::zero() },
            DeformParams::EchiNichols { n, alpha, .. } => {
                DeformParams::EchiNichols { n: *n, alpha: z(alpha), mu: Q::zero() }
            }
            DeformParams::Etilde { beta, .. } => DeformParams::Etilde { beta: z(beta), mu1: Q::zero(), mu2: Q::zero() },
            DeformParams::GenericLambda { rack, cocycle, flavor, lambda } => DeformParams::GenericLambda {
                rack: rack.clone(),
                cocycle: cocycle.clone(),
                flavor: *flavor,
                lambda: z(lambda),
            },
        }
    }
}

/// Generators of the deformed ideal, over the rack labels as alphabet.
pub fn build_deformed_ideal(params: &DeformParams) -> Result<Vec<FreePoly>> {
    let (r, q, _) = params.setting()?;
    let nv = r.rack.len();
    let mut out = Vec::new();
    match params {
        DeformParams::Eminus { n, alpha, mu1, mu2 } => {
            check_len("alpha", alpha, nv)?;
            let n = *n;
            for (t, a) in alpha.iter().enumerate() {
                push_new(&mut out, poly(nv, &[(&[t, t], 1)], a));
            }
            for t in 0..nv {
                for u in t + 1..nv {
                    if disjoint(&r, t, u) {
                        push_new(&mut out, poly(nv, &[(&[t, u], 1), (&[u, t], 1)], mu1));
                    }
                }
            }
            for (i, j, k) in ordered_triples(n) {
                let (ij, ik, jk) = (transposition(&r, i, j), transposition(&r, i, k), transposition(&r, j, k));
                push_new(&mut out, poly(nv, &[(&[ij, ik], 1), (&[ik, jk], 1), (&[jk, ij], 1)], mu2));
            }
        }
        DeformParams::Echi { n, alpha, mu } | DeformParams::EchiNichols { n, alpha, mu } => {
            let middle = if matches!(params, DeformParams::Echi { .. }) { -1 } else { 1 };
            check_len("alpha", alpha, nv)?;
            for (t, a) in alpha.iter().enumerate() {
                push_new(&mut out, poly(nv, &[(&[t, t], 1)], a));
            }
            for t in 0..nv {
                for u in t + 1..nv {
                    if disjoint(&r, t, u) {
                        push_new(&mut out, poly(nv, &[(&[t, u], 1), (&[u, t], -1)], &Q::zero()));
                    }
                }
            }
            for (i, j, k) in ordered_triples(*n).filter(|&(i, j, k)| i < j && j < k) {
                let (ij, ik, jk) = (transposition(&r, i, j), transposition(&r, i, k), transposition(&r, j, k));
                push_new(&mut out, poly(nv, &[(&[ij, ik], 1), (&[ik, jk], middle), (&[jk, ij], -1)], mu));
                push_new(&mut out, poly(nv, &[(&[ik, ij], 1), (&[jk, ik], middle), (&[ij, jk], -1)], mu));
            }
        }
        DeformParams::Etilde { beta, mu1, mu2 } => {
            check_len("beta", beta, nv)?;
            let inv: Vec<usize> = (0..nv)
                .map(|s| r.perms.iter().position(|p| *p == r.perms[s].inverse()).expect("class is inverse-closed"))
                .collect();
            for s in 0..nv {
                push_new(&mut out, poly(nv, &[(&[s, s], 1)], mu1));
            }
            // σ and σ⁻¹ give the same left-hand side; both are kept so
            // that β_σ ≠ β_{σ⁻¹} puts a nonzero constant in the ideal
            for s in 0..nv {
                push_new(&mut out, poly(nv, &[(&[s, inv[s]], 1), (&[inv[s], s], 1)], &beta[s]));
            }
            for s in 0..nv {
                for t in 0..nv {
                    if t == s || t == inv[s] {
                        continue;
                    }
                    let nu = r.rack.op(s, t);
                    push_new(&mut out, poly(nv, &[(&[s, t], 1), (&[nu, s], 1), (&[t, nu], 1)], mu2));
                }
            }
        }
        DeformParams::GenericLambda { flavor, lambda, .. } => {
            let classes = select_rprime(&r.rack, &q);
            check_len("lambda", lambda, classes.len())?;
            for (c, l) in classes.iter().zip(lambda) {
                let b = relation_poly(c, nv, *flavor)?;
                out.push(&b - &FreePoly::constant(nv, l.clone()));
            }
        }
    }
    Ok(out)
}

fn disjoint(r: &ClassRack, t: usize, u: usize) -> bool {
    let (a, b) = (&r.perms[t], &r.perms[u]);
    (0..a.degree()).all(|i| a.apply(i) == i || b.apply(i) == i)
}

/// Ordered triples of distinct points in `1..=n`.
fn ordered_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..=n).flat_map(move |i| {
        (1..=n).flat_map(move |j| (1..=n).filter(move |&k| i != j && j != k && i != k).map(move |k| (i, j, k)))
    })
}

/// Reads a generator set as `{b_C − λ_C}`: each generator must be a scalar
/// multiple of some `b_C` (flavor `V`) or `b̃_C` (flavor `W`) of an R'
/// class plus a constant, and every class must be hit consistently.
/// Returns `λ` in class order, or `None` if the generators have another
/// shape.
pub fn match_lambda(params: &DeformParams, flavor: Flavor) -> Result<Option<Vec<Q>>> {
    match_generators(params, &build_deformed_ideal(params)?, flavor)
}

fn match_generators(params: &DeformParams, gens: &[FreePoly], flavor: Flavor) -> Result<Option<Vec<Q>>> {
    let (r, q, _) = params.setting()?;
    let nv = r.rack.len();
    let classes = select_rprime(&r.rack, &q);
    let rels = classes
        .iter()
        .map(|c| relation_poly(c, nv, flavor))
        .collect::<Result<Vec<_>>>()?;
    let mut lambda: Vec<Option<Q>> = vec![None; classes.len()];
    for g in gens {
        let mut quad = Vec::new();
        let mut constant = Q::zero();
        for (w, c) in g.terms() {
            match w.len() {
                0 => constant = c.clone(),
                2 => quad.push((w.clone(), c.clone())),
                _ => return Ok(None),
            }
        }
        let p = FreePoly::from_terms(nv, quad);
        let Some((c, s)) = rels.iter().enumerate().find_map(|(c, b)| proportional(b, &p).map(|s| (c, s))) else {
            return Ok(None);
        };
        // b_C = s p = −s · constant
        let value = -(s * constant);
        match &lambda[c] {
            Some(v) if *v != value => return Ok(None),
            _ => lambda[c] = Some(value),
        }
    }
    Ok(lambda.into_iter().collect())
}

/// `s` with `b = s p`, if any.
fn proportional(b: &FreePoly, p: &FreePoly) -> Option<Q> {
    if b.terms().len() != p.terms().len() || p.is_zero() {
        return None;
    }
    let (w0, c0) = &p.terms()[0];
    let (v0, d0) = &b.terms()[0];
    if w0 != v0 {
        return None;
    }
    let s = d0 / c0;
    let same = b.terms().iter().zip(p.terms()).all(|((v, d), (w, c))| v == w && *d == &s * c);
    same.then_some(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    /// λ read through `b_C` lies in the pointed parameter space
    pub pointed: bool,
    /// λ read through `b̃_C` lies in the copointed parameter space
    pub copointed: bool,
}

impl Admissibility {
    pub fn any(&self) -> bool {
        self.pointed || self.copointed
    }
}

pub fn admissibility(params: &DeformParams) -> Result<Admissibility> {
    // The printed χ relations are not b̃_C − λ_C for our χ (see
    // `echi_zero_parameters_are_not_nichols`), so matching cannot work. The
    // copointed constraint for χ keeps only the squares: μ = 0, α free.
    if let DeformParams::Echi { mu, .. } = params {
        return Ok(Admissibility { pointed: false, copointed: mu.is_zero() });
    }
    let (r, q, _) = params.setting()?;
    let pointed = match match_lambda(params, Flavor::V)? {
        Some(l) => pointed_lambda_space(&r.rack, &q).contains(&l),
        None => false,
    };
    // Reversing every word passes to the opposite algebra, which has the
    // same dimension; the 4-cycle family is written in that orientation.
    let space = copointed_lambda_space(&r.rack, &q);
    let gens = build_deformed_ideal(params)?;
    let copointed = match_generators(params, &gens, Flavor::W)?.is_some_and(|l| space.contains(&l))
        || match_generators(params, &gens.iter().map(reversed).collect::<Vec<_>>(), Flavor::W)?
            .is_some_and(|l| space.contains(&l));
    Ok(Admissibility { pointed, copointed })
}

fn reversed(p: &FreePoly) -> FreePoly {
    FreePoly::from_terms(
        p.nvars(),
        p.terms().iter().map(|(w, c)| {
            let mut l: Vec<usize> = w.letters().iter().map(|&x| x as usize).collect();
            l.reverse();
            (Word::from_indices(&l), c.clone())
        }),
    )
}

/// Numerators in `-5..=5`, denominators in `1..=3`.
fn small_q(rng: &mut ChaCha8Rng) -> Q {
    frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// How a sample was drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    /// every parameter independent
    Generic,
    /// shaped like the pointed parameter space
    PointedShape,
    /// shaped like the copointed parameter space
    CopointedShape,
    /// supplied by the caller
    User,
}

/// Sample `index` of `family`; depends only on `(seed, index)`. Every third
/// sample is generic, pointed-shaped or copointed-shaped in turn. For the
/// 4-cycle family `β` is drawn per inverse pair, since `β_σ ≠ β_{σ⁻¹}`
/// forces the quotient to vanish.
pub fn sample_params(family: Family, n: usize, seed: u64, index: u64) -> Result<(SampleKind, DeformParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let kind = [SampleKind::Generic, SampleKind::PointedShape, SampleKind::CopointedShape][(index % 3) as usize];
    let rng = &mut rng;
    let params = match family {
        Family::Eminus | Family::Echi | Family::EchiNichols => {
            let m = transposition_rack(n)?.rack.len();
            let alpha: Vec<Q> = match kind {
                SampleKind::PointedShape => vec![small_q(rng); m],
                _ => (0..m).map(|_| small_q(rng)).collect(),
            };
            let mut mu = || if kind == SampleKind::CopointedShape { Q::zero() } else { small_q(rng) };
            match family {
                Family::Eminus => {
                    let (mu1, mu2) = (mu(), mu());
                    DeformParams::Eminus { n, alpha, mu1, mu2 }
                }
                Family::Echi => DeformParams::Echi { n, alpha, mu: mu() },
                _ => DeformParams::EchiNichols { n, alpha, mu: mu() },
            }
        }
        Family::Etilde => {
            let r = rack_by_name("o44")?;
            let mut beta = vec![Q::zero(); r.rack.len()];
            let constant = small_q(rng);
            for s in 0..r.rack.len() {
                let inv = r.perms.iter().position(|p| *p == r.perms[s].inverse()).expect("inverse-closed");
                if inv < s {
                    beta[s] = beta[inv].clone();
                } else {
                    beta[s] = if kind == SampleKind::PointedShape { constant.clone() } else { small_q(rng) };
                }
            }
            let (mu1, mu2) = match kind {
                SampleKind::CopointedShape => (Q::zero(), Q::zero()),
                _ => (small_q(rng), small_q(rng)),
            };
            DeformParams::Etilde { beta, mu1, mu2 }
        }
    };
    Ok((kind, params))
}

/// Zero parameters for a family.
pub fn zero_params(family: Family, n: usize) -> Result<DeformParams> {
    Ok(sample_params(family, n, 0, 0)?.1.zeroed())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub index: usize,
    pub kind: SampleKind,
    pub params: DeformParams,
    pub nonzero: bool,
    pub quotient_dim: QuotientDim,
    pub basis_size: usize,
    pub admissible: Admissibility,
    /// Present for admissible parameters: whether the dimension equals the
    /// zero-parameter one.
    pub flat: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub family: String,
    pub seed: u64,
    pub zero_dim: QuotientDim,
    pub samples: Vec<SampleReport>,
    pub all_nonzero: bool,
    pub all_flat: bool,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.all_nonzero && self.all_flat
    }
}

fn dim_of(params: &DeformParams, config: GroebnerConfig) -> Result<(QuotientDim, usize, bool)> {
    let gens = build_deformed_ideal(params)?;
    let nv = params.alphabet()?.len();
    let gb = groebner(nv, &gens, config)?;
    Ok((gb.quotient_dim(), gb.basis().len(), gb.is_trivial_quotient()))
}

/// Runs the Gröbner engine on `samples` seeded random parameter vectors of
/// `family` plus the `pinned` ones, in parallel. Each quotient must be
/// nonzero; for admissible parameters its dimension is compared with the
/// zero-parameter dimension. A zero quotient aborts with
/// [`Error::NonzeroCheckFailed`].
pub fn verify_nonzero(
    family: Family,
    n: usize,
    samples: usize,
    seed: u64,
    pinned: &[DeformParams],
    config: GroebnerConfig,
) -> Result<VerifyReport> {
    if samples == 0 && pinned.is_empty() {
        return Err(Error::Invalid("at least one sample is required".into()));
    }
    let zero = zero_params(family, n)?;
    let (zero_dim, _, _) = dim_of(&zero, config)?;
    let mut jobs: Vec<(SampleKind, DeformParams)> = pinned.iter().map(|p| (SampleKind::User, p.clone())).collect();
    for i in 0..samples {
        jobs.push(sample_params(family, n, seed, i as u64)?);
    }
    let results: Vec<Result<SampleReport>> = jobs
        .into_par_iter()
        .enumerate()
        .map(|(index, (kind, params))| {
            let (quotient_dim, basis_size, trivial) = dim_of(&params, config)?;
            if trivial {
                return Err(Error::NonzeroCheckFailed(serde_json::to_string(&params).unwrap_or_default()));
            }
            let admissible = admissibility(&params)?;
            let flat = admissible.any().then(|| quotient_dim == zero_dim);
            Ok(SampleReport { index, kind, params, nonzero: true, quotient_dim, basis_size, admissible, flat })
        })
        .collect();
    let samples = results.into_iter().collect::<Result<Vec<_>>>()?;
    let all_flat = samples.iter().all(|s| s.flat != Some(false));
    Ok(VerifyReport {
        family: zero.family_name().to_string(),
        seed,
        zero_dim,
        all_nonzero: samples.iter().all(|s| s.nonzero),
        all_flat,
        samples,
    })
}

/// Whether two generator sets generate the same two-sided ideal: each
/// reduces to zero modulo a Gröbner basis of the other.
pub fn same_ideal(nvars: usize, a: &[FreePoly], b: &[FreePoly], config: GroebnerConfig) -> Result<bool> {
    let ga = groebner(nvars, a, config)?;
    let gb = groebner(nvars, b, config)?;
    if !ga.is_complete() || !gb.is_complete() {
        return Err(Error::ResourceBudgetExceeded("ideal comparison needs complete bases".into()));
    }
    Ok(b.iter().all(|p| ga.reduces_to_zero(p)) && a.iter().all(|p| gb.reduces_to_zero(p)))
}

/// Checks that zero parameters give back the Nichols quadratic relations.
pub fn zero_parameter_degeneration(params: &DeformParams, config: GroebnerConfig) -> Result<bool> {
    let zero = params.zeroed();
    let (r, q, flavor) = zero.setting()?;
    let nichols = quadratic_relations(&r.rack, &q, flavor);
    same_ideal(r.rack.len(), &build_deformed_ideal(&zero)?, &nichols, config)
}

/// λ for the pointed parameter space from its free coordinates.
pub fn generic_lambda_from_free(rack: &str, cocycle: &str, free_values: &[Q]) -> Result<DeformParams> {
    let r = rack_by_name(rack)?;
    let q = cocycle_by_name(&r, cocycle)?;
    let space = pointed_lambda_space(&r.rack, &q);
    check_len("free values", free_values, space.free_dim())?;
    Ok(DeformParams::GenericLambda {
        rack: rack.into(),
        cocycle: cocycle.into(),
        flavor: Flavor::V,
        lambda: space.instantiate(free_values),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn zero_parameters_recover_nichols() {
        for p in [
            zero_params(Family::Eminus, 3).unwrap(),
            zero_params(Family::Eminus, 4).unwrap(),
            zero_params(Family::Etilde, 4).unwrap(),
        ] {
            assert!(zero_parameter_degeneration(&p, GroebnerConfig::default()).unwrap(), "{p:?}");
        }
    }

    // The χ family as written does not degenerate to the χ Nichols algebra.
    // For n = 3 the two agree after x_(12) -> -x_(12); for n = 4 the
    // dimensions already differ.
    #[test]
    fn echi_zero_parameters_are_not_nichols() {
        let config = GroebnerConfig::default();
        let dim = |gens: &[FreePoly], nv| groebner(nv, gens, config).unwrap().quotient_dim();
        for (n, printed, nichols) in [(3, 12, 12), (4, 100, 576)] {
            let p = zero_params(Family::Echi, n).unwrap();
            let (r, q, flavor) = p.setting().unwrap();
            let nv = r.rack.len();
            let gens = build_deformed_ideal(&p).unwrap();
            assert_eq!(dim(&gens, nv), QuotientDim::Finite(printed));
            assert_eq!(dim(&quadratic_relations(&r.rack, &q, flavor), nv), QuotientDim::Finite(nichols));
            assert!(!zero_parameter_degeneration(&p, config).unwrap());
        }
        // the sign twist at n = 3
        let p = zero_params(Family::Echi, 3).unwrap();
        let (r, q, _) = p.setting().unwrap();
        let flip = transposition(&r, 1, 2);
        let twisted: Vec<FreePoly> = build_deformed_ideal(&p)
            .unwrap()
            .iter()
            .map(|g| {
                FreePoly::from_terms(
                    3,
                    g.terms().iter().map(|(w, c)| {
                        let k = w.letters().iter().filter(|&&l| l as usize == flip).count();
                        (w.clone(), if k % 2 == 1 { -c.clone() } else { c.clone() })
                    }),
                )
            })
            .collect();
        assert!(same_ideal(3, &twisted, &quadratic_relations(&r.rack, &q, Flavor::V), config).unwrap());
    }

    #[test]
    fn eminus3_generators() {
        let p = zero_params(Family::Eminus, 3).unwrap();
        let gens = build_deformed_ideal(&p).unwrap();
        // three squares and two cyclic relations, no disjoint pairs
        assert_eq!(gens.len(), 5);
        let (r, q, _) = p.setting().unwrap();
        assert!(same_ideal(3, &gens, &quadratic_relations(&r.rack, &q, Flavor::V), GroebnerConfig::default()).unwrap());
        let ab = p.alphabet().unwrap();
        let shown: Vec<String> = gens.iter().map(|g| g.display(&ab)).collect();
        assert!(shown.contains(&"(12)*(12)".to_string()), "{shown:?}");
    }

    #[test]
    fn etilde_with_unit_beta() {
        let p = DeformParams::Etilde { beta: vec![q(1); 6], mu1: q(0), mu2: q(0) };
        let gens = build_deformed_ideal(&p).unwrap();
        let ab = p.alphabet().unwrap();
        let (r, _, _) = p.setting().unwrap();
        let s = 0;
        let inv = r.perms.iter().position(|x| *x == r.perms[s].inverse()).unwrap();
        let want = FreePoly::parse(&ab, &format!("{a}*{b} + {b}*{a} - 1", a = ab[s], b = ab[inv])).unwrap();
        assert!(gens.contains(&want));
        assert!(gens.iter().filter(|g| g.terms().len() == 1).count() == 6);
    }

    #[test]
    fn mismatched_beta_kills_the_quotient() {
        let p = DeformParams::Etilde { beta: vec![q(1), q(2), q(1), q(2), q(1), q(2)], mu1: q(0), mu2: q(0) };
        let gens = build_deformed_ideal(&p).unwrap();
        let gb = groebner(6, &gens, GroebnerConfig::default()).unwrap();
        let (r, _, _) = p.setting().unwrap();
        let paired = (0..6).all(|s| {
            let inv = r.perms.iter().position(|x| *x == r.perms[s].inverse()).unwrap();
            p_beta(&p)[s] == p_beta(&p)[inv]
        });
        assert!(!paired);
        assert!(gb.is_trivial_quotient());
    }

    fn p_beta(p: &DeformParams) -> Vec<Q> {
        match p {
            DeformParams::Etilde { beta, .. } => beta.clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn index_mismatch() {
        let p = DeformParams::Eminus { n: 4, alpha: vec![q(0); 5], mu1: q(0), mu2: q(0) };
        assert!(matches!(build_deformed_ideal(&p), Err(Error::IndexMismatch(_))));
        let p = DeformParams::Eminus { n: 12, alpha: vec![], mu1: q(0), mu2: q(0) };
        assert!(matches!(build_deformed_ideal(&p), Err(Error::IndexMismatch(_))));
        let p = DeformParams::GenericLambda { rack: "o24".into(), cocycle: "const:-1".into(), flavor: Flavor::V, lambda: vec![q(1)] };
        assert!(matches!(build_deformed_ideal(&p), Err(Error::IndexMismatch(_))));
    }

    #[test]
    fn generic_lambda_from_pointed_space() {
        let (r, qc) = crate::builtin::setting("o24", "const:-1").unwrap();
        let classes = select_rprime(&r.rack, &qc);
        // free value = size of the free class, so λ_C = ±|C| everywhere
        let free: Vec<Q> = pointed_lambda_space(&r.rack, &qc).free().iter().map(|&c| q(classes[c].size() as i64)).collect();
        let mut sizes: Vec<Q> = free.clone();
        sizes.sort();
        assert_eq!(sizes, vec![q(1), q(2), q(3)]);
        let p = generic_lambda_from_free("o24", "const:-1", &free).unwrap();
        let gens = build_deformed_ideal(&p).unwrap();
        assert_eq!(gens.len(), 17);
        for (g, c) in gens.iter().zip(&classes) {
            let b = relation_poly(c, 6, Flavor::V).unwrap();
            let lam = &b - g;
            assert!(lam.terms().iter().all(|(w, _)| w.is_empty()));
            // λ_C = ±(value for |C|); ties carry signs
            let v = lam.terms().first().map(|t| t.1.clone()).unwrap_or_else(Q::zero);
            let expect = q(c.size() as i64);
            assert!(v == expect || v == -expect.clone(), "{v} vs {expect}");
        }
        assert!(admissibility(&p).unwrap().pointed);
    }

    #[test]
    fn lambda_matching_for_families() {
        let p = DeformParams::Eminus { n: 4, alpha: vec![q(2); 6], mu1: q(3), mu2: q(5) };
        let a = admissibility(&p).unwrap();
        assert!(a.pointed && !a.copointed);
        let p = DeformParams::Eminus { n: 4, alpha: vec![q(1), q(2), q(3), q(4), q(5), q(6)], mu1: q(0), mu2: q(0) };
        let a = admissibility(&p).unwrap();
        assert!(!a.pointed && a.copointed);
        let p = DeformParams::Eminus { n: 4, alpha: vec![q(1), q(2), q(3), q(4), q(5), q(6)], mu1: q(1), mu2: q(0) };
        assert!(!admissibility(&p).unwrap().any());
        // the 4-cycle family is matched copointedly through reversed words
        let p = DeformParams::Etilde { beta: vec![q(2); 6], mu1: q(0), mu2: q(0) };
        assert!(admissibility(&p).unwrap().copointed);
        let p = DeformParams::Etilde { beta: vec![q(2); 6], mu1: q(1), mu2: q(0) };
        assert!(!admissibility(&p).unwrap().copointed);
        let p = DeformParams::EchiNichols { n: 4, alpha: vec![q(1), q(2), q(3), q(4), q(5), q(6)], mu: q(0) };
        assert!(admissibility(&p).unwrap().copointed);
        let p = DeformParams::Echi { n: 4, alpha: vec![q(1), q(2), q(3), q(4), q(5), q(6)], mu: q(0) };
        assert_eq!(admissibility(&p).unwrap(), Admissibility { pointed: false, copointed: true });
    }

    #[test]
    fn echi_nichols_is_flat() {
        let z = zero_params(Family::EchiNichols, 4).unwrap();
        assert!(zero_parameter_degeneration(&z, GroebnerConfig::default()).unwrap());
        let rep = verify_nonzero(Family::EchiNichols, 4, 6, 3, &[], GroebnerConfig::default()).unwrap();
        assert_eq!(rep.zero_dim, QuotientDim::Finite(576));
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn printed_echi_vanishes_for_n4() {
        let p = DeformParams::Echi { n: 4, alpha: vec![q(1), q(2), q(3), q(4), q(5), q(6)], mu: q(0) };
        let err = verify_nonzero(Family::Echi, 4, 0, 0, &[p], GroebnerConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NonzeroCheckFailed(_)), "{err:?}");
    }

    #[test]
    fn sampling_is_deterministic() {
        for f in [Family::Eminus, Family::Echi, Family::EchiNichols, Family::Etilde] {
            for i in 0..6 {
                assert_eq!(sample_params(f, 4, 7, i).unwrap(), sample_params(f, 4, 7, i).unwrap());
            }
            assert_ne!(sample_params(f, 4, 7, 0).unwrap(), sample_params(f, 4, 8, 0).unwrap());
        }
    }

    #[test]
    fn params_json() {
        let p = DeformParams::Echi { n: 3, alpha: vec![q(1), frac(-1, 2), q(0)], mu: q(2) };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"family":"Echi","params":{"n":3,"alpha":["1","-1/2","0"],"mu":"2"}}"#);
        assert_eq!(serde_json::from_str::<DeformParams>(&s).unwrap(), p);
    }

    #[test]
    fn verify_eminus3() {
        let rep = verify_nonzero(Family::Eminus, 3, 20, 1, &[], GroebnerConfig::default()).unwrap();
        assert_eq!(rep.zero_dim, QuotientDim::Finite(12));
        assert!(rep.pass(), "{rep:?}");
        assert!(rep.samples.iter().any(|s| s.flat == Some(true)));
    }
}

//! One pass/fail line per acceptance criterion. The known failures are the
//! printed χ family for n = 4 and element 12 of the printed Gröbner basis;
//! both are reported with the outcome of their corrected forms.

use std::io::Write;
use std::time::{Duration, Instant};

use rackalg::braided::{BraidedSpace, Flavor};
use rackalg::builtin::setting;
use rackalg::deform::{
    appendix_membership_audit, pointed_lifting_generators, sample_params, verify_nonzero, DeformParams, Family,
};
use rackalg::error::Error;
use rackalg::freealg::{groebner, groebner_default, FreePoly, GroebnerConfig, QuotientDim};
use rackalg::grouprealize::smash::{smash_product, FiniteAlgebra, ModuleAction};
use rackalg::grouprealize::{
    comatrix_action_audit, dual_braiding_check, theta_characters, validate_principal, Hopf, HopfKind,
    PrincipalRealization, Side,
};
use rackalg::perm::Perm;
use rackalg::quadrel::{
    copointed_lambda_space, hom_vanishing_check, pointed_lambda_space, quadratic_relations, verify_j2_report,
};
use rackalg::rack::Rack;
use rackalg::Q;

const S4_SETTINGS: [(&str, &str); 3] = [("o24", "const:-1"), ("o24", "chi"), ("o44", "const:-1")];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn j2_kernels() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut dims = Vec::new();
    let mut pass = true;
    for (r, c) in S4_SETTINGS {
        let (rk, q) = setting(r, c).unwrap();
        for f in [Flavor::V, Flavor::W] {
            let t = Instant::now();
            let rep = verify_j2_report(&rk.rack, &q, f);
            worst = worst.max(t.elapsed());
            pass &= rep.equal && rep.kernel_dim == 17 && rep.relations_dim == 17;
            dims.push(rep.kernel_dim);
        }
    }
    pass &= worst < Duration::from_secs(1);
    outcome(pass, format!("kernel dims {dims:?}, slowest {worst:?}"))
}

fn fk3() -> Outcome {
    let (r, q) = setting("o23", "const:-1").unwrap();
    let gb = groebner_default(3, &quadratic_relations(&r.rack, &q, Flavor::V)).unwrap();
    let series = gb.hilbert_series(5);
    let ranks = BraidedSpace::from_rack(&r.rack, &q, Flavor::V).nichols_dims(6).unwrap().dims;
    let pass = gb.quotient_dim() == QuotientDim::Finite(12)
        && series == [1, 3, 4, 3, 1, 0]
        && ranks.iter().sum::<usize>() == 12
        && ranks.iter().zip(&series).all(|(&a, &b)| a as u128 == b);
    outcome(pass, format!("Hilbert series {series:?}, symmetrizer ranks {ranks:?}"))
}

fn s4_dimensions() -> Outcome {
    let mut dims = Vec::new();
    for ((r, c), f) in S4_SETTINGS.into_iter().zip([Flavor::V, Flavor::W, Flavor::V]) {
        let (rk, q) = setting(r, c).unwrap();
        let gb = groebner_default(6, &quadratic_relations(&rk.rack, &q, f)).unwrap();
        assert!(gb.audit_obstructions(16).is_empty());
        dims.push(gb.quotient_dim());
    }
    let pass = dims.iter().all(|d| *d == QuotientDim::Finite(576));
    outcome(pass, format!("{dims:?}"))
}

fn deformations() -> Outcome {
    let config = GroebnerConfig::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for (family, n) in [(Family::Eminus, 3), (Family::Eminus, 4), (Family::Echi, 3), (Family::Echi, 4), (Family::Etilde, 4)] {
        let text = match verify_nonzero(family, n, 20, 0, &[], config) {
            Ok(rep) => {
                pass &= rep.pass();
                format!("{family:?} n={n}: zero dim {:?}, flat {}", rep.zero_dim, rep.all_flat)
            }
            Err(Error::NonzeroCheckFailed(_)) => {
                pass = false;
                format!("{family:?} n={n}: a sampled quotient is zero")
            }
            Err(e) => panic!("{family:?} n={n}: {e}"),
        };
        parts.push(text);
    }
    let nichols = verify_nonzero(Family::EchiNichols, 4, 20, 0, &[], config).unwrap();
    parts.push(format!("(diagnostic) EchiNichols n=4: pass {} at {:?}", nichols.pass(), nichols.zero_dim));
    outcome(pass, parts.join("; "))
}

fn appendix() -> Outcome {
    let mut printed = true;
    let mut corrected = true;
    let mut failing = Vec::new();
    for i in 0..5 {
        let (_, p) = sample_params(Family::Eminus, 4, 0, i).unwrap();
        let DeformParams::Eminus { alpha, mu1, mu2, .. } = p else { unreachable!() };
        let rep = appendix_membership_audit(&alpha, &mu1, &mu2, GroebnerConfig::default()).unwrap();
        printed &= rep.pass();
        corrected &= rep.pass_corrected();
        failing.extend(rep.entries.iter().filter(|e| !e.grouped).map(|e| e.index));
    }
    failing.sort();
    failing.dedup();
    outcome(printed, format!("printed elements failing {failing:?}; corrected reading passes: {corrected}"))
}

fn parameter_spaces() -> Outcome {
    let mut pass = true;
    let (r, minus) = setting("o24", "const:-1").unwrap();
    let (_, chi) = setting("o24", "chi").unwrap();
    let pointed = pointed_lambda_space(&r.rack, &minus);
    pass &= pointed.free_dim() == 3;
    let chi_space = pointed_lambda_space(&r.rack, &chi);
    pass &= chi_space.classes.iter().enumerate().all(|(i, c)| chi_space.is_zero(i) == (c.size() == 2));
    pass &= chi_space.free_dim() == 2;

    // copointed: for transpositions only the classes {(x,x)} survive, for
    // 4-cycles only the pairs {(σ,σ⁻¹),(σ⁻¹,σ)}
    for (rk, c) in S4_SETTINGS {
        let (r, q) = setting(rk, c).unwrap();
        let space = copointed_lambda_space(&r.rack, &q);
        for (i, class) in space.classes.iter().enumerate() {
            let survives = match rk {
                "o24" => class.size() == 1,
                _ => class.size() == 2 && r.perms[class.i1()] == r.perms[class.i2()].inverse(),
            };
            pass &= space.is_zero(i) != survives;
        }
        pass &= hom_vanishing_check(&r.rack, &q).all;
    }
    outcome(pass, format!("pointed free dim {} (−1), {} (χ)", pointed.free_dim(), chi_space.free_dim()))
}

fn realizations() -> Outcome {
    let mut pass = true;
    for ((rk, c), ch) in S4_SETTINGS.into_iter().zip(["sgn", "chi", "sgn"]) {
        let r = PrincipalRealization::builtin(rk, ch).unwrap();
        let (_, q) = setting(rk, c).unwrap();
        pass &= validate_principal(&r, &q).all_pass;
        pass &= comatrix_action_audit(&r, &q, Side::Pointed).all_pass;
        pass &= comatrix_action_audit(&r, &q, Side::Copointed).all_pass;
        pass &= dual_braiding_check(&r);
        let (_, theta) = theta_characters(&r);
        pass &= theta.relation_holds && theta.distinct;
        let zero = vec![Q::from_integer(0.into()); 17];
        pass &= pointed_lifting_generators(&r, &zero).is_ok();
    }
    outcome(pass, "principal data, comatrix actions on both sides, dual braiding, θ, condition")
}

fn braid_sample() -> bool {
    let mut racks = vec![Rack::trivial(4), Rack::affine(5, 2).unwrap(), Rack::affine(6, 5).unwrap()];
    racks.push(Rack::permutation(&Perm::from_images(vec![1, 2, 0, 4, 3]).unwrap()));
    racks.push(setting("o44", "const:-1").unwrap().0.rack);
    racks.iter().all(|r| {
        let n = r.len();
        let f: Vec<Q> = (1..=n as i64).map(|i| Q::from_integer(i.into())).collect();
        let q = rackalg::cocycle::Cocycle::coboundary(r, &f).unwrap();
        [Flavor::V, Flavor::W].iter().all(|&fl| BraidedSpace::from_rack(r, &q, fl).check_braid_equation())
    })
}

fn engine() -> Outcome {
    let braid = braid_sample();

    let (r, q) = setting("o24", "const:-1").unwrap();
    let rels = quadratic_relations(&r.rack, &q, Flavor::V);
    let gb = groebner_default(6, &rels).unwrap();
    let probe = FreePoly::parse(r.rack.labels(), &format!("{a}*{b}*{a} + {b}*{b}*{a}", a = r.rack.label(0), b = r.rack.label(5)))
        .unwrap();
    let nf = gb.normal_form(&probe);
    let normal = gb.audit_obstructions(16).is_empty() && gb.normal_form(&nf) == nf;

    let (o23, q3) = setting("o23", "const:-1").unwrap();
    let fk3 = quadratic_relations(&o23.rack, &q3, Flavor::V);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let invariant = perms.iter().all(|p| {
        let images: Vec<FreePoly> = p.iter().map(|&i| FreePoly::var(3, i)).collect();
        let mut gens: Vec<FreePoly> = fk3.iter().map(|g| g.substitute(&images)).collect();
        gens.reverse();
        groebner(3, &gens, GroebnerConfig::default()).unwrap().quotient_dim() == QuotientDim::Finite(12)
    });

    // FK4 up to degree 2 (dim 26) smashed with kS4 and k^S4: 624 each
    let mut smash = Vec::new();
    for (side, flavor, kind) in
        [(Side::Pointed, Flavor::V, HopfKind::GroupAlgebra), (Side::Copointed, Flavor::W, HopfKind::FunctionAlgebra)]
    {
        let real = PrincipalRealization::builtin("o24", "sgn").unwrap();
        let gb = groebner_default(6, &quadratic_relations(&r.rack, &q, flavor)).unwrap();
        let alg = FiniteAlgebra::truncated(&gb, 2).unwrap();
        let act = match side {
            Side::Pointed => ModuleAction::pointed(&alg, &gb, &real),
            Side::Copointed => ModuleAction::copointed(&alg, &gb, &real),
        }
        .unwrap();
        let hopf = Hopf::new(kind, &real.group);
        let s = smash_product(&alg, &act, &hopf).unwrap();
        let rep = s.check_associativity();
        smash.push((s.dim(), rep.exhaustive && rep.pass()));
    }
    let smash_ok = smash.iter().all(|&(d, ok)| d == 624 && ok);
    outcome(
        braid && normal && invariant && smash_ok,
        format!("braid {braid}, normal forms {normal}, FK3 relabeling {invariant}, smash {smash:?}"),
    )
}

fn determinism() -> Outcome {
    let run = || {
        let rep = verify_nonzero(Family::Etilde, 4, 6, 42, &[], GroebnerConfig::default()).unwrap();
        serde_json::to_string(&rep).unwrap()
    };
    let (a, b) = (run(), run());
    let other = serde_json::to_string(&verify_nonzero(Family::Etilde, 4, 6, 43, &[], GroebnerConfig::default()).unwrap())
        .unwrap();
    outcome(a == b && a != other, format!("{} bytes, identical across runs", a.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, bool); 9] = [
        ("J2 kernels of dimension 17 for the S4 settings", j2_kernels, true),
        ("FK3 dimension and Hilbert series", fk3, true),
        ("three S4 Nichols algebras of dimension 576", s4_dimensions, true),
        ("deformed quotients are nonzero and flat", deformations, false),
        ("printed Gröbner basis lies in the ideal", appendix, false),
        ("deformation parameter spaces", parameter_spaces, true),
        ("realization audits", realizations, true),
        ("engine properties", engine, true),
        ("seeded reports are byte-identical", determinism, true),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, check, expected)) in criteria.into_iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = if o.pass == expected { "" } else { " (unexpected)" };
        // straight to the handle so the lines show without --nocapture
        writeln!(std::io::stderr(), "criterion {}: {tag}{known} {name}: {}", i + 1, o.detail).unwrap();
        if o.pass != expected {
            unexpected.push(i + 1);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected status: {unexpected:?}");
}

use proptest::prelude::*;
use rackalg::braided::{BraidedSpace, Flavor};
use rackalg::builtin::setting;
use rackalg::cocycle::Cocycle;
use rackalg::deform::{iso_class_equal, CopointedFamily, IsoFamily};
use rackalg::freealg::{groebner, FreePoly, GbStatus, GroebnerConfig, QuotientDim, Word};
use rackalg::perm::Perm;
use rackalg::quadrel::quadratic_relations;
use rackalg::rack::Rack;
use rackalg::rational::{frac, q};
use rackalg::Q;

#[derive(Clone, Debug)]
enum RackSpec {
    Trivial(usize),
    Permutation(Vec<usize>),
    Affine(usize, usize),
    Builtin(&'static str),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn rack_spec() -> impl Strategy<Value = RackSpec> {
    prop_oneof![
        (1..=6usize).prop_map(RackSpec::Trivial),
        (1..=6usize).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(RackSpec::Permutation),
        (3..=6usize, 1..6usize)
            .prop_filter("a must be a unit", |(n, a)| a % n != 0 && gcd(*a, *n) == 1)
            .prop_map(|(n, a)| RackSpec::Affine(n, a)),
        prop::sample::select(vec!["o23", "o24", "o44"]).prop_map(RackSpec::Builtin),
    ]
}

fn nonzero_q() -> impl Strategy<Value = Q> {
    (prop_oneof![-4i64..=-1, 1i64..=4], 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

/// A rack with a cocycle: constant, a coboundary, their product, or χ.
fn rack_and_cocycle() -> impl Strategy<Value = (Rack, Cocycle)> {
    (rack_spec(), nonzero_q(), prop::collection::vec(nonzero_q(), 6), 0..4u8).prop_map(|(spec, w, f, mode)| {
        let (rack, chi) = match &spec {
            RackSpec::Trivial(n) => (Rack::trivial(*n), None),
            RackSpec::Permutation(images) => (Rack::permutation(&Perm::from_images(images.clone()).unwrap()), None),
            RackSpec::Affine(n, a) => (Rack::affine(*n, *a).unwrap(), None),
            RackSpec::Builtin(name) => {
                let (r, _) = setting(name, "const:-1").unwrap();
                let chi = name.starts_with("o2").then(|| setting(name, "chi").unwrap().1);
                (r.rack, chi)
            }
        };
        let n = rack.len();
        let constant = Cocycle::validate(&rack, vec![vec![w; n]; n]).unwrap();
        let cob = Cocycle::coboundary(&rack, &f[..n]).unwrap();
        let q = match (mode, chi) {
            (0, _) => constant,
            (1, _) => cob,
            (3, Some(chi)) => chi.product(&cob),
            _ => constant.product(&cob),
        };
        (rack, q)
    })
}

/// `c` on basis tensors, straight from the definitions.
fn c(rack: &Rack, q: &Cocycle, flavor: Flavor, x: usize, y: usize) -> ((usize, usize), Q) {
    match flavor {
        Flavor::V => ((rack.op(x, y), x), q.get(x, y).clone()),
        Flavor::W => ((y, rack.op(y, x)), q.get(y, x).clone()),
    }
}

fn apply(rack: &Rack, q: &Cocycle, flavor: Flavor, t: [usize; 3], at: usize) -> ([usize; 3], Q) {
    let ((a, b), s) = c(rack, q, flavor, t[at], t[at + 1]);
    let mut out = t;
    out[at] = a;
    out[at + 1] = b;
    (out, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn braid_equation_on_random_racks((rack, q) in rack_and_cocycle()) {
        let n = rack.len();
        for flavor in [Flavor::V, Flavor::W] {
            let space = BraidedSpace::from_rack(&rack, &q, flavor);
            for x in 0..n {
                for y in 0..n {
                    prop_assert_eq!(space.braid(x, y), &c(&rack, &q, flavor, x, y));
                }
            }
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let mut lhs = ([x, y, z], frac(1, 1));
                        let mut rhs = ([x, y, z], frac(1, 1));
                        for at in [0, 1, 0] {
                            let (t, s) = apply(&rack, &q, flavor, lhs.0, at);
                            lhs = (t, lhs.1 * s);
                        }
                        for at in [1, 0, 1] {
                            let (t, s) = apply(&rack, &q, flavor, rhs.0, at);
                            rhs = (t, rhs.1 * s);
                        }
                        prop_assert_eq!(&lhs, &rhs);
                    }
                }
            }
            prop_assert!(space.check_braid_equation());
        }
    }
}

fn small_poly(nvars: usize) -> impl Strategy<Value = FreePoly> {
    prop::collection::vec((prop::collection::vec(0..nvars, 1..=3), -2i64..=2), 1..=3).prop_map(move |terms| {
        FreePoly::from_terms(nvars, terms.into_iter().map(|(w, c)| (Word::from_indices(&w), q(c))))
    })
}

fn ideal() -> impl Strategy<Value = (usize, Vec<FreePoly>, FreePoly)> {
    (2..=3usize).prop_flat_map(|n| (Just(n), prop::collection::vec(small_poly(n), 1..=3), small_poly(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn normal_forms_and_s_elements((nvars, gens, p) in ideal()) {
        let config = GroebnerConfig { max_deg: 7, max_basis: 300 };
        let Ok(gb) = groebner(nvars, &gens, config) else { return Ok(()) };
        let audited = match gb.status() {
            GbStatus::Complete => config.max_deg,
            GbStatus::TruncatedAtDegree(d) => d,
        };
        prop_assert!(gb.audit_obstructions(audited).is_empty());
        let nf = gb.normal_form(&p);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        // no term of a normal form contains a leading word
        let leads = gb.leading_words();
        for (w, _) in nf.terms() {
            prop_assert!(leads.iter().all(|l| w.find(l.letters()).is_none()));
        }
        if gb.is_complete() {
            for g in &gens {
                prop_assert!(gb.reduces_to_zero(g));
            }
            // p − nf(p) lies in the ideal
            prop_assert!(gb.reduces_to_zero(&(&p - &nf)));
        }
    }
}

fn fk3() -> (Vec<FreePoly>, usize) {
    let (r, q) = setting("o23", "const:-1").unwrap();
    (quadratic_relations(&r.rack, &q, Flavor::V), r.rack.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn fk3_dimension_is_invariant_under_relabeling(
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        order in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
        scales in prop::collection::vec(nonzero_q(), 5),
    ) {
        let (rels, n) = fk3();
        let images: Vec<FreePoly> = perm.iter().map(|&i| FreePoly::var(n, i)).collect();
        let gens: Vec<FreePoly> = order.iter().map(|&k| rels[k].substitute(&images).scale(&scales[k])).collect();
        let gb = groebner(n, &gens, GroebnerConfig::default()).unwrap();
        prop_assert_eq!(gb.quotient_dim(), QuotientDim::Finite(12));
        prop_assert_eq!(gb.hilbert_series(5), vec![1, 3, 4, 3, 1, 0]);
    }
}

fn conjugate(lambda: &[Q], h: &Perm, perms: &[Perm]) -> Vec<Q> {
    (0..perms.len())
        .map(|x| {
            let y = h.compose(&perms[x]).compose(&h.inverse());
            lambda[perms.iter().position(|p| *p == y).unwrap()].clone()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn isomorphism_is_an_equivalence(
        a in prop::collection::vec(-3i64..=3, 6),
        b in prop::collection::vec(-3i64..=3, 6),
        h1 in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        h2 in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        m1 in nonzero_q(),
        m2 in nonzero_q(),
    ) {
        let (r, _) = setting("o24", "const:-1").unwrap();
        let fam = IsoFamily::Copointed(CopointedFamily::TranspMinus);
        let a: Vec<Q> = a.into_iter().map(q).collect();
        let b: Vec<Q> = b.into_iter().map(q).collect();
        let (h1, h2) = (Perm::from_images(h1).unwrap(), Perm::from_images(h2).unwrap());
        let t1: Vec<Q> = conjugate(&a, &h1, &r.perms).iter().map(|x| x * &m1).collect();
        let t2: Vec<Q> = conjugate(&t1, &h2, &r.perms).iter().map(|x| x * &m2).collect();
        let eq = |x: &[Q], y: &[Q], f| iso_class_equal(x, y, f).unwrap().equal;
        prop_assert!(eq(&a, &a, fam));
        prop_assert!(eq(&a, &t1, fam) && eq(&t1, &a, fam));
        prop_assert!(eq(&t1, &t2, fam) && eq(&a, &t2, fam));
        prop_assert_eq!(eq(&a, &b, fam), eq(&b, &a, fam));
        prop_assert_eq!(eq(&a[..3], &b[..3], IsoFamily::Pointed), eq(&b[..3], &a[..3], IsoFamily::Pointed));
        let scaled: Vec<Q> = a[..3].iter().map(|x| x * &m1).collect();
        prop_assert!(eq(&a[..3], &scaled, IsoFamily::Pointed));
    }
}

use foldedchar::characters::freudenthal;
use foldedchar::folding::{fold, DiagramAutomorphism};
use foldedchar::hwmodule::{build_module, contravariant_form, Monomial};
use foldedchar::twining::{compare, folded_character, twining_of_module};
use foldedchar::{make_datum, Weight};
use proptest::prelude::*;

const TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "C3", "B3", "D4", "G2", "F4", "E6",
];

const FOLDINGS: &[(&str, &str)] = &[
    ("A2", "(1 2)"),
    ("A3", "(1 3)"),
    ("A4", "(1 4)(2 3)"),
    ("A5", "(1 5)(2 4)"),
    ("D4", "(3 4)"),
    ("D4", "(1 3 4)"),
    ("D5", "(4 5)"),
    ("E6", "(1 6)(3 5)"),
];

fn datum_and_weight(lo: i64, hi: i64) -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    prop::sample::select(TYPES).prop_flat_map(move |label| {
        let n = make_datum(label).unwrap().rank();
        (Just(label), prop::collection::vec(lo..=hi, n))
    })
}

/// A folding together with a sigma-invariant dominant weight, built by
/// choosing one value per orbit.
fn invariant_case(max: i64) -> impl Strategy<Value = (&'static str, &'static str, Vec<i64>)> {
    prop::sample::select(FOLDINGS).prop_flat_map(move |(label, cyc)| {
        let d = make_datum(label).unwrap();
        let sigma = DiagramAutomorphism::parse(cyc, d.rank()).unwrap();
        let f = fold(&d, &sigma).unwrap();
        let orbits = f.orbits().to_vec();
        let n = d.rank();
        prop::collection::vec(0..=max, orbits.len()).prop_map(move |vals| {
            let mut c = vec![0; n];
            for (o, v) in orbits.iter().zip(vals) {
                for &i in o {
                    c[i] = v;
                }
            }
            (label, cyc, c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflection_is_an_involution((label, c) in datum_and_weight(-6, 6), i in 0usize..8) {
        let d = make_datum(label).unwrap();
        let i = i % d.rank();
        let mu = Weight(c);
        prop_assert_eq!(d.reflect(i, &d.reflect(i, &mu)), mu.clone());
        // pairing with the coroot changes sign
        prop_assert_eq!(d.reflect(i, &mu).0[i], -mu.0[i]);
    }

    #[test]
    fn dominant_conjugate_lies_in_the_orbit((label, c) in datum_and_weight(-2, 2)) {
        let d = make_datum(label).unwrap();
        let dom = d.dominant_conjugate(&Weight(c.clone()));
        prop_assert!(dom.is_dominant());
        prop_assert!(d.weyl_orbit(&dom).unwrap().contains(&Weight(c)));
    }

    #[test]
    fn orbit_size_divides_group_order((label, c) in datum_and_weight(0, 2)) {
        let d = make_datum(label).unwrap();
        let size = d.weyl_orbit(&Weight(c)).unwrap().len() as u128;
        prop_assert_eq!(d.weyl_group_order() % size, 0);
    }

    #[test]
    fn weyl_dimension_is_freudenthal_total((label, c) in datum_and_weight(0, 2)) {
        let d = make_datum(label).unwrap();
        let lambda = Weight(c);
        let dim = d.weyl_dimension(&lambda).unwrap();
        prop_assume!(dim <= 3000);
        let ch = freudenthal(&d, &lambda, 3000).unwrap();
        prop_assert_eq!(ch.dimension(), dim);
        // multiplicities are Weyl-invariant
        for (mu, &m) in ch.mults() {
            for i in 0..d.rank() {
                prop_assert_eq!(ch.mult(&d.reflect(i, mu)), m);
            }
        }
    }

    #[test]
    fn folded_dominance_matches_source((label, cyc, c) in invariant_case(2), shift in -2i64..=0) {
        let d = make_datum(label).unwrap();
        let sigma = DiagramAutomorphism::parse(cyc, d.rank()).unwrap();
        let f = fold(&d, &sigma).unwrap();
        // shift one orbit down so that non-dominant invariant weights occur too
        let mut c = c;
        for &i in &f.orbits()[0] {
            c[i] += shift;
        }
        let lambda = Weight(c);
        let folded = f.to_folded_weight(&lambda).unwrap();
        prop_assert_eq!(f.dominant_invariant_check(&lambda), folded.is_dominant());
        prop_assert_eq!(f.from_folded_weight(&folded).unwrap(), lambda);
    }

    #[test]
    fn module_dimensions_match_freudenthal((label, c) in datum_and_weight(0, 1)) {
        let d = make_datum(label).unwrap();
        let lambda = Weight(c);
        prop_assume!(d.weyl_dimension(&lambda).unwrap() <= 120);
        let module = build_module(&d, &lambda, 120).unwrap();
        let ch = freudenthal(&d, &lambda, 120).unwrap();
        for (mu, &m) in ch.mults() {
            prop_assert_eq!(module.dim_at(mu) as u64, m);
        }
        prop_assert_eq!(module.dimension(), ch.dimension());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twining_equals_folded_character((label, cyc, c) in invariant_case(2)) {
        let d = make_datum(label).unwrap();
        let lambda = Weight(c);
        prop_assume!(d.weyl_dimension(&lambda).unwrap() <= 150);
        let sigma = DiagramAutomorphism::parse(cyc, d.rank()).unwrap();
        let f = fold(&d, &sigma).unwrap();
        let module = build_module(&d, &lambda, 150).unwrap();
        let twine = twining_of_module(&module, &sigma).unwrap();
        let folded = folded_character(&f, &lambda, 150).unwrap();
        let report = compare(&d, &twine, &folded);
        prop_assert!(report.ok, "{:?}", report.entries);
        prop_assert_eq!(twine.sum() as u64, folded.dimension());
    }

    #[test]
    fn module_form_agrees_with_verma_form(seed in any::<u64>()) {
        use rand::SeedableRng;
        let d = make_datum("A3").unwrap();
        let lambda = Weight(vec![1, 0, 1]);
        let module = build_module(&d, &lambda, 100).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m: Monomial = module.random_monomial(&mut rng);
        let m2: Monomial = module.random_monomial(&mut rng);
        prop_assert_eq!(module.form(&m, &m2), contravariant_form(&d, &lambda, &m, &m2));
    }
}

#[test]
fn positive_root_count_from_adjoint_dimension() {
    for (label, adj) in [
        ("A1", vec![2]),
        ("A2", vec![1, 1]),
        ("A3", vec![1, 0, 1]),
        ("A4", vec![1, 0, 0, 1]),
        ("A5", vec![1, 0, 0, 0, 1]),
        ("D4", vec![0, 1, 0, 0]),
        ("D5", vec![0, 1, 0, 0, 0]),
    ] {
        let d = make_datum(label).unwrap();
        let dim = d.weyl_dimension(&Weight(adj)).unwrap() as usize;
        assert_eq!(d.positive_roots().len(), (dim - d.rank()) / 2, "{label}");
    }
}

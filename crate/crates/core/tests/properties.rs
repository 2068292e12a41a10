use majlab::algebra::{FockRepresentation, MajoranaMonomial, u1_rotate_modes};
use majlab::bdg::{
    build_kitaev_bdg, build_nanowire_bdg, diagonalize, BdGMatrix, Boundary, KitaevChainParams,
    NambuLayout, NanowireParams,
};
use majlab::braid::{
    parse_braid_word, representation_consistency, word_action, BraidLetter, BraidWord,
};
use majlab::harness::{format_float, RunConfig};
use majlab::hybrid::{readout_contrast, ReadoutParams};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn support(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1..=2 * n, 0..6)
}

fn word(n: usize) -> impl Strategy<Value = BraidWord> {
    proptest::collection::vec((1..n, prop_oneof![Just(1i8), Just(-1i8)]), 0..10).prop_map(move |ls| {
        BraidWord::new(n, ls.into_iter().map(|(generator, exponent)| BraidLetter { generator, exponent }).collect())
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_product_matches_matrices(a in support(3), b in support(3)) {
        let rep = FockRepresentation::new(3).unwrap();
        let ma = MajoranaMonomial::from_product(3, &a).unwrap();
        let mb = MajoranaMonomial::from_product(3, &b).unwrap();
        let prod = rep.monomial(&ma.multiply(&mb).unwrap()).unwrap();
        let direct = rep.monomial(&ma).unwrap().mul(&rep.monomial(&mb).unwrap());
        prop_assert!(prod.distance(&direct) < 1e-13);
    }

    #[test]
    fn monomial_product_associative(a in support(4), b in support(4), c in support(4)) {
        let m = |s: &[usize]| MajoranaMonomial::from_product(4, s).unwrap();
        let (x, y, z) = (m(&a), m(&b), m(&c));
        prop_assert_eq!(x.multiply(&y).unwrap().multiply(&z).unwrap(), x.multiply(&y.multiply(&z).unwrap()).unwrap());
    }

    #[test]
    fn adjoint_reverses_products(a in support(3), b in support(3)) {
        let m = |s: &[usize]| MajoranaMonomial::from_product(3, s).unwrap();
        let (x, y) = (m(&a), m(&b));
        prop_assert_eq!(x.multiply(&y).unwrap().adjoint(), y.adjoint().multiply(&x.adjoint()).unwrap());
    }

    #[test]
    fn rotations_compose_additively(a in -7.0f64..7.0, b in -7.0f64..7.0) {
        let r = u1_rotate_modes(3, a, 2).unwrap().compose(&u1_rotate_modes(3, b, 2).unwrap());
        let s = u1_rotate_modes(3, a + b, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((r.matrix[i][j] - s.matrix[i][j]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn phs_symmetric_spectrum(seed in any::<u64>(), spinful in any::<bool>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let layout = if spinful { NambuLayout::spinful(4, 1.0) } else { NambuLayout::spinless(8, 1.0) };
        let d = layout.dim();
        let raw = DMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let h = BdGMatrix::symmetrized(&raw, layout).unwrap();
        prop_assert!(diagonalize(&h).unwrap().pairing_residual() < 1e-10);
    }

    #[test]
    fn kitaev_models_are_particle_hole_symmetric(
        n in 2usize..30, t in 0.1f64..3.0, mu in -5.0f64..5.0, delta in -2.0f64..2.0, periodic in any::<bool>()
    ) {
        let b = if periodic { Boundary::Periodic } else { Boundary::Open };
        let h = build_kitaev_bdg(&KitaevChainParams { n_sites: n, t, mu, delta, boundary: b }).unwrap();
        prop_assert!(h.phs_residual() < 1e-12);
        prop_assert!(diagonalize(&h).unwrap().pairing_residual() < 1e-10);
    }

    #[test]
    fn nanowire_models_are_particle_hole_symmetric(
        n in 2usize..15, mu in -3.0f64..3.0, alpha in 0.0f64..5.0, ez in 0.0f64..3.0, delta in 0.0f64..2.0
    ) {
        let p = NanowireParams {
            n_sites: n, lattice_spacing: 1.0, mass: 0.1, mu, alpha_so: alpha, e_zeeman: ez, delta, boundary: Boundary::Open,
        };
        let h = build_nanowire_bdg(&p).unwrap();
        prop_assert!(h.phs_residual() < 1e-12);
        prop_assert!(diagonalize(&h).unwrap().pairing_residual() < 1e-10);
    }

    #[test]
    fn braid_action_matches_unitary(w in word(6)) {
        prop_assert!(representation_consistency(&w, 3).unwrap() < 1e-12);
    }

    #[test]
    fn inverse_word_cancels(w in word(5)) {
        prop_assert!(word_action(&w.then(&w.inverse()).unwrap()).is_identity());
    }

    #[test]
    fn word_text_round_trips(w in word(7)) {
        prop_assert_eq!(parse_braid_word(&w.to_string(), 7).unwrap(), w);
    }

    #[test]
    fn floats_round_trip(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        prop_assert_eq!(format_float(x).parse::<f64>().unwrap().to_bits(), bits);
    }

    #[test]
    fn contrast_odd_in_splitting(delta in 1e-6f64..0.1, g in 0.001f64..0.1, det in 0.5f64..3.0) {
        let r = ReadoutParams { omega0: 5.0, g_jc: g, depsilon: 5.0 - det, delta, sigma_z: 1 };
        let flipped = ReadoutParams { delta: -delta, ..r.clone() };
        let (a, b) = (readout_contrast(&r).unwrap(), readout_contrast(&flipped).unwrap());
        prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1e-300));
    }

    #[test]
    fn hash_ignores_key_order(mu in -3.0f64..3.0, n in 2usize..50) {
        let a = format!(r#"{{"model":"kitaev","parameters":{{"n_sites":{n},"t":1,"mu":{mu},"delta":1}}}}"#);
        let b = format!(r#"{{"parameters":{{"delta":1.0,"mu":{mu},"t":1.0,"n_sites":{n}}},"model":"kitaev","threads":2}}"#);
        let (a, b) = (RunConfig::from_json(&a).unwrap(), RunConfig::from_json(&b).unwrap());
        prop_assert_eq!(a.semantic_hash("spectrum"), b.semantic_hash("spectrum"));
    }
}

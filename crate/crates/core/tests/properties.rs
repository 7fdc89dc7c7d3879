use proptest::prelude::*;

use qcousin::cech::{CechComplex, Support};
use qcousin::cli::parse_manifest;
use qcousin::modpres::PresentedModule;
use qcousin::oracle::words::word_product;
use qcousin::scalar::Field;
use qcousin::skewalg::{Algebra, Monomial};

fn exps(nvars: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, nvars)
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::rationals()), Just(Field::generic()), Just(Field::cyclotomic(3)), Just(Field::cyclotomic(4))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_agrees_with_word_rewriting(n in 1usize..=3, f in field(), a in exps(4, 3), b in exps(4, 3)) {
        let alg = Algebra::new(n, f);
        let (a, b) = (a[..=n].to_vec(), b[..=n].to_vec());
        let (c, m) = alg.monomial_product(&Monomial::new(a.clone()), &Monomial::new(b.clone()));
        let (e, w) = word_product(&a, &b);
        prop_assert_eq!(m.exps(), w.as_slice());
        prop_assert_eq!(c, alg.q_power(e));
    }

    #[test]
    fn product_is_associative(a in exps(3, 3), b in exps(3, 3), c in exps(3, 3)) {
        let alg = Algebra::new(2, Field::generic());
        let (a, b, c) = (alg.monomial(Monomial::new(a)), alg.monomial(Monomial::new(b)), alg.monomial(Monomial::new(c)));
        let left = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cech_differential_squares_to_zero(kill in exps(2, 2), z in 0usize..=1, p in 1u32..=3) {
        let alg = Algebra::new(1, Field::generic());
        let gens: Vec<Monomial> = if kill.iter().all(|&k| k == 0) { Vec::new() } else { vec![Monomial::new(kill)] };
        let m = PresentedModule::cyclic_monomial_quotient(alg, &gens);
        let c = CechComplex::build(&m, Support::Stratum(z), p);
        prop_assert!(c.complex().is_complex());
        let next = CechComplex::build(&m, Support::Stratum(z), p + 1);
        prop_assert!(c.transition_to(&next).commutes(c.complex(), next.complex(), false));
        prop_assert_eq!(c.complex().euler_characteristic(), c.complex().cohomological_euler());
    }

    #[test]
    fn manifests_round_trip(
        n in 1usize..=3,
        fi in 0usize..4,
        rels in prop::collection::vec(exps(4, 2), 0..3),
        pole in 1u32..6,
        window in 1u32..4,
        product in any::<bool>(),
    ) {
        let fields = ["rationals", "generic_q", "cyclotomic:3", "cyclotomic:4"];
        let mut text = format!("[problem]\nfield = {}\nn = {n}\ncommand = hilbert\n[module M]\ngenerators = 0\n", fields[fi]);
        for r in &rels {
            let mono: Vec<String> = r.iter().take(n + 1).enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| format!("x{}^{e}", i + 1)).collect();
            if !mono.is_empty() {
                text.push_str(&format!("relation = {}\n", mono.join("*")));
            }
        }
        text.push_str(&format!("[parameters]\npole_max = {pole}\nwindow = {window}\nsemantics = {}\n", if product { "product" } else { "ideal" }));
        let m = parse_manifest(&text).unwrap();
        let again = parse_manifest(&m.serialize()).unwrap();
        prop_assert_eq!(&m, &again);
        prop_assert_eq!(m.serialize(), again.serialize());
    }
}

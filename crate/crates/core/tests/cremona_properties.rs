use morikit::exact_math::Rational;
use morikit::picard_lattice::{cremona_pushforward, pair, symmetric_polarization, BlowupModel, CurveClass, DivisorClass};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn model_and_base() -> impl Strategy<Value = (BlowupModel, Vec<usize>)> {
    (2usize..=7)
        .prop_flat_map(|m| (Just(m), m + 1..=9))
        .prop_flat_map(|(m, s)| {
            (Just(BlowupModel::new(m, s).unwrap()), subsequence((1..=s).collect::<Vec<_>>(), m + 1).prop_shuffle())
        })
}

fn class_on(model: BlowupModel) -> impl Strategy<Value = DivisorClass> {
    (-50i64..50, proptest::collection::vec((-50i64..50, 1i64..5), model.s())).prop_map(move |(y, xs)| {
        let x = xs.into_iter().map(|(n, d)| Rational::new(n, d).unwrap()).collect();
        DivisorClass::new(model, Rational::from(y), x).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pushforward_is_an_involution(
        (d, base) in model_and_base().prop_flat_map(|(model, base)| (class_on(model), Just(base)))
    ) {
        let once = cremona_pushforward(&d, &base).unwrap();
        prop_assert_eq!(cremona_pushforward(&once, &base).unwrap(), d);
    }

    #[test]
    fn exceptional_divisors_go_to_hyperplanes_minus_the_rest((model, base) in model_and_base()) {
        for &i in &base {
            let img = cremona_pushforward(&DivisorClass::exceptional(model, i).unwrap(), &base).unwrap();
            for j in 1..=model.s() {
                let line = CurveClass::line_through(model, j).unwrap();
                // H.(l - e_j) = 1 and E_k.(l - e_j) = delta_kj
                let expect = if j == i || !base.contains(&j) { 1 } else { 0 };
                prop_assert_eq!(pair(&img, &line).unwrap(), Rational::from(expect));
            }
            prop_assert_eq!(img.y(), &Rational::one());
        }
    }
}

#[test]
fn symmetric_class_is_fixed_by_every_base() {
    for g in 2..=4usize {
        let d = symmetric_polarization(g).unwrap();
        let s = 2 * g + 1;
        for skip in 1..=s {
            let base: Vec<usize> = (1..=s).filter(|&i| i != skip).collect();
            assert_eq!(cremona_pushforward(&d, &base).unwrap(), d);
        }
    }
}

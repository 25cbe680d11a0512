mod support;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::overlay::{random_chain, random_function};
use tropbn::graph::{ChainOfLoops, GraphPoint};
use tropbn::plfunc::{tropical_combination, PLFunction};
use tropbn::Rational;

fn functions(seed: u64, count: usize) -> (Arc<ChainOfLoops>, Vec<PLFunction>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chain = random_chain(&mut rng, 4);
    let mut fs = Vec::new();
    while fs.len() < count {
        if let Some(f) = random_function(&mut rng, &chain) {
            fs.push(f);
        }
    }
    (chain, fs)
}

fn sample_points(chain: &ChainOfLoops, seed: u64) -> Vec<GraphPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    chain
        .edges()
        .flat_map(|e| {
            let len = chain.edge_length(e).clone();
            let mut pts = vec![Rational::zero(), len.clone()];
            pts.extend((0..3).map(|_| &len * &Rational::new(rng.gen_range(0..=12), 12)));
            pts.into_iter().map(move |o| GraphPoint { edge: e, offset: o })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn principal_divisors_have_degree_zero(seed in any::<u64>()) {
        let (_, fs) = functions(seed, 2);
        prop_assert_eq!(fs[0].principal_divisor().degree(), 0);
        let sum = fs[0].add(&fs[1]).unwrap();
        let lhs = sum.principal_divisor();
        let rhs = fs[0].principal_divisor().plus(&fs[1].principal_divisor()).unwrap();
        prop_assert_eq!(lhs.points(), rhs.points());
    }

    #[test]
    fn combination_is_pointwise_min(seed in any::<u64>(), c0 in -5i64..6, c1 in -5i64..6, c2 in -5i64..6) {
        let (chain, fs) = functions(seed, 3);
        let cs = [Rational::from_integer(c0), Rational::new(c1, 2), Rational::new(c2, 3)];
        let refs: Vec<&PLFunction> = fs.iter().collect();
        let theta = tropical_combination(&refs, &cs).unwrap();
        for p in sample_points(&chain, seed) {
            let direct = fs.iter().zip(&cs).map(|(f, c)| &f.value_at(&p) + c).min().unwrap();
            prop_assert_eq!(theta.value_at(&p), direct);
        }
        prop_assert_eq!(theta.min_value(), fs.iter().zip(&cs).map(|(f, c)| &f.min_value() + c).min().unwrap());
    }

    #[test]
    fn sums_and_negation_evaluate_pointwise(seed in any::<u64>()) {
        let (chain, fs) = functions(seed, 2);
        let sum = fs[0].add(&fs[1]).unwrap();
        let diff = fs[0].sub(&fs[1]).unwrap();
        for p in sample_points(&chain, seed) {
            prop_assert_eq!(sum.value_at(&p), &fs[0].value_at(&p) + &fs[1].value_at(&p));
            prop_assert_eq!(diff.value_at(&p), &fs[0].value_at(&p) - &fs[1].value_at(&p));
            prop_assert_eq!(fs[0].neg().value_at(&p), -&fs[0].value_at(&p));
        }
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let (chain, fs) = functions(seed, 1);
        let text = serde_json::to_string(&*chain).unwrap();
        let back: ChainOfLoops = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &*chain);
        let f = PLFunction::from_json(chain.clone(), &fs[0].to_json()).unwrap();
        prop_assert!(f == fs[0]);
        let d = fs[0].principal_divisor();
        let d2 = tropbn::plfunc::Divisor::from_json(chain.clone(), &d.to_json()).unwrap();
        prop_assert_eq!(d.points(), d2.points());
    }

    #[test]
    fn loop_coordinates_invert(seed in any::<u64>(), num in -40i64..40, den in 1i64..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chain = random_chain(&mut rng, 4);
        let k = rng.gen_range(1..=chain.genus());
        let x = Rational::new(num, den);
        let p = chain.point_at_coordinate(k, &x);
        prop_assert_eq!(chain.loop_coordinate(k, &p), Some(x.rem_euclid(&chain.circumference(k))));
        prop_assert!(chain.contains_edge(p.edge));
    }
}

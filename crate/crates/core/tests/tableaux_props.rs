use proptest::prelude::*;
use tropbn::tableaux::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn slope_table_invariants(g in 21u32..=23, pick in any::<u64>()) {
        let e = Enumerator::rank_six(g).unwrap();
        let t = e.unrank(pick as u128 % e.total()).unwrap();
        let sv = slope_table(&t);
        prop_assert!(sv.rows_increasing());
        prop_assert!(sv.lattice_steps_hold(&lingering_loops(&t)));
        let mu = multiplicities_and_weights(&sv, t.g(), t.r(), t.d());
        prop_assert_eq!(mu.total(), t.rho());
        prop_assert!(mu.loops.iter().chain(&mu.bridges).all(|&m| m >= 0));
        prop_assert_eq!(lingering_loops(&t).len() as i64, t.rho());
    }

    #[test]
    fn unrank_is_injective(g in 21u32..=22, a in any::<u64>(), b in any::<u64>()) {
        let e = Enumerator::rank_six(g).unwrap();
        let (a, b) = (a as u128 % e.total(), b as u128 % e.total());
        prop_assert_eq!(a == b, e.unrank(a) == e.unrank(b));
    }
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

#[test]
fn hook_length_agrees_with_dp_on_small_shapes() {
    let mut shapes = Vec::new();
    for n in 1..=12 {
        partitions(n, n, &mut Vec::new(), &mut shapes);
    }
    assert_eq!(shapes.len(), 271);
    for shape in shapes {
        let as_u8: Vec<u8> = shape.iter().map(|&l| l as u8).collect();
        assert_eq!(hook_length_count(&shape), count_standard_fillings_dp(&as_u8).into(), "{shape:?}");
    }
}

#[test]
fn rectangle_counts_match_enumeration() {
    for (rows, cols, n) in [(1, 1, 3), (2, 2, 6), (2, 3, 8), (3, 2, 7), (3, 3, 10)] {
        let walked = Enumerator::new(rows, cols, n).unwrap().total();
        assert_eq!(count_tableaux(rows as u64, cols as u64, n as u64).unwrap(), walked.into());
    }
}

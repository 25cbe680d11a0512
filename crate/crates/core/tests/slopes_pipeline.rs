use tropbn::slopes::*;
use tropbn::Rational;

fn failed(report: &PipelineReport) -> Vec<String> {
    report.failed_checks().map(|c| c.stage.clone()).collect()
}

#[test]
fn genus_23_class() {
    let report = run_g23().unwrap();
    let c = &report.class;
    assert_eq!(c.b1, Rational::from_integer(13_502_337_992));
    assert_eq!(report.on_f0, Rational::from_integer(93_988_702_808));
    assert_eq!(c.b0, Rational::from_integer(2_442_978_200));
    assert_eq!(c.a, Rational::from_integer(15_813_400_408));
    assert_eq!(*c, published_class_g23());
    assert_eq!(c.slope().unwrap(), Rational::new(470749, 72725));
    for f in report.failed_checks() {
        eprintln!("{} {:?}", f.stage, f.mismatches);
    }
    assert_eq!(failed(&report), vec!["Y/locus", "Y/kernel", "Y/ker-coefficient"]);
}

#[test]
fn rho_one_s3_matches_genus_22() {
    let report = run_rho1(3).unwrap();
    let c = &report.class;
    assert_eq!(c.b1, Rational::from_integer(731_180_268));
    assert_eq!(c.b0, Rational::from_integer(132_822_768));
    assert_eq!(c.a, Rational::from_integer(862_692_948));
    assert_eq!(*c, published_class_g22());
    for f in report.failed_checks() {
        eprintln!("{} {:?}", f.stage, f.mismatches);
    }
    assert_eq!(failed(&report), vec!["Z/pushed-without-ker", "b1"]);
}

#[test]
fn rho_one_s2_attains_bound() {
    let report = slope_report(&virtual_class_rho1(2).unwrap(), 11).unwrap();
    assert_eq!(report.slope, Rational::from_integer(7));
    assert_eq!(report.versus_bound, 0);
    assert!(!report.general_type);
}

#[test]
fn rho_one_closed_forms() {
    for s in 2..=6u32 {
        let si = s as i64;
        let report = run_rho1(s).unwrap();
        let c = &report.class;
        assert_eq!(c.a, recorded_rho1::a(si), "s={s}");
        assert_eq!(c.b0, recorded_rho1::b0(si), "s={s}");
        assert_eq!(c.b1.mul_int(3), recorded_rho1::b1(si), "s={s}");
        assert_eq!(c.slope().unwrap(), recorded_rho1::ratio(si), "s={s}");
        let g = 2 * s * s + s + 1;
        assert_eq!(&harris_morrison_bound(g) - &recorded_rho1::ratio_gap(si), recorded_rho1::ratio(si));
        if s >= 3 {
            assert_eq!(slope_report(c, g).unwrap().versus_bound, -1);
        }
    }
    assert_eq!(virtual_class_rho1(4).unwrap().slope().unwrap(), Rational::new(91482, 14513));
    assert_eq!(virtual_class_rho1(5).unwrap().slope().unwrap(), Rational::new(5211461, 839918));
    assert_eq!(virtual_class_rho1(6).unwrap().slope().unwrap(), Rational::new(8591457, 1397665));
}

#[test]
fn recorded_y_forms_are_not_homogeneous() {
    // Each should be a pure degree-6 or degree-7 class.
    assert_eq!(recorded_g23::y_locus().homogeneous_degree(), None);
    assert_eq!(recorded_g23::y_kernel().homogeneous_degree(), None);
    let report = run_g23().unwrap();
    assert_eq!(report.stage(Side::Y).locus.homogeneous_degree(), Some(6));
    assert_eq!(report.stage(Side::Y).kernel_class.homogeneous_degree(), Some(7));
}

#[test]
fn second_closed_form_differs() {
    for s in 3..=6 {
        assert_ne!(recorded_rho1::ratio_second_form(s), recorded_rho1::ratio(s));
    }
}

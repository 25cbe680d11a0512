use std::sync::Arc;

use tropbn::graph::{integral_chain, DEFAULT_FACTOR};
use tropbn::independence::{build_independence, verify_dependence, Assignment, IndependenceCertificate};
use tropbn::tableaux::{vertex_avoiding_divisor, Tableau, VertexAvoidingData};

fn figure_tableau() -> Tableau {
    Tableau::rank_six(
        22,
        vec![
            vec![1, 3, 6, 9, 10, 13, 15],
            vec![2, 5, 7, 12, 16, 19, 20],
            vec![4, 8, 11, 14, 17, 21, 22],
        ],
    )
    .unwrap()
}

fn build() -> (VertexAvoidingData, IndependenceCertificate) {
    let chain = Arc::new(integral_chain(22, DEFAULT_FACTOR).unwrap());
    let data = vertex_avoiding_divisor(&figure_tableau(), chain, 7).unwrap();
    let cert = build_independence(&data).unwrap();
    (data, cert)
}

#[test]
fn figure_tableau_builds_and_verifies() {
    let (_, cert) = build();
    assert!(cert.witnesses_hold());
    assert!(!verify_dependence(&cert.combination));
    let a = cert.assignment.as_ref().unwrap();
    assert_eq!(a.len(), 28);
    // Every non-lingering loop carries exactly one function.
    for k in (1..=22).filter(|&k| k != 18) {
        assert_eq!(a.iter().filter(|&&x| x == Assignment::Loop(k)).count(), 1, "loop {k}");
    }
}

#[test]
fn figure_tableau_assignments() {
    let (_, cert) = build();
    let agree = [
        ("66", Assignment::Bridge(1)),
        ("56", Assignment::Bridge(1)),
        ("46", Assignment::Loop(1)),
        ("44", Assignment::Loop(6)),
        ("25", Assignment::Loop(8)),
        ("01", Assignment::Bridge(23)),
        ("00", Assignment::Bridge(23)),
    ];
    for (label, a) in agree {
        assert_eq!(cert.assignment_of(label), Some(a), "{label}");
    }
    // On γ_7 the exact loop computation makes φ_35, not φ_16, the unique
    // minimizer; the second block then closes with φ_14 on β_16.
    assert_eq!(cert.assignment_of("35"), Some(Assignment::Loop(7)));
    assert_eq!(cert.assignment_of("16"), Some(Assignment::Bridge(8)));
    assert_eq!(cert.assignment_of("14"), Some(Assignment::Bridge(16)));
}

#[test]
fn figure_tableau_divisor_degree() {
    let (data, cert) = build();
    let theta = cert.combination.value();
    let total = data.divisor.scaled(2).plus(&theta.principal_divisor()).unwrap();
    assert!(total.is_effective());
    assert_eq!(total.degree(), 50);
}

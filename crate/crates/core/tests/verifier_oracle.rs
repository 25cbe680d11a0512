mod support;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::overlay::{oracle_dependent, oracle_witnessed, random_combination};
use tropbn::independence::{verify_dependence, verify_independence, Verification};

#[test]
fn verifier_agrees_with_overlay() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut checked, mut independent, mut dependent) = (0, 0, 0);
    while checked < 2000 {
        let Some(tc) = random_combination(&mut rng, 5, 6) else { continue };
        checked += 1;
        let seen = oracle_witnessed(&tc);
        match verify_independence(&tc) {
            Verification::Independent(cert) => {
                assert!(seen.iter().all(|&s| s));
                assert!(cert.witnesses_hold());
                independent += 1;
            }
            Verification::Failed(ix) => {
                let missing: Vec<usize> = (0..seen.len()).filter(|&i| !seen[i]).collect();
                assert_eq!(ix, missing);
            }
        }
        let dep = verify_dependence(&tc);
        assert_eq!(dep, oracle_dependent(&tc));
        assert!(!(dep && verify_independence(&tc).is_independent()));
        dependent += dep as usize;
    }
    assert!(independent > 100 && dependent > 20, "{independent} independent, {dependent} dependent");
}

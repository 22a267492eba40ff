use bsd_core::arith::scalar::primes_up_to;
use bsd_core::builtin::{curve_h, curve_hprime};
use bsd_core::euler::{check_euler_identity, euler_factor_genus2};
use num_bigint::BigInt;

#[test]
fn identity_for_all_good_primes_below_200() {
    for p in primes_up_to(200).into_iter().filter(|&p| p != 2 && p != 5) {
        let c = check_euler_identity(p).unwrap();
        assert!(c.pass, "p={p}: {} vs {}", c.genus2_product.display(), c.weil_restriction.display());
    }
}

#[test]
fn genus2_factors_are_symmetric_and_positive_at_one() {
    for p in primes_up_to(150).into_iter().filter(|&p| p != 2 && p != 5) {
        for h in [curve_h(), curve_hprime()] {
            let l = euler_factor_genus2(&h, p).unwrap();
            assert!(l.genus2_symmetric());
            assert!(l.eval(&BigInt::from(1)) > BigInt::from(0));
        }
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use orc_core::{grid_floor, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reduced `(n, d)` with `d > 0`, computed with plain big integers.
fn reduce(n: BigInt, d: BigInt) -> (BigInt, BigInt) {
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / &g, d / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

fn parts(r: &Rational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

fn random_fraction(rng: &mut impl Rng) -> (BigInt, BigInt) {
    let n: i64 = rng.gen_range(-1_000_000_000_000..=1_000_000_000_000);
    let mut d: i64 = rng.gen_range(-1_000_000..=1_000_000);
    if d == 0 {
        d = 1;
    }
    let scale: i64 = rng.gen_range(1..=1000);
    (BigInt::from(n) * scale, BigInt::from(d) * scale)
}

#[test]
fn arithmetic_matches_big_integer_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let (a, b) = random_fraction(&mut rng);
        let (c, d) = random_fraction(&mut rng);
        let x = Rational::new(a.clone(), b.clone()).unwrap();
        let y = Rational::new(c.clone(), d.clone()).unwrap();

        assert_eq!(parts(&x), reduce(a.clone(), b.clone()));
        assert_eq!(parts(&(&x + &y)), reduce(&a * &d + &c * &b, &b * &d));
        assert_eq!(parts(&(&x - &y)), reduce(&a * &d - &c * &b, &b * &d));
        assert_eq!(parts(&(&x * &y)), reduce(&a * &c, &b * &d));
        if !c.is_zero() {
            assert_eq!(parts(&(&x / &y)), reduce(&a * &d, &b * &c));
        }
        let (xn, xd) = reduce(a.clone(), b.clone());
        let (yn, yd) = reduce(c.clone(), d.clone());
        assert_eq!(x.cmp(&y), (&xn * &yd).cmp(&(&yn * &xd)));
        assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }
}

proptest! {
    #[test]
    fn grid_floor_brackets(n in -10_000i64..10_000, d in 1i64..500, sn in 1i64..100, sd in 1i64..100) {
        let x = Rational::frac(n, d);
        let s = Rational::frac(sn, sd);
        let t = Rational::integer(grid_floor(&x, &s));
        prop_assert!(&t * &s <= x);
        prop_assert!(x < (t + Rational::one()) * &s);
    }

    #[test]
    fn canonical_form(n in any::<i64>(), d in any::<i64>().prop_filter("nonzero", |d| *d != 0)) {
        let r = Rational::new(n, d).unwrap();
        prop_assert!(r.denom().is_positive());
        prop_assert_eq!(r.numer().gcd(r.denom()), BigInt::from(1));
    }
}

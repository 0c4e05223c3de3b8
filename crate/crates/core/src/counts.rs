//! Closed-form counts on chains, in exact arithmetic.

use num_bigint::BigUint;
use num_integer::binomial as binom_generic;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::orders::PairKind;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    binom_generic(BigUint::from(n), BigUint::from(k))
}

/// `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan(k: u64) -> BigUint {
    binomial(2 * k, k) / BigUint::from(k + 1)
}

/// Ternary trees on `m` nodes: `binom(3m, m) / (2m + 1)`.
pub fn ternary_catalan(m: u64) -> BigUint {
    binomial(3 * m, m) / BigUint::from(2 * m + 1)
}

fn rational(n: BigUint) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Number of structures of `kind` on `[n]`, as an exact rational.
pub fn closed_form_rational(n: u64, kind: PairKind) -> BigRational {
    match kind {
        PairKind::Premodel => {
            BigRational::new(2u32.into(), ((n + 1) * (n + 2)).into())
                * rational(binomial(4 * n + 5, n))
        }
        // Compatible pairs on a chain are equinumerous with cc pairs.
        PairKind::CompositionClosed | PairKind::Compatible => {
            BigRational::new(One::one(), (2 * n + 3).into()) * rational(binomial(3 * n + 3, n + 1))
        }
        PairKind::Model => rational(binomial(2 * n + 1, n)),
    }
}

/// Number of structures of `kind` on `[n]`.
pub fn closed_form_count(n: u64, kind: PairKind) -> BigUint {
    let q = closed_form_rational(n, kind);
    assert!(q.is_integer(), "closed form for {kind:?} at n = {n} is not an integer");
    q.to_integer().to_biguint().expect("nonnegative count")
}

/// `closed_form_count` as a `u64`, when it fits.
pub fn closed_form_u64(n: u64, kind: PairKind) -> Option<u64> {
    closed_form_count(n, kind).to_u64()
}

/// `|Q([n])| / |C([n])|` and `|C([n])| / |P([n])|`, reduced.
pub fn density_ratios(n: u64) -> (BigRational, BigRational) {
    let p = rational(closed_form_count(n, PairKind::Premodel));
    let c = rational(closed_form_count(n, PairKind::CompositionClosed));
    let q = rational(closed_form_count(n, PairKind::Model));
    (q / c.clone(), c / p)
}

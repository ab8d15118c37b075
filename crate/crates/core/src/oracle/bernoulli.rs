use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use std::sync::OnceLock;

use astro_float::BigFloat;

use super::Hp;

/// `B_0, …, B_n` as exact rationals, from
/// `Σ_{k=0}^{m} C(m+1, k)·B_k = 0`.
pub(crate) fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // binomials C(m+1, k) for k = 0..m
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Largest `n` served by [`even_bernoulli_hp`].
const MAX_EVEN: usize = 24;

/// `B_2, B_4, …, B_{2n}` at working precision, `n ≤ 24`.
pub(crate) fn even_bernoulli_hp(hp: &mut Hp, n: usize) -> Vec<BigFloat> {
    static TABLE: OnceLock<Vec<(String, String)>> = OnceLock::new();
    assert!(n <= MAX_EVEN, "even_bernoulli_hp supports n ≤ {MAX_EVEN}");
    let table = TABLE.get_or_init(|| {
        bernoulli(2 * MAX_EVEN)
            .into_iter()
            .skip(2)
            .step_by(2)
            .map(|r| (r.numer().to_string(), r.denom().to_string()))
            .collect()
    });
    table[..n]
        .iter()
        .map(|(num, den)| {
            let num = hp.parse(num);
            let den = hp.parse(den);
            hp.div(&num, &den)
        })
        .collect()
}

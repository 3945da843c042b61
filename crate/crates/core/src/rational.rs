//! Exact rational arithmetic helpers.
//!
//! Density and spread checks in this crate are defined against exact
//! rationals; floating point only appears in reports.

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

/// The rational type used for densities, probabilities, and spread bounds.
/// `i128` gives ample headroom for desk-scale denominators (e.g. 840^7).
pub type Rat = Ratio<i128>;

pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

/// `r^k` by repeated squaring.
pub fn rat_pow(r: &Rat, k: u32) -> Rat {
    let mut base = *r;
    let mut exp = k;
    let mut acc = Rat::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        exp >>= 1;
    }
    acc
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient with the usual convention `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(7, 2), 21);
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(200, 2), 19900);
    }

    #[test]
    fn pow_is_exact() {
        assert_eq!(rat_pow(&rat(1, 5), 7), rat(1, 78125));
        assert_eq!(rat_pow(&rat(2, 3), 0), rat_one());
    }
}

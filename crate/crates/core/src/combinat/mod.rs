//! Partitions, permutations, injections, symmetric-group characters and
//! Schur-basis symmetric functions.

pub mod characters;
pub mod injection;
pub mod partition;
pub mod perm;
pub mod symfunc;

pub use characters::{
    decompose, induce_character, inner_product, irreducible_character, specht_dimension,
    z_centralizer, ClassFunction,
};
pub use injection::{injections, Injection, InjectionIndex};
pub use partition::{partitions, Partition};
pub use perm::Perm;
pub use symfunc::{frobenius_char, parse_symfunc, SymFunc};

use num_bigint::BigUint;
use num_traits::One;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n (n-1) ... (n-k+1)`, zero when `k > n`.
pub fn falling(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    ((n - k + 1)..=n).fold(BigUint::one(), |acc, j| acc * j)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    falling(n, k) / factorial(k)
}

/// Number of injections `[n] -> [m]` as a machine integer; `None` on overflow.
pub fn count_injections(n: usize, m: usize) -> Option<usize> {
    if n > m {
        return Some(0);
    }
    ((m - n + 1)..=m).try_fold(1usize, |acc, j| acc.checked_mul(j))
}

/// `base^exp` as a machine integer; `None` on overflow.
pub fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(falling(5, 2), BigUint::from(20u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(count_injections(3, 2), Some(0));
        assert_eq!(count_injections(0, 4), Some(1));
        assert_eq!(checked_pow(3, 4), Some(81));
    }
}
